#include "smove/playground.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "smove/error.hpp"
#include "smove/random.hpp"

namespace smove {

namespace {

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

constexpr int kMaxDraws = 100;

}  // namespace

Backend::Backend(std::uint32_t p, int d, std::map<std::string, Matrix> assignment, bool alias)
    : p_(p), d_(d), alias_(alias) {
  check_prime(p);
  if (d < 1) throw InputError("backend dimension must be >= 1");
  for (auto& [label, m] : assignment) {
    if (m.p() != p || m.dim() != d) throw InputError("entry " + label + " has the wrong shape");
    const std::string k = key(label);
    if (auto it = table_.find(k); it != table_.end() && it->second != m) {
      throw InputError("entries " + label + " and " + inverse_label(label) +
                       " must agree (inverse aliasing)");
    }
    table_.insert_or_assign(k, m);
  }
  if (!table_.count("sphere")) throw InputError("backend needs a sphere entry");
  std::vector<const Matrix*> all;
  for (const auto& [label, m] : table_) {
    if (!try_inverse(m)) throw InputError("entry " + label + " is not invertible");
    all.push_back(&m);
  }
  for (std::size_t i = 0; i < all.size(); ++i) {
    for (std::size_t j = i + 1; j < all.size(); ++j) {
      if (!commute(*all[i], *all[j])) throw InputError("backend entries do not commute");
    }
  }
}

std::string Backend::key(const std::string& label) const {
  return alias_ ? canonical_label(label) : label;
}

bool Backend::has(const std::string& label) const { return table_.count(key(label)) > 0; }

const Matrix& Backend::at(const std::string& label) const {
  auto it = table_.find(key(label));
  if (it == table_.end()) throw InputError("token " + label + " has no assigned matrix");
  return it->second;
}

Backend Backend::with(const std::string& label, const Matrix& m) const {
  auto t = table_;
  t.insert_or_assign(key(label), m);
  Backend out(p_, d_, std::move(t), alias_);
  out.family_ = family_;
  out.seed_ = seed_;
  out.M_ = M_;
  return out;
}

Matrix Backend::draw(const std::string& k) const {
  if (!family_) throw InputError("token " + k + " has no assigned matrix");
  Rng rng(mix(seed_ ^ fnv1a(k)));
  if (k == "sphere") {
    return Matrix::scalar(p_, d_, p_ > 2 ? static_cast<std::uint32_t>(rng.uniform(2, p_ - 1)) : 1);
  }
  for (int attempt = 0; attempt < kMaxDraws; ++attempt) {
    if (*family_ == BackendFamily::Diagonal) {
      std::vector<std::uint32_t> diag;
      for (int i = 0; i < d_; ++i) diag.push_back(static_cast<std::uint32_t>(rng.uniform(1, p_ - 1)));
      return Matrix::diagonal(p_, diag);
    }
    Matrix acc(p_, d_);
    Matrix pw = Matrix::identity(p_, d_);
    for (int i = 0; i < d_; ++i) {
      acc = acc + scale(pw, static_cast<std::uint32_t>(rng.uniform(0, p_ - 1)));
      pw = pw * *M_;
    }
    if (try_inverse(acc)) return acc;
  }
  throw InputError("could not draw an invertible matrix for " + k);
}

Backend Backend::extended(const std::vector<std::string>& labels) const {
  auto t = table_;
  bool changed = false;
  for (const auto& l : labels) {
    const auto k = key(l);
    if (!t.count(k)) {
      t.emplace(k, draw(k));
      changed = true;
    }
  }
  if (!changed) return *this;
  Backend out(p_, d_, std::move(t), alias_);
  out.family_ = family_;
  out.seed_ = seed_;
  out.M_ = M_;
  return out;
}

bool Backend::inverse_contract_holds() const {
  for (const auto& [label, m] : table_) {
    const auto inv = inverse_label(label);
    if (auto it = table_.find(key(inv)); it != table_.end() && it->second != m) return false;
  }
  return true;
}

Backend make_backend(const std::vector<std::string>& labels, std::uint32_t p, int d,
                     std::uint64_t seed, BackendFamily family, bool alias) {
  check_prime(p);
  if (d < 1) throw InputError("backend dimension must be >= 1");
  // A bare shell carries the draw parameters; entries are drawn per key.
  Backend shell(p, d, {{"sphere", Matrix::identity(p, d)}}, alias);
  shell.family_ = family;
  shell.seed_ = seed;
  if (family == BackendFamily::PolynomialInM) {
    Rng rng(mix(seed));
    for (int attempt = 0;; ++attempt) {
      if (attempt == kMaxDraws) throw InputError("could not draw an invertible generator matrix");
      Matrix M(p, d);
      for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) M.set(i, j, static_cast<std::uint32_t>(rng.uniform(0, p - 1)));
      }
      if (try_inverse(M)) {
        shell.M_ = M;
        break;
      }
    }
  }
  std::map<std::string, Matrix> t;
  t.emplace("sphere", shell.draw("sphere"));
  for (const auto& l : labels) {
    const auto k = shell.key(l);
    if (!t.count(k)) t.emplace(k, shell.draw(k));
  }
  Backend out(p, d, std::move(t), alias);
  out.family_ = family;
  out.seed_ = seed;
  out.M_ = shell.M_;
  return out;
}

std::vector<std::string> labels_for(const CriterionInstance& inst) {
  std::set<std::string> out{"sphere"};
  const CriterionInstance g = gauge(inst);
  for (const auto* x : {&inst, &g}) {
    for (auto t : {IdentificationType::Longitudinal, IdentificationType::Meridian}) {
      for (const auto& s : build_abstract(*x, t).slices) {
        for (const auto& l : s.labels()) {
          if (l != "empty") out.insert(l);
        }
      }
    }
  }
  return {out.begin(), out.end()};
}

Backend with_trivial_spel(const Backend& b) {
  Backend out = b;
  for (const auto& [label, m] : b.entries()) {
    if (is_spel_label(label)) out = out.with(label, Matrix::identity(b.p(), b.dim()));
  }
  return out;
}

std::string format_backend(const Backend& b) {
  std::ostringstream out;
  out << "p " << b.p() << " d " << b.dim() << "\n";
  if (!b.aliasing()) out << "alias off\n";
  for (const auto& [label, m] : b.entries()) out << "tok " << label << " " << format_entries(m) << "\n";
  return out.str();
}

Backend parse_backend(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::optional<std::uint32_t> p;
  int d = 0;
  bool alias = true;
  std::map<std::string, Matrix> t;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string head;
    if (!(ls >> head) || head[0] == '#') continue;
    if (head == "p") {
      std::uint64_t pv;
      std::string dk;
      if (!(ls >> pv >> dk >> d) || dk != "d") throw InputError("expected 'p <p> d <d>'");
      check_prime(pv);
      p = static_cast<std::uint32_t>(pv);
    } else if (head == "alias") {
      std::string v;
      ls >> v;
      alias = v != "off";
    } else if (head == "tok") {
      if (!p) throw InputError("backend file must start with 'p <p> d <d>'");
      std::string label;
      ls >> label;
      Matrix m(*p, d);
      for (int i = 0; i < d * d; ++i) {
        std::int64_t v;
        if (!(ls >> v)) throw InputError("token " + label + " needs " + std::to_string(d * d) + " entries");
        m.set(i / d, i % d, Fp(*p).norm(v));
      }
      t.insert_or_assign(label, m);
    } else {
      throw InputError("unknown backend line: " + line);
    }
  }
  if (!p) throw InputError("backend file must start with 'p <p> d <d>'");
  return Backend(*p, d, std::move(t), alias);
}

Matrix slice_endo(const AbstractSlice& s, const Backend& b) {
  Matrix out = Matrix::identity(b.p(), b.dim());
  for (const auto& tok : s.tokens) {
    if (tok.kind == TokenKind::Empty) continue;
    out = out * b.at(tok.label());
  }
  return out;
}

std::vector<Matrix> endos(const AbstractSliceSequence& seq, const Backend& b) {
  std::vector<Matrix> out;
  for (const auto& s : seq.slices) out.push_back(slice_endo(s, b));
  return out;
}

std::vector<Matrix> transitions(const std::vector<Matrix>& a) {
  std::vector<Matrix> out;
  for (std::size_t k = 0; k + 1 < a.size(); ++k) {
    auto inv = try_inverse(a[k]);
    if (!inv) throw PreconditionError("slice endomorphism " + std::to_string(k) + " is singular");
    out.push_back(a[k + 1] * *inv);
  }
  return out;
}

Matrix compose(const std::vector<Matrix>& maps, std::uint32_t p, int d) {
  Matrix out = Matrix::identity(p, d);
  for (const auto& f : maps) out = f * out;
  return out;
}

namespace {

void need_perturbation_slot(const AbstractSliceSequence& seq) {
  if (seq.perturbation_index + 1 >= seq.slices.size()) {
    throw PreconditionError("sequence has no perturbation transition");
  }
}

std::vector<const CellToken*> tokens_of(const AbstractSlice& s, bool spel) {
  std::vector<const CellToken*> out;
  for (const auto& t : s.tokens) {
    const bool is_spel = t.kind == TokenKind::SpElBag || t.kind == TokenKind::SpElInvPair;
    if (is_spel == spel) out.push_back(&t);
  }
  return out;
}

}  // namespace

Matrix perturbed_endo(const AbstractSliceSequence& seq, const Backend& b) {
  need_perturbation_slot(seq);
  const auto& before = seq.slices[seq.perturbation_index];
  const auto& after = seq.slices[seq.perturbation_index + 1];
  const auto spel = tokens_of(before, true);
  Matrix out = Matrix::identity(b.p(), b.dim());
  std::vector<const CellToken*> comms;
  for (const auto& t : after.tokens) {
    if (t.kind == TokenKind::Commutator) {
      comms.push_back(&t);
    } else if (t.kind != TokenKind::Empty) {
      out = out * b.at(t.label());
    }
  }
  // Each commutator is composed with the spherical elements of its own factor.
  const std::size_t per = comms.empty() ? 0 : spel.size() / comms.size();
  if (comms.empty() ? !spel.empty() : spel.size() != per * comms.size()) {
    throw PreconditionError("spherical elements do not pair up with commutators");
  }
  for (std::size_t a = 0; a < comms.size(); ++a) {
    Matrix local = b.at(comms[a]->label());
    for (std::size_t j = 0; j < per; ++j) local = local * b.at(spel[a * per + j]->label());
    out = out * local;
  }
  return out;
}

std::vector<Matrix> perturbed_transitions(const AbstractSliceSequence& seq, const Backend& b) {
  need_perturbation_slot(seq);
  const auto a = endos(seq, b);
  auto f = transitions(a);
  f[seq.perturbation_index] = perturbed_endo(seq, b) * inverse(a[seq.perturbation_index]);
  return f;
}

Matrix perturbed_invariant(const AbstractSliceSequence& seq, const Backend& b) {
  return compose(perturbed_transitions(seq, b), b.p(), b.dim());
}

Matrix spel_product(const AbstractSliceSequence& seq, const Backend& b) {
  need_perturbation_slot(seq);
  Matrix out = Matrix::identity(b.p(), b.dim());
  for (const auto* t : tokens_of(seq.slices[seq.perturbation_index], true)) out = out * b.at(t->label());
  return out;
}

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "PASS";
    case Verdict::Fail: return "FAIL";
    case Verdict::Obstructed: return "OBSTRUCTED";
  }
  return "";
}

int exit_code(Verdict v) {
  switch (v) {
    case Verdict::Pass: return 0;
    case Verdict::Fail: return 1;
    case Verdict::Obstructed: return 3;
  }
  return 1;
}

namespace {

std::vector<std::string> seq_labels(const AbstractSliceSequence& seq) {
  std::vector<std::string> out;
  for (const auto& s : seq.slices) {
    for (const auto& l : s.labels()) {
      if (l != "empty") out.push_back(l);
    }
  }
  return out;
}

}  // namespace

InvarianceReport check_inside_invariance(const CriterionInstance& inst,
                                         const std::optional<QMove>& m, Side side,
                                         IdentificationType type, const Backend& b) {
  const auto base = build_abstract(inst, type);
  Residual res;
  res.side = side;
  if (m) {
    const auto tr = transport_qmove(inst, side, *m);
    if (!tr.ok()) throw PreconditionError("transported criterion does not reduce to 1");
    res.new_word = side == Side::K ? word_R(tr.instance) : word_S(tr.instance);
    res.residual = tr.residual;
  } else {
    res.new_word = side == Side::K ? word_R(inst) : word_S(inst);
  }
  const auto moved = build_abstract(inst, type, res);
  auto labels = seq_labels(base);
  const auto more = seq_labels(moved);
  labels.insert(labels.end(), more.begin(), more.end());
  const Backend bb = b.extended(labels);
  const Matrix before = perturbed_invariant(base, bb);
  const Matrix after = perturbed_invariant(moved, bb);
  InvarianceReport rep;
  rep.checks.push_back({"residual " + format_word(res.residual) + " absorbed", before == after});
  if (before == after) return rep;
  rep.verdict = Verdict::Fail;
  rep.witness = "I = " + format_matrix(before) + " but I(moved) = " + format_matrix(after);
  return rep;
}

InvarianceReport check_gauge(const CriterionInstance& inst, IdentificationType type,
                             const Backend& b) {
  const auto a = build_abstract(inst, type);
  const auto g = build_abstract(gauge(inst), other_type(type));
  auto labels = seq_labels(a);
  const auto more = seq_labels(g);
  labels.insert(labels.end(), more.begin(), more.end());
  const Backend bb = b.extended(labels);
  const Matrix x = perturbed_invariant(a, bb);
  const Matrix y = perturbed_invariant(g, bb);
  InvarianceReport rep;
  rep.checks.push_back({"I(" + type_name(type) + ") = I_gauge(" + type_name(other_type(type)) + ")", x == y});
  if (x == y) return rep;
  rep.verdict = Verdict::Fail;
  rep.witness = "I = " + format_matrix(x) + " but I_gauge = " + format_matrix(y);
  return rep;
}

InvarianceReport between_type_obstruction(const CriterionInstance& inst, IdentificationType type,
                                          const Backend& b) {
  const auto fseq = build_abstract(inst, type);
  const CriterionInstance gi = gauge(inst);
  const auto gseq = build_abstract(gi, other_type(type));
  auto labels = seq_labels(fseq);
  const auto more = seq_labels(gseq);
  labels.insert(labels.end(), more.begin(), more.end());
  labels.push_back(cell_token(word_R(gi)).label());
  const Backend bb = b.extended(labels);

  // F thread: the sequence itself. H thread: the gauged sequence, entered from
  // the sphere slice through an intermediate slice carrying one cell.
  const auto A = endos(fseq, bb);
  const auto F = transitions(A);
  const auto G = endos(gseq, bb);
  AbstractSlice mid = gseq.slices[1];
  mid.tokens.push_back(cell_token(word_R(gi)));
  const std::vector<Matrix> Y{G[1], slice_endo(mid, bb), G[2], G[3], G[4]};
  const auto H = transitions(Y);

  InvarianceReport rep;
  const bool f2 = F[2] == H[2];
  const bool f3 = F[3] == H[3];
  const bool f1 = H[1] * H[0] == F[1];
  rep.checks = {{"F_2 = H_2", f2}, {"F_3 = H_3", f3}, {"H_1 H_0 = F_1", f1}};
  if (!(f2 && f3 && f1)) {
    rep.verdict = Verdict::Fail;
    rep.witness = "first comparison thread breaks";
    return rep;
  }
  // Second comparison: the gauge side needs F'_2 = F_2 P, P the product of its
  // spherical elements; the first thread already pins F'_2 = H_2 = F_2.
  const Matrix P = spel_product(gseq, bb);
  const Matrix F2p = F[2] * P;
  rep.checks.push_back({"F'_2 = F_2", F2p == F[2]});
  if (F2p == F[2]) return rep;
  rep.verdict = Verdict::Obstructed;
  rep.witness = "F'_2 = F_2 forced, but the required perturbation is " + format_matrix(P);
  return rep;
}

Matrix global_combine(const std::vector<Matrix>& locals, CombineMode mode, std::uint32_t p, int d) {
  for (const auto& m : locals) {
    if (m.p() != p || m.dim() != d) throw InputError("global_combine: dimension mismatch");
  }
  if (mode == CombineMode::Product) {
    Matrix out = Matrix::identity(p, d);
    for (const auto& m : locals) out = out * m;
    return out;
  }
  if (locals.size() > 8) throw InputError("permutation sum limited to 8 factors");
  std::vector<std::size_t> idx(locals.size());
  std::iota(idx.begin(), idx.end(), 0);
  Matrix sum(p, d);
  do {
    Matrix prod = Matrix::identity(p, d);
    for (auto i : idx) prod = prod * locals[i];
    sum = sum + prod;
  } while (std::next_permutation(idx.begin(), idx.end()));
  return sum;
}

namespace {

Matrix side_invariant(const std::vector<SideData>& side, bool gauged, const Backend& b) {
  std::vector<Matrix> locals;
  for (const auto& s : side) {
    const auto seq = gauged ? build_abstract(gauge(s.inst), other_type(s.type))
                            : build_abstract(s.inst, s.type);
    locals.push_back(perturbed_invariant(seq, b.extended(seq_labels(seq))));
  }
  return global_combine(locals, CombineMode::Product, b.p(), b.dim());
}

}  // namespace

ThreeTestsResult three_tests(const std::vector<SideData>& K, const std::vector<SideData>& L,
                             const Backend& b) {
  if (K.size() != L.size()) throw InputError("three tests need the same number of relator pairs");
  ThreeTestsResult r;
  const Matrix iK = side_invariant(K, false, b);
  const Matrix iL = side_invariant(L, false, b);
  r.same = iK == iL;
  r.gauge_K = side_invariant(K, true, b) == iL;
  r.gauge_L = iK == side_invariant(L, true, b);
  return r;
}

StabilizationReport stabilization_demo(const Backend& b, unsigned v) {
  if (v < 1) throw InputError("stabilization count must be >= 1");
  const CriterionInstance inst = fixture_instance();
  const QMove move = InvertRelator{inst.K.index_of(inst.R)};
  const auto base = build_abstract(inst, IdentificationType::Longitudinal);
  const auto tr = transport_qmove(inst, Side::K, move);
  const auto moved = build_abstract(inst, IdentificationType::Longitudinal,
                                    Residual{Side::K, word_R(tr.instance), tr.residual});
  auto labels = seq_labels(base);
  for (const auto& l : seq_labels(moved)) labels.push_back(l);
  const Backend bb = b.extended(labels);

  const Matrix iK = perturbed_invariant(base, bb);
  const Matrix iL = perturbed_invariant(moved, bb);
  const Matrix fv = power(bb.sphere(), v);
  StabilizationReport rep;
  const auto fv_inv = try_inverse(fv);
  const bool stabilized_equal = iK * fv == iL * fv;
  if (fv_inv && stabilized_equal) {
    rep.forced_equality = (iK * fv) * *fv_inv == (iL * fv) * *fv_inv;
  }
  for (std::uint32_t w = 1; w < bb.p(); ++w) {
    if (scale(bb.sphere(), w).is_zero()) {
      rep.annihilator_found = true;
      break;
    }
  }
  std::ostringstream out;
  out << "Z(S^2)^" << v << " = " << format_matrix(fv) << (fv_inv ? " invertible" : " singular")
      << "; I_K Z^v = I_L Z^v: " << (stabilized_equal ? "yes" : "no")
      << "; forced I_K = I_L: " << (rep.forced_equality ? "yes" : "no") << "; "
      << (rep.annihilator_found ? "nonzero annihilator found" : "no nonzero annihilator");
  rep.witness = out.str();
  rep.verdict = rep.forced_equality && !rep.annihilator_found ? Verdict::Pass : Verdict::Fail;
  return rep;
}

}  // namespace smove
