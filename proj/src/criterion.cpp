#include "smove/criterion.hpp"

#include <algorithm>
#include <filesystem>
#include <sstream>

#include "smove/error.hpp"

namespace smove {

namespace {

std::vector<std::string> split_ws(std::string_view line) {
  std::vector<std::string> out;
  std::istringstream in{std::string(line)};
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

ReducedWord expand_r(const CriterionInstance& inst, const Factor& f) { return expand(f.r, inst.K); }
ReducedWord expand_s(const CriterionInstance& inst, const Factor& f) { return expand(f.s, inst.L); }

}  // namespace

void check_instance(const CriterionInstance& inst) {
  if (inst.K.generator_count() != inst.L.generator_count()) {
    throw InputError("K and L must share the generator count");
  }
  inst.K.index_of(inst.R);
  inst.L.index_of(inst.S);
  for (const auto& f : inst.decomp) {
    inst.K.index_of(f.r.base);
    inst.L.index_of(f.s.base);
    if (std::abs(f.r.exponent) != 1 || std::abs(f.s.exponent) != 1) {
      throw InputError("factor exponents must be +1 or -1");
    }
    check_generators(f.r.conjugator, inst.K.generator_count());
    check_generators(f.s.conjugator, inst.L.generator_count());
  }
}

const ReducedWord& word_R(const CriterionInstance& inst) { return inst.K.word(inst.R); }
const ReducedWord& word_S(const CriterionInstance& inst) { return inst.L.word(inst.S); }

ReducedWord product_word(const CriterionInstance& inst) {
  return multiply(word_R(inst), invert(word_S(inst)));
}

ReducedWord commutator_product(const CriterionInstance& inst) {
  Word all;
  for (const auto& f : inst.decomp) all.append(commutator(expand_s(inst, f), expand_r(inst, f)));
  return reduce(all);
}

ReducedWord star_product(const CriterionInstance& inst) {
  Word all;
  for (auto it = inst.decomp.rbegin(); it != inst.decomp.rend(); ++it) {
    all.append(commutator(expand_r(inst, *it), expand_s(inst, *it)));
  }
  return reduce(all);
}

ReducedWord triple_star_word(const CriterionInstance& inst) {
  return multiply(product_word(inst), commutator_product(inst));
}

bool verify(const CriterionInstance& inst) { return triple_star_word(inst).empty(); }

bool verify_star(const CriterionInstance& inst) {
  return product_word(inst) == star_product(inst);
}

ReducedWord residual_R(const Word& R, const Word& R_new) { return multiply(R, invert(R_new)); }

ReducedWord residual_S(const Word& S, const Word& S_new) { return multiply(S_new, invert(S)); }

CriterionInstance gauge(const CriterionInstance& inst) {
  if (!verify(inst)) throw PreconditionError("gauge needs an instance that verifies");
  CriterionInstance g{inst.L, inst.K, inst.S, inst.R, {}};
  for (auto it = inst.decomp.rbegin(); it != inst.decomp.rend(); ++it) {
    g.decomp.push_back({it->s, it->r});
  }
  return g;
}

ResidualCommutatorReport residual_commutator_check(const CriterionInstance& inst) {
  if (!verify(inst)) throw PreconditionError("residual check needs an instance that verifies");
  ResidualCommutatorReport rep;
  rep.residual = residual_R(word_R(inst), word_S(inst));
  rep.inverse_product = invert(commutator_product(inst));
  rep.residual_from_S = residual_S(word_S(inst), word_R(inst));
  rep.equals_inverse_product = rep.residual == rep.inverse_product;
  rep.equals_residual_S = rep.residual == rep.residual_from_S;
  return rep;
}

CriterionInstance build_instance(std::uint64_t seed, int n_generators, int n_factors,
                                 int max_conjugator_len) {
  if (n_generators < 1 || n_factors < 0 || max_conjugator_len < 0) {
    throw InputError("build_instance: parameters must be positive");
  }
  Rng rng(seed);
  const int m = std::max(1, n_factors);
  auto relator = [&] {
    return random_reduced_word(rng, n_generators, static_cast<std::size_t>(rng.uniform(1, 8)));
  };
  auto conj = [&] {
    return random_reduced_word(rng, n_generators,
                               static_cast<std::size_t>(rng.uniform(0, max_conjugator_len)));
  };
  std::vector<Relator> krels{{"R", {}}};
  std::vector<Relator> lrels{{"S", relator()}};
  for (int i = 1; i <= m; ++i) {
    krels.push_back({"R" + std::to_string(i), relator()});
    lrels.push_back({"S" + std::to_string(i), relator()});
  }
  CriterionInstance inst{Presentation(n_generators, krels), Presentation(n_generators, lrels), "R",
                         "S", {}};
  for (int i = 1; i <= n_factors; ++i) {
    Factor f;
    f.r = {conj(), "R" + std::to_string(i), rng.coin() ? 1 : -1};
    f.s = {conj(), "S" + std::to_string(i), rng.coin() ? 1 : -1};
    inst.decomp.push_back(f);
  }
  const ReducedWord R = multiply(star_product(inst), word_S(inst));
  inst.K = inst.K.with_word(0, R);
  return inst;
}

TransportResult transport_qmove(const CriterionInstance& inst, Side side, const QMove& m) {
  check_instance(inst);
  const Presentation& P = side == Side::K ? inst.K : inst.L;
  const std::string& name = side == Side::K ? inst.R : inst.S;
  check_qmove(P, m);
  if (P.at(target_of(m)).name != name) {
    throw PreconditionError("Q-move must target the distinguished relator " + name);
  }
  for (const auto& f : inst.decomp) {
    const std::string& base = side == Side::K ? f.r.base : f.s.base;
    if (base == name) {
      throw PreconditionError("relator " + name + " is also a factor base; transport undefined");
    }
  }
  TransportResult out{inst, {}, {}};
  const Presentation moved = apply_qmove(P, m);
  if (side == Side::K) {
    out.instance.K = moved;
    const ReducedWord& R_new = word_R(out.instance);
    out.residual = residual_R(word_R(inst), R_new);
    Word w = out.residual;
    w.append(R_new);
    w.append(invert(word_S(inst)));
    w.append(commutator_product(out.instance));
    out.check_word = reduce(w);
  } else {
    out.instance.L = moved;
    const ReducedWord& S_new = word_S(out.instance);
    out.residual = residual_S(word_S(inst), S_new);
    Word w = word_R(inst);
    w.append(invert(S_new));
    w.append(out.residual);
    w.append(commutator_product(out.instance));
    out.check_word = reduce(w);
  }
  return out;
}

CriterionInstance apply_nielsen_to_instance(const CriterionInstance& inst, const NielsenMove& m) {
  auto [K, L] = apply_nielsen_pair(inst.K, inst.L, m);
  CriterionInstance out{K, L, inst.R, inst.S, inst.decomp};
  for (auto& f : out.decomp) {
    f.r.conjugator = apply_nielsen(f.r.conjugator, m);
    f.s.conjugator = apply_nielsen(f.s.conjugator, m);
  }
  return out;
}

CriterionInstance apply_nielsen_one_side(const CriterionInstance& inst, Side side,
                                         const NielsenMove& m) {
  CriterionInstance out = inst;
  if (side == Side::K) {
    out.K = apply_nielsen(inst.K, m);
  } else {
    out.L = apply_nielsen(inst.L, m);
  }
  return out;
}

CriterionInstance prolonged_instance(const CriterionInstance& inst) {
  const Presentation K = prolong(inst.K);
  const Presentation L = prolong(inst.L);
  const std::string t = K.relators().back().name;
  return {K, L, t, L.relators().back().name, {}};
}

// ---- Text formats ----------------------------------------------------------

namespace {

ConjugatedRelator parse_conjugated(const std::string& wtok, const std::string& btok,
                                   const std::string& wkey, const std::string& bkey) {
  if (wtok.rfind(wkey + "=", 0) != 0) throw InputError("expected " + wkey + "=<word>, got " + wtok);
  if (btok.rfind(bkey + "=", 0) != 0) throw InputError("expected " + bkey + "=<name>^<+1|-1>, got " + btok);
  ConjugatedRelator c;
  c.conjugator = parse_reduced(wtok.substr(wkey.size() + 1));
  const std::string rest = btok.substr(bkey.size() + 1);
  const auto caret = rest.find('^');
  if (caret == std::string::npos || caret == 0) throw InputError("bad relator reference " + btok);
  c.base = rest.substr(0, caret);
  const std::string e = rest.substr(caret + 1);
  if (e == "+1" || e == "1") {
    c.exponent = 1;
  } else if (e == "-1") {
    c.exponent = -1;
  } else {
    throw InputError("exponent must be +1 or -1 in " + btok);
  }
  return c;
}

std::string format_conjugated(const ConjugatedRelator& c, const std::string& wkey,
                              const std::string& bkey) {
  return wkey + "=" + format_word(c.conjugator) + " " + bkey + "=" + c.base + "^" +
         (c.exponent > 0 ? "+1" : "-1");
}

Factor parse_factor_tokens(const std::vector<std::string>& t) {
  if (t.size() != 5 || t[0] != "factor") {
    throw InputError("expected 'factor wR=.. R=..^.. wS=.. S=..^..'");
  }
  return {parse_conjugated(t[1], t[2], "wR", "R"), parse_conjugated(t[3], t[4], "wS", "S")};
}

std::string strip(std::string_view line) {
  const auto hash = line.find('#');
  return std::string(hash == std::string_view::npos ? line : line.substr(0, hash));
}

}  // namespace

CommutatorDecomposition parse_decomposition(std::string_view text) {
  CommutatorDecomposition out;
  std::istringstream in{std::string(text)};
  std::string raw;
  while (std::getline(in, raw)) {
    const auto t = split_ws(strip(raw));
    if (t.empty()) continue;
    out.push_back(parse_factor_tokens(t));
  }
  return out;
}

std::string format_factor(const Factor& f) {
  return "factor " + format_conjugated(f.r, "wR", "R") + " " + format_conjugated(f.s, "wS", "S");
}

std::string format_decomposition(const CommutatorDecomposition& d) {
  std::string out;
  for (const auto& f : d) out += format_factor(f) + "\n";
  return out;
}

CriterionInstance parse_instance(std::string_view text, const std::string& base_dir) {
  namespace fs = std::filesystem;
  auto resolve_path = [&](const std::string& p) {
    const fs::path path(p);
    return (path.is_absolute() ? path : fs::path(base_dir) / path).string();
  };
  std::optional<Presentation> K, L;
  std::optional<std::string> R, S;
  CommutatorDecomposition decomp;
  std::istringstream in{std::string(text)};
  std::string raw;
  while (std::getline(in, raw)) {
    const auto t = split_ws(strip(raw));
    if (t.empty()) continue;
    if (t[0] == "factor") {
      decomp.push_back(parse_factor_tokens(t));
      continue;
    }
    if (t.size() != 2) throw InputError("malformed instance line: " + raw);
    if (t[0] == "K") {
      K = load_presentation(resolve_path(t[1]));
    } else if (t[0] == "L") {
      L = load_presentation(resolve_path(t[1]));
    } else if (t[0] == "R") {
      R = t[1];
    } else if (t[0] == "S") {
      S = t[1];
    } else if (t[0] == "decomp") {
      auto more = parse_decomposition(read_file(resolve_path(t[1])));
      decomp.insert(decomp.end(), more.begin(), more.end());
    } else {
      throw InputError("unknown instance key '" + t[0] + "'");
    }
  }
  if (!K || !L || !R || !S) throw InputError("instance needs K, L, R and S lines");
  CriterionInstance inst{*K, *L, *R, *S, decomp};
  check_instance(inst);
  return inst;
}

CriterionInstance load_instance(const std::string& path) {
  const auto dir = std::filesystem::path(path).parent_path().string();
  return parse_instance(read_file(path), dir.empty() ? "." : dir);
}

CriterionInstance fixture_instance() {
  Presentation K(2, {{"R", parse_reduced("abA")}, {"R1", parse_reduced("a")}});
  Presentation L(2, {{"S", parse_reduced("b")}});
  return {K, L, "R", "S", {{{ReducedWord{}, "R1", 1}, {ReducedWord{}, "S", 1}}}};
}

}  // namespace smove
