#include "smove/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "smove/criterion.hpp"
#include "smove/error.hpp"
#include "smove/playground.hpp"
#include "smove/presentation.hpp"
#include "smove/slicing.hpp"
#include "smove/statesum.hpp"

namespace smove {

namespace {

// Plain-text body followed by a machine-readable key,value block.
class Report {
 public:
  void line(const std::string& s) { lines_.push_back(s); }
  void row(const std::string& k, const std::string& v) { rows_.push_back({k, v}); }
  void print(std::ostream& out) const {
    for (const auto& l : lines_) out << l << "\n";
    out << "---csv---\n";
    out << "key,value\n";
    for (const auto& [k, v] : rows_) out << k << "," << quote(v) << "\n";
  }

 private:
  static std::string quote(const std::string& v) {
    if (v.find_first_of(",\"\n") == std::string::npos) return v;
    std::string q = "\"";
    for (char c : v) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
  }
  std::vector<std::string> lines_;
  std::vector<std::pair<std::string, std::string>> rows_;
};

std::uint64_t default_seed() {
  if (const char* s = std::getenv("SMOVE_SEED")) {
    try {
      return std::stoull(s);
    } catch (const std::exception&) {
      throw InputError("SMOVE_SEED is not a number");
    }
  }
  return 1;
}

std::string digest(const std::vector<std::string>& paths) {
  std::uint64_t h = 1469598103934665603ull;
  for (const auto& p : paths) {
    for (unsigned char c : read_file(p)) {
      h ^= c;
      h *= 1099511628211ull;
    }
  }
  std::ostringstream out;
  out << std::hex << std::setw(16) << std::setfill('0') << h;
  return out.str();
}

const char* tf(bool b) { return b ? "true" : "false"; }
const char* pf(bool b) { return b ? "PASS" : "FAIL"; }

IdentificationType parse_type(const std::string& s) {
  if (s == "long") return IdentificationType::Longitudinal;
  if (s == "mer") return IdentificationType::Meridian;
  throw InputError("type must be long or mer, got '" + s + "'");
}

Side parse_side(const std::string& s) {
  if (s == "K" || s == "R") return Side::K;
  if (s == "L" || s == "S") return Side::L;
  throw InputError("side must be K or L");
}

QMove parse_qmove_for(const std::string& spec, const CriterionInstance& inst, Side side) {
  const ScriptMove m = parse_move_line(spec);
  return resolve(m, side == Side::K ? inst.K : inst.L);
}

void echo(Report& rep, const std::vector<std::string>& args) {
  std::string cmd;
  for (const auto& a : args) cmd += (cmd.empty() ? "" : " ") + a;
  rep.row("command", cmd);
}

struct Options {
  std::uint64_t seed = 0;
  // word
  std::vector<std::string> words;
  // files
  std::string pres, moves, instance, table, relations, backend_file, out_dir;
  std::vector<std::string> graphs;
  // criterion
  std::string R, S, Rk, by, move = "inv", side = "K", qmove, nielsen, one_side;
  int gens = 2, factors = 2, conj_len = 3;
  // slicing
  std::string piece_type, dominant = "R";
  bool identify = false;
  // playground
  std::string type = "long", family = "diag";
  std::uint32_t p = 101;
  int d = 4;
  bool gauge_flag = false, obstruction = false, no_alias = false, trivial_spel = false;
  // statesum
  int jobs = 1;
  std::string P, g, x3;
  unsigned v = 1;
  std::vector<std::string> kdata, ldata;
};

Backend backend_for(const Options& o, const std::vector<std::string>& labels) {
  Backend b = [&] {
    if (!o.backend_file.empty()) return parse_backend(read_file(o.backend_file));
    BackendFamily fam;
    if (o.family == "diag") {
      fam = BackendFamily::Diagonal;
    } else if (o.family == "poly") {
      fam = BackendFamily::PolynomialInM;
    } else {
      throw InputError("family must be diag or poly");
    }
    return make_backend(labels, o.p, o.d, o.seed, fam, !o.no_alias);
  }();
  return o.trivial_spel ? with_trivial_spel(b) : b;
}

// ---- word ------------------------------------------------------------------

int cmd_word(const std::string& op, const Options& o, const std::vector<std::string>& args,
             std::ostream& out) {
  Report rep;
  auto need = [&](std::size_t n) {
    if (o.words.size() != n) {
      throw InputError("word " + op + " takes " + std::to_string(n) + " argument(s)");
    }
  };
  std::string result;
  int code = 0;
  if (op == "reduce") {
    need(1);
    result = format_word(parse_reduced(o.words[0]));
  } else if (op == "invert") {
    need(1);
    result = format_word(invert(parse_word(o.words[0])));
  } else if (op == "mul") {
    need(2);
    result = format_word(multiply(parse_word(o.words[0]), parse_word(o.words[1])));
  } else if (op == "comm") {
    need(2);
    result = format_word(commutator(parse_word(o.words[0]), parse_word(o.words[1])));
  } else if (op == "conj") {
    need(2);
    result = format_word(conjugate(parse_word(o.words[0]), parse_word(o.words[1])));
  } else if (op == "equal") {
    need(2);
    const bool eq = equal(parse_word(o.words[0]), parse_word(o.words[1]));
    result = tf(eq);
    code = eq ? 0 : 1;
  } else if (op == "subst") {
    need(3);
    const Word gen = parse_word(o.words[1]);
    if (gen.size() != 1 || gen[0].sign() < 0) throw InputError("subst needs a positive generator letter");
    result = format_word(substitute(parse_word(o.words[0]), gen[0].index(), parse_word(o.words[2])));
  } else {
    throw InputError("unknown word operation " + op);
  }
  rep.line(result);
  echo(rep, args);
  rep.row("result", result);
  rep.print(out);
  return code;
}

// ---- pres ------------------------------------------------------------------

int cmd_pres(const Options& o, const std::vector<std::string>& args, std::ostream& out) {
  Report rep;
  Presentation P = load_presentation(o.pres);
  std::vector<std::string> inputs{o.pres};
  if (!o.moves.empty()) {
    inputs.push_back(o.moves);
    const auto moves = parse_moves(read_file(o.moves));
    for (const auto& m : moves) {
      P = apply_script_move(P, m);
      rep.line("-- " + format_move(m));
    }
    rep.row("moves", std::to_string(moves.size()));
  }
  std::istringstream text(format_presentation(P));
  for (std::string l; std::getline(text, l);) rep.line(l);
  echo(rep, args);
  rep.row("inputs", digest(inputs));
  rep.row("generators", std::to_string(P.generator_count()));
  rep.row("relators", std::to_string(P.size()));
  rep.print(out);
  return 0;
}

// ---- crit ------------------------------------------------------------------

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw InputError("cannot write '" + path + "'");
  f << text;
}

int cmd_crit(const std::string& op, const Options& o, const std::vector<std::string>& args,
             std::ostream& out) {
  Report rep;
  int code = 0;
  if (op == "verify") {
    const auto inst = load_instance(o.instance);
    const bool ok = verify(inst);
    const bool star = verify_star(inst);
    rep.line(std::string("verify: ") + tf(ok));
    rep.line(std::string("star form: ") + tf(star));
    rep.line("R S^-1 = " + format_word(product_word(inst)));
    rep.line("triple-star word = " + format_word(triple_star_word(inst)));
    echo(rep, args);
    rep.row("inputs", digest({o.instance}));
    rep.row("verify", tf(ok));
    rep.row("star", tf(star));
    code = ok ? 0 : 1;
  } else if (op == "residual") {
    const Side side = parse_side(o.side);
    const std::string base_text = side == Side::K ? o.R : o.S;
    if (base_text.empty()) throw InputError(side == Side::K ? "--R is required" : "--S is required");
    const ReducedWord w = parse_reduced(base_text);
    ReducedWord moved;
    if (o.move == "inv") {
      moved = invert(w);
    } else if (o.move == "mulr") {
      if (o.Rk.empty()) throw InputError("--move mulr needs --Rk");
      moved = multiply(w, parse_word(o.Rk));
    } else if (o.move == "conj") {
      const Word g = parse_word(o.by);
      if (g.size() != 1) throw InputError("--by must be a single letter");
      moved = conjugate(g, w);
    } else {
      throw InputError("--move must be inv, mulr or conj");
    }
    const ReducedWord res = side == Side::K ? residual_R(w, moved) : residual_S(w, moved);
    rep.line(format_word(res));
    rep.line(std::string(side == Side::K ? "R' = " : "S' = ") + format_word(moved));
    echo(rep, args);
    rep.row("residual", format_word(res));
  } else if (op == "gauge") {
    const auto inst = load_instance(o.instance);
    const auto g = gauge(inst);
    rep.line("S R^-1 = " + format_word(product_word(g)));
    rep.line("invert(R S^-1) = " + format_word(invert(product_word(inst))));
    for (const auto& f : g.decomp) rep.line(format_factor(f));
    const bool ok = verify(g);
    rep.line(std::string("verify: ") + tf(ok));
    echo(rep, args);
    rep.row("inputs", digest({o.instance}));
    rep.row("verify", tf(ok));
    code = ok ? 0 : 1;
  } else if (op == "rescheck") {
    const auto inst = load_instance(o.instance);
    const auto r = residual_commutator_check(inst);
    rep.line("L' = " + format_word(r.residual));
    rep.line("inverse commutator product = " + format_word(r.inverse_product));
    rep.line("M'^-1 = " + format_word(r.residual_from_S));
    rep.line(std::string("check: ") + pf(r.ok()));
    echo(rep, args);
    rep.row("inputs", digest({o.instance}));
    rep.row("check", pf(r.ok()));
    code = r.ok() ? 0 : 1;
  } else if (op == "transport") {
    const auto inst = load_instance(o.instance);
    const Side side = parse_side(o.side);
    const auto tr = transport_qmove(inst, side, parse_qmove_for(o.qmove, inst, side));
    rep.line(std::string(side == Side::K ? "L' = " : "M'^-1 = ") + format_word(tr.residual));
    rep.line("check word = " + format_word(tr.check_word));
    rep.line(std::string("transport: ") + pf(tr.ok()));
    echo(rep, args);
    rep.row("inputs", digest({o.instance}));
    rep.row("residual", format_word(tr.residual));
    code = tr.ok() ? 0 : 1;
  } else if (op == "nielsen") {
    const auto inst = load_instance(o.instance);
    const auto m = parse_move_line(o.nielsen);
    const auto* nm = std::get_if<NielsenMove>(&m);
    if (!nm) throw InputError("--move must be a Nielsen move");
    const auto moved = o.one_side.empty() ? apply_nielsen_to_instance(inst, *nm)
                                          : apply_nielsen_one_side(inst, parse_side(o.one_side), *nm);
    const bool ok = verify(moved);
    rep.line("R = " + format_word(word_R(moved)));
    rep.line("S = " + format_word(word_S(moved)));
    rep.line(std::string("verify: ") + tf(ok));
    echo(rep, args);
    rep.row("inputs", digest({o.instance}));
    rep.row("verify", tf(ok));
    code = ok ? 0 : 1;
  } else if (op == "build") {
    const auto inst = build_instance(o.seed, o.gens, o.factors, o.conj_len);
    const std::string k = format_presentation(inst.K), l = format_presentation(inst.L);
    const std::string body = "K K.pres\nL L.pres\nR " + inst.R + "\nS " + inst.S + "\n" +
                             format_decomposition(inst.decomp);
    if (!o.out_dir.empty()) {
      std::filesystem::create_directories(o.out_dir);
      write_file(o.out_dir + "/K.pres", k);
      write_file(o.out_dir + "/L.pres", l);
      write_file(o.out_dir + "/instance.txt", body);
      rep.line("wrote " + o.out_dir + "/instance.txt");
    }
    rep.line("# K");
    std::istringstream ks(k), ls(l), bs(body);
    for (std::string x; std::getline(ks, x);) rep.line(x);
    rep.line("# L");
    for (std::string x; std::getline(ls, x);) rep.line(x);
    rep.line("# instance");
    for (std::string x; std::getline(bs, x);) rep.line(x);
    rep.line(std::string("verify: ") + tf(verify(inst)));
    echo(rep, args);
    rep.row("seed", std::to_string(o.seed));
    rep.row("verify", tf(verify(inst)));
  } else {
    throw InputError("unknown crit operation " + op);
  }
  rep.print(out);
  return code;
}

// ---- slice / smove ---------------------------------------------------------

int cmd_slice(const Options& o, const std::vector<std::string>& args, std::ostream& out) {
  Report rep;
  const Word R = parse_word(o.R.empty() ? "1" : o.R);
  const Word S = parse_word(o.S.empty() ? "1" : o.S);
  SliceSequence seq;
  if (o.piece_type == "bag") {
    seq = slice_bag(R, o.identify);
  } else if (o.piece_type == "invpair") {
    seq = slice_inverse_pair(R);
  } else if (o.piece_type == "comm") {
    if (o.dominant != "R" && o.dominant != "S") throw InputError("--dominant must be R or S");
    seq = slice_commutator(R, S, o.dominant == "R" ? Dominant::RFirst : Dominant::SFirst, o.identify);
  } else if (o.piece_type == "prod") {
    seq = slice_product(R, S);
  } else {
    throw InputError("--type must be bag, invpair, comm or prod");
  }
  std::istringstream d(dump(seq));
  for (std::string l; std::getline(d, l);) rep.line(l);
  const auto v = validate(seq);
  rep.line(std::string("valid: ") + tf(v.ok));
  const std::string b = v.ok ? format_word(boundary_trace(seq)) : "?";
  rep.line("boundary: " + b);
  echo(rep, args);
  rep.row("valid", tf(v.ok));
  rep.row("boundary", b);
  rep.row("moves", std::to_string(seq.moves.size()));
  rep.print(out);
  return v.ok ? 0 : 1;
}

int cmd_smove(const Options& o, const std::vector<std::string>& args, std::ostream& out) {
  Report rep;
  const auto inst = load_instance(o.instance);
  std::optional<Residual> res;
  if (!o.qmove.empty()) {
    const Side side = parse_side(o.side);
    const auto tr = transport_qmove(inst, side, parse_qmove_for(o.qmove, inst, side));
    res = Residual{side, side == Side::K ? word_R(tr.instance) : word_S(tr.instance), tr.residual};
  }
  const auto seq = build_abstract(inst, parse_type(o.type), res);
  std::istringstream d(dump(seq));
  for (std::string l; std::getline(d, l);) rep.line(l);
  echo(rep, args);
  rep.row("inputs", digest({o.instance}));
  rep.row("slices", std::to_string(seq.slices.size()));
  rep.row("perturbation_index", std::to_string(seq.perturbation_index));
  rep.print(out);
  return 0;
}

// ---- inv -------------------------------------------------------------------

int combine_codes(const std::vector<Verdict>& vs) {
  bool obstructed = false;
  for (auto v : vs) {
    if (v == Verdict::Fail) return 1;
    obstructed = obstructed || v == Verdict::Obstructed;
  }
  return obstructed ? 3 : 0;
}

void add_report(Report& rep, const std::string& name, const InvarianceReport& r) {
  for (const auto& [what, ok] : r.checks) rep.line("  " + what + ": " + tf(ok));
  rep.line(name + ": " + verdict_name(r.verdict));
  if (!r.witness.empty()) rep.line("  witness: " + r.witness);
  rep.row(name, verdict_name(r.verdict));
}

int cmd_inv_playground(const Options& o, const std::vector<std::string>& args, std::ostream& out) {
  Report rep;
  const auto inst = load_instance(o.instance);
  const auto type = parse_type(o.type);
  const Backend b = backend_for(o, labels_for(inst));
  std::vector<Verdict> verdicts;
  const auto seq = build_abstract(inst, type);
  const Matrix I = perturbed_invariant(seq, b);
  const Matrix closed = spel_product(seq, b);
  rep.line("backend: p=" + std::to_string(b.p()) + " d=" + std::to_string(b.dim()) +
           " entries=" + std::to_string(b.entries().size()));
  rep.line("invariant: " + format_matrix(I));
  rep.line("spherical product: " + format_matrix(closed));
  rep.line(std::string("closed form: ") + pf(I == closed));
  verdicts.push_back(I == closed ? Verdict::Pass : Verdict::Fail);
  if (!o.qmove.empty()) {
    const Side side = parse_side(o.side);
    const auto r = check_inside_invariance(inst, parse_qmove_for(o.qmove, inst, side), side, type, b);
    add_report(rep, "inside", r);
    verdicts.push_back(r.verdict);
  }
  if (o.gauge_flag) {
    const auto r = check_gauge(inst, type, b);
    add_report(rep, "gauge", r);
    verdicts.push_back(r.verdict);
  }
  if (o.obstruction) {
    const auto r = between_type_obstruction(inst, type, b);
    add_report(rep, "obstruction", r);
    verdicts.push_back(r.verdict);
  }
  echo(rep, args);
  rep.row("inputs", digest({o.instance}));
  rep.row("seed", std::to_string(o.seed));
  rep.row("invariant", format_entries(I));
  rep.print(out);
  return combine_codes(verdicts);
}

int cmd_inv_statesum(const Options& o, const std::vector<std::string>& args, std::ostream& out) {
  Report rep;
  if (o.table.empty()) throw InputError("--table is required");
  const auto t = load_table(o.table);
  std::vector<std::string> inputs{o.table};
  std::vector<TrivalentGraph> graphs;
  for (const auto& f : o.graphs) {
    graphs.push_back(load_graph(f));
    inputs.push_back(f);
  }
  // Independent graphs may be summed concurrently; each sum is exact, so the
  // results do not depend on the job count.
  std::vector<Polynomial> sums(graphs.size());
  const std::size_t jobs = static_cast<std::size_t>(std::max(1, o.jobs));
  for (std::size_t start = 0; start < graphs.size(); start += jobs) {
    std::vector<std::future<Polynomial>> fs;
    for (std::size_t i = start; i < std::min(graphs.size(), start + jobs); ++i) {
      fs.push_back(std::async(jobs > 1 ? std::launch::async : std::launch::deferred,
                              [&, i] { return state_sum(graphs[i], t); }));
    }
    for (std::size_t i = 0; i < fs.size(); ++i) sums[start + i] = fs[i].get();
  }
  int code = 0;
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    rep.line("state_sum(" + std::filesystem::path(o.graphs[i]).filename().string() + ") = " +
             format_polynomial(sums[i]));
  }
  if (graphs.size() >= 2) {
    TrivalentGraph u;
    Polynomial prod(1);
    for (std::size_t i = 0; i < graphs.size(); ++i) {
      u = disjoint_union(u, graphs[i]);
      prod *= sums[i];
    }
    const Polynomial whole = state_sum(u, t);
    rep.line("state_sum(union) = " + format_polynomial(whole));
    rep.line(std::string("multiplicativity: ") + pf(whole == prod));
    rep.row("multiplicativity", pf(whole == prod));
    code = whole == prod ? 0 : 1;
  }
  if (!o.moves.empty()) {
    inputs.push_back(o.moves);
    const auto moves = load_moves(o.moves);
    std::vector<Relation> rels;
    if (!o.relations.empty()) {
      inputs.push_back(o.relations);
      rels = load_relations(o.relations);
    }
    for (std::size_t k = 0; k < moves.size(); ++k) {
      rep.line("move " + std::to_string(k) + ": " +
               format_polynomial(move_value(moves[k].first, moves[k].second, t)));
    }
    const Polynomial inv = invariant(moves, rels, t);
    rep.line("invariant = " + format_polynomial(inv));
    rep.row("invariant", format_polynomial(inv));
  }
  echo(rep, args);
  rep.row("inputs", digest(inputs));
  rep.print(out);
  return code;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (std::istringstream in(s); std::getline(in, cur, ';');) out.push_back(cur);
  return out;
}

int cmd_inv_poly(const Options& o, const std::vector<std::string>& args, std::ostream& out) {
  Report rep;
  std::vector<Polynomial> P;
  for (const auto& s : split_list(o.P)) P.push_back(parse_polynomial(s));
  const auto r = poly_local_invariant(P, parse_polynomial(o.g), parse_rational(o.x3));
  rep.line("c_3 = " + format_rational(r.c3));
  for (std::size_t k = 0; k < r.Q.size(); ++k) {
    rep.line("Q_" + std::to_string(k + 1) + (k == 3 ? "' = " : " = ") + format_polynomial(from_dense(r.Q[k], r.var)));
  }
  rep.line("invariant = " + format_polynomial(r.invariant));
  echo(rep, args);
  rep.row("c3", format_rational(r.c3));
  rep.row("invariant", format_polynomial(r.invariant));
  rep.print(out);
  return 0;
}

int cmd_demo_nonmult(const Options& o, const std::vector<std::string>& args, std::ostream& out) {
  Report rep;
  const auto e = nonmult_expansion();
  rep.line("1) = " + format_polynomial(e.one));
  rep.line("2) = " + format_polynomial(e.two));
  rep.line(format_polynomial(e.result));
  rep.row("polynomial", format_polynomial(e.result));
  if (!o.table.empty()) {
    const auto r = nonmult_check(load_table(o.table));
    rep.line("S = " + format_polynomial(r.S));
    rep.line("value = " + format_polynomial(r.value));
    const char* verdict = r.verdict == NonmultVerdict::Multiplicative      ? "multiplicative locus"
                          : r.verdict == NonmultVerdict::NonMultiplicative ? "non-multiplicative"
                                                                           : "symbolic";
    rep.line(std::string("verdict: ") + verdict);
    rep.row("value", format_polynomial(r.value));
    rep.row("verdict", verdict);
    rep.row("inputs", digest({o.table}));
  }
  echo(rep, args);
  rep.print(out);
  return 0;
}

int cmd_demo_stabilization(const Options& o, const std::vector<std::string>& args, std::ostream& out) {
  Report rep;
  const Backend b = backend_for(o, labels_for(fixture_instance()));
  const auto r = stabilization_demo(b, o.v);
  rep.line(r.witness);
  rep.line("stabilization: " + verdict_name(r.verdict));
  echo(rep, args);
  rep.row("forced_equality", tf(r.forced_equality));
  rep.row("annihilator", tf(r.annihilator_found));
  rep.print(out);
  return exit_code(r.verdict);
}

std::vector<SideData> parse_side_data(const std::vector<std::string>& items) {
  std::vector<SideData> out;
  for (const auto& it : items) {
    const auto colon = it.rfind(':');
    if (colon == std::string::npos) throw InputError("expected <instance file>:<long|mer>, got " + it);
    out.push_back({load_instance(it.substr(0, colon)), parse_type(it.substr(colon + 1))});
  }
  return out;
}

int cmd_three_tests(const Options& o, const std::vector<std::string>& args, std::ostream& out) {
  Report rep;
  const auto K = parse_side_data(o.kdata);
  const auto L = parse_side_data(o.ldata);
  std::vector<std::string> labels;
  for (const auto* side : {&K, &L}) {
    for (const auto& s : *side) {
      for (const auto& l : labels_for(s.inst)) labels.push_back(l);
    }
  }
  const Backend b = backend_for(o, labels);
  const auto r = three_tests(K, L, b);
  rep.line(std::string("I(K) = I(L): ") + tf(r.same));
  rep.line(std::string("I_gauge(K) = I(L): ") + tf(r.gauge_K));
  rep.line(std::string("I(K) = I_gauge(L): ") + tf(r.gauge_L));
  if (r.counterexample_flag()) rep.line("all three tests differ: we have detected an Andrews-Curtis counterexample candidate");
  echo(rep, args);
  rep.row("test1", tf(r.same));
  rep.row("test2", tf(r.gauge_K));
  rep.row("test3", tf(r.gauge_L));
  rep.print(out);
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"s-move laboratory", "smove"};
  app.require_subcommand(1);
  Options o;
  std::string word_op, crit_op;

  auto* word = app.add_subcommand("word", "free group word operations");
  word->add_option("op", word_op, "reduce|invert|mul|comm|conj|equal|subst")->required();
  word->add_option("words", o.words, "word literals");

  auto* pres = app.add_subcommand("pres", "apply a moves file to a presentation");
  pres->add_option("--pres", o.pres)->required();
  pres->add_option("--moves", o.moves);

  auto* crit = app.add_subcommand("crit", "commutator criterion");
  crit->add_option("op", crit_op, "verify|residual|gauge|rescheck|transport|nielsen|build")->required();
  crit->add_option("--instance", o.instance);
  crit->add_option("--R", o.R);
  crit->add_option("--S", o.S);
  crit->add_option("--Rk", o.Rk);
  crit->add_option("--by", o.by);
  crit->add_option("--move", o.move);
  crit->add_option("--side", o.side);
  crit->add_option("--qmove", o.qmove);
  crit->add_option("--nielsen", o.nielsen);
  crit->add_option("--one-side", o.one_side);
  crit->add_option("--gens", o.gens);
  crit->add_option("--factors", o.factors);
  crit->add_option("--conj-len", o.conj_len);
  crit->add_option("--out", o.out_dir);
  crit->add_option("--seed", o.seed);

  auto* slice = app.add_subcommand("slice", "graph-level slicings");
  auto* piece = slice->add_subcommand("piece", "slice one 2-cell piece");
  slice->require_subcommand(1);
  piece->add_option("--type", o.piece_type)->required();
  piece->add_option("--R", o.R);
  piece->add_option("--S", o.S);
  piece->add_flag("--identify", o.identify);
  piece->add_option("--dominant", o.dominant);

  auto* smove = app.add_subcommand("smove", "abstract s-move 3-cell sequences");
  auto* sbuild = smove->add_subcommand("build", "eight-slice sequence");
  smove->require_subcommand(1);
  sbuild->add_option("--instance", o.instance)->required();
  sbuild->add_option("--type", o.type);
  sbuild->add_option("--qmove", o.qmove);
  sbuild->add_option("--side", o.side);

  auto backend_opts = [&](CLI::App* c) {
    c->add_option("--seed", o.seed);
    c->add_option("--p", o.p);
    c->add_option("--d", o.d);
    c->add_option("--family", o.family);
    c->add_option("--backend", o.backend_file);
    c->add_flag("--no-alias", o.no_alias);
    c->add_flag("--trivial-spel", o.trivial_spel);
  };

  auto* inv = app.add_subcommand("inv", "invariants");
  inv->require_subcommand(1);
  auto* play = inv->add_subcommand("playground", "commuting-matrix invariant");
  play->add_option("--instance", o.instance)->required();
  play->add_option("--type", o.type);
  play->add_option("--qmove", o.qmove);
  play->add_option("--side", o.side);
  play->add_flag("--gauge", o.gauge_flag);
  play->add_flag("--obstruction", o.obstruction);
  backend_opts(play);
  auto* ss = inv->add_subcommand("statesum", "3j state sums");
  ss->add_option("--graphs", o.graphs)->expected(1, -1);
  ss->add_option("--table", o.table);
  ss->add_option("--moves", o.moves);
  ss->add_option("--relations", o.relations);
  ss->add_option("--jobs", o.jobs);
  auto* poly = inv->add_subcommand("poly", "polynomial local invariant");
  poly->add_option("--P", o.P, "six polynomials separated by ';'")->required();
  poly->add_option("--g", o.g)->required();
  poly->add_option("--x3", o.x3)->required();

  auto* demo = app.add_subcommand("demo", "demonstrations");
  demo->require_subcommand(1);
  auto* nonmult = demo->add_subcommand("nonmult", "non-multiplicativity quartic");
  nonmult->add_option("--table", o.table);
  auto* stab = demo->add_subcommand("stabilization", "sphere stabilization cancellation");
  stab->add_option("--v", o.v);
  backend_opts(stab);

  auto* test = app.add_subcommand("test", "test protocols");
  test->require_subcommand(1);
  auto* three = test->add_subcommand("three-tests", "compare two sides");
  three->add_option("--k", o.kdata, "<instance>:<long|mer>")->required();
  three->add_option("--l", o.ldata, "<instance>:<long|mer>")->required();
  backend_opts(three);

  try {
    o.seed = default_seed();
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
    if (o.v < 1) throw InputError("--v must be >= 1");
    if (word->parsed()) return cmd_word(word_op, o, args, out);
    if (pres->parsed()) return cmd_pres(o, args, out);
    if (crit->parsed()) return cmd_crit(crit_op, o, args, out);
    if (piece->parsed()) return cmd_slice(o, args, out);
    if (sbuild->parsed()) return cmd_smove(o, args, out);
    if (play->parsed()) return cmd_inv_playground(o, args, out);
    if (ss->parsed()) return cmd_inv_statesum(o, args, out);
    if (poly->parsed()) return cmd_inv_poly(o, args, out);
    if (nonmult->parsed()) return cmd_demo_nonmult(o, args, out);
    if (stab->parsed()) return cmd_demo_stabilization(o, args, out);
    if (three->parsed()) return cmd_three_tests(o, args, out);
    throw InputError("no command given");
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace smove
