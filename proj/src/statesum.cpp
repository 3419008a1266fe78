#include "smove/statesum.hpp"

#include <algorithm>
#include <filesystem>
#include <numeric>
#include <set>
#include <sstream>

#include "smove/presentation.hpp"

namespace smove {

void TrivalentGraph::check() const {
  if (vertex_count < 0 || circles < 0 || points < 0) throw InputError("negative component count");
  std::vector<int> deg(static_cast<std::size_t>(vertex_count), 0);
  for (const auto& [a, b] : edges) {
    if (a < 0 || b < 0 || a >= vertex_count || b >= vertex_count) {
      throw InputError("edge endpoint out of range");
    }
    ++deg[static_cast<std::size_t>(a)];
    ++deg[static_cast<std::size_t>(b)];
  }
  for (int v = 0; v < vertex_count; ++v) {
    if (deg[static_cast<std::size_t>(v)] != 3) {
      throw InputError("vertex " + std::to_string(v) + " has degree " +
                       std::to_string(deg[static_cast<std::size_t>(v)]) + ", expected 3");
    }
  }
}

TrivalentGraph disjoint_union(const TrivalentGraph& a, const TrivalentGraph& b) {
  TrivalentGraph out = a;
  for (const auto& [x, y] : b.edges) out.edges.push_back({x + a.vertex_count, y + a.vertex_count});
  out.vertex_count += b.vertex_count;
  out.circles += b.circles;
  out.points += b.points;
  return out;
}

std::string canonical_form(const TrivalentGraph& g) {
  if (g.vertex_count > 8) throw InputError("canonical labelling is limited to 8 vertices");
  std::vector<int> perm(static_cast<std::size_t>(g.vertex_count));
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::pair<int, int>> best;
  bool have = false;
  do {
    std::vector<std::pair<int, int>> e;
    for (const auto& [a, b] : g.edges) {
      const int x = perm[static_cast<std::size_t>(a)], y = perm[static_cast<std::size_t>(b)];
      e.push_back({std::min(x, y), std::max(x, y)});
    }
    std::sort(e.begin(), e.end());
    if (!have || e < best) {
      best = std::move(e);
      have = true;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  std::ostringstream out;
  out << "v" << g.vertex_count << " c" << g.circles << " p" << g.points << " |";
  for (const auto& [a, b] : best) out << " " << a << "-" << b;
  return out.str();
}

bool isomorphic(const TrivalentGraph& a, const TrivalentGraph& b) {
  return canonical_form(a) == canonical_form(b);
}

TrivalentGraph circle_graph(int n) {
  TrivalentGraph g;
  g.circles = n;
  return g;
}

TrivalentGraph point_graph() {
  TrivalentGraph g;
  g.points = 1;
  return g;
}

TrivalentGraph theta_graph() {
  TrivalentGraph g;
  g.vertex_count = 2;
  g.edges = {{0, 1}, {0, 1}, {0, 1}};
  return g;
}

std::vector<TrivalentGraph> all_trivalent_graphs(int max_vertices) {
  std::vector<TrivalentGraph> out;
  std::set<std::string> seen;
  for (int v = 0; v <= max_vertices; v += 2) {
    // Pair up the 3v half-edges in every possible way.
    const int stubs = 3 * v;
    std::vector<int> owner(static_cast<std::size_t>(stubs));
    for (int s = 0; s < stubs; ++s) owner[static_cast<std::size_t>(s)] = s / 3;
    std::vector<bool> used(static_cast<std::size_t>(stubs), false);
    std::vector<std::pair<int, int>> edges;
    std::function<void()> go = [&] {
      int first = -1;
      for (int s = 0; s < stubs; ++s) {
        if (!used[static_cast<std::size_t>(s)]) {
          first = s;
          break;
        }
      }
      if (first < 0) {
        TrivalentGraph g;
        g.vertex_count = v;
        g.edges = edges;
        if (seen.insert(canonical_form(g)).second) out.push_back(g);
        return;
      }
      used[static_cast<std::size_t>(first)] = true;
      for (int s = first + 1; s < stubs; ++s) {
        if (used[static_cast<std::size_t>(s)]) continue;
        used[static_cast<std::size_t>(s)] = true;
        edges.push_back({owner[static_cast<std::size_t>(first)], owner[static_cast<std::size_t>(s)]});
        go();
        edges.pop_back();
        used[static_cast<std::size_t>(s)] = false;
      }
      used[static_cast<std::size_t>(first)] = false;
    };
    go();
  }
  return out;
}

void check_chained(const MoveList& moves) {
  for (std::size_t k = 0; k + 1 < moves.size(); ++k) {
    if (!isomorphic(moves[k].second, moves[k + 1].first)) {
      throw InputError("move " + std::to_string(k) + " does not chain into move " + std::to_string(k + 1));
    }
  }
}

namespace {

Polynomial product_of_moves(const MoveList& moves, const ThreeJTable<Polynomial>& t) {
  check_chained(moves);
  Polynomial out(1);
  for (const auto& [before, after] : moves) out *= move_value(before, after, t);
  return out;
}

}  // namespace

Polynomial ideal_reduce(const Polynomial& value, const std::vector<Polynomial>& generators) {
  std::vector<Polynomial> gens;
  for (const auto& g : generators) {
    if (!g.is_zero()) gens.push_back(g);
  }
  if (gens.empty()) return value;
  for (const auto& g : gens) {
    if (g.is_constant()) return Polynomial(0);  // a unit generates everything
  }
  std::set<std::string> vars;
  for (const auto& g : gens) {
    for (const auto& v : g.variables()) vars.insert(v);
  }
  for (const auto& v : value.variables()) vars.insert(v);
  if (vars.size() > 1) {
    throw PreconditionError("ideal reduction supports a single indeterminate only");
  }
  const std::string var = *vars.begin();
  UPoly g = to_dense(gens[0], var);
  for (std::size_t i = 1; i < gens.size(); ++i) g = ugcd(g, to_dense(gens[i], var));
  return from_dense(umod(to_dense(value, var), g), var);
}

Polynomial invariant(const MoveList& moves, const std::vector<Relation>& relations,
                     const ThreeJTable<Polynomial>& t) {
  const Polynomial value = product_of_moves(moves, t);
  std::vector<Polynomial> gens;
  for (const auto& r : relations) gens.push_back(product_of_moves(r.a, t) - product_of_moves(r.b, t));
  return ideal_reduce(value, gens);
}

Polynomial circle_sum(const ThreeJTable<Polynomial>& t) {
  Polynomial s;
  for (Color a = 0; a < t.color_count(); ++a) s += t.get(a, a, a);
  return s;
}

NonmultExpansion nonmult_expansion() {
  auto v = [](const char* n) { return Polynomial::variable(n); };
  const Polynomial K0 = v("K0"), K1 = v("K1"), K2 = v("K2");
  const Polynomial L0 = v("L0"), L1 = v("L1"), L2 = v("L2");
  NonmultExpansion e;
  e.one = (K1 * L1 - K0 * L0) * (K2 * L2 - K1 * L1);
  e.two = (K1 - K0) * (K2 - K1) * (L1 - L0) * (L2 - L1);
  e.difference = e.two - e.one;
  // The outer slices of both spheres are points; the middle ones circles.
  Polynomial r = e.difference;
  for (const char* name : {"L0", "L2", "K0", "K2"}) r = r.substitute(name, Polynomial(1));
  r = r.substitute("K1", v("S")).substitute("L1", v("S"));
  e.result = r;
  return e;
}

Polynomial nonmult_expand() { return nonmult_expansion().result; }

NonmultReport nonmult_check(const ThreeJTable<Polynomial>& t) {
  NonmultReport rep;
  rep.S = circle_sum(t);
  const Polynomial q = nonmult_expand();
  if (!rep.S.is_constant()) {
    rep.value = q;
    rep.verdict = NonmultVerdict::Symbolic;
    return rep;
  }
  rep.value = Polynomial(q.evaluate({{"S", rep.S.constant_term()}}));
  rep.verdict = rep.value.is_zero() ? NonmultVerdict::Multiplicative : NonmultVerdict::NonMultiplicative;
  return rep;
}

PolyInvariantResult poly_local_invariant(const std::vector<Polynomial>& P, const Polynomial& g,
                                         const Rational& x3) {
  if (P.size() != 6) throw InputError("need exactly six polynomials P_1..P_6");
  std::set<std::string> vars;
  for (const auto& p : P) {
    for (const auto& v : p.variables()) vars.insert(v);
  }
  for (const auto& v : g.variables()) vars.insert(v);
  if (vars.size() > 1) throw InputError("polynomial invariant needs a single indeterminate");
  PolyInvariantResult r;
  r.var = vars.empty() ? "x" : *vars.begin();
  const UPoly G = to_dense(g, r.var);
  if (G.size() < 2) throw InputError("ideal generator must have positive degree");

  std::vector<UPoly> inv;
  for (std::size_t k = 0; k < 6; ++k) {
    r.P.push_back(umod(to_dense(P[k], r.var), G));
    auto i = uinverse_mod(r.P.back(), G);
    if (!i) {
      throw PreconditionError("P_" + std::to_string(k + 1) + " is not invertible modulo " +
                              format_polynomial(g));
    }
    inv.push_back(*i);
  }
  r.c3 = ueval(to_dense(P[2], r.var), x3);
  if (r.c3 == 0 || r.c3 == 1) {
    throw PreconditionError("c_3 = P_3(x_3) = " + format_rational(r.c3) + " must differ from 0 and 1");
  }
  for (std::size_t k = 0; k < 5; ++k) r.Q.push_back(umod(umul(r.P[k + 1], inv[k]), G));
  r.Q4_unperturbed = r.Q[3];
  r.P4_perturbed = umod(uscale_arg(to_dense(P[3], r.var), r.c3), G);
  r.Q[3] = umod(umul(r.P4_perturbed, inv[3]), G);
  UPoly prod{Rational(1)};
  for (const auto& q : r.Q) prod = umod(umul(prod, q), G);
  r.invariant = from_dense(prod, r.var);
  return r;
}

// ---- Files -----------------------------------------------------------------

namespace {

std::string strip(const std::string& line) {
  const auto hash = line.find('#');
  std::string s = hash == std::string::npos ? line : line.substr(0, hash);
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(strip(cur));
  return out;
}

int parse_int(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw InputError("bad " + what + " '" + s + "'");
  }
}

std::string resolve(const std::string& base, const std::string& p) {
  const std::filesystem::path path(p);
  return path.is_absolute() ? p : (std::filesystem::path(base) / path).string();
}

std::string dir_of(const std::string& path) {
  const auto d = std::filesystem::path(path).parent_path().string();
  return d.empty() ? "." : d;
}

}  // namespace

ThreeJTable<Polynomial> parse_table(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string raw;
  std::optional<int> colors;
  std::vector<std::pair<Triple, Polynomial>> entries;
  int max_color = -1;
  while (std::getline(in, raw)) {
    const std::string line = strip(raw);
    if (line.empty()) continue;
    const auto f = split(line, ',');
    if (f.size() == 2 && f[0] == "colors") {
      colors = parse_int(f[1], "colour count");
      continue;
    }
    if (f.size() != 4) throw InputError("table line must be 'a,b,c,value': " + line);
    Triple t{parse_int(f[0], "colour"), parse_int(f[1], "colour"), parse_int(f[2], "colour")};
    for (int c : t) {
      if (c < 0) throw InputError("negative colour in: " + line);
      max_color = std::max(max_color, c);
    }
    entries.push_back({t, parse_polynomial(f[3])});
  }
  return complete_table(entries, colors.value_or(std::max(1, max_color + 1)));
}

ThreeJTable<Polynomial> load_table(const std::string& path) { return parse_table(read_file(path)); }

TrivalentGraph parse_graph(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string raw;
  TrivalentGraph g;
  std::map<std::string, int> ids;
  std::vector<std::pair<std::string, std::string>> pending;
  while (std::getline(in, raw)) {
    const std::string line = strip(raw);
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string head;
    ls >> head;
    std::vector<std::string> args;
    for (std::string a; ls >> a;) args.push_back(a);
    if (head == "v" && args.size() == 1) {
      if (!ids.emplace(args[0], g.vertex_count).second) throw InputError("duplicate vertex " + args[0]);
      ++g.vertex_count;
    } else if (head == "e" && (args.size() == 2 || args.size() == 4)) {
      pending.push_back({args[0], args[1]});
    } else if (head == "circle" && args.empty()) {
      ++g.circles;
    } else if (head == "point" && args.empty()) {
      ++g.points;
    } else {
      throw InputError("unrecognised graph line: " + line);
    }
  }
  for (const auto& [a, b] : pending) {
    if (!ids.count(a) || !ids.count(b)) throw InputError("edge uses an undeclared vertex");
    g.edges.push_back({ids[a], ids[b]});
  }
  g.check();
  return g;
}

TrivalentGraph load_graph(const std::string& path) { return parse_graph(read_file(path)); }

MoveList load_moves(const std::string& path) {
  std::istringstream in(read_file(path));
  std::string raw;
  MoveList out;
  while (std::getline(in, raw)) {
    const std::string line = strip(raw);
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string head, a, b, extra;
    ls >> head >> a >> b;
    if (head != "move" || b.empty() || (ls >> extra)) throw InputError("expected 'move <before> <after>': " + line);
    out.push_back({load_graph(resolve(dir_of(path), a)), load_graph(resolve(dir_of(path), b))});
  }
  return out;
}

std::vector<Relation> load_relations(const std::string& path) {
  std::istringstream in(read_file(path));
  std::string raw;
  std::vector<Relation> out;
  while (std::getline(in, raw)) {
    const std::string line = strip(raw);
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string head, a, b, extra;
    ls >> head >> a >> b;
    if (head != "relation" || b.empty() || (ls >> extra)) {
      throw InputError("expected 'relation <moves> <moves>': " + line);
    }
    out.push_back({load_moves(resolve(dir_of(path), a)), load_moves(resolve(dir_of(path), b))});
  }
  return out;
}

}  // namespace smove
