#pragma once

// State sums on coloured trivalent graphs. A vertex whose edges carry colours
// a, b, c is weighted by the 3j-symbol |a b c|; a circle coloured c by |c c c|;
// a point by 1. The state sum adds the weight products over all colourings.

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "smove/error.hpp"
#include "smove/polynomial.hpp"

namespace smove {

template <std::uint32_t P>
struct ModP {
  std::uint32_t v = 0;
  ModP() = default;
  ModP(std::int64_t x) : v(static_cast<std::uint32_t>(((x % static_cast<std::int64_t>(P)) + P) % P)) {}  // NOLINT
  friend ModP operator+(ModP a, ModP b) { return ModP(static_cast<std::int64_t>((std::uint64_t{a.v} + b.v) % P)); }
  friend ModP operator-(ModP a, ModP b) { return ModP(static_cast<std::int64_t>((std::uint64_t{a.v} + P - b.v) % P)); }
  friend ModP operator*(ModP a, ModP b) { return ModP(static_cast<std::int64_t>(std::uint64_t{a.v} * b.v % P)); }
  ModP& operator+=(ModP o) { return *this = *this + o; }
  ModP& operator*=(ModP o) { return *this = *this * o; }
  friend bool operator==(ModP, ModP) = default;
};

using Color = int;
using Triple = std::array<Color, 3>;

inline Triple sorted_triple(Color a, Color b, Color c) {
  Triple t{a, b, c};
  if (t[0] > t[1]) std::swap(t[0], t[1]);
  if (t[1] > t[2]) std::swap(t[1], t[2]);
  if (t[0] > t[1]) std::swap(t[0], t[1]);
  return t;
}

// Symmetric table: one stored value per sorted triple; missing entries are 0.
template <class V>
class ThreeJTable {
 public:
  explicit ThreeJTable(int color_count = 1) : colors_(color_count) {
    if (color_count < 1) throw InputError("a table needs at least one colour");
  }

  int color_count() const { return colors_; }

  void set(Color a, Color b, Color c, const V& value) {
    for (Color x : {a, b, c}) {
      if (x < 0 || x >= colors_) throw InputError("colour " + std::to_string(x) + " out of range");
    }
    const Triple k = sorted_triple(a, b, c);
    if (auto it = entries_.find(k); it != entries_.end() && !(it->second == value)) {
      throw InputError("conflicting entries for the triple (" + std::to_string(a) + "," +
                       std::to_string(b) + "," + std::to_string(c) + ")");
    }
    entries_[k] = value;
    lookup_.clear();
  }

  V get(Color a, Color b, Color c) const {
    auto it = entries_.find(sorted_triple(a, b, c));
    return it == entries_.end() ? V(0) : it->second;
  }

  const std::map<Triple, V>& entries() const { return entries_; }

  // Dense lookup indexed by a*n*n + b*n + c, all permutations filled.
  const std::vector<V>& dense() const {
    if (lookup_.empty()) {
      const int n = colors_;
      lookup_.assign(static_cast<std::size_t>(n * n * n), V(0));
      for (Color a = 0; a < n; ++a) {
        for (Color b = 0; b < n; ++b) {
          for (Color c = 0; c < n; ++c) lookup_[static_cast<std::size_t>((a * n + b) * n + c)] = get(a, b, c);
        }
      }
    }
    return lookup_;
  }

 private:
  int colors_;
  std::map<Triple, V> entries_;
  mutable std::vector<V> lookup_;
};

template <class V>
ThreeJTable<V> complete_table(const std::vector<std::pair<Triple, V>>& partial, int color_count) {
  ThreeJTable<V> t(color_count);
  for (const auto& [k, v] : partial) t.set(k[0], k[1], k[2], v);
  return t;
}

struct TrivalentGraph {
  int vertex_count = 0;
  std::vector<std::pair<int, int>> edges;  // (v, v) is a loop
  int circles = 0;
  int points = 0;

  // Throws InputError unless every vertex has degree exactly 3.
  void check() const;
  std::size_t slots() const { return edges.size() + static_cast<std::size_t>(circles); }
};

TrivalentGraph disjoint_union(const TrivalentGraph& a, const TrivalentGraph& b);
// Invariant under relabelling vertices and reordering edges. At most 8 vertices.
std::string canonical_form(const TrivalentGraph& g);
bool isomorphic(const TrivalentGraph& a, const TrivalentGraph& b);
TrivalentGraph circle_graph(int n = 1);
TrivalentGraph point_graph();
TrivalentGraph theta_graph();

// All trivalent multigraphs (loops and parallel edges allowed) with at most
// max_vertices vertices and no circle components, up to isomorphism.
std::vector<TrivalentGraph> all_trivalent_graphs(int max_vertices);

// coloring: one colour per edge, then one per circle.
template <class V>
V eval_coloring(const TrivalentGraph& g, const std::vector<Color>& coloring, const ThreeJTable<V>& t) {
  if (coloring.size() != g.slots()) throw InputError("colouring must cover every edge and circle");
  std::vector<std::vector<Color>> at(static_cast<std::size_t>(g.vertex_count));
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    at[static_cast<std::size_t>(g.edges[e].first)].push_back(coloring[e]);
    at[static_cast<std::size_t>(g.edges[e].second)].push_back(coloring[e]);
  }
  V out(1);
  for (const auto& cs : at) {
    if (cs.size() != 3) throw InputError("vertex without three edge ends");
    out *= t.get(cs[0], cs[1], cs[2]);
  }
  for (std::size_t i = g.edges.size(); i < coloring.size(); ++i) out *= t.get(coloring[i], coloring[i], coloring[i]);
  return out;
}

// Exhaustive enumeration of all colourings. Vertex weights are multiplied in
// as soon as the last edge at a vertex is coloured.
template <class V>
V state_sum(const TrivalentGraph& g, const ThreeJTable<V>& t) {
  g.check();
  const int n = t.color_count();
  const auto& dense = t.dense();
  const std::size_t E = g.edges.size();
  const std::size_t slots = g.slots();
  std::vector<int> last(static_cast<std::size_t>(g.vertex_count), -1);
  for (std::size_t e = 0; e < E; ++e) {
    last[static_cast<std::size_t>(g.edges[e].first)] = static_cast<int>(e);
    last[static_cast<std::size_t>(g.edges[e].second)] = static_cast<int>(e);
  }
  std::vector<std::vector<int>> completes(E);
  for (int v = 0; v < g.vertex_count; ++v) completes[static_cast<std::size_t>(last[static_cast<std::size_t>(v)])].push_back(v);
  std::vector<std::array<Color, 3>> ends(static_cast<std::size_t>(g.vertex_count));
  std::vector<int> fill(static_cast<std::size_t>(g.vertex_count), 0);

  V total(0);
  std::function<void(std::size_t, const V&)> go = [&](std::size_t k, const V& acc) {
    if (k == slots) {
      total += acc;
      return;
    }
    for (Color c = 0; c < n; ++c) {
      if (k >= E) {
        go(k + 1, acc * dense[static_cast<std::size_t>((c * n + c) * n + c)]);
        continue;
      }
      const auto [a, b] = g.edges[k];
      ends[static_cast<std::size_t>(a)][static_cast<std::size_t>(fill[static_cast<std::size_t>(a)]++)] = c;
      ends[static_cast<std::size_t>(b)][static_cast<std::size_t>(fill[static_cast<std::size_t>(b)]++)] = c;
      V next = acc;
      for (int v : completes[k]) {
        const auto& x = ends[static_cast<std::size_t>(v)];
        next = next * dense[static_cast<std::size_t>((x[0] * n + x[1]) * n + x[2])];
      }
      go(k + 1, next);
      --fill[static_cast<std::size_t>(a)];
      --fill[static_cast<std::size_t>(b)];
    }
  };
  go(0, V(1));
  return total;
}

template <class V>
V move_value(const TrivalentGraph& before, const TrivalentGraph& after, const ThreeJTable<V>& t) {
  return state_sum(after, t) - state_sum(before, t);
}

struct WedgeCheck {
  bool holds = false;
  std::string left, right;  // rendered values
};

using GraphMove = std::pair<TrivalentGraph, TrivalentGraph>;
using MoveList = std::vector<GraphMove>;

struct Relation {
  MoveList a;
  MoveList b;
};

// Throws InputError at the first k where after[k] is not isomorphic to before[k+1].
void check_chained(const MoveList& moves);

// Product of move values reduced modulo the ideal generated by the relation
// differences. Only principal univariate ideals are supported.
Polynomial invariant(const MoveList& moves, const std::vector<Relation>& relations,
                     const ThreeJTable<Polynomial>& t);
Polynomial ideal_reduce(const Polynomial& value, const std::vector<Polynomial>& generators);

// S = sum_a |a a a|
Polynomial circle_sum(const ThreeJTable<Polynomial>& t);

struct NonmultExpansion {
  Polynomial one;         // (K1 L1 - K0 L0)(K2 L2 - K1 L1)
  Polynomial two;         // (K1 - K0)(K2 - K1)(L1 - L0)(L2 - L1)
  Polynomial difference;  // two - one
  Polynomial result;      // after the substitutions, in S
};

NonmultExpansion nonmult_expansion();
Polynomial nonmult_expand();

enum class NonmultVerdict { Multiplicative, NonMultiplicative, Symbolic };

struct NonmultReport {
  NonmultVerdict verdict = NonmultVerdict::Symbolic;
  Polynomial S;
  Polynomial value;
};

NonmultReport nonmult_check(const ThreeJTable<Polynomial>& t);

struct PolyInvariantResult {
  std::string var;
  std::vector<UPoly> P;      // P_1..P_6 reduced mod g
  std::vector<UPoly> Q;      // Q_1..Q_5 as used (Q_4 perturbed)
  UPoly Q4_unperturbed;
  UPoly P4_perturbed;        // P_4(c_3 x) mod g
  Rational c3;
  Polynomial invariant;
};

// P holds P_1..P_6. Throws PreconditionError when some P_k is not invertible
// mod g, or when c_3 = P_3(x_3) is 0 or 1.
PolyInvariantResult poly_local_invariant(const std::vector<Polynomial>& P, const Polynomial& g,
                                         const Rational& x3);

// ---- Files -----------------------------------------------------------------

// "a,b,c,value" lines, optional "colors,n"; values are polynomial literals.
ThreeJTable<Polynomial> parse_table(std::string_view text);
ThreeJTable<Polynomial> load_table(const std::string& path);
// "v <id>", "e <v1> <v2> [<p1> <p2>]", "circle", "point".
TrivalentGraph parse_graph(std::string_view text);
TrivalentGraph load_graph(const std::string& path);
// "move <before graph file> <after graph file>", paths relative to the file.
MoveList load_moves(const std::string& path);
// "relation <moves file> <moves file>"
std::vector<Relation> load_relations(const std::string& path);

}  // namespace smove
