#include <doctest.h>

#include <algorithm>
#include <map>

#include "smove/error.hpp"
#include "smove/slicing.hpp"

using namespace smove;

namespace {

Word w(std::string_view s) { return parse_word(s); }

std::vector<Word> all_words(int n, int max_len) {
  std::vector<Word> out{Word{}};
  std::vector<Word> layer{Word{}};
  for (int len = 1; len <= max_len; ++len) {
    std::vector<Word> next;
    for (const auto& u : layer) {
      for (int i = 1; i <= n; ++i) {
        for (int s : {1, -1}) {
          Word v = u;
          v.push_back(Letter(i, s));
          next.push_back(v);
        }
      }
    }
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

std::map<std::string, int> circulation_multiset(const SliceSequence& s, bool strip_prefix) {
  std::map<std::string, int> out;
  for (const auto& m : s.moves) {
    if (const auto* c = std::get_if<CirculateStep>(&m)) {
      std::string ch = c->channel;
      if (strip_prefix) ch = ch.substr(ch.find(':') + 1);
      ++out[ch + "/" + format_letter(c->letter)];
    }
  }
  return out;
}

}  // namespace

TEST_CASE("inverse trace") {
  CHECK(format_word(inverse_trace(w("aabb"))) == "AABB");
  CHECK(format_word(inverse_trace(w("1"))) == "1");
  CHECK(format_word(inverse_trace(w("aB"))) == "Ab");
  Rng rng(4);
  for (int i = 0; i < 200; ++i) {
    const auto R = random_reduced_word(rng, 3, static_cast<std::size_t>(rng.uniform(0, 10)));
    CHECK(inverse_trace(inverse_trace(R)) == R);
  }
}

TEST_CASE("bag") {
  const auto bag = slice_bag(w("a"), false);
  CHECK(validate(bag).ok);
  CHECK(boundary_trace(bag).empty());
  CHECK(validate(slice_bag(Word{}, false)).ok);
  CHECK(count_moves_of<IdentifyEdges>(slice_bag(w("ab"), true)) ==
        count_moves_of<IdentifyEdges>(slice_bag(w("ab"), false)) + 2);
  CHECK(slice_bag(w("ab"), true).moves.size() == slice_bag(w("ab"), false).moves.size() + 2);
  for (const auto& W : all_words(2, 6)) {
    for (bool identify : {false, true}) {
      const auto s = slice_bag(W, identify);
      REQUIRE(validate(s).ok);
      REQUIRE(boundary_trace(s).empty());
    }
  }
}

TEST_CASE("inverse pair") {
  const auto s = slice_inverse_pair(w("ab"));
  CHECK(validate(s).ok);
  CHECK(format_word(channel_word(s, "R")) == "ab");
  // the letters as circulated on the R^-1 arc, before the channel's reversal
  Word raw;
  for (const auto& m : s.moves) {
    if (const auto* c = std::get_if<CirculateStep>(&m); c && c->channel == "R^-1") raw.push_back(c->letter);
  }
  CHECK(format_word(raw) == "AB");
  CHECK(reduce(raw) == inverse_trace(w("ab")));
  CHECK(count_moves_of<CirculateStep>(slice_inverse_pair(Word{})) == 0);
  CHECK(validate(slice_inverse_pair(Word{})).ok);
}

TEST_CASE("commutator") {
  const auto s = slice_commutator(w("a"), w("b"), Dominant::RFirst, false);
  CHECK(validate(s).ok);
  CHECK(is_cyclic_rotation(boundary_trace(s), commutator(w("a"), w("b"))));
  const auto degenerate = slice_commutator(Word{}, w("b"), Dominant::RFirst, false);
  CHECK(validate(degenerate).ok);
  CHECK(boundary_trace(degenerate).empty());
  CHECK(slice_commutator(w("ab"), w("b"), Dominant::SFirst, true).moves.size() ==
        slice_commutator(w("ab"), w("b"), Dominant::SFirst, false).moves.size() + 5);
  CHECK(count_moves_of<IdentifyEdges>(slice_commutator(w("a"), w("b"), Dominant::RFirst, true)) == 4);
  CHECK(count_moves_of<SwapEnds>(slice_commutator(w("a"), w("b"), Dominant::RFirst, true)) == 1);
}

TEST_CASE("commutator boundary is a rotation of [R,S] on all short words") {
  const auto words = all_words(2, 3);
  for (const auto& R : words) {
    for (const auto& S : words) {
      for (auto dom : {Dominant::RFirst, Dominant::SFirst}) {
        const auto s = slice_commutator(R, S, dom, dom == Dominant::SFirst);
        REQUIRE(validate(s).ok);
        const auto b = boundary_trace(s);
        // the readout starts somewhere along R S R^-1 S^-1 before any cancellation
        const Word raw = concat(concat(R, S), concat(invert(R), invert(S)));
        bool found = false;
        for (const auto& rot : cyclic_rotations(raw)) {
          if (reduce(rot) == b) found = true;
        }
        REQUIRE(found);
      }
    }
  }
}

TEST_CASE("product") {
  CHECK(boundary_trace(slice_product(w("ab"), w("ab"))).empty());
  CHECK(format_word(boundary_trace(slice_product(w("abA"), w("b")))) == "abAB");
  // every R step precedes every S^-1 step
  const auto s = slice_product(w("abA"), w("ba"));
  std::size_t last_r = 0, first_s = s.moves.size();
  for (std::size_t k = 0; k < s.moves.size(); ++k) {
    if (const auto* c = std::get_if<CirculateStep>(&s.moves[k])) {
      if (c->channel == "R") last_r = k;
      if (c->channel == "S^-1") first_s = std::min(first_s, k);
    }
  }
  CHECK(last_r < first_s);
  Rng rng(6);
  for (int i = 0; i < 500; ++i) {
    const auto R = random_reduced_word(rng, 2, static_cast<std::size_t>(rng.uniform(0, 8)));
    const auto S = random_reduced_word(rng, 2, static_cast<std::size_t>(rng.uniform(0, 8)));
    REQUIRE(boundary_trace(slice_product(R, S)) == multiply(R, invert(S)));
  }
}

TEST_CASE("validate catches corruption") {
  auto s = slice_product(w("ab"), w("b"));
  REQUIRE(validate(s).ok);
  // corrupt the trace recorded in slice 6
  for (std::size_t k = 0; k < s.slices.size(); ++k) {
    for (auto& c : s.slices[k].components) {
      if (auto* a = std::get_if<Arc>(&c); a && !a->trace.empty()) {
        a->trace = Word{a->trace[0].inverse()};
        const auto v = validate(s);
        CHECK_FALSE(v.ok);
        CHECK(v.first_bad_index == k - 1);
        CHECK_THROWS_AS(boundary_trace(s), PreconditionError);
        return;
      }
    }
  }
  FAIL("no arc with a trace found");
}

TEST_CASE("arity rule") {
  SliceSequence s;
  s.slices = {SliceGraph{}, SliceGraph{{}, 1}};
  CHECK_FALSE(validate(s).ok);
}

TEST_CASE("local moves reject bad input") {
  SliceGraph g;
  CHECK_THROWS_AS(apply_local_move(g, DeathCircle{0}), InputError);
  g = apply_local_move(g, BirthCircle{{"P1"}});
  CHECK_THROWS_AS(apply_local_move(g, CirculateStep{0, "R", Letter(1, 1)}), InputError);
  g = apply_local_move(g, SplitCircleToArc{0, "x", "y"});
  CHECK_THROWS_AS(apply_local_move(g, DeathCircle{0}), InputError);
  CHECK(std::get<Arc>(apply_local_move(g, CirculateStep{0, "R", Letter(1, 1)}).components[0]).trace == w("a"));
}

TEST_CASE("connect") {
  const auto single = connect({slice_bag(w("ab"), false)});
  CHECK(validate(single).ok);
  CHECK(single.moves.size() == slice_bag(w("ab"), false).moves.size() + 2);
  CHECK(std::holds_alternative<BirthCircle>(single.moves.front()));
  CHECK(std::holds_alternative<DeathCircle>(single.moves.back()));

  std::vector<SliceSequence> pieces{slice_commutator(w("a"), w("b"), Dominant::RFirst, false),
                                    slice_commutator(w("ab"), w("B"), Dominant::RFirst, true),
                                    slice_commutator(w("b"), w("aa"), Dominant::SFirst, false)};
  const auto c = connect(pieces);
  CHECK(validate(c).ok);
  CHECK(count_moves_of<JoinCircles>(c) == 3);
  CHECK(count_moves_of<SplitCircle>(c) == count_moves_of<JoinCircles>(c));
  std::size_t births = 0;
  for (const auto& m : c.moves) births += std::holds_alternative<BirthCircle>(m) ? 1 : 0;
  CHECK(births == 1 + 3 * 4);
  std::map<std::string, int> expect;
  for (const auto& p : pieces) {
    for (auto& [k, v] : circulation_multiset(p, false)) expect[k] += v;
  }
  CHECK(circulation_multiset(c, true) == expect);
  CHECK(boundary_trace(c) == product(std::vector<Word>{boundary_trace(pieces[0]), boundary_trace(pieces[1]),
                                                       boundary_trace(pieces[2])}));
  CHECK_THROWS_AS(connect({}), InputError);
}

TEST_CASE("dump format") {
  const std::string d = dump(slice_bag(w("a"), false));
  CHECK(d.rfind("slice 0:\n-- BirthCircle P1\nslice 1: C[P1]\n", 0) == 0);
  CHECK(d.find("A[W^-1,W;trace=a]") != std::string::npos);
}

TEST_CASE("token labels") {
  CHECK(cell_token(w("abA")).label() == "cell:abA");
  CHECK(cell_token(w("ab")).formal_inverse().label() == "cell:BA");
  CHECK(inverse_label("cell:ab") == "cell:BA");
  CHECK(inverse_label("sphere") == "sphere");
  CHECK(canonical_label("bag:ab") == canonical_label("bag:BA"));
  CHECK(is_spel_label("invpair:a"));
  CHECK_FALSE(is_spel_label("cell:a"));
  CHECK_THROWS_AS(inverse_label("nonsense"), InputError);
  CHECK(cell_token(Word{}).label() == "cell:1");
}

TEST_CASE("abstract sequence") {
  const auto inst = fixture_instance();
  const auto lon = build_abstract(inst, IdentificationType::Longitudinal);
  const auto mer = build_abstract(inst, IdentificationType::Meridian);
  REQUIRE(lon.slices.size() == 8);
  CHECK(lon.transitions.size() == 7);
  CHECK(lon.slices.front().is_empty());
  CHECK(lon.slices.back().is_empty());
  CHECK(lon.perturbation_index == 3);
  CHECK(lon.slices[3].labels() == std::vector<std::string>{"bag:B", "cell:abAB", "invpair:a"});
  CHECK(mer.slices[3].labels() == std::vector<std::string>{"bag:a", "cell:abAB", "invpair:B"});
  CHECK(lon.slices[4].labels() == std::vector<std::string>{"cell:abAB", "comm:baBA"});
  CHECK(lon.slices[2].labels() == std::vector<std::string>{"bag:B", "cell:B", "cell:abA", "invpair:a"});
  CHECK(lon.slices[5].labels() == std::vector<std::string>{"cell:1"});

  auto broken = inst;
  broken.K = inst.K.with_word(0, parse_reduced("aBA"));
  CHECK_THROWS_AS(build_abstract(broken, IdentificationType::Longitudinal), PreconditionError);

  // perturbation slice: exactly spel tokens plus the product cell; next slice: commutators plus the cell
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const auto b = build_instance(seed, 2, 3);
    for (auto type : {IdentificationType::Longitudinal, IdentificationType::Meridian}) {
      const auto seq = build_abstract(b, type);
      const auto& at = seq.slices[seq.perturbation_index];
      const auto& after = seq.slices[seq.perturbation_index + 1];
      std::size_t spel = 0, cells = 0, comms = 0;
      for (const auto& t : at.tokens) {
        spel += (t.kind == TokenKind::SpElBag || t.kind == TokenKind::SpElInvPair) ? 1 : 0;
        cells += t.kind == TokenKind::Cell && t.word == product_word(b) ? 1 : 0;
      }
      CHECK(spel == 2 * b.decomp.size());
      CHECK(cells == 1);
      CHECK(at.tokens.size() == spel + 1);
      cells = 0;
      for (const auto& t : after.tokens) {
        comms += t.kind == TokenKind::Commutator ? 1 : 0;
        cells += t.kind == TokenKind::Cell && t.word == product_word(b) ? 1 : 0;
      }
      CHECK(comms == b.decomp.size());
      CHECK(cells == 1);
      CHECK(after.tokens.size() == comms + 1);
    }
  }
}

TEST_CASE("abstract dump") {
  const std::string d = dump(build_abstract(fixture_instance(), IdentificationType::Meridian));
  CHECK(d.rfind("type mer\nslice 0: empty\n", 0) == 0);
  CHECK(d.find("(perturbed)") != std::string::npos);
}
