#include <doctest.h>

#include "smove/criterion.hpp"
#include "smove/error.hpp"

using namespace smove;

namespace {

std::string data(const std::string& rel) { return std::string(SMOVE_TEST_DATA) + "/" + rel; }

ReducedWord w(std::string_view s) { return parse_reduced(s); }

CriterionInstance trivial_instance(const std::string& word) {
  Presentation K(2, {{"R", w(word)}});
  Presentation L(2, {{"S", w(word)}});
  return {K, L, "R", "S", {}};
}

}  // namespace

TEST_CASE("verify on the fixture") {
  const auto inst = fixture_instance();
  CHECK(verify(inst));
  CHECK(verify_star(inst));
  CHECK(format_word(product_word(inst)) == "abAB");
  CHECK(verify(trivial_instance("abba")));

  auto broken = inst;
  broken.K = inst.K.with_word(0, w("aBA"));
  CHECK_FALSE(verify(broken));
  CHECK_FALSE(verify_star(broken));
}

TEST_CASE("instance files") {
  CHECK(load_instance(data("fixture/instance.txt")) == fixture_instance());
  CHECK_FALSE(verify(load_instance(data("broken/instance.txt"))));
  CHECK_THROWS_AS(load_instance(data("bad_syntax.txt")), InputError);
  CHECK_THROWS_AS(load_instance(data("missing.txt")), InputError);
  const auto d = fixture_instance().decomp;
  CHECK(parse_decomposition(format_decomposition(d)) == d);
  CHECK_THROWS_AS(parse_decomposition("factor wR=1 R=R1^+1\n"), InputError);
  // unknown relator names
  CHECK_THROWS_AS(parse_instance("K fixture/K.pres\nL fixture/L.pres\nR Q\nS S\n", SMOVE_TEST_DATA), InputError);
}

TEST_CASE("residual examples") {
  CHECK(format_word(residual_R(w("abA"), multiply(w("abA"), w("b")))) == "abABaBA");
  CHECK(format_word(residual_R(w("ab"), invert(w("ab")))) == "abab");
  CHECK(residual_R(w("ab"), w("ab")).empty());
  CHECK(residual_S(w("ab"), w("ab")).empty());
  CHECK(format_word(residual_S(w("b"), w("ba"))) == "baB");
}

TEST_CASE("residual laws on random pairs") {
  Rng rng(31);
  for (int t = 0; t < 1000; ++t) {
    const auto R = random_reduced_word(rng, 3, static_cast<std::size_t>(rng.uniform(0, 8)));
    const auto Rn = random_reduced_word(rng, 3, static_cast<std::size_t>(rng.uniform(0, 8)));
    CHECK(multiply(residual_R(R, Rn), Rn) == R);
    CHECK(multiply(invert(Rn), residual_S(R, Rn)) == invert(R));
    // The S-side residual is the inverse of the R-side one on the same pair.
    CHECK(residual_S(R, Rn) == invert(residual_R(R, Rn)));
    CHECK(residual_S(R, Rn) == residual_R(Rn, R));
  }
}

TEST_CASE("gauge") {
  const auto inst = fixture_instance();
  const auto g = gauge(inst);
  CHECK(verify(g));
  CHECK(format_word(product_word(g)) == "baBA");
  CHECK(product_word(g) == commutator(w("b"), w("a")));
  const auto gg = gauge(g);
  CHECK(verify(gg));
  CHECK(gg.decomp == inst.decomp);

  const auto t = gauge(trivial_instance("ab"));
  CHECK(t.R == "S");
  CHECK(verify(t));

  auto broken = inst;
  broken.K = inst.K.with_word(0, w("aBA"));
  CHECK_THROWS_AS(gauge(broken), PreconditionError);
}

TEST_CASE("residual-commutator identity") {
  const auto rep = residual_commutator_check(fixture_instance());
  CHECK(format_word(rep.residual) == "abAB");
  CHECK(rep.residual == commutator(w("a"), w("b")));
  CHECK(rep.ok());
  CHECK(residual_commutator_check(trivial_instance("aab")).ok());
  CHECK(residual_commutator_check(trivial_instance("aab")).residual.empty());
}

TEST_CASE("built instances") {
  for (std::uint64_t seed = 1; seed <= 300; ++seed) {
    const auto inst = build_instance(seed, 2 + static_cast<int>(seed % 3), static_cast<int>(seed % 4));
    REQUIRE(verify(inst));
    REQUIRE(verify_star(inst));
    REQUIRE(product_word(gauge(inst)) == invert(product_word(inst)));
    REQUIRE(verify(gauge(inst)));
    REQUIRE(residual_commutator_check(inst).ok());
  }
  CHECK(build_instance(7, 2, 2) == build_instance(7, 2, 2));
  const auto zero = build_instance(3, 2, 0);
  CHECK(zero.decomp.empty());
  CHECK(word_R(zero) == word_S(zero));
  CHECK_THROWS_AS(build_instance(1, 0, 1), InputError);
}

TEST_CASE("q-move transport") {
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    const auto inst = build_instance(seed, 2, 2);
    for (Side side : {Side::K, Side::L}) {
      const Presentation& P = side == Side::K ? inst.K : inst.L;
      const std::size_t t = P.index_of(side == Side::K ? inst.R : inst.S);
      const std::vector<QMove> moves{InvertRelator{t}, MultiplyRight{t, 1}, ConjugateRelator{t, Letter(2, -1)}};
      for (const auto& m : moves) {
        const auto tr = transport_qmove(inst, side, m);
        REQUIRE(tr.ok());
      }
    }
  }
  // only the distinguished relator may move
  CHECK_THROWS_AS(transport_qmove(build_instance(1, 2, 2), Side::K, InvertRelator{1}), PreconditionError);
  // the fixture's S is also a factor base
  CHECK_THROWS_AS(transport_qmove(fixture_instance(), Side::L, InvertRelator{0}), PreconditionError);
}

TEST_CASE("nielsen transport") {
  Rng rng(77);
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    const auto inst = build_instance(seed, 3, 2);
    NielsenMove m{static_cast<int>(rng.uniform(1, 3)), static_cast<NielsenKind>(rng.uniform(0, 2)), 0};
    if (m.kind != NielsenKind::Invert) {
      m.other = static_cast<int>(rng.uniform(1, 2));
      if (m.other >= m.target) ++m.other;
    }
    REQUIRE(verify(apply_nielsen_to_instance(inst, m)));
  }
  // one side only: S = b becomes B while R keeps its letters
  const auto broken = apply_nielsen_one_side(fixture_instance(), Side::L, NielsenMove{2, NielsenKind::Invert, 0});
  CHECK_FALSE(verify(broken));
}

TEST_CASE("prolongation gives the trivial criterion") {
  const auto p = prolonged_instance(fixture_instance());
  CHECK(p.K.generator_count() == 3);
  CHECK(p.R == "T3");
  CHECK(p.decomp.empty());
  CHECK(verify(p));
}
