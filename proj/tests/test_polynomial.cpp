#include <doctest.h>

#include "smove/error.hpp"
#include "smove/polynomial.hpp"
#include "smove/random.hpp"

using namespace smove;

namespace {

Polynomial P(std::string_view s) { return parse_polynomial(s); }
std::string F(const Polynomial& p) { return format_polynomial(p); }

Polynomial random_poly(Rng& rng) {
  Polynomial out;
  const char* vars[] = {"x", "y"};
  for (int t = 0; t < 4; ++t) {
    Polynomial term(static_cast<int>(rng.uniform(-5, 5)));
    for (const char* v : vars) term *= Polynomial::variable(v).pow(static_cast<unsigned>(rng.uniform(0, 3)));
    out += term;
  }
  return out;
}

}  // namespace

TEST_CASE("rationals") {
  CHECK(format_rational(parse_rational("-2/4")) == "-1/2");
  CHECK(format_rational(parse_rational("7")) == "7");
  CHECK_THROWS_AS(parse_rational("1/0"), InputError);
  CHECK_THROWS_AS(parse_rational("x"), InputError);
}

TEST_CASE("parse and format") {
  CHECK(F(P("2S^4 - 4S^3 + 4S^2 - 4S + 2")) == "2S^4 - 4S^3 + 4S^2 - 4S + 2");
  CHECK(F(P("(x+1)(x-1)")) == "x^2 - 1");
  CHECK(F(P("x*y + 3/2")) == "x*y + 3/2");
  CHECK(F(P("0")) == "0");
  CHECK(F(P("x/2")) == "(1/2)x");
  CHECK(F(P("-x")) == "-x");
  CHECK(F(P("2(x+y)^2")) == "2x^2 + 4x*y + 2y^2");
  CHECK_THROWS_AS(P("x +"), InputError);
  CHECK_THROWS_AS(P("(x"), InputError);
  CHECK_THROWS_AS(P("x/y"), InputError);
  Rng rng(1);
  for (int i = 0; i < 100; ++i) {
    const auto p = random_poly(rng);
    CHECK(P(F(p)) == p);
  }
}

TEST_CASE("ring laws against evaluation") {
  Rng rng(2);
  for (int i = 0; i < 100; ++i) {
    const auto a = random_poly(rng), b = random_poly(rng);
    const std::map<std::string, Rational> at{{"x", Rational(static_cast<int>(rng.uniform(-4, 4)), 3)},
                                             {"y", Rational(static_cast<int>(rng.uniform(-4, 4)))}};
    CHECK((a * b).evaluate(at) == a.evaluate(at) * b.evaluate(at));
    CHECK((a + b).evaluate(at) == a.evaluate(at) + b.evaluate(at));
    CHECK((a - a).is_zero());
    CHECK(a * (b + Polynomial(1)) == a * b + a);
    CHECK(a.substitute("y", Polynomial(at.at("y"))).substitute("x", Polynomial(at.at("x"))) ==
          Polynomial(a.evaluate(at)));
  }
  CHECK_THROWS_AS(P("x").evaluate({}), InputError);
  CHECK(P("x^3y + y").degree_in("x") == 3);
  CHECK(P("x^3y + y").variables() == std::vector<std::string>{"x", "y"});
  CHECK(P("5").is_constant());
  CHECK(P("5").constant_term() == 5);
}

TEST_CASE("univariate helpers") {
  const UPoly a = to_dense(P("x^3 + 2x + 1"), "x");
  const UPoly g = to_dense(P("x^2 + 1"), "x");
  const auto [q, r] = udivmod(a, g);
  CHECK(F(from_dense(q, "x")) == "x");
  CHECK(F(from_dense(r, "x")) == "x + 1");
  CHECK(F(from_dense(ugcd(to_dense(P("x^2 - 1"), "x"), to_dense(P("2x + 2"), "x")), "x")) == "x + 1");
  const auto inv = uinverse_mod(to_dense(P("x + 1"), "x"), g);
  REQUIRE(inv);
  CHECK(F(from_dense(umod(umul(*inv, to_dense(P("x + 1"), "x")), g), "x")) == "1");
  CHECK_FALSE(uinverse_mod(to_dense(P("x^2 + 1"), "x"), g));
  CHECK(ueval(a, 2) == 13);
  CHECK(F(from_dense(uscale_arg(a, 2), "x")) == "8x^3 + 4x + 1");
  CHECK_THROWS_AS(to_dense(P("x + y"), "x"), InputError);
}
