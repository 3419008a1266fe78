#pragma once

// Exact polynomials with rational coefficients over named indeterminates,
// plus dense univariate helpers for arithmetic modulo a principal ideal.

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace smove {

using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

std::string format_rational(const Rational& q);
// "3", "-2/7"; throws InputError otherwise.
Rational parse_rational(std::string_view text);

// Sorted (variable, exponent > 0) pairs.
using Monomial = std::vector<std::pair<std::string, unsigned>>;

unsigned total_degree(const Monomial& m);

class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(int c) : Polynomial(Rational(c)) {}  // NOLINT: constants convert implicitly
  Polynomial(const Rational& c);                  // NOLINT
  static Polynomial variable(const std::string& name);

  const std::map<Monomial, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_term() const;
  std::vector<std::string> variables() const;
  // Degree in one variable (0 for the zero polynomial).
  unsigned degree_in(const std::string& var) const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Polynomial& o);
  Polynomial operator-() const;

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Polynomial& b) { return a *= b; }
  friend bool operator==(const Polynomial&, const Polynomial&) = default;

  Polynomial pow(unsigned e) const;
  Polynomial substitute(const std::string& var, const Polynomial& value) const;
  // Throws InputError if a variable is left unassigned.
  Rational evaluate(const std::map<std::string, Rational>& values) const;

 private:
  void add_term(const Monomial& m, const Rational& c);
  std::map<Monomial, Rational> terms_;
};

// Descending total degree, then by monomial; e.g. "2S^4 - 4S^3 + 4S^2 - 4S + 2".
std::string format_polynomial(const Polynomial& p);
// Grammar: sums/differences of products of numbers (p/q allowed), variables
// ([A-Za-z_][A-Za-z0-9_]*), parentheses, and ^<non-negative integer>.
Polynomial parse_polynomial(std::string_view text);

// ---- univariate, dense (index = degree) ------------------------------------

using UPoly = std::vector<Rational>;

void trim(UPoly& p);
UPoly to_dense(const Polynomial& p, const std::string& var);  // throws if other variables occur
Polynomial from_dense(const UPoly& p, const std::string& var);
UPoly umul(const UPoly& a, const UPoly& b);
UPoly usub(const UPoly& a, const UPoly& b);
// a = q b + r with deg r < deg b; b nonzero.
std::pair<UPoly, UPoly> udivmod(const UPoly& a, const UPoly& b);
UPoly umod(const UPoly& a, const UPoly& b);
UPoly ugcd(UPoly a, UPoly b);  // monic
// Inverse of a modulo g, or nullopt when gcd(a, g) != 1.
std::optional<UPoly> uinverse_mod(const UPoly& a, const UPoly& g);
Rational ueval(const UPoly& p, const Rational& x);
// x -> c x
UPoly uscale_arg(const UPoly& p, const Rational& c);

}  // namespace smove
