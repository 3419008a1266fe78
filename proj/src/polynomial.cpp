#include "smove/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "smove/error.hpp"

namespace smove {

std::string format_rational(const Rational& q) {
  const Integer num = boost::multiprecision::numerator(q);
  const Integer den = boost::multiprecision::denominator(q);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

Rational parse_rational(std::string_view text) {
  std::string t(text);
  auto ok_int = [](const std::string& s) {
    std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (i >= s.size()) return false;
    for (; i < s.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    }
    return true;
  };
  const auto slash = t.find('/');
  const std::string a = t.substr(0, slash);
  if (!ok_int(a)) throw InputError("not a rational: '" + t + "'");
  Integer num(a[0] == '+' ? a.substr(1) : a);
  if (slash == std::string::npos) return Rational(num);
  const std::string b = t.substr(slash + 1);
  if (!ok_int(b) || b[0] == '-' || b[0] == '+') throw InputError("not a rational: '" + t + "'");
  Integer den(b);
  if (den == 0) throw InputError("zero denominator in '" + t + "'");
  return Rational(num, den);
}

unsigned total_degree(const Monomial& m) {
  unsigned d = 0;
  for (const auto& [v, e] : m) d += e;
  return d;
}

namespace {

Monomial mono_mul(const Monomial& a, const Monomial& b) {
  std::map<std::string, unsigned> acc;
  for (const auto& [v, e] : a) acc[v] += e;
  for (const auto& [v, e] : b) acc[v] += e;
  return {acc.begin(), acc.end()};
}

}  // namespace

Polynomial::Polynomial(const Rational& c) {
  if (c != 0) terms_[{}] = c;
}

Polynomial Polynomial::variable(const std::string& name) {
  if (name.empty()) throw InputError("empty variable name");
  Polynomial p;
  p.terms_[{{name, 1}}] = 1;
  return p;
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

Rational Polynomial::constant_term() const {
  auto it = terms_.find({});
  return it == terms_.end() ? Rational(0) : it->second;
}

std::vector<std::string> Polynomial::variables() const {
  std::set<std::string> vs;
  for (const auto& [m, c] : terms_) {
    for (const auto& [v, e] : m) vs.insert(v);
  }
  return {vs.begin(), vs.end()};
}

unsigned Polynomial::degree_in(const std::string& var) const {
  unsigned d = 0;
  for (const auto& [m, c] : terms_) {
    for (const auto& [v, e] : m) {
      if (v == var) d = std::max(d, e);
    }
  }
  return d;
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const Polynomial& o) {
  Polynomial out;
  for (const auto& [m1, c1] : terms_) {
    for (const auto& [m2, c2] : o.terms_) out.add_term(mono_mul(m1, m2), c1 * c2);
  }
  *this = std::move(out);
  return *this;
}

Polynomial Polynomial::operator-() const {
  Polynomial out;
  for (const auto& [m, c] : terms_) out.terms_[m] = -c;
  return out;
}

Polynomial Polynomial::pow(unsigned e) const {
  Polynomial r(1);
  Polynomial b = *this;
  while (e) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

Polynomial Polynomial::substitute(const std::string& var, const Polynomial& value) const {
  Polynomial out;
  for (const auto& [m, c] : terms_) {
    Monomial rest;
    unsigned e = 0;
    for (const auto& [v, k] : m) {
      if (v == var) {
        e = k;
      } else {
        rest.push_back({v, k});
      }
    }
    Polynomial t;
    t.terms_[rest] = c;
    out += t * value.pow(e);
  }
  return out;
}

Rational Polynomial::evaluate(const std::map<std::string, Rational>& values) const {
  Rational sum = 0;
  for (const auto& [m, c] : terms_) {
    Rational t = c;
    for (const auto& [v, e] : m) {
      auto it = values.find(v);
      if (it == values.end()) throw InputError("no value for variable " + v);
      for (unsigned i = 0; i < e; ++i) t *= it->second;
    }
    sum += t;
  }
  return sum;
}

namespace {

// Exponent vectors compared lexicographically over the alphabetical variable
// order, larger first: x^2 before x*y before y^2.
bool lex_greater(const Monomial& a, const Monomial& b) {
  std::size_t i = 0;
  for (; i < a.size() && i < b.size(); ++i) {
    if (a[i].first != b[i].first) return a[i].first < b[i].first;
    if (a[i].second != b[i].second) return a[i].second > b[i].second;
  }
  return i < a.size() && i == b.size();
}

}  // namespace

std::string format_polynomial(const Polynomial& p) {
  if (p.is_zero()) return "0";
  std::vector<std::pair<Monomial, Rational>> terms(p.terms().begin(), p.terms().end());
  std::stable_sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
    const unsigned da = total_degree(a.first), db = total_degree(b.first);
    if (da != db) return da > db;
    return lex_greater(a.first, b.first);
  });
  std::string out;
  bool first = true;
  for (const auto& [m, c] : terms) {
    const bool neg = c < 0;
    const Rational a = neg ? Rational(-c) : c;
    if (first) {
      out += neg ? "-" : "";
    } else {
      out += neg ? " - " : " + ";
    }
    first = false;
    std::string mono;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i) mono += "*";
      mono += m[i].first;
      if (m[i].second != 1) mono += "^" + std::to_string(m[i].second);
    }
    if (mono.empty()) {
      out += format_rational(a);
    } else if (a == 1) {
      out += mono;
    } else if (boost::multiprecision::denominator(a) == 1) {
      out += format_rational(a) + mono;
    } else {
      out += "(" + format_rational(a) + ")" + mono;
    }
  }
  return out;
}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  Polynomial parse() {
    Polynomial p = expr();
    skip();
    if (i_ != s_.size()) fail("unexpected '" + std::string(1, s_[i_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& why) {
    throw InputError("polynomial '" + std::string(s_) + "': " + why);
  }
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool peek(char c) {
    skip();
    return i_ < s_.size() && s_[i_] == c;
  }
  bool starts_atom() {
    skip();
    if (i_ >= s_.size()) return false;
    const unsigned char c = static_cast<unsigned char>(s_[i_]);
    return std::isalnum(c) || c == '_' || c == '(';
  }

  Polynomial expr() {
    Polynomial p = term();
    for (;;) {
      if (peek('+')) {
        ++i_;
        p += term();
      } else if (peek('-')) {
        ++i_;
        p -= term();
      } else {
        return p;
      }
    }
  }

  Polynomial term() {
    Polynomial p = unary();
    for (;;) {
      if (peek('*')) {
        ++i_;
        p *= unary();
      } else if (peek('/')) {
        ++i_;
        const Polynomial d = power();
        if (!d.is_constant() || d.is_zero()) fail("division only by nonzero constants");
        p *= Polynomial(Rational(1) / d.constant_term());
      } else if (starts_atom()) {
        p *= power();
      } else {
        return p;
      }
    }
  }

  Polynomial unary() {
    if (peek('-')) {
      ++i_;
      return -unary();
    }
    if (peek('+')) {
      ++i_;
      return unary();
    }
    return power();
  }

  Polynomial power() {
    Polynomial base = atom();
    if (peek('^')) {
      ++i_;
      skip();
      std::size_t j = i_;
      while (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j]))) ++j;
      if (j == i_ || j - i_ > 4) fail("bad exponent");
      const unsigned e = static_cast<unsigned>(std::stoul(std::string(s_.substr(i_, j - i_))));
      i_ = j;
      return base.pow(e);
    }
    return base;
  }

  Polynomial atom() {
    skip();
    if (i_ >= s_.size()) fail("unexpected end");
    const unsigned char c = static_cast<unsigned char>(s_[i_]);
    if (c == '(') {
      ++i_;
      Polynomial p = expr();
      if (!peek(')')) fail("missing ')'");
      ++i_;
      return p;
    }
    if (std::isdigit(c)) {
      std::size_t j = i_;
      while (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j]))) ++j;
      Polynomial p(Rational(Integer(std::string(s_.substr(i_, j - i_)))));
      i_ = j;
      return p;
    }
    if (std::isalpha(c) || c == '_') {
      std::size_t j = i_;
      while (j < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[j])) || s_[j] == '_')) ++j;
      Polynomial p = Polynomial::variable(std::string(s_.substr(i_, j - i_)));
      i_ = j;
      return p;
    }
    fail("unexpected '" + std::string(1, static_cast<char>(c)) + "'");
  }

  std::string_view s_;
  std::size_t i_ = 0;
};

}  // namespace

Polynomial parse_polynomial(std::string_view text) { return Parser(text).parse(); }

// ---- univariate ------------------------------------------------------------

void trim(UPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

UPoly to_dense(const Polynomial& p, const std::string& var) {
  UPoly out;
  for (const auto& [m, c] : p.terms()) {
    unsigned e = 0;
    for (const auto& [v, k] : m) {
      if (v != var) throw InputError("polynomial in " + v + " where only " + var + " is allowed");
      e = k;
    }
    if (out.size() <= e) out.resize(e + 1, Rational(0));
    out[e] += c;
  }
  trim(out);
  return out;
}

Polynomial from_dense(const UPoly& p, const std::string& var) {
  Polynomial out;
  const Polynomial x = Polynomial::variable(var);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] != 0) out += Polynomial(p[i]) * x.pow(static_cast<unsigned>(i));
  }
  return out;
}

UPoly umul(const UPoly& a, const UPoly& b) {
  if (a.empty() || b.empty()) return {};
  UPoly out(a.size() + b.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  trim(out);
  return out;
}

UPoly usub(const UPoly& a, const UPoly& b) {
  UPoly out(std::max(a.size(), b.size()), Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
  trim(out);
  return out;
}

std::pair<UPoly, UPoly> udivmod(const UPoly& a, const UPoly& b_in) {
  UPoly b = b_in;
  trim(b);
  if (b.empty()) throw PreconditionError("division by the zero polynomial");
  UPoly r = a;
  trim(r);
  if (r.size() < b.size()) return {{}, r};
  UPoly q(r.size() - b.size() + 1, Rational(0));
  while (!r.empty() && r.size() >= b.size()) {
    const std::size_t shift = r.size() - b.size();
    const Rational c = r.back() / b.back();
    q[shift] = c;
    for (std::size_t i = 0; i < b.size(); ++i) r[i + shift] -= c * b[i];
    trim(r);
  }
  trim(q);
  return {q, r};
}

UPoly umod(const UPoly& a, const UPoly& b) { return udivmod(a, b).second; }

UPoly ugcd(UPoly a, UPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    UPoly r = umod(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    const Rational lead = a.back();
    for (auto& c : a) c /= lead;
  }
  return a;
}

std::optional<UPoly> uinverse_mod(const UPoly& a_in, const UPoly& g) {
  // Extended Euclid tracking the coefficient of a.
  UPoly r0 = g, r1 = umod(a_in, g);
  UPoly t0, t1{Rational(1)};
  trim(r0);
  while (!r1.empty()) {
    auto [q, r] = udivmod(r0, r1);
    UPoly t = usub(t0, umul(q, t1));
    r0 = std::move(r1);
    r1 = std::move(r);
    t0 = std::move(t1);
    t1 = std::move(t);
  }
  if (r0.size() != 1) return std::nullopt;  // gcd has positive degree (or g is zero)
  const Rational c = r0[0];
  for (auto& x : t0) x /= c;
  return umod(t0, g);
}

Rational ueval(const UPoly& p, const Rational& x) {
  Rational acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

UPoly uscale_arg(const UPoly& p, const Rational& c) {
  UPoly out = p;
  Rational f = 1;
  for (auto& coef : out) {
    coef *= f;
    f *= c;
  }
  trim(out);
  return out;
}

}  // namespace smove
