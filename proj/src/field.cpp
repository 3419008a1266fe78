#include "smove/field.hpp"

#include <utility>

#include "smove/error.hpp"

namespace smove {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q = 2; q * q <= n; ++q) {
    if (n % q == 0) return false;
  }
  return true;
}

void check_prime(std::uint64_t p) {
  if (p >= (1u << 31) || !is_prime(p)) throw InputError(std::to_string(p) + " is not a usable prime");
}

std::uint32_t Fp::norm(std::int64_t x) const {
  const std::int64_t m = x % static_cast<std::int64_t>(p_);
  return static_cast<std::uint32_t>(m < 0 ? m + p_ : m);
}

std::uint32_t Fp::pow(std::uint32_t a, std::uint64_t e) const {
  std::uint32_t r = 1 % p_;
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

std::uint32_t Fp::inv(std::uint32_t a) const {
  if (a % p_ == 0) throw PreconditionError("zero has no inverse");
  return pow(a, p_ - 2);
}

Matrix::Matrix(std::uint32_t p, int d) : p_(p), d_(d), a_(static_cast<std::size_t>(d * d), 0) {
  if (d < 1) throw InputError("matrix dimension must be >= 1");
}

Matrix Matrix::identity(std::uint32_t p, int d) { return scalar(p, d, 1); }

Matrix Matrix::scalar(std::uint32_t p, int d, std::uint32_t c) {
  Matrix m(p, d);
  for (int i = 0; i < d; ++i) m.set(i, i, c % p);
  return m;
}

Matrix Matrix::diagonal(std::uint32_t p, const std::vector<std::uint32_t>& entries) {
  Matrix m(p, static_cast<int>(entries.size()));
  for (int i = 0; i < m.dim(); ++i) m.set(i, i, entries[static_cast<std::size_t>(i)] % p);
  return m;
}

void Matrix::set(int i, int j, std::uint32_t v) { a_[static_cast<std::size_t>(i * d_ + j)] = v % p_; }

bool Matrix::is_identity() const { return *this == identity(p_, d_); }

bool Matrix::is_zero() const {
  for (auto v : a_) {
    if (v) return false;
  }
  return true;
}

namespace {
void same_shape(const Matrix& x, const Matrix& y) {
  if (x.p() != y.p() || x.dim() != y.dim()) throw InputError("matrix shape or field mismatch");
}
}  // namespace

Matrix operator*(const Matrix& x, const Matrix& y) {
  same_shape(x, y);
  const int d = x.dim();
  const std::uint64_t p = x.p();
  Matrix out(x.p(), d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      std::uint64_t s = 0;
      for (int k = 0; k < d; ++k) s = (s + std::uint64_t{x.at(i, k)} * y.at(k, j)) % p;
      out.set(i, j, static_cast<std::uint32_t>(s));
    }
  }
  return out;
}

Matrix operator+(const Matrix& x, const Matrix& y) {
  same_shape(x, y);
  const Fp f(x.p());
  Matrix out(x.p(), x.dim());
  for (int i = 0; i < x.dim(); ++i) {
    for (int j = 0; j < x.dim(); ++j) out.set(i, j, f.add(x.at(i, j), y.at(i, j)));
  }
  return out;
}

Matrix scale(const Matrix& x, std::uint32_t c) {
  const Fp f(x.p());
  Matrix out(x.p(), x.dim());
  for (int i = 0; i < x.dim(); ++i) {
    for (int j = 0; j < x.dim(); ++j) out.set(i, j, f.mul(x.at(i, j), c % x.p()));
  }
  return out;
}

Matrix power(const Matrix& x, unsigned e) {
  Matrix r = Matrix::identity(x.p(), x.dim());
  Matrix b = x;
  while (e) {
    if (e & 1) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}

std::optional<Matrix> try_inverse(const Matrix& x) {
  const Fp f(x.p());
  const int d = x.dim();
  Matrix a = x;
  Matrix inv = Matrix::identity(x.p(), d);
  for (int col = 0; col < d; ++col) {
    int piv = -1;
    for (int r = col; r < d; ++r) {
      if (a.at(r, col)) {
        piv = r;
        break;
      }
    }
    if (piv < 0) return std::nullopt;
    if (piv != col) {
      for (int j = 0; j < d; ++j) {
        auto t = a.at(piv, j);
        a.set(piv, j, a.at(col, j));
        a.set(col, j, t);
        t = inv.at(piv, j);
        inv.set(piv, j, inv.at(col, j));
        inv.set(col, j, t);
      }
    }
    const auto s = f.inv(a.at(col, col));
    for (int j = 0; j < d; ++j) {
      a.set(col, j, f.mul(a.at(col, j), s));
      inv.set(col, j, f.mul(inv.at(col, j), s));
    }
    for (int r = 0; r < d; ++r) {
      if (r == col || !a.at(r, col)) continue;
      const auto factor = a.at(r, col);
      for (int j = 0; j < d; ++j) {
        a.set(r, j, f.sub(a.at(r, j), f.mul(factor, a.at(col, j))));
        inv.set(r, j, f.sub(inv.at(r, j), f.mul(factor, inv.at(col, j))));
      }
    }
  }
  return inv;
}

Matrix inverse(const Matrix& x) {
  auto r = try_inverse(x);
  if (!r) throw PreconditionError("matrix is singular");
  return *r;
}

std::uint32_t determinant(const Matrix& x) {
  const Fp f(x.p());
  const int d = x.dim();
  Matrix a = x;
  std::uint32_t det = 1;
  for (int col = 0; col < d; ++col) {
    int piv = -1;
    for (int r = col; r < d; ++r) {
      if (a.at(r, col)) {
        piv = r;
        break;
      }
    }
    if (piv < 0) return 0;
    if (piv != col) {
      for (int j = 0; j < d; ++j) {
        const auto t = a.at(piv, j);
        a.set(piv, j, a.at(col, j));
        a.set(col, j, t);
      }
      det = f.sub(0, det);
    }
    det = f.mul(det, a.at(col, col));
    const auto s = f.inv(a.at(col, col));
    for (int r = col + 1; r < d; ++r) {
      const auto factor = f.mul(a.at(r, col), s);
      if (!factor) continue;
      for (int j = col; j < d; ++j) a.set(r, j, f.sub(a.at(r, j), f.mul(factor, a.at(col, j))));
    }
  }
  return det;
}

bool commute(const Matrix& x, const Matrix& y) { return x * y == y * x; }

std::string format_matrix(const Matrix& m) {
  std::string out = "[";
  for (int i = 0; i < m.dim(); ++i) {
    out += "[";
    for (int j = 0; j < m.dim(); ++j) out += (j ? " " : "") + std::to_string(m.at(i, j));
    out += "]";
  }
  return out + "]";
}

std::string format_entries(const Matrix& m) {
  std::string out;
  for (std::size_t i = 0; i < m.entries().size(); ++i) {
    out += (i ? " " : "") + std::to_string(m.entries()[i]);
  }
  return out;
}

}  // namespace smove
