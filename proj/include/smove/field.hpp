#pragma once

// Dense square matrices over the prime field F_p (p < 2^31).

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace smove {

bool is_prime(std::uint64_t n);
// Throws InputError unless p is a prime below 2^31.
void check_prime(std::uint64_t p);

class Fp {
 public:
  // No primality check here; see check_prime.
  explicit Fp(std::uint32_t p) : p_(p) {}
  std::uint32_t p() const { return p_; }
  std::uint32_t norm(std::int64_t x) const;
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const { return static_cast<std::uint32_t>((std::uint64_t{a} + b) % p_); }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return static_cast<std::uint32_t>((std::uint64_t{a} + p_ - b) % p_); }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const { return static_cast<std::uint32_t>(std::uint64_t{a} * b % p_); }
  std::uint32_t pow(std::uint32_t a, std::uint64_t e) const;
  std::uint32_t inv(std::uint32_t a) const;  // throws PreconditionError for 0

 private:
  std::uint32_t p_;
};

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::uint32_t p, int d);  // zero matrix
  static Matrix identity(std::uint32_t p, int d);
  static Matrix scalar(std::uint32_t p, int d, std::uint32_t c);
  static Matrix diagonal(std::uint32_t p, const std::vector<std::uint32_t>& entries);

  std::uint32_t p() const { return p_; }
  int dim() const { return d_; }
  std::uint32_t at(int i, int j) const { return a_[static_cast<std::size_t>(i * d_ + j)]; }
  void set(int i, int j, std::uint32_t v);
  const std::vector<std::uint32_t>& entries() const { return a_; }

  bool is_identity() const;
  bool is_zero() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::uint32_t p_ = 2;
  int d_ = 0;
  std::vector<std::uint32_t> a_;
};

Matrix operator*(const Matrix& x, const Matrix& y);
Matrix operator+(const Matrix& x, const Matrix& y);
Matrix scale(const Matrix& x, std::uint32_t c);
Matrix power(const Matrix& x, unsigned e);
// Gauss-Jordan; nullopt when singular.
std::optional<Matrix> try_inverse(const Matrix& x);
// Throws PreconditionError when singular.
Matrix inverse(const Matrix& x);
std::uint32_t determinant(const Matrix& x);
bool commute(const Matrix& x, const Matrix& y);

// "[[a b][c d]]"
std::string format_matrix(const Matrix& m);
// Row-major entries separated by spaces.
std::string format_entries(const Matrix& m);

}  // namespace smove
