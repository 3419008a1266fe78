#include <doctest.h>

#include "smove/error.hpp"
#include "smove/field.hpp"
#include "smove/random.hpp"

using namespace smove;

namespace {

Matrix random_matrix(Rng& rng, std::uint32_t p, int d) {
  Matrix m(p, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) m.set(i, j, static_cast<std::uint32_t>(rng.uniform(0, p - 1)));
  }
  return m;
}

}  // namespace

TEST_CASE("primes") {
  CHECK(is_prime(2));
  CHECK(is_prime(101));
  CHECK(is_prime(1000003));
  CHECK_FALSE(is_prime(1));
  CHECK_FALSE(is_prime(91));
  CHECK_NOTHROW(check_prime(101));
  CHECK_THROWS_AS(check_prime(100), InputError);
  CHECK_THROWS_AS(check_prime(4294967311ull), InputError);
}

TEST_CASE("field arithmetic") {
  const Fp f(101);
  CHECK(f.norm(-1) == 100);
  CHECK(f.mul(f.inv(7), 7) == 1);
  CHECK(f.pow(3, 100) == 1);
  CHECK_THROWS_AS(f.inv(0), PreconditionError);
  for (std::uint32_t a = 1; a < 101; ++a) CHECK(f.mul(a, f.inv(a)) == 1);
}

TEST_CASE("matrices") {
  Rng rng(12);
  const std::uint32_t p = 101;
  for (int t = 0; t < 200; ++t) {
    const Matrix a = random_matrix(rng, p, 4);
    const Matrix b = random_matrix(rng, p, 4);
    const Matrix c = random_matrix(rng, p, 4);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * Matrix::identity(p, 4) == a);
    CHECK(Fp(p).mul(determinant(a), determinant(b)) == determinant(a * b));
    if (auto inv = try_inverse(a)) {
      CHECK((a * *inv).is_identity());
      CHECK((*inv * a).is_identity());
      CHECK(determinant(a) != 0);
    } else {
      CHECK(determinant(a) == 0);
    }
  }
  Matrix singular(p, 2);
  singular.set(0, 0, 1);
  CHECK_FALSE(try_inverse(singular));
  CHECK_THROWS_AS(inverse(singular), PreconditionError);
  CHECK(power(Matrix::scalar(p, 2, 2), 3) == Matrix::scalar(p, 2, 8));
  CHECK(commute(Matrix::diagonal(p, {1, 2}), Matrix::diagonal(p, {3, 4})));
  CHECK(format_matrix(Matrix::diagonal(p, {1, 2})) == "[[1 0][0 2]]");
  CHECK(format_entries(Matrix::diagonal(p, {1, 2})) == "1 0 0 2");
  CHECK(scale(Matrix::identity(p, 2), 0).is_zero());
}
