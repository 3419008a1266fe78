#include <doctest.h>

#include <functional>
#include <set>

#include "smove/error.hpp"
#include "smove/freegroup.hpp"

using namespace smove;

namespace {

std::string r(std::string_view s) { return format_word(parse_reduced(s)); }

// Every word of the given length over n generators, via its base-2n digits.
Word word_from_code(std::uint64_t code, int n, int len) {
  Word w;
  for (int i = 0; i < len; ++i) {
    const int digit = static_cast<int>(code % static_cast<std::uint64_t>(2 * n));
    code /= static_cast<std::uint64_t>(2 * n);
    w.push_back(Letter(digit / 2 + 1, digit % 2 == 0 ? 1 : -1));
  }
  return w;
}

std::uint64_t count_words(int n, int len) {
  std::uint64_t c = 1;
  for (int i = 0; i < len; ++i) c *= static_cast<std::uint64_t>(2 * n);
  return c;
}

// Cancels adjacent inverse pairs in an order chosen by rng until none remain.
Word random_order_reduce(Word w, Rng& rng) {
  std::vector<Letter> v(w.begin(), w.end());
  for (;;) {
    std::vector<std::size_t> spots;
    for (std::size_t i = 0; i + 1 < v.size(); ++i) {
      if (v[i].cancels(v[i + 1])) spots.push_back(i);
    }
    if (spots.empty()) return Word(v);
    const auto at = spots[static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(spots.size()) - 1))];
    v.erase(v.begin() + static_cast<std::ptrdiff_t>(at), v.begin() + static_cast<std::ptrdiff_t>(at) + 2);
  }
}

// All terminal words reachable by cancelling in any order.
void all_terminals(const std::vector<Letter>& v, std::set<std::vector<Letter>>& out) {
  bool any = false;
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    if (v[i].cancels(v[i + 1])) {
      any = true;
      auto next = v;
      next.erase(next.begin() + static_cast<std::ptrdiff_t>(i), next.begin() + static_cast<std::ptrdiff_t>(i) + 2);
      all_terminals(next, out);
    }
  }
  if (!any) out.insert(v);
}

}  // namespace

TEST_CASE("reduce examples") {
  CHECK(r("aA") == "1");
  CHECK(r("abBA") == "1");
  CHECK(format_word(multiply(concat(commutator(parse_word("a"), parse_word("b")), parse_word("b")),
                             parse_word("a"))) == "ab");
  CHECK(r("aAbcC") == "b");
  CHECK(r("1") == "1");
  CHECK(r(" a b ") == "ab");
}

TEST_CASE("multiply, invert, conjugate, commutator examples") {
  CHECK(format_word(multiply(parse_word("ab"), parse_word("BA"))) == "1");
  CHECK(format_word(multiply(parse_word("abA"), parse_word("b"))) == "abAb");
  CHECK(format_word(multiply(parse_word("1"), parse_word("ab"))) == "ab");
  CHECK(format_word(invert(parse_word("aabb"))) == "BBAA");
  CHECK(format_word(invert(parse_word("1"))) == "1");
  CHECK(format_word(invert(parse_word("abA"))) == "aBA");
  CHECK(format_word(conjugate(parse_word("1"), parse_word("ab"))) == "ab");
  CHECK(format_word(conjugate(parse_word("a"), parse_word("b"))) == "abA");
  CHECK(format_word(conjugate(parse_word("a"), parse_word("a"))) == "a");
  CHECK(format_word(commutator(parse_word("a"), parse_word("b"))) == "abAB");
  CHECK(format_word(commutator(parse_word("a"), parse_word("a"))) == "1");
  CHECK(invert(commutator(parse_word("ab"), parse_word("ba"))) ==
        commutator(parse_word("ba"), parse_word("ab")));
}

TEST_CASE("equal and substitute examples") {
  CHECK(equal(parse_word("abBA"), parse_word("1")));
  CHECK_FALSE(equal(parse_word("ab"), parse_word("ba")));
  CHECK(equal(concat(commutator(parse_word("a"), parse_word("b")), parse_word("ba")), parse_word("ab")));
  CHECK(format_word(substitute(parse_word("aa"), 1, parse_word("A"))) == "AA");
  CHECK(format_word(substitute(parse_word("ab"), 1, parse_word("ab"))) == "abb");
  CHECK(format_word(substitute(parse_word("b"), 1, parse_word("ab"))) == "b");
  CHECK(format_word(substitute(parse_word("A"), 1, parse_word("ab"))) == "BA");
}

TEST_CASE("literal grammar") {
  CHECK(parse_word("g1G1") == parse_word("aA"));
  CHECK(format_word(parse_reduced("g30g30G30")) == "g30");
  CHECK(parse_word("a b\tc").size() == 3);
  CHECK_THROWS_AS(parse_word("a?b"), InputError);
  CHECK(parse_word("g") == Word{Letter(7, 1)});
  CHECK_THROWS_AS(parse_word("g0"), InputError);
  CHECK_THROWS_AS(parse_word("abc", 2), InputError);
  CHECK_NOTHROW(parse_word("abc", 3));
  CHECK_THROWS_AS(check_generators(parse_word("c"), 2), InputError);
  // round trip through the printer
  Rng rng(5);
  for (int i = 0; i < 200; ++i) {
    const Word w = random_word(rng, 30, static_cast<std::size_t>(rng.uniform(0, 9)));
    CHECK(parse_word(format_word(w)) == w);
  }
}

TEST_CASE("idempotence: exhaustive short words over three generators") {
  for (int len = 0; len <= 8; ++len) {
    const auto total = count_words(3, len);
    for (std::uint64_t c = 0; c < total; ++c) {
      const Word w = word_from_code(c, 3, len);
      const ReducedWord once = reduce(w);
      REQUIRE(is_reduced(once.word()));
      REQUIRE(reduce(once.word()) == once);
    }
  }
  Rng rng(11);
  for (int i = 0; i < 10000; ++i) {
    const Word w = random_word(rng, 3, static_cast<std::size_t>(rng.uniform(13, 40)));
    const ReducedWord once = reduce(w);
    REQUIRE(reduce(once.word()) == once);
  }
}

TEST_CASE("confluence against a cancel-in-any-order oracle") {
  Rng rng(3);
  for (int len = 0; len <= 10; ++len) {
    const auto total = count_words(2, len);
    for (std::uint64_t c = 0; c < total; ++c) {
      const Word w = word_from_code(c, 2, len);
      REQUIRE(random_order_reduce(w, rng) == reduce(w).word());
    }
  }
  // Full branching search on the shorter words: exactly one terminal form.
  for (int len = 0; len <= 6; ++len) {
    const auto total = count_words(2, len);
    for (std::uint64_t c = 0; c < total; ++c) {
      const Word w = word_from_code(c, 2, len);
      std::set<std::vector<Letter>> terminals;
      all_terminals(std::vector<Letter>(w.begin(), w.end()), terminals);
      REQUIRE(terminals.size() == 1);
      const auto only = *terminals.begin();
      REQUIRE(Word(only) == reduce(w).word());
    }
  }
}

TEST_CASE("group laws on random words") {
  Rng rng(21);
  for (int i = 0; i < 2000; ++i) {
    const auto len = [&] { return static_cast<std::size_t>(rng.uniform(0, 10)); };
    const Word u = random_word(rng, 3, len());
    const Word v = random_word(rng, 3, len());
    const Word w = random_word(rng, 3, len());
    CHECK(multiply(multiply(u, v), w) == multiply(u, multiply(v, w)));
    CHECK(invert(invert(u)) == reduce(u));
    CHECK(multiply(u, invert(u)).empty());
    CHECK(invert(multiply(u, v)) == multiply(invert(v), invert(u)));
    CHECK(invert(commutator(u, v)) == commutator(v, u));
    // [x,y] y x = x y
    CHECK(multiply(concat(commutator(u, v), v), u) == multiply(u, v));
    CHECK(conjugate(u, v) == product(std::vector<Word>{u, v, invert(u)}));
    CHECK(power(u, 3) == product(std::vector<Word>{u, u, u}));
    CHECK(power(u, -2) == multiply(invert(u), invert(u)));
  }
}

TEST_CASE("cyclic rotations") {
  CHECK(cyclic_rotations(parse_word("abc")).size() == 3);
  CHECK(cyclic_rotations(Word{}).size() == 1);
  CHECK(is_cyclic_rotation(parse_word("bca"), parse_word("abc")));
  CHECK_FALSE(is_cyclic_rotation(parse_word("acb"), parse_word("abc")));
  CHECK(format_word(flip_signs(parse_word("aB"))) == "Ab");
}

TEST_CASE("random reduced words have the requested length") {
  Rng rng(2);
  for (std::size_t len = 0; len < 20; ++len) {
    const auto w = random_reduced_word(rng, 2, len);
    CHECK(w.size() == len);
    CHECK(is_reduced(w.word()));
  }
}
