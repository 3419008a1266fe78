#pragma once

// Words in a free group F(a_1, ..., a_n).
//
// A Letter is a signed generator index. Word is an arbitrary letter sequence,
// ReducedWord additionally guarantees that no letter is adjacent to its
// inverse. Every operation returns a ReducedWord, so results can be compared
// letter by letter.
//
// Surface syntax: a..z are generators 1..26, A..Z their inverses, g<k> / G<k>
// address generator k directly, "1" is the identity.

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "smove/random.hpp"

namespace smove {

class Letter {
 public:
  constexpr Letter() = default;
  // index >= 1, sign = +1 or -1.
  Letter(int index, int sign);
  static Letter from_signed(int value);

  int index() const { return value_ < 0 ? -value_ : value_; }
  int sign() const { return value_ < 0 ? -1 : 1; }
  int signed_value() const { return value_; }
  Letter inverse() const { return from_signed(-value_); }
  bool cancels(Letter other) const { return value_ == -other.value_; }

  friend bool operator==(Letter, Letter) = default;
  friend auto operator<=>(Letter, Letter) = default;

 private:
  int value_ = 1;
};

class Word {
 public:
  Word() = default;
  Word(std::initializer_list<Letter> letters) : letters_(letters) {}
  explicit Word(std::vector<Letter> letters) : letters_(std::move(letters)) {}

  std::span<const Letter> letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  Letter operator[](std::size_t i) const { return letters_[i]; }
  auto begin() const { return letters_.begin(); }
  auto end() const { return letters_.end(); }

  void push_back(Letter l) { letters_.push_back(l); }
  void append(const Word& w) {
    letters_.insert(letters_.end(), w.letters_.begin(), w.letters_.end());
  }

  // Largest generator index used, 0 for the empty word.
  int max_generator() const;

  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word&, const Word&) = default;

 private:
  std::vector<Letter> letters_;
};

// Concatenation without reduction.
Word concat(const Word& u, const Word& v);

class ReducedWord {
 public:
  ReducedWord() = default;

  const Word& word() const { return word_; }
  operator const Word&() const { return word_; }  // NOLINT: intentional
  std::span<const Letter> letters() const { return word_.letters(); }
  std::size_t size() const { return word_.size(); }
  bool empty() const { return word_.empty(); }
  bool is_identity() const { return word_.empty(); }
  Letter operator[](std::size_t i) const { return word_[i]; }

  friend bool operator==(const ReducedWord&, const ReducedWord&) = default;
  friend auto operator<=>(const ReducedWord&, const ReducedWord&) = default;

 private:
  friend ReducedWord reduce(const Word& w);
  explicit ReducedWord(Word w) : word_(std::move(w)) {}
  Word word_;
};

// Free reduction with a stack of emitted letters.
ReducedWord reduce(const Word& w);
bool is_reduced(const Word& w);

ReducedWord multiply(const Word& u, const Word& v);
// Reduced product of all factors in order.
ReducedWord product(std::span<const Word> factors);
ReducedWord invert(const Word& w);
// w r w^-1
ReducedWord conjugate(const Word& w, const Word& r);
// x y x^-1 y^-1
ReducedWord commutator(const Word& x, const Word& y);
ReducedWord power(const Word& w, int exponent);
bool equal(const Word& u, const Word& v);
// Replace a_i by repl and a_i^-1 by repl^-1, then reduce.
ReducedWord substitute(const Word& w, int index, const Word& repl);

// Letterwise sign flip, order kept.
Word flip_signs(const Word& w);
// All cyclic rotations of w (w itself first). Empty word has one rotation.
std::vector<Word> cyclic_rotations(const Word& w);
bool is_cyclic_rotation(const Word& candidate, const Word& w);

// Throws InputError if w uses a generator above generator_count.
void check_generators(const Word& w, int generator_count);

// Word literal grammar. Throws InputError on malformed text, or on letters
// above generator_count when one is given.
Word parse_word(std::string_view text, std::optional<int> generator_count = std::nullopt);
ReducedWord parse_reduced(std::string_view text,
                          std::optional<int> generator_count = std::nullopt);
std::string format_letter(Letter l);
std::string format_word(const Word& w);
std::ostream& operator<<(std::ostream& os, const Word& w);
std::ostream& operator<<(std::ostream& os, const ReducedWord& w);

// Random freely reduced word of exactly `length` letters over n generators.
ReducedWord random_reduced_word(Rng& rng, int generator_count, std::size_t length);
// Random (possibly unreduced) letter sequence.
Word random_word(Rng& rng, int generator_count, std::size_t length);

}  // namespace smove
