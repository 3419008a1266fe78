#include "smove/freegroup.hpp"

#include <algorithm>
#include <cctype>
#include <ostream>

#include "smove/error.hpp"

namespace smove {

Letter::Letter(int index, int sign) {
  if (index < 1) throw InputError("generator index must be >= 1");
  if (sign != 1 && sign != -1) throw InputError("letter sign must be +1 or -1");
  value_ = index * sign;
}

Letter Letter::from_signed(int value) {
  if (value == 0) throw InputError("letter value 0 is not a generator");
  return value < 0 ? Letter(-value, -1) : Letter(value, 1);
}

int Word::max_generator() const {
  int m = 0;
  for (auto l : letters_) m = std::max(m, l.index());
  return m;
}

Word concat(const Word& u, const Word& v) {
  Word out = u;
  out.append(v);
  return out;
}

ReducedWord reduce(const Word& w) {
  std::vector<Letter> stack;
  stack.reserve(w.size());
  for (auto l : w) {
    if (!stack.empty() && stack.back().cancels(l)) {
      stack.pop_back();
    } else {
      stack.push_back(l);
    }
  }
  return ReducedWord(Word(std::move(stack)));
}

bool is_reduced(const Word& w) {
  for (std::size_t i = 1; i < w.size(); ++i) {
    if (w[i - 1].cancels(w[i])) return false;
  }
  return true;
}

ReducedWord multiply(const Word& u, const Word& v) { return reduce(concat(u, v)); }

ReducedWord product(std::span<const Word> factors) {
  Word all;
  for (const auto& f : factors) all.append(f);
  return reduce(all);
}

ReducedWord invert(const Word& w) {
  std::vector<Letter> out;
  out.reserve(w.size());
  for (auto it = w.letters().rbegin(); it != w.letters().rend(); ++it) {
    out.push_back(it->inverse());
  }
  return reduce(Word(std::move(out)));
}

ReducedWord conjugate(const Word& w, const Word& r) {
  Word all = concat(w, r);
  all.append(invert(w));
  return reduce(all);
}

ReducedWord commutator(const Word& x, const Word& y) {
  Word all = concat(x, y);
  all.append(invert(x));
  all.append(invert(y));
  return reduce(all);
}

ReducedWord power(const Word& w, int exponent) {
  const Word base = exponent < 0 ? Word(invert(w)) : w;
  Word all;
  for (int i = 0; i < std::abs(exponent); ++i) all.append(base);
  return reduce(all);
}

bool equal(const Word& u, const Word& v) { return reduce(u) == reduce(v); }

ReducedWord substitute(const Word& w, int index, const Word& repl) {
  const Word repl_inv = invert(repl);
  Word out;
  for (auto l : w) {
    if (l.index() != index) {
      out.push_back(l);
    } else {
      out.append(l.sign() > 0 ? repl : repl_inv);
    }
  }
  return reduce(out);
}

Word flip_signs(const Word& w) {
  Word out;
  for (auto l : w) out.push_back(l.inverse());
  return out;
}

std::vector<Word> cyclic_rotations(const Word& w) {
  if (w.empty()) return {Word{}};
  std::vector<Word> out;
  std::vector<Letter> letters(w.begin(), w.end());
  for (std::size_t i = 0; i < letters.size(); ++i) {
    out.emplace_back(letters);
    std::rotate(letters.begin(), letters.begin() + 1, letters.end());
  }
  return out;
}

bool is_cyclic_rotation(const Word& candidate, const Word& w) {
  if (candidate.size() != w.size()) return false;
  const auto rots = cyclic_rotations(w);
  return std::find(rots.begin(), rots.end(), candidate) != rots.end();
}

void check_generators(const Word& w, int generator_count) {
  const int m = w.max_generator();
  if (m > generator_count) {
    throw InputError("word " + format_word(w) + " uses generator " + std::to_string(m) +
                     " but only " + std::to_string(generator_count) + " are declared");
  }
}

Word parse_word(std::string_view text, std::optional<int> generator_count) {
  Word out;
  std::size_t i = 0;
  bool saw_token = false;
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == '1') {
      saw_token = true;
      ++i;
      continue;
    }
    if ((c == 'g' || c == 'G') && i + 1 < text.size() &&
        std::isdigit(static_cast<unsigned char>(text[i + 1]))) {
      std::size_t j = i + 1;
      long index = 0;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) {
        index = index * 10 + (text[j] - '0');
        if (index > 1'000'000) throw InputError("generator index too large in '" + std::string(text) + "'");
        ++j;
      }
      if (index < 1) throw InputError("generator index must be >= 1 in '" + std::string(text) + "'");
      out.push_back(Letter(static_cast<int>(index), c == 'g' ? 1 : -1));
      saw_token = true;
      i = j;
      continue;
    }
    if (c >= 'a' && c <= 'z') {
      out.push_back(Letter(c - 'a' + 1, 1));
    } else if (c >= 'A' && c <= 'Z') {
      out.push_back(Letter(c - 'A' + 1, -1));
    } else {
      throw InputError("unexpected character '" + std::string(1, c) + "' in word literal '" +
                       std::string(text) + "'");
    }
    saw_token = true;
    ++i;
  }
  if (!saw_token) throw InputError("empty word literal (use 1 for the identity)");
  if (generator_count) check_generators(out, *generator_count);
  return out;
}

ReducedWord parse_reduced(std::string_view text, std::optional<int> generator_count) {
  return reduce(parse_word(text, generator_count));
}

std::string format_letter(Letter l) {
  if (l.index() <= 26) {
    return std::string(1, static_cast<char>((l.sign() > 0 ? 'a' : 'A') + l.index() - 1));
  }
  return (l.sign() > 0 ? "g" : "G") + std::to_string(l.index());
}

std::string format_word(const Word& w) {
  if (w.empty()) return "1";
  std::string out;
  for (auto l : w) out += format_letter(l);
  return out;
}

std::ostream& operator<<(std::ostream& os, const Word& w) { return os << format_word(w); }
std::ostream& operator<<(std::ostream& os, const ReducedWord& w) { return os << format_word(w); }

namespace {
Letter random_letter(Rng& rng, int generator_count) {
  return Letter(static_cast<int>(rng.uniform(1, generator_count)), rng.coin() ? 1 : -1);
}
}  // namespace

ReducedWord random_reduced_word(Rng& rng, int generator_count, std::size_t length) {
  Word w;
  while (w.size() < length) {
    const Letter l = random_letter(rng, generator_count);
    if (!w.empty() && w[w.size() - 1].cancels(l)) continue;
    w.push_back(l);
  }
  return reduce(w);
}

Word random_word(Rng& rng, int generator_count, std::size_t length) {
  Word w;
  for (std::size_t i = 0; i < length; ++i) w.push_back(random_letter(rng, generator_count));
  return w;
}

}  // namespace smove
