#pragma once

// Presentations <a_1..a_n | R_1..R_m> and the move vocabulary acting on them:
// Q-moves on relators, Nielsen moves on generators, and prolongation.

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "smove/freegroup.hpp"

namespace smove {

struct Relator {
  std::string name;
  ReducedWord word;

  friend bool operator==(const Relator&, const Relator&) = default;
};

class Presentation {
 public:
  Presentation() = default;
  // Validates: generator_count >= 1, names unique and non-empty, words over
  // the declared generators.
  Presentation(int generator_count, std::vector<Relator> relators);

  int generator_count() const { return generator_count_; }
  const std::vector<Relator>& relators() const { return relators_; }
  std::size_t size() const { return relators_.size(); }

  const Relator& at(std::size_t i) const;
  std::optional<std::size_t> find(std::string_view name) const;
  std::size_t index_of(std::string_view name) const;  // throws InputError
  const ReducedWord& word(std::string_view name) const;

  // Copy with relator i replaced by `word` (reduced).
  Presentation with_word(std::size_t i, const Word& word) const;

  friend bool operator==(const Presentation&, const Presentation&) = default;

 private:
  int generator_count_ = 1;
  std::vector<Relator> relators_;
};

// A relator conjugate w R^e w^-1, referenced by name.
struct ConjugatedRelator {
  ReducedWord conjugator;
  std::string base;
  int exponent = 1;

  friend bool operator==(const ConjugatedRelator&, const ConjugatedRelator&) = default;
};

ReducedWord expand(const ConjugatedRelator& c, const Presentation& p);

// ---- Q-moves ---------------------------------------------------------------

struct InvertRelator {
  std::size_t target;
  friend bool operator==(const InvertRelator&, const InvertRelator&) = default;
};
// R_target -> R_target * R_other
struct MultiplyRight {
  std::size_t target;
  std::size_t other;
  friend bool operator==(const MultiplyRight&, const MultiplyRight&) = default;
};
// R_target -> g R_target g^-1
struct ConjugateRelator {
  std::size_t target;
  Letter by;
  friend bool operator==(const ConjugateRelator&, const ConjugateRelator&) = default;
};

using QMove = std::variant<InvertRelator, MultiplyRight, ConjugateRelator>;

std::size_t target_of(const QMove& m);
void check_qmove(const Presentation& p, const QMove& m);
Presentation apply_qmove(const Presentation& p, const QMove& m);
// Moves that, applied in order after m, restore p exactly.
std::vector<QMove> inverse_moves(const Presentation& p, const QMove& m);
// The new relator written as a product (in order) of conjugates of relators
// of p. At most two factors for every move variant.
std::vector<ConjugatedRelator> normal_closure_witness(const Presentation& p, const QMove& m);
std::string describe(const QMove& m, const Presentation& p);

// ---- Nielsen moves ---------------------------------------------------------

enum class NielsenKind { Invert, RightMultiply, LeftMultiply };

struct NielsenMove {
  int target = 1;
  NielsenKind kind = NielsenKind::Invert;
  int other = 0;  // unused for Invert

  friend bool operator==(const NielsenMove&, const NielsenMove&) = default;
};

void check_nielsen(int generator_count, const NielsenMove& m);
// Image of a_target under the move: a^-1, a*b or b*a.
ReducedWord nielsen_image(const NielsenMove& m);
ReducedWord apply_nielsen(const Word& w, const NielsenMove& m);
Presentation apply_nielsen(const Presentation& p, const NielsenMove& m);
std::pair<Presentation, Presentation> apply_nielsen_pair(const Presentation& k,
                                                         const Presentation& l,
                                                         const NielsenMove& m);
std::vector<NielsenMove> inverse_moves(const NielsenMove& m);

// Adds generator n+1 and the relator T<n+1> = a_{n+1}.
Presentation prolong(const Presentation& p);

// ---- Text formats ----------------------------------------------------------
//
//   gens <n>
//   rel <name> <word-literal>
//
// Moves file, one per line:
//   inv <name> | mulr <name> <name> | conj <name> <letter>
//   nielsen inv <letter> | nielsen rmul <letter> <letter> | nielsen lmul <letter> <letter>
//   prolong

Presentation parse_presentation(std::string_view text);
Presentation load_presentation(const std::string& path);
std::string format_presentation(const Presentation& p);

struct NamedInvert {
  std::string target;
  friend bool operator==(const NamedInvert&, const NamedInvert&) = default;
};
struct NamedMultiplyRight {
  std::string target;
  std::string other;
  friend bool operator==(const NamedMultiplyRight&, const NamedMultiplyRight&) = default;
};
struct NamedConjugate {
  std::string target;
  Letter by;
  friend bool operator==(const NamedConjugate&, const NamedConjugate&) = default;
};
struct ProlongMove {
  friend bool operator==(const ProlongMove&, const ProlongMove&) = default;
};

using ScriptMove =
    std::variant<NamedInvert, NamedMultiplyRight, NamedConjugate, NielsenMove, ProlongMove>;

std::vector<ScriptMove> parse_moves(std::string_view text);
ScriptMove parse_move_line(std::string_view line);
QMove resolve(const ScriptMove& m, const Presentation& p);  // Q-move variants only
Presentation apply_script_move(const Presentation& p, const ScriptMove& m);
std::string format_move(const ScriptMove& m);

// Reads a whole file; throws InputError when it cannot be opened.
std::string read_file(const std::string& path);

}  // namespace smove
