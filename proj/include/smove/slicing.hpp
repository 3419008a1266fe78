#pragma once

// Slice sequences.
//
// Graph level: a slice is a list of components (circles carrying marks, arcs
// carrying endpoint labels and the letters they have circulated). Consecutive
// slices are related by exactly one LocalMove; validate() replays every move.
//
// Token level: the eight-slice abstract sequence of an s-move 3-cell, fed to
// the playground.

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "smove/criterion.hpp"

namespace smove {

struct Circle {
  std::vector<std::string> marks;
  friend bool operator==(const Circle&, const Circle&) = default;
};

struct Arc {
  std::string left;
  std::string right;
  Word trace;
  friend bool operator==(const Arc&, const Arc&) = default;
};

using Component = std::variant<Circle, Arc>;

struct SliceGraph {
  std::vector<Component> components;
  int level = 0;
  friend bool operator==(const SliceGraph&, const SliceGraph&) = default;
};

// Component indices refer to the slice the move is applied to. Removed
// components shift later indices down; new ones are appended.
struct BirthCircle {
  std::vector<std::string> marks;
  friend bool operator==(const BirthCircle&, const BirthCircle&) = default;
};
struct DeathCircle {
  std::size_t c;
  friend bool operator==(const DeathCircle&, const DeathCircle&) = default;
};
struct SplitCircleToArc {
  std::size_t c;
  std::string left, right;
  friend bool operator==(const SplitCircleToArc&, const SplitCircleToArc&) = default;
};
// c2 == c1 closes a single arc.
struct JoinArcsToCircle {
  std::size_t c1, c2;
  std::string mark;
  friend bool operator==(const JoinArcsToCircle&, const JoinArcsToCircle&) = default;
};
struct CirculateStep {
  std::size_t c;
  std::string channel;
  Letter letter;
  friend bool operator==(const CirculateStep&, const CirculateStep&) = default;
};
// Result sits at c1: (c1.left, c2.right), traces concatenated.
struct MergeArcs {
  std::size_t c1, c2;
  std::string mark;  // "M" or "Q"
  friend bool operator==(const MergeArcs&, const MergeArcs&) = default;
};
// Every occurrence of label `drop` becomes `keep`.
struct IdentifyEdges {
  std::string keep, drop;
  friend bool operator==(const IdentifyEdges&, const IdentifyEdges&) = default;
};
struct SwapEnds {
  std::size_t c;
  friend bool operator==(const SwapEnds&, const SwapEnds&) = default;
};
// A cancelling pair of saddle points; no visible change in the slice.
struct SaddlePair {
  std::size_t c;
  friend bool operator==(const SaddlePair&, const SaddlePair&) = default;
};
struct JoinCircles {
  std::size_t into, from;
  friend bool operator==(const JoinCircles&, const JoinCircles&) = default;
};
// Moves `marks` out of circle c into a new circle.
struct SplitCircle {
  std::size_t c;
  std::vector<std::string> marks;
  friend bool operator==(const SplitCircle&, const SplitCircle&) = default;
};

using LocalMove = std::variant<BirthCircle, DeathCircle, SplitCircleToArc, JoinArcsToCircle,
                               CirculateStep, MergeArcs, IdentifyEdges, SwapEnds, SaddlePair,
                               JoinCircles, SplitCircle>;

// Throws InputError with a reason when the move does not apply.
SliceGraph apply_local_move(const SliceGraph& s, const LocalMove& m);

// A part of the boundary readout: the letters circulated on `channel`.
// Channels whose name ends in "^-1" run against the slicing orientation, so
// their letters are read back to front. `inverse` inverts the part as a word.
struct BoundaryPart {
  std::string channel;
  bool inverse = false;
  friend bool operator==(const BoundaryPart&, const BoundaryPart&) = default;
};

struct SliceSequence {
  std::vector<SliceGraph> slices;
  std::vector<LocalMove> moves;
  std::vector<BoundaryPart> boundary;
};

struct ValidationResult {
  bool ok = true;
  std::size_t first_bad_index = 0;  // index of the offending move
  std::string reason;
  explicit operator bool() const { return ok; }
};

ValidationResult validate(const SliceSequence& seq);
// Throws PreconditionError on a sequence that does not validate.
ReducedWord boundary_trace(const SliceSequence& seq);
ReducedWord channel_word(const SliceSequence& seq, const std::string& channel);

// Letterwise inversion, order kept.
ReducedWord inverse_trace(const Word& R);

enum class Dominant { RFirst, SFirst };

SliceSequence slice_bag(const Word& W, bool identify);
SliceSequence slice_inverse_pair(const Word& R);
SliceSequence slice_commutator(const Word& R, const Word& S, Dominant dominant, bool identify);
SliceSequence slice_product(const Word& R, const Word& S);
// Throws InputError on an empty list.
SliceSequence connect(const std::vector<SliceSequence>& pieces);

template <class M>
std::size_t count_moves_of(const SliceSequence& seq) {
  std::size_t n = 0;
  for (const auto& m : seq.moves) n += std::holds_alternative<M>(m) ? 1 : 0;
  return n;
}

std::string format_component(const Component& c);
std::string format_slice(const SliceGraph& s);
std::string format_local_move(const LocalMove& m);
std::string dump(const SliceSequence& seq);

// ---- Abstract slices -------------------------------------------------------

enum class TokenKind { Empty, Sphere, SpElBag, SpElInvPair, Cell, Commutator };

struct CellToken {
  TokenKind kind = TokenKind::Empty;
  ReducedWord word;  // unused for Empty and Sphere

  std::string label() const;
  CellToken formal_inverse() const;
  friend bool operator==(const CellToken&, const CellToken&) = default;
};

CellToken empty_token();
CellToken sphere_token();
CellToken cell_token(const Word& w);
CellToken bag_token(const Word& w);
CellToken invpair_token(const Word& w);
CellToken commutator_token(const Word& w);

// Label of the formal inverse ("cell:ab" -> "cell:BA"); throws on bad labels.
std::string inverse_label(const std::string& label);
// The smaller of a label and its inverse label.
std::string canonical_label(const std::string& label);
bool is_spel_label(const std::string& label);

struct AbstractSlice {
  std::vector<CellToken> tokens;
  bool is_empty() const;
  std::vector<std::string> labels() const;  // sorted
};

enum class IdentificationType { Longitudinal, Meridian };
enum class TransitionKind { Join, Split, Transform };

IdentificationType other_type(IdentificationType t);
std::string type_name(IdentificationType t);

struct Residual {
  Side side = Side::K;
  ReducedWord new_word;  // R' or S'
  ReducedWord residual;  // L' or M'^-1
};

struct AbstractSliceSequence {
  std::vector<AbstractSlice> slices;
  std::vector<TransitionKind> transitions;
  IdentificationType type = IdentificationType::Longitudinal;
  std::size_t perturbation_index = 3;  // transition slice_3 -> slice_4
  std::optional<Residual> residual;
};

// Spherical-element tokens of factor alpha for the given type.
std::vector<CellToken> spel_tokens(const CriterionInstance& inst, std::size_t alpha,
                                   IdentificationType type);

// Throws PreconditionError unless inst verifies.
AbstractSliceSequence build_abstract(const CriterionInstance& inst, IdentificationType type,
                                     std::optional<Residual> residual = std::nullopt);

std::string dump(const AbstractSliceSequence& seq);

}  // namespace smove
