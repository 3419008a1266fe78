#pragma once

// The commutator criterion R S^-1 = prod [R_a, S_a] for a pair of
// presentations over a shared 1-skeleton.
//
// Convention: the factor list is stored in the order it appears in
//   R . S^-1 . [S_1,R_1] [S_2,R_2] ... [S_m,R_m] = 1
// which is equivalent to R S^-1 = [R_m,S_m] ... [R_1,S_1].

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "smove/presentation.hpp"

namespace smove {

struct Factor {
  ConjugatedRelator r;  // resolves in K
  ConjugatedRelator s;  // resolves in L

  friend bool operator==(const Factor&, const Factor&) = default;
};

using CommutatorDecomposition = std::vector<Factor>;

struct CriterionInstance {
  Presentation K;
  Presentation L;
  std::string R;
  std::string S;
  CommutatorDecomposition decomp;

  friend bool operator==(const CriterionInstance&, const CriterionInstance&) = default;
};

// Throws InputError on unknown names or differing generator counts.
void check_instance(const CriterionInstance& inst);

const ReducedWord& word_R(const CriterionInstance& inst);
const ReducedWord& word_S(const CriterionInstance& inst);
// reduce(R S^-1)
ReducedWord product_word(const CriterionInstance& inst);
// [S_1,R_1] ... [S_m,R_m]
ReducedWord commutator_product(const CriterionInstance& inst);
// [R_m,S_m] ... [R_1,S_1]
ReducedWord star_product(const CriterionInstance& inst);
// reduce(R S^-1 [S_1,R_1]...[S_m,R_m]); empty iff the instance verifies.
ReducedWord triple_star_word(const CriterionInstance& inst);

bool verify(const CriterionInstance& inst);
bool verify_star(const CriterionInstance& inst);

// L' with L' R_new = R.
ReducedWord residual_R(const Word& R, const Word& R_new);
// M'^-1 with S_new^-1 M'^-1 = S^-1.
ReducedWord residual_S(const Word& S, const Word& S_new);

// Swap the roles of K and L. Throws PreconditionError unless inst verifies.
CriterionInstance gauge(const CriterionInstance& inst);

struct ResidualCommutatorReport {
  ReducedWord residual;          // residual_R(R, S)
  ReducedWord inverse_product;   // invert([S_1,R_1]...[S_m,R_m])
  ReducedWord residual_from_S;   // residual_S(S, R)
  bool equals_inverse_product = false;
  bool equals_residual_S = false;
  bool ok() const { return equals_inverse_product && equals_residual_S; }
};

ResidualCommutatorReport residual_commutator_check(const CriterionInstance& inst);

// Random instance that verifies by construction. K holds "R" and R1..Rm,
// L holds "S" and S1..Sm (m = max(1, n_factors)); relators have length 1..8.
CriterionInstance build_instance(std::uint64_t seed, int n_generators, int n_factors,
                                 int max_conjugator_len = 3);

enum class Side { K, L };

struct TransportResult {
  CriterionInstance instance;  // with R (or S) replaced
  ReducedWord residual;        // L' or M'^-1
  // reduce(L' R' S^-1 prod) or reduce(R (M'^-1)^-1 ... ) as applicable; empty on success
  ReducedWord check_word;
  bool ok() const { return check_word.empty(); }
};

// Applies a Q-move to the distinguished relator R (side K) or S (side L).
// The move must target that relator; the factor bases are left alone.
TransportResult transport_qmove(const CriterionInstance& inst, Side side, const QMove& m);

// Substitutes in both presentations and in every conjugator.
CriterionInstance apply_nielsen_to_instance(const CriterionInstance& inst, const NielsenMove& m);
// Substitutes in one presentation only, conjugators untouched.
CriterionInstance apply_nielsen_one_side(const CriterionInstance& inst, Side side,
                                         const NielsenMove& m);

// Trivial criterion for the relators added by prolonging both sides.
CriterionInstance prolonged_instance(const CriterionInstance& inst);

// ---- Text formats ----------------------------------------------------------
//
// Decomposition line:
//   factor wR=<word> R=<name>^<+1|-1> wS=<word> S=<name>^<+1|-1>
// Instance file:
//   K <presentation file>
//   L <presentation file>
//   R <name>
//   S <name>
//   decomp <file>        (optional; or inline factor lines)

CommutatorDecomposition parse_decomposition(std::string_view text);
std::string format_decomposition(const CommutatorDecomposition& d);
std::string format_factor(const Factor& f);
// Relative paths resolve against base_dir.
CriterionInstance parse_instance(std::string_view text, const std::string& base_dir);
CriterionInstance load_instance(const std::string& path);

// Small fixed instance: K = <a,b | R=abA, R1=a>, L = <a,b | S=b>, one factor.
CriterionInstance fixture_instance();

}  // namespace smove
