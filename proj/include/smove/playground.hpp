#pragma once

// Commuting-matrix model of a state-module assignment: every cell token gets
// an invertible matrix over F_p, all of them commute, and a token shares its
// matrix with its formal inverse. Slices become products of token matrices,
// transitions become F_k = A_{k+1} A_k^-1.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "smove/field.hpp"
#include "smove/slicing.hpp"

namespace smove {

enum class BackendFamily { Diagonal, PolynomialInM };

class Backend {
 public:
  // Validates invertibility, pairwise commutativity and the presence of an
  // invertible "sphere" entry. With alias = true a label and its inverse
  // label share one entry.
  Backend(std::uint32_t p, int d, std::map<std::string, Matrix> assignment, bool alias = true);

  std::uint32_t p() const { return p_; }
  int dim() const { return d_; }
  bool aliasing() const { return alias_; }

  std::string key(const std::string& label) const;
  bool has(const std::string& label) const;
  const Matrix& at(const std::string& label) const;  // throws InputError when unassigned
  const Matrix& sphere() const { return at("sphere"); }
  const std::map<std::string, Matrix>& entries() const { return table_; }

  // Copy with one entry replaced; re-validated.
  Backend with(const std::string& label, const Matrix& m) const;
  // Copy with random entries for every missing label, drawn the same way
  // make_backend would have drawn them. Needs a generated backend.
  Backend extended(const std::vector<std::string>& labels) const;

  // True when every pair (label, inverse label) present maps to one matrix.
  bool inverse_contract_holds() const;

 private:
  friend Backend make_backend(const std::vector<std::string>&, std::uint32_t, int, std::uint64_t,
                              BackendFamily, bool);
  Matrix draw(const std::string& key) const;

  std::uint32_t p_;
  int d_;
  bool alias_;
  std::map<std::string, Matrix> table_;
  std::optional<BackendFamily> family_;
  std::uint64_t seed_ = 0;
  std::optional<Matrix> M_;
};

Backend make_backend(const std::vector<std::string>& labels, std::uint32_t p = 101, int d = 4,
                     std::uint64_t seed = 1, BackendFamily family = BackendFamily::Diagonal,
                     bool alias = true);

// Every label the analyses below need for inst (both types, gauge included).
std::vector<std::string> labels_for(const CriterionInstance& inst);
// Copy with every spherical-element entry set to the identity.
Backend with_trivial_spel(const Backend& b);

std::string format_backend(const Backend& b);
Backend parse_backend(std::string_view text);

Matrix slice_endo(const AbstractSlice& s, const Backend& b);
std::vector<Matrix> endos(const AbstractSliceSequence& seq, const Backend& b);
std::vector<Matrix> transitions(const std::vector<Matrix>& endos);
// F_last ... F_1 F_0
Matrix compose(const std::vector<Matrix>& maps, std::uint32_t p, int d);

// A'_4 = Z(cell R S^-1) * prod_alpha Z(comm_alpha) Z(spel_alpha).
Matrix perturbed_endo(const AbstractSliceSequence& seq, const Backend& b);
// F_0..F_6 with F_3 replaced by A'_4 A_3^-1.
std::vector<Matrix> perturbed_transitions(const AbstractSliceSequence& seq, const Backend& b);
Matrix perturbed_invariant(const AbstractSliceSequence& seq, const Backend& b);
// prod of the spherical-element matrices at the perturbation slice.
Matrix spel_product(const AbstractSliceSequence& seq, const Backend& b);

enum class Verdict { Pass, Fail, Obstructed };
std::string verdict_name(Verdict v);
int exit_code(Verdict v);

struct InvarianceReport {
  Verdict verdict = Verdict::Pass;
  std::string witness;
  std::vector<std::pair<std::string, bool>> checks;
};

// m = nullopt stands for the identity move (R_new = R).
InvarianceReport check_inside_invariance(const CriterionInstance& inst,
                                         const std::optional<QMove>& m, Side side,
                                         IdentificationType type, const Backend& b);
InvarianceReport check_gauge(const CriterionInstance& inst, IdentificationType type,
                             const Backend& b);
InvarianceReport between_type_obstruction(const CriterionInstance& inst, IdentificationType type,
                                          const Backend& b);

enum class CombineMode { Product, PermutationSum };
Matrix global_combine(const std::vector<Matrix>& locals, CombineMode mode, std::uint32_t p, int d);

struct SideData {
  CriterionInstance inst;
  IdentificationType type = IdentificationType::Longitudinal;
};

struct ThreeTestsResult {
  bool same = false;        // I(K) = I(L)
  bool gauge_K = false;     // I_gauge(K) = I(L)
  bool gauge_L = false;     // I(K) = I_gauge(L)
  bool counterexample_flag() const { return !same && !gauge_K && !gauge_L; }
};

ThreeTestsResult three_tests(const std::vector<SideData>& K, const std::vector<SideData>& L,
                             const Backend& b);

struct StabilizationReport {
  Verdict verdict = Verdict::Pass;
  bool forced_equality = false;
  bool annihilator_found = false;
  std::string witness;
};

// The split form I * Z(S^2)^v; v >= 1.
StabilizationReport stabilization_demo(const Backend& b, unsigned v);

}  // namespace smove
