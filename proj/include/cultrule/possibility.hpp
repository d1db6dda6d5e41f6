#pragma once

// Possibility transforms and densities, the stochastic identities they
// satisfy, pure systems and convex combinations of possibility transforms.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "cultrule/configuration.hpp"
#include "cultrule/matrix.hpp"
#include "cultrule/transform.hpp"

namespace cultrule {

// Row sums, convex weights, doubly stochastic checks.
inline constexpr double kStochasticTol = 1e-9;
// Identities that hold exactly by construction (pure systems).
inline constexpr double kExactTol = 1e-12;

// Real matrix whose positive cells are exactly the ones of its support
// transform, with entries in [0, 1] and row sums <= 1.
class PossibilityTransform {
 public:
  // Throws Errc::support_mismatch naming the offending cells, and
  // Errc::invalid_weights for entries outside [0, 1] or a row sum above 1.
  PossibilityTransform(Transform support, Matrix entries);

  // Support taken as the positive cells of `entries`.
  static PossibilityTransform from_matrix(SpacePtr space, Matrix entries);

  const Transform& support() const noexcept { return support_; }
  const Matrix& entries() const noexcept { return entries_; }
  const SpacePtr& space_ptr() const noexcept { return support_.space_ptr(); }
  std::size_t size() const noexcept { return support_.size(); }
  double operator()(std::size_t i, std::size_t j) const { return entries_(i, j); }

 private:
  Transform support_;
  Matrix entries_;
};

enum class Weighting {
  uniform_rows,  // p_ij = 1 / (number of allowed cells in row i)
};

PossibilityTransform build_possibility(const Transform& support, Weighting strategy = Weighting::uniform_rows);

enum class DensitySide {
  left,   // pi_i    = sum_j p_ij xi_j / w
  right,  // omega_i = sum_j p_ji xi_j / w
};

struct PossibilityDensity {
  std::vector<double> values;
  DensitySide side = DensitySide::left;
  std::size_t w = 0;
  // Sum of values stays <= 1 (+1e-12).
  bool axiom1 = true;

  double sum() const;
};

// Throws Errc::zero_source when xi is empty, Errc::dimension_mismatch on
// a length mismatch.
PossibilityDensity density(const PossibilityTransform& pi, const ContentList& xi, DensitySide side);

// Throws Errc::dimension_mismatch on unequal lengths.
double inner_product(const PossibilityDensity& a, const PossibilityDensity& b);

// Evaluation of the five conditions of the inner-product theorem next to the
// inner product itself. Nothing is asserted; `discrepancy` records when the
// conjunction of the conditions and <pi, omega> = 1 disagree.
struct Theorem1Report {
  bool phi_nonzero = false;        // (i)
  bool xi_nonzero = false;         // (ii)
  bool rows_stochastic = false;    // (iii), on rows with xi_i = 1
  bool phi_equals_xi = false;      // (iv)
  bool weights_equal = false;      // (v)
  std::size_t w = 0;
  std::vector<double> pi;          // left density of xi through Pi
  std::vector<double> omega;       // right density of phi through Theta
  double inner = 0.0;

  bool all_conditions() const {
    return phi_nonzero && xi_nonzero && rows_stochastic && phi_equals_xi && weights_equal;
  }
  bool inner_is_one(double tol = kStochasticTol) const;
  bool discrepancy(double tol = kStochasticTol) const { return all_conditions() != inner_is_one(tol); }
};

Theorem1Report theorem1_report(const PossibilityTransform& pi, const PossibilityTransform& theta,
                               const ContentList& xi, const ContentList& phi);

struct ReducedForm {
  Matrix matrix;
  // index_map[k] is the original row/column of reduced row/column k.
  std::vector<std::size_t> index_map;
};

// Keep only the rows and columns i with xi_i = 1. Throws Errc::zero_source
// on an empty xi.
ReducedForm reduce_form(const Matrix& m, const ContentList& xi);

struct StochasticReport {
  bool doubly_stochastic = false;
  bool nonnegative = false;
  std::vector<double> row_sums;
  std::vector<double> col_sums;
};

// Throws Errc::dimension_mismatch on a non-square matrix.
StochasticReport doubly_stochastic_check(const Matrix& m, double tol = kStochasticTol);

struct PureSystem {
  SpacePtr space;
  std::size_t index = 0;
  Transform rule;                    // single unit entry at (index, index)
  PossibilityTransform possibility;  // p_mm = 1
  std::int64_t structural_number = 0;
};

// `space` must contain configurations of a single order. Throws
// Errc::index_out_of_range when m >= space->size(), Errc::invalid_configuration
// when the space mixes orders.
PureSystem build_pure_system(SpacePtr space, std::size_t m);

// Cultural structure of order s: a single-order space with the transforms and
// possibility transforms on it.
class CulturalStructure {
 public:
  CulturalStructure(SpacePtr space, std::vector<Transform> transforms,
                    std::vector<PossibilityTransform> possibilities);

  const SpacePtr& space() const noexcept { return space_; }
  std::int64_t order() const { return space_->mu(0); }
  const std::vector<Transform>& transforms() const noexcept { return transforms_; }
  const std::vector<PossibilityTransform>& possibilities() const noexcept { return possibilities_; }
  // A pure system has exactly one rule, and it fixes exactly one configuration.
  bool pure() const;

 private:
  SpacePtr space_;
  std::vector<Transform> transforms_;
  std::vector<PossibilityTransform> possibilities_;
};

CulturalStructure as_cultural_structure(const PureSystem& pure);

struct ConvexTerm {
  double weight = 0.0;
  PossibilityTransform transform;
};

struct ConvexCombination {
  std::vector<ConvexTerm> terms;
  PossibilityTransform mixture;  // Psi, support = positive cells

  double trace() const { return mixture.entries().trace(); }
};

// Throws Errc::invalid_weights on an empty list, a weight outside [0, 1] or
// weights not summing to 1 within 1e-9; Errc::dimension_mismatch on
// differing spaces.
ConvexCombination convex_combine(std::vector<ConvexTerm> terms);

struct EthnographerReport {
  double trace = 0.0;
  // sum v_a s_a; absent if any term has no structural number.
  std::optional<double> mean_structural_number;
  bool hypothesis_met = false;
};

// Re-index every term onto the canonical union of the terms' spaces.
std::vector<ConvexTerm> embed_terms(const std::vector<ConvexTerm>& terms);

// Terms may live on different spaces; they are embedded into the union of
// their spaces before mixing.
EthnographerReport ethnographer_report(const std::vector<ConvexTerm>& theta);
EthnographerReport ethnographer_report(const std::vector<std::pair<double, PureSystem>>& theta);

}  // namespace cultrule
