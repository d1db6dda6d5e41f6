#pragma once

// Birkhoff-von Neumann decomposition of doubly stochastic matrices into
// convex combinations of permutation matrices.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "cultrule/matrix.hpp"

namespace cultrule {

// Row i has its single one in column perm[i]. Indices are 0-based here;
// JSON uses 1-based arrays.
class Permutation {
 public:
  // Throws Errc::malformed_input unless `perm` is a bijection on 0..n-1.
  explicit Permutation(std::vector<std::size_t> perm);

  static Permutation identity(std::size_t n);

  std::size_t size() const noexcept { return perm_.size(); }
  std::size_t operator[](std::size_t row) const { return perm_.at(row); }
  const std::vector<std::size_t>& indices() const noexcept { return perm_; }
  Matrix to_matrix() const;

  bool operator==(const Permutation&) const = default;

 private:
  std::vector<std::size_t> perm_;
};

struct BvnTerm {
  double weight = 0.0;
  Permutation perm;
};

struct BvnDecomposition {
  std::vector<BvnTerm> terms;
  double residual = 0.0;  // max-abs mass left undecomposed
};

// Perfect matching of rows to columns over cells strictly above `threshold`
// (Kuhn's augmenting paths, rows in order, columns tried lowest index first).
std::optional<Permutation> perfect_matching(const Matrix& m, double threshold);

// Greedy decomposition: repeatedly match the support, peel off the smallest
// matched entry. At most (n-1)^2 + 1 terms.
// Throws Errc::not_doubly_stochastic naming the first offending row/column,
// and Errc::matching_failure if the support ever loses its perfect matching.
BvnDecomposition bvn_decompose(const Matrix& d, double tol = 1e-9);

// sum_k weight_k P_k. Throws Errc::invalid_weights on a negative weight, on
// weights not summing to 1 within 1e-9 when `convex`, or on an empty list;
// Errc::dimension_mismatch on permutations of different sizes.
Matrix recompose(std::span<const BvnTerm> terms, bool convex = true);

enum class VertexClass { vertex, interior_point, not_doubly_stochastic };

const char* to_string(VertexClass c) noexcept;

// Throws Errc::dimension_mismatch on a non-square matrix.
VertexClass classify_vertex(const Matrix& m, double tol = 1e-9);

}  // namespace cultrule
