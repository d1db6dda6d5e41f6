#include "cultrule/birkhoff.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cultrule/error.hpp"
#include "cultrule/possibility.hpp"

namespace cultrule {

Permutation::Permutation(std::vector<std::size_t> perm) : perm_(std::move(perm)) {
  std::vector<bool> seen(perm_.size(), false);
  for (std::size_t p : perm_) {
    if (p >= perm_.size() || seen[p]) throw Error(Errc::malformed_input, "not a permutation");
    seen[p] = true;
  }
}

Permutation Permutation::identity(std::size_t n) {
  std::vector<std::size_t> p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = i;
  return Permutation(std::move(p));
}

Matrix Permutation::to_matrix() const {
  Matrix m(size(), size());
  for (std::size_t i = 0; i < size(); ++i) m(i, perm_[i]) = 1.0;
  return m;
}

namespace {

struct Kuhn {
  const Matrix& m;
  double threshold;
  std::vector<std::size_t> col_owner;  // row matched to each column, or npos
  std::vector<char> visited;

  static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

  bool augment(std::size_t row) {
    for (std::size_t col = 0; col < m.cols(); ++col) {
      if (m(row, col) <= threshold || visited[col]) continue;
      visited[col] = 1;
      if (col_owner[col] == npos || augment(col_owner[col])) {
        col_owner[col] = row;
        return true;
      }
    }
    return false;
  }
};

}  // namespace

std::optional<Permutation> perfect_matching(const Matrix& m, double threshold) {
  if (!m.square()) throw Error(Errc::dimension_mismatch, "matching needs a square matrix");
  const std::size_t n = m.rows();
  Kuhn k{m, threshold, std::vector<std::size_t>(n, Kuhn::npos), std::vector<char>(n, 0)};
  for (std::size_t row = 0; row < n; ++row) {
    std::fill(k.visited.begin(), k.visited.end(), 0);
    if (!k.augment(row)) return std::nullopt;
  }
  std::vector<std::size_t> perm(n);
  for (std::size_t col = 0; col < n; ++col) perm[k.col_owner[col]] = col;
  return Permutation(std::move(perm));
}

BvnDecomposition bvn_decompose(const Matrix& d, double tol) {
  const auto check = doubly_stochastic_check(d, tol);
  if (!check.doubly_stochastic) {
    const std::size_t n = d.rows();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (d(i, j) < -tol) {
          throw Error(Errc::not_doubly_stochastic, "entry (" + std::to_string(i + 1) + "," +
                                                       std::to_string(j + 1) + ") is negative");
        }
    for (std::size_t i = 0; i < n; ++i) {
      if (std::abs(check.row_sums[i] - 1.0) > tol) {
        throw Error(Errc::not_doubly_stochastic,
                    "row " + std::to_string(i + 1) + " sums to " + std::to_string(check.row_sums[i]));
      }
      if (std::abs(check.col_sums[i] - 1.0) > tol) {
        throw Error(Errc::not_doubly_stochastic,
                    "column " + std::to_string(i + 1) + " sums to " + std::to_string(check.col_sums[i]));
      }
    }
  }

  const std::size_t n = d.rows();
  const std::size_t max_terms = n == 0 ? 0 : (n - 1) * (n - 1) + 1;
  Matrix work = d;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (work(i, j) <= tol) work(i, j) = 0.0;

  BvnDecomposition out;
  double remaining = 1.0;
  auto exhausted = [&] {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (work(i, j) > 0.0) return false;
    return true;
  };
  while (n > 0 && remaining > tol && !exhausted()) {
    auto matching = perfect_matching(work, tol);
    if (!matching) {
      throw Error(Errc::matching_failure, "support lost its perfect matching with mass " +
                                              std::to_string(remaining) + " remaining");
    }
    std::size_t argmin = 0;
    double theta = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
      const double v = work(i, (*matching)[i]);
      if (v < theta) {
        theta = v;
        argmin = i;
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      double& cell = work(i, (*matching)[i]);
      cell = i == argmin ? 0.0 : cell - theta;
      if (cell <= tol) cell = 0.0;
    }
    remaining -= theta;
    out.terms.push_back({theta, std::move(*matching)});
    if (out.terms.size() > max_terms) {
      throw Error(Errc::matching_failure, "decomposition exceeded (n-1)^2+1 terms");
    }
  }

  out.residual = max_abs_diff(d, n == 0 ? Matrix() : recompose(out.terms, false));
  return out;
}

Matrix recompose(std::span<const BvnTerm> terms, bool convex) {
  if (terms.empty()) throw Error(Errc::invalid_weights, "nothing to recompose");
  const std::size_t n = terms.front().perm.size();
  Matrix out(n, n);
  double total = 0.0;
  for (const auto& t : terms) {
    if (t.perm.size() != n) throw Error(Errc::dimension_mismatch, "permutations of different sizes");
    if (!(t.weight >= 0.0)) throw Error(Errc::invalid_weights, "negative permutation weight");
    for (std::size_t i = 0; i < n; ++i) out(i, t.perm[i]) += t.weight;
    total += t.weight;
  }
  if (convex && std::abs(total - 1.0) > kStochasticTol) {
    throw Error(Errc::invalid_weights, "weights sum to " + std::to_string(total) + ", not 1");
  }
  return out;
}

const char* to_string(VertexClass c) noexcept {
  switch (c) {
    case VertexClass::vertex: return "vertex";
    case VertexClass::interior_point: return "interior-point";
    case VertexClass::not_doubly_stochastic: return "not-doubly-stochastic";
  }
  return "unknown";
}

VertexClass classify_vertex(const Matrix& m, double tol) {
  if (!doubly_stochastic_check(m, tol).doubly_stochastic) return VertexClass::not_doubly_stochastic;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (std::abs(m(i, j)) > tol && std::abs(m(i, j) - 1.0) > tol) return VertexClass::interior_point;
  // 0/1 entries with unit row and column sums form a permutation matrix.
  return VertexClass::vertex;
}

}  // namespace cultrule
