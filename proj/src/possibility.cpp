#include "cultrule/possibility.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cultrule/error.hpp"

namespace cultrule {

namespace {

std::string cell_name(std::size_t i, std::size_t j) {
  return "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
}

BoolMatrix positive_cells(const Matrix& m) {
  BoolMatrix support(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) support.set(i, j, m(i, j) > 0.0);
  return support;
}

}  // namespace

PossibilityTransform::PossibilityTransform(Transform support, Matrix entries)
    : support_(std::move(support)), entries_(std::move(entries)) {
  const std::size_t n = support_.size();
  if (entries_.rows() != n || entries_.cols() != n) {
    throw Error(Errc::dimension_mismatch, "possibility entries must be " + std::to_string(n) + "x" +
                                              std::to_string(n));
  }
  std::vector<std::string> mismatched;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double p = entries_(i, j);
      if (!(p >= 0.0 && p <= 1.0)) {
        throw Error(Errc::invalid_weights, "entry " + cell_name(i, j) + " is outside [0, 1]");
      }
      if ((p > 0.0) != support_(i, j)) mismatched.push_back(cell_name(i, j));
    }
    if (entries_.row_sum(i) > 1.0 + kStochasticTol) {
      throw Error(Errc::invalid_weights, "row " + std::to_string(i + 1) + " sums to more than 1");
    }
  }
  if (!mismatched.empty()) {
    std::ostringstream os;
    os << "possibility entries disagree with the support at";
    for (const auto& c : mismatched) os << ' ' << c;
    throw Error(Errc::support_mismatch, os.str());
  }
}

PossibilityTransform PossibilityTransform::from_matrix(SpacePtr space, Matrix entries) {
  if (entries.rows() != entries.cols()) throw Error(Errc::dimension_mismatch, "possibility entries must be square");
  Transform support(std::move(space), positive_cells(entries));
  return PossibilityTransform(std::move(support), std::move(entries));
}

PossibilityTransform build_possibility(const Transform& support, Weighting strategy) {
  const std::size_t n = support.size();
  Matrix p(n, n);
  switch (strategy) {
    case Weighting::uniform_rows:
      for (std::size_t i = 0; i < n; ++i) {
        std::size_t allowed = 0;
        for (std::size_t j = 0; j < n; ++j) allowed += support(i, j) ? 1 : 0;
        if (allowed == 0) continue;
        for (std::size_t j = 0; j < n; ++j)
          if (support(i, j)) p(i, j) = 1.0 / static_cast<double>(allowed);
      }
      break;
  }
  return PossibilityTransform(support, std::move(p));
}

double PossibilityDensity::sum() const {
  double s = 0.0;
  for (double v : values) s += v;
  return s;
}

PossibilityDensity density(const PossibilityTransform& pi, const ContentList& xi, DensitySide side) {
  const std::size_t n = pi.size();
  if (xi.size() != n) {
    throw Error(Errc::dimension_mismatch, "content list length " + std::to_string(xi.size()) +
                                              " does not match dimension " + std::to_string(n));
  }
  const std::size_t w = xi.weight();
  if (w == 0) throw Error(Errc::zero_source, "possibility density of an empty content list");

  PossibilityDensity d;
  d.side = side;
  d.w = w;
  d.values.assign(n, 0.0);
  const auto& p = pi.entries();
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (!xi[j]) continue;
      acc += (side == DensitySide::left ? p(i, j) : p(j, i)) / static_cast<double>(w);
    }
    d.values[i] = acc;
  }
  d.axiom1 = d.sum() <= 1.0 + kExactTol;
  return d;
}

double inner_product(const PossibilityDensity& a, const PossibilityDensity& b) {
  if (a.values.size() != b.values.size()) throw Error(Errc::dimension_mismatch, "density length mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i) s += a.values[i] * b.values[i];
  return s;
}

bool Theorem1Report::inner_is_one(double tol) const { return std::abs(inner - 1.0) <= tol; }

Theorem1Report theorem1_report(const PossibilityTransform& pi, const PossibilityTransform& theta,
                               const ContentList& xi, const ContentList& phi) {
  const std::size_t n = pi.size();
  if (theta.size() != n || xi.size() != n || phi.size() != n) {
    throw Error(Errc::dimension_mismatch, "theorem check needs matrices and lists of one dimension");
  }
  Theorem1Report r;
  r.phi_nonzero = !phi.zero();
  r.xi_nonzero = !xi.zero();
  r.phi_equals_xi = phi == xi;
  r.w = xi.weight();
  r.weights_equal = xi.weight() == phi.weight();

  r.rows_stochastic = true;
  for (std::size_t i = 0; i < n; ++i) {
    if (!xi[i]) continue;
    if (std::abs(pi.entries().row_sum(i) - 1.0) > kStochasticTol ||
        std::abs(theta.entries().row_sum(i) - 1.0) > kStochasticTol) {
      r.rows_stochastic = false;
    }
  }

  r.pi = r.xi_nonzero ? density(pi, xi, DensitySide::left).values : std::vector<double>(n, 0.0);
  r.omega = r.phi_nonzero ? density(theta, phi, DensitySide::right).values : std::vector<double>(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) r.inner += r.pi[i] * r.omega[i];
  return r;
}

ReducedForm reduce_form(const Matrix& m, const ContentList& xi) {
  if (!m.square() || xi.size() != m.rows()) {
    throw Error(Errc::dimension_mismatch, "reduction needs a square matrix matching the content list");
  }
  ReducedForm out;
  for (std::size_t i = 0; i < xi.size(); ++i)
    if (xi[i]) out.index_map.push_back(i);
  if (out.index_map.empty()) throw Error(Errc::zero_source, "reduction by an empty content list");
  const std::size_t w = out.index_map.size();
  out.matrix = Matrix(w, w);
  for (std::size_t a = 0; a < w; ++a)
    for (std::size_t b = 0; b < w; ++b) out.matrix(a, b) = m(out.index_map[a], out.index_map[b]);
  return out;
}

StochasticReport doubly_stochastic_check(const Matrix& m, double tol) {
  if (!m.square()) {
    throw Error(Errc::dimension_mismatch, "doubly stochastic check needs a square matrix, got " +
                                              std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
  StochasticReport r;
  r.nonnegative = true;
  bool sums_ok = true;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m(i, j) < -tol) r.nonnegative = false;
    r.row_sums.push_back(m.row_sum(i));
    r.col_sums.push_back(m.col_sum(i));
    sums_ok = sums_ok && std::abs(r.row_sums.back() - 1.0) <= tol && std::abs(r.col_sums.back() - 1.0) <= tol;
  }
  r.doubly_stochastic = r.nonnegative && sums_ok;
  return r;
}

PureSystem build_pure_system(SpacePtr space, std::size_t m) {
  if (!space) throw Error(Errc::malformed_input, "pure system requires a configuration space");
  if (m >= space->size()) {
    throw Error(Errc::index_out_of_range, "minimal structure index " + std::to_string(m + 1) +
                                              " outside 1.." + std::to_string(space->size()));
  }
  if (!space->single_order()) {
    throw Error(Errc::invalid_configuration, "a pure system needs a space of a single order");
  }
  BoolMatrix unit(space->size());
  unit.set(m, m, true);
  Transform rule(space, std::move(unit), "pure:" + to_string((*space)[m]));
  Matrix p(space->size(), space->size());
  p(m, m) = 1.0;
  PossibilityTransform possibility(rule, std::move(p));
  const auto s = space->mu(m);
  return PureSystem{std::move(space), m, std::move(rule), std::move(possibility), s};
}

CulturalStructure::CulturalStructure(SpacePtr space, std::vector<Transform> transforms,
                                     std::vector<PossibilityTransform> possibilities)
    : space_(std::move(space)), transforms_(std::move(transforms)), possibilities_(std::move(possibilities)) {
  if (!space_) throw Error(Errc::malformed_input, "cultural structure requires a configuration space");
  if (!space_->single_order()) {
    throw Error(Errc::invalid_configuration, "a cultural structure needs a space of a single order");
  }
  for (const auto& t : transforms_)
    if (!same_space(t.space_ptr(), space_)) throw Error(Errc::dimension_mismatch, "transform on a foreign space");
  for (const auto& p : possibilities_)
    if (!same_space(p.space_ptr(), space_)) {
      throw Error(Errc::dimension_mismatch, "possibility transform on a foreign space");
    }
}

bool CulturalStructure::pure() const {
  if (transforms_.size() != 1) return false;
  const auto& t = transforms_.front();
  const auto report = viability(t);
  return report.viable && report.maximal_witness.weight() == 1 && t.entries().count() == 1;
}

CulturalStructure as_cultural_structure(const PureSystem& pure) {
  return CulturalStructure(pure.space, {pure.rule}, {pure.possibility});
}

ConvexCombination convex_combine(std::vector<ConvexTerm> terms) {
  if (terms.empty()) throw Error(Errc::invalid_weights, "a convex combination needs at least one term");
  double total = 0.0;
  for (const auto& t : terms) {
    if (!(t.weight >= 0.0 && t.weight <= 1.0)) {
      throw Error(Errc::invalid_weights, "convex weight " + std::to_string(t.weight) + " outside [0, 1]");
    }
    if (!same_space(t.transform.space_ptr(), terms.front().transform.space_ptr())) {
      throw Error(Errc::dimension_mismatch, "convex combination terms live on different spaces");
    }
    total += t.weight;
  }
  if (std::abs(total - 1.0) > kStochasticTol) {
    throw Error(Errc::invalid_weights, "convex weights sum to " + std::to_string(total) + ", not 1");
  }
  const std::size_t n = terms.front().transform.size();
  Matrix psi(n, n);
  for (const auto& t : terms) psi = psi + t.weight * t.transform.entries();
  // Weights summing to 1 + O(eps) can push a unit cell just past 1.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) psi(i, j) = std::min(psi(i, j), 1.0);
  auto mixture = PossibilityTransform::from_matrix(terms.front().transform.space_ptr(), std::move(psi));
  return ConvexCombination{std::move(terms), std::move(mixture)};
}

std::vector<ConvexTerm> embed_terms(const std::vector<ConvexTerm>& terms) {
  if (terms.empty()) return {};
  auto space = terms.front().transform.space_ptr();
  for (const auto& t : terms)
    if (!same_space(t.transform.space_ptr(), space)) {
      space = std::make_shared<const ConfigurationSpace>(merge_spaces(*space, *t.transform.space_ptr()));
    }

  std::vector<ConvexTerm> out;
  out.reserve(terms.size());
  for (const auto& t : terms) {
    if (same_space(t.transform.space_ptr(), space)) {
      out.push_back(t);
      continue;
    }
    const auto& from_space = t.transform.support().space();
    std::vector<std::size_t> where(from_space.size());
    for (std::size_t i = 0; i < where.size(); ++i) where[i] = space->require_index(from_space[i]);
    Matrix entries(space->size(), space->size());
    for (std::size_t i = 0; i < where.size(); ++i)
      for (std::size_t j = 0; j < where.size(); ++j) entries(where[i], where[j]) = t.transform(i, j);
    out.push_back({t.weight, PossibilityTransform(embed(t.transform.support(), space), std::move(entries))});
  }
  return out;
}

EthnographerReport ethnographer_report(const std::vector<ConvexTerm>& theta) {
  double mean = 0.0;
  bool all_structural = true;
  for (const auto& t : theta) {
    const auto report = viability(t.transform.support());
    if (report.structural_number) {
      mean += t.weight * static_cast<double>(*report.structural_number);
    } else {
      all_structural = false;
    }
  }

  const auto combination = convex_combine(embed_terms(theta));
  EthnographerReport out;
  out.trace = combination.trace();
  if (all_structural) out.mean_structural_number = mean;
  out.hypothesis_met = std::abs(out.trace - 1.0) <= kStochasticTol;
  return out;
}

EthnographerReport ethnographer_report(const std::vector<std::pair<double, PureSystem>>& theta) {
  std::vector<ConvexTerm> terms;
  terms.reserve(theta.size());
  for (const auto& [weight, pure] : theta) terms.push_back({weight, pure.possibility});
  return ethnographer_report(terms);
}

}  // namespace cultrule
