#include "cultrule/transform.hpp"

#include <algorithm>
#include <limits>

#include "cultrule/error.hpp"

namespace cultrule {

Transform::Transform(SpacePtr space, BoolMatrix entries, std::string label)
    : space_(std::move(space)), entries_(std::move(entries)), label_(std::move(label)) {
  if (!space_) throw Error(Errc::malformed_input, "transform requires a configuration space");
  if (entries_.size() != space_->size()) {
    throw Error(Errc::dimension_mismatch, "transform is " + std::to_string(entries_.size()) + "x" +
                                              std::to_string(entries_.size()) + " but the space has " +
                                              std::to_string(space_->size()) + " configurations");
  }
}

Transform Transform::identity(SpacePtr space, std::string label) {
  const auto n = space ? space->size() : 0;
  return Transform(std::move(space), BoolMatrix::identity(n), std::move(label));
}

Transform Transform::zeros(SpacePtr space, std::string label) {
  const auto n = space ? space->size() : 0;
  return Transform(std::move(space), BoolMatrix(n), std::move(label));
}

Transform Transform::transposed() const { return Transform(space_, entries_.transposed(), label_); }

bool Transform::operator==(const Transform& other) const {
  return entries_ == other.entries_ && same_space(space_, other.space_);
}

bool same_space(const SpacePtr& a, const SpacePtr& b) { return a == b || (a && b && *a == *b); }

namespace {

void require_same_space(const Transform& a, const Transform& b) {
  if (!same_space(a.space_ptr(), b.space_ptr())) {
    throw Error(Errc::dimension_mismatch, "transforms are defined on different configuration spaces");
  }
}

}  // namespace

ValidationReport validate_transform(const Transform& t) {
  ValidationReport report;
  const auto& space = t.space();
  for (std::size_t i = 0; i < t.size(); ++i) {
    for (std::size_t j = 0; j < t.size(); ++j) {
      if (t(i, j) && space.mu(i) > space.mu(j)) {
        report.violations.push_back({i, j, space.mu(i), space.mu(j)});
      }
    }
  }
  report.valid = report.violations.empty();
  return report;
}

Transform compose(const Transform& first, const Transform& second) {
  require_same_space(first, second);
  const std::size_t n = first.size();
  BoolMatrix out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      bool any = false;
      for (std::size_t k = 0; k < n && !any; ++k) any = second(i, k) && first(k, j);
      out.set(i, j, any);
    }
  }
  std::string label;
  if (!first.label().empty() || !second.label().empty()) label = first.label() + ";" + second.label();
  return Transform(first.space_ptr(), std::move(out), std::move(label));
}

ContentList apply(const Transform& t, const ContentList& xi) {
  if (xi.size() != t.size()) {
    throw Error(Errc::dimension_mismatch, "content list length " + std::to_string(xi.size()) +
                                              " does not match transform dimension " +
                                              std::to_string(t.size()));
  }
  ContentList phi(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    bool any = false;
    for (std::size_t j = 0; j < t.size() && !any; ++j) any = t(i, j) && xi[j];
    phi.set(i, any);
  }
  return phi;
}

namespace {

Transform fold(const std::vector<Transform>& sequence) {
  if (sequence.empty()) throw Error(Errc::empty_history, "a history must contain at least one transform");
  Transform acc = sequence.front();
  for (std::size_t k = 1; k < sequence.size(); ++k) acc = compose(acc, sequence[k]);
  return acc;
}

}  // namespace

History::History(std::vector<Transform> sequence) : sequence_(std::move(sequence)), composite_(fold(sequence_)) {}

ViabilityReport viability(const Transform& t) {
  const std::size_t n = t.size();
  ViabilityReport report;
  report.maximal_witness = ContentList(n);
  for (std::size_t i = 0; i < n; ++i) {
    bool basis = true;
    for (std::size_t k = 0; k < n && basis; ++k) basis = t(k, i) == (k == i);
    report.maximal_witness.set(i, basis);
  }
  report.viable = !report.maximal_witness.zero();
  if (!report.viable) return report;

  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  for (std::size_t i = 0; i < n; ++i)
    if (report.maximal_witness[i]) best = std::min(best, t.space().mu(i));
  for (std::size_t i = 0; i < n; ++i)
    if (report.maximal_witness[i] && t.space().mu(i) == best) report.minimal_structures.push_back(i);
  report.structural_number = best;
  return report;
}

MinimalStructures minimal_structures(const Transform& t) {
  auto report = viability(t);
  if (!report.viable) {
    throw Error(Errc::not_viable, "transform" + (t.label().empty() ? "" : " '" + t.label() + "'") +
                                      " is not viable: no configuration is a fixed point");
  }
  return {std::move(report.minimal_structures), *report.structural_number};
}

TransposeReport transpose_admissible(const Transform& t) {
  TransposeReport report;
  report.transpose_validation = validate_transform(t.transposed());
  report.admissible = report.transpose_validation.valid;
  return report;
}

Transform embed(const Transform& t, const SpacePtr& target) {
  if (!target) throw Error(Errc::malformed_input, "embedding target space is null");
  std::vector<std::size_t> where(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) where[i] = target->require_index(t.space()[i]);
  BoolMatrix out(target->size());
  for (std::size_t i = 0; i < t.size(); ++i)
    for (std::size_t j = 0; j < t.size(); ++j) out.set(where[i], where[j], t(i, j));
  return Transform(target, std::move(out), t.label());
}

FullSet::FullSet(SpacePtr space) : space_(std::move(space)) {
  if (!space_) throw Error(Errc::malformed_input, "full set requires a configuration space");
  for (std::size_t i = 0; i < space_->size(); ++i)
    for (std::size_t j = 0; j < space_->size(); ++j)
      if (space_->mu(i) <= space_->mu(j)) cells_.push_back({i, j});
}

boost::multiprecision::cpp_int FullSet::count() const {
  boost::multiprecision::cpp_int one = 1;
  return one << cells_.size();
}

FullSet::Range FullSet::members(std::uint64_t cap) const {
  if (cells_.size() >= 63 || (std::uint64_t{1} << cells_.size()) > cap) {
    throw Error(Errc::census_cap_exceeded, "full set has 2^" + std::to_string(cells_.size()) +
                                               " members, above the iteration cap of " + std::to_string(cap));
  }
  return Range(this, std::uint64_t{1} << cells_.size());
}

Transform FullSet::member(std::uint64_t mask) const {
  BoolMatrix m(space_->size());
  for (std::size_t b = 0; b < cells_.size(); ++b)
    if ((mask >> b) & 1U) m.set(cells_[b].to, cells_[b].from, true);
  return Transform(space_, std::move(m));
}

Transform FullSet::iterator::operator*() const { return set_->member(mask_); }

}  // namespace cultrule
