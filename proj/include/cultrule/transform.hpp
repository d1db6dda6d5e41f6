#pragma once

// Boolean transforms over a configuration space and their histories.
//
// Entry (i, j) = 1 allows a transition from C_j to C_i. Transforms compose
// under the max/min logical product; a history is a non-empty sequence of
// transforms applied first-element-first.

#include <boost/multiprecision/cpp_int.hpp>
#include <cstddef>
#include <cstdint>
#include <iterator>
#include <optional>
#include <string>
#include <vector>

#include "cultrule/configuration.hpp"
#include "cultrule/matrix.hpp"

namespace cultrule {

class Transform {
 public:
  // Throws Errc::dimension_mismatch unless entries.size() == space->size().
  Transform(SpacePtr space, BoolMatrix entries, std::string label = {});

  static Transform identity(SpacePtr space, std::string label = {});
  static Transform zeros(SpacePtr space, std::string label = {});

  const ConfigurationSpace& space() const noexcept { return *space_; }
  const SpacePtr& space_ptr() const noexcept { return space_; }
  const BoolMatrix& entries() const noexcept { return entries_; }
  const std::string& label() const noexcept { return label_; }
  std::size_t size() const noexcept { return entries_.size(); }
  bool operator()(std::size_t to, std::size_t from) const { return entries_(to, from); }

  Transform transposed() const;

  // Equal entries over equal spaces; labels are ignored.
  bool operator==(const Transform& other) const;

 private:
  SpacePtr space_;
  BoolMatrix entries_;
  std::string label_;
};

bool same_space(const SpacePtr& a, const SpacePtr& b);

struct FeasibilityViolation {
  std::size_t to = 0;
  std::size_t from = 0;
  std::int64_t mu_to = 0;
  std::int64_t mu_from = 0;
};

struct ValidationReport {
  bool valid = true;
  std::vector<FeasibilityViolation> violations;
};

// A transition may never raise the marriage number: entry (i, j) = 1
// requires mu(C_i) <= mu(C_j).
ValidationReport validate_transform(const Transform& t);

// Apply `first`, then `second`: result(i, j) = max_k min(second(i, k), first(k, j)).
// Throws Errc::dimension_mismatch on differing spaces.
Transform compose(const Transform& first, const Transform& second);

// phi_i = max_j min(t(i, j), xi_j).
ContentList apply(const Transform& t, const ContentList& xi);

class History {
 public:
  // Throws Errc::empty_history on an empty sequence and
  // Errc::dimension_mismatch when the transforms do not share a space.
  explicit History(std::vector<Transform> sequence);

  const std::vector<Transform>& sequence() const noexcept { return sequence_; }
  const Transform& composite() const noexcept { return composite_; }

 private:
  std::vector<Transform> sequence_;
  Transform composite_;
};

inline const Transform& history_composite(const History& h) { return h.composite(); }

struct ViabilityReport {
  bool viable = false;
  // Union of every fixed configuration; the largest content list the
  // transform is viable on.
  ContentList maximal_witness;
  std::vector<std::size_t> minimal_structures;
  std::optional<std::int64_t> structural_number;
};

// A singleton {C_i} is a witness iff column i of t is the basis vector e_i,
// and a content list is a witness iff all of its members are.
ViabilityReport viability(const Transform& t);

struct MinimalStructures {
  std::vector<std::size_t> indices;
  std::int64_t structural_number = 0;
};

// Throws Errc::not_viable when t fixes no configuration.
MinimalStructures minimal_structures(const Transform& t);

struct TransposeReport {
  bool admissible = false;
  ValidationReport transpose_validation;
};

TransposeReport transpose_admissible(const Transform& t);

// Re-index t onto a larger space that contains every configuration of t's
// space; rows and columns outside the original space are zero.
Transform embed(const Transform& t, const SpacePtr& target);

// The full set of transforms on a space: every 0/1 matrix whose ones lie on
// feasible cells (mu(C_i) <= mu(C_j)), including the all-zeros matrix.
class FullSet {
 public:
  struct Cell {
    std::size_t to;
    std::size_t from;
  };

  explicit FullSet(SpacePtr space);

  const std::vector<Cell>& feasible_cells() const noexcept { return cells_; }
  boost::multiprecision::cpp_int count() const;

  class iterator {
   public:
    using iterator_category = std::input_iterator_tag;
    using value_type = Transform;
    using difference_type = std::ptrdiff_t;
    using pointer = void;
    using reference = Transform;

    iterator() = default;
    iterator(const FullSet* set, std::uint64_t mask) : set_(set), mask_(mask) {}
    Transform operator*() const;
    iterator& operator++() {
      ++mask_;
      return *this;
    }
    iterator operator++(int) {
      iterator before = *this;
      ++mask_;
      return before;
    }
    bool operator==(const iterator& other) const { return mask_ == other.mask_; }

   private:
    const FullSet* set_ = nullptr;
    std::uint64_t mask_ = 0;
  };

  class Range {
   public:
    Range(const FullSet* set, std::uint64_t end) : set_(set), end_(end) {}
    iterator begin() const { return {set_, 0}; }
    iterator end() const { return {set_, end_}; }
    std::uint64_t size() const noexcept { return end_; }

   private:
    const FullSet* set_;
    std::uint64_t end_;
  };

  // Each member exactly once. Throws Errc::census_cap_exceeded when the
  // census is larger than `cap`.
  Range members(std::uint64_t cap = std::uint64_t{1} << 20) const;

  Transform member(std::uint64_t mask) const;

 private:
  SpacePtr space_;
  std::vector<Cell> cells_;
};

inline boost::multiprecision::cpp_int full_set_census(SpacePtr space) {
  return FullSet(std::move(space)).count();
}

}  // namespace cultrule
