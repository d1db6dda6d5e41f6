#pragma once

// Regular structures, configurations and configuration spaces.
//
// A configuration is the census of regular structures M_n present on one
// generation, stored sparsely as cycle size -> number of M_n cycles. A
// configuration space is a finite ordered set of distinct non-empty
// configurations; its order fixes the row/column order of every transform
// defined on it.

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace cultrule {

inline constexpr int kDefaultMinCycle = 2;

struct MarriageStats {
  std::int64_t mu = 0;     // reproducing marriages, sum of size * count
  std::int64_t beta = 0;   // sibship cells closed inside the cycles
  std::int64_t gamma = 0;  // population, 2 * mu

  bool operator==(const MarriageStats&) const = default;
};

class Configuration {
 public:
  using Counts = std::map<int, std::int64_t>;

  Configuration() = default;
  // Zero counts are dropped. Throws Errc::invalid_configuration on a size
  // below min_cycle, a negative count, or min_cycle < 1.
  explicit Configuration(Counts counts, int min_cycle = kDefaultMinCycle);

  const Counts& counts() const noexcept { return counts_; }
  std::int64_t count(int cycle_size) const;
  int min_cycle() const noexcept { return min_cycle_; }
  bool empty() const noexcept { return counts_.empty(); }
  std::int64_t marriage_number() const noexcept;

  bool operator==(const Configuration&) const = default;

 private:
  Counts counts_;
  int min_cycle_ = kDefaultMinCycle;
};

MarriageStats marriage_stats(const Configuration& config);

// Componentwise sum. Throws Errc::invalid_configuration on differing min_cycle.
Configuration operator+(const Configuration& a, const Configuration& b);

// Ascending marriage number, then lexicographic on the (size, count) list.
struct CanonicalLess {
  bool operator()(const Configuration& a, const Configuration& b) const;
};

// Compact text form, e.g. "{2:1,4:1}".
std::string to_string(const Configuration& config);

class ConfigurationSpace {
 public:
  // Sorts into canonical order. Throws Errc::empty_space when `configs` is
  // empty, Errc::invalid_configuration on an empty member, a duplicate, or a
  // member whose min_cycle differs from the space's.
  explicit ConfigurationSpace(std::vector<Configuration> configs, int min_cycle = kDefaultMinCycle);

  std::size_t size() const noexcept { return configs_.size(); }
  int min_cycle() const noexcept { return min_cycle_; }
  const Configuration& operator[](std::size_t i) const { return configs_.at(i); }
  std::span<const Configuration> configs() const noexcept { return configs_; }
  std::int64_t mu(std::size_t i) const { return configs_.at(i).marriage_number(); }

  std::optional<std::size_t> index_of(const Configuration& config) const;
  // Throws Errc::membership when `config` is not in the space.
  std::size_t require_index(const Configuration& config) const;

  // Every member has the same marriage number.
  bool single_order() const;

  bool operator==(const ConfigurationSpace& other) const { return configs_ == other.configs_ && min_cycle_ == other.min_cycle_; }

 private:
  std::vector<Configuration> configs_;
  std::map<Configuration, std::size_t, CanonicalLess> index_;
  int min_cycle_;
};

using SpacePtr = std::shared_ptr<const ConfigurationSpace>;

// All configurations of marriage number `order` (integer partitions of
// `order` into parts >= min_cycle) in canonical order.
// Throws Errc::empty_space when order < min_cycle.
ConfigurationSpace enumerate_configurations(int order, int min_cycle = kDefaultMinCycle);

// Canonical union of two spaces with the same min_cycle.
ConfigurationSpace merge_spaces(const ConfigurationSpace& a, const ConfigurationSpace& b);

// Indicator vector of a subset of a configuration space.
class ContentList {
 public:
  ContentList() = default;
  explicit ContentList(std::size_t n) : bits_(n, 0) {}
  // Throws Errc::malformed_input on an entry other than 0 or 1.
  explicit ContentList(std::vector<int> bits);

  static ContentList singleton(std::size_t n, std::size_t i);
  static ContentList full(std::size_t n);
  // Bit i of `mask` becomes entry i.
  static ContentList from_mask(std::size_t n, std::uint64_t mask);

  std::size_t size() const noexcept { return bits_.size(); }
  bool operator[](std::size_t i) const { return bits_.at(i) != 0; }
  void set(std::size_t i, bool value) { bits_.at(i) = value ? 1 : 0; }

  // Number of ones (w).
  std::size_t weight() const noexcept;
  bool zero() const noexcept { return weight() == 0; }
  // Componentwise <=.
  bool subset_of(const ContentList& other) const;
  std::vector<int> bits() const;

  bool operator==(const ContentList&) const = default;

 private:
  std::vector<std::uint8_t> bits_;
};

// Throws Errc::membership when a member of `subset` is not in `space`.
ContentList content_list(std::span<const Configuration> subset, const ConfigurationSpace& space);
// Inverse of content_list, in space order. Throws Errc::dimension_mismatch.
std::vector<Configuration> configurations_of(const ContentList& xi, const ConfigurationSpace& space);

}  // namespace cultrule
