#include "cultrule/configuration.hpp"

#include <algorithm>
#include <sstream>

#include "cultrule/error.hpp"

namespace cultrule {

Configuration::Configuration(Counts counts, int min_cycle) : min_cycle_(min_cycle) {
  if (min_cycle < 1) throw Error(Errc::invalid_configuration, "min_cycle must be >= 1");
  for (const auto& [size, count] : counts) {
    if (count < 0) {
      throw Error(Errc::invalid_configuration,
                  "negative count for M_" + std::to_string(size));
    }
    if (count == 0) continue;
    if (size < min_cycle) {
      throw Error(Errc::invalid_configuration,
                  "cycle size " + std::to_string(size) + " below min_cycle " + std::to_string(min_cycle));
    }
    counts_.emplace(size, count);
  }
}

std::int64_t Configuration::count(int cycle_size) const {
  auto it = counts_.find(cycle_size);
  return it == counts_.end() ? 0 : it->second;
}

std::int64_t Configuration::marriage_number() const noexcept {
  std::int64_t mu = 0;
  for (const auto& [size, count] : counts_) mu += size * count;
  return mu;
}

MarriageStats marriage_stats(const Configuration& config) {
  const std::int64_t mu = config.marriage_number();
  // Each M_n cycle alternates n marriages with n sibship cells.
  return {mu, mu, 2 * mu};
}

Configuration operator+(const Configuration& a, const Configuration& b) {
  if (a.min_cycle() != b.min_cycle()) {
    throw Error(Errc::invalid_configuration, "cannot add configurations with different min_cycle");
  }
  Configuration::Counts sum = a.counts();
  for (const auto& [size, count] : b.counts()) sum[size] += count;
  return Configuration(std::move(sum), a.min_cycle());
}

bool CanonicalLess::operator()(const Configuration& a, const Configuration& b) const {
  const auto mu_a = a.marriage_number();
  const auto mu_b = b.marriage_number();
  if (mu_a != mu_b) return mu_a < mu_b;
  if (a.counts() != b.counts()) {
    return std::lexicographical_compare(a.counts().begin(), a.counts().end(), b.counts().begin(),
                                        b.counts().end());
  }
  return a.min_cycle() < b.min_cycle();
}

std::string to_string(const Configuration& config) {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (const auto& [size, count] : config.counts()) {
    if (!first) os << ',';
    os << size << ':' << count;
    first = false;
  }
  os << '}';
  return os.str();
}

ConfigurationSpace::ConfigurationSpace(std::vector<Configuration> configs, int min_cycle)
    : configs_(std::move(configs)), min_cycle_(min_cycle) {
  if (configs_.empty()) throw Error(Errc::empty_space, "configuration space must be non-empty");
  std::sort(configs_.begin(), configs_.end(), CanonicalLess{});
  for (std::size_t i = 0; i < configs_.size(); ++i) {
    const auto& c = configs_[i];
    if (c.empty()) throw Error(Errc::invalid_configuration, "configuration space members must be non-empty");
    if (c.min_cycle() != min_cycle_) {
      throw Error(Errc::invalid_configuration, "member " + to_string(c) + " has a different min_cycle");
    }
    if (!index_.emplace(c, i).second) {
      throw Error(Errc::invalid_configuration, "duplicate configuration " + to_string(c));
    }
  }
}

std::optional<std::size_t> ConfigurationSpace::index_of(const Configuration& config) const {
  auto it = index_.find(config);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t ConfigurationSpace::require_index(const Configuration& config) const {
  if (auto i = index_of(config)) return *i;
  throw Error(Errc::membership, "configuration " + to_string(config) + " is not in the space");
}

bool ConfigurationSpace::single_order() const {
  return std::all_of(configs_.begin(), configs_.end(),
                     [&](const Configuration& c) { return c.marriage_number() == mu(0); });
}

namespace {

// Partitions of `remaining` into parts in [min_part, max_part], largest part
// chosen first; `parts` holds the cycle sizes chosen so far.
void partitions(int remaining, int min_part, int max_part, Configuration::Counts& parts, int min_cycle,
                std::vector<Configuration>& out) {
  if (remaining == 0) {
    out.emplace_back(parts, min_cycle);
    return;
  }
  for (int part = std::min(remaining, max_part); part >= min_part; --part) {
    ++parts[part];
    partitions(remaining - part, min_part, part, parts, min_cycle, out);
    if (--parts[part] == 0) parts.erase(part);
  }
}

}  // namespace

ConfigurationSpace enumerate_configurations(int order, int min_cycle) {
  if (min_cycle < 1) throw Error(Errc::invalid_configuration, "min_cycle must be >= 1");
  if (order < min_cycle) {
    throw Error(Errc::empty_space, "no configuration of order " + std::to_string(order) +
                                       " with cycles of size >= " + std::to_string(min_cycle));
  }
  std::vector<Configuration> configs;
  Configuration::Counts parts;
  partitions(order, min_cycle, order, parts, min_cycle, configs);
  return ConfigurationSpace(std::move(configs), min_cycle);
}

ConfigurationSpace merge_spaces(const ConfigurationSpace& a, const ConfigurationSpace& b) {
  if (a.min_cycle() != b.min_cycle()) {
    throw Error(Errc::invalid_configuration, "cannot merge spaces with different min_cycle");
  }
  std::vector<Configuration> configs(a.configs().begin(), a.configs().end());
  for (const auto& c : b.configs()) {
    if (!a.index_of(c)) configs.push_back(c);
  }
  return ConfigurationSpace(std::move(configs), a.min_cycle());
}

ContentList::ContentList(std::vector<int> bits) {
  bits_.reserve(bits.size());
  for (int b : bits) {
    if (b != 0 && b != 1) throw Error(Errc::malformed_input, "content list entries must be 0 or 1");
    bits_.push_back(static_cast<std::uint8_t>(b));
  }
}

ContentList ContentList::singleton(std::size_t n, std::size_t i) {
  if (i >= n) throw Error(Errc::index_out_of_range, "singleton index out of range");
  ContentList xi(n);
  xi.set(i, true);
  return xi;
}

ContentList ContentList::full(std::size_t n) {
  ContentList xi(n);
  std::fill(xi.bits_.begin(), xi.bits_.end(), std::uint8_t{1});
  return xi;
}

ContentList ContentList::from_mask(std::size_t n, std::uint64_t mask) {
  ContentList xi(n);
  for (std::size_t i = 0; i < n; ++i) xi.set(i, (mask >> i) & 1U);
  return xi;
}

std::size_t ContentList::weight() const noexcept {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

bool ContentList::subset_of(const ContentList& other) const {
  if (other.size() != size()) throw Error(Errc::dimension_mismatch, "content list length mismatch");
  for (std::size_t i = 0; i < size(); ++i)
    if (bits_[i] > other.bits_[i]) return false;
  return true;
}

std::vector<int> ContentList::bits() const { return {bits_.begin(), bits_.end()}; }

ContentList content_list(std::span<const Configuration> subset, const ConfigurationSpace& space) {
  ContentList xi(space.size());
  for (const auto& c : subset) xi.set(space.require_index(c), true);
  return xi;
}

std::vector<Configuration> configurations_of(const ContentList& xi, const ConfigurationSpace& space) {
  if (xi.size() != space.size()) {
    throw Error(Errc::dimension_mismatch, "content list length " + std::to_string(xi.size()) +
                                              " does not match space size " + std::to_string(space.size()));
  }
  std::vector<Configuration> out;
  for (std::size_t i = 0; i < xi.size(); ++i)
    if (xi[i]) out.push_back(space[i]);
  return out;
}

}  // namespace cultrule
