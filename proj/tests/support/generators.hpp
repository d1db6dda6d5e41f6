#pragma once

// Random instances for property tests. All draws come from a caller-owned
// std::mt19937_64 so every suite is reproducible from its seed.

#include <algorithm>
#include <memory>
#include <numeric>
#include <random>
#include <vector>

#include "cultrule/birkhoff.hpp"
#include "cultrule/configuration.hpp"
#include "cultrule/possibility.hpp"
#include "cultrule/transform.hpp"

namespace gen {

using Rng = std::mt19937_64;

// First n configurations of orders 2, 3, 4, ... in canonical order, so
// mu = (2, 3, 4, 4, 5, 5, 6, ...).
inline cultrule::SpacePtr mixed_space(std::size_t n) {
  std::vector<cultrule::Configuration> configs;
  for (int order = 2; configs.size() < n; ++order) {
    const auto space = cultrule::enumerate_configurations(order);
    for (const auto& c : space.configs()) {
      if (configs.size() == n) break;
      configs.push_back(c);
    }
  }
  return std::make_shared<const cultrule::ConfigurationSpace>(std::move(configs));
}

// n configurations that all share one marriage number.
inline cultrule::SpacePtr flat_space(std::size_t n) {
  for (int order = 2;; ++order) {
    const auto space = cultrule::enumerate_configurations(order);
    if (space.size() < n) continue;
    std::vector<cultrule::Configuration> configs(space.configs().begin(), space.configs().begin() + n);
    return std::make_shared<const cultrule::ConfigurationSpace>(std::move(configs));
  }
}

inline std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline bool coin(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

inline cultrule::Transform random_transform(Rng& rng, const cultrule::SpacePtr& space, double density = 0.4) {
  cultrule::BoolMatrix m(space->size());
  for (std::size_t i = 0; i < space->size(); ++i)
    for (std::size_t j = 0; j < space->size(); ++j) m.set(i, j, coin(rng, density));
  return cultrule::Transform(space, std::move(m));
}

// Ones only on cells with mu(C_i) <= mu(C_j). Columns are occasionally
// forced to basis vectors so viable samples are common.
inline cultrule::Transform random_feasible_transform(Rng& rng, const cultrule::SpacePtr& space,
                                                     double density = 0.4) {
  const std::size_t n = space->size();
  cultrule::BoolMatrix m(n);
  for (std::size_t j = 0; j < n; ++j) {
    if (coin(rng, 0.3)) {
      m.set(j, j, true);
      continue;
    }
    for (std::size_t i = 0; i < n; ++i)
      if (space->mu(i) <= space->mu(j)) m.set(i, j, coin(rng, density));
  }
  return cultrule::Transform(space, std::move(m));
}

inline cultrule::ContentList random_content_list(Rng& rng, std::size_t n, bool allow_zero = true) {
  while (true) {
    cultrule::ContentList xi(n);
    for (std::size_t i = 0; i < n; ++i) xi.set(i, coin(rng, 0.5));
    if (allow_zero || !xi.zero()) return xi;
  }
}

inline cultrule::Permutation random_permutation(Rng& rng, std::size_t n) {
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::shuffle(p.begin(), p.end(), rng);
  return cultrule::Permutation(std::move(p));
}

inline std::vector<double> random_simplex(Rng& rng, std::size_t k) {
  std::exponential_distribution<double> draw(1.0);
  std::vector<double> w(k);
  for (auto& x : w) x = draw(rng) + 1e-3;
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  for (auto& x : w) x /= total;
  return w;
}

// Convex combination of k random permutations of order n.
inline cultrule::Matrix random_doubly_stochastic(Rng& rng, std::size_t n, std::size_t k) {
  const auto weights = random_simplex(rng, k);
  cultrule::Matrix m(n, n);
  for (std::size_t t = 0; t < k; ++t) {
    const auto p = random_permutation(rng, n);
    for (std::size_t i = 0; i < n; ++i) m(i, p[i]) = std::min(1.0, m(i, p[i]) + weights[t]);
  }
  return m;
}

// Random row-substochastic weights on the support of t; rows are made
// exactly stochastic with probability `stochastic`.
inline cultrule::PossibilityTransform random_possibility(Rng& rng, const cultrule::Transform& support,
                                                         double stochastic = 0.7) {
  const std::size_t n = support.size();
  cultrule::Matrix p(n, n);
  std::uniform_real_distribution<double> u(0.05, 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::size_t> cells;
    for (std::size_t j = 0; j < n; ++j)
      if (support(i, j)) cells.push_back(j);
    if (cells.empty()) continue;
    const auto w = random_simplex(rng, cells.size());
    const double scale = coin(rng, stochastic) ? 1.0 : u(rng);
    for (std::size_t k = 0; k < cells.size(); ++k) p(i, cells[k]) = w[k] * scale;
  }
  return cultrule::PossibilityTransform(support, std::move(p));
}

}  // namespace gen
