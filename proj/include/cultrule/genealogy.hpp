#pragma once

// Individual-level genealogies: evolutionary structures (descent, marriage
// and sibship relations), their descent sequences, the regular structures
// found on each generation, and seeded simulation of configuration
// trajectories under a rule.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cultrule/configuration.hpp"
#include "cultrule/error.hpp"
#include "cultrule/possibility.hpp"
#include "cultrule/transform.hpp"

namespace cultrule {

struct GenealogyInput {
  std::vector<std::string> individuals;
  // (ancestor, descendant); immediate links suffice.
  std::vector<std::pair<std::string, std::string>> descent;
  std::vector<std::pair<std::string, std::string>> marriage;
};

// How to read the marriage bound #bM <= 2.
enum class SpouseBound {
  one_partner,   // bM counts b itself: at most one spouse
  two_partners,  // bM counts partners only: at most two spouses
};

struct Violation {
  std::string kind;  // "axiom1".."axiom4", "cross_generation_marriage", ...
  std::string message;
  std::vector<std::string> individuals;
};

// Carries every violation found, not just the first.
class ValidationError : public Error {
 public:
  ValidationError(Errc code, std::vector<Violation> violations);
  const std::vector<Violation>& violations() const noexcept { return violations_; }

 private:
  std::vector<Violation> violations_;
};

class EvolutionaryStructure {
 public:
  const std::vector<std::string>& individuals() const noexcept { return names_; }
  std::size_t size() const noexcept { return names_.size(); }
  std::optional<std::size_t> index_of(const std::string& name) const;

  // Immediate descent: parents_of(c) holds every p with pPc.
  const std::vector<std::size_t>& parents_of(std::size_t i) const { return parents_.at(i); }
  const std::vector<std::size_t>& children_of(std::size_t i) const { return children_.at(i); }
  // bDc: b descends from c.
  bool descends_from(std::size_t b, std::size_t c) const { return reach_.at(c).at(b); }
  // Unordered pairs stored with first < second, sorted.
  const std::vector<std::pair<std::size_t, std::size_t>>& marriages() const noexcept { return marriages_; }
  // Sibship cells: individuals linked by shared immediate ancestors.
  const std::vector<std::vector<std::size_t>>& sibships() const noexcept { return sibships_; }
  // Both members share an immediate ancestor.
  bool siblings(std::size_t a, std::size_t b) const;

 private:
  friend EvolutionaryStructure derive_and_validate(const GenealogyInput&, SpouseBound);

  std::vector<std::string> names_;
  std::vector<std::vector<std::size_t>> parents_;
  std::vector<std::vector<std::size_t>> children_;
  std::vector<std::vector<bool>> reach_;  // reach_[ancestor][descendant]
  std::vector<std::pair<std::size_t, std::size_t>> marriages_;
  std::vector<std::vector<std::size_t>> sibships_;
};

// Throws ValidationError(Errc::genealogy_axiom) listing every axiom
// violation; Error(Errc::malformed_input) on unknown or duplicate ids.
EvolutionaryStructure derive_and_validate(const GenealogyInput& raw,
                                          SpouseBound bound = SpouseBound::one_partner);

struct GenerationStats {
  std::int64_t mu = 0;     // marriage pairs
  std::int64_t beta = 0;   // sibship cells
  std::int64_t gamma = 0;  // individuals

  bool operator==(const GenerationStats&) const = default;
};

struct Generation {
  std::vector<std::size_t> members;
  std::vector<std::pair<std::size_t, std::size_t>> marriages;
  std::vector<std::vector<std::size_t>> sibships;

  GenerationStats stats() const;
};

struct DescentSequence {
  std::vector<Generation> generations;
  std::vector<std::size_t> generation_of;  // per individual
};

// Throws ValidationError(Errc::generation_assignment) on cross-generation
// marriages or sibships, inconsistent parent depths, parentless individuals
// above generation 0, or an empty generation.
DescentSequence partition_generations(const EvolutionaryStructure& s);

// Marriages as vertices, sibship cells as edges; each component holding a
// marriage must be a simple cycle of length >= min_cycle. Components without
// marriages are ignored. Throws ValidationError(Errc::irregular_generation).
Configuration extract_configuration(const Generation& g, const EvolutionaryStructure& s,
                                    int min_cycle = kDefaultMinCycle);

struct SequenceFlag {
  enum class Kind { sibships_differ_from_parent_marriages, marriages_increase };
  Kind kind;
  std::size_t generation;  // the later generation t of the compared pair
  std::int64_t expected;
  std::int64_t actual;
};

struct SequenceReport {
  std::vector<GenerationStats> stats;
  std::vector<SequenceFlag> flags;

  bool ok() const noexcept { return flags.empty(); }
};

// Flags every t with beta^t != mu^{t-1} and every t with mu^t > mu^{t-1}.
SequenceReport sequence_report(const DescentSequence& ds);

struct Trajectory {
  std::uint64_t seed = 0;
  std::vector<std::size_t> path;  // configuration indices, start included
  bool dead_end = false;
};

// Successors of C_j are the i with t(i, j) = 1, drawn uniformly. Throws
// Errc::infeasible_rule if the rule fails validate_transform,
// Errc::index_out_of_range on a bad start.
Trajectory simulate_descent(const Transform& rule, std::size_t start, std::size_t steps, std::uint64_t seed);
// Successors drawn with probability proportional to p_ij.
Trajectory simulate_descent(const PossibilityTransform& rule, std::size_t start, std::size_t steps,
                            std::uint64_t seed);
inline Trajectory simulate_descent(const ConvexCombination& rule, std::size_t start, std::size_t steps,
                                   std::uint64_t seed) {
  return simulate_descent(rule.mixture, start, steps, seed);
}

}  // namespace cultrule
