#include "cultrule/error.hpp"

namespace cultrule {

const char* to_string(Errc code) noexcept {
  switch (code) {
    case Errc::malformed_input: return "malformed_input";
    case Errc::invalid_configuration: return "invalid_configuration";
    case Errc::empty_space: return "empty_space";
    case Errc::membership: return "membership";
    case Errc::dimension_mismatch: return "dimension_mismatch";
    case Errc::empty_history: return "empty_history";
    case Errc::not_viable: return "not_viable";
    case Errc::support_mismatch: return "support_mismatch";
    case Errc::zero_source: return "zero_source";
    case Errc::invalid_weights: return "invalid_weights";
    case Errc::not_doubly_stochastic: return "not_doubly_stochastic";
    case Errc::matching_failure: return "matching_failure";
    case Errc::index_out_of_range: return "index_out_of_range";
    case Errc::census_cap_exceeded: return "census_cap_exceeded";
    case Errc::infeasible_rule: return "infeasible_rule";
    case Errc::genealogy_axiom: return "genealogy_axiom";
    case Errc::generation_assignment: return "generation_assignment";
    case Errc::irregular_generation: return "irregular_generation";
  }
  return "unknown";
}

}  // namespace cultrule
