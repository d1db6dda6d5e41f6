#pragma once

#include <stdexcept>
#include <string>

namespace cultrule {

enum class Errc {
  malformed_input,
  invalid_configuration,
  empty_space,
  membership,
  dimension_mismatch,
  empty_history,
  not_viable,
  support_mismatch,
  zero_source,
  invalid_weights,
  not_doubly_stochastic,
  matching_failure,
  index_out_of_range,
  census_cap_exceeded,
  infeasible_rule,
  genealogy_axiom,
  generation_assignment,
  irregular_generation,
};

const char* to_string(Errc code) noexcept;

// Every failure raised by the library. `code()` distinguishes malformed input
// (caller's fault, not a domain answer) from domain failures.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace cultrule
