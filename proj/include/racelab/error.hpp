#pragma once

#include <stdexcept>
#include <string>

namespace racelab {

enum class Errc {
  invalid_modulus,
  invalid_residue,
  not_representable,
  resolution_too_coarse,
  invalid_set,
  search_exhausted,
  precondition_violated,
  malformed_line,
  unknown_character_label,
  invalid_system,
  domain_error,
  empty_dominant_set,
  invalid_input,
  recipe_mismatch,
  overflow_risk,
  excluded_modulus,
  no_suitable_subgroup,
  verification_failed,
  singular_system,
  omega_construction_failed,
  omega_type_lost,
  condition_a_failed,
  condition_b_failed,
  condition_c_failed,
  condition_d_failed,
  missing_label,
  inconclusive_window,
  budget_exceeded,
  invalid_pair,
  insufficient_zero_data,
  invalid_config,
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what),
        code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace racelab
