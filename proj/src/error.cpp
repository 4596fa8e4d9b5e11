#include "racelab/error.hpp"

namespace racelab {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::invalid_modulus: return "invalid-modulus";
    case Errc::invalid_residue: return "invalid-residue";
    case Errc::not_representable: return "not-representable";
    case Errc::resolution_too_coarse: return "resolution-too-coarse";
    case Errc::invalid_set: return "invalid-set";
    case Errc::search_exhausted: return "search-exhausted";
    case Errc::precondition_violated: return "precondition-violated";
    case Errc::malformed_line: return "malformed-line";
    case Errc::unknown_character_label: return "unknown-character-label";
    case Errc::invalid_system: return "invalid-system";
    case Errc::domain_error: return "domain-error";
    case Errc::empty_dominant_set: return "empty-dominant-set";
    case Errc::invalid_input: return "invalid-input";
    case Errc::recipe_mismatch: return "recipe-mismatch";
    case Errc::overflow_risk: return "overflow-risk";
    case Errc::excluded_modulus: return "excluded-modulus";
    case Errc::no_suitable_subgroup: return "no-suitable-subgroup";
    case Errc::verification_failed: return "verification-failed";
    case Errc::singular_system: return "singular-system";
    case Errc::omega_construction_failed: return "omega-construction-failed";
    case Errc::omega_type_lost: return "omega-type-lost";
    case Errc::condition_a_failed: return "condition-A-failed";
    case Errc::condition_b_failed: return "condition-B-failed";
    case Errc::condition_c_failed: return "condition-C-failed";
    case Errc::condition_d_failed: return "condition-D-failed";
    case Errc::missing_label: return "missing-label";
    case Errc::inconclusive_window: return "inconclusive-window";
    case Errc::budget_exceeded: return "budget-exceeded";
    case Errc::invalid_pair: return "invalid-pair";
    case Errc::insufficient_zero_data: return "insufficient-zero-data";
    case Errc::invalid_config: return "invalid-config";
  }
  return "unknown";
}

}  // namespace racelab
