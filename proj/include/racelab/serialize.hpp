#pragma once

#include <string>

#include "json.hpp"
#include "racelab/barriers.hpp"
#include "racelab/orderings.hpp"
#include "racelab/zerosys.hpp"

namespace racelab {

nlohmann::json zeros_to_json(const ZeroSystem& B);
ZeroSystem zeros_from_json(const nlohmann::json& j);

// Zero-list text accepted by parse_zero_data.
std::string zeros_to_text(const ZeroSystem& B);

nlohmann::json recipe_to_json(const BarrierRecipe& r);
BarrierRecipe recipe_from_json(const nlohmann::json& j);

nlohmann::json census_to_json(const Census& c, const std::vector<long long>& members);
nlohmann::json verdict_to_json(const Verdict& v);

// Columns u, then one per member.
std::string trace_to_csv(const OrderingTrace& t);

}  // namespace racelab
