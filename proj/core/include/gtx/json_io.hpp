#pragma once

// JSON wire formats:
//   Instance  {"n": int, "m": int, "holdings": [[int, ...], ...]}  (ascending indices)
//   Schedule  [[i, j], ...]
//   SplitTree {"group": [...], "children": [...]}

#include <nlohmann/json.hpp>

#include "gtx/exchange.hpp"
#include "gtx/schedulers.hpp"

namespace gtx {

nlohmann::json to_json(const Instance& inst);
nlohmann::json to_json(const Schedule& schedule);
nlohmann::json to_json(const SplitTree& tree);

/// Throws std::invalid_argument on malformed input (missing keys, m not
/// matching the holdings count, out-of-range or unsorted file indices).
Instance instance_from_json(const nlohmann::json& j);
Schedule schedule_from_json(const nlohmann::json& j);

}  // namespace gtx
