#pragma once

#include "json.hpp"

#include "dsmdp/metrics/bounds.hpp"
#include "dsmdp/metrics/report.hpp"

namespace dsmdp::metrics {

nlohmann::json to_json(const IcValue& ic);
nlohmann::json to_json(const DifficultyReport& report, const DifficultyOptions& options);
nlohmann::json to_json(const BoundRecord& record);
nlohmann::json to_json(const BoundsReport& report, const BoundsOptions& options);

}  // namespace dsmdp::metrics
