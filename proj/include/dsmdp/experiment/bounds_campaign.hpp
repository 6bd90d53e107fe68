#pragma once

#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "dsmdp/experiment/spec.hpp"
#include "dsmdp/metrics/bounds.hpp"

namespace dsmdp::experiment {

struct BoundCounts {
  std::size_t held = 0, skipped = 0, violated = 0;
};

struct BoundsCaseRecord {
  std::string group;  // macro, skill, uniform_gap or demo
  std::size_t index = 0;
  metrics::BoundRecord record;
};

struct BoundsCampaignResult {
  std::map<std::string, BoundCounts> counts;  // by record name
  std::vector<BoundsCaseRecord> cases;
  std::size_t violations() const;
  // Failed demos count as violations too.
  std::vector<BoundsCaseRecord> failures() const;
};

// Randomized campaign: strict macro augmentations of random invertible bases,
// random tabular skill augmentations, random macro sets on sequence_consume
// at delta 0, plus the tightness and KL-condition demonstrations.
BoundsCampaignResult run_bounds_campaign(const BoundsCampaignSpec& spec);

nlohmann::json to_json(const BoundsCampaignResult& r, const BoundsCampaignSpec& spec);

}  // namespace dsmdp::experiment
