#pragma once

#include <nlohmann/json.hpp>

#include "fppa/asymptotics.hpp"
#include "fppa/metrics.hpp"
#include "fppa/pathfinder.hpp"
#include "fppa/weights.hpp"

namespace fppa {

// JSON views used by the command line tool. Infinite values become null.
nlohmann::json to_json(const TightnessReport& report);
nlohmann::json to_json(const ClassificationResult& result);
nlohmann::json to_json(const LayerPlan& plan);
nlohmann::json to_json(const PredictionBundle& bundle);
nlohmann::json to_json(const PathResult& path);
nlohmann::json to_json(const GreedyStep& step);
nlohmann::json to_json(const TraceAudit& audit);

}  // namespace fppa
