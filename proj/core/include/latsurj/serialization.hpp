#pragma once

#include "latsurj/certifier.hpp"
#include "latsurj/experiments.hpp"
#include "latsurj/exposure.hpp"
#include "latsurj/predictions.hpp"
#include "latsurj/sweeps.hpp"

#include <nlohmann/json.hpp>

#include <string>

namespace latsurj {

using Json = nlohmann::ordered_json;

/// Big integers are written as decimal strings. Timing is omitted unless
/// asked for, so identical inputs give identical documents.
Json to_json(const Certificate& c, bool include_timing = false);
Json to_json(const Prediction& p);
Json to_json(const ExperimentConfig& cfg);
Json to_json(const SweepResult& r);
Json to_json(const ExposureTrace& t);
Json to_json(const ExperimentReport& r, bool include_runtime = true);

/// One row per outcome; exposure reports get one row per run instead.
std::string to_csv(const ExperimentReport& r);

}  // namespace latsurj
