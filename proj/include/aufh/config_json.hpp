#pragma once

// JSON configuration layer: (de)serialization of experiment configs, dotted
// key=value overrides, canned reproduction presets, and manifests.

#include <string>
#include <vector>

#include <json.hpp>

#include "aufh/harness.hpp"

namespace aufh::cli {

using nlohmann::json;

json to_json(const harness::ExperimentConfig& config);
harness::ExperimentConfig config_from_json(const json& j);

// A runnable unit: either a list of experiment cells or a timing bench.
struct RunPlan {
    std::vector<harness::ExperimentConfig> cells;
    bool bench = false;
    std::vector<std::pair<int, int>> bench_grid;
    std::int64_t bench_rounds = 1500;
    bool packet_rate = false;
};

// Accepts a single config, a {"cells": [...]} sweep, a {"bench": ...} grid,
// or a manifest (its "config" object is extracted).
RunPlan plan_from_json(const json& j);
json plan_to_json(const RunPlan& plan);

// fig2..fig6 and table1.
RunPlan preset(const std::string& name);
std::vector<std::string> preset_names();

// Dotted-path override: "environment.delta=0.3", "horizon=1e6". Values are
// parsed as JSON when possible, otherwise kept as strings.
void apply_override(json& config, const std::string& key_value);

// Horizon override with proportional checkpoint rescaling.
void override_horizon(harness::ExperimentConfig& config, std::int64_t horizon);

json manifest_for(const harness::ExperimentResults& results);

}  // namespace aufh::cli
