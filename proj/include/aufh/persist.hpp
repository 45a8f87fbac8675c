#pragma once

// Result files. results.csv carries the aggregated primary regret per
// (policy, checkpoint); traces.csv carries both regret flavors per
// repetition; the manifest echoes the fully resolved configuration so a
// re-run reproduces results.csv byte for byte.

#include <filesystem>
#include <string>

#include "aufh/harness.hpp"

namespace aufh::harness {

// columns: run_id,policy,regime,n,k_r,checkpoint,regret_mean,regret_std
std::string results_csv(const ExperimentResults& results);
// columns: run_id,policy,rep,checkpoint,pseudo_regret,hindsight_regret,cumulative_loss
std::string traces_csv(const ExperimentResults& results);
std::string manifest_json(const ExperimentResults& results);

// Losses to received-packet rate: M = 1 packet of `bits_per_packet` bits per
// slot and channel, one slot per second.
double packet_rate_mbps(double cumulative_loss, std::int64_t rounds, int k_r,
                        double bits_per_packet = 1000.0);
// columns: run_id,policy,regime,n,k_r,horizon,rate_mbps
std::string packet_rate_csv(const ExperimentResults& results);

// Writes results.csv, traces.csv, manifest.json, timing.csv and a plot
// script into `dir` (created if needed). Returns the manifest path.
std::filesystem::path persist_results(const ExperimentResults& results,
                                      const std::filesystem::path& dir,
                                      bool with_packet_rate = false);

}  // namespace aufh::harness
