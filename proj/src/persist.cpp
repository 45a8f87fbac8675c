#include "aufh/persist.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "aufh/config_json.hpp"

namespace aufh::harness {

namespace {

// Fixed shortest-roundtrip formatting keeps re-runs byte-identical.
std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
}

}  // namespace

std::string results_csv(const ExperimentResults& results) {
    std::ostringstream os;
    os << "run_id,policy,regime,n,k_r,checkpoint,regret_mean,regret_std\n";
    const auto& config = results.config;
    const std::string run_id = config.run_id();
    const std::string regime = env::to_string(config.environment.regime);
    for (const PolicyResult& pr : results.policies) {
        if (pr.infeasible) continue;
        const auto& mean = pr.primary_mean(results.stochastic_metric);
        const auto& std_dev = pr.primary_std(results.stochastic_metric);
        for (std::size_t c = 0; c < config.checkpoints.size(); ++c) {
            os << run_id << ',' << pr.policy_id << ',' << regime << ',' << config.space.n << ','
               << config.space.k_r << ',' << config.checkpoints[c] << ',' << fmt(mean[c]) << ','
               << fmt(std_dev[c]) << '\n';
        }
    }
    return os.str();
}

std::string traces_csv(const ExperimentResults& results) {
    std::ostringstream os;
    os << "run_id,policy,rep,checkpoint,pseudo_regret,hindsight_regret,cumulative_loss\n";
    const std::string run_id = results.config.run_id();
    for (const PolicyResult& pr : results.policies) {
        for (const RegretTrace& tr : pr.reps) {
            for (std::size_t c = 0; c < tr.checkpoints.size(); ++c) {
                os << run_id << ',' << pr.policy_id << ',' << tr.repetition << ','
                   << tr.checkpoints[c] << ',' << fmt(tr.pseudo_regret[c]) << ','
                   << fmt(tr.hindsight_regret[c]) << ',' << fmt(tr.cumulative_loss[c]) << '\n';
            }
        }
    }
    return os.str();
}

std::string manifest_json(const ExperimentResults& results) {
    return cli::manifest_for(results).dump(2) + "\n";
}

double packet_rate_mbps(double cumulative_loss, std::int64_t rounds, int k_r,
                        double bits_per_packet) {
    const double received = static_cast<double>(rounds) * k_r - cumulative_loss;
    return received * bits_per_packet / static_cast<double>(rounds) / 1e6;
}

std::string packet_rate_csv(const ExperimentResults& results) {
    std::ostringstream os;
    os << "run_id,policy,regime,n,k_r,horizon,rate_mbps\n";
    const auto& config = results.config;
    for (const PolicyResult& pr : results.policies) {
        if (pr.infeasible) continue;
        os << config.run_id() << ',' << pr.policy_id << ','
           << env::to_string(config.environment.regime) << ',' << config.space.n << ','
           << config.space.k_r << ',' << config.horizon << ','
           << fmt(packet_rate_mbps(pr.cum_loss_mean.back(), config.horizon, config.space.k_r))
           << '\n';
    }
    return os.str();
}

namespace {

constexpr const char* kPlotScript = R"(#!/usr/bin/env python3
"""Plot mean regret curves (solid) and mean+std (dashed) from results.csv."""
import csv
import sys
from collections import defaultdict

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

path = sys.argv[1] if len(sys.argv) > 1 else "results.csv"
series = defaultdict(lambda: ([], [], []))
with open(path) as fh:
    for row in csv.DictReader(fh):
        t, mean, std = series[row["policy"]]
        t.append(int(row["checkpoint"]))
        mean.append(float(row["regret_mean"]))
        std.append(float(row["regret_std"]))

fig, ax = plt.subplots(figsize=(7, 5))
for policy, (t, mean, std) in sorted(series.items()):
    (line,) = ax.plot(t, mean, label=policy)
    ax.plot(t, [m + s for m, s in zip(mean, std)], "--", color=line.get_color(), alpha=0.6)
ax.set_xscale("log")
ax.set_xlabel("round")
ax.set_ylabel("regret")
ax.legend()
fig.tight_layout()
out = path.rsplit(".", 1)[0] + ".png"
fig.savefig(out, dpi=150)
print(out)
)";

}  // namespace

std::filesystem::path persist_results(const ExperimentResults& results,
                                      const std::filesystem::path& dir, bool with_packet_rate) {
    std::filesystem::create_directories(dir);
    write_file(dir / "results.csv", results_csv(results));
    write_file(dir / "traces.csv", traces_csv(results));
    const auto manifest_path = dir / "manifest.json";
    write_file(manifest_path, manifest_json(results));
    write_file(dir / "plot_results.py", kPlotScript);
    if (with_packet_rate) write_file(dir / "rates.csv", packet_rate_csv(results));

    std::ostringstream timing;
    timing << "policy,select_us_per_round,update_us_per_round\n";
    for (const PolicyResult& pr : results.policies) {
        if (pr.infeasible) continue;
        timing << pr.policy_id << ',' << fmt(pr.timing.select_us_per_round) << ','
               << fmt(pr.timing.update_us_per_round) << '\n';
    }
    write_file(dir / "timing.csv", timing.str());
    return manifest_path;
}

}  // namespace aufh::harness
