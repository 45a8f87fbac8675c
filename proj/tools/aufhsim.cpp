// Command-line driver: run/sweep experiment configs, timing bench, fast
// verification suite, and canned reproduction presets.

#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "aufh/config_json.hpp"
#include "aufh/persist.hpp"
#include "aufh/timing.hpp"
#include "aufh/verify.hpp"
#include "aufh/version.hpp"

namespace {

namespace fs = std::filesystem;
using aufh::cli::json;
using aufh::cli::RunPlan;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitConfig = 2;
constexpr int kExitVerification = 3;

struct CommonOptions {
    std::string config_path;
    std::string out_dir = "out";
    std::optional<std::uint64_t> seed;
    std::optional<int> threads;
    std::optional<double> horizon;
    std::vector<std::string> overrides;
};

void add_common(CLI::App* cmd, CommonOptions& opt, bool needs_config) {
    auto* config = cmd->add_option("--config", opt.config_path, "configuration or manifest file");
    if (needs_config) config->required();
    cmd->add_option("--out", opt.out_dir, "output directory");
    cmd->add_option("--seed", opt.seed, "master seed override");
    cmd->add_option("--threads", opt.threads, "worker threads for repetitions");
    cmd->add_option("--horizon", opt.horizon,
                    "horizon override; checkpoints are rescaled proportionally");
    cmd->add_option("--set", opt.overrides, "dotted config override key=value (repeatable)");
}

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    return json::parse(in);  // parse_error carries the byte offset
}

RunPlan plan_with_overrides(json raw, const CommonOptions& opt) {
    if (raw.contains("config")) raw = raw.at("config");
    if (!opt.overrides.empty()) {
        if (raw.contains("cells"))
            for (json& cell : raw.at("cells"))
                for (const std::string& kv : opt.overrides) aufh::cli::apply_override(cell, kv);
        else
            for (const std::string& kv : opt.overrides) aufh::cli::apply_override(raw, kv);
    }
    RunPlan plan = aufh::cli::plan_from_json(raw);
    for (auto& cell : plan.cells) {
        if (opt.seed) cell.master_seed = *opt.seed;
        if (opt.threads) cell.threads = *opt.threads;
        if (opt.horizon) aufh::cli::override_horizon(cell, static_cast<std::int64_t>(*opt.horizon));
        cell.resolve();
    }
    return plan;
}

int execute_plan(const RunPlan& plan, const CommonOptions& opt) {
    if (plan.bench) {
        const auto table = aufh::harness::timing_bench(plan.bench_grid, plan.bench_rounds);
        const std::string text = aufh::harness::format_timing_table(table);
        std::cout << text;
        fs::create_directories(opt.out_dir);
        std::ofstream(fs::path(opt.out_dir) / "timing_table.txt") << text;
        return kExitOk;
    }
    for (const auto& cell : plan.cells) {
        const auto results = aufh::harness::run_experiment(cell);
        const fs::path dir = fs::path(opt.out_dir) / cell.run_id();
        aufh::harness::persist_results(results, dir, plan.packet_rate);
        std::cout << cell.run_id() << " -> " << dir.string() << '\n';
        for (const auto& pr : results.policies) {
            if (pr.infeasible) {
                std::cout << "  " << pr.policy_id << ": infeasible (" << pr.infeasible_reason
                          << ")\n";
                continue;
            }
            const auto& mean = pr.primary_mean(results.stochastic_metric);
            std::cout << "  " << pr.policy_id << ": "
                      << (results.stochastic_metric ? "pseudo" : "hindsight") << " regret at "
                      << cell.horizon << " = " << mean.back() << '\n';
        }
    }
    return kExitOk;
}

int run_verify() {
    const auto checks = aufh::verify::run_all();
    bool all_passed = true;
    for (const auto& check : checks) {
        std::cout << (check.passed ? "[PASS] " : "[FAIL] ") << check.name << ": " << check.detail
                  << '\n';
        all_passed = all_passed && check.passed;
    }
    return all_passed ? kExitOk : kExitVerification;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"aufhsim: adaptive channel-access simulation harness"};
    app.set_version_flag("--version", aufh::kVersion);
    app.require_subcommand(1);

    CommonOptions run_opt, sweep_opt, bench_opt, preset_opt;
    std::string preset_name;

    auto* run_cmd = app.add_subcommand("run", "run one experiment configuration");
    add_common(run_cmd, run_opt, true);
    auto* sweep_cmd = app.add_subcommand("sweep", "run every cell of a sweep configuration");
    add_common(sweep_cmd, sweep_opt, true);
    auto* bench_cmd =
        app.add_subcommand("bench", "per-round timing of the enumerated vs DP implementations");
    add_common(bench_cmd, bench_opt, false);
    auto* verify_cmd = app.add_subcommand("verify", "fast property and oracle checks");
    auto* preset_cmd = app.add_subcommand("preset", "run a canned reproduction configuration");
    preset_cmd->add_option("name", preset_name, "fig2|fig3|fig4|fig5|fig6|table1")->required();
    add_common(preset_cmd, preset_opt, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (run_cmd->parsed())
            return execute_plan(plan_with_overrides(load_json(run_opt.config_path), run_opt),
                                run_opt);
        if (sweep_cmd->parsed()) {
            json raw = load_json(sweep_opt.config_path);
            if (!raw.contains("cells") && !(raw.contains("config") && raw["config"].contains("cells")))
                throw std::invalid_argument("sweep expects a configuration with a 'cells' array");
            return execute_plan(plan_with_overrides(std::move(raw), sweep_opt), sweep_opt);
        }
        if (bench_cmd->parsed()) {
            RunPlan plan;
            if (!bench_opt.config_path.empty()) {
                plan = plan_with_overrides(load_json(bench_opt.config_path), bench_opt);
            } else {
                plan = aufh::cli::preset("table1");
            }
            if (!plan.bench) throw std::invalid_argument("bench expects a bench configuration");
            return execute_plan(plan, bench_opt);
        }
        if (verify_cmd->parsed()) return run_verify();
        if (preset_cmd->parsed()) {
            json raw = aufh::cli::plan_to_json(aufh::cli::preset(preset_name));
            return execute_plan(plan_with_overrides(std::move(raw), preset_opt), preset_opt);
        }
    } catch (const json::parse_error& e) {
        std::cerr << "config parse error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    }
    return kExitUsage;
}
