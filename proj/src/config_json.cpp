#include "aufh/config_json.hpp"

#include <sstream>
#include <stdexcept>

#include "aufh/version.hpp"

namespace aufh::cli {

namespace {

std::string variant_name(Variant v) {
    switch (v) {
        case Variant::Emp: return "emp";
        case Variant::Acc: return "acc";
        case Variant::KnownGap: return "known_gap";
    }
    return "?";
}

Variant variant_from(const std::string& s) {
    if (s == "emp") return Variant::Emp;
    if (s == "acc") return Variant::Acc;
    if (s == "known_gap") return Variant::KnownGap;
    throw std::invalid_argument("unknown variant: " + s);
}

std::string kind_name(harness::PolicyKind k) {
    switch (k) {
        case harness::PolicyKind::Aufh: return "aufh";
        case harness::PolicyKind::CombUcb1: return "combucb1";
        case harness::PolicyKind::Thompson: return "thompson";
        case harness::PolicyKind::StrategyExp3: return "antijam_exp3";
        case harness::PolicyKind::Oracle: return "oracle";
    }
    return "?";
}

harness::PolicyKind kind_from(const std::string& s) {
    if (s == "aufh") return harness::PolicyKind::Aufh;
    if (s == "combucb1") return harness::PolicyKind::CombUcb1;
    if (s == "thompson") return harness::PolicyKind::Thompson;
    if (s == "antijam_exp3") return harness::PolicyKind::StrategyExp3;
    if (s == "oracle") return harness::PolicyKind::Oracle;
    throw std::invalid_argument("unknown policy kind: " + s);
}

json policy_to_json(const harness::PolicySpec& p) {
    json j;
    j["kind"] = kind_name(p.kind);
    if (p.kind == harness::PolicyKind::Aufh) {
        j["variant"] = variant_name(p.variant);
        j["xi_form"] = p.xi_form == XiForm::LogSquared ? "avg" : "experimental";
        j["c"] = p.c;
        j["impl"] = p.reference_impl ? "reference" : "dp";
        if (p.eta_override) j["eta"] = *p.eta_override;
        if (!p.known_gaps.empty()) j["known_gaps"] = p.known_gaps;
    }
    j["minibatch"] = p.minibatch;
    return j;
}

harness::PolicySpec policy_from_json(const json& j) {
    harness::PolicySpec p;
    p.kind = kind_from(j.at("kind").get<std::string>());
    if (p.kind == harness::PolicyKind::Aufh) {
        p.variant = variant_from(j.value("variant", "emp"));
        const std::string form = j.value("xi_form", "experimental");
        if (form == "avg")
            p.xi_form = XiForm::LogSquared;
        else if (form == "experimental")
            p.xi_form = XiForm::GapScaledLog;
        else
            throw std::invalid_argument("unknown xi_form: " + form);
        p.c = j.value("c", p.xi_form == XiForm::LogSquared ? 18.0 : 1.0 / 32.0);
        const std::string impl = j.value("impl", "dp");
        if (impl != "dp" && impl != "reference")
            throw std::invalid_argument("unknown impl: " + impl);
        p.reference_impl = impl == "reference";
        if (j.contains("eta")) p.eta_override = j.at("eta").get<double>();
        if (j.contains("known_gaps")) p.known_gaps = j.at("known_gaps").get<std::vector<double>>();
    }
    p.minibatch = j.value("minibatch", std::int64_t{0});
    return p;
}

json environment_to_json(const env::EnvironmentSpec& e) {
    json j;
    j["regime"] = env::to_string(e.regime);
    j["delta"] = e.delta;
    switch (e.regime) {
        case env::Regime::Mixed: j["k_j"] = e.k_j; break;
        case env::Regime::AdversarialAdaptive:
            j["k_j"] = e.k_j;
            j["memory"] = e.memory;
            break;
        case env::Regime::Contaminated:
            j["contamination"] =
                e.contamination == env::ContaminationMode::Formal ? "formal" : "experimental";
            if (e.contamination == env::ContaminationMode::Formal) {
                j["zeta"] = e.zeta;
                j["tau"] = e.tau;
            } else {
                j["switch_round"] = e.switch_round;
            }
            break;
        default: break;
    }
    return j;
}

env::EnvironmentSpec environment_from_json(const json& j) {
    env::EnvironmentSpec e;
    e.regime = env::regime_from_string(j.at("regime").get<std::string>());
    e.delta = j.value("delta", 0.2);
    e.k_j = j.value("k_j", 0);
    e.memory = j.value("memory", 0);
    e.zeta = j.value("zeta", 0.0);
    e.tau = j.value("tau", std::int64_t{0});
    e.switch_round = j.value("switch_round", std::int64_t{2500});
    const std::string mode = j.value("contamination", "experimental");
    if (mode == "formal")
        e.contamination = env::ContaminationMode::Formal;
    else if (mode == "experimental")
        e.contamination = env::ContaminationMode::Experimental;
    else
        throw std::invalid_argument("unknown contamination mode: " + mode);
    return e;
}

}  // namespace

json to_json(const harness::ExperimentConfig& config) {
    json j;
    j["space"] = {{"n", config.space.n}, {"k_r", config.space.k_r}};
    j["environment"] = environment_to_json(config.environment);
    j["policies"] = json::array();
    for (const auto& p : config.policies) j["policies"].push_back(policy_to_json(p));
    j["horizon"] = config.horizon;
    j["repetitions"] = config.repetitions;
    if (!config.checkpoints.empty()) j["checkpoints"] = config.checkpoints;
    j["master_seed"] = config.master_seed;
    j["enumeration_cap"] = config.enumeration_cap;
    j["threads"] = config.threads;
    return j;
}

harness::ExperimentConfig config_from_json(const json& j) {
    harness::ExperimentConfig config;
    const json& space = j.at("space");
    config.space = StrategySpace::make(space.at("n").get<int>(), space.at("k_r").get<int>());
    config.environment = environment_from_json(j.at("environment"));
    config.environment.n = config.space.n;
    for (const json& p : j.at("policies")) config.policies.push_back(policy_from_json(p));
    config.horizon = j.at("horizon").get<std::int64_t>();
    config.repetitions = j.value("repetitions", 10);
    if (j.contains("checkpoints"))
        config.checkpoints = j.at("checkpoints").get<std::vector<std::int64_t>>();
    config.master_seed = j.value("master_seed", std::uint64_t{1});
    config.enumeration_cap = j.value("enumeration_cap", std::int64_t{1'000'000});
    config.threads = j.value("threads", 1);
    return config;
}

RunPlan plan_from_json(const json& input) {
    const json& j = input.contains("config") ? input.at("config") : input;
    RunPlan plan;
    plan.packet_rate = j.value("packet_rate", false);
    if (j.contains("bench")) {
        plan.bench = true;
        for (const auto& cell : j.at("bench").at("grid"))
            plan.bench_grid.emplace_back(cell.at(0).get<int>(), cell.at(1).get<int>());
        plan.bench_rounds = j.at("bench").value("rounds", std::int64_t{1500});
        return plan;
    }
    if (j.contains("cells")) {
        for (const json& cell : j.at("cells")) plan.cells.push_back(config_from_json(cell));
        return plan;
    }
    plan.cells.push_back(config_from_json(j));
    return plan;
}

json plan_to_json(const RunPlan& plan) {
    json j;
    if (plan.bench) {
        json grid = json::array();
        for (const auto& [n, k] : plan.bench_grid) grid.push_back({n, k});
        j["bench"] = {{"grid", grid}, {"rounds", plan.bench_rounds}};
        return j;
    }
    if (plan.packet_rate) j["packet_rate"] = true;
    if (plan.cells.size() == 1) {
        json cell = to_json(plan.cells.front());
        cell.update(j);
        return cell;
    }
    j["cells"] = json::array();
    for (const auto& cell : plan.cells) j["cells"].push_back(to_json(cell));
    return j;
}

namespace {

harness::PolicySpec aufh_policy(Variant v) {
    harness::PolicySpec p;
    p.kind = harness::PolicyKind::Aufh;
    p.variant = v;
    p.xi_form = XiForm::GapScaledLog;  // the schedule the experiments ran with
    p.c = 1.0 / 32.0;
    return p;
}

harness::PolicySpec baseline(harness::PolicyKind kind) {
    harness::PolicySpec p;
    p.kind = kind;
    return p;
}

std::vector<harness::PolicySpec> comparison_set() {
    return {aufh_policy(Variant::Emp), aufh_policy(Variant::Acc),
            baseline(harness::PolicyKind::CombUcb1), baseline(harness::PolicyKind::Thompson),
            baseline(harness::PolicyKind::StrategyExp3)};
}

harness::ExperimentConfig base_cell(int n, int k_r, env::Regime regime, std::int64_t horizon) {
    harness::ExperimentConfig c;
    c.space = StrategySpace::make(n, k_r);
    c.environment.regime = regime;
    c.environment.n = n;
    c.environment.delta = 0.2;
    c.horizon = horizon;
    c.repetitions = 10;
    c.master_seed = 7;
    c.policies = comparison_set();
    return c;
}

}  // namespace

std::vector<std::string> preset_names() {
    return {"fig2", "fig3", "fig4", "fig5", "fig6", "table1"};
}

RunPlan preset(const std::string& name) {
    RunPlan plan;
    if (name == "fig2") {
        for (int n : {8, 16, 60}) plan.cells.push_back(base_cell(n, 4, env::Regime::Stochastic, 10'000'000));
        return plan;
    }
    if (name == "fig3") {
        for (int n : {4, 8, 16}) {
            auto c = base_cell(n, 2, env::Regime::Contaminated, 8'000'000);
            c.environment.contamination = env::ContaminationMode::Experimental;
            c.environment.switch_round = 2500;
            plan.cells.push_back(std::move(c));
        }
        return plan;
    }
    if (name == "fig4") {
        for (int n : {4, 8, 16})
            plan.cells.push_back(base_cell(n, 2, env::Regime::AdversarialOblivious, 8'000'000));
        return plan;
    }
    if (name == "fig5") {
        for (int n : {4, 8, 16}) {
            auto c = base_cell(n, 2, env::Regime::AdversarialAdaptive, 8'000'000);
            c.environment.memory = 80;
            c.environment.k_j = 2;
            auto wrapped = aufh_policy(Variant::Emp);
            wrapped.minibatch = -1;  // batch size derived from the horizon
            c.policies.push_back(wrapped);
            plan.cells.push_back(std::move(c));
        }
        return plan;
    }
    if (name == "fig6") {
        plan.packet_rate = true;
        for (int n : {8, 16, 60}) {
            for (env::Regime regime :
                 {env::Regime::Stochastic, env::Regime::AdversarialOblivious,
                  env::Regime::AdversarialAdaptive, env::Regime::Contaminated}) {
                auto c = base_cell(n, 2, regime, 20'000'000);
                if (regime == env::Regime::AdversarialAdaptive) {
                    c.environment.memory = 80;
                    c.environment.k_j = 2;
                }
                if (regime == env::Regime::Contaminated) {
                    c.environment.contamination = env::ContaminationMode::Experimental;
                    c.environment.switch_round = 2500;
                }
                plan.cells.push_back(std::move(c));
            }
        }
        return plan;
    }
    if (name == "table1") {
        plan.bench = true;
        plan.bench_grid = {{12, 4}, {24, 4}, {48, 6}, {48, 12}, {64, 6}, {64, 12}, {64, 24}};
        plan.bench_rounds = 1500;
        return plan;
    }
    throw std::invalid_argument("unknown preset: " + name +
                                " (expected fig2|fig3|fig4|fig5|fig6|table1)");
}

void apply_override(json& config, const std::string& key_value) {
    const auto eq = key_value.find('=');
    if (eq == std::string::npos)
        throw std::invalid_argument("override must look like key=value: " + key_value);
    const std::string path = key_value.substr(0, eq);
    const std::string raw = key_value.substr(eq + 1);

    json value;
    try {
        value = json::parse(raw);
    } catch (const json::parse_error&) {
        value = raw;  // plain string
    }

    json* node = &config;
    std::istringstream keys(path);
    std::string part;
    std::vector<std::string> parts;
    while (std::getline(keys, part, '.')) parts.push_back(part);
    if (parts.empty()) throw std::invalid_argument("empty override key");
    for (std::size_t i = 0; i + 1 < parts.size(); ++i) node = &(*node)[parts[i]];
    (*node)[parts.back()] = value;
}

void override_horizon(harness::ExperimentConfig& config, std::int64_t horizon) {
    if (!config.checkpoints.empty())
        config.checkpoints = harness::scale_checkpoints(config.checkpoints, config.horizon, horizon);
    config.horizon = horizon;
}

json manifest_for(const harness::ExperimentResults& results) {
    json j;
    j["version"] = kVersion;
    j["run_id"] = results.config.run_id();
    j["primary_metric"] = results.stochastic_metric ? "pseudo_regret" : "hindsight_regret";
    if (results.config.environment.regime == env::Regime::AdversarialAdaptive)
        j["regret_note"] =
            "hindsight regret is measured against the best fixed strategy on the realized "
            "sequence; the sequence-competitor class is not enumerated";
    j["config"] = to_json(results.config);
    json env_seeds = json::array();
    for (int r = 0; r < results.config.repetitions; ++r)
        env_seeds.push_back(harness::derive_env_seed(results.config.master_seed, r));
    j["derived_seeds"]["environment"] = env_seeds;
    json policy_seeds = json::array();
    for (std::size_t p = 0; p < results.config.policies.size(); ++p) {
        json row = json::array();
        for (int r = 0; r < results.config.repetitions; ++r)
            row.push_back(
                harness::derive_policy_seed(results.config.master_seed, r, static_cast<int>(p)));
        policy_seeds.push_back(row);
    }
    j["derived_seeds"]["policies"] = policy_seeds;
    return j;
}

}  // namespace aufh::cli
