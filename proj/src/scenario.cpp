#include "flexblock/scenario.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>

#include <nlohmann/json.hpp>

namespace flexblock {

using nlohmann::json;

namespace {

[[noreturn]] void bad_field(const std::string& field, const std::string& why) {
    throw FlexError(Err::ValidationError, "field '" + field + "': " + why);
}

double num_or(const json& j, const char* key, double fallback) {
    if (!j.contains(key)) return fallback;
    if (!j.at(key).is_number()) bad_field(key, "must be a number");
    return j.at(key).get<double>();
}

void check_keys(const json& j, const std::string& where, const std::set<std::string>& allowed) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (!allowed.count(it.key()))
            bad_field(where.empty() ? it.key() : where + "." + it.key(), "unknown key");
    }
}

void apply_unit_override(UnitModel& m, const json& j, const std::string& where) {
    static const std::set<std::string> allowed = {
        "capacity_mwh", "eta_gen", "eta_load", "eta_ex", "p_gen_min_mw", "p_gen_max_mw",
        "p_load_min_mw", "p_load_max_mw", "ramp_gen_min_mw_per_min", "ramp_gen_max_mw_per_min",
        "ramp_load_min_mw_per_min", "ramp_load_max_mw_per_min", "soc_min", "soc_max", "soc_init",
        "eta_gen_curve", "eta_load_curve"};
    check_keys(j, where, allowed);

    m.capacity_mwh = num_or(j, "capacity_mwh", m.capacity_mwh);
    m.eta_gen = num_or(j, "eta_gen", m.eta_gen);
    m.eta_load = num_or(j, "eta_load", m.eta_load);
    m.eta_ex = num_or(j, "eta_ex", m.eta_ex);
    m.p_gen_min_mw = num_or(j, "p_gen_min_mw", m.p_gen_min_mw);
    m.p_gen_max_mw = num_or(j, "p_gen_max_mw", m.p_gen_max_mw);
    m.p_load_min_mw = num_or(j, "p_load_min_mw", m.p_load_min_mw);
    m.p_load_max_mw = num_or(j, "p_load_max_mw", m.p_load_max_mw);
    m.ramp_gen_min_mw_per_min = num_or(j, "ramp_gen_min_mw_per_min", m.ramp_gen_min_mw_per_min);
    m.ramp_gen_max_mw_per_min = num_or(j, "ramp_gen_max_mw_per_min", m.ramp_gen_max_mw_per_min);
    m.ramp_load_min_mw_per_min = num_or(j, "ramp_load_min_mw_per_min", m.ramp_load_min_mw_per_min);
    m.ramp_load_max_mw_per_min = num_or(j, "ramp_load_max_mw_per_min", m.ramp_load_max_mw_per_min);
    m.soc_min = num_or(j, "soc_min", m.soc_min);
    m.soc_max = num_or(j, "soc_max", m.soc_max);
    m.soc_init = num_or(j, "soc_init", m.soc_init);

    auto read_curve = [&](const char* key, EfficiencyCurve& curve) {
        if (!j.contains(key)) return;
        const json& c = j.at(key);
        if (!c.is_object() || !c.contains("power_mw") || !c.contains("eta"))
            bad_field(where + "." + key, "must be an object with power_mw and eta arrays");
        curve.power_mw = c.at("power_mw").get<std::vector<double>>();
        curve.eta = c.at("eta").get<std::vector<double>>();
    };
    read_curve("eta_gen_curve", m.eta_gen_curve);
    read_curve("eta_load_curve", m.eta_load_curve);
}

void apply_mpc(MpcConfig& cfg, const json& j) {
    static const std::set<std::string> allowed = {
        "prediction_horizon", "control_horizon", "q_weights", "r_weight", "r_weights",
        "y_ref", "forecast", "slack_linear_penalty", "slack_quadratic_penalty",
        "soc_relax_fraction"};
    check_keys(j, "mpc", allowed);

    cfg.n_p = static_cast<int>(num_or(j, "prediction_horizon", cfg.n_p));
    cfg.n_c = static_cast<int>(num_or(j, "control_horizon", cfg.n_c));
    if (j.contains("q_weights")) {
        auto q = j.at("q_weights").get<std::vector<double>>();
        if (q.size() != 2) bad_field("mpc.q_weights", "needs exactly 2 entries");
        cfg.q_weights << q[0], q[1];
    }
    if (j.contains("r_weight"))
        cfg.r_weights.setConstant(j.at("r_weight").get<double>());
    if (j.contains("r_weights")) {
        auto r = j.at("r_weights").get<std::vector<double>>();
        if (static_cast<int>(r.size()) != kNu) bad_field("mpc.r_weights", "needs 9 entries");
        for (int i = 0; i < kNu; ++i) cfg.r_weights(i) = r[static_cast<std::size_t>(i)];
    }
    if (j.contains("y_ref")) {
        auto y = j.at("y_ref").get<std::vector<double>>();
        if (y.size() != 2) bad_field("mpc.y_ref", "needs exactly 2 entries");
        cfg.y_ref << y[0], y[1];
    }
    if (j.contains("forecast")) {
        std::string mode = j.at("forecast").get<std::string>();
        if (mode == "perfect")
            cfg.forecast = ForecastMode::Perfect;
        else if (mode == "persistence")
            cfg.forecast = ForecastMode::Persistence;
        else
            bad_field("mpc.forecast", "must be 'perfect' or 'persistence'");
    }
    cfg.slack_linear_penalty = num_or(j, "slack_linear_penalty", cfg.slack_linear_penalty);
    cfg.slack_quadratic_penalty =
        num_or(j, "slack_quadratic_penalty", cfg.slack_quadratic_penalty);
    cfg.soc_relax_fraction = num_or(j, "soc_relax_fraction", cfg.soc_relax_fraction);
}

void apply_synth(SynthSpec& s, const json& j) {
    static const std::set<std::string> allowed = {
        "hours", "steps", "step_minutes", "seed", "wind_peak_mw", "pv_peak_mw",
        "eload_base_mw", "eload_peak_mw", "h2_demand_mean_mwh", "h2_demand_swing",
        "gas_supply_mwh_per_step"};
    check_keys(j, "profiles.synthesize", allowed);

    s.step_minutes = num_or(j, "step_minutes", s.step_minutes);
    if (j.contains("steps"))
        s.steps = static_cast<int>(num_or(j, "steps", s.steps));
    else if (j.contains("hours"))
        s.steps = static_cast<int>(std::lround(num_or(j, "hours", 0.0) * 60.0 / s.step_minutes));
    if (j.contains("seed")) s.seed = j.at("seed").get<std::uint64_t>();
    s.wind_peak_mw = num_or(j, "wind_peak_mw", s.wind_peak_mw);
    s.pv_peak_mw = num_or(j, "pv_peak_mw", s.pv_peak_mw);
    s.eload_base_mw = num_or(j, "eload_base_mw", s.eload_base_mw);
    s.eload_peak_mw = num_or(j, "eload_peak_mw", s.eload_peak_mw);
    s.h2_demand_mean_mwh = num_or(j, "h2_demand_mean_mwh", s.h2_demand_mean_mwh);
    s.h2_demand_swing = num_or(j, "h2_demand_swing", s.h2_demand_swing);
    s.gas_supply_mwh_per_step = num_or(j, "gas_supply_mwh_per_step", s.gas_supply_mwh_per_step);
}

}  // namespace

ScenarioSpec load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FlexError(Err::IoError, "cannot open '" + path + "'");

    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw FlexError(Err::ParseError, std::string("scenario JSON: ") + e.what());
    }

    static const std::set<std::string> allowed = {"name",    "units",    "unit_overrides",
                                                  "profiles", "penetration_scale", "run_hours",
                                                  "mpc"};
    check_keys(j, "", allowed);

    ScenarioSpec spec;
    for (int i = 0; i < kNumUnitKinds; ++i) spec.units[i] = default_unit(static_cast<UnitKind>(i));

    if (j.contains("name")) spec.name = j.at("name").get<std::string>();

    if (!j.contains("units") || !j.at("units").is_array())
        bad_field("units", "must be an array of unit kind names");
    for (const json& u : j.at("units")) {
        UnitKind k;
        if (!u.is_string() || !kind_from_name(u.get<std::string>(), k))
            bad_field("units", "unknown unit kind '" + u.dump() + "'");
        if (spec.included[kind_index(k)])
            throw FlexError(Err::DuplicateUnit, "unit '" + u.get<std::string>() + "' listed twice");
        spec.included[kind_index(k)] = true;
    }

    if (j.contains("unit_overrides")) {
        const json& ov = j.at("unit_overrides");
        if (!ov.is_object()) bad_field("unit_overrides", "must be an object keyed by unit kind");
        for (auto it = ov.begin(); it != ov.end(); ++it) {
            UnitKind k;
            if (!kind_from_name(it.key(), k))
                bad_field("unit_overrides", "unknown unit kind '" + it.key() + "'");
            apply_unit_override(spec.units[kind_index(k)], it.value(),
                                "unit_overrides." + it.key());
        }
    }

    if (j.contains("profiles")) {
        const json& pr = j.at("profiles");
        check_keys(pr, "profiles", {"synthesize", "file"});
        if (pr.contains("file") == pr.contains("synthesize"))
            bad_field("profiles", "needs exactly one of 'file' or 'synthesize'");
        if (pr.contains("file")) {
            spec.synthesize = false;
            std::filesystem::path base = std::filesystem::path(path).parent_path();
            std::filesystem::path file = pr.at("file").get<std::string>();
            spec.profiles_file = (file.is_absolute() ? file : base / file).string();
        } else {
            spec.synthesize = true;
            apply_synth(spec.synth, pr.at("synthesize"));
        }
    }

    spec.penetration_scale = num_or(j, "penetration_scale", spec.penetration_scale);
    if (spec.penetration_scale < 0.0) bad_field("penetration_scale", "must be non-negative");
    spec.run_hours = num_or(j, "run_hours", spec.run_hours);
    if (j.contains("mpc")) apply_mpc(spec.mpc, j.at("mpc"));
    return spec;
}

ScenarioSpec canonical_scenario(int which, const SynthSpec& synth) {
    if (which < 1 || which > 3)
        throw FlexError(Err::ValidationError, "canonical scenarios are numbered 1..3");
    ScenarioSpec spec;
    spec.name = "scenario" + std::to_string(which);
    spec.synth = synth;
    for (int i = 0; i < kNumUnitKinds; ++i) spec.units[i] = default_unit(static_cast<UnitKind>(i));
    spec.included[kind_index(UnitKind::Wind)] = true;
    spec.included[kind_index(UnitKind::Pv)] = true;
    if (which >= 2) spec.included[kind_index(UnitKind::Hydrogen)] = true;
    if (which >= 3) {
        spec.included[kind_index(UnitKind::Battery)] = true;
        spec.included[kind_index(UnitKind::Gas)] = true;
    }
    return spec;
}

EnergyBlock make_block(const ScenarioSpec& spec) {
    std::vector<UnitModel> models;
    for (int i = 0; i < kNumUnitKinds; ++i)
        if (spec.included[i]) models.push_back(spec.units[i]);
    return block_from_units(models);
}

Profiles make_profiles(const ScenarioSpec& spec, std::uint64_t seed_override, double extra_ratio) {
    Profiles p;
    if (spec.synthesize) {
        SynthSpec s = spec.synth;
        if (seed_override != 0) s.seed = seed_override;
        p = synthesize_profiles(s);
    } else {
        p = load_profiles(spec.profiles_file);
    }
    if (spec.penetration_scale > 0.0) p = scale_penetration(p, spec.penetration_scale);
    if (extra_ratio > 0.0) p = scale_penetration(p, extra_ratio);
    return p;
}

int run_steps(const ScenarioSpec& spec, const Profiles& profiles) {
    const int available = static_cast<int>(profiles.size());
    if (spec.run_hours < 0.0) return available;
    int wanted = static_cast<int>(std::lround(spec.run_hours * 60.0 / profiles.step_minutes));
    if (wanted <= 0) throw FlexError(Err::ValidationError, "run_hours too short for one step");
    if (wanted > available)
        throw FlexError(Err::ValidationError, "insufficient horizon: profiles cover " +
                                                  std::to_string(available) + " steps, run needs " +
                                                  std::to_string(wanted));
    return wanted;
}

RunInputs make_run_inputs(const Profiles& profiles, int n_steps) {
    auto to_vec = [](const std::vector<double>& v) {
        return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<long>(v.size())).eval();
    };
    RunInputs in;
    in.wind_avail_mw = to_vec(profiles.wind_mw);
    in.pv_avail_mw = to_vec(profiles.pv_mw);
    in.eload_mw = to_vec(profiles.eload_mw);
    in.h2_demand_mwh = to_vec(profiles.h2_demand_mwh);
    in.gas_supply_mwh = to_vec(profiles.gas_supply_mwh);
    in.n_steps = n_steps;
    return in;
}

}  // namespace flexblock
