#include "flexblock/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <thread>

#include <nlohmann/json.hpp>

#include "flexblock/log.hpp"
#include "flexblock/svg.hpp"
#include "flexblock/trace_io.hpp"

namespace flexblock {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

std::string ratio_dir_name(double ratio) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "ratio_%.2f", ratio);
    return buf;
}

void emit_dispatch_svg(const std::string& path, const DispatchTrace& trace,
                       const std::vector<double>& renewable_mw) {
    SvgPanel power{"dispatched power", "MW", {}};
    auto series = [&](const std::string& label, const std::string& color, auto getter) {
        SvgSeries s{label, color, {}, {}};
        s.x.reserve(trace.size());
        s.y.reserve(trace.size());
        for (std::size_t t = 0; t < trace.size(); ++t) {
            s.x.push_back(trace.steps[t].t_min / 60.0);
            s.y.push_back(getter(trace.steps[t], t));
        }
        return s;
    };
    power.series.push_back(series("renewable avail", "#b5cde8", [&](const TraceStep&, std::size_t t) {
        return t < renewable_mw.size() ? renewable_mw[t] : 0.0;
    }));
    power.series.push_back(series("wind+pv used", "#1f77b4", [](const TraceStep& s, std::size_t) {
        return s.u(kUPgenWind) + s.u(kUPgenPv);
    }));
    power.series.push_back(series("electric load", "#d62728", [](const TraceStep& s, std::size_t) {
        return s.eload_mw;
    }));
    power.series.push_back(series("battery net", "#2ca02c", [](const TraceStep& s, std::size_t) {
        return s.u(kUPgenBattery) - s.u(kUPloadBattery);
    }));
    power.series.push_back(series("hydrogen net", "#9467bd", [](const TraceStep& s, std::size_t) {
        return s.u(kUPgenHydrogen) - s.u(kUPloadHydrogen);
    }));
    power.series.push_back(series("gas", "#8c564b", [](const TraceStep& s, std::size_t) {
        return s.u(kUPgenGas);
    }));
    power.series.push_back(
        series("shed", "#e377c2", [](const TraceStep& s, std::size_t) { return s.shed_mw; }));

    SvgPanel soc{"storage state of charge", "fraction", {}};
    soc.series.push_back(
        series("battery", "#2ca02c", [](const TraceStep& s, std::size_t) { return s.x(2); }));
    soc.series.push_back(
        series("hydrogen", "#9467bd", [](const TraceStep& s, std::size_t) { return s.x(3); }));
    soc.series.push_back(
        series("gas store", "#8c564b", [](const TraceStep& s, std::size_t) { return s.x(4); }));

    write_svg_chart(path, "energy block dispatch", "hours", {power, soc});
}

void emit_envelope_svg(const std::string& path, const Envelope& env) {
    auto panel = [&](const std::string& name, const std::string& unit, auto prov_up, auto req_up,
                     auto prov_dn, auto req_dn) {
        SvgPanel p{name, unit, {}};
        SvgSeries pu{"provided up", "#2ca02c", {}, {}}, ru{"required up", "#d62728", {}, {}};
        SvgSeries pd{"provided down", "#98df8a", {}, {}}, rd{"required down", "#ff9896", {}, {}};
        for (const EnvelopePoint& pt : env.points) {
            double h = pt.t_min / 60.0;
            pu.x.push_back(h);
            pu.y.push_back(prov_up(pt.provided));
            ru.x.push_back(h);
            ru.y.push_back(req_up(pt.required));
            pd.x.push_back(h);
            pd.y.push_back(-prov_dn(pt.provided));
            rd.x.push_back(h);
            rd.y.push_back(-req_dn(pt.required));
        }
        p.series = {pu, ru, pd, rd};
        return p;
    };
    auto ramp = [](const MarginPoint& m) { return m.ramp_up_mw_per_min; };
    auto rampd = [](const MarginPoint& m) { return m.ramp_down_mw_per_min; };
    auto pow = [](const MarginPoint& m) { return m.power_up_mw; };
    auto powd = [](const MarginPoint& m) { return m.power_down_mw; };
    auto en = [](const MarginPoint& m) { return m.energy_up_mwh; };
    auto end_ = [](const MarginPoint& m) { return m.energy_down_mwh; };

    write_svg_chart(path, "flexibility margin envelope (down plotted negative)", "hours",
                    {panel("ramp margin", "MW/min", ramp, ramp, rampd, rampd),
                     panel("power margin", "MW", pow, pow, powd, powd),
                     panel("energy margin", "MWh", en, en, end_, end_)});
}

}  // namespace

std::string report_to_json(const RunReport& r) {
    ordered_json j;
    j["scenario"] = r.scenario;
    ordered_json ix;
    ix["e_ir_mw_per_min"] = r.indices.e_ir_mw_per_min;
    ix["e_io_mw"] = r.indices.e_io_mw;
    ix["e_ic_mwh"] = r.indices.e_ic_mwh;
    ix["rho"] = r.indices.rho;
    ix["beta"] = r.indices.beta;
    ix["abandonment"] = r.indices.abandonment;
    ix["utilization"] = r.indices.utilization;
    j["indices"] = std::move(ix);
    ordered_json peaks;
    auto peak = [](const ShortfallPeak& p) {
        ordered_json o;
        o["value"] = p.value;
        o["time_min"] = p.t_min;
        return o;
    };
    peaks["ramp_mw_per_min"] = peak(r.max_ramp_shortfall);
    peaks["power_mw"] = peak(r.max_power_shortfall);
    peaks["energy_mwh"] = peak(r.max_energy_shortfall);
    j["max_shortfall"] = std::move(peaks);
    ordered_json tot;
    tot["curtailed_mwh"] = r.curtailed_mwh;
    tot["shed_mwh"] = r.shed_mwh;
    tot["surplus_mwh"] = r.surplus_mwh;
    tot["served_load_mwh"] = r.served_load_mwh;
    tot["h2_unserved_mwh"] = r.h2_unserved_mwh;
    tot["flagged_steps"] = r.flagged_steps;
    j["totals"] = std::move(tot);
    j["artifacts"] = r.artifacts;
    return j.dump(2) + "\n";
}

RunReport cmd_run(const ScenarioSpec& spec, const std::string& out_dir, const RunOptions& opts) {
    fs::create_directories(out_dir);

    EnergyBlock block = make_block(spec);
    Profiles profiles = make_profiles(spec, opts.seed, opts.extra_ratio);
    const int n_steps = run_steps(spec, profiles);

    MpcConfig cfg = spec.mpc;
    cfg.dt_h = profiles.dt_h();
    if (opts.forecast) cfg.forecast = *opts.forecast;

    LOG_INFO("running '" << spec.name << "': " << n_steps << " steps at " << profiles.step_minutes
                         << " min");
    DispatchTrace trace = run_receding_horizon(block, make_run_inputs(profiles, n_steps), cfg);

    std::vector<double> renewable(profiles.size());
    for (std::size_t t = 0; t < profiles.size(); ++t) renewable[t] = profiles.renewable_mw(t);
    std::vector<double> net = net_load_series(profiles.eload_mw, renewable);

    Envelope env = build_envelope(block, trace, net);
    RunReport report;
    report.scenario = spec.name;
    report.indices = compute_indices(block, trace, net);

    for (const EnvelopePoint& pt : env.points) {
        const MarginPoint& p = pt.provided;
        const MarginPoint& q = pt.required;
        double ramp = std::max(0.0, q.ramp_up_mw_per_min - p.ramp_up_mw_per_min) +
                      std::max(0.0, q.ramp_down_mw_per_min - p.ramp_down_mw_per_min);
        double power = std::max(0.0, q.power_up_mw - p.power_up_mw) +
                       std::max(0.0, q.power_down_mw - p.power_down_mw);
        double energy = std::max(0.0, q.energy_up_mwh - p.energy_up_mwh) +
                        std::max(0.0, q.energy_down_mwh - p.energy_down_mwh);
        if (ramp > report.max_ramp_shortfall.value)
            report.max_ramp_shortfall = {ramp, pt.t_min};
        if (power > report.max_power_shortfall.value)
            report.max_power_shortfall = {power, pt.t_min};
        if (energy > report.max_energy_shortfall.value)
            report.max_energy_shortfall = {energy, pt.t_min};
    }

    for (const TraceStep& s : trace.steps) {
        report.curtailed_mwh += s.u(kUSpillWind) + s.u(kUSpillPv);
        report.shed_mwh += s.shed_mw * trace.dt_h;
        report.surplus_mwh += s.surplus_mw * trace.dt_h;
        report.served_load_mwh += s.served_load_mw * trace.dt_h;
        report.h2_unserved_mwh += s.h2_demand_mwh - s.h2_served_mwh;
        if (step_flagged(s.status)) report.flagged_steps++;
    }

    write_trace_csv((fs::path(out_dir) / "trace.csv").string(), trace);
    write_trace_json((fs::path(out_dir) / "trace.json").string(), trace, spec.name);
    write_envelope_csv((fs::path(out_dir) / "envelope.csv").string(), env);
    report.artifacts = {"trace.csv", "trace.json", "envelope.csv", "indices.json"};
    if (opts.plots) {
        emit_dispatch_svg((fs::path(out_dir) / "dispatch.svg").string(), trace, renewable);
        emit_envelope_svg((fs::path(out_dir) / "envelope.svg").string(), env);
        report.artifacts.push_back("dispatch.svg");
        report.artifacts.push_back("envelope.svg");
    }
    {
        std::ofstream out(fs::path(out_dir) / "indices.json");
        if (!out) throw FlexError(Err::IoError, "cannot write indices.json");
        out << report_to_json(report);
    }

    if (!opts.quiet) {
        std::printf("scenario %-14s E_IR %9.3f MW/min   E_IO %9.3f MW   E_IC %9.3f MWh\n",
                    spec.name.c_str(), report.indices.e_ir_mw_per_min, report.indices.e_io_mw,
                    report.indices.e_ic_mwh);
        std::printf("  rho %.4f (beta %d/%zu)   curtailment %.3f MWh (%.2f%%)   shed %.3f MWh\n",
                    report.indices.rho, report.indices.beta, trace.size(), report.curtailed_mwh,
                    100.0 * report.indices.abandonment, report.shed_mwh);
    }
    return report;
}

RunReport cmd_run(const std::string& scenario_path, const std::string& out_dir,
                  const RunOptions& opts) {
    return cmd_run(load_scenario(scenario_path), out_dir, opts);
}

std::vector<SweepEntry> cmd_sweep(const ScenarioSpec& spec, const std::vector<double>& ratios,
                                  const std::string& out_dir, int jobs, const RunOptions& opts) {
    if (ratios.empty()) throw FlexError(Err::ValidationError, "ratio list must not be empty");
    for (double r : ratios)
        if (r < 0.0) throw FlexError(Err::ValidationError, "ratios must be non-negative");
    fs::create_directories(out_dir);

    std::vector<SweepEntry> entries(ratios.size());
    for (std::size_t i = 0; i < ratios.size(); ++i) entries[i].ratio = ratios[i];

    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= ratios.size()) return;
            SweepEntry& e = entries[i];
            RunOptions ro = opts;
            ro.extra_ratio = ratios[i];
            ro.quiet = true;
            try {
                e.report = cmd_run(spec, (fs::path(out_dir) / ratio_dir_name(ratios[i])).string(),
                                   ro);
                e.ok = true;
            } catch (const std::exception& ex) {
                e.ok = false;
                e.error = ex.what();
                LOG_ERROR("sweep ratio " << ratios[i] << " failed: " << ex.what());
            }
        }
    };

    const int n_jobs = std::max(1, std::min<int>(jobs, static_cast<int>(ratios.size())));
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(n_jobs) - 1);
    for (int t = 1; t < n_jobs; ++t) pool.emplace_back(worker);
    worker();
    for (std::thread& t : pool) t.join();

    std::ofstream csv(fs::path(out_dir) / "sweep.csv");
    if (!csv) throw FlexError(Err::IoError, "cannot write sweep.csv");
    csv << "ratio,e_ir_mw_per_min,e_io_mw,e_ic_mwh,abandonment\n";
    char buf[256];
    for (const SweepEntry& e : entries) {
        if (!e.ok) {
            std::snprintf(buf, sizeof(buf), "%.17g,failed,failed,failed,failed\n", e.ratio);
            csv << buf;
            continue;
        }
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g,%.17g\n", e.ratio,
                      e.report.indices.e_ir_mw_per_min, e.report.indices.e_io_mw,
                      e.report.indices.e_ic_mwh, e.report.indices.abandonment);
        csv << buf;
    }
    csv.close();

    SvgSeries abandonment{"abandonment", "#1f77b4", {}, {}};
    for (const SweepEntry& e : entries) {
        if (!e.ok) continue;
        abandonment.x.push_back(e.ratio);
        abandonment.y.push_back(e.report.indices.abandonment);
    }
    write_svg_chart((fs::path(out_dir) / "abandonment.svg").string(),
                    "renewable abandonment vs penetration ratio", "penetration ratio",
                    {SvgPanel{"abandonment rate", "fraction", {abandonment}}});

    if (!opts.quiet) {
        for (const SweepEntry& e : entries) {
            if (e.ok)
                std::printf("ratio %.2f   E_IR %9.3f   E_IO %9.3f   E_IC %9.3f   abandon %.4f\n",
                            e.ratio, e.report.indices.e_ir_mw_per_min, e.report.indices.e_io_mw,
                            e.report.indices.e_ic_mwh, e.report.indices.abandonment);
            else
                std::printf("ratio %.2f   FAILED: %s\n", e.ratio, e.error.c_str());
        }
    }
    return entries;
}

CheckReport cmd_check(const std::string& scenario_path, bool quiet) {
    CheckReport report;
    auto add = [&](const std::string& rule, bool pass, const std::string& detail = "") {
        report.rules.push_back({rule, pass, detail});
        if (!quiet)
            std::printf("[%s] %s%s%s\n", pass ? "pass" : "FAIL", rule.c_str(),
                        detail.empty() ? "" : ": ", detail.c_str());
    };

    ScenarioSpec spec = load_scenario(scenario_path);

    for (int i = 0; i < kNumUnitKinds; ++i) {
        if (!spec.included[i]) continue;
        UnitKind k = static_cast<UnitKind>(i);
        std::vector<Violation> v = validate_unit(spec.units[i]);
        std::string rule = std::string("unit ") + kind_name(k) + " model invariants";
        if (v.empty()) {
            add(rule, true);
        } else {
            std::string detail = v.front().field + ": " + v.front().rule;
            if (v.size() > 1) detail += " (+" + std::to_string(v.size() - 1) + " more)";
            add(rule, false, detail);
        }
    }

    try {
        Profiles p = make_profiles(spec);
        std::vector<std::string> bad = validate_profiles(p);
        add("profiles schema", bad.empty(), bad.empty() ? "" : bad.front());
        try {
            int n = run_steps(spec, p);
            add("profiles horizon", true, std::to_string(n) + " steps");
        } catch (const FlexError& e) {
            add("profiles horizon", false, e.what());
        }
    } catch (const FlexError& e) {
        add("profiles schema", false, e.what());
    }

    try {
        validate_config(spec.mpc);
        add("mpc config", true);
    } catch (const FlexError& e) {
        add("mpc config", false, e.what());
    }

    return report;
}

}  // namespace flexblock
