#include "flexblock/profiles.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "flexblock/rng.hpp"

namespace flexblock {

namespace {

const char* kHeader = "minute,wind_mw,pv_mw,eload_mw,h2_mwh,gas_mwh";

double parse_field(const std::string& field, std::size_t row, std::size_t col) {
    const char* begin = field.c_str();
    char* end = nullptr;
    double value = std::strtod(begin, &end);
    if (end == begin || *end != '\0' || !std::isfinite(value)) {
        std::ostringstream oss;
        oss << "row " << row << ", column " << col + 1 << ": '" << field << "' is not a number";
        throw FlexError(Err::ParseError, oss.str());
    }
    return value;
}

void reject(const std::string& rule) { throw FlexError(Err::ValidationError, rule); }

}  // namespace

std::vector<std::string> validate_profiles(const Profiles& p) {
    std::vector<std::string> bad;
    if (p.step_minutes <= 0.0) bad.push_back("step must be positive");
    const std::size_t n = p.wind_mw.size();
    if (p.pv_mw.size() != n || p.eload_mw.size() != n || p.h2_demand_mwh.size() != n ||
        p.gas_supply_mwh.size() != n)
        bad.push_back("all series must have equal length");
    if (n == 0) bad.push_back("profiles must contain at least one step");

    auto nonneg = [&](const std::vector<double>& v, const char* name) {
        for (std::size_t t = 0; t < v.size(); ++t) {
            if (v[t] < 0.0) {
                std::ostringstream oss;
                oss << name << " must be non-negative (row " << t << " is " << v[t] << ")";
                bad.push_back(oss.str());
                return;
            }
        }
    };
    nonneg(p.wind_mw, "wind_mw");
    nonneg(p.pv_mw, "pv_mw");
    nonneg(p.eload_mw, "eload_mw");
    nonneg(p.h2_demand_mwh, "h2_mwh");
    nonneg(p.gas_supply_mwh, "gas_mwh");
    return bad;
}

Profiles load_profiles(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FlexError(Err::IoError, "cannot open '" + path + "'");

    std::string line;
    if (!std::getline(in, line)) throw FlexError(Err::ParseError, "empty file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kHeader)
        throw FlexError(Err::ParseError,
                        "header must be '" + std::string(kHeader) + "', got '" + line + "'");

    Profiles p;
    std::vector<double> minutes;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) {
            ++row;
            continue;
        }
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ',')) fields.push_back(field);
        if (line.back() == ',') fields.push_back("");
        if (fields.size() != 6) {
            std::ostringstream oss;
            oss << "row " << row << ": expected 6 columns, got " << fields.size();
            throw FlexError(Err::ParseError, oss.str());
        }
        minutes.push_back(parse_field(fields[0], row, 0));
        p.wind_mw.push_back(parse_field(fields[1], row, 1));
        p.pv_mw.push_back(parse_field(fields[2], row, 2));
        p.eload_mw.push_back(parse_field(fields[3], row, 3));
        p.h2_demand_mwh.push_back(parse_field(fields[4], row, 4));
        p.gas_supply_mwh.push_back(parse_field(fields[5], row, 5));
        ++row;
    }

    if (minutes.empty()) reject("profiles must contain at least one step");
    if (minutes.size() >= 2) {
        double step = minutes[1] - minutes[0];
        if (step <= 0.0) reject("time column must be strictly increasing");
        for (std::size_t t = 1; t < minutes.size(); ++t) {
            if (std::abs(minutes[t] - minutes[t - 1] - step) > 1e-9)
                reject("time column must advance by a constant step");
        }
        p.step_minutes = step;
    }

    std::vector<std::string> bad = validate_profiles(p);
    if (!bad.empty()) reject(bad.front());
    return p;
}

void save_profiles(const std::string& path, const Profiles& p) {
    std::vector<std::string> bad = validate_profiles(p);
    if (!bad.empty()) reject(bad.front());

    std::ofstream out(path);
    if (!out) throw FlexError(Err::IoError, "cannot write '" + path + "'");
    out << kHeader << "\n";
    char buf[512];
    for (std::size_t t = 0; t < p.size(); ++t) {
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                      static_cast<double>(t) * p.step_minutes, p.wind_mw[t], p.pv_mw[t],
                      p.eload_mw[t], p.h2_demand_mwh[t], p.gas_supply_mwh[t]);
        out << buf;
    }
}

Profiles synthesize_profiles(const SynthSpec& spec) {
    if (spec.steps <= 0 || spec.step_minutes <= 0.0)
        reject("synthesis needs a positive length and step");

    const int n = spec.steps;
    const double step_h = spec.step_minutes / 60.0;
    const int steps_per_day = std::max(1, static_cast<int>(std::lround(24.0 / step_h)));
    const int days = n / steps_per_day + 2;

    // Independent sub-streams so one series never shifts another.
    SplitMix64 wind_rng(spec.seed ^ 0x77696e64ULL);
    SplitMix64 pv_rng(spec.seed ^ 0x7076ULL);
    SplitMix64 load_rng(spec.seed ^ 0x6c6f6164ULL);
    SplitMix64 h2_rng(spec.seed ^ 0x6832ULL);

    // Daily wind regimes: mean level plus occasional calm nights.
    std::vector<double> wind_level(static_cast<std::size_t>(days));
    std::vector<bool> calm_night(static_cast<std::size_t>(days));
    for (int d = 0; d < days; ++d) {
        wind_level[static_cast<std::size_t>(d)] = wind_rng.uniform(0.15, 0.85);
        calm_night[static_cast<std::size_t>(d)] = wind_rng.next_double() < 0.5;
    }
    std::vector<double> pv_weather(static_cast<std::size_t>(days));
    for (int d = 0; d < days; ++d) pv_weather[static_cast<std::size_t>(d)] = pv_rng.uniform(0.35, 1.0);

    Profiles p;
    p.step_minutes = spec.step_minutes;
    p.wind_mw.resize(static_cast<std::size_t>(n));
    p.pv_mw.resize(static_cast<std::size_t>(n));
    p.eload_mw.resize(static_cast<std::size_t>(n));
    p.h2_demand_mwh.resize(static_cast<std::size_t>(n));
    p.gas_supply_mwh.assign(static_cast<std::size_t>(n), spec.gas_supply_mwh_per_step);

    const double h2_phase = h2_rng.uniform(0.0, 6.283185307179586);

    double wind_x = wind_level[0];
    for (int t = 0; t < n; ++t) {
        const double hour = static_cast<double>(t) * step_h;
        const double h = std::fmod(hour, 24.0);
        const int d = static_cast<int>(hour / 24.0);
        const std::size_t du = static_cast<std::size_t>(d);

        // Wind: AR(1) around the daily level, optionally calmed at night.
        wind_x = 0.98 * wind_x + 0.02 * wind_level[du] + 0.035 * wind_rng.normal();
        double night = 1.0;
        if (calm_night[du]) {
            if (h >= 23.0 || h < 5.0)
                night = 0.04;
            else if (h < 7.0)
                night = 0.04 + 0.96 * (h - 5.0) / 2.0;  // dawn ramp
            else if (h >= 21.0)
                night = 1.0 - 0.96 * (h - 21.0) / 2.0;  // dusk ramp
        }
        p.wind_mw[static_cast<std::size_t>(t)] =
            spec.wind_peak_mw * std::clamp(wind_x, 0.0, 1.0) * night;

        // PV: zero outside (6h, 18h), sinusoidal midday peak, daily weather.
        double solar = 0.0;
        if (h > 6.0 && h < 18.0) solar = std::pow(std::sin(3.141592653589793 * (h - 6.0) / 12.0), 1.3);
        double flicker = 1.0 + 0.05 * pv_rng.normal();
        p.pv_mw[static_cast<std::size_t>(t)] =
            spec.pv_peak_mw * solar * pv_weather[du] * std::clamp(flicker, 0.0, 1.2);

        // Electric load: base plus morning and evening peaks.
        auto bump = [](double x, double center, double width) {
            double z = (x - center) / width;
            return std::exp(-0.5 * z * z);
        };
        double shape = 0.6 * bump(h, 9.0, 1.8) + 1.0 * bump(h, 19.5, 2.2);
        double wobble = 1.0 + 0.03 * load_rng.normal();
        p.eload_mw[static_cast<std::size_t>(t)] = std::max(
            0.0, (spec.eload_base_mw + (spec.eload_peak_mw - spec.eload_base_mw) * shape) * wobble);

        // Hydrogen demand: slow three-day cycle with light noise.
        double cycle = 1.0 + spec.h2_demand_swing * std::sin(6.283185307179586 * hour / 72.0 + h2_phase);
        double jitter = 1.0 + 0.05 * h2_rng.normal();
        p.h2_demand_mwh[static_cast<std::size_t>(t)] =
            std::max(0.0, spec.h2_demand_mean_mwh * cycle * jitter);
    }
    return p;
}

Profiles scale_penetration(const Profiles& profiles, double ratio) {
    if (ratio < 0.0) reject("penetration ratio must be non-negative");
    Profiles out = profiles;
    const double k = 1.0 + ratio;
    for (double& v : out.wind_mw) v *= k;
    for (double& v : out.pv_mw) v *= k;
    return out;
}

}  // namespace flexblock
