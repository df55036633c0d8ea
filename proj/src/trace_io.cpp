#include "flexblock/trace_io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace flexblock {

namespace {

const char* kTraceHeader =
    "time_min,x_w,x_pv,x_b,x_h,x_f,"
    "p_gen_w,p_gen_pv,p_gen_b,p_load_b,p_gen_h,p_load_h,p_gen_f,w_w,w_pv,"
    "xi_w,xi_pv,xi_h,xi_f,shed_mw,spill_w_mwh,spill_pv_mwh,qp_status";

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

void write_trace_csv(const std::string& path, const DispatchTrace& trace) {
    std::ofstream out(path);
    if (!out) throw FlexError(Err::IoError, "cannot write '" + path + "'");
    out << kTraceHeader << "\n";
    for (const TraceStep& s : trace.steps) {
        out << fmt(s.t_min);
        for (int i = 0; i < kNx; ++i) out << ',' << fmt(s.x(i));
        for (int i = 0; i < kNu; ++i) out << ',' << fmt(s.u(i));
        for (int i = 0; i < kNd; ++i) out << ',' << fmt(s.d(i));
        out << ',' << fmt(s.shed_mw) << ',' << fmt(s.u(kUSpillWind)) << ','
            << fmt(s.u(kUSpillPv)) << ',' << static_cast<int>(s.status) << "\n";
    }
}

DispatchTrace read_trace_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FlexError(Err::IoError, "cannot open '" + path + "'");

    std::string line;
    if (!std::getline(in, line)) throw FlexError(Err::ParseError, "empty trace file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kTraceHeader)
        throw FlexError(Err::ParseError, "unexpected trace header '" + line + "'");

    DispatchTrace trace;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string field;
        std::vector<double> vals;
        while (std::getline(ss, field, ',')) {
            const char* begin = field.c_str();
            char* end = nullptr;
            double v = std::strtod(begin, &end);
            if (end == begin || *end != '\0') {
                std::ostringstream oss;
                oss << "row " << row << ": bad field '" << field << "'";
                throw FlexError(Err::ParseError, oss.str());
            }
            vals.push_back(v);
        }
        if (vals.size() != 23) {
            std::ostringstream oss;
            oss << "row " << row << ": expected 23 columns, got " << vals.size();
            throw FlexError(Err::ParseError, oss.str());
        }
        TraceStep s;
        s.t_min = vals[0];
        s.x = Eigen::Map<Eigen::VectorXd>(vals.data() + 1, kNx);
        s.u = Eigen::Map<Eigen::VectorXd>(vals.data() + 6, kNu);
        s.d = Eigen::Map<Eigen::VectorXd>(vals.data() + 15, kNd);
        s.shed_mw = vals[19];
        s.status = static_cast<StepStatus>(static_cast<int>(vals[22]));
        trace.steps.push_back(std::move(s));
        ++row;
    }
    if (trace.steps.size() >= 2)
        trace.dt_h = (trace.steps[1].t_min - trace.steps[0].t_min) / 60.0;
    return trace;
}

void write_trace_json(const std::string& path, const DispatchTrace& trace,
                      const std::string& scenario_name) {
    nlohmann::ordered_json j;
    j["scenario"] = scenario_name;
    j["step_minutes"] = trace.dt_h * 60.0;
    nlohmann::ordered_json steps = nlohmann::ordered_json::array();
    for (const TraceStep& s : trace.steps) {
        nlohmann::ordered_json row;
        row["time_min"] = s.t_min;
        row["x"] = std::vector<double>(s.x.data(), s.x.data() + s.x.size());
        row["u"] = std::vector<double>(s.u.data(), s.u.data() + s.u.size());
        row["d"] = std::vector<double>(s.d.data(), s.d.data() + s.d.size());
        row["eload_mw"] = s.eload_mw;
        row["shed_mw"] = s.shed_mw;
        row["surplus_mw"] = s.surplus_mw;
        row["served_load_mw"] = s.served_load_mw;
        row["h2_demand_mwh"] = s.h2_demand_mwh;
        row["h2_served_mwh"] = s.h2_served_mwh;
        row["qp_status"] = static_cast<int>(s.status);
        row["qp_kkt_residual"] = s.qp_kkt_residual;
        row["qp_iterations"] = s.qp_iterations;
        steps.push_back(std::move(row));
    }
    j["steps"] = std::move(steps);
    if (trace.final_x.size() == kNx)
        j["final_x"] = std::vector<double>(trace.final_x.data(), trace.final_x.data() + kNx);

    std::ofstream out(path);
    if (!out) throw FlexError(Err::IoError, "cannot write '" + path + "'");
    out << j.dump(2) << "\n";
}

void write_envelope_csv(const std::string& path, const Envelope& envelope) {
    std::ofstream out(path);
    if (!out) throw FlexError(Err::IoError, "cannot write '" + path + "'");
    out << "time_min,prov_ramp_up,prov_ramp_down,prov_power_up,prov_power_down,"
           "prov_energy_up,prov_energy_down,req_ramp_up,req_ramp_down,req_power_up,"
           "req_power_down,req_energy_up,req_energy_down\n";
    auto put = [&](const MarginPoint& m) {
        out << ',' << fmt(m.ramp_up_mw_per_min) << ',' << fmt(m.ramp_down_mw_per_min) << ','
            << fmt(m.power_up_mw) << ',' << fmt(m.power_down_mw) << ',' << fmt(m.energy_up_mwh)
            << ',' << fmt(m.energy_down_mwh);
    };
    for (const EnvelopePoint& pt : envelope.points) {
        out << fmt(pt.t_min);
        put(pt.provided);
        put(pt.required);
        out << "\n";
    }
}

}  // namespace flexblock
