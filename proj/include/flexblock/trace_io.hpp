#pragma once

#include <string>

#include "flexblock/flexibility.hpp"
#include "flexblock/mpc.hpp"

namespace flexblock {

/// Write the dispatch trace CSV: one row per step in the fixed column order
/// time, 5 states, 9 controls, 4 disturbances, shed, spill_w, spill_pv,
/// qp_status. Doubles are printed with 17 significant digits.
void write_trace_csv(const std::string& path, const DispatchTrace& trace);

/// Read a trace CSV produced by write_trace_csv. Fields that are not part of
/// the CSV schema (served loads, solver diagnostics) come back zeroed.
DispatchTrace read_trace_csv(const std::string& path);

/// Full-detail JSON companion of the trace (adds served load and hydrogen
/// accounting that the CSV schema does not carry).
void write_trace_json(const std::string& path, const DispatchTrace& trace,
                      const std::string& scenario_name);

/// Envelope CSV: time plus the six provided and six required margin fields.
void write_envelope_csv(const std::string& path, const Envelope& envelope);

}  // namespace flexblock
