#pragma once

#include <string>
#include <vector>

#include "scpdp/faultsim.hpp"

namespace scpdp {

/// Summary CSV: header, one row per stratum, then the ALL aggregate row.
/// Columns: polarity,mode,fault_size,trials,masked,detected,sdc,fc_percent.
/// fc_percent carries three decimals so reports compare at that precision.
std::string to_summary_csv(const CoverageReport& rep);

/// JSON form: the same rows plus metadata (seed, netlist hash, site count,
/// tool version). to_summary_csv(from_summary_json(to_summary_json(r)))
/// reproduces to_summary_csv(r) byte for byte.
std::string to_summary_json(const CoverageReport& rep);

CoverageReport from_summary_json(const std::string& text);
CoverageReport from_summary_csv(const std::string& text);

/// Per-trial CSV (opt-in): trial,fault_size,input_hex,sites,outcome with
/// sites as ;-joined site ids.
std::string to_trial_csv(const DualRailNetlist& d,
                         const std::vector<TrialRecord>& rows);

std::string format_fc_percent(double fc);

}  // namespace scpdp
