#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "scpdp/faultsim.hpp"
#include "scpdp/netlist.hpp"
#include "scpdp/rail.hpp"

namespace scpdp {

/// Stable exit-code contract: 0 success, 1 verification failure,
/// 2 usage/input error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFail = 1;
inline constexpr int kExitUsage = 2;

/// Loads a netlist by reference: the builtin name "sbox" or a file path.
SingleRailNetlist load_netlist(const std::string& ref);

/// Gate-family verification: truth tables, derivative identities and
/// structural independence for every gate, and the per-gate exhaustive
/// single-fault sweep. Prints a pass/fail matrix; any failure prints a
/// counterexample and yields exit 1. Takes the wiring table as a parameter
/// so the failure path is testable against corrupted tables.
int cmd_verify_gates(std::ostream& out, const WiringTable& wiring = kWiring);

/// Writes the generated S-box netlist (to out_path, or `out` when empty).
int cmd_sbox_emit(std::ostream& out, const std::string& out_path);

/// 256-entry oracle equivalence plus bijectivity. A non-null netlist
/// overrides the generated one (used by the negative-control tests).
int cmd_sbox_verify(std::ostream& out,
                    const SingleRailNetlist* netlist = nullptr);

struct CampaignRunOptions {
  std::string netlist_ref = "sbox";
  Polarity polarity = Polarity::StuckAt0;
  CampaignMode mode = CampaignMode::Random;
  int64_t total_trials = 400000;
  std::vector<int> sizes;  // default 1..14
  uint64_t seed = 0;
  int workers = 1;
  bool single_exhaustive = false;
  std::string out_path;        // summary file; empty = stdout summary only
  std::string format = "csv";  // csv | json
  std::string trial_log_path;  // opt-in per-trial CSV
  InputPolicy input_policy = InputPolicy::RandomPerTrial;
};

int cmd_campaign(std::ostream& out, const CampaignRunOptions& opt);

int cmd_area(std::ostream& out, const std::string& netlist_ref,
             bool compare_dmr);

struct SimulateOptions {
  std::string netlist_ref;
  uint64_t input_bits = 0;
  std::vector<std::string> faults;  // "<site>:<0|1>"
};

int cmd_simulate(std::ostream& out, const SimulateOptions& opt);

}  // namespace scpdp
