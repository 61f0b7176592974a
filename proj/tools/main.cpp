#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "scpdp/commands.hpp"
#include "scpdp/version.hpp"

namespace {

std::vector<int> parse_sizes(const std::string& spec) {
  std::vector<int> sizes;
  if (spec.empty()) return sizes;
  std::string cur;
  auto flush = [&]() {
    if (cur.empty()) return;
    size_t dots = cur.find("..");
    if (dots != std::string::npos) {
      int lo = std::stoi(cur.substr(0, dots));
      int hi = std::stoi(cur.substr(dots + 2));
      for (int k = lo; k <= hi; ++k) sizes.push_back(k);
    } else {
      sizes.push_back(std::stoi(cur));
    }
    cur.clear();
  };
  for (char c : spec) {
    if (c == ',') {
      flush();
    } else {
      cur += c;
    }
  }
  flush();
  return sizes;
}

uint64_t parse_hex(const std::string& s) {
  std::string t = s;
  if (t.rfind("0x", 0) == 0 || t.rfind("0X", 0) == 0) t = t.substr(2);
  return std::stoull(t, nullptr, 16);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dual-rail self-checking gate family: netlist compiler, "
               "simulator and stuck-at fault campaign engine"};
  app.set_version_flag("--version", std::string(scpdp::kToolVersion));
  app.require_subcommand(1);

  // verify gates
  auto* verify = app.add_subcommand("verify", "Verification procedures");
  verify->require_subcommand(1);
  verify->add_subcommand("gates",
                         "Check truth tables, derivative identities and the "
                         "per-gate single-fault sweep");

  // sbox emit|verify
  auto* sbox = app.add_subcommand("sbox", "Composite-field S-box generator");
  sbox->require_subcommand(1);
  auto* sbox_emit = sbox->add_subcommand("emit", "Write the S-box netlist");
  std::string sbox_out;
  sbox_emit->add_option("--out", sbox_out, "Output file (default stdout)");
  sbox->add_subcommand("verify",
                       "Check the generated netlist against the arithmetic "
                       "reference on all 256 inputs");

  // campaign
  auto* campaign = app.add_subcommand("campaign", "Run a fault campaign");
  scpdp::CampaignRunOptions opt;
  std::string polarity = "sa0", mode = "random", sizes_spec = "1..14";
  std::string input_policy = "random";
  campaign->add_option("--netlist", opt.netlist_ref,
                       "Netlist path or builtin 'sbox'");
  campaign->add_option("--polarity", polarity, "sa0 | sa1")
      ->check(CLI::IsMember({"sa0", "sa1"}));
  campaign->add_option("--mode", mode, "random | burst")
      ->check(CLI::IsMember({"random", "burst"}));
  campaign->add_option("--trials", opt.total_trials,
                       "Total trials, split evenly over the fault sizes");
  campaign->add_option("--sizes", sizes_spec,
                       "Fault sizes, e.g. '1..14' or '1,2,8'");
  campaign->add_option("--seed", opt.seed, "Master seed");
  campaign->add_option("--workers", opt.workers,
                       "Worker threads (does not affect results)");
  campaign->add_flag("--single-exhaustive", opt.single_exhaustive,
                     "Exhaustive single-fault sweep instead of a random "
                     "campaign");
  campaign->add_option("--out", opt.out_path, "Summary report file");
  campaign->add_option("--format", opt.format, "csv | json")
      ->check(CLI::IsMember({"csv", "json"}));
  campaign->add_option("--trial-log", opt.trial_log_path,
                       "Per-trial CSV (opt-in; large)");
  campaign->add_option("--input-policy", input_policy, "random | sweep")
      ->check(CLI::IsMember({"random", "sweep"}));
  campaign->set_config("--config", "",
                       "Config file with 'key = value' lines mirroring the "
                       "flags; flags override");

  // area
  auto* area = app.add_subcommand("area", "Technology-independent area report");
  std::string area_netlist = "sbox";
  bool compare_dmr = false;
  area->add_option("--netlist", area_netlist, "Netlist path or builtin 'sbox'");
  area->add_flag("--compare-dmr", compare_dmr,
                 "Also print the naive DMR baseline estimate");

  // simulate
  auto* simulate = app.add_subcommand("simulate", "One-shot evaluation");
  std::string sim_netlist = "sbox", sim_input = "0";
  std::vector<std::string> sim_faults;
  simulate->add_option("--netlist", sim_netlist,
                       "Netlist path or builtin 'sbox'");
  simulate->add_option("--input", sim_input, "Input bits as hex (LSB = first input)");
  simulate->add_option("--fault", sim_faults,
                       "Stuck-at fault '<site>:<0|1>' (repeatable)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? scpdp::kExitOk : scpdp::kExitUsage;
  }

  try {
    if (verify->parsed()) {
      return scpdp::cmd_verify_gates(std::cout);
    }
    if (sbox->parsed()) {
      if (sbox_emit->parsed()) return scpdp::cmd_sbox_emit(std::cout, sbox_out);
      return scpdp::cmd_sbox_verify(std::cout);
    }
    if (campaign->parsed()) {
      opt.polarity = polarity == "sa1" ? scpdp::Polarity::StuckAt1
                                       : scpdp::Polarity::StuckAt0;
      opt.mode = mode == "burst" ? scpdp::CampaignMode::Burst
                                 : scpdp::CampaignMode::Random;
      opt.sizes = parse_sizes(sizes_spec);
      opt.input_policy = input_policy == "sweep"
                             ? scpdp::InputPolicy::ExhaustiveSweep
                             : scpdp::InputPolicy::RandomPerTrial;
      return scpdp::cmd_campaign(std::cout, opt);
    }
    if (area->parsed()) {
      return scpdp::cmd_area(std::cout, area_netlist, compare_dmr);
    }
    if (simulate->parsed()) {
      scpdp::SimulateOptions s;
      s.netlist_ref = sim_netlist;
      s.input_bits = parse_hex(sim_input);
      s.faults = sim_faults;
      return scpdp::cmd_simulate(std::cout, s);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return scpdp::kExitUsage;
  }
  return scpdp::kExitUsage;
}
