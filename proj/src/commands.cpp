#include "scpdp/commands.hpp"

#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "scpdp/area.hpp"
#include "scpdp/dualrail.hpp"
#include "scpdp/gf.hpp"
#include "scpdp/report.hpp"
#include "scpdp/sbox.hpp"

namespace scpdp {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << data;
}

std::string table_bits(const BdTable& t) {
  std::string s;
  for (bool b : t.rows) s += b ? '1' : '0';
  return s;
}

}  // namespace

SingleRailNetlist load_netlist(const std::string& ref) {
  if (ref == "sbox") return build_sbox_netlist();
  return parse_netlist(read_file(ref));
}

int cmd_verify_gates(std::ostream& out, const WiringTable& wiring) {
  bool ok = true;
  out << "truth tables\n";
  for (GateKind k : kAllGateKinds) {
    auto table = gate_truth_table(k, wiring);
    bool pass = gate_truth_check(k, wiring);
    out << "  " << to_string(k) << "  ";
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) {
        RailPair p = table[a * 2 + b];
        out << a << b << "->"
            << (p.is_valid() ? (p.value() ? "1" : "0") : "X") << ' ';
      }
    }
    out << (pass ? " pass" : " FAIL") << '\n';
    if (!pass) {
      ok = false;
      for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
          RailPair p = table[a * 2 + b];
          RailPair want = RailPair::encode(gate_fn(k, a, b));
          if (p != want) {
            out << "    counterexample: a=" << a << " b=" << b << " got ("
                << p.hi << "," << p.lo << ") want (" << want.hi << ","
                << want.lo << ")\n";
          }
        }
      }
    }
  }

  out << "derivative tables (d<rail>/d<input> over the free rails)\n";
  for (GateKind k : kAllGateKinds) {
    for (int rail = 0; rail < 2; ++rail) {
      out << "  " << to_string(k) << (rail == 0 ? "  O    " : "  O_bar");
      for (Rail wrt : kAllRails) {
        BdTable t = boolean_difference(k, rail, wrt, wiring);
        out << "  d/d" << to_string(wrt) << '=' << table_bits(t);
      }
      out << '\n';
    }
    // Structural independence: the O cone never reads A, the O_bar cone
    // never reads A_bar.
    bool indep = boolean_difference(k, 0, Rail::A, wiring).constant(false) &&
                 boolean_difference(k, 1, Rail::Abar, wiring).constant(false);
    out << "  " << to_string(k) << "  dO/dA=0 and dO_bar/dA_bar=0  "
        << (indep ? "pass" : "FAIL") << '\n';
    if (!indep) ok = false;
  }

  out << "XOR derivative identities\n";
  for (const BdIdentity& id : xor_bd_identities(wiring)) {
    out << "  " << id.name << " = " << id.formula;
    if (id.expected_when_complementary) {
      out << " (= " << (*id.expected_when_complementary ? 1 : 0)
          << " with the untouched pair complementary)";
    }
    out << "  " << (id.holds() ? "pass" : "FAIL") << '\n';
    if (!id.holds()) {
      ok = false;
      out << "    counterexample: table " << table_bits(id.table) << '\n';
    }
  }

  out << "single stuck-at exhaustive (16 sites x 2 polarities x 4 inputs)\n";
  for (GateKind k : kAllGateKinds) {
    GateFaultMatrix m = single_fault_exhaustive_gate(k, wiring);
    OutcomeCounts t = m.totals();
    out << "  " << to_string(k) << "  trials " << t.total() << "  masked "
        << t.masked << "  detected " << t.detected << "  sdc " << t.sdc
        << "  " << (t.sdc == 0 ? "pass" : "FAIL") << '\n';
    for (const GateSdcCase& c : m.sdc_cases) {
      ok = false;
      out << "    sdc: site " << to_string(c.site) << " stuck-at-"
          << (c.stuck1 ? 1 : 0) << " input a=" << c.a << " b=" << c.b << '\n';
    }
  }

  out << (ok ? "all gate checks passed\n" : "gate checks FAILED\n");
  return ok ? kExitOk : kExitVerifyFail;
}

int cmd_sbox_emit(std::ostream& out, const std::string& out_path) {
  std::string text = serialize(build_sbox_netlist());
  if (out_path.empty()) {
    out << text;
  } else {
    write_file(out_path, text);
    out << "wrote " << out_path << '\n';
  }
  return kExitOk;
}

int cmd_sbox_verify(std::ostream& out, const SingleRailNetlist* netlist) {
  SingleRailNetlist n = netlist ? *netlist : build_sbox_netlist();
  if (n.inputs().size() != 8 || n.outputs().size() != 8) {
    out << "netlist is not 8-in/8-out\n";
    return kExitVerifyFail;
  }
  int matches = 0;
  bool seen[256] = {};
  for (int x = 0; x < 256; ++x) {
    std::vector<bool> in(8);
    for (int i = 0; i < 8; ++i) in[i] = x >> i & 1;
    auto bits = n.simulate(in);
    int y = 0;
    for (int i = 0; i < 8; ++i) y |= bits[i] << i;
    int want = gf::canonical_sbox(static_cast<uint8_t>(x));
    if (y != want) {
      out << "mismatch at input 0x" << std::hex << std::setw(2)
          << std::setfill('0') << x << ": got 0x" << std::setw(2) << y
          << " want 0x" << std::setw(2) << want << std::dec << '\n';
      return kExitVerifyFail;
    }
    seen[y] = true;
    ++matches;
  }
  for (int y = 0; y < 256; ++y) {
    if (!seen[y]) {
      out << "not a permutation: value 0x" << std::hex << y << std::dec
          << " never produced\n";
      return kExitVerifyFail;
    }
  }
  out << matches << "/256 match\n";
  return kExitOk;
}

int cmd_campaign(std::ostream& out, const CampaignRunOptions& opt) {
  try {
    SingleRailNetlist n = load_netlist(opt.netlist_ref);
    DualRailNetlist d = expand_dual_rail(n);

    CoverageReport rep;
    std::vector<TrialRecord> log;
    std::vector<TrialRecord>* log_ptr =
        opt.trial_log_path.empty() ? nullptr : &log;
    std::vector<SdcRecord> sdc;
    if (opt.single_exhaustive) {
      ExhaustiveResult res = exhaustive_single_fault(d, opt.workers);
      rep = std::move(res.report);
      sdc = std::move(res.sdc_cases);
    } else {
      CampaignConfig cfg = CampaignConfig::with_total_trials(
          opt.total_trials, opt.polarity, opt.mode, opt.seed, opt.sizes);
      cfg.workers = opt.workers;
      cfg.input_policy = opt.input_policy;
      rep = run_campaign(d, cfg, log_ptr);
    }

    if (!opt.out_path.empty()) {
      write_file(opt.out_path, opt.format == "json" ? to_summary_json(rep)
                                                    : to_summary_csv(rep));
    }
    if (log_ptr) write_file(opt.trial_log_path, to_trial_csv(d, log));

    Stratum all = rep.aggregate();
    out << "sites " << rep.site_count << "  trials " << all.trials
        << "  masked " << all.counts.masked << "  detected "
        << all.counts.detected << "  sdc " << all.counts.sdc << '\n';
    for (const SdcRecord& r : sdc) {
      out << "sdc: site " << r.site << " stuck-at-" << (r.stuck1 ? 1 : 0)
          << " input 0x" << std::hex << r.input << std::dec << '\n';
    }
    out << "FC = " << format_fc_percent(all.fc()) << "%\n";
    return kExitOk;
  } catch (const std::invalid_argument& e) {
    out << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ParseError& e) {
    out << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::runtime_error& e) {
    out << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

int cmd_area(std::ostream& out, const std::string& netlist_ref,
             bool compare_dmr) {
  try {
    SingleRailNetlist n = load_netlist(netlist_ref);
    DualRailNetlist d = expand_dual_rail(n);
    AreaReport r = area_report(d);
    out << "gates: AND=" << r.gates_by_kind[0] << " OR=" << r.gates_by_kind[1]
        << " XOR=" << r.gates_by_kind[2] << "  G=" << r.scpdp_gates << '\n';
    out << "transistors: T = 8*G = " << r.transistors << '\n';
    out << "absorbed inverters: " << r.absorbed_inverters
        << " (0 cost), aliased buffers: " << r.aliased_buffers << '\n';
    if (compare_dmr) {
      int64_t base = baseline_cmos_transistors(n);
      out << "baseline single-rail CMOS estimate: " << base
          << " transistors (approximate)\n";
      out << "naive DMR estimate: " << dmr_estimate(n)
          << " transistors (2x baseline, comparator excluded, approximate)\n";
    }
    return kExitOk;
  } catch (const std::exception& e) {
    out << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

int cmd_simulate(std::ostream& out, const SimulateOptions& opt) {
  try {
    SingleRailNetlist n = load_netlist(opt.netlist_ref);
    DualRailNetlist d = expand_dual_rail(n);
    if (d.input_count() > 64) {
      out << "error: more than 64 inputs unsupported\n";
      return kExitUsage;
    }
    std::vector<InjectedFault> faults;
    for (const std::string& f : opt.faults) {
      size_t colon = f.rfind(':');
      if (colon == std::string::npos ||
          (f.substr(colon + 1) != "0" && f.substr(colon + 1) != "1")) {
        out << "error: fault must be <site>:<0|1>, got '" << f << "'\n";
        return kExitUsage;
      }
      auto site = parse_site(d, f.substr(0, colon));
      if (!site) {
        out << "error: unknown fault site '" << f.substr(0, colon) << "'\n";
        return kExitUsage;
      }
      faults.push_back({*site, f[colon + 1] == '1'});
    }
    std::vector<bool> in(d.input_count());
    for (size_t i = 0; i < in.size(); ++i) in[i] = opt.input_bits >> i & 1;
    auto pairs = simulate(d, in, faults);

    uint64_t value = 0;
    bool all_valid = true;
    for (size_t i = 0; i < pairs.size(); ++i) {
      if (!pairs[i].is_valid()) {
        all_valid = false;
      } else if (pairs[i].value()) {
        value |= uint64_t(1) << i;
      }
    }
    out << "inputs 0x" << std::hex << opt.input_bits << std::dec << '\n';
    for (size_t i = 0; i < pairs.size(); ++i) {
      out << "  out" << i << " = (" << pairs[i].hi << ',' << pairs[i].lo
          << ")" << (pairs[i].is_valid() ? "" : "  NON-VALID") << '\n';
    }
    if (all_valid) {
      out << "value 0x" << std::hex << value << std::dec << " (all pairs valid)\n";
    } else {
      out << "value INVALID (non-valid output pair present)\n";
    }
    return kExitOk;
  } catch (const std::exception& e) {
    out << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace scpdp
