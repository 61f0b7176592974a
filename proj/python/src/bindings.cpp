#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "scpdp/area.hpp"
#include "scpdp/dualrail.hpp"
#include "scpdp/faultsim.hpp"
#include "scpdp/gf.hpp"
#include "scpdp/netlist.hpp"
#include "scpdp/rail.hpp"
#include "scpdp/report.hpp"
#include "scpdp/sbox.hpp"
#include "scpdp/version.hpp"

namespace py = pybind11;
using namespace scpdp;

namespace {

GateKind kind_from(const std::string& s) {
  if (s == "and" || s == "AND") return GateKind::And;
  if (s == "or" || s == "OR") return GateKind::Or;
  if (s == "xor" || s == "XOR") return GateKind::Xor;
  throw std::invalid_argument("unknown gate kind '" + s + "'");
}

Rail rail_from(const std::string& s) {
  if (s == "A") return Rail::A;
  if (s == "A_bar") return Rail::Abar;
  if (s == "B") return Rail::B;
  if (s == "B_bar") return Rail::Bbar;
  throw std::invalid_argument("unknown rail '" + s + "'");
}

RailPair pair_from(std::pair<int, int> p) {
  return {p.first != 0, p.second != 0};
}

std::pair<int, int> pair_to(RailPair p) { return {p.hi ? 1 : 0, p.lo ? 1 : 0}; }

std::vector<InjectedFault> faults_from(const DualRailNetlist& d,
                                       const std::vector<std::pair<std::string, int>>& faults) {
  std::vector<InjectedFault> out;
  for (const auto& [name, pol] : faults) {
    auto site = parse_site(d, name);
    if (!site) throw std::invalid_argument("unknown fault site '" + name + "'");
    out.push_back({*site, pol != 0});
  }
  return out;
}

py::dict stratum_dict(const Stratum& s) {
  py::dict row;
  row["polarity"] = s.polarity;
  row["mode"] = s.mode;
  row["fault_size"] = s.fault_size;
  row["trials"] = s.trials;
  row["masked"] = s.counts.masked;
  row["detected"] = s.counts.detected;
  row["sdc"] = s.counts.sdc;
  row["fc"] = s.fc();
  return row;
}

py::dict report_dict(const CoverageReport& rep) {
  py::dict out;
  py::list strata;
  for (const Stratum& s : rep.strata) strata.append(stratum_dict(s));
  out["strata"] = strata;
  out["aggregate"] = stratum_dict(rep.aggregate());
  out["seed"] = rep.seed;
  out["netlist_hash"] = rep.netlist_hash;
  out["site_count"] = rep.site_count;
  out["tool_version"] = rep.tool_version;
  out["csv"] = to_summary_csv(rep);
  out["json"] = to_summary_json(rep);
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Dual-rail self-checking gate family: gate semantics, netlist "
            "compilation and stuck-at fault campaigns";
  m.attr("__version__") = kToolVersion;

  py::class_<SingleRailNetlist>(m, "Netlist")
      .def_static("parse",
                  [](const std::string& text) { return parse_netlist(text); })
      .def("serialize", [](const SingleRailNetlist& n) { return serialize(n); })
      .def("simulate", &SingleRailNetlist::simulate)
      .def_property_readonly("num_inputs",
                             [](const SingleRailNetlist& n) {
                               return n.inputs().size();
                             })
      .def_property_readonly("num_outputs",
                             [](const SingleRailNetlist& n) {
                               return n.outputs().size();
                             })
      .def_property_readonly("num_gates",
                             [](const SingleRailNetlist& n) {
                               return n.gates().size();
                             })
      .def("hash", [](const SingleRailNetlist& n) { return netlist_hash(n); })
      .def("expand", [](const SingleRailNetlist& n) {
        return expand_dual_rail(n);
      });

  py::class_<DualRailNetlist>(m, "DualNetlist")
      .def_property_readonly("num_gates",
                             [](const DualRailNetlist& d) {
                               return d.gates().size();
                             })
      .def_property_readonly("num_nets", &DualRailNetlist::net_count)
      .def_property_readonly("site_count", &DualRailNetlist::site_count)
      .def("site_names",
           [](const DualRailNetlist& d) {
             std::vector<std::string> names;
             for (const CircuitSite& s : enumerate_fault_sites(d)) {
               names.push_back(site_name(d, s));
             }
             return names;
           })
      .def(
          "simulate",
          [](const DualRailNetlist& d, const std::vector<bool>& inputs,
             const std::vector<std::pair<std::string, int>>& faults) {
            auto injected = faults_from(d, faults);
            auto pairs = simulate(d, inputs, injected);
            std::vector<std::pair<int, int>> out;
            for (RailPair p : pairs) out.push_back(pair_to(p));
            return out;
          },
          py::arg("inputs"),
          py::arg("faults") = std::vector<std::pair<std::string, int>>{})
      .def("area", [](const DualRailNetlist& d) {
        AreaReport r = area_report(d);
        py::dict out;
        out["and_gates"] = r.gates_by_kind[0];
        out["or_gates"] = r.gates_by_kind[1];
        out["xor_gates"] = r.gates_by_kind[2];
        out["scpdp_gates"] = r.scpdp_gates;
        out["transistors"] = r.transistors;
        out["absorbed_inverters"] = r.absorbed_inverters;
        out["aliased_buffers"] = r.aliased_buffers;
        return out;
      });

  m.def("eval_gate",
        [](const std::string& kind, std::pair<int, int> a, std::pair<int, int> b,
           const std::vector<std::pair<std::string, int>>& faults) {
          LocalFaultSet f;
          for (const auto& [name, pol] : faults) {
            auto site = local_site_from_string(name);
            if (!site) {
              throw std::invalid_argument("unknown local site '" + name + "'");
            }
            f.add(*site, pol != 0);
          }
          return pair_to(eval_gate(kind_from(kind), pair_from(a), pair_from(b), f));
        },
        py::arg("kind"), py::arg("a"), py::arg("b"),
        py::arg("faults") = std::vector<std::pair<std::string, int>>{});

  m.def("rail_not", [](std::pair<int, int> x) {
    return pair_to(rail_not(pair_from(x)));
  });

  m.def("gate_truth_check", [](const std::string& kind) {
    return gate_truth_check(kind_from(kind));
  });

  m.def("boolean_difference",
        [](const std::string& kind, const std::string& out_rail,
           const std::string& wrt) {
          int rail_idx = out_rail == "O" ? 0 : 1;
          BdTable t = boolean_difference(kind_from(kind), rail_idx, rail_from(wrt));
          std::vector<int> rows;
          for (bool b : t.rows) rows.push_back(b ? 1 : 0);
          return rows;
        });

  m.def("single_fault_exhaustive_gate", [](const std::string& kind) {
    GateFaultMatrix mtx = single_fault_exhaustive_gate(kind_from(kind));
    OutcomeCounts t = mtx.totals();
    py::dict out;
    out["trials"] = t.total();
    out["masked"] = t.masked;
    out["detected"] = t.detected;
    out["sdc"] = t.sdc;
    py::list cases;
    for (const GateSdcCase& c : mtx.sdc_cases) {
      py::dict row;
      row["site"] = std::string(to_string(c.site));
      row["stuck"] = c.stuck1 ? 1 : 0;
      row["a"] = c.a;
      row["b"] = c.b;
      cases.append(row);
    }
    out["sdc_cases"] = cases;
    return out;
  });

  m.def("canonical_sbox", [](int x) {
    if (x < 0 || x > 255) throw std::invalid_argument("byte expected");
    return static_cast<int>(gf::canonical_sbox(static_cast<uint8_t>(x)));
  });

  m.def("sbox_netlist", []() { return build_sbox_netlist(); });

  m.def("check_equivalence",
        [](const SingleRailNetlist& n, const DualRailNetlist& d,
           uint64_t budget) -> std::optional<std::vector<bool>> {
          return check_equivalence(n, d, budget);
        },
        py::arg("netlist"), py::arg("dual"), py::arg("budget") = 4096);

  m.def("trial_rng_next", [](uint64_t seed, uint64_t trial, int n) {
    SplitMix64 rng = trial_rng(seed, trial);
    std::vector<uint64_t> out;
    for (int i = 0; i < n; ++i) out.push_back(rng.next());
    return out;
  });

  m.def("run_campaign",
        [](const DualRailNetlist& d, const std::string& polarity,
           const std::string& mode, int64_t total_trials, uint64_t seed,
           std::vector<int> sizes, int workers) {
          CampaignConfig cfg = CampaignConfig::with_total_trials(
              total_trials,
              polarity == "sa1" ? Polarity::StuckAt1 : Polarity::StuckAt0,
              mode == "burst" ? CampaignMode::Burst : CampaignMode::Random,
              seed, std::move(sizes));
          cfg.workers = workers;
          return report_dict(run_campaign(d, cfg));
        },
        py::arg("dual"), py::arg("polarity") = "sa0",
        py::arg("mode") = "random", py::arg("total_trials") = 14000,
        py::arg("seed") = 0, py::arg("sizes") = std::vector<int>{},
        py::arg("workers") = 1);

  m.def("exhaustive_single_fault",
        [](const DualRailNetlist& d, int workers) {
          ExhaustiveResult res = exhaustive_single_fault(d, workers);
          py::dict out = report_dict(res.report);
          py::list cases;
          for (const SdcRecord& r : res.sdc_cases) {
            py::dict row;
            row["site"] = r.site;
            row["stuck"] = r.stuck1 ? 1 : 0;
            row["input"] = r.input;
            cases.append(row);
          }
          out["sdc_cases"] = cases;
          return out;
        },
        py::arg("dual"), py::arg("workers") = 1);
}
