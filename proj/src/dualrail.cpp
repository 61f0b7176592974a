#include "scpdp/dualrail.hpp"

#include <charconv>
#include <stdexcept>

namespace scpdp {

DualRailNetlist expand_dual_rail(const SingleRailNetlist& n) {
  DualRailNetlist d;
  d.source_hash_ = netlist_hash(n);
  d.signal_pairs_.assign(n.signal_count(), {UINT32_MAX, UINT32_MAX});

  auto new_net = [&](const std::string& name) -> uint32_t {
    d.net_names_.push_back(name);
    return static_cast<uint32_t>(d.net_names_.size() - 1);
  };

  auto make_pair = [&](uint32_t sig) {
    uint32_t hi = new_net(n.name(sig) + ".hi");
    uint32_t lo = new_net(n.name(sig) + ".lo");
    d.signal_pairs_[sig] = {hi, lo};
  };

  // Constants get rail nets of their own so they remain faultable sites.
  for (uint32_t sig = 0; sig < n.signal_count(); ++sig) {
    if (n.is_const0(sig) || n.is_const1(sig)) {
      make_pair(sig);
      bool v = n.is_const1(sig);
      d.const_nets_.emplace_back(d.signal_pairs_[sig].first, v);
      d.const_nets_.emplace_back(d.signal_pairs_[sig].second, !v);
    }
  }
  for (uint32_t sig : n.inputs()) {
    make_pair(sig);
    d.input_pairs_.push_back(d.signal_pairs_[sig]);
  }

  for (uint32_t gi : n.topo_order()) {
    const NetGate& g = n.gates()[gi];
    auto a = d.signal_pairs_[g.in0];
    auto b = d.signal_pairs_[g.in1];
    switch (g.op) {
      case GateOp::Not:
        d.signal_pairs_[g.out] = {a.second, a.first};
        ++d.absorbed_inverters_;
        continue;
      case GateOp::Buf:
        d.signal_pairs_[g.out] = a;
        ++d.aliased_buffers_;
        continue;
      default: break;
    }
    GateKind kind;
    bool swap = false;
    switch (g.op) {
      case GateOp::And: kind = GateKind::And; break;
      case GateOp::Or: kind = GateKind::Or; break;
      case GateOp::Xor: kind = GateKind::Xor; break;
      case GateOp::Nand: kind = GateKind::And, swap = true; break;
      case GateOp::Nor: kind = GateKind::Or, swap = true; break;
      default: kind = GateKind::Xor, swap = true; break;
    }
    make_pair(g.out);
    auto [hi, lo] = d.signal_pairs_[g.out];
    DualGate inst{kind,      a.first, a.second,          b.first,
                  b.second,  swap ? lo : hi,   swap ? hi : lo};
    d.gates_.push_back(inst);
    if (swap) ++d.absorbed_inverters_;
  }

  for (uint32_t sig : n.outputs()) {
    d.output_pairs_.push_back(d.signal_pairs_[sig]);
  }
  return d;
}

std::vector<CircuitSite> enumerate_fault_sites(const DualRailNetlist& d) {
  std::vector<CircuitSite> sites;
  sites.reserve(d.site_count());
  for (uint32_t i = 0; i < d.net_count(); ++i) {
    sites.push_back({CircuitSite::Net, i, 0});
  }
  for (uint32_t g = 0; g < d.gates().size(); ++g) {
    for (uint8_t node = 0; node < 10; ++node) {
      sites.push_back({CircuitSite::GateNode, g, node});
    }
  }
  return sites;
}

size_t site_index(const DualRailNetlist& d, const CircuitSite& s) {
  if (s.kind == CircuitSite::Net) return s.id;
  return d.net_count() + size_t(s.id) * 10 + s.node;
}

std::string site_name(const DualRailNetlist& d, const CircuitSite& s) {
  if (s.kind == CircuitSite::Net) return d.net_names()[s.id];
  LocalSite local = static_cast<LocalSite>(kGateInternalFirst + s.node);
  return "g" + std::to_string(s.id) + "." + std::string(to_string(local));
}

std::optional<CircuitSite> parse_site(const DualRailNetlist& d,
                                      std::string_view text) {
  for (uint32_t i = 0; i < d.net_count(); ++i) {
    if (d.net_names()[i] == text) return CircuitSite{CircuitSite::Net, i, 0};
  }
  if (text.size() > 1 && text[0] == 'g') {
    size_t dot = text.find('.');
    if (dot != std::string_view::npos) {
      uint32_t gate = 0;
      auto [p, ec] =
          std::from_chars(text.data() + 1, text.data() + dot, gate);
      if (ec == std::errc() && p == text.data() + dot &&
          gate < d.gates().size()) {
        if (auto local = local_site_from_string(text.substr(dot + 1))) {
          int node = static_cast<int>(*local) - kGateInternalFirst;
          if (node >= 0 && node < 10) {
            return CircuitSite{CircuitSite::GateNode, gate,
                               static_cast<uint8_t>(node)};
          }
        }
      }
    }
  }
  // Bare index into the enumeration.
  size_t idx = 0;
  auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), idx);
  if (ec == std::errc() && p == text.data() + text.size() &&
      idx < d.site_count()) {
    if (idx < d.net_count()) {
      return CircuitSite{CircuitSite::Net, static_cast<uint32_t>(idx), 0};
    }
    size_t rel = idx - d.net_count();
    return CircuitSite{CircuitSite::GateNode, static_cast<uint32_t>(rel / 10),
                       static_cast<uint8_t>(rel % 10)};
  }
  return std::nullopt;
}

DualRailSimulator::DualRailSimulator(const DualRailNetlist& d)
    : d_(d),
      net_val_(d.net_count(), 0),
      net_ovr_(d.net_count(), -1),
      gate_s0_(d.gates().size(), 0),
      gate_s1_(d.gates().size(), 0) {}

void DualRailSimulator::set_faults(std::span<const InjectedFault> faults) {
  for (const InjectedFault& f : faults) {
    if (f.site.kind == CircuitSite::Net) {
      if (f.site.id >= net_ovr_.size()) {
        throw std::invalid_argument("fault on unknown net");
      }
      net_ovr_[f.site.id] = f.stuck1 ? 1 : 0;
      touched_nets_.push_back(f.site.id);
    } else {
      if (f.site.id >= gate_s0_.size() || f.site.node >= 10) {
        throw std::invalid_argument("fault on unknown gate node");
      }
      (f.stuck1 ? gate_s1_ : gate_s0_)[f.site.id] |= uint16_t(1) << f.site.node;
      touched_gates_.push_back(f.site.id);
    }
  }
}

void DualRailSimulator::clear_faults() {
  for (uint32_t n : touched_nets_) net_ovr_[n] = -1;
  for (uint32_t g : touched_gates_) gate_s0_[g] = gate_s1_[g] = 0;
  touched_nets_.clear();
  touched_gates_.clear();
}

namespace {

inline uint8_t with_override(uint8_t v, int8_t ovr) {
  return ovr < 0 ? v : static_cast<uint8_t>(ovr);
}

}  // namespace

void DualRailSimulator::run_inplace(uint64_t input_bits) {
  const auto& inputs = d_.input_pairs();
  for (size_t i = 0; i < inputs.size(); ++i) {
    uint8_t b = (input_bits >> i) & 1;
    auto [hi, lo] = inputs[i];
    net_val_[hi] = with_override(b, net_ovr_[hi]);
    net_val_[lo] = with_override(!b, net_ovr_[lo]);
  }
  for (auto [net, v] : d_.const_nets()) {
    net_val_[net] = with_override(v, net_ovr_[net]);
  }
  const auto& gates = d_.gates();
  for (size_t g = 0; g < gates.size(); ++g) {
    const DualGate& inst = gates[g];
    RailPair a{net_val_[inst.a_hi] != 0, net_val_[inst.a_lo] != 0};
    RailPair b{net_val_[inst.b_hi] != 0, net_val_[inst.b_lo] != 0};
    RailPair out;
    if ((gate_s0_[g] | gate_s1_[g]) == 0) {
      out = eval_gate(inst.kind, a, b);
    } else {
      LocalFaultSet f;
      f.stuck0 = uint16_t(gate_s0_[g] << kGateInternalFirst);
      f.stuck1 = uint16_t(gate_s1_[g] << kGateInternalFirst);
      out = eval_gate(inst.kind, a, b, f);
    }
    net_val_[inst.out_o] = with_override(out.hi, net_ovr_[inst.out_o]);
    net_val_[inst.out_obar] = with_override(out.lo, net_ovr_[inst.out_obar]);
  }
}

std::vector<RailPair> DualRailSimulator::run(const std::vector<bool>& inputs) {
  if (inputs.size() != d_.input_count()) {
    throw std::invalid_argument("simulate: expected " +
                                std::to_string(d_.input_count()) +
                                " input bits");
  }
  if (inputs.size() > 64) {
    throw std::invalid_argument("simulate: more than 64 inputs unsupported");
  }
  uint64_t bits = 0;
  for (size_t i = 0; i < inputs.size(); ++i) {
    if (inputs[i]) bits |= uint64_t(1) << i;
  }
  run_inplace(bits);
  std::vector<RailPair> out(d_.output_count());
  for (size_t i = 0; i < out.size(); ++i) out[i] = output_pair(i);
  return out;
}

RailPair DualRailSimulator::output_pair(size_t i) const {
  auto [hi, lo] = d_.output_pairs()[i];
  return {net_val_[hi] != 0, net_val_[lo] != 0};
}

RailPair DualRailSimulator::signal_pair(uint32_t signal) const {
  auto [hi, lo] = d_.signal_pairs()[signal];
  return {net_val_[hi] != 0, net_val_[lo] != 0};
}

std::vector<RailPair> simulate(const DualRailNetlist& d,
                               const std::vector<bool>& inputs,
                               std::span<const InjectedFault> faults) {
  DualRailSimulator sim(d);
  sim.set_faults(faults);
  return sim.run(inputs);
}

namespace {

std::vector<bool> bits_of(uint64_t v, size_t n) {
  std::vector<bool> out(n);
  for (size_t i = 0; i < n; ++i) out[i] = (v >> i) & 1;
  return out;
}

}  // namespace

std::optional<std::vector<bool>> check_equivalence(const SingleRailNetlist& n,
                                                   const DualRailNetlist& d,
                                                   uint64_t budget,
                                                   uint64_t seed) {
  size_t ni = n.inputs().size();
  DualRailSimulator sim(d);
  auto try_vector = [&](uint64_t v) -> bool {
    auto in = bits_of(v, ni);
    auto ref = n.simulate(in);
    sim.run_inplace(v);
    for (size_t i = 0; i < ref.size(); ++i) {
      RailPair p = sim.output_pair(i);
      if (!p.is_valid() || p.value() != ref[i]) return false;
    }
    return true;
  };
  if (ni <= 20) {
    for (uint64_t v = 0; v < (uint64_t(1) << ni); ++v) {
      if (!try_vector(v)) return bits_of(v, ni);
    }
  } else {
    uint64_t state = seed;
    for (uint64_t t = 0; t < budget; ++t) {
      state += 0x9E3779B97F4A7C15ULL;
      uint64_t z = state;
      z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
      z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
      z ^= z >> 31;
      uint64_t v = ni >= 64 ? z : (z & ((uint64_t(1) << ni) - 1));
      if (!try_vector(v)) return bits_of(v, ni);
    }
  }
  return std::nullopt;
}

std::optional<uint32_t> find_invalid_pair(const DualRailNetlist& d,
                                          const std::vector<bool>& inputs) {
  DualRailSimulator sim(d);
  sim.run(inputs);
  const auto& pairs = d.signal_pairs();
  for (uint32_t sig = 0; sig < pairs.size(); ++sig) {
    if (pairs[sig].first == UINT32_MAX) continue;
    if (!sim.signal_pair(sig).is_valid()) return sig;
  }
  return std::nullopt;
}

}  // namespace scpdp
