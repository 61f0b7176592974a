#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "scpdp/netlist.hpp"
#include "scpdp/rail.hpp"

namespace scpdp {

/// One gate instance of the dual-rail circuit. out_o receives the O rail,
/// out_obar the O_bar rail; for absorbed nand/nor/xnor the two land on the
/// driven signal's lo/hi nets respectively (the recorded output swap).
struct DualGate {
  GateKind kind;
  uint32_t a_hi, a_lo;
  uint32_t b_hi, b_lo;
  uint32_t out_o, out_obar;
};

/// A stuck-at fault site of the dual-rail circuit: either a whole rail net
/// (stem fault, affecting every fanout branch) or one of the 10 internal
/// nodes of a gate instance.
struct CircuitSite {
  enum Kind : uint8_t { Net = 0, GateNode = 1 };
  Kind kind = Net;
  uint32_t id = 0;    // net id, or gate index
  uint8_t node = 0;   // internal node 0..9 (LocalSite OInv..ObarOut)

  friend bool operator==(const CircuitSite&, const CircuitSite&) = default;
};

struct InjectedFault {
  CircuitSite site;
  bool stuck1 = false;
};

/// Dual-rail form of a single-rail netlist: every signal owns (or aliases) a
/// pair of rail nets, every and/or/xor becomes one gate of the family, and
/// not/buf/nand/nor/xnor inversions are absorbed as recorded rail swaps.
class DualRailNetlist {
 public:
  const std::vector<std::string>& net_names() const { return net_names_; }
  const std::vector<DualGate>& gates() const { return gates_; }
  size_t net_count() const { return net_names_.size(); }
  size_t input_count() const { return input_pairs_.size(); }
  size_t output_count() const { return output_pairs_.size(); }
  const std::vector<std::pair<uint32_t, uint32_t>>& input_pairs() const {
    return input_pairs_;
  }
  const std::vector<std::pair<uint32_t, uint32_t>>& output_pairs() const {
    return output_pairs_;
  }
  /// (hi net, lo net) per source signal id, for internal-validity checks.
  const std::vector<std::pair<uint32_t, uint32_t>>& signal_pairs() const {
    return signal_pairs_;
  }
  const std::vector<std::pair<uint32_t, bool>>& const_nets() const {
    return const_nets_;
  }
  /// Inversions absorbed as rail swaps (not, nand, nor, xnor).
  int absorbed_inverters() const { return absorbed_inverters_; }
  /// buf gates absorbed as plain aliases.
  int aliased_buffers() const { return aliased_buffers_; }
  const std::string& source_hash() const { return source_hash_; }

  /// Total fault site count: one per rail net plus 10 per gate.
  size_t site_count() const { return net_count() + 10 * gates_.size(); }

  friend DualRailNetlist expand_dual_rail(const SingleRailNetlist& n);

 private:
  std::vector<std::string> net_names_;
  std::vector<DualGate> gates_;
  std::vector<std::pair<uint32_t, uint32_t>> input_pairs_;
  std::vector<std::pair<uint32_t, uint32_t>> output_pairs_;
  std::vector<std::pair<uint32_t, uint32_t>> signal_pairs_;
  std::vector<std::pair<uint32_t, bool>> const_nets_;
  int absorbed_inverters_ = 0;
  int aliased_buffers_ = 0;
  std::string source_hash_;
};

DualRailNetlist expand_dual_rail(const SingleRailNetlist& n);

/// Deterministic site enumeration: rail nets in creation order, then the 10
/// internal nodes of each gate in gate order.
std::vector<CircuitSite> enumerate_fault_sites(const DualRailNetlist& d);

/// Stable site index in the enumeration above.
size_t site_index(const DualRailNetlist& d, const CircuitSite& s);

/// Printable site id: the net name, or "g<idx>.<node>" with node one of
/// O.inv, O.prod1, O.prod2, O.sum, O.out and the Ob.* counterparts.
std::string site_name(const DualRailNetlist& d, const CircuitSite& s);

/// Parses a site id produced by site_name, or a bare decimal site index.
std::optional<CircuitSite> parse_site(const DualRailNetlist& d,
                                      std::string_view text);

/// Reusable simulation context. Fault injection state is kept dense for
/// speed and undone after each run, so one simulator can execute millions of
/// trials without reallocation. Not thread-safe; use one per worker.
class DualRailSimulator {
 public:
  explicit DualRailSimulator(const DualRailNetlist& d);

  void set_faults(std::span<const InjectedFault> faults);
  void clear_faults();

  /// Encodes each input bit b as the pair (b, !b), evaluates all gates in
  /// order, and returns the primary output pairs.
  std::vector<RailPair> run(const std::vector<bool>& inputs);

  /// run() variant without the return-value allocation; outputs are read
  /// back through output_pair().
  void run_inplace(uint64_t input_bits);

  RailPair output_pair(size_t i) const;
  RailPair signal_pair(uint32_t signal) const;
  const DualRailNetlist& netlist() const { return d_; }

 private:
  const DualRailNetlist& d_;
  std::vector<uint8_t> net_val_;
  std::vector<int8_t> net_ovr_;                 // -1 none, else stuck value
  std::vector<uint16_t> gate_s0_, gate_s1_;     // 10-bit masks, LocalSite-4
  std::vector<uint32_t> touched_nets_, touched_gates_;
};

/// Functional simulation entry point matching the engine's semantics.
std::vector<RailPair> simulate(const DualRailNetlist& d,
                               const std::vector<bool>& inputs,
                               std::span<const InjectedFault> faults = {});

/// Fault-free compilation soundness check: dual-rail outputs are valid and
/// their hi rails equal the single-rail simulation. Exhaustive when the
/// netlist has at most 20 inputs, otherwise `budget` seeded random vectors.
/// Returns the first counterexample input vector, or nullopt on success.
std::optional<std::vector<bool>> check_equivalence(const SingleRailNetlist& n,
                                                   const DualRailNetlist& d,
                                                   uint64_t budget = 4096,
                                                   uint64_t seed = 1);

/// Fault-free internal validity: every signal pair is valid for the given
/// input. Returns the first offending signal id, or nullopt.
std::optional<uint32_t> find_invalid_pair(const DualRailNetlist& d,
                                          const std::vector<bool>& inputs);

}  // namespace scpdp
