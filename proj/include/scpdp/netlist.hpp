#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace scpdp {

/// Gate kinds of the single-rail source format. The dual-rail expansion
/// lowers everything onto the three-gate family plus free rail swaps.
enum class GateOp : uint8_t { And, Or, Xor, Nand, Nor, Xnor, Not, Buf };

std::string_view to_string(GateOp op);
int arity(GateOp op);

struct ParseError : std::runtime_error {
  int line;
  ParseError(int line_, const std::string& msg);
};

struct NetGate {
  GateOp op;
  uint32_t out;
  uint32_t in0;
  uint32_t in1;  // == in0 for unary ops
  int line = 0;
};

/// Combinational single-rail netlist. Signals are interned to dense ids in
/// first-appearance order; the gate list admits a topological order, computed
/// once at validation. The reserved names const0/const1 may be read without a
/// declaration and simulate as fixed values.
class SingleRailNetlist {
 public:
  const std::vector<std::string>& signal_names() const { return names_; }
  const std::vector<uint32_t>& inputs() const { return inputs_; }
  const std::vector<uint32_t>& outputs() const { return outputs_; }
  const std::vector<NetGate>& gates() const { return gates_; }
  /// Gate indices in canonical topological order.
  const std::vector<uint32_t>& topo_order() const { return topo_; }

  const std::string& name(uint32_t id) const { return names_[id]; }
  bool is_const0(uint32_t id) const { return id == const0_; }
  bool is_const1(uint32_t id) const { return id == const1_; }

  size_t signal_count() const { return names_.size(); }

  /// Evaluates the netlist on one input vector (inputs().size() bits).
  std::vector<bool> simulate(const std::vector<bool>& input_bits) const;

  bool operator==(const SingleRailNetlist& other) const;

  friend SingleRailNetlist parse_netlist(std::string_view text);
  friend class NetlistBuilder;

 private:
  void validate_and_sort();

  std::vector<std::string> names_;
  std::unordered_map<std::string, uint32_t> ids_;
  std::vector<uint32_t> inputs_;
  std::vector<uint32_t> outputs_;
  std::vector<NetGate> gates_;
  std::vector<uint32_t> topo_;
  std::vector<int32_t> driver_;  // signal -> gate index, -2 input, -3 const
  uint32_t const0_ = UINT32_MAX;
  uint32_t const1_ = UINT32_MAX;
};

/// Parses the line-oriented text format:
///   input <name> [<name> ...]
///   output <name> [<name> ...]
///   gate <kind> <out> <in1> [<in2>]
/// Sections may interleave; `#` starts a comment. Throws ParseError with a
/// 1-based line number on malformed input, duplicate drivers, undeclared
/// signals, arity mismatches, or combinational cycles.
SingleRailNetlist parse_netlist(std::string_view text);

/// Emits inputs, outputs, then gates in topological order, one gate per line.
/// parse(serialize(n)) == n.
std::string serialize(const SingleRailNetlist& n);

/// Programmatic construction helper used by generators and tests. Emits the
/// text format internally so every built netlist goes through the same
/// validation as parsed ones.
class NetlistBuilder {
 public:
  std::string add_input(const std::string& name);
  void mark_output(const std::string& name);
  /// Adds a gate driving `out` (freshly named from `out` if it collides).
  std::string add_gate(GateOp op, const std::string& out, const std::string& a,
                       const std::string& b = "");
  std::string fresh(const std::string& prefix);
  /// XOR tree over terms (size >= 1); returns the root signal name. A single
  /// term is returned as-is.
  std::string xor_tree(const std::string& prefix,
                       const std::vector<std::string>& terms);
  /// AND tree over terms (size >= 1).
  std::string and_tree(const std::string& prefix,
                       const std::vector<std::string>& terms);

  SingleRailNetlist build();

 private:
  std::string unique(const std::string& base);
  std::vector<std::string> input_lines_, output_names_, gate_lines_;
  std::unordered_map<std::string, int> used_;
};

/// Deterministic non-cryptographic hash of the serialized form (FNV-1a 64),
/// rendered as 16 hex digits. Used to key reports to their netlist.
std::string netlist_hash(const SingleRailNetlist& n);

}  // namespace scpdp
