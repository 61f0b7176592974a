#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace scpdp {

/// A two-rail encoded logic value: the hi rail carries the nominal value, the
/// lo rail its complement. (0,1) encodes logical 0, (1,0) encodes logical 1;
/// (0,0) and (1,1) are the non-valid codes that signal a detected fault.
struct RailPair {
  bool hi = false;
  bool lo = true;

  static constexpr RailPair encode(bool v) { return {v, !v}; }

  constexpr bool is_valid() const { return hi != lo; }

  /// Decoded logical value; meaningful only when is_valid().
  constexpr bool value() const { return hi; }

  friend constexpr bool operator==(const RailPair&, const RailPair&) = default;
};

/// Inversion is a rail swap; non-valid codes are fixed points.
constexpr RailPair rail_not(RailPair x) { return {x.lo, x.hi}; }

/// The three gate kinds of the family. NOT is not a kind; it is realized by
/// swapping rails at zero cost.
enum class GateKind : uint8_t { And = 0, Or = 1, Xor = 2 };

inline constexpr std::array<GateKind, 3> kAllGateKinds = {
    GateKind::And, GateKind::Or, GateKind::Xor};

std::string_view to_string(GateKind k);

constexpr bool gate_fn(GateKind k, bool a, bool b) {
  switch (k) {
    case GateKind::And: return a && b;
    case GateKind::Or: return a || b;
    default: return a != b;
  }
}

/// Selector naming one of the four input rails of a gate.
enum class Rail : uint8_t { A = 0, Abar = 1, B = 2, Bbar = 3 };

inline constexpr std::array<Rail, 4> kAllRails = {Rail::A, Rail::Abar, Rail::B,
                                                  Rail::Bbar};

std::string_view to_string(Rail r);

/// One output-rail expression: rail = NOT( NOT(p)&q | r&s ).
struct RailExpr {
  Rail p, q, r, s;

  constexpr bool reads(Rail x) const {
    return p == x || q == x || r == x || s == x;
  }
};

/// The fixed wiring of both output rails for all three gate kinds. Kept as a
/// value so tests can run the verification procedures against corrupted
/// tables.
struct WiringTable {
  // expr[kind][0] drives O, expr[kind][1] drives O_bar.
  RailExpr expr[3][2];

  constexpr const RailExpr& at(GateKind k, int out_rail) const {
    return expr[static_cast<int>(k)][out_rail];
  }
  constexpr RailExpr& at(GateKind k, int out_rail) {
    return expr[static_cast<int>(k)][out_rail];
  }
};

constexpr WiringTable default_wiring() {
  using enum Rail;
  WiringTable w{};
  // AND: O = !(!Bbar&Abar | Bbar&Bbar), O_bar = !(!A&A | A&B)
  w.expr[0][0] = {Bbar, Abar, Bbar, Bbar};
  w.expr[0][1] = {A, A, A, B};
  // OR: O = !(!Abar&Abar | Abar&Bbar), O_bar = !(!A&B | A&A)
  w.expr[1][0] = {Abar, Abar, Abar, Bbar};
  w.expr[1][1] = {A, B, A, A};
  // XOR: O = !(!Abar&B | Abar&Bbar), O_bar = !(!A&B | A&Bbar)
  w.expr[2][0] = {Abar, B, Abar, Bbar};
  w.expr[2][1] = {A, B, A, Bbar};
  return w;
}

inline constexpr WiringTable kWiring = default_wiring();

/// Stuck-at fault sites of a single gate, in the fixed enumeration order:
/// the four input rails, the five internal nodes of the O expression, the
/// five of the O_bar expression, then the two output rails. The output-rail
/// sites coincide physically with the final inverter nodes; they are kept as
/// distinct stem sites so the local count (4 + 10 + 2 = 16) lines up with the
/// circuit-level enumeration, where a gate contributes 10 internal sites and
/// its six surrounding rail nets are sites of their own.
enum class LocalSite : uint8_t {
  InA = 0,
  InAbar,
  InB,
  InBbar,
  OInv,     // NOT(p)
  OProd1,   // NOT(p)&q
  OProd2,   // r&s
  OSum,     // prod1|prod2
  OOut,     // final inversion
  ObarInv,
  ObarProd1,
  ObarProd2,
  ObarSum,
  ObarOut,
  RailO,
  RailObar,
};

inline constexpr int kLocalSiteCount = 16;
/// Contiguous run OInv..ObarOut used by the circuit-level enumeration.
inline constexpr int kGateInternalFirst = 4;
inline constexpr int kGateInternalCount = 10;

std::string_view to_string(LocalSite s);
std::optional<LocalSite> local_site_from_string(std::string_view name);

/// Set of stuck-at faults local to one gate, as bit masks over LocalSite.
/// If a site appears with both polarities, stuck-at-1 wins.
struct LocalFaultSet {
  uint16_t stuck0 = 0;
  uint16_t stuck1 = 0;

  void add(LocalSite s, bool stuck_value) {
    (stuck_value ? stuck1 : stuck0) |= uint16_t(1) << static_cast<int>(s);
  }
  constexpr bool empty() const { return (stuck0 | stuck1) == 0; }
};

/// Evaluates one gate on two rail pairs, node by node. Each node value is
/// overridden by its stuck polarity (if faulted) before anything downstream
/// consumes it; input-rail faults override the rail before either expression
/// reads it. All 16 rail-input combinations are defined; non-valid inputs
/// are legal.
RailPair eval_gate(GateKind kind, RailPair a, RailPair b,
                   const LocalFaultSet& faults = {},
                   const WiringTable& wiring = kWiring);

/// Fault-free truth table of a gate over the four valid input pairs, as the
/// decoded outputs for inputs 00, 01, 10, 11 (a is the high bit).
std::array<RailPair, 4> gate_truth_table(GateKind kind,
                                         const WiringTable& wiring = kWiring);

/// True iff the fault-free gate matches its Boolean function on all four
/// valid input pairs.
bool gate_truth_check(GateKind kind, const WiringTable& wiring = kWiring);

/// Boolean difference d(rail)/d(wrt) = f(wrt=0) XOR f(wrt=1), tabulated over
/// the remaining three rails, which are treated as free Boolean variables.
/// vars lists the remaining rails in Rail order; row index bit 2 assigns
/// vars[0], bit 1 vars[1], bit 0 vars[2].
struct BdTable {
  std::array<bool, 8> rows{};
  std::array<Rail, 3> vars{};
  Rail wrt = Rail::A;
  int out_rail = 0;  // 0 = O, 1 = O_bar

  bool constant(bool v) const;
  /// Value restricted to rows where `pair_hi` and `pair_lo` carry
  /// complementary values (both rails must be in vars); nullopt if the
  /// restriction is not constant.
  std::optional<bool> constant_when_complementary(Rail pair_hi,
                                                  Rail pair_lo) const;
};

BdTable boolean_difference(GateKind kind, int out_rail, Rail wrt,
                           const WiringTable& wiring = kWiring);

/// One verified derivative identity of the XOR gate: the exhaustively
/// computed table, the closed form it must equal row-for-row, and for the
/// two derivatives that reduce to a tautology in the single-fault context,
/// the constant they take when the untouched input pair is complementary.
struct BdIdentity {
  std::string name;      // e.g. "dO/dA_bar"
  BdTable table;
  std::string formula;   // rendered closed form
  bool matches_formula = false;
  std::optional<bool> expected_when_complementary;
  std::optional<bool> value_when_complementary;

  bool holds() const {
    return matches_formula &&
           value_when_complementary == expected_when_complementary;
  }
};

/// The eight XOR derivative identities, computed by enumeration.
std::vector<BdIdentity> xor_bd_identities(const WiringTable& wiring = kWiring);

/// Classification of a faulty simulation against the fault-free reference.
enum class FaultOutcome : uint8_t { Masked = 0, Detected = 1, Sdc = 2 };

std::string_view to_string(FaultOutcome o);

/// Detected if any actual pair is non-valid; else Masked if all pairs equal
/// the expected ones; else Sdc. Expects equal lengths and valid expected
/// pairs; throws std::invalid_argument otherwise.
FaultOutcome classify(const std::vector<RailPair>& expected,
                      const std::vector<RailPair>& actual);

struct OutcomeCounts {
  int64_t masked = 0;
  int64_t detected = 0;
  int64_t sdc = 0;

  int64_t total() const { return masked + detected + sdc; }
  void add(FaultOutcome o) {
    switch (o) {
      case FaultOutcome::Masked: ++masked; break;
      case FaultOutcome::Detected: ++detected; break;
      case FaultOutcome::Sdc: ++sdc; break;
    }
  }
  OutcomeCounts& operator+=(const OutcomeCounts& r) {
    masked += r.masked;
    detected += r.detected;
    sdc += r.sdc;
    return *this;
  }
};

struct GateSdcCase {
  LocalSite site;
  bool stuck1;
  bool a, b;
};

/// Result of exhaustive single-fault injection on one gate: 16 sites x 2
/// polarities x 4 valid inputs = 128 trials.
struct GateFaultMatrix {
  GateKind kind;
  OutcomeCounts cell[kLocalSiteCount][2];  // [site][stuck polarity]
  std::vector<GateSdcCase> sdc_cases;

  OutcomeCounts totals() const;
};

GateFaultMatrix single_fault_exhaustive_gate(GateKind kind,
                                             const WiringTable& wiring = kWiring);

}  // namespace scpdp
