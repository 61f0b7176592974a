#include "scpdp/rail.hpp"

#include <stdexcept>

namespace scpdp {

std::string_view to_string(GateKind k) {
  switch (k) {
    case GateKind::And: return "AND";
    case GateKind::Or: return "OR";
    default: return "XOR";
  }
}

std::string_view to_string(Rail r) {
  switch (r) {
    case Rail::A: return "A";
    case Rail::Abar: return "A_bar";
    case Rail::B: return "B";
    default: return "B_bar";
  }
}

namespace {

constexpr std::string_view kLocalSiteNames[kLocalSiteCount] = {
    "A",      "A_bar",  "B",      "B_bar",   "O.inv",    "O.prod1",
    "O.prod2", "O.sum",  "O.out",  "Ob.inv",  "Ob.prod1", "Ob.prod2",
    "Ob.sum",  "Ob.out", "O",      "Ob",
};

}  // namespace

std::string_view to_string(LocalSite s) {
  return kLocalSiteNames[static_cast<int>(s)];
}

std::optional<LocalSite> local_site_from_string(std::string_view name) {
  for (int i = 0; i < kLocalSiteCount; ++i) {
    if (kLocalSiteNames[i] == name) return static_cast<LocalSite>(i);
  }
  return std::nullopt;
}

std::string_view to_string(FaultOutcome o) {
  switch (o) {
    case FaultOutcome::Masked: return "masked";
    case FaultOutcome::Detected: return "detected";
    default: return "sdc";
  }
}

namespace {

inline bool apply_fault(bool v, int site, const LocalFaultSet& f) {
  if (f.stuck0 >> site & 1) v = false;
  if (f.stuck1 >> site & 1) v = true;
  return v;
}

inline bool eval_rail(const RailExpr& e, const bool rails[4],
                      const LocalFaultSet& f, int base) {
  bool inv = apply_fault(!rails[static_cast<int>(e.p)], base + 0, f);
  bool prod1 = apply_fault(inv && rails[static_cast<int>(e.q)], base + 1, f);
  bool prod2 = apply_fault(
      rails[static_cast<int>(e.r)] && rails[static_cast<int>(e.s)], base + 2, f);
  bool sum = apply_fault(prod1 || prod2, base + 3, f);
  return apply_fault(!sum, base + 4, f);
}

}  // namespace

RailPair eval_gate(GateKind kind, RailPair a, RailPair b,
                   const LocalFaultSet& faults, const WiringTable& wiring) {
  bool rails[4] = {a.hi, a.lo, b.hi, b.lo};
  for (int i = 0; i < 4; ++i) rails[i] = apply_fault(rails[i], i, faults);

  bool o = eval_rail(wiring.at(kind, 0), rails, faults,
                     static_cast<int>(LocalSite::OInv));
  bool ob = eval_rail(wiring.at(kind, 1), rails, faults,
                      static_cast<int>(LocalSite::ObarInv));
  o = apply_fault(o, static_cast<int>(LocalSite::RailO), faults);
  ob = apply_fault(ob, static_cast<int>(LocalSite::RailObar), faults);
  return {o, ob};
}

std::array<RailPair, 4> gate_truth_table(GateKind kind,
                                         const WiringTable& wiring) {
  std::array<RailPair, 4> t{};
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      t[a * 2 + b] =
          eval_gate(kind, RailPair::encode(a), RailPair::encode(b), {}, wiring);
    }
  }
  return t;
}

bool gate_truth_check(GateKind kind, const WiringTable& wiring) {
  auto t = gate_truth_table(kind, wiring);
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      if (t[a * 2 + b] != RailPair::encode(gate_fn(kind, a, b))) return false;
    }
  }
  return true;
}

namespace {

bool eval_rail_pure(const RailExpr& e, const bool rails[4]) {
  bool inv = !rails[static_cast<int>(e.p)];
  bool prod1 = inv && rails[static_cast<int>(e.q)];
  bool prod2 = rails[static_cast<int>(e.r)] && rails[static_cast<int>(e.s)];
  return !(prod1 || prod2);
}

}  // namespace

bool BdTable::constant(bool v) const {
  for (bool r : rows) {
    if (r != v) return false;
  }
  return true;
}

std::optional<bool> BdTable::constant_when_complementary(Rail pair_hi,
                                                         Rail pair_lo) const {
  int ih = -1, il = -1;
  for (int i = 0; i < 3; ++i) {
    if (vars[i] == pair_hi) ih = i;
    if (vars[i] == pair_lo) il = i;
  }
  if (ih < 0 || il < 0) return std::nullopt;
  std::optional<bool> v;
  for (int row = 0; row < 8; ++row) {
    bool h = row >> (2 - ih) & 1;
    bool l = row >> (2 - il) & 1;
    if (h == l) continue;
    if (!v) {
      v = rows[row];
    } else if (*v != rows[row]) {
      return std::nullopt;
    }
  }
  return v;
}

BdTable boolean_difference(GateKind kind, int out_rail, Rail wrt,
                           const WiringTable& wiring) {
  BdTable t;
  t.wrt = wrt;
  t.out_rail = out_rail;
  int n = 0;
  for (Rail r : kAllRails) {
    if (r != wrt) t.vars[n++] = r;
  }
  const RailExpr& e = wiring.at(kind, out_rail);
  for (int row = 0; row < 8; ++row) {
    bool rails[4];
    for (int i = 0; i < 3; ++i) {
      rails[static_cast<int>(t.vars[i])] = row >> (2 - i) & 1;
    }
    rails[static_cast<int>(wrt)] = false;
    bool f0 = eval_rail_pure(e, rails);
    rails[static_cast<int>(wrt)] = true;
    bool f1 = eval_rail_pure(e, rails);
    t.rows[row] = f0 != f1;
  }
  return t;
}

namespace {

struct IdentitySpec {
  int out_rail;
  Rail wrt;
  const char* formula;
  bool (*fn)(bool a, bool abar, bool b, bool bbar);
  // The derivatives w.r.t. one rail of the A pair reduce to a constant once
  // the B pair is complementary (and vice versa); nullopt where the closed
  // form already involves only independent rails.
  std::optional<bool> expected_when_complementary;
};

// Closed forms match the derivation step before the complementary-rail
// substitution, so they hold row-for-row with all rails free.
const IdentitySpec kXorIdentities[] = {
    {0, Rail::A, "0", [](bool, bool, bool, bool) { return false; }, std::nullopt},
    {0, Rail::B, "!A_bar", [](bool, bool abar, bool, bool) { return !abar; },
     std::nullopt},
    {0, Rail::Abar, "!B ^ !B_bar",
     [](bool, bool, bool b, bool bbar) { return !b != !bbar; }, true},
    {0, Rail::Bbar, "A_bar", [](bool, bool abar, bool, bool) { return abar; },
     std::nullopt},
    {1, Rail::A, "!B ^ !B_bar",
     [](bool, bool, bool b, bool bbar) { return !b != !bbar; }, true},
    {1, Rail::B, "!A", [](bool a, bool, bool, bool) { return !a; },
     std::nullopt},
    {1, Rail::Abar, "0", [](bool, bool, bool, bool) { return false; },
     std::nullopt},
    {1, Rail::Bbar, "A", [](bool a, bool, bool, bool) { return a; },
     std::nullopt},
};

}  // namespace

std::vector<BdIdentity> xor_bd_identities(const WiringTable& wiring) {
  std::vector<BdIdentity> out;
  for (const auto& spec : kXorIdentities) {
    BdIdentity id;
    id.name = std::string("d") + (spec.out_rail == 0 ? "O" : "O_bar") + "/d" +
              std::string(to_string(spec.wrt));
    id.table = boolean_difference(GateKind::Xor, spec.out_rail, spec.wrt, wiring);
    id.formula = spec.formula;
    id.matches_formula = true;
    for (int row = 0; row < 8; ++row) {
      bool rails[4] = {false, false, false, false};
      for (int i = 0; i < 3; ++i) {
        rails[static_cast<int>(id.table.vars[i])] = row >> (2 - i) & 1;
      }
      bool want = spec.fn(rails[0], rails[1], rails[2], rails[3]);
      if (id.table.rows[row] != want) id.matches_formula = false;
    }
    id.expected_when_complementary = spec.expected_when_complementary;
    if (spec.expected_when_complementary) {
      // The untouched pair is the one not containing wrt.
      bool wrt_in_a = spec.wrt == Rail::A || spec.wrt == Rail::Abar;
      Rail hi = wrt_in_a ? Rail::B : Rail::A;
      Rail lo = wrt_in_a ? Rail::Bbar : Rail::Abar;
      id.value_when_complementary = id.table.constant_when_complementary(hi, lo);
    }
    out.push_back(std::move(id));
  }
  return out;
}

FaultOutcome classify(const std::vector<RailPair>& expected,
                      const std::vector<RailPair>& actual) {
  if (expected.size() != actual.size()) {
    throw std::invalid_argument("classify: length mismatch");
  }
  bool all_equal = true;
  for (size_t i = 0; i < expected.size(); ++i) {
    if (!expected[i].is_valid()) {
      throw std::invalid_argument("classify: expected pair is non-valid");
    }
    if (!actual[i].is_valid()) return FaultOutcome::Detected;
    if (actual[i] != expected[i]) all_equal = false;
  }
  return all_equal ? FaultOutcome::Masked : FaultOutcome::Sdc;
}

OutcomeCounts GateFaultMatrix::totals() const {
  OutcomeCounts t;
  for (const auto& row : cell) {
    for (const auto& c : row) t += c;
  }
  return t;
}

GateFaultMatrix single_fault_exhaustive_gate(GateKind kind,
                                             const WiringTable& wiring) {
  GateFaultMatrix m;
  m.kind = kind;
  for (int site = 0; site < kLocalSiteCount; ++site) {
    for (int pol = 0; pol < 2; ++pol) {
      LocalFaultSet f;
      f.add(static_cast<LocalSite>(site), pol == 1);
      for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
          RailPair want = RailPair::encode(gate_fn(kind, a, b));
          RailPair got = eval_gate(kind, RailPair::encode(a),
                                   RailPair::encode(b), f, wiring);
          FaultOutcome o;
          if (!got.is_valid()) {
            o = FaultOutcome::Detected;
          } else if (got == want) {
            o = FaultOutcome::Masked;
          } else {
            o = FaultOutcome::Sdc;
            m.sdc_cases.push_back(
                {static_cast<LocalSite>(site), pol == 1, a == 1, b == 1});
          }
          m.cell[site][pol].add(o);
        }
      }
    }
  }
  return m;
}

}  // namespace scpdp
