#include <doctest.h>

#include <sstream>

#include "scpdp/commands.hpp"
#include "scpdp/rail.hpp"

using namespace scpdp;

namespace {

RailPair rp(int hi, int lo) { return {hi != 0, lo != 0}; }

LocalFaultSet one_fault(LocalSite s, bool stuck1) {
  LocalFaultSet f;
  f.add(s, stuck1);
  return f;
}

}  // namespace

TEST_CASE("rail pair encoding") {
  CHECK(RailPair::encode(false) == rp(0, 1));
  CHECK(RailPair::encode(true) == rp(1, 0));
  CHECK(rp(0, 1).is_valid());
  CHECK(rp(1, 0).is_valid());
  CHECK_FALSE(rp(0, 0).is_valid());
  CHECK_FALSE(rp(1, 1).is_valid());
}

TEST_CASE("rail_not swaps rails and fixes non-valid codes") {
  CHECK(rail_not(rp(1, 0)) == rp(0, 1));
  CHECK(rail_not(rp(0, 0)) == rp(0, 0));
  CHECK(rail_not(rp(1, 1)) == rp(1, 1));
  for (RailPair x : {rp(0, 0), rp(0, 1), rp(1, 0), rp(1, 1)}) {
    CHECK(rail_not(rail_not(x)) == x);  // involution
  }
  // commutes with logical inversion on valid codes
  for (bool v : {false, true}) {
    CHECK(rail_not(RailPair::encode(v)) == RailPair::encode(!v));
  }
}

TEST_CASE("truth tables match the Boolean functions") {
  for (GateKind k : kAllGateKinds) {
    CHECK(gate_truth_check(k));
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) {
        RailPair out = eval_gate(k, RailPair::encode(a), RailPair::encode(b));
        CHECK(out == RailPair::encode(gate_fn(k, a, b)));
      }
    }
  }
}

TEST_CASE("eval_gate worked examples") {
  // fault-free AND of two valid ones
  CHECK(eval_gate(GateKind::And, rp(1, 0), rp(1, 0)) == rp(1, 0));
  // non-valid (1,1) into AND propagates as (0,0)
  CHECK(eval_gate(GateKind::And, rp(1, 1), rp(1, 0)) == rp(0, 0));
  // non-valid (0,0) into AND with controlling 0: masked to a correct 0
  CHECK(eval_gate(GateKind::And, rp(0, 0), rp(0, 1)) == rp(0, 1));
  // XOR with A_bar stuck-at-1 on inputs 1,1 yields the non-valid (1,1)
  CHECK(eval_gate(GateKind::Xor, rp(1, 0), rp(1, 0),
                  one_fault(LocalSite::InAbar, true)) == rp(1, 1));
  // plain OR of zeros
  CHECK(eval_gate(GateKind::Or, rp(0, 1), rp(0, 1)) == rp(0, 1));
}

TEST_CASE("wiring table read sets") {
  // The O cone never reads A; the O_bar cone never reads A_bar. The only O
  // cone reading B is XOR's.
  for (GateKind k : kAllGateKinds) {
    CHECK_FALSE(kWiring.at(k, 0).reads(Rail::A));
    CHECK_FALSE(kWiring.at(k, 1).reads(Rail::Abar));
    if (k != GateKind::Xor) CHECK_FALSE(kWiring.at(k, 0).reads(Rail::B));
  }
  CHECK(kWiring.at(GateKind::Xor, 0).reads(Rail::B));
}

TEST_CASE("boolean difference structural zeros for every gate") {
  for (GateKind k : kAllGateKinds) {
    CHECK(boolean_difference(k, 0, Rail::A).constant(false));
    CHECK(boolean_difference(k, 1, Rail::Abar).constant(false));
  }
  CHECK(boolean_difference(GateKind::And, 0, Rail::A).constant(false));
}

TEST_CASE("XOR derivative identities hold") {
  auto ids = xor_bd_identities();
  REQUIRE(ids.size() == 8);
  for (const BdIdentity& id : ids) {
    INFO(id.name);
    CHECK(id.matches_formula);
    CHECK(id.holds());
  }
  // the two tautology cases reduce to a constant 1 exactly when the
  // untouched pair carries complementary rails
  CHECK(ids[2].name == "dO/dA_bar");
  CHECK(ids[2].value_when_complementary == true);
  CHECK(ids[4].name == "dO_bar/dA");
  CHECK(ids[4].value_when_complementary == true);
}

TEST_CASE("boolean difference row order is stable") {
  // d(O)/d(B) of XOR tabulates !A_bar over vars (A, A_bar, B_bar).
  BdTable t = boolean_difference(GateKind::Xor, 0, Rail::B);
  CHECK(t.vars == std::array<Rail, 3>{Rail::A, Rail::Abar, Rail::Bbar});
  std::string bits;
  for (bool b : t.rows) bits += b ? '1' : '0';
  CHECK(bits == "11001100");
}

TEST_CASE("classify") {
  using V = std::vector<RailPair>;
  CHECK(classify(V{rp(1, 0)}, V{rp(1, 1)}) == FaultOutcome::Detected);
  CHECK(classify(V{rp(1, 0)}, V{rp(1, 0)}) == FaultOutcome::Masked);
  CHECK(classify(V{rp(1, 0)}, V{rp(0, 1)}) == FaultOutcome::Sdc);
  CHECK(classify(V{rp(1, 0), rp(0, 1)}, V{rp(0, 1), rp(0, 0)}) ==
        FaultOutcome::Detected);
  CHECK_THROWS_AS(classify(V{rp(1, 0)}, V{}), std::invalid_argument);
  CHECK_THROWS_AS(classify(V{rp(1, 1)}, V{rp(1, 0)}), std::invalid_argument);
}

TEST_CASE("single-fault exhaustive per gate: no silent corruption") {
  for (GateKind k : kAllGateKinds) {
    GateFaultMatrix m = single_fault_exhaustive_gate(k);
    OutcomeCounts t = m.totals();
    CHECK(t.total() == 128);  // 16 sites x 2 polarities x 4 inputs
    CHECK(t.sdc == 0);
    CHECK(m.sdc_cases.empty());
    CHECK(t.masked + t.detected == 128);
  }
}

TEST_CASE("single-fault spot checks") {
  // XOR, A_bar stuck-at-1, inputs (1,1): detected via the (1,1) output
  RailPair out = eval_gate(GateKind::Xor, rp(1, 0), rp(1, 0),
                           one_fault(LocalSite::InAbar, true));
  CHECK_FALSE(out.is_valid());
  // AND, A stuck-at-1, inputs (0,0): masked, O_bar = !(A.B) unchanged at B=0
  out = eval_gate(GateKind::And, rp(0, 1), rp(0, 1),
                  one_fault(LocalSite::InA, true));
  CHECK(out == rp(0, 1));
}

TEST_CASE("non-valid inputs never mask to a value wrong for every "
          "interpretation") {
  const RailPair all[4] = {rp(0, 0), rp(0, 1), rp(1, 0), rp(1, 1)};
  for (GateKind k : kAllGateKinds) {
    for (RailPair a : all) {
      for (RailPair b : all) {
        if (a.is_valid() && b.is_valid()) continue;
        RailPair out = eval_gate(k, a, b);
        if (!out.is_valid()) continue;
        bool justified = false;
        for (int av = 0; av < 2; ++av) {
          for (int bv = 0; bv < 2; ++bv) {
            if (a.is_valid() && av != (a.value() ? 1 : 0)) continue;
            if (b.is_valid() && bv != (b.value() ? 1 : 0)) continue;
            if (out == RailPair::encode(gate_fn(k, av, bv))) justified = true;
          }
        }
        INFO("gate ", to_string(k), " a=(", a.hi, ",", a.lo, ") b=(", b.hi,
             ",", b.lo, ")");
        CHECK(justified);
      }
    }
  }
}

TEST_CASE("corrupted wiring is caught (negative control)") {
  WiringTable bad = default_wiring();
  bad.at(GateKind::And, 0).q = Rail::A;  // O cone must not read A
  CHECK_FALSE(gate_truth_check(GateKind::And, bad));
  std::ostringstream os;
  CHECK(cmd_verify_gates(os, bad) == kExitVerifyFail);
  CHECK(os.str().find("FAIL") != std::string::npos);
  CHECK(os.str().find("counterexample") != std::string::npos);
}

TEST_CASE("verify gates command passes on the real wiring") {
  std::ostringstream os;
  CHECK(cmd_verify_gates(os) == kExitOk);
  CHECK(os.str().find("all gate checks passed") != std::string::npos);
  CHECK(os.str().find("dO/dA = 0") != std::string::npos);
  CHECK(os.str().find("dO_bar/dB_bar = A") != std::string::npos);
}
