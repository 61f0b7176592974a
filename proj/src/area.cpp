#include "scpdp/area.hpp"

namespace scpdp {

AreaReport area_report(const DualRailNetlist& d) {
  AreaReport r;
  for (const DualGate& g : d.gates()) {
    ++r.gates_by_kind[static_cast<int>(g.kind)];
  }
  r.scpdp_gates = static_cast<int64_t>(d.gates().size());
  r.transistors = 8 * r.scpdp_gates;
  r.absorbed_inverters = d.absorbed_inverters();
  r.aliased_buffers = d.aliased_buffers();
  return r;
}

int64_t baseline_cmos_transistors(const SingleRailNetlist& n) {
  // Textbook static-CMOS counts; approximate by nature.
  int64_t t = 0;
  for (const NetGate& g : n.gates()) {
    switch (g.op) {
      case GateOp::Nand:
      case GateOp::Nor: t += 4; break;
      case GateOp::And:
      case GateOp::Or: t += 6; break;
      case GateOp::Xor:
      case GateOp::Xnor: t += 12; break;
      case GateOp::Not: t += 2; break;
      case GateOp::Buf: t += 4; break;
    }
  }
  return t;
}

}  // namespace scpdp
