#pragma once

#include <array>
#include <cstdint>

#include "scpdp/dualrail.hpp"

namespace scpdp {

/// Technology-independent area accounting: every two-input gate of the
/// family costs 8 transistors; inversions are rail swaps and cost nothing.
struct AreaReport {
  std::array<int64_t, 3> gates_by_kind{};  // indexed by GateKind
  int64_t scpdp_gates = 0;                 // G
  int64_t transistors = 0;                 // T = 8 * G
  int64_t absorbed_inverters = 0;
  int64_t aliased_buffers = 0;
};

AreaReport area_report(const DualRailNetlist& d);

/// Transistor estimate of a plain static-CMOS single-rail implementation,
/// used only as the baseline for the labeled-approximate DMR comparison.
int64_t baseline_cmos_transistors(const SingleRailNetlist& n);

/// Naive dual modular redundancy estimate: twice the baseline, comparator
/// not included.
inline int64_t dmr_estimate(const SingleRailNetlist& n) {
  return 2 * baseline_cmos_transistors(n);
}

}  // namespace scpdp
