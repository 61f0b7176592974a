#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "scpdp/dualrail.hpp"
#include "scpdp/rail.hpp"

namespace scpdp {

/// splitmix64 (public-domain recurrence). Fixed here so campaign results are
/// reproducible bit-for-bit across implementations and languages.
struct SplitMix64 {
  uint64_t state = 0;

  uint64_t next() {
    state += 0x9E3779B97F4A7C15ULL;
    uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform value in [0, bound) by modulo reduction; bound must be nonzero.
  uint64_t below(uint64_t bound) { return next() % bound; }
};

/// Per-trial stream: trials are independent given (master seed, trial index),
/// which is what makes the campaign embarrassingly parallel.
inline SplitMix64 trial_rng(uint64_t master_seed, uint64_t trial_index) {
  return SplitMix64{master_seed ^ (trial_index * 0x9E3779B97F4A7C15ULL)};
}

enum class Polarity : uint8_t { StuckAt0 = 0, StuckAt1 = 1 };
enum class CampaignMode : uint8_t { Random = 0, Burst = 1 };
enum class InputPolicy : uint8_t { RandomPerTrial = 0, ExhaustiveSweep = 1 };

std::string_view to_string(Polarity p);
std::string_view to_string(CampaignMode m);

struct CampaignConfig {
  Polarity polarity = Polarity::StuckAt0;
  CampaignMode mode = CampaignMode::Random;
  std::vector<int> sizes;                 // fault sizes k, default 1..14
  std::vector<int64_t> trials_per_size;   // parallel to sizes
  uint64_t seed = 0;
  InputPolicy input_policy = InputPolicy::RandomPerTrial;
  int workers = 1;

  /// Splits `total` trials evenly over the sizes (first strata take the
  /// remainder), the desk-scale default distribution.
  static CampaignConfig with_total_trials(int64_t total, Polarity p,
                                          CampaignMode m, uint64_t seed,
                                          std::vector<int> sizes = {});

  int64_t total_trials() const;
  void validate(size_t site_count) const;  // throws std::invalid_argument
};

/// Distinct fault sites for one trial; in burst mode the site indices form a
/// contiguous run of the enumeration. Indices are returned sorted.
std::vector<uint32_t> sample_pattern(SplitMix64& rng, size_t site_count,
                                     int k, CampaignMode mode);

struct Stratum {
  std::string polarity;
  std::string mode;
  int fault_size = 0;  // 0 renders as "ALL"
  int64_t trials = 0;
  OutcomeCounts counts;

  /// Fault coverage: every trial except silent corruptions counts as covered.
  double fc() const {
    return trials == 0 ? 1.0
                       : double(trials - counts.sdc) / double(trials);
  }
};

struct SdcRecord {
  std::string site;      // site id string (single-fault reports)
  bool stuck1 = false;
  uint64_t input = 0;
  std::vector<std::string> sites;  // multi-fault campaigns
};

struct CoverageReport {
  std::vector<Stratum> strata;
  uint64_t seed = 0;
  std::string netlist_hash;
  uint64_t site_count = 0;
  std::string tool_version;
  std::string aggregate_polarity;  // polarity label of the ALL row
  std::string mode;

  Stratum aggregate() const;
};

/// Runs one trial: simulates the faulty circuit against the fault-free
/// reference on the same input and classifies the outcome.
FaultOutcome run_trial(DualRailSimulator& sim,
                       const std::vector<RailPair>& expected,
                       std::span<const InjectedFault> pattern,
                       uint64_t input_bits);

/// Multi-fault campaign per the config; deterministic in (config, netlist)
/// regardless of worker count. Optionally records per-trial rows.
struct TrialRecord {
  uint64_t trial = 0;
  int fault_size = 0;
  uint64_t input = 0;
  std::vector<uint32_t> sites;
  FaultOutcome outcome = FaultOutcome::Masked;
};

CoverageReport run_campaign(const DualRailNetlist& d, const CampaignConfig& cfg,
                            std::vector<TrialRecord>* trial_log = nullptr);

/// Exhaustive single-fault campaign: all sites x both polarities x all input
/// vectors (inputs <= 20; otherwise `input_budget` seeded vectors). Reports
/// one stratum per polarity and lists every silent corruption.
struct ExhaustiveResult {
  CoverageReport report;
  std::vector<SdcRecord> sdc_cases;
};

ExhaustiveResult exhaustive_single_fault(const DualRailNetlist& d,
                                         int workers = 1,
                                         uint64_t input_budget = 4096,
                                         uint64_t seed = 1);

}  // namespace scpdp
