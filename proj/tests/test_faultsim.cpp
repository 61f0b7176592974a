#include <doctest.h>

#include <cmath>
#include <set>

#include "scpdp/faultsim.hpp"
#include "scpdp/report.hpp"
#include "scpdp/sbox.hpp"
#include "test_util.hpp"

using namespace scpdp;

TEST_CASE("splitmix64 reference stream") {
  SplitMix64 rng{0};
  CHECK(rng.next() == 0xE220A8397B1DCDAFULL);
  CHECK(rng.next() == 0x6E789E6AA1B965F4ULL);
  CHECK(rng.next() == 0x06C45D188009454FULL);
}

TEST_CASE("trial streams are deterministic and distinct") {
  SplitMix64 a = trial_rng(0, 0);
  CHECK(a.next() == 0xE220A8397B1DCDAFULL);  // trial 0 of seed 0 is the
                                             // reference stream
  SplitMix64 b1 = trial_rng(42, 7), b2 = trial_rng(42, 7);
  for (int i = 0; i < 16; ++i) CHECK(b1.next() == b2.next());
  CHECK(trial_rng(0, 0).next() != trial_rng(0, 1).next());
  CHECK(trial_rng(0, 0).next() != trial_rng(1, 0).next());
}

TEST_CASE("sample_pattern properties") {
  SplitMix64 rng{9};
  // saturation: k = S yields every site
  auto all = sample_pattern(rng, 10, 10, CampaignMode::Random);
  CHECK(all == std::vector<uint32_t>{0, 1, 2, 3, 4, 5, 6, 7, 8, 9});

  // k out of range
  CHECK_THROWS_AS(sample_pattern(rng, 10, 11, CampaignMode::Random),
                  std::invalid_argument);
  CHECK_THROWS_AS(sample_pattern(rng, 10, 0, CampaignMode::Burst),
                  std::invalid_argument);

  // distinctness and range over many draws
  for (int t = 0; t < 200; ++t) {
    auto p = sample_pattern(rng, 50, 7, CampaignMode::Random);
    std::set<uint32_t> s(p.begin(), p.end());
    CHECK(s.size() == 7);
    CHECK(*s.rbegin() < 50);
  }

  // burst: contiguous run
  for (int t = 0; t < 200; ++t) {
    auto p = sample_pattern(rng, 50, 5, CampaignMode::Burst);
    REQUIRE(p.size() == 5);
    for (int i = 1; i < 5; ++i) CHECK(p[i] == p[0] + i);
    CHECK(p.back() < 50);
  }

  // burst of length 1 behaves like a single random site
  auto one = sample_pattern(rng, 50, 1, CampaignMode::Burst);
  CHECK(one.size() == 1);

  // determinism: same seed, same pattern
  SplitMix64 r1{123}, r2{123};
  CHECK(sample_pattern(r1, 99, 9, CampaignMode::Random) ==
        sample_pattern(r2, 99, 9, CampaignMode::Random));
}

TEST_CASE("run_trial examples") {
  auto n = parse_netlist("input a b\noutput y\ngate xor y a b\n");
  auto d = expand_dual_rail(n);
  DualRailSimulator sim(d);
  std::vector<RailPair> expect0 = {RailPair::encode(false)};

  // empty pattern: masked
  CHECK(run_trial(sim, expect0, {}, 0b00) == FaultOutcome::Masked);

  // both rails of input a stuck-at-1 with a=0: the (1,1) pair is detected
  auto a_hi = parse_site(d, "a.hi");
  auto a_lo = parse_site(d, "a.lo");
  std::vector<InjectedFault> both = {{*a_hi, true}, {*a_lo, true}};
  CHECK(run_trial(sim, expect0, both, 0b00) == FaultOutcome::Detected);

  // single fault on an output rail whose correct value differs from the
  // stuck polarity: detected
  auto y_hi = parse_site(d, "y.hi");
  std::vector<InjectedFault> f = {{*y_hi, true}};
  CHECK(run_trial(sim, expect0, f, 0b00) == FaultOutcome::Detected);
}

TEST_CASE("campaign config validation") {
  auto n = parse_netlist("input a\noutput y\ngate not y a\n");
  auto d = expand_dual_rail(n);  // 2 sites
  CHECK_THROWS_AS(CampaignConfig::with_total_trials(0, Polarity::StuckAt0,
                                                    CampaignMode::Random, 1),
                  std::invalid_argument);
  CampaignConfig cfg = CampaignConfig::with_total_trials(
      10, Polarity::StuckAt0, CampaignMode::Random, 1, {1, 5});
  CHECK_THROWS_AS(run_campaign(d, cfg), std::invalid_argument);  // k=5 > S=2
  CampaignConfig ok = CampaignConfig::with_total_trials(
      10, Polarity::StuckAt0, CampaignMode::Random, 1, {1, 2});
  CHECK(ok.trials_per_size == std::vector<int64_t>{5, 5});
  CHECK_NOTHROW(run_campaign(d, ok));

  CampaignConfig uneven = CampaignConfig::with_total_trials(
      400000, Polarity::StuckAt0, CampaignMode::Random, 1);
  CHECK(uneven.sizes.size() == 14);
  CHECK(uneven.total_trials() == 400000);
}

TEST_CASE("stratum accounting and fc arithmetic") {
  Stratum s;
  s.trials = 1000;
  s.counts.masked = 600;
  s.counts.detected = 398;
  s.counts.sdc = 2;
  CHECK(s.counts.total() == s.trials);
  CHECK(s.fc() == doctest::Approx(0.998));
  CHECK(format_fc_percent(s.fc()) == "99.800");
}

TEST_CASE("campaign accounting on a real netlist") {
  auto d = expand_dual_rail(
      parse_netlist("input a b\noutput y z\ngate xor y a b\ngate and z a b\n"));
  CampaignConfig cfg = CampaignConfig::with_total_trials(
      7000, Polarity::StuckAt1, CampaignMode::Random, 5, {1, 2, 3});
  cfg.workers = 2;
  CoverageReport rep = run_campaign(d, cfg);
  REQUIRE(rep.strata.size() == 3);
  int64_t total = 0;
  for (const Stratum& s : rep.strata) {
    CHECK(s.counts.total() == s.trials);
    CHECK(s.fc() >= 0.0);
    CHECK(s.fc() <= 1.0);
    total += s.trials;
  }
  CHECK(total == 7000);
  CHECK(rep.aggregate().trials == 7000);
  CHECK(rep.site_count == d.site_count());
}

TEST_CASE("determinism: worker count does not change the report") {
  auto d = expand_dual_rail(build_sbox_netlist());
  CampaignConfig cfg = CampaignConfig::with_total_trials(
      4200, Polarity::StuckAt0, CampaignMode::Random, 77, {1, 2, 5});
  cfg.workers = 1;
  auto r1 = run_campaign(d, cfg);
  cfg.workers = 4;
  auto r2 = run_campaign(d, cfg);
  cfg.workers = 3;
  auto r3 = run_campaign(d, cfg);
  CHECK(to_summary_csv(r1) == to_summary_csv(r2));
  CHECK(to_summary_csv(r1) == to_summary_csv(r3));
  CHECK(to_summary_json(r1) == to_summary_json(r2));
}

TEST_CASE("trial log is deterministic and well-formed") {
  auto d = expand_dual_rail(
      parse_netlist("input a b\noutput y\ngate or y a b\n"));
  CampaignConfig cfg = CampaignConfig::with_total_trials(
      40, Polarity::StuckAt0, CampaignMode::Burst, 3, {1, 2});
  std::vector<TrialRecord> log1, log2;
  cfg.workers = 1;
  run_campaign(d, cfg, &log1);
  cfg.workers = 3;
  run_campaign(d, cfg, &log2);
  REQUIRE(log1.size() == 40);
  CHECK(to_trial_csv(d, log1) == to_trial_csv(d, log2));
  for (const TrialRecord& r : log1) {
    CHECK(r.sites.size() == size_t(r.fault_size));
  }
}

TEST_CASE("exhaustive single-fault on the one-gate xor netlist") {
  auto d = expand_dual_rail(
      parse_netlist("input a b\noutput y\ngate xor y a b\n"));
  ExhaustiveResult res = exhaustive_single_fault(d);
  REQUIRE(res.report.strata.size() == 2);
  int64_t trials = 0, sdc = 0;
  for (const Stratum& s : res.report.strata) {
    trials += s.trials;
    sdc += s.counts.sdc;
  }
  CHECK(trials == 16 * 2 * 4);
  CHECK(sdc == 0);
  CHECK(res.sdc_cases.empty());
  CHECK(res.report.aggregate().fc() == doctest::Approx(1.0));
}

TEST_CASE("alias-only netlists never silently corrupt") {
  auto d = expand_dual_rail(parse_netlist("input a\noutput y\ngate not y a\n"));
  ExhaustiveResult res = exhaustive_single_fault(d);
  CHECK(res.sdc_cases.empty());
  for (const Stratum& s : res.report.strata) {
    CHECK(s.counts.sdc == 0);
    CHECK(s.counts.total() == s.trials);
  }
}

TEST_CASE("random campaign frequencies match exhaustive enumeration on a "
          "tiny site space") {
  // not-only netlist: S = 2 sites. For stuck-at-0 and k = 1, exactly the
  // trials whose stuck rail carried a 1 are detected: P(detected) = 1/2.
  auto d = expand_dual_rail(parse_netlist("input a\noutput y\ngate not y a\n"));
  REQUIRE(d.site_count() == 2);

  // exhaustive enumeration of (site, input) outcomes
  auto sites = enumerate_fault_sites(d);
  DualRailSimulator sim(d);
  int detected = 0, total = 0;
  for (const CircuitSite& s : sites) {
    for (uint64_t input = 0; input < 2; ++input) {
      std::vector<RailPair> expect = {RailPair::encode((input & 1) == 0)};
      InjectedFault f{s, false};
      FaultOutcome o = run_trial(sim, expect, {&f, 1}, input);
      CHECK(o != FaultOutcome::Sdc);
      detected += o == FaultOutcome::Detected;
      ++total;
    }
  }
  double p_detected = double(detected) / total;
  CHECK(p_detected == doctest::Approx(0.5));

  const int64_t N = 20000;
  CampaignConfig cfg = CampaignConfig::with_total_trials(
      N, Polarity::StuckAt0, CampaignMode::Random, 11, {1});
  cfg.workers = 2;
  CoverageReport rep = run_campaign(d, cfg);
  double observed = double(rep.strata[0].counts.detected) / double(N);
  double sigma = std::sqrt(p_detected * (1 - p_detected) / double(N));
  CHECK(std::abs(observed - p_detected) <= 3 * sigma);
  CHECK(rep.strata[0].counts.sdc == 0);

  // k = S = 2 under stuck-at-0 forces the pair to (0,0): always detected
  CampaignConfig sat = CampaignConfig::with_total_trials(
      200, Polarity::StuckAt0, CampaignMode::Random, 12, {2});
  CoverageReport rep2 = run_campaign(d, sat);
  CHECK(rep2.strata[0].counts.detected == 200);
}

TEST_CASE("saturating the outputs never silently corrupts") {
  auto d = expand_dual_rail(build_sbox_netlist());
  DualRailSimulator sim(d);
  DualRailSimulator ref(d);
  std::vector<InjectedFault> pattern;
  for (auto [hi, lo] : d.output_pairs()) {
    pattern.push_back({CircuitSite{CircuitSite::Net, hi, 0}, false});
    pattern.push_back({CircuitSite{CircuitSite::Net, lo, 0}, false});
  }
  for (uint64_t input = 0; input < 256; ++input) {
    ref.run_inplace(input);
    std::vector<RailPair> expect(d.output_count());
    for (size_t i = 0; i < expect.size(); ++i) expect[i] = ref.output_pair(i);
    FaultOutcome o = run_trial(sim, expect, pattern, input);
    CHECK(o != FaultOutcome::Sdc);
  }
}

TEST_CASE("input sweep policy cycles the input space") {
  auto d = expand_dual_rail(
      parse_netlist("input a b\noutput y\ngate and y a b\n"));
  CampaignConfig cfg = CampaignConfig::with_total_trials(
      16, Polarity::StuckAt0, CampaignMode::Random, 5, {1});
  cfg.input_policy = InputPolicy::ExhaustiveSweep;
  std::vector<TrialRecord> log;
  run_campaign(d, cfg, &log);
  REQUIRE(log.size() == 16);
  for (size_t i = 0; i < log.size(); ++i) {
    CHECK(log[i].input == (i & 3));
  }
}
