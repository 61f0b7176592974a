#include "scpdp/faultsim.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>
#include <thread>
#include <tuple>
#include <unordered_map>

#include "scpdp/version.hpp"

namespace scpdp {

std::string_view to_string(Polarity p) {
  return p == Polarity::StuckAt0 ? "sa0" : "sa1";
}

std::string_view to_string(CampaignMode m) {
  return m == CampaignMode::Random ? "random" : "burst";
}

CampaignConfig CampaignConfig::with_total_trials(int64_t total, Polarity p,
                                                 CampaignMode m, uint64_t seed,
                                                 std::vector<int> sizes) {
  CampaignConfig cfg;
  cfg.polarity = p;
  cfg.mode = m;
  cfg.seed = seed;
  if (sizes.empty()) {
    for (int k = 1; k <= 14; ++k) sizes.push_back(k);
  }
  cfg.sizes = std::move(sizes);
  int64_t n = static_cast<int64_t>(cfg.sizes.size());
  if (total < n) {
    throw std::invalid_argument("campaign: need at least one trial per size");
  }
  cfg.trials_per_size.assign(cfg.sizes.size(), total / n);
  for (int64_t i = 0; i < total % n; ++i) ++cfg.trials_per_size[i];
  return cfg;
}

int64_t CampaignConfig::total_trials() const {
  int64_t t = 0;
  for (int64_t n : trials_per_size) t += n;
  return t;
}

void CampaignConfig::validate(size_t site_count) const {
  if (sizes.empty()) throw std::invalid_argument("campaign: no fault sizes");
  if (sizes.size() != trials_per_size.size()) {
    throw std::invalid_argument("campaign: sizes/trials length mismatch");
  }
  for (size_t i = 0; i < sizes.size(); ++i) {
    if (sizes[i] < 1 || static_cast<size_t>(sizes[i]) > site_count) {
      throw std::invalid_argument("campaign: fault size " +
                                  std::to_string(sizes[i]) +
                                  " out of range for " +
                                  std::to_string(site_count) + " sites");
    }
    if (trials_per_size[i] < 1) {
      throw std::invalid_argument("campaign: trials must be >= 1");
    }
  }
  if (workers < 1) throw std::invalid_argument("campaign: workers must be >= 1");
}

std::vector<uint32_t> sample_pattern(SplitMix64& rng, size_t site_count,
                                     int k, CampaignMode mode) {
  if (k < 1 || static_cast<size_t>(k) > site_count) {
    throw std::invalid_argument("sample_pattern: k out of range");
  }
  std::vector<uint32_t> sites;
  sites.reserve(k);
  if (mode == CampaignMode::Burst) {
    uint64_t start = rng.below(site_count - k + 1);
    for (int i = 0; i < k; ++i) {
      sites.push_back(static_cast<uint32_t>(start + i));
    }
    return sites;
  }
  // Partial Fisher-Yates over 0..S-1, with the permuted prefix held sparsely.
  std::unordered_map<uint32_t, uint32_t> perm;
  auto at = [&](uint32_t i) {
    auto it = perm.find(i);
    return it == perm.end() ? i : it->second;
  };
  for (int i = 0; i < k; ++i) {
    uint32_t j = static_cast<uint32_t>(i + rng.below(site_count - i));
    uint32_t vi = at(static_cast<uint32_t>(i));
    uint32_t vj = at(j);
    perm[static_cast<uint32_t>(i)] = vj;
    perm[j] = vi;
    sites.push_back(vj);
  }
  std::sort(sites.begin(), sites.end());
  return sites;
}

Stratum CoverageReport::aggregate() const {
  Stratum all;
  all.polarity = aggregate_polarity;
  all.mode = mode;
  all.fault_size = 0;
  for (const Stratum& s : strata) {
    all.trials += s.trials;
    all.counts += s.counts;
  }
  return all;
}

FaultOutcome run_trial(DualRailSimulator& sim,
                       const std::vector<RailPair>& expected,
                       std::span<const InjectedFault> pattern,
                       uint64_t input_bits) {
  sim.set_faults(pattern);
  sim.run_inplace(input_bits);
  FaultOutcome out = FaultOutcome::Masked;
  bool mismatch = false;
  for (size_t i = 0; i < expected.size(); ++i) {
    RailPair p = sim.output_pair(i);
    if (!p.is_valid()) {
      out = FaultOutcome::Detected;
      break;
    }
    if (p != expected[i]) mismatch = true;
  }
  if (out != FaultOutcome::Detected && mismatch) out = FaultOutcome::Sdc;
  sim.clear_faults();
  return out;
}

namespace {

/// Fault-free reference outputs, tabulated when the input space is small.
class ReferenceOutputs {
 public:
  ReferenceOutputs(const DualRailNetlist& d) : d_(d), n_inputs_(d.input_count()) {
    if (n_inputs_ <= 12) {
      DualRailSimulator sim(d);
      table_.resize(size_t(1) << n_inputs_);
      for (uint64_t v = 0; v < table_.size(); ++v) {
        sim.run_inplace(v);
        table_[v].resize(d.output_count());
        for (size_t i = 0; i < d.output_count(); ++i) {
          table_[v][i] = sim.output_pair(i);
        }
      }
    }
  }

  /// `scratch` is used when the table is not materialized.
  const std::vector<RailPair>& get(uint64_t input, DualRailSimulator& sim,
                                   std::vector<RailPair>& scratch) const {
    if (!table_.empty()) return table_[input & (table_.size() - 1)];
    sim.run_inplace(input);
    scratch.resize(d_.output_count());
    for (size_t i = 0; i < d_.output_count(); ++i) {
      scratch[i] = sim.output_pair(i);
    }
    return scratch;
  }

 private:
  const DualRailNetlist& d_;
  size_t n_inputs_;
  std::vector<std::vector<RailPair>> table_;
};

uint64_t draw_input(SplitMix64& rng, size_t n_inputs) {
  uint64_t v = rng.next();
  return n_inputs >= 64 ? v : v & ((uint64_t(1) << n_inputs) - 1);
}

}  // namespace

CoverageReport run_campaign(const DualRailNetlist& d, const CampaignConfig& cfg,
                            std::vector<TrialRecord>* trial_log) {
  size_t S = d.site_count();
  cfg.validate(S);
  if (d.input_count() > 64) {
    throw std::invalid_argument("campaign: more than 64 inputs unsupported");
  }

  std::vector<int64_t> offsets(cfg.sizes.size() + 1, 0);
  for (size_t i = 0; i < cfg.sizes.size(); ++i) {
    offsets[i + 1] = offsets[i] + cfg.trials_per_size[i];
  }
  int64_t total = offsets.back();

  ReferenceOutputs ref(d);
  int workers = std::max(1, cfg.workers);
  if (int64_t(workers) > total) workers = static_cast<int>(total);

  std::vector<std::vector<OutcomeCounts>> partial(
      workers, std::vector<OutcomeCounts>(cfg.sizes.size()));
  std::vector<std::vector<TrialRecord>> partial_log(trial_log ? workers : 0);

  auto worker_fn = [&](int w, int64_t begin, int64_t end) {
    DualRailSimulator sim(d);
    DualRailSimulator ref_sim(d);
    std::vector<RailPair> ref_scratch;
    std::vector<InjectedFault> pattern;
    auto sites = enumerate_fault_sites(d);
    size_t stratum = 0;
    for (int64_t g = begin; g < end; ++g) {
      while (g >= offsets[stratum + 1]) ++stratum;
      int k = cfg.sizes[stratum];
      SplitMix64 rng = trial_rng(cfg.seed, static_cast<uint64_t>(g));
      uint64_t input;
      if (cfg.input_policy == InputPolicy::ExhaustiveSweep) {
        uint64_t space = d.input_count() >= 64
                             ? ~uint64_t(0)
                             : (uint64_t(1) << d.input_count()) - 1;
        input = static_cast<uint64_t>(g - offsets[stratum]) & space;
      } else {
        input = draw_input(rng, d.input_count());
      }
      auto idxs = sample_pattern(rng, S, k, cfg.mode);
      pattern.clear();
      for (uint32_t idx : idxs) {
        pattern.push_back({sites[idx], cfg.polarity == Polarity::StuckAt1});
      }
      const auto& expected = ref.get(input, ref_sim, ref_scratch);
      FaultOutcome o = run_trial(sim, expected, pattern, input);
      partial[w][stratum].add(o);
      if (trial_log) {
        partial_log[w].push_back(
            {static_cast<uint64_t>(g), k, input, std::move(idxs), o});
      }
    }
  };

  if (workers == 1) {
    worker_fn(0, 0, total);
  } else {
    std::vector<std::thread> threads;
    int64_t chunk = (total + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
      int64_t begin = w * chunk;
      int64_t end = std::min<int64_t>(total, begin + chunk);
      if (begin >= end) break;
      threads.emplace_back(worker_fn, w, begin, end);
    }
    for (auto& t : threads) t.join();
  }

  CoverageReport rep;
  rep.seed = cfg.seed;
  rep.netlist_hash = d.source_hash();
  rep.site_count = S;
  rep.tool_version = kToolVersion;
  rep.mode = std::string(to_string(cfg.mode));
  rep.aggregate_polarity = std::string(to_string(cfg.polarity));
  for (size_t i = 0; i < cfg.sizes.size(); ++i) {
    Stratum s;
    s.polarity = std::string(to_string(cfg.polarity));
    s.mode = rep.mode;
    s.fault_size = cfg.sizes[i];
    s.trials = cfg.trials_per_size[i];
    for (int w = 0; w < workers; ++w) s.counts += partial[w][i];
    rep.strata.push_back(std::move(s));
  }
  if (trial_log) {
    for (auto& part : partial_log) {
      trial_log->insert(trial_log->end(),
                        std::make_move_iterator(part.begin()),
                        std::make_move_iterator(part.end()));
    }
  }
  return rep;
}

ExhaustiveResult exhaustive_single_fault(const DualRailNetlist& d, int workers,
                                         uint64_t input_budget, uint64_t seed) {
  if (d.input_count() > 64) {
    throw std::invalid_argument("exhaustive: more than 64 inputs unsupported");
  }
  auto sites = enumerate_fault_sites(d);
  size_t S = sites.size();

  std::vector<uint64_t> input_vectors;
  if (d.input_count() <= 20) {
    input_vectors.resize(size_t(1) << d.input_count());
    for (size_t i = 0; i < input_vectors.size(); ++i) input_vectors[i] = i;
  } else {
    SplitMix64 rng{seed};
    for (uint64_t i = 0; i < input_budget; ++i) {
      input_vectors.push_back(draw_input(rng, d.input_count()));
    }
  }

  workers = std::max(1, workers);
  if (static_cast<size_t>(workers) > S) workers = static_cast<int>(S);
  std::vector<std::array<OutcomeCounts, 2>> partial(workers);
  std::vector<std::vector<SdcRecord>> partial_sdc(workers);

  // Sites are split across workers; each sweeps every input for its sites.
  auto worker_fn = [&](int w, size_t begin, size_t end) {
    DualRailSimulator sim(d);
    DualRailSimulator ref_sim(d);
    std::vector<RailPair> scratch;
    ReferenceOutputs ref(d);
    for (size_t si = begin; si < end; ++si) {
      for (int pol = 0; pol < 2; ++pol) {
        InjectedFault f{sites[si], pol == 1};
        for (uint64_t input : input_vectors) {
          const auto& expected = ref.get(input, ref_sim, scratch);
          FaultOutcome o = run_trial(sim, expected, {&f, 1}, input);
          partial[w][pol].add(o);
          if (o == FaultOutcome::Sdc) {
            partial_sdc[w].push_back(
                {site_name(d, sites[si]), pol == 1, input, {}});
          }
        }
      }
    }
  };

  if (workers == 1) {
    worker_fn(0, 0, S);
  } else {
    std::vector<std::thread> threads;
    size_t chunk = (S + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
      size_t begin = w * chunk;
      size_t end = std::min(S, begin + chunk);
      if (begin >= end) break;
      threads.emplace_back(worker_fn, w, begin, end);
    }
    for (auto& t : threads) t.join();
  }

  ExhaustiveResult res;
  res.report.seed = 0;
  res.report.netlist_hash = d.source_hash();
  res.report.site_count = S;
  res.report.tool_version = kToolVersion;
  res.report.mode = "exhaustive";
  res.report.aggregate_polarity = "both";
  for (int pol = 0; pol < 2; ++pol) {
    Stratum s;
    s.polarity = pol == 0 ? "sa0" : "sa1";
    s.mode = "exhaustive";
    s.fault_size = 1;
    s.trials = static_cast<int64_t>(S) * input_vectors.size();
    for (int w = 0; w < workers; ++w) s.counts += partial[w][pol];
    res.report.strata.push_back(std::move(s));
  }
  for (auto& part : partial_sdc) {
    res.sdc_cases.insert(res.sdc_cases.end(),
                         std::make_move_iterator(part.begin()),
                         std::make_move_iterator(part.end()));
  }
  std::sort(res.sdc_cases.begin(), res.sdc_cases.end(),
            [](const SdcRecord& a, const SdcRecord& b) {
              return std::tie(a.site, a.stuck1, a.input) <
                     std::tie(b.site, b.stuck1, b.input);
            });
  return res;
}

}  // namespace scpdp
