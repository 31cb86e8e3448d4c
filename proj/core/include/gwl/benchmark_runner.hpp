#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gwl/metrics.hpp"
#include "gwl/pipeline.hpp"
#include "gwl/synth.hpp"

namespace gwl {

enum class MatchMethod {
  kGwd,   // GW discrepancy on data distances only
  kGwlR,  // joint learning, RBF kernel
  kGwlC,  // joint learning, cosine kernel
};

std::string_view to_string(MatchMethod method);
MatchMethod parse_match_method(std::string_view name);

struct SynthSpec {
  SynthFamily family = SynthFamily::kKnn;
  Index source_size = 20;
  std::vector<double> q_percent = {0, 10, 20, 30, 40, 50};
  int trials = 10;
  std::uint64_t seed = 0;

  void validate() const;
};

struct BenchmarkRow {
  SynthFamily family = SynthFamily::kKnn;
  Index n = 0;
  double q = 0.0;
  MatchMethod method = MatchMethod::kGwd;
  int trial = 0;
  double nc_transport = 0.0;
  double nc_embedding = 0.0;  // NaN for GWD
  double gw_discrepancy = 0.0;
  double seconds = 0.0;
  bool failed = false;
};

struct BenchmarkSummary {
  double q = 0.0;
  MatchMethod method = MatchMethod::kGwd;
  std::string metric;
  TrialStats stats;
  int failures = 0;
};

struct BenchmarkReport {
  std::vector<BenchmarkRow> rows;  // ordered by (q, trial, method)
  std::vector<BenchmarkSummary> summary;

  const BenchmarkSummary* find(double q, MatchMethod method,
                               std::string_view metric) const;
};

// Method-specific overrides applied on top of the shared config.
GwlConfig config_for_method(const GwlConfig& base, MatchMethod method);

// Trials run on up to `threads` workers; each trial draws its graphs from a
// seed derived from (spec.seed, q index, trial), so results do not depend on
// the worker count.
BenchmarkReport run_benchmark(const SynthSpec& spec,
                              std::span<const MatchMethod> methods,
                              const GwlConfig& config, int threads = 1);

// "family,n,q,method,trial,nc_transport,nc_embedding,gw_disc,seconds"
void write_benchmark_csv(std::ostream& out, const BenchmarkReport& report);
// "family,n,q,method,metric,mean,ci95,n_trials,failures"
void write_summary_csv(std::ostream& out, const SynthSpec& spec,
                       const BenchmarkReport& report);

}  // namespace gwl
