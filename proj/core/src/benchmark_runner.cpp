#include "gwl/benchmark_runner.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <ostream>
#include <string>
#include <thread>

#include "gwl/csv.hpp"
#include "gwl/error.hpp"
#include "gwl/rng.hpp"

namespace gwl {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct TrialTask {
  std::size_t q_index = 0;
  int trial = 0;
};

std::vector<BenchmarkRow> run_trial(const SynthSpec& spec, const TrialTask& task,
                                    std::span<const MatchMethod> methods,
                                    const GwlConfig& base) {
  const double q = spec.q_percent[task.q_index];
  // The source graph depends on the trial only, so every q level of a trial
  // perturbs the same source.
  const std::uint64_t trial_seed =
      derive_seed(spec.seed, static_cast<std::uint64_t>(task.trial));
  Rng graph_rng = make_rng(trial_seed, streams::kGraphGen);
  const Graph source = generate_source(spec.family, spec.source_size, graph_rng);
  Rng noise_rng = make_rng(derive_seed(trial_seed, task.q_index), streams::kNoise);
  const NoisyPair pair = inject_noise(source, q, spec.family, noise_rng);

  std::vector<BenchmarkRow> rows;
  for (MatchMethod method : methods) {
    BenchmarkRow row;
    row.family = spec.family;
    row.n = spec.source_size;
    row.q = q;
    row.method = method;
    row.trial = task.trial;
    GwlConfig cfg = config_for_method(base, method);
    cfg.seed = derive_seed(trial_seed, "gwl");
    const auto start = std::chrono::steady_clock::now();
    try {
      GwlResult r = run_gwl(source, pair.target, cfg);
      if (!r.ok()) throw Error(ErrorCode::kNonFinite, *r.failure);
      row.nc_transport = node_correctness(r.matching, pair.truth);
      row.nc_embedding = r.learned_embeddings
                             ? node_correctness(r.embedding_matching, pair.truth)
                             : kNaN;
      row.gw_discrepancy = r.trace.back().gw_discrepancy;
    } catch (const Error& e) {
      log::warn("trial " + std::to_string(task.trial) + " q=" +
                format_double(q) + " " + std::string(to_string(method)) +
                " failed: " + e.what());
      row.failed = true;
      row.nc_transport = row.nc_embedding = row.gw_discrepancy = kNaN;
    }
    if (base.record_timing) {
      row.seconds = std::chrono::duration<double>(
                        std::chrono::steady_clock::now() - start)
                        .count();
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

std::string_view to_string(MatchMethod method) {
  switch (method) {
    case MatchMethod::kGwd: return "GWD";
    case MatchMethod::kGwlR: return "GWL-R";
    case MatchMethod::kGwlC: return "GWL-C";
  }
  return "?";
}

MatchMethod parse_match_method(std::string_view name) {
  std::string lower(name);
  for (char& c : lower) c = static_cast<char>(std::tolower(c));
  if (lower == "gwd") return MatchMethod::kGwd;
  if (lower == "gwl-r") return MatchMethod::kGwlR;
  if (lower == "gwl-c") return MatchMethod::kGwlC;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown method '" + std::string(name) + "'");
}

void SynthSpec::validate() const {
  if (source_size < 2) {
    throw Error(ErrorCode::kInvalidArgument, "source size must be >= 2");
  }
  if (trials < 1) throw Error(ErrorCode::kInvalidArgument, "trials must be >= 1");
  if (q_percent.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "need at least one noise level");
  }
  for (double q : q_percent) {
    if (!(q >= 0.0)) throw Error(ErrorCode::kInvalidArgument, "noise level < 0");
  }
}

const BenchmarkSummary* BenchmarkReport::find(double q, MatchMethod method,
                                              std::string_view metric) const {
  for (const auto& s : summary) {
    if (s.q == q && s.method == method && s.metric == metric) return &s;
  }
  return nullptr;
}

GwlConfig config_for_method(const GwlConfig& base, MatchMethod method) {
  GwlConfig cfg = base;
  switch (method) {
    case MatchMethod::kGwd:
      cfg.schedule = AlphaSchedule::kZero;
      break;
    case MatchMethod::kGwlR:
      cfg.schedule = AlphaSchedule::kLinear;
      cfg.kernel = KernelKind::kRbf;
      break;
    case MatchMethod::kGwlC:
      cfg.schedule = AlphaSchedule::kLinear;
      cfg.kernel = KernelKind::kCosine;
      break;
  }
  if (cfg.kernel != base.kernel) cfg.sigma.reset();
  return cfg;
}

BenchmarkReport run_benchmark(const SynthSpec& spec,
                              std::span<const MatchMethod> methods,
                              const GwlConfig& config, int threads) {
  spec.validate();
  config.validate();
  if (methods.empty()) throw Error(ErrorCode::kInvalidArgument, "no methods");

  std::vector<TrialTask> tasks;
  for (std::size_t qi = 0; qi < spec.q_percent.size(); ++qi) {
    for (int trial = 0; trial < spec.trials; ++trial) tasks.push_back({qi, trial});
  }
  std::vector<std::vector<BenchmarkRow>> results(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      results[i] = run_trial(spec, tasks[i], methods, config);
    }
  };
  const int workers =
      std::max(1, std::min<int>(threads, static_cast<int>(tasks.size())));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  BenchmarkReport report;
  for (auto& rows : results) {
    report.rows.insert(report.rows.end(), rows.begin(), rows.end());
  }
  for (double q : spec.q_percent) {
    for (MatchMethod method : methods) {
      for (std::string_view metric : {"nc_transport", "nc_embedding", "gw_disc"}) {
        if (metric == "nc_embedding" && method == MatchMethod::kGwd) continue;
        std::vector<double> values;
        int failures = 0;
        for (const auto& row : report.rows) {
          if (row.q != q || row.method != method) continue;
          if (row.failed) {
            ++failures;
            continue;
          }
          values.push_back(metric == "nc_transport"   ? row.nc_transport
                           : metric == "nc_embedding" ? row.nc_embedding
                                                      : row.gw_discrepancy);
        }
        BenchmarkSummary s;
        s.q = q;
        s.method = method;
        s.metric = std::string(metric);
        s.failures = failures;
        if (!values.empty()) {
          s.stats = confidence_interval(values);
        } else {
          s.stats.mean = kNaN;
          s.stats.half_width = kNaN;
        }
        report.summary.push_back(std::move(s));
      }
    }
  }
  return report;
}

void write_benchmark_csv(std::ostream& out, const BenchmarkReport& report) {
  out << "family,n,q,method,trial,nc_transport,nc_embedding,gw_disc,seconds\n";
  for (const auto& r : report.rows) {
    out << to_string(r.family) << ',' << r.n << ',' << format_double(r.q) << ','
        << to_string(r.method) << ',' << r.trial << ','
        << format_double(r.nc_transport) << ',' << format_double(r.nc_embedding)
        << ',' << format_double(r.gw_discrepancy) << ','
        << format_double(r.seconds) << '\n';
  }
}

void write_summary_csv(std::ostream& out, const SynthSpec& spec,
                       const BenchmarkReport& report) {
  out << "family,n,q,method,metric,mean,ci95,n_trials,failures\n";
  for (const auto& s : report.summary) {
    out << to_string(spec.family) << ',' << spec.source_size << ','
        << format_double(s.q) << ',' << to_string(s.method) << ',' << s.metric
        << ',' << format_double(s.stats.mean) << ','
        << format_double(s.stats.half_width) << ',' << s.stats.count() << ','
        << s.failures << '\n';
  }
}

}  // namespace gwl
