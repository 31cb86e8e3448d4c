#include "cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <map>
#include <memory>
#include <ostream>
#include <sstream>

#include "gwl/benchmark_runner.hpp"
#include "gwl/csv.hpp"
#include "gwl/embedding.hpp"
#include "gwl/error.hpp"
#include "gwl/graph.hpp"
#include "gwl/pipeline.hpp"
#include "gwl/rng.hpp"
#include "gwl/synth.hpp"
#include "output.hpp"
#include "settings.hpp"
#include "workflows.hpp"

namespace gwl::cli {
namespace {

struct Common {
  Settings flags;
  std::string config_path;
  std::string out_dir;
  int verbosity = 0;
  bool quiet = false;

  Settings resolve() const {
    Settings s;
    if (!config_path.empty()) s.merge_file(config_path);
    s.merge(flags);
    return s;
  }

  void apply_log_level() const {
    if (quiet) {
      log::set_level(log::Level::kQuiet);
    } else if (verbosity >= 2) {
      log::set_level(log::Level::kDebug);
    } else if (verbosity == 1) {
      log::set_level(log::Level::kInfo);
    } else {
      log::set_level(log::Level::kWarning);
    }
  }
};

void add_common(CLI::App* app, Common& c) {
  auto setting = [&](const std::string& key, const std::string& help) {
    app->add_option_function<std::string>(
        "--" + key, [&c, key](const std::string& v) { c.flags.set(key, v); }, help);
  };
  setting("gamma", "proximal weight");
  setting("beta", "embedding regularizer weight");
  setting("outer", "outer iterations M");
  setting("inner", "inner proximal steps N");
  setting("sinkhorn-steps", "Sinkhorn rounds per step J");
  setting("dim", "embedding dimension D");
  setting("loss", "mse or kl");
  setting("kernel", "cosine or rbf");
  setting("sigma", "kernel bandwidth");
  setting("alpha-schedule", "linear or zero (zero = plain GW discrepancy)");
  setting("seed", "root random seed");
  setting("threads", "worker cap for benchmark trials");
  setting("lr", "Adam learning rate");
  setting("epochs", "embedding epochs per outer iteration");
  setting("batch-size", "node batch size");
  setting("warm-start", "true/false");
  setting("early-exit", "true/false");
  app->add_flag_function(
      "--timing", [&c](std::int64_t) { c.flags.set("timing", "true"); },
      "record wall-clock times (makes outputs non-reproducible)");
  app->add_option("--config", c.config_path, "flat key = value settings file");
  app->add_option("--out", c.out_dir, "output directory (default $GWL_OUT_DIR or gwl_out)");
  app->add_flag("-v,--verbose", c.verbosity, "more logging");
  app->add_flag("--quiet", c.quiet, "no warnings");
}

void record_config(OutputDir& dir, const GwlConfig& cfg) {
  for (const auto& [k, v] : describe(cfg)) dir.add_setting(k, v);
}

// "a b" or "a b w" lines; the weight column is ignored.
std::vector<std::pair<Index, Index>> read_label_pairs(const std::string& path,
                                                      const Graph& left,
                                                      const Graph& right) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path);
  std::vector<std::pair<Index, Index>> pairs;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto pos = line.find_first_not_of(" \t\r");
    if (pos == std::string::npos || line[pos] == '#') continue;
    std::istringstream ss(line);
    std::string a, b;
    if (!(ss >> a >> b)) {
      throw Error(ErrorCode::kMalformedLine,
                  path + ": line " + std::to_string(line_no) + ": expected two labels");
    }
    const auto i = left.find_label(a);
    const auto j = right.find_label(b);
    if (i < 0 || j < 0) {
      throw Error(ErrorCode::kIndexOutOfRange,
                  path + ": line " + std::to_string(line_no) + ": unknown label '" +
                      (i < 0 ? a : b) + "'");
    }
    pairs.emplace_back(static_cast<Index>(i), static_cast<Index>(j));
  }
  return pairs;
}

void write_matching(std::ostream& out, const Matching& m, const Graph& s,
                    const Graph& t) {
  out << "source,target\n";
  for (const auto& [i, j] : m) out << s.label(i) << ',' << t.label(j) << '\n';
}

void write_outer_trace(std::ostream& out, const std::vector<OuterRecord>& trace) {
  auto opt = [](const std::optional<double>& v) {
    return v ? format_double(*v) : std::string();
  };
  out << "iter,alpha,gw_disc,ot_objective,inner_steps,embed_before,embed_after,"
         "embed_diverged,nc_transport,nc_embedding\n";
  for (const auto& r : trace) {
    out << r.iteration << ',' << format_double(r.alpha) << ','
        << format_double(r.gw_discrepancy) << ',' << format_double(r.ot_objective) << ','
        << r.inner_steps << ',' << format_double(r.embedding_before) << ','
        << format_double(r.embedding_after) << ',' << (r.embedding_diverged ? 1 : 0)
        << ',' << opt(r.nc_transport) << ',' << opt(r.nc_embedding) << '\n';
  }
}

void write_recommendations(std::ostream& out, const std::vector<std::vector<Index>>& lists,
                           const Graph& users, const Graph& items) {
  out << "user,rank,item\n";
  for (Index u = 0; u < lists.size(); ++u) {
    for (std::size_t r = 0; r < lists[u].size(); ++r) {
      out << users.label(u) << ',' << r + 1 << ',' << items.label(lists[u][r]) << '\n';
    }
  }
}

std::string list_string(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + format_double(v[i]);
  return s;
}

// ---- match / embed ---------------------------------------------------------

struct MatchArgs {
  std::string source, target, truth, cross;
  bool directed = false;
  bool dense = false;
};

int cmd_match(const Common& common, const MatchArgs& a, bool embed_only,
              std::ostream& out, std::ostream& err) {
  const Settings settings = common.resolve();
  const GwlConfig cfg = settings.gwl_config();
  if (embed_only && cfg.schedule != AlphaSchedule::kLinear) {
    throw Error(ErrorCode::kInvalidArgument, "embed needs --alpha-schedule linear");
  }
  const EdgeListOptions opts{a.directed};
  const Graph gs = load_graph(a.source, opts);
  const Graph gt = load_graph(a.target, opts);
  std::vector<CrossObservation> cross;
  if (!a.cross.empty()) cross = load_correspondences(a.cross, gs, gt);
  std::optional<GroundTruth> truth;
  if (!a.truth.empty()) {
    truth.emplace();
    for (const auto& [i, j] : read_label_pairs(a.truth, gs, gt)) (*truth)[i] = j;
  }

  OutputDir dir(resolve_out_dir(common.out_dir));
  dir.add_input("source", a.source);
  dir.add_input("target", a.target);
  if (!a.cross.empty()) dir.add_input("cross", a.cross);
  if (truth) dir.add_input("truth", a.truth);
  record_config(dir, cfg);
  dir.add_setting("directed", a.directed ? "true" : "false");

  GwlInputs in;
  in.source = &gs;
  in.target = &gt;
  in.cross = cross;
  in.truth = truth ? &*truth : nullptr;
  const GwlResult r = run_gwl(in, cfg);

  if (!embed_only) {
    dir.write("coupling.csv", [&](std::ostream& o) { write_coupling_triples(o, r.coupling); });
    if (a.dense) {
      dir.write("coupling_dense.csv",
                [&](std::ostream& o) { write_matrix_csv(o, r.coupling, true); });
    }
    dir.write("matching.csv", [&](std::ostream& o) { write_matching(o, r.matching, gs, gt); });
    dir.write("solver_trace.csv", [&](std::ostream& o) { write_trace_csv(o, r.solver_trace); });
  }
  if (r.learned_embeddings && r.ok()) {
    dir.write("embedding_matching.csv",
              [&](std::ostream& o) { write_matching(o, r.embedding_matching, gs, gt); });
    dir.write("source_embeddings.csv",
              [&](std::ostream& o) { write_embeddings_csv(o, r.xs, gs.labels()); });
    dir.write("target_embeddings.csv",
              [&](std::ostream& o) { write_embeddings_csv(o, r.xt, gt.labels()); });
  }
  dir.write("outer_trace.csv", [&](std::ostream& o) { write_outer_trace(o, r.trace); });
  dir.write_manifest(embed_only ? "embed" : "match");

  if (!r.ok()) {
    err << "error: numerical failure: " << *r.failure << '\n';
    return kExitNumerical;
  }
  if (truth) {
    if (!embed_only) out << "node_correctness=" << format_double(node_correctness(r.matching, *truth)) << '\n';
    if (r.learned_embeddings) {
      out << "node_correctness_embedding="
          << format_double(node_correctness(r.embedding_matching, *truth)) << '\n';
    }
  }
  out << "output_dir=" << dir.root().string() << '\n';
  return kExitOk;
}

// ---- benchmark -------------------------------------------------------------

struct BenchArgs {
  std::string family = "knn";
  Index n = 20;
  std::vector<double> q = {0, 10, 20, 30, 40, 50};
  int trials = 10;
  std::vector<std::string> methods = {"gwd", "gwl-r", "gwl-c"};
};

int cmd_benchmark(const Common& common, const BenchArgs& a, std::ostream& out) {
  const Settings settings = common.resolve();
  const GwlConfig cfg = settings.gwl_config();
  SynthSpec spec;
  spec.family = parse_synth_family(a.family);
  spec.source_size = a.n;
  spec.q_percent = a.q;
  spec.trials = a.trials;
  spec.seed = cfg.seed;
  std::vector<MatchMethod> methods;
  for (const auto& m : a.methods) methods.push_back(parse_match_method(m));

  const BenchmarkReport report = run_benchmark(spec, methods, cfg, settings.threads());

  OutputDir dir(resolve_out_dir(common.out_dir));
  record_config(dir, cfg);
  dir.add_setting("family", a.family);
  dir.add_setting("n", std::to_string(a.n));
  dir.add_setting("q", list_string(a.q));
  dir.add_setting("trials", std::to_string(a.trials));
  std::string method_list;
  for (MatchMethod m : methods) method_list += (method_list.empty() ? "" : ",") + std::string(to_string(m));
  dir.add_setting("methods", method_list);
  dir.write("benchmark.csv", [&](std::ostream& o) { write_benchmark_csv(o, report); });
  dir.write("summary.csv", [&](std::ostream& o) { write_summary_csv(o, spec, report); });
  dir.write_manifest("benchmark");

  for (const auto& s : report.summary) {
    out << "q=" << format_double(s.q) << " method=" << to_string(s.method) << ' '
        << s.metric << '=' << format_double(s.stats.mean) << " +- "
        << format_double(s.stats.half_width) << " (trials=" << s.stats.count()
        << " failures=" << s.failures << ")\n";
  }
  out << "output_dir=" << dir.root().string() << '\n';
  return kExitOk;
}

// ---- recommend -------------------------------------------------------------

struct RecommendArgs {
  std::string users, items, interactions, truth;
  std::optional<double> holdout;
  std::size_t top_l = 5;
  Index planted = 0;
  double planted_noise = 5.0;
  double observed = 0.3;
  std::string family = "ba";
};

int cmd_recommend(const Common& common, const RecommendArgs& a, std::ostream& out,
                  std::ostream& err) {
  const Settings settings = common.resolve();
  const GwlConfig cfg = settings.gwl_config();
  OutputDir dir(resolve_out_dir(common.out_dir));
  record_config(dir, cfg);
  dir.add_setting("top-l", std::to_string(a.top_l));

  std::unique_ptr<Graph> users, items;
  std::vector<CrossObservation> observed;
  std::map<Index, std::vector<Index>> truth;

  if (a.planted > 0) {
    if (!a.users.empty() || !a.interactions.empty()) {
      throw Error(ErrorCode::kInvalidArgument, "--planted replaces the input files");
    }
    Rng rng = make_rng(cfg.seed, streams::kGraphGen);
    PlantedRecommendation p = make_planted_recommendation(
        a.planted, a.planted_noise, a.observed, parse_synth_family(a.family), rng);
    users = std::make_unique<Graph>(std::move(p.users));
    items = std::make_unique<Graph>(std::move(p.items));
    observed = std::move(p.observed);
    for (const auto& [u, i] : p.held_out) truth[u] = {i};
    dir.add_setting("planted", std::to_string(a.planted));
    dir.add_setting("planted-noise", format_double(a.planted_noise));
    dir.add_setting("observed", format_double(a.observed));
    dir.add_setting("family", a.family);
    dir.write("users.txt", [&](std::ostream& o) { write_graph(o, *users); });
    dir.write("items.txt", [&](std::ostream& o) { write_graph(o, *items); });
    dir.write("interactions.txt", [&](std::ostream& o) {
      for (const auto& c : observed) {
        o << users->label(c.source) << ' ' << items->label(c.target) << ' '
          << format_double(c.weight) << '\n';
      }
    });
    dir.write("truth.txt", [&](std::ostream& o) {
      for (const auto& [u, list] : truth) {
        for (Index i : list) o << users->label(u) << ' ' << items->label(i) << '\n';
      }
    });
  } else {
    if (a.users.empty() || a.items.empty() || a.interactions.empty()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "recommend needs USERS ITEMS --interactions FILE (or --planted N)");
    }
    if (a.holdout && !a.truth.empty()) {
      throw Error(ErrorCode::kInvalidArgument, "use either --truth or --holdout");
    }
    users = std::make_unique<Graph>(load_graph(a.users));
    items = std::make_unique<Graph>(load_graph(a.items));
    std::vector<CrossObservation> all = load_correspondences(a.interactions, *users, *items);
    dir.add_input("users", a.users);
    dir.add_input("items", a.items);
    dir.add_input("interactions", a.interactions);
    if (a.holdout) {
      if (!(*a.holdout > 0.0 && *a.holdout < 1.0)) {
        throw Error(ErrorCode::kInvalidArgument, "--holdout must be in (0, 1)");
      }
      dir.add_setting("holdout", format_double(*a.holdout));
      Rng rng = make_rng(cfg.seed, streams::kHoldout);
      std::bernoulli_distribution hold(*a.holdout);
      for (const auto& c : all) {
        if (hold(rng)) {
          truth[c.source].push_back(c.target);
        } else {
          observed.push_back(c);
        }
      }
    } else {
      observed = std::move(all);
      if (!a.truth.empty()) {
        dir.add_input("truth", a.truth);
        for (const auto& [u, i] : read_label_pairs(a.truth, *users, *items)) {
          truth[u].push_back(i);
        }
      }
    }
  }

  std::size_t top_l = a.top_l;
  if (top_l > items->node_count()) {
    log::warn("L = " + std::to_string(top_l) + " exceeds the " +
              std::to_string(items->node_count()) + " items; lists are truncated");
    top_l = items->node_count();
  }

  const Recommendations rec = recommend(*users, *items, observed, top_l, cfg);
  dir.write("recommendations_transport.csv",
            [&](std::ostream& o) { write_recommendations(o, rec.by_transport, *users, *items); });
  if (!rec.by_embedding.empty()) {
    dir.write("recommendations_embedding.csv", [&](std::ostream& o) {
      write_recommendations(o, rec.by_embedding, *users, *items);
    });
  }
  dir.write("outer_trace.csv", [&](std::ostream& o) { write_outer_trace(o, rec.result.trace); });
  dir.write_manifest("recommend");

  if (!rec.result.ok()) {
    err << "error: numerical failure: " << *rec.result.failure << '\n';
    return kExitNumerical;
  }
  if (!truth.empty()) {
    const TopLScores t = score_recommendations(rec.by_transport, truth, top_l);
    out << "precision=" << format_double(t.precision) << '\n'
        << "recall=" << format_double(t.recall) << '\n'
        << "f1=" << format_double(t.f1) << '\n';
    if (!rec.by_embedding.empty()) {
      const TopLScores e = score_recommendations(rec.by_embedding, truth, top_l);
      out << "precision_embedding=" << format_double(e.precision) << '\n'
          << "recall_embedding=" << format_double(e.recall) << '\n'
          << "f1_embedding=" << format_double(e.f1) << '\n';
    }
  }
  out << "output_dir=" << dir.root().string() << '\n';
  return kExitOk;
}

// ---- solver-compare --------------------------------------------------------

struct CompareArgs {
  std::string source, target;
  Index synthetic = 0;
  double noise = 20.0;
  std::string family = "knn";
  std::vector<std::string> solvers = {"proximal", "entropic"};
  std::vector<double> gammas = {1.0, 0.1, 0.01, 0.001};
  std::vector<int> sinkhorn = {1, 10, 100};
  bool log_domain = false;
};

int cmd_solver_compare(const Common& common, const CompareArgs& a, std::ostream& out) {
  const Settings settings = common.resolve();
  const GwlConfig cfg = settings.gwl_config();
  OutputDir dir(resolve_out_dir(common.out_dir));
  dir.add_setting("inner", std::to_string(cfg.inner_iterations));
  dir.add_setting("loss", std::string(to_string(cfg.loss.kind())));
  dir.add_setting("seed", std::to_string(cfg.seed));
  dir.add_setting("gammas", list_string(a.gammas));
  dir.add_setting("log-domain", a.log_domain ? "true" : "false");

  std::unique_ptr<Graph> gs, gt;
  if (a.synthetic > 0) {
    if (!a.source.empty()) {
      throw Error(ErrorCode::kInvalidArgument, "--synthetic replaces the input graphs");
    }
    Rng rng = make_rng(cfg.seed, streams::kGraphGen);
    const SynthFamily family = parse_synth_family(a.family);
    gs = std::make_unique<Graph>(generate_source(family, a.synthetic, rng));
    Rng noise_rng = make_rng(cfg.seed, streams::kNoise);
    gt = std::make_unique<Graph>(inject_noise(*gs, a.noise, family, noise_rng).target);
    dir.add_setting("synthetic", std::to_string(a.synthetic));
    dir.add_setting("noise", format_double(a.noise));
    dir.add_setting("family", a.family);
    dir.write("source.txt", [&](std::ostream& o) { write_graph(o, *gs); });
    dir.write("target.txt", [&](std::ostream& o) { write_graph(o, *gt); });
  } else {
    if (a.source.empty() || a.target.empty()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "solver-compare needs SOURCE TARGET (or --synthetic N)");
    }
    gs = std::make_unique<Graph>(load_graph(a.source));
    gt = std::make_unique<Graph>(load_graph(a.target));
    dir.add_input("source", a.source);
    dir.add_input("target", a.target);
  }
  std::vector<OtMethod> methods;
  for (const auto& s : a.solvers) methods.push_back(parse_ot_method(s));
  for (int j : a.sinkhorn) {
    if (j < 1) throw Error(ErrorCode::kInvalidArgument, "Sinkhorn steps must be >= 1");
  }
  for (double g : a.gammas) {
    if (!(g > 0.0)) throw Error(ErrorCode::kInvalidArgument, "gamma must be positive");
  }

  const std::vector<SolverRun> runs =
      compare_solvers(*gs, *gt, methods, a.gammas, a.sinkhorn, cfg.inner_iterations,
                      cfg.loss, a.log_domain);
  for (const auto& r : runs) {
    const std::string name = "traces/" + std::string(to_string(r.method)) + "_gamma" +
                             format_double(r.gamma) + "_J" +
                             std::to_string(r.sinkhorn_iterations) + ".csv";
    dir.write(name, [&](std::ostream& o) { write_trace_csv(o, r.trace); });
  }
  dir.write("compare.csv", [&](std::ostream& o) {
    o << "solver,gamma,J,steps,final_objective,unstable,log_domain\n";
    for (const auto& r : runs) {
      o << to_string(r.method) << ',' << format_double(r.gamma) << ','
        << r.sinkhorn_iterations << ',' << r.trace.records.size() << ','
        << format_double(r.final_objective) << ',' << (r.unstable() ? 1 : 0) << ','
        << (r.trace.used_log_domain ? 1 : 0) << '\n';
    }
  });
  dir.write_manifest("solver-compare");

  for (const auto& r : runs) {
    out << "solver=" << to_string(r.method) << " gamma=" << format_double(r.gamma)
        << " J=" << r.sinkhorn_iterations << " steps=" << r.trace.records.size()
        << " final_objective=" << format_double(r.final_objective)
        << (r.unstable() ? " unstable" : "") << '\n';
  }
  out << "output_dir=" << dir.root().string() << '\n';
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Gromov-Wasserstein learning for graph matching and node embedding"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "gwl 0.1.0");

  Common common;
  MatchArgs match_args;
  BenchArgs bench_args;
  RecommendArgs rec_args;
  CompareArgs cmp_args;

  auto add_pair = [](CLI::App* sub, MatchArgs& m) {
    sub->add_option("source", m.source, "source edge list")->required();
    sub->add_option("target", m.target, "target edge list")->required();
    sub->add_option("--truth", m.truth, "ground-truth pairs 'src tgt'");
    sub->add_option("--cross", m.cross, "observed correspondences 'src tgt weight'");
    sub->add_flag("--directed", m.directed, "treat edge lists as directed");
  };

  CLI::App* match = app.add_subcommand("match", "match two graphs");
  add_pair(match, match_args);
  match->add_flag("--dense", match_args.dense, "also write the dense coupling");
  add_common(match, common);

  CLI::App* embed = app.add_subcommand("embed", "learn node embeddings of two graphs");
  add_pair(embed, match_args);
  add_common(embed, common);

  CLI::App* bench = app.add_subcommand("benchmark", "synthetic matching benchmark");
  bench->add_option("--family", bench_args.family, "knn or ba");
  bench->add_option("--n", bench_args.n, "source graph size");
  bench->add_option("--q", bench_args.q, "noise levels in percent")->delimiter(',');
  bench->add_option("--trials", bench_args.trials, "trials per noise level");
  bench->add_option("--methods", bench_args.methods, "gwd, gwl-r, gwl-c")->delimiter(',');
  add_common(bench, common);

  CLI::App* rec = app.add_subcommand("recommend", "user-item recommendation");
  rec->add_option("users", rec_args.users, "user graph edge list");
  rec->add_option("items", rec_args.items, "item graph edge list");
  rec->add_option("--interactions", rec_args.interactions, "observed 'user item weight'");
  rec->add_option("--truth", rec_args.truth, "held-out 'user item' pairs");
  rec->add_option("--holdout", rec_args.holdout, "hold out this fraction of interactions");
  rec->add_option("-L,--top-l", rec_args.top_l, "list length");
  rec->add_option("--planted", rec_args.planted, "generate N users with a planted matching");
  rec->add_option("--planted-noise", rec_args.planted_noise, "item graph noise, percent");
  rec->add_option("--observed", rec_args.observed, "fraction of planted pairs observed");
  rec->add_option("--family", rec_args.family, "planted graph family, knn or ba");
  add_common(rec, common);

  CLI::App* cmp = app.add_subcommand("solver-compare", "proximal vs entropic traces");
  cmp->add_option("source", cmp_args.source, "source edge list");
  cmp->add_option("target", cmp_args.target, "target edge list");
  cmp->add_option("--synthetic", cmp_args.synthetic, "generate an N-node pair instead");
  cmp->add_option("--noise", cmp_args.noise, "noise of the generated target, percent");
  cmp->add_option("--family", cmp_args.family, "knn or ba");
  cmp->add_option("--solvers", cmp_args.solvers, "proximal, entropic")->delimiter(',');
  cmp->add_option("--gammas", cmp_args.gammas, "gamma values")->delimiter(',');
  cmp->add_option("--sinkhorn-list", cmp_args.sinkhorn, "J values")->delimiter(',');
  cmp->add_flag("--log-domain", cmp_args.log_domain, "allow the log-domain fallback");
  add_common(cmp, common);

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }

  try {
    common.apply_log_level();
    if (match->parsed()) return cmd_match(common, match_args, false, out, err);
    if (embed->parsed()) return cmd_match(common, match_args, true, out, err);
    if (bench->parsed()) return cmd_benchmark(common, bench_args, out);
    if (rec->parsed()) return cmd_recommend(common, rec_args, out, err);
    if (cmp->parsed()) return cmd_solver_compare(common, cmp_args, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.is_numerical() ? kExitNumerical : kExitInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return kExitInput;
}

}  // namespace gwl::cli
