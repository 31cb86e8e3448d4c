#include "settings.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>

#include "gwl/csv.hpp"
#include "gwl/error.hpp"

namespace gwl::cli {
namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void bad_value(const std::string& key, const std::string& value) {
  throw Error(ErrorCode::kInvalidArgument,
              "bad value '" + value + "' for '" + key + "'");
}

}  // namespace

const std::vector<std::string>& Settings::known_keys() {
  static const std::vector<std::string> keys = {
      "alpha-schedule", "batch-size", "beta",   "dim",        "early-exit",
      "epochs",         "gamma",      "inner",  "kernel",     "loss",
      "lr",             "outer",      "seed",   "sigma",      "sinkhorn-steps",
      "threads",        "timing",     "warm-start"};
  return keys;
}

void Settings::set(const std::string& key, const std::string& value) {
  const auto& keys = known_keys();
  if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
    throw Error(ErrorCode::kInvalidArgument, "unknown setting '" + key + "'");
  }
  values_[key] = value;
}

void Settings::merge_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorCode::kMalformedLine,
                  path + ": line " + std::to_string(line_no) + ": expected key = value");
    }
    set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
}

void Settings::merge(const Settings& other) {
  for (const auto& [k, v] : other.values_) values_[k] = v;
}

double Settings::get_double(const std::string& key, double fallback) const {
  auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  double v = 0.0;
  const std::string& s = it->second;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) bad_value(key, s);
  return v;
}

long long Settings::get_int(const std::string& key, long long fallback) const {
  auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  long long v = 0;
  const std::string& s = it->second;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) bad_value(key, s);
  return v;
}

bool Settings::get_bool(const std::string& key, bool fallback) const {
  auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  const std::string& s = it->second;
  if (s == "true" || s == "1" || s == "on" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "off" || s == "no") return false;
  bad_value(key, s);
}

std::string Settings::get_string(const std::string& key,
                                 const std::string& fallback) const {
  auto it = values_.find(key);
  return it == values_.end() ? fallback : it->second;
}

GwlConfig Settings::gwl_config() const {
  GwlConfig cfg;
  cfg.outer_iterations = static_cast<int>(get_int("outer", cfg.outer_iterations));
  cfg.inner_iterations = static_cast<int>(get_int("inner", cfg.inner_iterations));
  cfg.sinkhorn_iterations =
      static_cast<int>(get_int("sinkhorn-steps", cfg.sinkhorn_iterations));
  cfg.gamma = get_double("gamma", cfg.gamma);
  cfg.beta = get_double("beta", cfg.beta);
  cfg.dim = static_cast<int>(get_int("dim", cfg.dim));
  cfg.loss = LossSpec{parse_loss_kind(get_string("loss", "mse"))};
  cfg.kernel = parse_kernel_kind(get_string("kernel", "cosine"));
  if (has("sigma")) cfg.sigma = get_double("sigma", 0.0);
  const std::string schedule = get_string("alpha-schedule", "linear");
  if (schedule == "linear") {
    cfg.schedule = AlphaSchedule::kLinear;
  } else if (schedule == "zero") {
    cfg.schedule = AlphaSchedule::kZero;
  } else {
    bad_value("alpha-schedule", schedule);
  }
  const long long seed = get_int("seed", 0);
  if (seed < 0) bad_value("seed", std::to_string(seed));
  cfg.seed = static_cast<std::uint64_t>(seed);
  cfg.embed.learning_rate = get_double("lr", cfg.embed.learning_rate);
  cfg.embed.epochs = static_cast<int>(get_int("epochs", cfg.embed.epochs));
  cfg.embed.batch_size = static_cast<int>(get_int("batch-size", cfg.embed.batch_size));
  cfg.warm_start = get_bool("warm-start", cfg.warm_start);
  cfg.early_exit = get_bool("early-exit", cfg.early_exit);
  cfg.record_timing = timing();
  cfg.validate();
  return cfg;
}

int Settings::threads() const {
  const long long t = get_int("threads", 1);
  if (t < 1) bad_value("threads", std::to_string(t));
  return static_cast<int>(t);
}

std::vector<std::pair<std::string, std::string>> describe(const GwlConfig& cfg) {
  const KernelSpec k = cfg.kernel_spec();
  return {
      {"alpha-schedule", cfg.schedule == AlphaSchedule::kLinear ? "linear" : "zero"},
      {"batch-size", std::to_string(cfg.embed.batch_size)},
      {"beta", format_double(cfg.beta)},
      {"dim", std::to_string(cfg.dim)},
      {"early-exit", cfg.early_exit ? "true" : "false"},
      {"epochs", std::to_string(cfg.embed.epochs)},
      {"gamma", format_double(cfg.gamma)},
      {"inner", std::to_string(cfg.inner_iterations)},
      {"kernel", std::string(to_string(cfg.kernel))},
      {"loss", std::string(to_string(cfg.loss.kind()))},
      {"lr", format_double(cfg.embed.learning_rate)},
      {"outer", std::to_string(cfg.outer_iterations)},
      {"seed", std::to_string(cfg.seed)},
      {"sigma", format_double(k.sigma)},
      {"sinkhorn-steps", std::to_string(cfg.sinkhorn_iterations)},
      {"warm-start", cfg.warm_start ? "true" : "false"},
  };
}

}  // namespace gwl::cli
