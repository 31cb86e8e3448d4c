#pragma once

#include <map>
#include <string>
#include <vector>

#include "gwl/pipeline.hpp"

namespace gwl::cli {

// Flat key = value settings. Later layers override earlier ones:
// built-in defaults, then the config file, then command-line flags.
class Settings {
 public:
  static const std::vector<std::string>& known_keys();

  void set(const std::string& key, const std::string& value);
  bool has(const std::string& key) const { return values_.count(key) > 0; }
  const std::map<std::string, std::string>& values() const { return values_; }

  // Reads "key = value" lines; '#' starts a comment.
  void merge_file(const std::string& path);
  void merge(const Settings& other);

  double get_double(const std::string& key, double fallback) const;
  long long get_int(const std::string& key, long long fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  std::string get_string(const std::string& key, const std::string& fallback) const;

  GwlConfig gwl_config() const;
  int threads() const;
  bool timing() const { return get_bool("timing", false); }

 private:
  std::map<std::string, std::string> values_;
};

// Every resolved setting, one "key = value" line each, in key order.
std::vector<std::pair<std::string, std::string>> describe(const GwlConfig& cfg);

}  // namespace gwl::cli
