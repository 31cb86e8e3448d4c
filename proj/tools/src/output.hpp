#pragma once

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace gwl::cli {

// Writes result files into one directory and records what was written so the
// manifest can list input and output fingerprints.
class OutputDir {
 public:
  explicit OutputDir(std::filesystem::path root);

  const std::filesystem::path& root() const { return root_; }
  void write(const std::string& name, const std::function<void(std::ostream&)>& body);

  void add_input(const std::string& role, const std::string& path);
  void add_setting(const std::string& key, const std::string& value);
  // manifest.txt; outputs are listed with their FNV-1a hashes.
  void write_manifest(const std::string& command);

 private:
  std::filesystem::path root_;
  std::vector<std::string> outputs_;
  std::vector<std::pair<std::string, std::string>> inputs_;
  std::vector<std::pair<std::string, std::string>> settings_;
};

// --out, else $GWL_OUT_DIR, else ./gwl_out
std::filesystem::path resolve_out_dir(const std::string& flag);

}  // namespace gwl::cli
