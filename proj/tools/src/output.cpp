#include "output.hpp"

#include <cstdlib>
#include <fstream>

#include "gwl/csv.hpp"
#include "gwl/error.hpp"

namespace gwl::cli {

OutputDir::OutputDir(std::filesystem::path root) : root_(std::move(root)) {
  std::error_code ec;
  std::filesystem::create_directories(root_, ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot create " + root_.string() + ": " + ec.message());
}

void OutputDir::write(const std::string& name,
                      const std::function<void(std::ostream&)>& body) {
  const auto path = root_ / name;
  std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  body(out);
  out.close();
  if (!out) throw Error(ErrorCode::kIo, "write failed: " + path.string());
  outputs_.push_back(name);
}

void OutputDir::add_input(const std::string& role, const std::string& path) {
  inputs_.emplace_back(role, path);
}

void OutputDir::add_setting(const std::string& key, const std::string& value) {
  settings_.emplace_back(key, value);
}

void OutputDir::write_manifest(const std::string& command) {
  const auto path = root_ / "manifest.txt";
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  out << "tool = gwl\n";
  out << "command = " << command << '\n';
  for (const auto& [k, v] : settings_) out << "setting." << k << " = " << v << '\n';
  for (const auto& [role, p] : inputs_) {
    out << "input." << role << " = " << p << '\n';
    out << "input." << role << ".fnv1a = " << file_fingerprint(p) << '\n';
  }
  for (const auto& name : outputs_) {
    out << "output." << name << ".fnv1a = " << file_fingerprint((root_ / name).string())
        << '\n';
  }
}

std::filesystem::path resolve_out_dir(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("GWL_OUT_DIR"); env && *env) return env;
  return "gwl_out";
}

}  // namespace gwl::cli
