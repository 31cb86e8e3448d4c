#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gwl {

enum class ErrorCode {
  kEmptyGraph,
  kMalformedLine,
  kNonpositiveWeight,
  kIndexOutOfRange,
  kDimensionMismatch,
  kInvalidArgument,
  kZeroVector,
  kNonFinite,
  kDiverged,
  kIo,
};

std::string_view to_string(ErrorCode code);

// Single exception type for the library; callers dispatch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }
  // what() without the code prefix.
  const std::string& detail() const noexcept { return detail_; }

  // True for failures of the numerical routines rather than of the inputs.
  bool is_numerical() const noexcept {
    return code_ == ErrorCode::kNonFinite || code_ == ErrorCode::kDiverged;
  }

 private:
  ErrorCode code_;
  std::string detail_;
};

namespace log {

enum class Level { kQuiet = 0, kWarning = 1, kInfo = 2, kDebug = 3 };

void set_level(Level level);
Level level();
void warn(std::string_view message);
void info(std::string_view message);
void debug(std::string_view message);

}  // namespace log

}  // namespace gwl
