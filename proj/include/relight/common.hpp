#pragma once
// Shared error taxonomy and a few constants. The error classes map 1:1 onto
// CLI exit codes: UsageError -> 1, DataError -> 2, anything else -> 3.

#include <stdexcept>
#include <string>

namespace relight {

inline constexpr double kPi = 3.14159265358979323846;

// bad flags, bad config values, incompatible checkpoint/config combinations
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// malformed or inconsistent dataset content (manifest, files on disk)
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// runtime failures: I/O, non-finite losses, internal contract violations
struct RunError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline void check_usage(bool ok, const std::string& msg) {
  if (!ok) throw UsageError(msg);
}
inline void check_data(bool ok, const std::string& msg) {
  if (!ok) throw DataError(msg);
}
inline void check_run(bool ok, const std::string& msg) {
  if (!ok) throw RunError(msg);
}

}  // namespace relight
