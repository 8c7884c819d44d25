#pragma once

// Shared error types and small utilities used across the library.

#include <cstdint>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace tubewave {

struct FoldedTube : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NonPositiveRadius : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ControlEndViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct OutOfTube : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct SingularMass : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct LinearSolveFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct GridTooCoarse : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct GridMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct MissingHistory : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NoConvergence : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Shortest text that round-trips a double exactly; used everywhere we emit
/// numbers so identical runs produce identical bytes.
inline std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

/// FNV-1a over a byte string; stable across platforms, good enough for
/// manifest checksums.
inline std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline std::string hex64(std::uint64_t h) {
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace tubewave
