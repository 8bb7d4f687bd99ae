#pragma once

#include <chrono>
#include <cmath>
#include <map>
#include <string>

namespace coulomb_momentum {

/// Outcome of one numerical check.
struct VerificationReport {
  std::string check_name;
  std::map<std::string, double> parameters;
  double metric = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  double runtime_ms = 0.0;
  std::string note;  // failure detail, empty when nothing went wrong

  /// passed <=> metric <= tolerance; NaN never passes.
  void settle() { passed = std::isfinite(metric) && metric <= tolerance; }
};

namespace detail {

class Stopwatch {
public:
  double elapsed_ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

}  // namespace detail
}  // namespace coulomb_momentum
