#pragma once

#include <stdexcept>
#include <string>

namespace hexwave {

/// A numerical routine failed to bracket, converge or stay consistent.
class SolverError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

enum class SpeedRegime { supercritical, critical, subcritical };

const char* to_string(SpeedRegime regime);

/// Raised when a construction needs c > c* but got c <= c*.
class SpeedRegimeError : public SolverError {
public:
  SpeedRegimeError(SpeedRegime regime, double c, double c_star);

  SpeedRegime regime() const noexcept { return regime_; }
  double speed() const noexcept { return c_; }
  double minimal_speed() const noexcept { return c_star_; }

private:
  SpeedRegime regime_;
  double c_;
  double c_star_;
};

}  // namespace hexwave
