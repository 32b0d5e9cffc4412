#include "hexwave/error.hpp"

#include "hexwave/csv.hpp"

namespace hexwave {

const char* to_string(SpeedRegime regime) {
  switch (regime) {
    case SpeedRegime::supercritical: return "supercritical";
    case SpeedRegime::critical: return "critical";
    case SpeedRegime::subcritical: return "subcritical";
  }
  return "unknown";
}

namespace {

std::string regime_message(SpeedRegime regime, double c, double c_star) {
  std::string msg = "c = " + format_number(c) + ", c* = " + format_number(c_star) + ": ";
  switch (regime) {
    case SpeedRegime::critical:
      return msg +
             "critical speed: G(c, lambda) has the double root lambda1 = lambda2 = lambda*, "
             "the lower-solution gap is empty; monotone iteration requires c > c*";
    case SpeedRegime::subcritical:
      return msg +
             "subcritical speed: G(c, lambda) < 0 for every lambda > 0, no traveling wave "
             "exists; monotone iteration requires c > c*";
    case SpeedRegime::supercritical: break;
  }
  return msg + "supercritical speed";
}

}  // namespace

SpeedRegimeError::SpeedRegimeError(SpeedRegime regime, double c, double c_star)
    : SolverError(regime_message(regime, c, c_star)), regime_(regime), c_(c), c_star_(c_star) {}

}  // namespace hexwave
