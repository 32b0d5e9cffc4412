#include "hexwave/growth.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace hexwave {

GrowthFunction::GrowthFunction(Fn eval, double fprime0, double fprime1, double lower_bound_N,
                               double lower_bound_theta, std::optional<double> max_abs_slope)
    : eval_(std::move(eval)),
      fprime0_(fprime0),
      fprime1_(fprime1),
      N_(lower_bound_N),
      theta_(lower_bound_theta),
      max_abs_slope_(max_abs_slope) {
  if (!eval_) throw std::invalid_argument("GrowthFunction: empty evaluator");
  if (!(fprime0 > 0.0)) throw std::invalid_argument("GrowthFunction: f'(0) must be positive");
  if (!(fprime1 <= 0.0)) throw std::invalid_argument("GrowthFunction: f'(1) must be <= 0");
  if (!(lower_bound_N >= 0.0)) throw std::invalid_argument("GrowthFunction: N must be >= 0");
  if (!(lower_bound_theta > 0.0 && lower_bound_theta <= 1.0))
    throw std::invalid_argument("GrowthFunction: theta must lie in (0, 1]");
}

GrowthFunction GrowthFunction::none() {
  GrowthFunction f;
  f.eval_ = [](double) { return 0.0; };
  f.max_abs_slope_ = 0.0;
  return f;
}

double GrowthFunction::max_abs_slope() const {
  if (max_abs_slope_) return *max_abs_slope_;
  constexpr int kPoints = 10000;
  constexpr double kStep = 1e-6;
  double best = 0.0;
  for (int k = 0; k < kPoints; ++k) {
    const double u = static_cast<double>(k) / (kPoints - 1);
    const double lo = std::max(0.0, u - kStep);
    const double hi = std::min(1.0, u + kStep);
    best = std::max(best, std::abs((eval_(hi) - eval_(lo)) / (hi - lo)));
  }
  return best;
}

GrowthFunction logistic(double a) {
  if (!(a > 0.0)) throw std::invalid_argument("logistic: growth rate must be positive");
  return GrowthFunction([a](double u) { return a * u * (1.0 - u); }, a, -a, a, 1.0, a);
}

bool ConditionReport::all_pass() const {
  return std::all_of(entries.begin(), entries.end(), [](const auto& e) { return e.pass; });
}

const ConditionResult& ConditionReport::at(const std::string& condition) const {
  for (const auto& e : entries)
    if (e.condition == condition) return e;
  throw std::out_of_range("no condition named " + condition);
}

nlohmann::json ConditionReport::to_json() const {
  auto out = nlohmann::json::array();
  for (const auto& e : entries)
    out.push_back({{"condition", e.condition}, {"pass", e.pass}, {"worst_s", e.worst_s},
                   {"margin", e.margin}});
  return out;
}

namespace {

// Tracks the smallest slack and where it occurred.
struct Worst {
  double margin = std::numeric_limits<double>::infinity();
  double s = 0.0;

  void see(double slack, double at) {
    if (slack < margin) {
      margin = slack;
      s = at;
    }
  }
  ConditionResult result(const char* name, double allowed) const {
    const double m = std::isfinite(margin) ? margin : 0.0;
    return {name, m >= -allowed, s, m};
  }
};

}  // namespace

ConditionReport check_kpp(const GrowthFunction& f, std::size_t samples) {
  if (samples < 2) throw std::invalid_argument("check_kpp: need at least two samples");

  const double scale = std::max(1.0, f.fprime0());
  const double endpoint_tol = 4.0 * std::numeric_limits<double>::epsilon() * scale;
  const double bound_tol = 1e-12 * scale;

  Worst endpoints, positive, upper, lower;
  endpoints.see(-std::abs(f(0.0)), 0.0);
  endpoints.see(-std::abs(f(1.0)), 1.0);

  const double last = static_cast<double>(samples - 1);
  for (std::size_t k = 0; k < samples; ++k) {
    const double s = static_cast<double>(k) / last;
    const double fs = f(s);
    const double tangent = f.fprime0() * s;
    lower.see(fs - (tangent - f.lower_bound_N() * std::pow(s, 1.0 + f.lower_bound_theta())), s);
    if (k == 0 || k + 1 == samples) continue;
    positive.see(fs, s);
    upper.see(tangent - fs, s);
  }

  ConditionReport report;
  report.entries.push_back(endpoints.result(kEndpointsVanish, endpoint_tol));
  auto pos = positive.result(kPositiveInterior, 0.0);
  pos.pass = positive.margin > 0.0;  // strict, and vacuous without interior samples
  report.entries.push_back(pos);
  report.entries.push_back(upper.result(kTangentUpperBound, bound_tol));
  report.entries.push_back(lower.result(kTangentLowerBound, bound_tol));
  return report;
}

}  // namespace hexwave
