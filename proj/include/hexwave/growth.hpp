#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace hexwave {

/// Monostable reaction term f on [0,1] together with the linearization data
/// the wave construction needs. Immutable once built.
///
/// Besides f'(0) and f'(1), two constants describe how f stays close to its
/// tangent at the origin: f'(0) s - N s^(1+theta) <= f(s) on [0,1].
class GrowthFunction {
public:
  using Fn = std::function<double(double)>;

  /// Throws std::invalid_argument unless fprime0 > 0, fprime1 <= 0, N >= 0
  /// and theta in (0,1].
  GrowthFunction(Fn eval, double fprime0, double fprime1, double lower_bound_N,
                 double lower_bound_theta, std::optional<double> max_abs_slope = std::nullopt);

  /// Diffusion-only dynamics (f == 0). Not a KPP term; used by the simulator.
  static GrowthFunction none();

  double operator()(double u) const { return eval_(u); }
  double eval(double u) const { return eval_(u); }

  double fprime0() const noexcept { return fprime0_; }
  double fprime1() const noexcept { return fprime1_; }
  double lower_bound_N() const noexcept { return N_; }
  double lower_bound_theta() const noexcept { return theta_; }

  /// max |f'(u)| over [0,1]; analytic when known, otherwise sampled with
  /// central differences on 10^4 points.
  double max_abs_slope() const;

private:
  GrowthFunction() = default;

  Fn eval_;
  double fprime0_ = 0.0;
  double fprime1_ = 0.0;
  double N_ = 0.0;
  double theta_ = 1.0;
  std::optional<double> max_abs_slope_;
};

/// f(u) = a u (1 - u), with N = a and theta = 1.
GrowthFunction logistic(double a);

struct ConditionResult {
  std::string condition;
  bool pass = false;
  double worst_s = 0.0;
  // Smallest slack observed; negative means violated.
  double margin = 0.0;
};

struct ConditionReport {
  std::vector<ConditionResult> entries;

  bool all_pass() const;
  const ConditionResult& at(const std::string& condition) const;
  nlohmann::json to_json() const;
};

inline constexpr const char* kEndpointsVanish = "f(0)=0 and f(1)=0";
inline constexpr const char* kPositiveInterior = "f(s)>0 on (0,1)";
inline constexpr const char* kTangentUpperBound = "f(s)<=f'(0)s";
inline constexpr const char* kTangentLowerBound = "f'(0)s-N s^(1+theta)<=f(s)";

/// Sample-based check of the monostable structural conditions on a uniform
/// grid of `samples` points covering [0,1]. Requires samples >= 2.
ConditionReport check_kpp(const GrowthFunction& f, std::size_t samples);

}  // namespace hexwave
