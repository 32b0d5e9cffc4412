#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include <json.hpp>

#include "hexwave/dispersion.hpp"
#include "hexwave/growth.hpp"

namespace hexwave {

/// Uniform grid xi_k = -L + k h, k = 0..2 floor(L/h).
struct ProfileGrid {
  double L = 0.0;
  double h = 0.0;
  std::vector<double> values;

  static ProfileGrid zeros(double L, double h);
  static std::size_t node_count(double L, double h);

  std::size_t size() const noexcept { return values.size(); }
  double xi(std::size_t k) const noexcept { return -L + static_cast<double>(k) * h; }
};

/// How the profile is continued outside the window. Right of the window U = 1.
/// Left of the window U = 0 by default; with `left_tail_rate` set to lambda,
/// U(xi) = U(-L) exp(lambda (xi + L)) instead, and the weighted integral is
/// seeded with the matching geometric tail.
struct Closure {
  std::optional<double> left_tail_rate;
};

struct IterationParams {
  double c = 0.0;
  double mu = 0.0;
  double gamma = 0.0;
  double M = 0.0;
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double lambda_star = 0.0;
  double c_star = 0.0;
};

/// min(1, exp(lambda1 xi)).
double upper_solution(double xi, double lambda1);

/// max(0, (1 - M exp(gamma xi)) exp(lambda1 xi)).
double lower_solution(double xi, double lambda1, double gamma, double M);
double lower_solution(double xi, const IterationParams& params);

/// Throws SpeedRegimeError unless c > c*; safety in (0,1).
IterationParams make_params(double c, const Direction& dir, const GrowthFunction& f,
                            double safety = 0.5);

/// Linearly interpolated profile value at arbitrary xi, honouring the closure.
double sample_profile(const ProfileGrid& U, double xi, const Closure& closure = {});

/// Six-shift difference sum_m [U(xi - d_m) + U(xi + d_m)] - 6 U(xi) at every node.
std::vector<double> shift_difference(const ProfileGrid& U, const Direction& dir,
                                     const Closure& closure = {});

/// mu U + D[U]/(6c) + f(U)/c pointwise. Requires h <= 0.05.
ProfileGrid apply_H(const ProfileGrid& U, const IterationParams& params, const Direction& dir,
                    const GrowthFunction& f, const Closure& closure = {});

/// exp(-mu xi) int_{-inf}^{xi} exp(mu z) H(z) dz with H piecewise linear.
ProfileGrid weighted_integral(const ProfileGrid& hvals, double mu, const Closure& closure = {});

/// Exponent lambda for which the discrete scheme maps exp(lambda xi) to
/// itself in the linear regime, bracketed around params.lambda1.
double grid_tail_rate(const IterationParams& params, const Direction& dir, double fprime0,
                      double h);

struct WaveOptions {
  double L = 60.0;
  double h = 0.02;
  double tol = 1e-8;
  std::size_t max_iters = 5000;
  double safety = 0.5;
  // Multiplies the lower-solution coefficient M.
  double M_scale = 1.0;
  // Start from the upper solution translated to min(1, exp(lambda (xi + shift))).
  double shift = 0.0;
  // Slack allowed when checking the sandwich and the monotone decrease.
  double check_slack = 1e-14;
};

struct IterationStats {
  std::size_t iterations = 0;
  double last_change = 0.0;
  double max_upper_excess = 0.0;   // max(U_n - upper)
  double max_lower_excess = 0.0;   // max(lower - U_n)
  double max_increase = 0.0;       // max(U_{n+1} - U_n)
  double max_descent = 0.0;        // max(U_k - U_{k+1}) along xi
};

struct WaveProfile {
  ProfileGrid grid;
  double c = 0.0;
  double alpha = 0.0;
  double residual_max = 0.0;
  double tail_rate = 0.0;
  IterationParams params;
  IterationStats stats;
  double tol = 0.0;

  Closure closure() const { return Closure{tail_rate}; }
  nlohmann::json sidecar() const;
};

/// Monotone iteration from the upper solution. Throws SolverError when
/// max_iters is exhausted or the iterate leaves the upper/lower sandwich.
WaveProfile iterate_profile(double c, const Direction& dir, const GrowthFunction& f,
                            const WaveOptions& options = {});

/// max |c U' - D[U]/6 - f(U)| over nodes with xi in [-L+1, L-1].
double residual(const ProfileGrid& U, double c, const Direction& dir, const GrowthFunction& f,
                const Closure& closure = {});

/// Position where the profile crosses 1/2 (linear interpolation).
double half_crossing(const ProfileGrid& U);

/// Resample so that U(0) = 1/2.
ProfileGrid normalize_profile(const ProfileGrid& U);

/// Translate by a whole number of nodes (positive moves the front right).
ProfileGrid shift_profile(const ProfileGrid& U, long nodes);

/// Least-squares slope of ln U over nodes with U in [10 tol, 1e-3].
double left_decay_rate(const ProfileGrid& U, double tol);
/// Least-squares slope of ln(1 - U) over nodes with 1 - U in [10 tol, 1e-3].
double right_decay_rate(const ProfileGrid& U, double tol);

double sup_distance(const ProfileGrid& a, const ProfileGrid& b);

}  // namespace hexwave
