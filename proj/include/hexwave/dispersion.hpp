#pragma once

#include <array>
#include <span>
#include <variant>
#include <vector>

namespace hexwave {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kSqrt3 = 1.73205080756887729353;

/// Wraps an angle into [0, 2 pi).
double normalize_angle(double alpha);

/// Propagation direction on the hexagonal lattice. `delta` holds the
/// projections of the three lattice axes onto (cos a, sin a).
struct Direction {
  double alpha = 0.0;
  double kappa = 1.0;
  double sigma = 0.0;
  std::array<double, 3> delta{1.0, 0.5, 0.5};

  static Direction from_angle(double alpha);
};

/// g(lambda) = (1/3) sum_m cosh(delta_m lambda) - 1 + f'(0).
double g_value(double lambda, const Direction& dir, double fprime0);
/// d g / d lambda = (1/3) sum_m delta_m sinh(delta_m lambda).
double g_slope(double lambda, const Direction& dir);
/// d^2 g / d lambda^2.
double g_curvature(double lambda, const Direction& dir);

/// G(c, lambda) = c lambda - g(lambda).
double big_g(double c, double lambda, const Direction& dir, double fprime0);

struct DispersionResult {
  double c_star = 0.0;
  double lambda_star = 0.0;
  double alpha = 0.0;
};

inline constexpr double kDefaultSpeedTol = 1e-12;

/// c* = inf_{lambda>0} g(lambda)/lambda via the root of lambda g' - g.
DispersionResult minimal_speed(const Direction& dir, double fprime0, double tol = kDefaultSpeedTol);

struct TwoRoots {
  double lambda1;
  double lambda2;
};
struct Tangent {
  double lambda_star;
};
struct NoRoot {};

struct RootClassification {
  std::variant<TwoRoots, Tangent, NoRoot> variant;
  double c = 0.0;
  DispersionResult minimal;

  bool two_roots() const { return std::holds_alternative<TwoRoots>(variant); }
  bool tangent() const { return std::holds_alternative<Tangent>(variant); }
  bool no_root() const { return std::holds_alternative<NoRoot>(variant); }
};

/// |c - c*| at or below this band counts as the tangent case.
double tangent_band(double c_star);

/// Positive roots of G(c, .) = 0.
RootClassification decay_roots(double c, const Direction& dir, double fprime0);

/// Unique negative root of c lambda - (1/3) sum cosh(delta_m lambda) + 1 - f'(1).
double lambda_zero(double c, const Direction& dir, double fprime1);

/// Angular coefficient of the lambda^(2n+2) term in d g / d alpha.
double phi(int n, double alpha);

/// d g / d alpha, closed form.
double dg_dalpha_closed(double lambda, const Direction& dir);

/// d g / d alpha, truncated power series sum_{n<terms} lambda^(2n+2) phi_n / (3 (2n+1)!).
double dg_dalpha_series(double lambda, double alpha, int terms);

struct SpeedRow {
  double alpha;
  double c_star;
  double lambda_star;
};

/// Rows preserve the order of `alphas`; each alpha is reported normalized.
std::vector<SpeedRow> speed_curve(std::span<const double> alphas, double fprime0);

/// Minimum over the grid lambda_n = step * n, n = 1..count, of g/lambda.
double grid_search_speed(const Direction& dir, double fprime0, double step = 0.01, int count = 2000);

// Four-neighbour square lattice, for comparison.

double square_g_value(double nu, double beta, double fprime0);

struct SquareResult {
  double c_star = 0.0;
  double nu_star = 0.0;
  double beta = 0.0;
};

SquareResult square_minimal_speed(double beta, double fprime0, double tol = kDefaultSpeedTol);

}  // namespace hexwave
