#include "hexwave/dispersion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "hexwave/csv.hpp"
#include "hexwave/error.hpp"

namespace hexwave {

namespace {

constexpr double kLambdaCap = 500.0;

void require_positive_lambda(double lambda, const char* who) {
  if (!(lambda > 0.0)) throw std::invalid_argument(std::string(who) + ": lambda must be positive");
}

// Bisection on a sign change lo -> hi (f(lo) < 0 < f(hi) or the reverse),
// run until the interval stops shrinking or reaches rel_tol.
template <class F>
double bisect(F&& f, double lo, double hi, double rel_tol = 0.0) {
  const bool rising = f(lo) < 0.0;
  for (int it = 0; it < 400; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= std::min(lo, hi) || mid >= std::max(lo, hi)) break;
    if (std::abs(hi - lo) <= rel_tol * std::max(std::abs(lo), std::abs(hi))) break;
    const double v = f(mid);
    if (v == 0.0) return mid;
    if ((v < 0.0) == rising) lo = mid;
    else hi = mid;
  }
  return 0.5 * (lo + hi);
}

struct RatioMinimum {
  double lambda;
  double ratio;
};

// Minimizes g(l)/l for convex g with g(0) > 0 through the increasing root of
// h(l) = l g'(l) - g(l); h'(l) = l g''(l).
template <class G, class Gp, class Gpp>
RatioMinimum minimize_ratio(G&& g, Gp&& gp, Gpp&& gpp, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("minimal speed: tolerance must be positive");
  auto h = [&](double l) { return l * gp(l) - g(l); };

  double lo = 0.0;
  double hi = 1.0;
  while (h(hi) <= 0.0) {
    lo = hi;
    hi *= 2.0;
    if (hi > kLambdaCap)
      throw SolverError("minimal speed: lambda g' - g has no sign change in (0, " +
                        format_number(kLambdaCap) + "]");
  }
  double l = bisect(h, lo, hi, tol);
  for (int k = 0; k < 3; ++k) {
    const double slope = l * gpp(l);
    if (!(slope > 0.0)) break;
    const double next = l - h(l) / slope;
    if (!(next > lo && next < hi)) break;
    l = next;
  }
  return {l, g(l) / l};
}

}  // namespace

double normalize_angle(double alpha) {
  constexpr double two_pi = 2.0 * kPi;
  double a = std::fmod(alpha, two_pi);
  if (a < 0.0) a += two_pi;
  if (a >= two_pi) a = 0.0;
  return a;
}

Direction Direction::from_angle(double alpha) {
  Direction d;
  d.alpha = normalize_angle(alpha);
  d.kappa = std::cos(d.alpha);
  d.sigma = std::sin(d.alpha);
  const double half_k = 0.5 * d.kappa;
  const double tilt = 0.5 * kSqrt3 * d.sigma;
  d.delta = {d.kappa, half_k + tilt, half_k - tilt};
  return d;
}

double g_value(double lambda, const Direction& dir, double fprime0) {
  require_positive_lambda(lambda, "g_value");
  double s = 0.0;
  for (double d : dir.delta) s += std::cosh(d * lambda);
  return s / 3.0 - 1.0 + fprime0;
}

double g_slope(double lambda, const Direction& dir) {
  double s = 0.0;
  for (double d : dir.delta) s += d * std::sinh(d * lambda);
  return s / 3.0;
}

double g_curvature(double lambda, const Direction& dir) {
  double s = 0.0;
  for (double d : dir.delta) s += d * d * std::cosh(d * lambda);
  return s / 3.0;
}

double big_g(double c, double lambda, const Direction& dir, double fprime0) {
  require_positive_lambda(lambda, "big_g");
  return c * lambda - g_value(lambda, dir, fprime0);
}

namespace {
// g extended to lambda = 0 for the solvers' brackets.
double g_closed(double lambda, const Direction& dir, double fprime0) {
  double s = 0.0;
  for (double d : dir.delta) s += std::cosh(d * lambda);
  return s / 3.0 - 1.0 + fprime0;
}
}  // namespace

DispersionResult minimal_speed(const Direction& dir, double fprime0, double tol) {
  if (!(fprime0 > 0.0)) throw std::invalid_argument("minimal_speed: f'(0) must be positive");
  const auto m = minimize_ratio([&](double l) { return g_closed(l, dir, fprime0); },
                                [&](double l) { return g_slope(l, dir); },
                                [&](double l) { return g_curvature(l, dir); }, tol);
  return {m.ratio, m.lambda, dir.alpha};
}

double tangent_band(double c_star) { return 1e-9 * std::max(1.0, c_star); }

RootClassification decay_roots(double c, const Direction& dir, double fprime0) {
  if (!(c > 0.0)) throw std::invalid_argument("decay_roots: speed must be positive");
  RootClassification out;
  out.c = c;
  out.minimal = minimal_speed(dir, fprime0);
  const double c_star = out.minimal.c_star;
  const double l_star = out.minimal.lambda_star;

  if (std::abs(c - c_star) <= tangent_band(c_star)) {
    out.variant = Tangent{l_star};
    return out;
  }
  if (c < c_star) {
    out.variant = NoRoot{};
    return out;
  }
  auto G = [&](double l) { return c * l - g_closed(l, dir, fprime0); };
  const double l1 = bisect(G, 0.0, l_star);
  double hi = 2.0 * l_star;
  while (G(hi) >= 0.0) {
    hi *= 2.0;
    if (hi > 2.0 * kLambdaCap) throw SolverError("decay_roots: cannot bracket the larger root");
  }
  const double l2 = bisect(G, l_star, hi);
  out.variant = TwoRoots{l1, l2};
  return out;
}

double lambda_zero(double c, const Direction& dir, double fprime1) {
  if (!(c > 0.0)) throw std::invalid_argument("lambda_zero: speed must be positive");
  if (!(fprime1 < 0.0)) throw std::invalid_argument("lambda_zero: f'(1) must be negative");
  auto F = [&](double l) {
    double s = 0.0;
    for (double d : dir.delta) s += std::cosh(d * l);
    return c * l - s / 3.0 + 1.0 - fprime1;
  };
  double lo = -1.0;
  while (F(lo) >= 0.0) {
    lo *= 2.0;
    if (lo < -700.0) throw SolverError("lambda_zero: cannot bracket the negative root");
  }
  return bisect(F, lo, 0.0);
}

double phi(int n, double alpha) {
  const double c = std::cos(alpha);
  const double s = std::sin(alpha);
  const double h = 0.5 * kSqrt3;
  const double p = 2.0 * n + 1.0;
  return (h * c + 0.5 * s) * std::pow(h * s - 0.5 * c, p) +
         (h * c - 0.5 * s) * std::pow(h * s + 0.5 * c, p) - s * std::pow(c, p);
}

double dg_dalpha_closed(double lambda, const Direction& dir) {
  require_positive_lambda(lambda, "dg_dalpha_closed");
  // d delta_m / d alpha
  const double h = 0.5 * kSqrt3;
  const std::array<double, 3> rate{-dir.sigma, -0.5 * dir.sigma + h * dir.kappa,
                                   -0.5 * dir.sigma - h * dir.kappa};
  double s = 0.0;
  for (int m = 0; m < 3; ++m) s += rate[m] * std::sinh(dir.delta[m] * lambda);
  return lambda * s / 3.0;
}

double dg_dalpha_series(double lambda, double alpha, int terms) {
  require_positive_lambda(lambda, "dg_dalpha_series");
  if (terms < 1) throw std::invalid_argument("dg_dalpha_series: need at least one term");
  const double l2 = lambda * lambda;
  double coef = l2 / 3.0;  // lambda^(2n+2) / (3 (2n+1)!) at n = 0
  double sum = 0.0;
  for (int n = 0; n < terms; ++n) {
    // phi_0 and phi_1 vanish identically
    if (n >= 2) sum += coef * phi(n, alpha);
    coef *= l2 / ((2.0 * n + 2.0) * (2.0 * n + 3.0));
  }
  return sum;
}

std::vector<SpeedRow> speed_curve(std::span<const double> alphas, double fprime0) {
  if (alphas.empty()) throw std::invalid_argument("speed_curve: no angles");
  std::vector<SpeedRow> rows;
  rows.reserve(alphas.size());
  for (double a : alphas) {
    const auto r = minimal_speed(Direction::from_angle(a), fprime0);
    rows.push_back({r.alpha, r.c_star, r.lambda_star});
  }
  return rows;
}

double grid_search_speed(const Direction& dir, double fprime0, double step, int count) {
  double best = std::numeric_limits<double>::infinity();
  for (int n = 1; n <= count; ++n) {
    const double l = step * n;
    best = std::min(best, g_value(l, dir, fprime0) / l);
  }
  return best;
}

double square_g_value(double nu, double beta, double fprime0) {
  return 2.0 * std::cosh(nu * std::cos(beta)) + 2.0 * std::cosh(nu * std::sin(beta)) - 4.0 +
         fprime0;
}

SquareResult square_minimal_speed(double beta, double fprime0, double tol) {
  if (!(fprime0 > 0.0))
    throw std::invalid_argument("square_minimal_speed: f'(0) must be positive");
  const double b = normalize_angle(beta);
  const double cb = std::cos(b);
  const double sb = std::sin(b);
  const auto m = minimize_ratio(
      [&](double v) { return square_g_value(v, b, fprime0); },
      [&](double v) { return 2.0 * (cb * std::sinh(v * cb) + sb * std::sinh(v * sb)); },
      [&](double v) { return 2.0 * (cb * cb * std::cosh(v * cb) + sb * sb * std::cosh(v * sb)); },
      tol);
  return {m.ratio, m.lambda, b};
}

}  // namespace hexwave
