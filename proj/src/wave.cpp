#include "hexwave/wave.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hexwave/csv.hpp"
#include "hexwave/error.hpp"

namespace hexwave {

std::size_t ProfileGrid::node_count(double L, double h) {
  if (!(L > 0.0) || !(h > 0.0)) throw std::invalid_argument("ProfileGrid: need L > 0 and h > 0");
  const auto half = static_cast<std::size_t>(std::floor(L / h + 1e-9));
  if (half == 0) throw std::invalid_argument("ProfileGrid: h larger than L");
  return 2 * half + 1;
}

ProfileGrid ProfileGrid::zeros(double L, double h) {
  return ProfileGrid{L, h, std::vector<double>(node_count(L, h), 0.0)};
}

double upper_solution(double xi, double lambda1) {
  return std::min(1.0, std::exp(lambda1 * xi));
}

double lower_solution(double xi, double lambda1, double gamma, double M) {
  return std::max(0.0, (1.0 - M * std::exp(gamma * xi)) * std::exp(lambda1 * xi));
}

double lower_solution(double xi, const IterationParams& params) {
  return lower_solution(xi, params.lambda1, params.gamma, params.M);
}

IterationParams make_params(double c, const Direction& dir, const GrowthFunction& f,
                            double safety) {
  if (!(safety > 0.0 && safety < 1.0))
    throw std::invalid_argument("make_params: safety must lie in (0, 1)");
  const auto roots = decay_roots(c, dir, f.fprime0());
  const double c_star = roots.minimal.c_star;
  if (roots.tangent()) throw SpeedRegimeError(SpeedRegime::critical, c, c_star);
  if (roots.no_root()) throw SpeedRegimeError(SpeedRegime::subcritical, c, c_star);

  const auto [l1, l2] = std::get<TwoRoots>(roots.variant);
  IterationParams p;
  p.c = c;
  p.c_star = c_star;
  p.lambda_star = roots.minimal.lambda_star;
  p.lambda1 = l1;
  p.lambda2 = l2;
  p.gamma = safety * std::min(l1 * f.lower_bound_theta(), l2 - l1);
  p.M = std::max(1.0, f.lower_bound_N() / big_g(c, l1 + p.gamma, dir, f.fprime0()));
  p.mu = (f.max_abs_slope() + 1.0) * (1.0 + safety) / c;
  return p;
}

namespace {

// Node values extended by the closure: virtual nodes left of the window carry
// 0 or U0 exp(rate (xi - xi0)), virtual nodes right of it carry 1.
struct Extended {
  const ProfileGrid& U;
  const Closure& closure;

  double operator()(long k) const {
    const long n = static_cast<long>(U.values.size());
    if (k >= n) return 1.0;
    if (k >= 0) return U.values[static_cast<std::size_t>(k)];
    if (!closure.left_tail_rate) return 0.0;
    return U.values.front() * std::exp(*closure.left_tail_rate * static_cast<double>(k) * U.h);
  }
};

// Offset of a shift s in node units: floor(s/h) plus the fractional weight.
struct Stencil {
  long offset;
  double weight;
};

Stencil stencil_for(double shift, double h) {
  const double q = shift / h;
  const double j = std::floor(q);
  return {static_cast<long>(j), q - j};
}

std::array<Stencil, 6> shift_stencils(const Direction& dir, double h) {
  std::array<Stencil, 6> out{};
  for (int m = 0; m < 3; ++m) {
    out[2 * m] = stencil_for(dir.delta[m], h);
    out[2 * m + 1] = stencil_for(-dir.delta[m], h);
  }
  return out;
}

}  // namespace

double sample_profile(const ProfileGrid& U, double xi, const Closure& closure) {
  const Extended ext{U, closure};
  const double q = (xi + U.L) / U.h;
  const double j = std::floor(q);
  const double w = q - j;
  const long k = static_cast<long>(j);
  if (w == 0.0) return ext(k);
  return (1.0 - w) * ext(k) + w * ext(k + 1);
}

std::vector<double> shift_difference(const ProfileGrid& U, const Direction& dir,
                                     const Closure& closure) {
  const Extended ext{U, closure};
  const auto stencils = shift_stencils(dir, U.h);
  const long n = static_cast<long>(U.values.size());
  std::vector<double> out(U.values.size());
  for (long k = 0; k < n; ++k) {
    double sum = 0.0;
    for (const auto& s : stencils) {
      const long base = k + s.offset;
      sum += (1.0 - s.weight) * ext(base) + (s.weight == 0.0 ? 0.0 : s.weight * ext(base + 1));
    }
    out[static_cast<std::size_t>(k)] = sum - 6.0 * U.values[static_cast<std::size_t>(k)];
  }
  return out;
}

ProfileGrid apply_H(const ProfileGrid& U, const IterationParams& params, const Direction& dir,
                    const GrowthFunction& f, const Closure& closure) {
  if (U.h > 0.05 + 1e-15) throw std::invalid_argument("apply_H: grid spacing must be <= 0.05");
  const auto diff = shift_difference(U, dir, closure);
  ProfileGrid out{U.L, U.h, std::vector<double>(U.size())};
  const double inv_c = 1.0 / params.c;
  for (std::size_t k = 0; k < U.size(); ++k) {
    const double u = U.values[k];
    out.values[k] = params.mu * u + diff[k] * inv_c / 6.0 + f(u) * inv_c;
  }
  return out;
}

namespace {

// Cell weights of int_0^h exp(mu (s - h)) H(s) ds with H linear on the cell:
// (w0 - w1) H_left + w1 H_right.
struct CellWeights {
  double decay;  // exp(-mu h)
  double w0;
  double w1;
};

CellWeights cell_weights(double mu, double h) {
  const double w0 = -std::expm1(-mu * h) / mu;
  return {std::exp(-mu * h), w0, 1.0 / mu - w0 / (mu * h)};
}

}  // namespace

ProfileGrid weighted_integral(const ProfileGrid& hvals, double mu, const Closure& closure) {
  if (!(mu > 0.0)) throw std::invalid_argument("weighted_integral: mu must be positive");
  const auto cw = cell_weights(mu, hvals.h);
  ProfileGrid out{hvals.L, hvals.h, std::vector<double>(hvals.size())};
  if (hvals.values.empty()) return out;

  const double h0 = hvals.values.front();
  if (closure.left_tail_rate) {
    const double g = std::exp(*closure.left_tail_rate * hvals.h);
    out.values[0] = h0 * ((cw.w0 - cw.w1) + cw.w1 * g) / (g - cw.decay);
  } else {
    out.values[0] = h0 / mu;
  }
  for (std::size_t k = 0; k + 1 < hvals.size(); ++k)
    out.values[k + 1] = cw.decay * out.values[k] + (cw.w0 - cw.w1) * hvals.values[k] +
                        cw.w1 * hvals.values[k + 1];
  return out;
}

double grid_tail_rate(const IterationParams& params, const Direction& dir, double fprime0,
                      double h) {
  const auto stencils = shift_stencils(dir, h);
  const auto cw = cell_weights(params.mu, h);
  // Defect of the scheme on exp(lambda xi) in the linear regime; positive
  // below the slow root, negative between the two roots.
  auto defect = [&](double lambda) {
    double s = -6.0;
    for (const auto& st : stencils)
      s += (1.0 - st.weight) * std::exp(lambda * st.offset * h) +
           st.weight * std::exp(lambda * (st.offset + 1) * h);
    const double symbol = params.mu + s / (6.0 * params.c) + fprime0 / params.c;
    const double g = std::exp(lambda * h);
    return symbol * ((cw.w0 - cw.w1) + cw.w1 * g) - (g - cw.decay);
  };
  double lo = 0.0;
  double hi = params.lambda_star;
  if (!(defect(lo) > 0.0) || !(defect(hi) < 0.0))
    throw SolverError("grid_tail_rate: no discrete tail exponent in (0, lambda*]; refine h");
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (defect(mid) > 0.0) lo = mid;
    else hi = mid;
  }
  return 0.5 * (lo + hi);
}

nlohmann::json WaveProfile::sidecar() const {
  return {{"c", c},
          {"alpha", alpha},
          {"L", grid.L},
          {"h", grid.h},
          {"mu", params.mu},
          {"gamma", params.gamma},
          {"M", params.M},
          {"lambda1", params.lambda1},
          {"lambda2", params.lambda2},
          {"residual_max", residual_max},
          {"iterations", stats.iterations},
          {"c_star", params.c_star},
          {"tail_rate", tail_rate},
          {"tol", tol}};
}

WaveProfile iterate_profile(double c, const Direction& dir, const GrowthFunction& f,
                            const WaveOptions& options) {
  if (!(options.tol > 0.0)) throw std::invalid_argument("iterate_profile: tol must be positive");
  if (!(options.M_scale >= 1.0)) throw std::invalid_argument("iterate_profile: M_scale must be >= 1");

  WaveProfile out;
  out.c = c;
  out.alpha = dir.alpha;
  out.tol = options.tol;
  out.params = make_params(c, dir, f, options.safety);
  out.params.M *= options.M_scale;
  const auto& p = out.params;

  out.tail_rate = grid_tail_rate(p, dir, f.fprime0(), options.h);
  const Closure closure{out.tail_rate};

  ProfileGrid U = ProfileGrid::zeros(options.L, options.h);
  std::vector<double> upper(U.size());
  std::vector<double> lower(U.size());
  for (std::size_t k = 0; k < U.size(); ++k) {
    const double x = U.xi(k) + options.shift;
    upper[k] = upper_solution(x, out.tail_rate);
    lower[k] = lower_solution(x, out.tail_rate, p.gamma, p.M);
    U.values[k] = upper[k];
  }

  auto& st = out.stats;
  for (std::size_t it = 1;; ++it) {
    ProfileGrid next = weighted_integral(apply_H(U, p, dir, f, closure), p.mu, closure);
    double change = 0.0;
    for (std::size_t k = 0; k < U.size(); ++k) {
      const double v = next.values[k];
      st.max_upper_excess = std::max(st.max_upper_excess, v - upper[k]);
      st.max_lower_excess = std::max(st.max_lower_excess, lower[k] - v);
      st.max_increase = std::max(st.max_increase, v - U.values[k]);
      change = std::max(change, std::abs(v - U.values[k]));
      if (k > 0) st.max_descent = std::max(st.max_descent, next.values[k - 1] - v);
    }
    if (st.max_upper_excess > options.check_slack || st.max_lower_excess > options.check_slack)
      throw SolverError("iterate_profile: iterate left the upper/lower sandwich at iteration " +
                        std::to_string(it) + " (upper excess " +
                        format_number(st.max_upper_excess) + ", lower excess " +
                        format_number(st.max_lower_excess) + ")");
    U = std::move(next);
    st.iterations = it;
    st.last_change = change;
    if (change <= options.tol) break;
    if (it >= options.max_iters)
      throw SolverError("iterate_profile: no convergence after " + std::to_string(it) +
                        " iterations, last sup-change " + format_number(change));
  }

  out.grid = std::move(U);
  out.residual_max = residual(out.grid, c, dir, f, closure);
  return out;
}

double residual(const ProfileGrid& U, double c, const Direction& dir, const GrowthFunction& f,
                const Closure& closure) {
  const auto diff = shift_difference(U, dir, closure);
  double worst = 0.0;
  for (std::size_t k = 1; k + 1 < U.size(); ++k) {
    const double x = U.xi(k);
    if (x < -U.L + 1.0 - 1e-12 || x > U.L - 1.0 + 1e-12) continue;
    const double slope = (U.values[k + 1] - U.values[k - 1]) / (2.0 * U.h);
    worst = std::max(worst, std::abs(c * slope - diff[k] / 6.0 - f(U.values[k])));
  }
  return worst;
}

double half_crossing(const ProfileGrid& U) {
  for (std::size_t k = 1; k < U.size(); ++k) {
    if (U.values[k] >= 0.5 && U.values[k - 1] < 0.5) {
      const double t = (0.5 - U.values[k - 1]) / (U.values[k] - U.values[k - 1]);
      return U.xi(k - 1) + t * U.h;
    }
  }
  throw std::invalid_argument("half_crossing: profile does not cross 1/2 inside the window");
}

ProfileGrid normalize_profile(const ProfileGrid& U) {
  const double shift = half_crossing(U);
  ProfileGrid out{U.L, U.h, std::vector<double>(U.size())};
  for (std::size_t k = 0; k < U.size(); ++k) out.values[k] = sample_profile(U, U.xi(k) + shift);
  return out;
}

ProfileGrid shift_profile(const ProfileGrid& U, long nodes) {
  const Extended ext{U, Closure{}};
  ProfileGrid out{U.L, U.h, std::vector<double>(U.size())};
  for (std::size_t k = 0; k < U.size(); ++k) out.values[k] = ext(static_cast<long>(k) - nodes);
  return out;
}

namespace {

template <class Transform>
double log_slope(const ProfileGrid& U, double tol, Transform&& tail, const char* side) {
  const double lo = 10.0 * tol;
  const double hi = 1e-3;
  double n = 0.0, sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t k = 0; k < U.size(); ++k) {
    const double v = tail(U.values[k]);
    if (v < lo || v > hi) continue;
    const double x = U.xi(k);
    const double y = std::log(v);
    n += 1.0;
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  if (n < 3.0)
    throw SolverError(std::string(side) +
                      " decay rate: fewer than three nodes in the fitting window; increase L");
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

double left_decay_rate(const ProfileGrid& U, double tol) {
  return log_slope(U, tol, [](double u) { return u; }, "left");
}

double right_decay_rate(const ProfileGrid& U, double tol) {
  return log_slope(U, tol, [](double u) { return 1.0 - u; }, "right");
}

double sup_distance(const ProfileGrid& a, const ProfileGrid& b) {
  if (a.size() != b.size()) throw std::invalid_argument("sup_distance: grids differ");
  double d = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) d = std::max(d, std::abs(a.values[k] - b.values[k]));
  return d;
}

}  // namespace hexwave
