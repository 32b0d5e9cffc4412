#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "hexwave/dispersion.hpp"
#include "hexwave/error.hpp"
#include "hexwave/growth.hpp"
#include "hexwave/wave.hpp"

using namespace hexwave;

namespace {

constexpr double pi = std::numbers::pi;

struct Fixture {
  GrowthFunction f = logistic(1.0);
  Direction dir = Direction::from_angle(0.0);
  double c_star = minimal_speed(dir, 1.0).c_star;
  double c = 1.1 * c_star;
};

const WaveProfile& reference_profile() {
  static const WaveProfile p = [] {
    Fixture fx;
    return iterate_profile(fx.c, fx.dir, fx.f);
  }();
  return p;
}

ProfileGrid grid_from(double L, double h, auto fn) {
  auto g = ProfileGrid::zeros(L, h);
  for (std::size_t k = 0; k < g.size(); ++k) g.values[k] = fn(g.xi(k));
  return g;
}

}  // namespace

TEST_CASE("profile grid layout") {
  const auto g = ProfileGrid::zeros(60, 0.02);
  CHECK(g.size() == 6001);
  CHECK(ProfileGrid::node_count(1.0, 0.25) == 9);
  CHECK(g.xi(0) == -60.0);
  CHECK(g.xi(6000) == doctest::Approx(60.0).epsilon(1e-14));
  CHECK(g.xi(3000) == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
}

TEST_CASE("upper solution") {
  CHECK(upper_solution(0.0, 3.0) == 1.0);
  CHECK(upper_solution(5.0, 0.7) == 1.0);
  CHECK(upper_solution(-1.0, 2.0) == doctest::Approx(std::exp(-2.0)).epsilon(1e-15));
  CHECK(upper_solution(-1.0, 2.0) == doctest::Approx(0.13534).epsilon(1e-4));
}

TEST_CASE("lower solution") {
  // (1 - 2 e^-1) e^-2
  CHECK(lower_solution(-2.0, 1.0, 0.5, 2.0) == doctest::Approx(0.0357611465).epsilon(1e-9));
  const double M = 2.0, g = 0.5;
  const double edge = -std::log(M) / g;
  CHECK(lower_solution(edge, 1.0, g, M) == 0.0);
  CHECK(lower_solution(edge + 0.1, 1.0, g, M) == 0.0);
  CHECK(lower_solution(3.0, 1.0, g, M) == 0.0);
  for (double x = -30; x <= 5; x += 0.05) {
    CHECK(lower_solution(x, 1.0, g, M) <= upper_solution(x, 1.0));
    CHECK(lower_solution(x, 1.0, g, M) >= 0.0);
  }
}

TEST_CASE("make_params") {
  Fixture fx;
  const auto p = make_params(fx.c, fx.dir, fx.f, 0.5);
  const auto roots = decay_roots(fx.c, fx.dir, 1.0);
  REQUIRE(roots.two_roots());
  const auto tr = std::get<TwoRoots>(roots.variant);
  CHECK(p.lambda1 == tr.lambda1);
  CHECK(p.lambda2 == tr.lambda2);
  CHECK(p.gamma > 0);
  CHECK(p.gamma < std::min(p.lambda1 * fx.f.lower_bound_theta(), p.lambda2 - p.lambda1));
  CHECK(p.M >= 1.0);
  CHECK(p.M * big_g(fx.c, p.lambda1 + p.gamma, fx.dir, 1.0) >= fx.f.lower_bound_N() * (1 - 1e-12));
  CHECK(p.mu > 0);
  CHECK(p.c == fx.c);

  CHECK_THROWS_AS(make_params(fx.c, fx.dir, fx.f, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(make_params(fx.c, fx.dir, fx.f, 1.0), std::invalid_argument);
}

TEST_CASE("make_params rejects c <= c*") {
  Fixture fx;
  try {
    make_params(fx.c_star, fx.dir, fx.f);
    FAIL("critical speed accepted");
  } catch (const SpeedRegimeError& e) {
    CHECK(e.regime() == SpeedRegime::critical);
    CHECK(std::string(e.what()).find("requires c > c*") != std::string::npos);
  }
  try {
    make_params(0.5 * fx.c_star, fx.dir, fx.f);
    FAIL("subcritical speed accepted");
  } catch (const SpeedRegimeError& e) {
    CHECK(e.regime() == SpeedRegime::subcritical);
    CHECK(std::string(e.what()).find("G(c, lambda) < 0") != std::string::npos);
    CHECK(e.minimal_speed() == doctest::Approx(fx.c_star));
  }
}

TEST_CASE("sample_profile and closures") {
  const auto g = grid_from(2.0, 0.5, [](double x) { return 0.25 * (x + 2.0); });
  CHECK(sample_profile(g, -1.25) == doctest::Approx(0.1875));
  CHECK(sample_profile(g, 2.0) == doctest::Approx(1.0));
  CHECK(sample_profile(g, 2.5) == 1.0);
  CHECK(sample_profile(g, -2.5) == 0.0);
  auto h = grid_from(2.0, 0.5, [](double x) { return std::exp(x); });
  const Closure tail{1.0};
  CHECK(sample_profile(h, -3.0, tail) == doctest::Approx(std::exp(-3.0)).epsilon(1e-14));
}

TEST_CASE("shift_difference of a quadratic") {
  // sum_m [(x - d)^2 + (x + d)^2] - 6 x^2 = 2 sum d^2 = 3
  for (double a : {0.0, 0.4, pi / 6}) {
    const auto dir = Direction::from_angle(a);
    const double h = 0.01;
    const auto g = grid_from(3.0, h, [](double x) { return x * x; });
    const auto d = shift_difference(g, dir);
    for (std::size_t k = 0; k < g.size(); ++k) {
      if (std::abs(g.xi(k)) > 1.5) continue;
      // linear interpolation of x^2 overshoots by at most h^2/4 per sample
      CHECK(std::abs(d[k] - 3.0) <= 6 * h * h / 4 + 1e-10);
    }
  }
}

TEST_CASE("apply_H examples") {
  Fixture fx;
  const auto p = make_params(fx.c, fx.dir, fx.f);
  // outside the window U is 0 on the left and 1 on the right, so nodes within
  // one unit of an edge see the closure
  const auto zeros = ProfileGrid::zeros(5, 0.02);
  const auto hz = apply_H(zeros, p, fx.dir, fx.f);
  const auto ones = grid_from(5, 0.02, [](double) { return 1.0; });
  const auto h1 = apply_H(ones, p, fx.dir, fx.f);
  for (std::size_t k = 0; k < zeros.size(); ++k) {
    const double x = zeros.xi(k);
    if (x <= 4.0 - 1e-9) CHECK(hz.values[k] == 0.0);
    if (x >= -4.0 + 1e-9) CHECK(h1.values[k] == doctest::Approx(p.mu).epsilon(1e-14));
  }
  const auto coarse = ProfileGrid::zeros(5, 0.1);
  CHECK_THROWS_AS(apply_H(coarse, p, fx.dir, fx.f), std::invalid_argument);
}

TEST_CASE("property: apply_H preserves order") {
  Fixture fx;
  const auto p = make_params(fx.c, fx.dir, fx.f);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    auto a = ProfileGrid::zeros(4, 0.02);
    auto b = a;
    for (std::size_t k = 0; k < a.size(); ++k) {
      a.values[k] = u(rng);
      b.values[k] = a.values[k] + (1 - a.values[k]) * u(rng);
    }
    const auto ha = apply_H(a, p, fx.dir, fx.f);
    const auto hb = apply_H(b, p, fx.dir, fx.f);
    for (std::size_t k = 0; k < a.size(); ++k) CHECK(ha.values[k] <= hb.values[k] + 1e-14);
  }
}

TEST_CASE("weighted_integral constants") {
  const double mu = 2.3;
  const auto m = grid_from(10, 0.02, [&](double) { return mu; });
  for (double v : weighted_integral(m, mu).values) CHECK(v == doctest::Approx(1.0).epsilon(1e-13));
  for (double v : weighted_integral(ProfileGrid::zeros(10, 0.02), mu).values) CHECK(v == 0.0);
}

TEST_CASE("weighted_integral of an exponential is second order") {
  // exp(-mu x) int_{-inf}^x mu exp(mu z) exp(l z) dz = mu exp(l x) / (mu + l)
  const double mu = 2.0, l = 1.3;
  auto error_at = [&](double h) {
    const auto in = grid_from(60, h, [&](double x) { return mu * std::exp(l * x); });
    const auto out = weighted_integral(in, mu);
    double worst = 0;
    for (std::size_t k = 0; k < in.size(); ++k) {
      const double x = in.xi(k);
      if (x < -40 || x > 0) continue;
      const double exact = mu * std::exp(l * x) / (mu + l);
      worst = std::max(worst, std::abs(out.values[k] - exact) / exact);
    }
    return worst;
  };
  const double e1 = error_at(0.04), e2 = error_at(0.02);
  CHECK(e2 <= 1e-3);
  CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.05));
  // with the matching tail closure the truncation at -L disappears
  const auto in = grid_from(5, 0.02, [&](double x) { return mu * std::exp(l * x); });
  const auto out = weighted_integral(in, mu, Closure{l});
  const double exact = mu * std::exp(-5 * l) / (mu + l);
  CHECK(out.values[0] == doctest::Approx(exact).epsilon(1e-3));
}

TEST_CASE("grid tail rate reproduces the discrete exponential") {
  Fixture fx;
  const auto p = make_params(fx.c, fx.dir, fx.f);
  const double h = 0.02;
  const double lh = grid_tail_rate(p, fx.dir, fx.f.fprime0(), h);
  CHECK(std::abs(lh - p.lambda1) <= 1e-3 * p.lambda1);
  CHECK(lh <= p.lambda_star);
  // in the linear regime exp(lh xi) is a fixed point of the discrete operator
  const GrowthFunction linear([](double u) { return u; }, 1.0, -1.0, 0.0, 1.0);
  const double scale = 1e-30;
  const auto U = grid_from(5, h, [&](double x) { return scale * std::exp(lh * x); });
  const Closure tail{lh};
  const auto next = weighted_integral(apply_H(U, p, fx.dir, linear, tail), p.mu, tail);
  for (std::size_t k = 0; k < U.size(); ++k) {
    if (U.xi(k) > 3.0) continue;  // right closure pins U to 1 near the edge
    CHECK(next.values[k] == doctest::Approx(U.values[k]).epsilon(1e-10));
  }
}

TEST_CASE("residual of constants") {
  Fixture fx;
  CHECK(residual(grid_from(10, 0.02, [](double) { return 1.0; }), fx.c, fx.dir, fx.f) == 0.0);
  CHECK(residual(ProfileGrid::zeros(10, 0.02), fx.c, fx.dir, fx.f) == 0.0);
}

TEST_CASE("converged profile") {
  Fixture fx;
  const auto& w = reference_profile();
  CHECK(w.stats.iterations <= 5000);
  CHECK(w.stats.last_change <= 1e-8);
  CHECK(w.residual_max <= 1e-4);
  CHECK(w.stats.max_upper_excess <= 1e-14);
  CHECK(w.stats.max_lower_excess <= 1e-14);
  CHECK(w.stats.max_increase <= 1e-14);
  CHECK(w.stats.max_descent <= 1e-14);
  CHECK(w.grid.values.front() <= 1e-3);
  CHECK(w.grid.values.back() >= 1 - 1e-3);
  for (std::size_t k = 1; k < w.grid.size(); ++k) CHECK(w.grid.values[k] >= w.grid.values[k - 1]);
  for (double v : w.grid.values) {
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
  }
  const auto s = w.sidecar();
  for (const char* key : {"c", "alpha", "L", "h", "mu", "gamma", "M", "lambda1", "lambda2",
                          "residual_max", "iterations"})
    CHECK(s.contains(key));
}

TEST_CASE("decay rates") {
  Fixture fx;
  const auto& w = reference_profile();
  const double l1 = w.params.lambda1;
  CHECK(std::abs(left_decay_rate(w.grid, w.tol) - l1) <= 0.02 * l1);
  const double l0 = lambda_zero(w.c, fx.dir, fx.f.fprime1());
  CHECK(std::abs(right_decay_rate(w.grid, w.tol) - l0) <= 0.05 * std::abs(l0));
  const auto seeded = grid_from(60, 0.02, [&](double x) { return upper_solution(x, l1); });
  CHECK(left_decay_rate(seeded, 1e-8) == doctest::Approx(l1).epsilon(1e-10));
  CHECK_THROWS(left_decay_rate(ProfileGrid::zeros(2, 0.5), 1e-8));
}

TEST_CASE("property: fixed-point consistency") {
  Fixture fx;
  const auto& w = reference_profile();
  const auto next =
      weighted_integral(apply_H(w.grid, w.params, fx.dir, fx.f, w.closure()), w.params.mu, w.closure());
  CHECK(sup_distance(next, w.grid) <= 2 * w.tol);
}

TEST_CASE("normalization and translation") {
  const auto& w = reference_profile();
  const auto n0 = normalize_profile(w.grid);
  CHECK(sample_profile(n0, 0.0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(std::abs(half_crossing(n0)) <= 1e-9);
  const auto again = normalize_profile(n0);
  CHECK(sup_distance(again, n0) <= 1e-6);
  const auto shifted = shift_profile(w.grid, 150);
  CHECK(sup_distance(normalize_profile(shifted), n0) <= 1e-6);
}

TEST_CASE("property: translation invariance of the construction") {
  Fixture fx;
  WaveOptions opt;
  // not a whole number of nodes, so the discrete problem really differs
  opt.shift = 3.013;
  const auto shifted = iterate_profile(fx.c, fx.dir, fx.f, opt);
  CHECK(sup_distance(normalize_profile(shifted.grid), normalize_profile(reference_profile().grid)) <=
        1e-3);
}

TEST_CASE("uniqueness across M") {
  Fixture fx;
  WaveOptions opt;
  opt.M_scale = 2.0;
  const auto w2 = iterate_profile(fx.c, fx.dir, fx.f, opt);
  CHECK(w2.params.M == doctest::Approx(2 * reference_profile().params.M));
  CHECK(sup_distance(normalize_profile(w2.grid), normalize_profile(reference_profile().grid)) <= 1e-3);
}

TEST_CASE("property: grid refinement") {
  Fixture fx;
  WaveOptions fine;
  fine.h = 0.01;
  const auto w = iterate_profile(fx.c, fx.dir, fx.f, fine);
  CHECK(reference_profile().residual_max / w.residual_max >= 3.0);
}

TEST_CASE("other directions and rates") {
  for (double a : {pi / 12, pi / 6, 2.0}) {
    for (double rate : {1.0, 5.0}) {
      const auto f = logistic(rate);
      const auto dir = Direction::from_angle(a);
      const double c = 1.2 * minimal_speed(dir, rate).c_star;
      WaveOptions opt;
      opt.L = 40;
      const auto w = iterate_profile(c, dir, f, opt);
      CHECK(w.residual_max <= 1e-3 * rate);
      CHECK(w.stats.max_upper_excess <= 1e-14);
      CHECK(w.stats.max_lower_excess <= 1e-14);
    }
  }
}

TEST_CASE("iteration limit is an error") {
  Fixture fx;
  WaveOptions opt;
  opt.max_iters = 3;
  CHECK_THROWS_AS(iterate_profile(fx.c, fx.dir, fx.f, opt), SolverError);
}
