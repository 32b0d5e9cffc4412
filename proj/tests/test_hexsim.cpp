#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

#include "hexwave/dispersion.hpp"
#include "hexwave/error.hpp"
#include "hexwave/hexsim.hpp"

using namespace hexwave;

namespace {

constexpr double pi = std::numbers::pi;
const double s3 = std::sqrt(3.0);

void fill_random(LatticeState& s, unsigned seed, double lo = 0.0, double hi = 1.0) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(lo, hi);
  for (double& v : s.values()) v = u(rng);
}

}  // namespace

TEST_CASE("transform examples") {
  CHECK(hex_to_square(1, 0) == LatticeNode{1, 0});
  CHECK(hex_to_square(0.5, s3 / 2) == LatticeNode{1, 1});
  CHECK(hex_to_square(-0.5, s3 / 2) == LatticeNode{0, 1});
  const auto p = square_to_hex(1, 1);
  CHECK(p.x == doctest::Approx(0.5));
  CHECK(p.y == doctest::Approx(s3 / 2));
  CHECK_THROWS_AS(hex_to_square(0.3, 0.1), std::invalid_argument);
}

TEST_CASE("transform matrices are inverse") {
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      double v = 0;
      for (int k = 0; k < 2; ++k) v += kHexToSquare[r][k] * kSquareToHex[k][c];
      CHECK(std::abs(v - (r == c ? 1.0 : 0.0)) <= 1e-15);
    }
  }
}

TEST_CASE("hex neighbours map onto the stencil") {
  std::set<std::pair<int, int>> got;
  for (int k = 0; k < 6; ++k) {
    const double t = k * pi / 3;
    const auto raw = square_coordinates(std::cos(t), std::sin(t));
    CHECK(std::abs(raw[0] - std::round(raw[0])) <= 1e-12);
    CHECK(std::abs(raw[1] - std::round(raw[1])) <= 1e-12);
    const auto n = hex_to_square(std::cos(t), std::sin(t));
    got.insert({n.i, n.j});
  }
  const std::set<std::pair<int, int>> want{{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, 1}, {-1, -1}};
  CHECK(got == want);
}

TEST_CASE("round trip over a patch") {
  for (int i = -20; i <= 20; ++i)
    for (int j = -20; j <= 20; ++j) {
      const auto p = square_to_hex(i, j);
      CHECK(hex_to_square(p.x, p.y) == LatticeNode{i, j});
    }
}

TEST_CASE("laplacian examples") {
  LatticeState con(6, Boundary::periodic);
  for (double& v : con.values()) v = 0.37;
  for (double v : laplacian_s(con)) CHECK(std::abs(v) <= 1e-15);

  LatticeState d(4, Boundary::dirichlet);
  d.at(0, 0) = 1.0;
  const auto lap = laplacian_s(d);
  const std::set<std::pair<int, int>> nb{{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, 1}, {-1, -1}};
  for (int i = -4; i <= 4; ++i)
    for (int j = -4; j <= 4; ++j) {
      const double v = lap[d.index(i, j)];
      if (i == 0 && j == 0) CHECK(v == -6.0);
      else if (nb.count({i, j})) CHECK(v == 1.0);
      else CHECK(v == 0.0);
    }

  LatticeState r(7, Boundary::periodic);
  fill_random(r, 3);
  double sum = 0;
  for (double v : laplacian_s(r)) sum += v;
  CHECK(std::abs(sum) <= 1e-12);
}

TEST_CASE("dirichlet edges read zero outside") {
  LatticeState s(2, Boundary::dirichlet);
  for (double& v : s.values()) v = 1.0;
  const auto lap = laplacian_s(s);
  CHECK(lap[s.index(0, 0)] == 0.0);
  CHECK(lap[s.index(2, 2)] == -3.0);   // corner loses (3,2), (2,3), (3,3)
  CHECK(lap[s.index(2, -2)] == -4.0);  // loses (3,-2), (2,-3), (3,-1), (1,-3)
}

TEST_CASE("equilibria") {
  const auto f = logistic(1.0);
  LatticeState zero(5, Boundary::dirichlet);
  for (int k = 0; k < 50; ++k) step(zero, f, 0.1);
  for (double v : zero.values()) CHECK(v == 0.0);
  LatticeState one(5, Boundary::periodic);
  for (double& v : one.values()) v = 1.0;
  for (int k = 0; k < 50; ++k) step(one, f, 0.1);
  for (double v : one.values()) CHECK(v == 1.0);
  CHECK(one.t == doctest::Approx(5.0));
}

TEST_CASE("mass conservation under pure diffusion") {
  LatticeState s(10, Boundary::periodic);
  fill_random(s, 11);
  const double m0 = s.sum();
  const auto f = GrowthFunction::none();
  for (int k = 0; k < 1000; ++k) step(s, f, 0.05);
  CHECK(std::abs(s.sum() - m0) / m0 <= 1e-12);
}

TEST_CASE("time step guard and clamp abort") {
  const auto f = logistic(10.0);
  CHECK(dt_max(f) == doctest::Approx(0.02));
  CHECK(dt_max(logistic(0.5)) == doctest::Approx(0.2));
  LatticeState s(3, Boundary::periodic);
  CHECK_THROWS_AS(step(s, f, 0.021), std::invalid_argument);
  CHECK_THROWS_AS(step(s, f, 0.0), std::invalid_argument);
  // declared slope far below the real one: the step overshoots and the clamp refuses
  const GrowthFunction wild([](double u) { return 80 * u * (1 - u); }, 1.0, -80.0, 80.0, 1.0);
  for (double& v : s.values()) v = 0.5;
  CHECK_THROWS_AS(step(s, wild, 0.2), SolverError);
}

TEST_CASE("property: values stay in [0,1]") {
  const auto f = logistic(200.0);
  LatticeState s(20, Boundary::dirichlet);
  s.at(0, 0) = 1.0;
  double worst = 0;
  for (int k = 0; k < 400; ++k) worst = std::max(worst, step(s, f, 5e-4));
  CHECK(worst <= 1e-9);
  LatticeState r(20, Boundary::periodic);
  fill_random(r, 5);
  worst = 0;
  for (int k = 0; k < 400; ++k) worst = std::max(worst, step(r, f, 5e-4));
  CHECK(worst <= 1e-9);
}

TEST_CASE("property: comparison principle") {
  const auto f = logistic(200.0);
  LatticeState u(20, Boundary::dirichlet), w(20, Boundary::dirichlet);
  fill_random(u, 21, 0.0, 0.5);
  std::mt19937_64 rng(22);
  std::uniform_real_distribution<double> d(0.0, 1.0);
  for (std::size_t k = 0; k < u.values().size(); ++k)
    w.values()[k] = u.values()[k] + (1 - u.values()[k]) * d(rng);
  double worst = -1;
  for (int k = 0; k < 1000; ++k) {
    step(u, f, 5e-4);
    step(w, f, 5e-4);
    for (std::size_t n = 0; n < u.values().size(); ++n)
      worst = std::max(worst, u.values()[n] - w.values()[n]);
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("threads do not change results") {
  const auto f = logistic(1.0);
  LatticeState a(15, Boundary::dirichlet), b(15, Boundary::dirichlet);
  fill_random(a, 9);
  b.values() = a.values();
  for (int k = 0; k < 20; ++k) {
    step(a, f, 0.1, 1);
    step(b, f, 0.1, 4);
  }
  CHECK(a.values() == b.values());
}

TEST_CASE("rings") {
  CHECK(ring_half_extent(2) == 1);
  CHECK(ring_half_extent(5) == 3);
  CHECK(ring_half_extent(10) == 5);
  CHECK_THROWS_AS(ring_half_extent(1), std::invalid_argument);
  const auto unit = ring_nodes(2);
  CHECK(unit.size() == 8);
  for (int side : {2, 5, 10, 60}) {
    const int K = ring_half_extent(side);
    const auto ring = ring_nodes(side);
    CHECK(ring.size() == static_cast<std::size_t>(8 * K));
    CHECK(ring.front() == LatticeNode{K, 0});
    std::set<std::pair<int, int>> seen;
    double previous = -1;
    for (const auto& n : ring) {
      CHECK(std::max(std::abs(n.i), std::abs(n.j)) == K);
      seen.insert({n.i, n.j});
      // counter-clockwise in (i, j)
      double t = std::atan2(n.j, n.i);
      if (t < 0) t += 2 * pi;
      CHECK(t > previous);
      previous = t;
    }
    CHECK(seen.size() == ring.size());
  }
}

TEST_CASE("rays are collinear when the scale is integral") {
  const std::vector<int> sides{6, 12, 24};
  const auto rays = ring_rays(sides);
  CHECK(rays.size() == 24);
  for (const auto& r : rays) {
    REQUIRE(r.nodes.size() == 3);
    for (const auto& n : r.nodes) {
      CHECK(n.i * r.base.j - n.j * r.base.i == 0);
      const auto p = square_to_hex(n);
      double t = std::atan2(p.y, p.x);
      if (t < 0) t += 2 * pi;
      CHECK(t == doctest::Approx(r.alpha).epsilon(1e-12));
    }
  }
}

TEST_CASE("rays on the spreading rings") {
  const std::vector<int> sides{5, 10, 20, 60};
  const auto rays = ring_rays(sides);
  CHECK(rays.size() == 24);
  std::set<std::pair<int, int>> outer;
  for (const auto& r : rays) {
    REQUIRE(r.nodes.size() == 4);
    for (std::size_t n = 0; n < 4; ++n) {
      const int K = ring_half_extent(sides[n]);
      CHECK(std::max(std::abs(r.nodes[n].i), std::abs(r.nodes[n].j)) == K);
      // the rounded node is at most half a lattice step off the exact ray
      const double cross = r.nodes[n].i * r.base.j - r.nodes[n].j * r.base.i;
      CHECK(std::abs(cross) <= 0.5 * 3 + 1e-12);
    }
    outer.insert({r.nodes[3].i, r.nodes[3].j});
  }
  CHECK(outer.size() == rays.size());
  const std::vector<int> bad{10, 5};
  CHECK_THROWS_AS(ring_rays(bad), std::invalid_argument);
}

TEST_CASE("config parsing") {
  const auto cfg = SimConfig::parse("# desk\na = 100\nR=50\nrings = 5, 10\nboundary = periodic\n"
                                    "initial = zero\nthreads = 2\nt_max = 2.5\nsnapshot_every = 10\n");
  CHECK(cfg.a == 100);
  CHECK(cfg.R == 50);
  CHECK(cfg.rings == std::vector<int>{5, 10});
  CHECK(cfg.boundary == Boundary::periodic);
  CHECK(cfg.initial == InitialCondition::zero);
  CHECK(cfg.threads == 2);
  CHECK(cfg.resolved_dt() == doctest::Approx(1e-3));
  const auto again = SimConfig::parse(cfg.to_text());
  CHECK(again.to_text() == cfg.to_text());
  CHECK_THROWS_AS(SimConfig::parse("colour = red\n"), std::invalid_argument);
  CHECK_THROWS_AS(SimConfig::parse("a = fast\n"), std::invalid_argument);
  CHECK_THROWS_AS(SimConfig::parse("boundary = open\n"), std::invalid_argument);
  SimConfig d;
  CHECK(d.resolved_dt() == doctest::Approx(5e-4));
}

TEST_CASE("run preconditions and zero initial data") {
  SimConfig cfg;
  cfg.R = 50;
  CHECK_THROWS_AS(run(cfg), std::invalid_argument);

  cfg.R = 12;
  cfg.rings = {5, 10};
  cfg.initial = InitialCondition::zero;
  cfg.t_max = 0.05;
  const auto res = run(cfg);
  CHECK_FALSE(res.complete);
  CHECK(res.t_end >= 0.05 - 1e-12);
  CHECK(res.steps == 100);
  for (const auto& r : res.records) CHECK_FALSE(r.t_cross.has_value());
  CHECK_THROWS_AS(estimate_speeds(res.records), SolverError);
}

TEST_CASE("small spreading run is deterministic across threads") {
  SimConfig cfg;
  cfg.R = 24;
  cfg.rings = {5, 10, 20};
  cfg.snapshot_every = 200;
  const auto one = run(cfg);
  cfg.threads = 3;
  const auto three = run(cfg);
  REQUIRE(one.complete);
  REQUIRE(one.records.size() == three.records.size());
  for (std::size_t k = 0; k < one.records.size(); ++k) {
    CHECK(one.records[k].t_cross == three.records[k].t_cross);
    CHECK(one.records[k].ring_n >= 1);
  }
  CHECK(one.snapshots.size() >= 2);
  CHECK(one.snapshots.front().t == 0.0);
  for (const auto& s : estimate_speeds(one.records)) {
    CHECK(s.cbar > 20);
    CHECK(s.cbar < 60);
  }
}

TEST_CASE("estimate_speeds from synthetic records") {
  std::vector<FirstPassageRecord> recs;
  auto add = [&](int ray, int n, double x, double y, std::optional<double> t) {
    FirstPassageRecord r;
    r.ray = ray;
    r.ray_alpha = 0.25 * ray;
    r.ring_n = n;
    r.position = {x, y};
    r.t_cross = t;
    recs.push_back(r);
  };
  add(0, 2, 6, 8, 3.0);
  add(0, 1, 0, 0, 1.0);
  add(1, 1, 1, 0, 0.5);
  add(1, 2, 4, 0, 2.0);
  const auto est = estimate_speeds(recs);
  REQUIRE(est.size() == 2);
  CHECK(est[0].ray == 0);
  CHECK(est[0].n == 1);
  CHECK(est[0].cbar == doctest::Approx(5.0));
  CHECK(est[1].cbar == doctest::Approx(2.0));
  CHECK(est[1].alpha == 0.25);
  recs[1].t_cross = 3.0;
  CHECK_THROWS_AS(estimate_speeds(recs), SolverError);
}

TEST_CASE("snapshot format") {
  Snapshot s{0.5, 1, std::vector<double>(9, 0.25)};
  std::ostringstream os;
  write_snapshot(os, s);
  std::istringstream in(os.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "t,R");
  std::getline(in, line);
  CHECK(line == "0.5,1");
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    CHECK(line == "0.25,0.25,0.25");
  }
  CHECK(rows == 3);
}

TEST_CASE("desk-scale speeds approach c* along every ray") {
  SimConfig cfg;
  cfg.threads = 4;
  const auto sim = run(cfg);
  REQUIRE(sim.complete);
  const auto speeds = estimate_speeds(sim.records);
  REQUIRE(speeds.size() == 24 * 3);
  for (std::size_t k = 0; k < speeds.size(); k += 3) {
    const double cs = minimal_speed(Direction::from_angle(speeds[k].alpha), cfg.a).c_star;
    CAPTURE(speeds[k].alpha);
    for (int n = 0; n < 3; ++n) CHECK(speeds[k + n].n == n + 1);
    CHECK(std::abs(speeds[k + 1].cbar - cs) < std::abs(speeds[k].cbar - cs));
    CHECK(std::abs(speeds[k + 2].cbar - cs) < std::abs(speeds[k + 1].cbar - cs));
  }
}
