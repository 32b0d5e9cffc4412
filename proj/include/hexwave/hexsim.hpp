#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "hexwave/growth.hpp"

namespace hexwave {

struct HexPoint {
  double x = 0.0;
  double y = 0.0;
};

struct LatticeNode {
  int i = 0;
  int j = 0;

  friend bool operator==(const LatticeNode&, const LatticeNode&) = default;
};

// (i, j) = A (x, y) with A = [[1, sqrt3/3], [0, 2 sqrt3/3]].
inline constexpr double kHexToSquare[2][2] = {{1.0, 0.57735026918962576451},
                                             {0.0, 1.15470053837925152902}};
inline constexpr double kSquareToHex[2][2] = {{1.0, -0.5}, {0.0, 0.86602540378443864676}};

/// Rounds A (x, y) to integers; throws std::invalid_argument when the point is
/// more than 1e-9 away from a lattice node (in square coordinates).
LatticeNode hex_to_square(double x, double y);
/// Unrounded A (x, y).
std::array<double, 2> square_coordinates(double x, double y);
HexPoint square_to_hex(double i, double j);
inline HexPoint square_to_hex(const LatticeNode& n) { return square_to_hex(n.i, n.j); }

enum class Boundary { dirichlet, periodic };

/// Dense row-major field over (i, j) in [-R, R]^2.
class LatticeState {
public:
  LatticeState(int radius, Boundary boundary);

  int radius() const noexcept { return R_; }
  int side() const noexcept { return 2 * R_ + 1; }
  Boundary boundary() const noexcept { return boundary_; }

  double t = 0.0;

  double& at(int i, int j) { return v_[index(i, j)]; }
  double at(int i, int j) const { return v_[index(i, j)]; }
  std::vector<double>& values() noexcept { return v_; }
  const std::vector<double>& values() const noexcept { return v_; }

  std::size_t index(int i, int j) const noexcept {
    return static_cast<std::size_t>(j + R_) * static_cast<std::size_t>(side()) +
           static_cast<std::size_t>(i + R_);
  }

  double sum() const;

private:
  int R_;
  Boundary boundary_;
  std::vector<double> v_;
};

/// Six-point stencil on the transformed lattice, same layout as the state.
std::vector<double> laplacian_s(const LatticeState& state);

/// Largest accepted time step: 0.2 / max(f'(0), 1).
double dt_max(const GrowthFunction& f);

/// One classical RK4 step of v' = laplacian_s(v)/6 + f(v), then clamp to [0,1].
/// Throws std::invalid_argument if dt exceeds dt_max(f) and SolverError if the
/// clamp has to move a value by more than 1e-6. `threads` splits rows only.
/// Returns the largest distance the clamp moved a value.
double step(LatticeState& state, const GrowthFunction& f, double dt, int threads = 1);

/// ceil(side / 2).
int ring_half_extent(int side);

/// All nodes with max(|i|, |j|) = ring_half_extent(side), counter-clockwise
/// starting at (K, 0).
std::vector<LatticeNode> ring_nodes(int side);

/// One ray per node of the innermost ring. On each ring of half-extent K the
/// ray picks the node base * K / K0 with the minor coordinate rounded; the
/// node is exactly collinear with the origin whenever that product is integral.
struct Ray {
  LatticeNode base;
  double alpha = 0.0;  // direction of `base` in hex coordinates, in [0, 2 pi)
  std::vector<LatticeNode> nodes;  // one per ring, innermost first
};

std::vector<Ray> ring_rays(std::span<const int> sides);

enum class InitialCondition { delta, zero };

struct SimConfig {
  double a = 200.0;
  int R = 120;
  std::optional<double> dt;  // default 0.1 / a
  double t_max = 5.0;
  Boundary boundary = Boundary::dirichlet;
  std::vector<int> rings{5, 10, 20, 60};
  int snapshot_every = 0;
  InitialCondition initial = InitialCondition::delta;
  int threads = 1;

  double resolved_dt() const;

  /// Plain-text `key = value` lines; `#` starts a comment. Unknown keys throw.
  static SimConfig parse(const std::string& text);
  static SimConfig load(const std::filesystem::path& path);
  /// Apply one key/value pair; throws std::invalid_argument on bad input.
  void set(const std::string& key, const std::string& value);
  std::string to_text() const;
};

struct FirstPassageRecord {
  int ray = 0;
  double ray_alpha = 0.0;
  int ring_n = 0;  // 1-based, innermost ring is 1
  LatticeNode node;
  HexPoint position;
  std::optional<double> t_cross;
};

struct Snapshot {
  double t = 0.0;
  int R = 0;
  std::vector<double> values;
};

struct SimResult {
  std::vector<FirstPassageRecord> records;
  std::vector<Snapshot> snapshots;
  bool complete = false;  // every monitored node crossed 1/2
  double t_end = 0.0;
  std::size_t steps = 0;
};

/// Requires R >= 2 * largest ring half-extent.
SimResult run(const SimConfig& config);

struct SpeedEstimate {
  int ray = 0;
  double alpha = 0.0;
  int n = 0;  // pair (n, n+1)
  double cbar = 0.0;
};

/// Average speed between consecutive rings along every ray. Throws
/// SolverError if a crossing is missing or crossing times do not increase.
std::vector<SpeedEstimate> estimate_speeds(std::span<const FirstPassageRecord> records);

void write_snapshot(std::ostream& out, const Snapshot& snapshot);

}  // namespace hexwave
