#include "hexwave/hexsim.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "hexwave/csv.hpp"
#include "hexwave/dispersion.hpp"
#include "hexwave/error.hpp"

namespace hexwave {

std::array<double, 2> square_coordinates(double x, double y) {
  return {kHexToSquare[0][0] * x + kHexToSquare[0][1] * y, kHexToSquare[1][1] * y};
}

LatticeNode hex_to_square(double x, double y) {
  const auto [i, j] = square_coordinates(x, y);
  const double ri = std::round(i);
  const double rj = std::round(j);
  const double dist = std::hypot(i - ri, j - rj);
  if (dist > 1e-9)
    throw std::invalid_argument("hex_to_square: (" + format_number(x) + ", " + format_number(y) +
                                ") is not a lattice node; distance to lattice " +
                                format_number(dist));
  return {static_cast<int>(ri), static_cast<int>(rj)};
}

HexPoint square_to_hex(double i, double j) {
  return {kSquareToHex[0][0] * i + kSquareToHex[0][1] * j, kSquareToHex[1][1] * j};
}

LatticeState::LatticeState(int radius, Boundary boundary) : R_(radius), boundary_(boundary) {
  if (radius < 1) throw std::invalid_argument("LatticeState: radius must be >= 1");
  v_.assign(static_cast<std::size_t>(side()) * static_cast<std::size_t>(side()), 0.0);
}

double LatticeState::sum() const {
  double s = 0.0;
  for (double x : v_) s += x;
  return s;
}

namespace {

// Runs fn(row_begin, row_end) over contiguous row blocks. Every row is
// computed by exactly one worker with the same arithmetic, so results do not
// depend on the worker count.
template <class Fn>
void for_rows(int rows, int threads, Fn&& fn) {
  threads = std::clamp(threads, 1, rows);
  if (threads == 1) {
    fn(0, rows);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(static_cast<std::size_t>(threads) - 1);
  const int block = (rows + threads - 1) / threads;
  for (int t = 1; t < threads; ++t) {
    const int b = t * block;
    const int e = std::min(rows, b + block);
    if (b < e) pool.emplace_back([&fn, b, e] { fn(b, e); });
  }
  fn(0, std::min(rows, block));
}

// The six neighbours in (i, j): (+-1, 0), (0, +-1), (1, 1), (-1, -1).
void stencil_rows(const double* v, double* out, int n, Boundary boundary, int row_begin,
                  int row_end) {
  const bool periodic = boundary == Boundary::periodic;
  auto wrap = [n](int k) { return k < 0 ? k + n : (k >= n ? k - n : k); };
  auto read = [&](int col, int row) -> double {
    if (periodic) return v[static_cast<std::size_t>(wrap(row)) * n + wrap(col)];
    if (col < 0 || col >= n || row < 0 || row >= n) return 0.0;
    return v[static_cast<std::size_t>(row) * n + col];
  };
  for (int r = row_begin; r < row_end; ++r) {
    const double* row = v + static_cast<std::size_t>(r) * n;
    double* dst = out + static_cast<std::size_t>(r) * n;
    const bool interior_row = r > 0 && r + 1 < n;
    for (int c = 0; c < n; ++c) {
      if (interior_row && c > 0 && c + 1 < n) {
        const double* up = row + n;
        const double* down = row - n;
        dst[c] = row[c + 1] + row[c - 1] + up[c] + down[c] + up[c + 1] + down[c - 1] - 6.0 * row[c];
      } else {
        dst[c] = read(c + 1, r) + read(c - 1, r) + read(c, r + 1) + read(c, r - 1) +
                 read(c + 1, r + 1) + read(c - 1, r - 1) - 6.0 * row[c];
      }
    }
  }
}

}  // namespace

std::vector<double> laplacian_s(const LatticeState& state) {
  std::vector<double> out(state.values().size());
  stencil_rows(state.values().data(), out.data(), state.side(), state.boundary(), 0, state.side());
  return out;
}

double dt_max(const GrowthFunction& f) { return 0.2 / std::max(f.fprime0(), 1.0); }

double step(LatticeState& state, const GrowthFunction& f, double dt, int threads) {
  if (!(dt > 0.0)) throw std::invalid_argument("step: dt must be positive");
  const double guard = dt_max(f);
  if (dt > guard * (1.0 + 1e-12))
    throw std::invalid_argument("step: dt = " + format_number(dt) + " exceeds the stability guard " +
                                format_number(guard));

  const int n = state.side();
  const std::size_t cells = state.values().size();
  std::vector<double>& v = state.values();
  std::vector<double> stage(cells), lap(cells), acc(cells);

  // Evaluates rhs(src); acc = (reset ? 0 : acc) + weight * rhs and, unless last,
  // stage = v + scale * rhs.
  auto stage_eval = [&](const std::vector<double>& src, double scale, double weight, bool reset,
                        bool last) {
    for_rows(n, threads, [&](int rb, int re) {
      stencil_rows(src.data(), lap.data(), n, state.boundary(), rb, re);
      const std::size_t b = static_cast<std::size_t>(rb) * n;
      const std::size_t e = static_cast<std::size_t>(re) * n;
      for (std::size_t k = b; k < e; ++k) {
        const double rhs = lap[k] / 6.0 + f(src[k]);
        acc[k] = (reset ? 0.0 : acc[k]) + weight * rhs;
        if (!last) stage[k] = v[k] + scale * rhs;
      }
    });
  };

  // acc holds k1 + 2 k2 + 2 k3 + k4
  std::vector<double> src(cells);
  stage_eval(v, 0.5 * dt, 1.0, true, false);
  src.swap(stage);
  stage_eval(src, 0.5 * dt, 2.0, false, false);
  src.swap(stage);
  stage_eval(src, dt, 2.0, false, false);
  src.swap(stage);
  stage_eval(src, 0.0, 1.0, false, true);

  double excursion = 0.0;
  for (std::size_t k = 0; k < cells; ++k) {
    double x = v[k] + dt / 6.0 * acc[k];
    if (x < 0.0) {
      excursion = std::max(excursion, -x);
      x = 0.0;
    } else if (x > 1.0) {
      excursion = std::max(excursion, x - 1.0);
      x = 1.0;
    }
    v[k] = x;
  }
  if (excursion > 1e-6)
    throw SolverError("step: clamp moved a value by " + format_number(excursion) +
                      "; the time step is unstable");
  state.t += dt;
  return excursion;
}

int ring_half_extent(int side) {
  if (side < 2) throw std::invalid_argument("ring side must be >= 2");
  return (side + 1) / 2;
}

std::vector<LatticeNode> ring_nodes(int side) {
  const int K = ring_half_extent(side);
  std::vector<LatticeNode> out;
  out.reserve(static_cast<std::size_t>(8 * K));
  for (int j = 0; j < K; ++j) out.push_back({K, j});
  for (int i = K; i > -K; --i) out.push_back({i, K});
  for (int j = K; j > -K; --j) out.push_back({-K, j});
  for (int i = -K; i < K; ++i) out.push_back({i, -K});
  for (int j = -K; j < 0; ++j) out.push_back({K, j});
  return out;
}

std::vector<Ray> ring_rays(std::span<const int> sides) {
  if (sides.empty()) throw std::invalid_argument("ring_rays: no rings");
  std::vector<int> extents;
  for (int s : sides) {
    const int K = ring_half_extent(s);
    if (!extents.empty() && K <= extents.back())
      throw std::invalid_argument("ring_rays: ring half-extents must strictly increase");
    extents.push_back(K);
  }
  const int K0 = extents.front();
  std::vector<Ray> rays;
  for (const auto& base : ring_nodes(sides.front())) {
    Ray ray;
    ray.base = base;
    const auto p = square_to_hex(base);
    ray.alpha = normalize_angle(std::atan2(p.y, p.x));
    for (int K : extents) {
      const auto scale = [&](int c) {
        return static_cast<int>(std::lround(static_cast<double>(c) * K / K0));
      };
      ray.nodes.push_back({scale(base.i), scale(base.j)});
    }
    rays.push_back(std::move(ray));
  }
  return rays;
}

double SimConfig::resolved_dt() const { return dt ? *dt : 0.1 / a; }

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& text) {
  double v = 0.0;
  const auto t = trim(text);
  auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc{} || p != t.data() + t.size())
    throw std::invalid_argument("config: '" + key + "' expects a number, got '" + text + "'");
  return v;
}

int parse_int(const std::string& key, const std::string& text) {
  int v = 0;
  const auto t = trim(text);
  auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc{} || p != t.data() + t.size())
    throw std::invalid_argument("config: '" + key + "' expects an integer, got '" + text + "'");
  return v;
}

}  // namespace

void SimConfig::set(const std::string& raw_key, const std::string& value) {
  const std::string key = trim(raw_key);
  if (key == "a") {
    a = parse_double(key, value);
    if (!(a > 0.0)) throw std::invalid_argument("config: a must be positive");
  } else if (key == "R") {
    R = parse_int(key, value);
  } else if (key == "dt") {
    const auto t = trim(value);
    if (t == "auto" || t.empty()) dt.reset();
    else dt = parse_double(key, t);
  } else if (key == "t_max") {
    t_max = parse_double(key, value);
  } else if (key == "boundary") {
    const auto t = trim(value);
    if (t == "dirichlet") boundary = Boundary::dirichlet;
    else if (t == "periodic") boundary = Boundary::periodic;
    else throw std::invalid_argument("config: boundary must be dirichlet or periodic");
  } else if (key == "rings") {
    rings.clear();
    std::istringstream is(value);
    std::string item;
    while (std::getline(is, item, ',')) rings.push_back(parse_int(key, item));
  } else if (key == "snapshot_every") {
    snapshot_every = parse_int(key, value);
  } else if (key == "initial") {
    const auto t = trim(value);
    if (t == "delta") initial = InitialCondition::delta;
    else if (t == "zero") initial = InitialCondition::zero;
    else throw std::invalid_argument("config: initial must be delta or zero");
  } else if (key == "threads") {
    threads = parse_int(key, value);
  } else {
    throw std::invalid_argument("config: unknown key '" + key + "'");
  }
}

SimConfig SimConfig::parse(const std::string& text) {
  SimConfig cfg;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find_first_of("=:");
    if (eq == std::string::npos) throw std::invalid_argument("config: expected key = value: " + line);
    cfg.set(line.substr(0, eq), line.substr(eq + 1));
  }
  return cfg;
}

SimConfig SimConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read config " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

std::string SimConfig::to_text() const {
  std::ostringstream os;
  os << "a = " << format_number(a) << '\n'
     << "R = " << R << '\n'
     << "dt = " << format_number(resolved_dt()) << '\n'
     << "t_max = " << format_number(t_max) << '\n'
     << "boundary = " << (boundary == Boundary::periodic ? "periodic" : "dirichlet") << '\n'
     << "rings = ";
  for (std::size_t k = 0; k < rings.size(); ++k) os << (k ? "," : "") << rings[k];
  os << '\n'
     << "snapshot_every = " << snapshot_every << '\n'
     << "initial = " << (initial == InitialCondition::zero ? "zero" : "delta") << '\n'
     << "threads = " << threads << '\n';
  return os.str();
}

SimResult run(const SimConfig& config) {
  if (config.rings.empty()) throw std::invalid_argument("run: no rings to monitor");
  if (!(config.t_max > 0.0)) throw std::invalid_argument("run: t_max must be positive");
  const auto rays = ring_rays(config.rings);
  const int largest = ring_half_extent(config.rings.back());
  if (config.R < 2 * largest)
    throw std::invalid_argument("run: R = " + std::to_string(config.R) +
                                " must be at least twice the largest ring half-extent " +
                                std::to_string(largest));

  const auto f = logistic(config.a);
  const double dt = config.resolved_dt();
  LatticeState state(config.R, config.boundary);
  if (config.initial == InitialCondition::delta) state.at(0, 0) = 1.0;

  SimResult result;
  std::vector<std::size_t> cell;
  for (std::size_t r = 0; r < rays.size(); ++r) {
    for (std::size_t n = 0; n < rays[r].nodes.size(); ++n) {
      const auto node = rays[r].nodes[n];
      FirstPassageRecord rec;
      rec.ray = static_cast<int>(r);
      rec.ray_alpha = rays[r].alpha;
      rec.ring_n = static_cast<int>(n) + 1;
      rec.node = node;
      rec.position = square_to_hex(node);
      if (state.at(node.i, node.j) >= 0.5) rec.t_cross = 0.0;
      result.records.push_back(rec);
      cell.push_back(state.index(node.i, node.j));
    }
  }

  auto snapshot = [&] {
    result.snapshots.push_back({state.t, state.radius(), state.values()});
  };
  if (config.snapshot_every > 0) snapshot();

  auto pending = [&] {
    return std::any_of(result.records.begin(), result.records.end(),
                       [](const auto& r) { return !r.t_cross; });
  };

  std::vector<double> before(cell.size());
  std::size_t steps = 0;
  while (pending() && state.t < config.t_max) {
    for (std::size_t k = 0; k < cell.size(); ++k) before[k] = state.values()[cell[k]];
    const double t0 = static_cast<double>(steps) * dt;
    step(state, f, dt, config.threads);
    ++steps;
    state.t = static_cast<double>(steps) * dt;
    for (std::size_t k = 0; k < cell.size(); ++k) {
      auto& rec = result.records[k];
      const double now = state.values()[cell[k]];
      if (rec.t_cross || now < 0.5) continue;
      rec.t_cross = t0 + dt * (0.5 - before[k]) / (now - before[k]);
    }
    if (config.snapshot_every > 0 && steps % static_cast<std::size_t>(config.snapshot_every) == 0)
      snapshot();
  }
  result.complete = !pending();
  result.t_end = state.t;
  result.steps = steps;
  return result;
}

std::vector<SpeedEstimate> estimate_speeds(std::span<const FirstPassageRecord> records) {
  std::map<int, std::vector<const FirstPassageRecord*>> by_ray;
  for (const auto& r : records) by_ray[r.ray].push_back(&r);

  std::vector<SpeedEstimate> out;
  for (auto& [ray, recs] : by_ray) {
    std::sort(recs.begin(), recs.end(),
              [](const auto* a, const auto* b) { return a->ring_n < b->ring_n; });
    for (std::size_t k = 0; k + 1 < recs.size(); ++k) {
      const auto& inner = *recs[k];
      const auto& outer = *recs[k + 1];
      if (!inner.t_cross || !outer.t_cross)
        throw SolverError("estimate_speeds: ray " + std::to_string(ray) +
                          " is missing a crossing time");
      const double elapsed = *outer.t_cross - *inner.t_cross;
      if (!(elapsed > 0.0))
        throw SolverError("estimate_speeds: crossing times do not increase along ray " +
                          std::to_string(ray) + "; check dt and the domain radius");
      const double dist = std::hypot(outer.position.x - inner.position.x,
                                     outer.position.y - inner.position.y);
      out.push_back({ray, inner.ray_alpha, inner.ring_n, dist / elapsed});
    }
  }
  return out;
}

void write_snapshot(std::ostream& out, const Snapshot& snapshot) {
  const int n = 2 * snapshot.R + 1;
  out << "t,R\n" << format_number(snapshot.t) << ',' << snapshot.R << '\n';
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      if (c) out << ',';
      out << format_number(snapshot.values[static_cast<std::size_t>(r) * n + c]);
    }
    out << '\n';
  }
}

}  // namespace hexwave
