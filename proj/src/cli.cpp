#include "hexwave/cli.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "hexwave/csv.hpp"
#include "hexwave/dispersion.hpp"
#include "hexwave/error.hpp"
#include "hexwave/growth.hpp"
#include "hexwave/wave.hpp"

namespace hexwave::cli {

namespace fs = std::filesystem;

namespace {

constexpr double kDegree = kPi / 180.0;

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& text) {
  const auto t = trim(text);
  double v = 0.0;
  auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc{} || p != t.data() + t.size())
    throw std::invalid_argument("'" + key + "' expects a number, got '" + text + "'");
  return v;
}

int to_int(const std::string& key, const std::string& text) {
  const auto t = trim(text);
  int v = 0;
  auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc{} || p != t.data() + t.size())
    throw std::invalid_argument("'" + key + "' expects an integer, got '" + text + "'");
  return v;
}

std::vector<int> to_int_list(const std::string& key, const std::string& text) {
  std::vector<int> out;
  std::istringstream is(text);
  std::string item;
  while (std::getline(is, item, ','))
    if (!trim(item).empty()) out.push_back(to_int(key, item));
  return out;
}

std::string join(const std::vector<int>& v) {
  std::string s;
  for (std::size_t k = 0; k < v.size(); ++k) s += (k ? "," : "") + std::to_string(v[k]);
  return s;
}

[[noreturn]] void unknown_key(const std::string& key) {
  throw std::invalid_argument("unknown parameter '" + key + "'");
}

fs::path sibling(const fs::path& out, const std::string& suffix) {
  fs::path p = out;
  p.replace_filename(out.stem().string() + suffix);
  return p;
}

void ensure_parent(const fs::path& out) {
  if (out.has_parent_path()) fs::create_directories(out.parent_path());
}

}  // namespace

std::vector<double> angle_grid(double start, double end, double step) {
  if (!std::isfinite(start) || !std::isfinite(end)) throw std::invalid_argument("angle range must be finite");
  if (!(step > 0.0)) throw std::invalid_argument("angle step must be positive");
  if (end < start) throw std::invalid_argument("angle range end is below its start");
  std::size_t count = 1;
  if (end > start) count = static_cast<std::size_t>(std::ceil((end - start) / step - 1e-9));
  count = std::max<std::size_t>(count, 1);
  std::vector<double> out(count);
  for (std::size_t k = 0; k < count; ++k) out[k] = start + static_cast<double>(k) * step;
  return out;
}

void SpeedCurveParams::set(const std::string& key, const std::string& value) {
  if (key == "fprime0") fprime0 = to_double(key, value);
  else if (key == "alpha_start") alpha_start = to_double(key, value);
  else if (key == "alpha_end") alpha_end = to_double(key, value);
  else if (key == "alpha_step") alpha_step = to_double(key, value);
  else unknown_key(key);
}

KeyValues SpeedCurveParams::resolved() const {
  return {{"fprime0", format_number(fprime0)},
          {"alpha_start", format_number(alpha_start)},
          {"alpha_end", format_number(alpha_end)},
          {"alpha_step", format_number(alpha_step)}};
}

void PhiParams::set(const std::string& key, const std::string& value) {
  if (key == "n_max") n_max = to_int(key, value);
  else if (key == "alpha_step") alpha_step = to_double(key, value);
  else if (key == "n_extra") n_extra = to_int_list(key, value);
  else unknown_key(key);
}

KeyValues PhiParams::resolved() const {
  return {{"n_max", std::to_string(n_max)},
          {"alpha_step", format_number(alpha_step)},
          {"n_extra", join(n_extra)}};
}

std::vector<int> PhiParams::orders() const {
  if (n_max < 0) throw std::invalid_argument("n_max must be >= 0");
  std::vector<int> out;
  for (int n : {1, 2, 4, 20, 50, 100})
    if (n <= n_max) out.push_back(n);
  for (int n : n_extra) {
    if (n < 0) throw std::invalid_argument("phi order must be >= 0");
    out.push_back(n);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

void WaveParams::set(const std::string& key, const std::string& value) {
  if (key == "c_factor") c_factor = to_double(key, value);
  else if (key == "alpha") alpha = to_double(key, value);
  else if (key == "a") a = to_double(key, value);
  else if (key == "L") L = to_double(key, value);
  else if (key == "h") h = to_double(key, value);
  else if (key == "tol") tol = to_double(key, value);
  else if (key == "max_iters") max_iters = to_int(key, value);
  else if (key == "M_scale") M_scale = to_double(key, value);
  else unknown_key(key);
}

KeyValues WaveParams::resolved() const {
  return {{"c_factor", format_number(c_factor)}, {"alpha", format_number(alpha)},
          {"a", format_number(a)},               {"L", format_number(L)},
          {"h", format_number(h)},               {"tol", format_number(tol)},
          {"max_iters", std::to_string(max_iters)}, {"M_scale", format_number(M_scale)}};
}

void SquareParams::set(const std::string& key, const std::string& value) {
  if (key == "fprime0") fprime0 = to_double(key, value);
  else if (key == "beta_start") beta_start = to_double(key, value);
  else if (key == "beta_end") beta_end = to_double(key, value);
  else if (key == "beta_step") beta_step = to_double(key, value);
  else unknown_key(key);
}

KeyValues SquareParams::resolved() const {
  return {{"fprime0", format_number(fprime0)},
          {"beta_start", format_number(beta_start)},
          {"beta_end", format_number(beta_end)},
          {"beta_step", format_number(beta_step)}};
}

std::vector<Extremum> find_extrema(const std::vector<double>& angles,
                                   const std::vector<double>& values) {
  const std::size_t n = values.size();
  std::vector<Extremum> out;
  if (n < 3 || angles.size() != n) return out;
  const double step = angles[1] - angles[0];
  const bool cyclic = std::abs(static_cast<double>(n) * step - 2.0 * kPi) < 1e-9;
  for (std::size_t k = 0; k < n; ++k) {
    if (!cyclic && (k == 0 || k + 1 == n)) continue;
    const double lo = values[(k + n - 1) % n];
    const double mid = values[k];
    const double hi = values[(k + 1) % n];
    if (!std::isfinite(lo) || !std::isfinite(mid) || !std::isfinite(hi)) continue;
    const double eps = 1e-13 * std::max(1.0, std::abs(mid));
    const char* kind = nullptr;
    // a two-node tie is reported once, at its left node
    const bool tie = std::abs(mid - hi) <= eps;
    double after = hi;
    if (tie) {
      if (!cyclic && k + 2 >= n) continue;
      after = values[(k + 2) % n];
    }
    if (mid > lo + eps && (tie ? after < hi - eps : mid > hi + eps)) kind = "max";
    else if (mid < lo - eps && (tie ? after > hi + eps : mid < hi - eps)) kind = "min";
    if (!kind) continue;
    const double curv = lo - 2.0 * mid + hi;
    const double offset = curv != 0.0 ? 0.5 * step * (lo - hi) / curv : 0.0;
    const double value = mid - 0.125 * (lo - hi) * (lo - hi) / (curv != 0.0 ? curv : 1.0);
    out.push_back({kind, angles[k] + offset, value});
  }
  return out;
}

CommandResult cmd_speed_curve(const SpeedCurveParams& params, const fs::path& out) {
  if (!(params.fprime0 > 0.0)) throw std::invalid_argument("fprime0 must be positive");
  const auto alphas = angle_grid(params.alpha_start, params.alpha_end, params.alpha_step);
  CsvTable table({"alpha", "c_star", "lambda_star"});
  std::vector<double> speeds;
  nlohmann::json failures = nlohmann::json::array();
  for (double alpha : alphas) {
    try {
      const auto r = minimal_speed(Direction::from_angle(alpha), params.fprime0);
      table.add_row({alpha, r.c_star, r.lambda_star});
      speeds.push_back(r.c_star);
    } catch (const SolverError& e) {
      table.add_row({alpha, std::nan(""), std::nan("")});
      speeds.push_back(std::nan(""));
      failures.push_back({{"alpha", alpha}, {"error", e.what()}});
    }
  }
  ensure_parent(out);
  table.write(out);

  CsvTable summary({"kind", "alpha", "c_star"});
  nlohmann::json extrema = nlohmann::json::array();
  for (const auto& e : find_extrema(alphas, speeds)) {
    summary.add_row({e.kind, format_number(e.alpha), format_number(e.value)});
    extrema.push_back({{"kind", e.kind}, {"alpha", e.alpha}, {"c_star", e.value}});
  }
  const auto summary_path = sibling(out, "_extrema.csv");
  summary.write(summary_path);

  CommandResult result;
  result.outputs = {out, summary_path};
  result.details = {{"rows", alphas.size()}, {"failures", failures}, {"extrema", extrema}};
  if (!failures.empty()) result.exit_code = kPartial;
  return result;
}

CommandResult cmd_phi(const PhiParams& params, const fs::path& out) {
  const auto orders = params.orders();
  const auto alphas = angle_grid(0.0, 2.0 * kPi, params.alpha_step);
  CsvTable table({"alpha", "n", "phi_n"});
  for (int n : orders)
    for (double alpha : alphas) table.add_row({alpha, static_cast<double>(n), phi(n, alpha)});
  ensure_parent(out);
  table.write(out);
  CommandResult result;
  result.outputs = {out};
  result.details = {{"orders", orders}, {"angles", alphas.size()}};
  return result;
}

CommandResult cmd_wave(const WaveParams& params, const fs::path& out) {
  if (!(params.c_factor > 0.0)) throw std::invalid_argument("c_factor must be positive");
  if (params.max_iters < 1) throw std::invalid_argument("max_iters must be >= 1");
  const auto f = logistic(params.a);
  const auto dir = Direction::from_angle(params.alpha);
  const double c = params.c_factor * minimal_speed(dir, f.fprime0()).c_star;
  WaveOptions options;
  options.L = params.L;
  options.h = params.h;
  options.tol = params.tol;
  options.max_iters = static_cast<std::size_t>(params.max_iters);
  options.M_scale = params.M_scale;
  const auto profile = iterate_profile(c, dir, f, options);

  const auto normalized = normalize_profile(profile.grid);
  CsvTable table({"xi", "U"});
  for (std::size_t k = 0; k < normalized.size(); ++k)
    table.add_row({normalized.xi(k), normalized.values[k]});
  ensure_parent(out);
  table.write(out);

  auto sidecar = profile.sidecar();
  sidecar["c_factor"] = params.c_factor;
  sidecar["a"] = params.a;
  sidecar["normalized_shift"] = half_crossing(profile.grid);
  const auto sidecar_path = sibling(out, ".json");
  std::ofstream(sidecar_path) << sidecar.dump(2) << '\n';

  CommandResult result;
  result.outputs = {out, sidecar_path};
  result.details = {{"c", c},
                    {"iterations", profile.stats.iterations},
                    {"residual_max", profile.residual_max}};
  return result;
}

CommandResult cmd_spread(const SimConfig& config, const fs::path& out_dir) {
  const auto sim = run(config);
  fs::create_directories(out_dir);
  CommandResult result;

  CsvTable crossings({"ray_alpha", "ring_n", "i", "j", "x", "y", "t_cross"});
  std::size_t crossed = 0;
  for (const auto& r : sim.records) {
    crossings.add_row({r.ray_alpha, static_cast<double>(r.ring_n), static_cast<double>(r.node.i),
                       static_cast<double>(r.node.j), r.position.x, r.position.y,
                       r.t_cross ? *r.t_cross : std::nan("")});
    if (r.t_cross) ++crossed;
  }
  crossings.write(out_dir / "crossings.csv");
  result.outputs.push_back(out_dir / "crossings.csv");

  std::map<int, std::vector<FirstPassageRecord>> by_ray;
  for (const auto& r : sim.records) by_ray[r.ray].push_back(r);
  std::vector<SpeedEstimate> speeds;
  nlohmann::json skipped = nlohmann::json::array();
  for (const auto& [ray, recs] : by_ray) {
    try {
      const auto est = estimate_speeds(recs);
      speeds.insert(speeds.end(), est.begin(), est.end());
    } catch (const SolverError& e) {
      skipped.push_back({{"ray", ray}, {"error", e.what()}});
    }
  }

  CsvTable speed_table({"alpha", "n", "cbar"});
  CsvTable comparison({"ray", "alpha", "n", "cbar", "c_star", "rel_error"});
  std::map<int, double> c_star;
  for (const auto& s : speeds) {
    if (!c_star.count(s.ray))
      c_star[s.ray] = minimal_speed(Direction::from_angle(s.alpha), config.a).c_star;
    const double cs = c_star[s.ray];
    speed_table.add_row({s.alpha, static_cast<double>(s.n), s.cbar});
    comparison.add_row({static_cast<double>(s.ray), s.alpha, static_cast<double>(s.n), s.cbar, cs,
                        (s.cbar - cs) / cs});
  }
  speed_table.write(out_dir / "speeds.csv");
  comparison.write(out_dir / "comparison.csv");
  result.outputs.push_back(out_dir / "speeds.csv");
  result.outputs.push_back(out_dir / "comparison.csv");

  for (std::size_t k = 0; k < sim.snapshots.size(); ++k) {
    char name[32];
    std::snprintf(name, sizeof name, "snapshot_%05zu.csv", k);
    std::ofstream os(out_dir / name);
    write_snapshot(os, sim.snapshots[k]);
    result.outputs.push_back(out_dir / name);
  }

  result.details = {{"complete", sim.complete},
                    {"t_end", sim.t_end},
                    {"steps", sim.steps},
                    {"monitored", sim.records.size()},
                    {"crossed", crossed},
                    {"skipped_rays", skipped}};
  if (!sim.complete || !skipped.empty()) result.exit_code = kPartial;
  return result;
}

CommandResult cmd_square(const SquareParams& params, const fs::path& out) {
  if (!(params.fprime0 > 0.0)) throw std::invalid_argument("fprime0 must be positive");
  const auto betas = angle_grid(params.beta_start, params.beta_end, params.beta_step);
  CsvTable table({"beta", "c_s_star", "nu_star"});
  std::vector<double> speeds;
  nlohmann::json failures = nlohmann::json::array();
  for (double beta : betas) {
    try {
      const auto r = square_minimal_speed(beta, params.fprime0);
      table.add_row({beta, r.c_star, r.nu_star});
      speeds.push_back(r.c_star);
    } catch (const SolverError& e) {
      table.add_row({beta, std::nan(""), std::nan("")});
      speeds.push_back(std::nan(""));
      failures.push_back({{"beta", beta}, {"error", e.what()}});
    }
  }
  ensure_parent(out);
  table.write(out);
  nlohmann::json extrema = nlohmann::json::array();
  for (const auto& e : find_extrema(betas, speeds))
    extrema.push_back({{"kind", e.kind}, {"beta", e.alpha}, {"c_s_star", e.value}});
  CommandResult result;
  result.outputs = {out};
  result.details = {{"rows", betas.size()}, {"failures", failures}, {"extrema", extrema}};
  if (!failures.empty()) result.exit_code = kPartial;
  return result;
}

fs::path manifest_path(const std::string& subcommand, const fs::path& out) {
  if (subcommand == "spread") return out / "manifest.json";
  return sibling(out, ".manifest.json");
}

namespace {

bool is_angle(const std::string& key) {
  return key == "alpha" || key.starts_with("alpha_") || key.starts_with("beta_");
}

template <class P>
KeyValues apply(P& params, const KeyValues& overrides, bool degrees) {
  for (const auto& [k, v] : overrides) {
    if (degrees && is_angle(k)) params.set(k, format_number(to_double(k, v) * kDegree));
    else params.set(k, v);
  }
  return params.resolved();
}

KeyValues config_resolved(const SimConfig& cfg) {
  KeyValues out;
  std::istringstream is(cfg.to_text());
  std::string line;
  while (std::getline(is, line)) {
    const auto eq = line.find('=');
    out.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return out;
}

}  // namespace

int execute(const std::string& subcommand, const KeyValues& overrides, bool degrees,
            const fs::path& out, const std::optional<std::string>& seed, std::ostream& err) {
  const auto started = std::chrono::steady_clock::now();
  nlohmann::json manifest = {{"subcommand", subcommand},
                             {"version", kVersion},
                             {"out", out.string()},
                             {"seed", seed ? nlohmann::json(*seed) : nlohmann::json(nullptr)}};
  KeyValues resolved;
  CommandResult result;
  int code = kOk;
  try {
    if (subcommand == "speed-curve") {
      SpeedCurveParams p;
      resolved = apply(p, overrides, degrees);
      result = cmd_speed_curve(p, out);
    } else if (subcommand == "phi") {
      PhiParams p;
      resolved = apply(p, overrides, degrees);
      result = cmd_phi(p, out);
    } else if (subcommand == "wave") {
      WaveParams p;
      resolved = apply(p, overrides, degrees);
      result = cmd_wave(p, out);
    } else if (subcommand == "square") {
      SquareParams p;
      resolved = apply(p, overrides, degrees);
      result = cmd_square(p, out);
    } else if (subcommand == "spread") {
      SimConfig cfg;
      for (const auto& [k, v] : overrides) cfg.set(k, v);
      resolved = config_resolved(cfg);
      result = cmd_spread(cfg, out);
    } else {
      throw std::invalid_argument("unknown subcommand '" + subcommand + "'");
    }
    code = result.exit_code;
  } catch (const SpeedRegimeError& e) {
    err << "error: " << e.what() << '\n';
    manifest["error"] = {{"message", e.what()}, {"regime", to_string(e.regime())}};
    code = kSolverFailure;
  } catch (const SolverError& e) {
    err << "error: " << e.what() << '\n';
    manifest["error"] = {{"message", e.what()}};
    code = kSolverFailure;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << '\n';
    manifest["error"] = {{"message", e.what()}};
    code = kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    manifest["error"] = {{"message", e.what()}};
    code = kSolverFailure;
  }

  nlohmann::json params = nlohmann::json::object();
  for (const auto& [k, v] : resolved) params[k] = v;
  nlohmann::json outputs = nlohmann::json::array();
  for (const auto& p : result.outputs) outputs.push_back(p.string());
  manifest["params"] = params;
  manifest["outputs"] = outputs;
  manifest["details"] = result.details;
  manifest["exit_code"] = code;
  manifest["complete"] = code == kOk;
  manifest["duration_seconds"] =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  try {
    const auto path = manifest_path(subcommand, out);
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot write " + path.string());
    os << manifest.dump(2) << '\n';
  } catch (const std::exception& e) {
    err << "error: manifest not written: " << e.what() << '\n';
    if (code == kOk) code = kSolverFailure;
  }
  return code;
}

int replay(const fs::path& manifest, const std::optional<fs::path>& out, std::ostream& err) {
  std::ifstream in(manifest);
  if (!in) {
    err << "usage error: cannot read manifest " << manifest.string() << '\n';
    return kUsage;
  }
  nlohmann::json m;
  try {
    in >> m;
  } catch (const std::exception& e) {
    err << "usage error: malformed manifest: " << e.what() << '\n';
    return kUsage;
  }
  KeyValues params;
  for (const auto& [k, v] : m.at("params").items()) params.emplace_back(k, v.get<std::string>());
  std::optional<std::string> seed;
  if (m.contains("seed") && m["seed"].is_string()) seed = m["seed"].get<std::string>();
  return execute(m.at("subcommand").get<std::string>(), params, false,
                 out ? *out : fs::path(m.at("out").get<std::string>()), seed, err);
}

KeyValues read_key_values(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read config " + path.string());
  KeyValues out;
  std::string line;
  while (std::getline(in, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find_first_of("=:");
    if (eq == std::string::npos) throw std::invalid_argument("config: expected key = value: " + line);
    out.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return out;
}

namespace {

struct Subcommand {
  const char* name;
  const char* help;
  std::vector<std::string> keys;
  const char* default_out;
};

std::string flag_name(std::string key) {
  std::replace(key.begin(), key.end(), '_', '-');
  return "--" + key;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hexagonal-lattice Fisher-KPP speeds, wave profiles and spreading"};
  app.require_subcommand(1);
  // single-letter parameters such as h are long options, so help is --help only
  app.set_help_flag("--help", "print this help and exit");
  app.set_version_flag("--version", kVersion);

  const std::vector<Subcommand> commands = {
      {"speed-curve", "minimal speed c*(alpha) over an angle range",
       {"fprime0", "alpha_start", "alpha_end", "alpha_step"}, "speed_curve.csv"},
      {"phi", "Phi_n(alpha) tables", {"n_max", "alpha_step", "n_extra"}, "phi.csv"},
      {"wave", "traveling-wave profile by monotone iteration",
       {"c_factor", "alpha", "a", "L", "h", "tol", "max_iters", "M_scale"}, "wave.csv"},
      {"spread", "front spreading on the hexagonal lattice",
       {"a", "R", "dt", "t_max", "boundary", "rings", "snapshot_every", "initial", "threads"},
       "spread"},
      {"square", "square-lattice minimal speed c_s*(beta)",
       {"fprime0", "beta_start", "beta_end", "beta_step"}, "square.csv"},
  };

  struct State {
    std::map<std::string, std::string> flags;
    std::string out;
    std::string config;
    std::string seed;
    bool degrees = false;
  };
  std::map<std::string, State> state;
  std::map<std::string, CLI::App*> subs;
  std::map<std::string, std::vector<std::string>> keys;

  for (const auto& entry : commands) {
    auto* sub = app.add_subcommand(entry.name, entry.help);
    sub->set_help_flag("--help", "print this help and exit");
    auto& st = state[entry.name];
    st.out = entry.default_out;
    keys[entry.name] = entry.keys;
    for (const auto& key : entry.keys) sub->add_option(flag_name(key), st.flags[key], key);
    sub->add_option("--out", st.out, "output file (directory for spread)");
    sub->add_option("--config", st.config, "key = value file; entries override flags");
    sub->add_option("--seed", st.seed, "recorded in the manifest; runs are deterministic");
    sub->add_flag("--degrees", st.degrees, "angles given in degrees");
    subs[entry.name] = sub;
  }

  std::string manifest;
  std::string replay_out;
  auto* rep = app.add_subcommand("replay", "re-run the parameters stored in a manifest");
  rep->add_option("manifest", manifest, "manifest JSON")->required();
  rep->add_option("--out", replay_out, "output location override");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  if (rep->parsed())
    return replay(manifest, replay_out.empty() ? std::nullopt : std::optional<fs::path>(replay_out),
                  std::cerr);

  for (const auto& entry : commands) {
    if (!subs[entry.name]->parsed()) continue;
    auto& st = state[entry.name];
    KeyValues overrides;
    for (const auto& key : keys[entry.name])
      if (subs[entry.name]->count(flag_name(key))) overrides.emplace_back(key, st.flags[key]);
    if (!st.config.empty()) {
      try {
        const auto extra = read_key_values(st.config);
        overrides.insert(overrides.end(), extra.begin(), extra.end());
      } catch (const std::exception& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kUsage;
      }
    }
    const auto seed = subs[entry.name]->count("--seed") ? std::optional<std::string>(st.seed)
                                                        : std::nullopt;
    const int code = execute(entry.name, overrides, st.degrees, st.out, seed, std::cerr);
    std::cout << entry.name << ": exit " << code << ", manifest "
              << manifest_path(entry.name, st.out).string() << '\n';
    return code;
  }
  return kUsage;
}

}  // namespace hexwave::cli
