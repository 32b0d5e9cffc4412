#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "hexwave/hexsim.hpp"

namespace hexwave::cli {

inline constexpr const char* kVersion = "0.1.0";

enum ExitCode : int { kOk = 0, kUsage = 1, kSolverFailure = 2, kPartial = 3 };

using KeyValues = std::vector<std::pair<std::string, std::string>>;

/// Angles start, start + step, ... strictly below end; a single angle when
/// end == start.
std::vector<double> angle_grid(double start, double end, double step);

struct SpeedCurveParams {
  double fprime0 = 10.0;
  double alpha_start = 0.0;
  double alpha_end = 6.283185307179586;
  double alpha_step = 0.017453292519943295;

  void set(const std::string& key, const std::string& value);
  KeyValues resolved() const;
};

struct PhiParams {
  int n_max = 100;
  double alpha_step = 0.017453292519943295;
  std::vector<int> n_extra;

  void set(const std::string& key, const std::string& value);
  KeyValues resolved() const;
  std::vector<int> orders() const;
};

struct WaveParams {
  double c_factor = 1.1;
  double alpha = 0.0;
  double a = 1.0;
  double L = 60.0;
  double h = 0.02;
  double tol = 1e-8;
  int max_iters = 5000;
  double M_scale = 1.0;

  void set(const std::string& key, const std::string& value);
  KeyValues resolved() const;
};

struct SquareParams {
  double fprime0 = 10.0;
  double beta_start = 0.0;
  double beta_end = 6.283185307179586;
  double beta_step = 0.017453292519943295;

  void set(const std::string& key, const std::string& value);
  KeyValues resolved() const;
};

struct Extremum {
  std::string kind;  // "max" or "min"
  double alpha = 0.0;
  double value = 0.0;
};

/// Discrete local extrema of `values` over `angles`, refined by a parabola
/// through each extremal node and its neighbours. Wraps around when the grid
/// covers a full turn.
std::vector<Extremum> find_extrema(const std::vector<double>& angles,
                                   const std::vector<double>& values);

struct CommandResult {
  int exit_code = kOk;
  std::vector<std::filesystem::path> outputs;
  nlohmann::json details = nlohmann::json::object();
};

CommandResult cmd_speed_curve(const SpeedCurveParams& params, const std::filesystem::path& out);
CommandResult cmd_phi(const PhiParams& params, const std::filesystem::path& out);
CommandResult cmd_wave(const WaveParams& params, const std::filesystem::path& out);
CommandResult cmd_spread(const SimConfig& config, const std::filesystem::path& out_dir);
CommandResult cmd_square(const SquareParams& params, const std::filesystem::path& out);

/// Where the manifest for a run writing to `out` goes.
std::filesystem::path manifest_path(const std::string& subcommand, const std::filesystem::path& out);

/// Applies `overrides` to the subcommand defaults (angle keys scaled from
/// degrees when `degrees` is set), runs it and writes the
/// manifest. Returns the exit code. Diagnostics go to `err`.
int execute(const std::string& subcommand, const KeyValues& overrides, bool degrees,
            const std::filesystem::path& out, const std::optional<std::string>& seed,
            std::ostream& err);

/// Re-runs the resolved parameters stored in a manifest.
int replay(const std::filesystem::path& manifest, const std::optional<std::filesystem::path>& out,
           std::ostream& err);

/// Reads `key = value` lines; '#' starts a comment.
KeyValues read_key_values(const std::filesystem::path& path);

int main(int argc, char** argv);

}  // namespace hexwave::cli
