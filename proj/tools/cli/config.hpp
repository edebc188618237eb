#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "gaugeprop/potential.hpp"
#include "gaugeprop/trotter.hpp"

namespace gaugeprop::cli {

enum class Command { Integrate, Propagate, Pathsum, Verify, Classify, Bench };
enum class Format { Csv, Json };
enum class InitialKind { Gaussian, PlaneWave, File, Point };

std::string to_string(Command c);

struct GridConfig {
  double x_min = -16.0;
  double x_max = 16.0;
  std::size_t n_points = 1024;
};

struct TimeConfig {
  double t = 1.0;
  int slices = 64;
  double epsilon_local = trotter::kDefaultEpsilonLocal;
};

struct PotentialConfig {
  std::string name = "zero";
  std::map<std::string, double> params;
};

struct InitialConfig {
  InitialKind kind = InitialKind::Gaussian;
  double sigma = 1.0;
  double center = 0.0;
  double momentum = 0.0;
  double k = 0.0;
  double x0 = 0.0;
  std::string path;
};

struct OutputConfig {
  std::string path;  // empty writes to standard output
  Format format = Format::Csv;
};

struct Tolerances {
  double integrate = 1e-10;
  double pathsum = 1e-10;
};

struct RunConfig {
  Command command = Command::Propagate;
  GridConfig grid;
  TimeConfig time;
  PotentialConfig potential;
  InitialConfig initial;
  OutputConfig output;
  Tolerances tolerances;
  trotter::Backend backend = trotter::Backend::Spectral;
  trotter::Splitting splitting = trotter::Splitting::Lie;
  std::string expr = "fresnel";
  std::string suite = "all";
  std::vector<double> eval_points;  // pathsum end points for point-mass data
  double energy = 1.0;
  bool timings = false;

  /// Throws ConfigError when an invariant is violated.
  void validate() const;
  PotentialSpec potential_spec() const;
  /// Canonical JSON echo of every field, used for reports and run ids.
  nlohmann::json echo() const;
};

/// Parses the command line (argv[0] is the program name). A --config file
/// is applied first and explicit flags override it. Throws ConfigError for
/// unknown keys, malformed values or invariant violations. Returns nullopt
/// when help was requested (text written to `help_out`).
std::optional<RunConfig> parse_config(int argc, const char* const* argv, std::string& help_out);

/// Applies a JSON configuration document on top of `cfg`.
void apply_json(RunConfig& cfg, const nlohmann::json& doc);

}  // namespace gaugeprop::cli
