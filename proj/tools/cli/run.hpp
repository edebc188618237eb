#pragma once

#include <iosfwd>
#include <string>

#include "config.hpp"
#include "gaugeprop/wave_state.hpp"

namespace gaugeprop::cli {

inline constexpr const char* kDefaultReportPath = "gauge_prop_report.json";

/// Writes `x,re,im` rows with 17 significant digits.
void write_wave_csv(std::ostream& out, const WaveState& s);

/// Reads a wavefunction written by write_wave_csv. The x column must be
/// uniformly spaced; the grid is taken from it. Throws ConfigError.
WaveState read_wave_csv(const std::string& path);

/// Samples the configured initial state on the configured grid (or reads
/// it from file). Throws ConfigError for a point initial state.
WaveState initial_state(const RunConfig& cfg);

/// Number of verification workers from GAUGE_PROP_THREADS, defaulting to
/// the hardware concurrency.
int worker_threads();

/// Dispatches the command. Returns 0 on success, 1 on numeric failure or a
/// failed verification row; diagnostics go to `err`. Configuration errors
/// propagate as ConfigError.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace gaugeprop::cli
