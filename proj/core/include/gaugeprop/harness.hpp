#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "gaugeprop/potential.hpp"
#include "gaugeprop/trotter.hpp"
#include "gaugeprop/wave_state.hpp"

namespace gaugeprop::harness {

/// Canonical bump exp(1 - 1/(1 - u^2)) for |u| < 1, else 0; maximum 1.
double bump_profile(double u);

/// Integral of bump_profile over [-1, 1].
double bump_profile_integral();

struct BumpFunction {
  double center = 0.0;
  double radius = 1.0;
  std::vector<double> samples;

  /// Samples the bump on the grid of `grid`. Throws InvalidArgument when
  /// radius <= 8 h and SupportOverflow when the support reaches the first
  /// or last grid point.
  static BumpFunction on_grid(const WaveState& grid, double center, double radius);

  double operator()(double x) const { return bump_profile((x - center) / radius); }
};

/// h * sum psi_k conj(phi_k).
Complex pair_with_test(const WaveState& s, const BumpFunction& phi);

struct AgreementConfig {
  int slices = 64;
  double epsilon_local = trotter::kDefaultEpsilonLocal;
  int reference_slices = 8192;
};

struct AgreementResult {
  double discrepancy = 0.0;
  std::vector<double> per_bump;
};

/// Largest |pair(U^t f, phi) - pair(psi_loc, phi)| over the bumps, where
/// U^t f is the spectral Trotter product at reference_slices and psi_loc is
/// the path sum with `slices` uniform slices evaluated on the bump supports.
AgreementResult local_global_agreement(const WaveState& f, const PotentialSpec& v, double t,
                                       const std::vector<BumpFunction>& bumps,
                                       const AgreementConfig& cfg);

enum class ReferenceKind { FreeGaussian, HarmonicGround };

struct PacketParams {
  double sigma = 1.0;
  double center = 0.0;
  double momentum = 0.0;
};

/// Closed-form oracles: the freely evolving packet, and the ground state
/// exp(-i t / 2) pi^{-1/4} exp(-x^2 / 2) of V(x) = x^2.
Complex reference_solution(ReferenceKind kind, const PacketParams& p, double x, double t);

struct ConvergenceResult {
  double slope = 0.0;
  std::vector<int> slices;
  std::vector<double> errors;
  int reference_slices = 0;
  bool degenerate = false;
  std::string diagnostic;
};

/// Least-squares slope of log(error) against log(1/n), errors measured in L2
/// against a spectral Trotter product with 16 * max(n) slices. When every
/// error is below the noise floor the result is flagged degenerate with a
/// zero slope.
ConvergenceResult convergence_order(const WaveState& f, const PotentialSpec& v, double t,
                                    const std::vector<int>& n_list,
                                    trotter::Backend backend = trotter::Backend::Spectral);

inline constexpr double kNoiseFloor = 1e-13;

struct GreenRow {
  double t = 0.0;
  double deviation = 0.0;
};

struct GreenResult {
  std::vector<GreenRow> rows;
  bool monotone = true;
};

/// Deviation ||U^t f - f||_2 for a Gaussian packet at each t, propagated
/// with the spectral backend.
GreenResult green_limit_check(const WaveState& grid, const PacketParams& packet,
                              const std::vector<double>& t_list, const PotentialSpec& v,
                              int slices = 64);

struct Row {
  std::string label;
  double value = 0.0;
  double threshold = 0.0;
  bool passed = true;
};

struct SuiteResult {
  std::string name;
  int criterion = 0;
  std::string title;
  bool passed = true;
  std::vector<Row> rows;
  std::map<std::string, double> metrics;
  std::map<std::string, std::vector<double>> series;
  std::string diagnostic;
  double seconds = 0.0;
};

/// Names of the acceptance suites in criterion order.
const std::vector<std::string>& suite_names();

/// Runs one named suite. Throws InvalidArgument for unknown names.
SuiteResult run_suite(const std::string& name);

/// Runs suites on up to `threads` workers; results keep the order of `names`.
std::vector<SuiteResult> run_suites(const std::vector<std::string>& names, int threads);

}  // namespace gaugeprop::harness
