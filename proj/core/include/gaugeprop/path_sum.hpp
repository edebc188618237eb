#pragma once

#include <span>
#include <variant>
#include <vector>

#include "gaugeprop/fresnel.hpp"
#include "gaugeprop/potential.hpp"
#include "gaugeprop/wave_state.hpp"

namespace gaugeprop::path_sum {

struct ActionParams {
  double mass = 1.0;
  double t_final = 1.0;
  int slices = 1;
};

/// Discrete action sum over j = 1..n of
/// [(m/2) ((x_j - x_{j-1}) / dt)^2 - V(x_j)] dt with dt = t_final / n.
double action_sum(std::span<const double> path, const PotentialSpec& v, const ActionParams& p);

/// Initial datum concentrated at one point.
struct PointMass {
  double x0 = 0.0;
};

using Initial = std::variant<WaveState, PointMass>;

struct QuadratureConfig {
  double tol = 1e-10;
  double radius = 0.0;
};

struct LocalSolution {
  Complex value{0.0, 0.0};
  fresnel::TimeGrid grid_used;
  double stability_gap = 0.0;
  std::vector<double> gap_history;
  double error_estimate = 0.0;
  bool converged = true;
};

/// Sum over discretized paths ending at x at time grid.t_final, weighted by
/// the free kernels of each slice and by exp(-(i/2) dt_j V) at the start of
/// each slice, applied to f. For a WaveState the kernels act on the
/// band-limited interpolant of the samples, so on a grid point the result
/// agrees with the quadrature Trotter product of the same grid.
LocalSolution marginal_expectation(const WaveState& f, const PotentialSpec& v, double x,
                                   const fresnel::TimeGrid& grid);

/// Batched evaluation at several end points.
std::vector<Complex> marginal_expectation(const WaveState& f, const PotentialSpec& v,
                                          std::span<const double> xs,
                                          const fresnel::TimeGrid& grid);

/// Point-mass initial datum: iterated gauge integrals over the intermediate
/// positions.
LocalSolution marginal_expectation(const PointMass& f, const PotentialSpec& v, double x,
                                   const fresnel::TimeGrid& grid, const QuadratureConfig& q = {});

LocalSolution marginal_expectation(const Initial& f, const PotentialSpec& v, double x,
                                   const fresnel::TimeGrid& grid, const QuadratureConfig& q = {});

/// Required interior times plus a bound on the slice length.
struct TimeRefinementGauge {
  std::vector<double> min_times;
  double delta_t = 1.0;
};

/// Starts from the gauge's mandatory times and halves every slice while the
/// longest slice exceeds delta_t or the last change of value is >= tol.
/// Throws NoConvergence after max_refinements halvings.
LocalSolution refine_until_stable(const Initial& f, const PotentialSpec& v, double x, double t,
                                  const TimeRefinementGauge& g, double tol,
                                  int max_refinements = 12, const QuadratureConfig& q = {});

}  // namespace gaugeprop::path_sum
