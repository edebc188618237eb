#include "gaugeprop/path_sum.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "gaugeprop/error.hpp"
#include "gaugeprop/trotter.hpp"

namespace gaugeprop::path_sum {
namespace {

fresnel::TimeGrid halve(const fresnel::TimeGrid& g) {
  fresnel::TimeGrid out;
  out.t_final = g.t_final;
  double prev = 0.0;
  for (double t : g.interior) {
    out.interior.push_back(0.5 * (prev + t));
    out.interior.push_back(t);
    prev = t;
  }
  out.interior.push_back(0.5 * (prev + g.t_final));
  return out;
}

double longest_step(const fresnel::TimeGrid& g) {
  const auto steps = g.steps();
  return *std::max_element(steps.begin(), steps.end());
}

}  // namespace

double action_sum(std::span<const double> path, const PotentialSpec& v, const ActionParams& p) {
  if (p.slices < 1) throw Error(ErrorCode::InvalidArgument, "slices must be at least 1");
  if (path.size() != static_cast<std::size_t>(p.slices) + 1) {
    throw Error(ErrorCode::InvalidArgument, "path needs slices + 1 positions");
  }
  if (!(p.t_final > 0.0)) throw Error(ErrorCode::DegenerateTime, "final time must be positive");
  const double dt = p.t_final / p.slices;
  double s = 0.0;
  for (std::size_t j = 1; j < path.size(); ++j) {
    const double vel = (path[j] - path[j - 1]) / dt;
    s += (0.5 * p.mass * vel * vel - v(path[j])) * dt;
  }
  return s;
}

std::vector<Complex> marginal_expectation(const WaveState& f, const PotentialSpec& v,
                                          std::span<const double> xs,
                                          const fresnel::TimeGrid& grid) {
  f.validate();
  const std::vector<double> steps = grid.steps();
  std::map<double, trotter::Stepper> steppers;
  auto stepper = [&](double dt) -> trotter::Stepper& {
    auto it = steppers.find(dt);
    if (it == steppers.end()) {
      it = steppers.emplace(dt, trotter::Stepper(f, v, dt, trotter::Backend::Quadrature)).first;
    }
    return it->second;
  };

  const double h = f.spacing();
  std::vector<Complex> out;
  out.reserve(xs.size());
  std::vector<Complex> row(f.size());
  for (double x : xs) {
    if (!std::isfinite(x)) throw Error(ErrorCode::InvalidArgument, "end point must be finite");
    for (std::size_t k = 0; k < f.size(); ++k) {
      row[k] = fresnel::bandlimited_weight(x - f.x(k), steps.back(), h);
    }
    for (std::size_t j = steps.size(); j-- > 0;) {
      trotter::Stepper& s = stepper(steps[j]);
      s.potential(row);
      if (j > 0) stepper(steps[j - 1]).kinetic(row);
    }
    Complex acc{0.0, 0.0};
    for (std::size_t k = 0; k < f.size(); ++k) acc += row[k] * f.samples[k];
    out.push_back(acc);
  }
  return out;
}

LocalSolution marginal_expectation(const WaveState& f, const PotentialSpec& v, double x,
                                   const fresnel::TimeGrid& grid) {
  LocalSolution out;
  out.grid_used = grid;
  out.value = marginal_expectation(f, v, std::span<const double>(&x, 1), grid).front();
  return out;
}

LocalSolution marginal_expectation(const PointMass& f, const PotentialSpec& v, double x,
                                   const fresnel::TimeGrid& grid, const QuadratureConfig& q) {
  const std::vector<double> steps = grid.steps();
  if (!std::isfinite(x) || !std::isfinite(f.x0)) {
    throw Error(ErrorCode::InvalidArgument, "end points must be finite");
  }
  fresnel::Cylinder cyl;
  cyl.grid = grid;
  cyl.windows.assign(grid.interior.size(), Interval::real_line());
  fresnel::Endpoints ends;
  ends.x_start = f.x0;
  ends.x_end = x;
  fresnel::TransitionOptions opts;
  opts.tol = q.tol;
  opts.radius = q.radius;
  const bool free = v.identically_zero();
  if (!free) {
    opts.weight = [&](int j, double y) {
      return std::polar(1.0, -0.5 * steps[static_cast<std::size_t>(j)] * v(y));
    };
  }
  const fresnel::ComplexProbability g = fresnel::transition_probability(cyl, ends, opts);
  LocalSolution out;
  out.grid_used = grid;
  out.value = g.value;
  if (!free) out.value *= std::polar(1.0, -0.5 * steps.front() * v(f.x0));
  out.error_estimate = g.error_estimate;
  out.converged = g.converged;
  return out;
}

LocalSolution marginal_expectation(const Initial& f, const PotentialSpec& v, double x,
                                   const fresnel::TimeGrid& grid, const QuadratureConfig& q) {
  if (const auto* s = std::get_if<WaveState>(&f)) return marginal_expectation(*s, v, x, grid);
  return marginal_expectation(std::get<PointMass>(f), v, x, grid, q);
}

LocalSolution refine_until_stable(const Initial& f, const PotentialSpec& v, double x, double t,
                                  const TimeRefinementGauge& g, double tol, int max_refinements,
                                  const QuadratureConfig& q) {
  if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "tolerance must be positive");
  if (!(g.delta_t > 0.0)) throw Error(ErrorCode::InvalidArgument, "delta_t must be positive");
  fresnel::TimeGrid grid;
  grid.t_final = t;
  grid.interior = g.min_times;
  std::sort(grid.interior.begin(), grid.interior.end());
  grid.interior.erase(std::unique(grid.interior.begin(), grid.interior.end()), grid.interior.end());
  grid.validate();

  LocalSolution cur = marginal_expectation(f, v, x, grid, q);
  bool have_gap = false;
  for (int r = 0;; ++r) {
    const bool too_coarse = longest_step(cur.grid_used) > g.delta_t;
    const bool unstable = have_gap && cur.stability_gap >= tol;
    if (!too_coarse && !unstable) return cur;
    if (r >= max_refinements) {
      std::ostringstream os;
      os << "time grid not stable after " << max_refinements << " refinements (last gap "
         << cur.stability_gap << ")";
      throw Error(ErrorCode::NoConvergence, os.str());
    }
    LocalSolution next = marginal_expectation(f, v, x, halve(cur.grid_used), q);
    next.gap_history = std::move(cur.gap_history);
    next.stability_gap = std::abs(next.value - cur.value);
    next.gap_history.push_back(next.stability_gap);
    next.converged = next.converged && cur.converged;
    cur = std::move(next);
    have_gap = true;
  }
}

}  // namespace gaugeprop::path_sum
