#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <vector>

#include "gaugeprop/special.hpp"

namespace gaugeprop {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Half-open cell (lo, hi] of the extended line. lo may be -inf and hi may
/// be +inf; (lo, +inf) is then open on the right.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  static Interval real_line() { return {-kInf, kInf}; }

  bool bounded() const { return lo > -kInf && hi < kInf; }
  bool empty() const { return !(lo < hi); }
  double length() const { return hi - lo; }
  bool contains(double x) const { return lo < x && x <= hi; }
};

namespace gauge {

/// Positive function of the tag bounding admissible cell sizes.
struct Gauge1D {
  std::function<double(double)> delta;
  double delta_neg_inf = 1.0;
  double delta_pos_inf = 1.0;

  static Gauge1D constant(double d, double d_inf);
};

/// Throws InvalidArgument when the unbounded-end parameters are not positive.
void validate(const Gauge1D& g);

struct TaggedCell {
  Interval cell;
  double tag = 0.0;
};

struct TaggedDivision {
  std::vector<TaggedCell> cells;
};

/// True when the tag is a vertex of the cell.
bool tag_is_vertex(const TaggedCell& tc);

bool is_delta_fine(const TaggedCell& tc, const Gauge1D& g);

struct DivisionOptions {
  int max_depth = 60;
  std::size_t max_cells = std::size_t{1} << 24;
};

/// Builds a delta-fine division of `domain` by peeling the unbounded ends
/// and bisecting bounded cells. Leaves are tagged at their outer vertex
/// when that is fine, otherwise at the other vertex.
TaggedDivision cousin_division(const Gauge1D& g, Interval domain,
                               const DivisionOptions& opts = {});

using CellIntegrand = std::function<Complex(double tag, const Interval& cell)>;
using PointIntegrand = std::function<Complex(double x)>;

/// Sum of h(tag, cell) over the division. Cells tagged at +-inf contribute
/// zero.
Complex riemann_sum(const CellIntegrand& h, const TaggedDivision& d);

/// Riemann sum of the point integrand f(tag) * |cell|.
Complex riemann_sum_point(const PointIntegrand& f, const TaggedDivision& d);

/// Strategy for integrands oscillating like exp(i alpha (x - center)^2) on
/// unbounded domains. Outside [center - cutoff, center + cutoff] the tails are
/// cut at successive half periods of the chirp and the alternating partial
/// sums are accelerated by repeated averaging.
struct OscillatoryTail {
  double center = 0.0;
  double alpha = 0.5;
  double cutoff = 0.0;  // <= 0 selects a default from alpha
  int pieces = 48;
  int averaging_depth = 24;
};

inline constexpr double kDefaultTolBounded = 1e-8;
inline constexpr double kDefaultTolOscillatory = 1e-4;
inline constexpr int kDefaultMaxRefinements = 40;

struct IntegrationOptions {
  double tol = kDefaultTolBounded;
  int max_refinements = kDefaultMaxRefinements;
  int min_refinements = 4;
  std::size_t max_evaluations = std::size_t{1} << 22;
  std::optional<OscillatoryTail> tail;
};

struct IntegralResult {
  Complex value{0.0, 0.0};
  double error_estimate = 0.0;
  int refinements_used = 0;
  bool converged = true;
  std::size_t evaluations = 0;
};

/// Gauge-refinement integral of f over `domain`. Each refinement halves the
/// gauge; on bounded cells the resulting sums are combined by Richardson
/// extrapolation. A result that misses the tolerance within the refinement
/// budget is returned with converged == false.
IntegralResult integrate_1d(const PointIntegrand& f, Interval domain,
                            const IntegrationOptions& opts = {});

/// Same as integrate_1d but throws NoConvergence instead of returning an
/// unconverged result.
IntegralResult integrate_1d_checked(const PointIntegrand& f, Interval domain,
                                    const IntegrationOptions& opts = {});

}  // namespace gauge
}  // namespace gaugeprop
