#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "gaugeprop/gauge.hpp"
#include "gaugeprop/special.hpp"

namespace gaugeprop::fresnel {

/// Free propagator e^{-i pi/4} / sqrt(2 pi dt) * exp(i (x - y)^2 / (2 dt)).
/// Throws DegenerateTime for dt <= 0.
Complex free_kernel(double x, double y, double dt);

enum class WindowBackend { Analytic, Gauge };

struct WindowOptions {
  WindowBackend backend = WindowBackend::Analytic;
  double tol = 1e-10;
  double radius = 0.0;  // truncation radius floor for unbounded windows
};

/// Integral of free_kernel(u, x_prev, dt) over u in the window.
Complex window_integral(Interval w, double x_prev, double dt, const WindowOptions& opts = {});

/// Gauge-quadrature evaluation of the window integral with its diagnostics.
gauge::IntegralResult window_integral_gauge(Interval w, double x_prev, double dt,
                                            const WindowOptions& opts = {});

/// Weight of the free propagator applied to the band-limited (sinc)
/// interpolant of grid samples with spacing h, at displacement `offset`:
/// (h / 2 pi) * integral over |k| < pi/h of exp(-i k^2 dt / 2 + i k offset).
/// Negative dt gives the time-reversed weight; dt == 0 gives the Kronecker
/// delta on grid offsets.
Complex bandlimited_weight(double offset, double dt, double h);

struct TimeGrid {
  double t_final = 1.0;
  std::vector<double> interior;

  static TimeGrid uniform(double t_final, int slices);

  /// Throws DegenerateTime for coincident or out-of-range times.
  void validate() const;
  int slices() const { return static_cast<int>(interior.size()) + 1; }
  /// Slice lengths t_j - t_{j-1} for j = 1..slices().
  std::vector<double> steps() const;
};

struct Cylinder {
  TimeGrid grid;
  std::vector<Interval> windows;  // one per interior time
};

/// Path endpoints. Without x_end the final position is integrated over
/// end_window.
struct Endpoints {
  double x_start = 0.0;
  std::optional<double> x_end;
  Interval end_window = Interval::real_line();
};

struct ComplexProbability {
  Complex value{0.0, 0.0};
  double error_estimate = 0.0;
  bool converged = true;
};

struct TransitionOptions {
  double tol = 1e-10;
  double radius = 0.0;
  WindowBackend innermost = WindowBackend::Analytic;
  /// Optional factor multiplying the integrand at the j-th intermediate
  /// position x_j (j = 1..). The closed-form innermost level is skipped
  /// when present.
  std::function<Complex(int j, double x)> weight;
};

/// Iterated window integrals of the product of free kernels along the time
/// grid. The innermost level is closed-form unless the gauge backend is
/// requested; the remaining levels use gauge quadrature with the chirp tail
/// strategy on unbounded windows.
ComplexProbability transition_probability(const Cylinder& c, const Endpoints& e,
                                          const TransitionOptions& opts = {});

}  // namespace gaugeprop::fresnel
