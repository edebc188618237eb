#include "gaugeprop/fresnel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "gaugeprop/error.hpp"

namespace gaugeprop::fresnel {
namespace {

const Complex kRotNeg = std::polar(1.0, -std::numbers::pi / 4.0);  // e^{-i pi/4}
const Complex kRotPos = std::polar(1.0, std::numbers::pi / 4.0);   // e^{+i pi/4}

void require_positive_time(double dt) {
  if (!(dt > 0.0)) {
    std::ostringstream os;
    os << "time step must be positive, got " << dt;
    throw Error(ErrorCode::DegenerateTime, os.str());
  }
}

void require_window(const Interval& w) {
  if (std::isnan(w.lo) || std::isnan(w.hi) || w.lo > w.hi || w.lo == kInf || w.hi == -kInf) {
    std::ostringstream os;
    os << "invalid window (" << w.lo << ", " << w.hi << "]";
    throw Error(ErrorCode::InvalidArgument, os.str());
  }
}

// erfc of the rotated argument for a displacement d >= 0 (d may be +inf).
Complex erfc_ray(double d, double scale) {
  if (d == kInf) return {0.0, 0.0};
  return special::erfc(kRotNeg * (d * scale));
}

Complex window_analytic(Interval w, double x, double dt) {
  if (!(w.lo < w.hi)) return {0.0, 0.0};
  const double scale = 1.0 / std::sqrt(2.0 * dt);
  const double da = w.lo - x;
  const double db = w.hi - x;
  if (da >= 0.0) {
    // Both ends right of the stationary point: erf(b) - erf(a) = erfc(a) - erfc(b).
    return 0.5 * (erfc_ray(da, scale) - erfc_ray(db, scale));
  }
  if (db <= 0.0) {
    return 0.5 * (erfc_ray(-db, scale) - erfc_ray(-da, scale));
  }
  // Straddling: erf(b) - erf(a) = 2 - erfc(b) - erfc(-a).
  return 0.5 * (2.0 - erfc_ray(db, scale) - erfc_ray(-da, scale));
}

gauge::OscillatoryTail chirp_tail(double center, double alpha, double radius) {
  gauge::OscillatoryTail t;
  t.center = center;
  t.alpha = alpha;
  t.cutoff = std::max(12.0 * std::sqrt(0.5 / alpha), radius);
  return t;
}

class Transition {
public:
  Transition(const Cylinder& c, const Endpoints& e, const TransitionOptions& o)
      : cyl_(c), ends_(e), opts_(o), steps_(c.grid.steps()) {
    remaining_.assign(steps_.size() + 1, 0.0);
    for (std::size_t j = steps_.size(); j-- > 0;) remaining_[j] = remaining_[j + 1] + steps_[j];
  }

  ComplexProbability run() {
    const int n = static_cast<int>(steps_.size());
    ComplexProbability out;
    if (ends_.x_end) {
      if (n == 1) {
        out.value = free_kernel(*ends_.x_end, ends_.x_start, steps_[0]);
        return out;
      }
    }
    out.value = level(1, ends_.x_start, &out.error_estimate);
    out.converged = converged_;
    return out;
  }

private:
  // Window of the j-th variable (1-based); the free end uses end_window.
  const Interval& window(int j) const {
    const auto idx = static_cast<std::size_t>(j - 1);
    return idx < cyl_.windows.size() ? cyl_.windows[idx] : ends_.end_window;
  }

  int last_level() const {
    const int n = static_cast<int>(steps_.size());
    return ends_.x_end ? n - 1 : n;
  }

  Complex integrand_tail(int j, double x, double x_prev) {
    const double dt = steps_[static_cast<std::size_t>(j - 1)];
    Complex k = free_kernel(x, x_prev, dt);
    if (opts_.weight) k *= opts_.weight(j, x);
    if (j < last_level()) return k * level(j + 1, x, nullptr);
    if (ends_.x_end) return k * free_kernel(*ends_.x_end, x, steps_.back());
    return k;
  }

  Complex level(int j, double x_prev, double* top_error) {
    const double dt = steps_[static_cast<std::size_t>(j - 1)];
    const Interval& w = window(j);
    if (j == last_level() && opts_.innermost == WindowBackend::Analytic && !opts_.weight) {
      if (!ends_.x_end) return window_analytic(w, x_prev, dt);
      const double x_end = *ends_.x_end;
      const double dn = steps_.back();
      const double total = dt + dn;
      const double mid = x_prev + (x_end - x_prev) * dt / total;
      return free_kernel(x_end, x_prev, total) * window_analytic(w, mid, dt * dn / total);
    }
    gauge::IntegrationOptions io;
    io.tol = opts_.tol;
    if (!w.bounded()) {
      const double rest = remaining_[static_cast<std::size_t>(j)];
      if (ends_.x_end) {
        const double a = 1.0 / dt;
        const double b = 1.0 / rest;
        io.tail = chirp_tail((a * x_prev + b * *ends_.x_end) / (a + b), 0.5 * (a + b), opts_.radius);
      } else {
        io.tail = chirp_tail(x_prev, 0.5 / dt, opts_.radius);
      }
    }
    const gauge::IntegralResult r =
        gauge::integrate_1d([&](double x) { return integrand_tail(j, x, x_prev); }, w, io);
    converged_ = converged_ && r.converged;
    if (top_error) *top_error = r.error_estimate;
    return r.value;
  }

  const Cylinder& cyl_;
  const Endpoints& ends_;
  const TransitionOptions& opts_;
  std::vector<double> steps_;
  std::vector<double> remaining_;  // remaining_[j] = t_final - t_j
  bool converged_ = true;
};

}  // namespace

Complex free_kernel(double x, double y, double dt) {
  require_positive_time(dt);
  const double d = x - y;
  return kRotNeg / std::sqrt(2.0 * std::numbers::pi * dt) * std::polar(1.0, d * d / (2.0 * dt));
}

Complex window_integral(Interval w, double x_prev, double dt, const WindowOptions& opts) {
  require_positive_time(dt);
  require_window(w);
  if (opts.backend == WindowBackend::Analytic) return window_analytic(w, x_prev, dt);
  const gauge::IntegralResult r = window_integral_gauge(w, x_prev, dt, opts);
  if (!r.converged) {
    std::ostringstream os;
    os << "window integral did not converge (estimate " << r.error_estimate << ")";
    throw Error(ErrorCode::NoConvergence, os.str());
  }
  return r.value;
}

gauge::IntegralResult window_integral_gauge(Interval w, double x_prev, double dt,
                                            const WindowOptions& opts) {
  require_positive_time(dt);
  require_window(w);
  gauge::IntegrationOptions io;
  io.tol = opts.tol;
  if (!w.bounded()) io.tail = chirp_tail(x_prev, 0.5 / dt, opts.radius);
  return gauge::integrate_1d([&](double u) { return free_kernel(u, x_prev, dt); }, w, io);
}

Complex bandlimited_weight(double offset, double dt, double h) {
  if (!(h > 0.0)) throw Error(ErrorCode::InvalidArgument, "grid spacing must be positive");
  if (dt == 0.0) {
    const double m = offset / h;
    return std::abs(m) < 1e-9 ? Complex{1.0, 0.0} : Complex{0.0, 0.0};
  }
  if (dt < 0.0) return std::conj(bandlimited_weight(offset, -dt, h));

  const double kappa = std::numbers::pi / h;
  const double beta = 0.5 * dt;
  const double k0 = offset / dt;
  const double rb = std::sqrt(beta);
  const Complex s_hi = kRotPos * (rb * (kappa - k0));
  const Complex s_lo = kRotPos * (rb * (-kappa - k0));
  const Complex pref = h / (2.0 * std::numbers::pi) * kRotNeg *
                       (0.5 * std::sqrt(std::numbers::pi / beta));
  if (std::abs(k0) <= kappa) {
    return pref * std::polar(1.0, beta * k0 * k0) * (special::erf(s_hi) - special::erf(s_lo));
  }
  const Complex ph_hi = std::polar(1.0, kappa * offset - beta * kappa * kappa);
  const Complex ph_lo = std::polar(1.0, -kappa * offset - beta * kappa * kappa);
  if (k0 > kappa) {
    return pref * (ph_hi * special::erfcx(-s_hi) - ph_lo * special::erfcx(-s_lo));
  }
  return pref * (ph_lo * special::erfcx(s_lo) - ph_hi * special::erfcx(s_hi));
}

TimeGrid TimeGrid::uniform(double t_final, int slices) {
  if (slices < 1) throw Error(ErrorCode::InvalidArgument, "slices must be at least 1");
  if (!(t_final > 0.0)) throw Error(ErrorCode::DegenerateTime, "final time must be positive");
  TimeGrid g;
  g.t_final = t_final;
  for (int j = 1; j < slices; ++j) g.interior.push_back(t_final * j / slices);
  return g;
}

void TimeGrid::validate() const {
  if (!(t_final > 0.0)) throw Error(ErrorCode::DegenerateTime, "final time must be positive");
  double prev = 0.0;
  for (double t : interior) {
    if (!(t > prev) || !(t < t_final)) {
      std::ostringstream os;
      os << "interior time " << t << " is not strictly inside (" << prev << ", " << t_final << ")";
      throw Error(ErrorCode::DegenerateTime, os.str());
    }
    prev = t;
  }
}

std::vector<double> TimeGrid::steps() const {
  validate();
  std::vector<double> out;
  double prev = 0.0;
  for (double t : interior) {
    out.push_back(t - prev);
    prev = t;
  }
  out.push_back(t_final - prev);
  return out;
}

ComplexProbability transition_probability(const Cylinder& c, const Endpoints& e,
                                          const TransitionOptions& opts) {
  c.grid.validate();
  if (c.windows.size() != c.grid.interior.size()) {
    throw Error(ErrorCode::InvalidArgument, "cylinder needs one window per interior time");
  }
  for (const Interval& w : c.windows) require_window(w);
  require_window(e.end_window);
  if (!std::isfinite(e.x_start) || (e.x_end && !std::isfinite(*e.x_end))) {
    throw Error(ErrorCode::InvalidArgument, "endpoints must be finite");
  }
  return Transition(c, e, opts).run();
}

}  // namespace gaugeprop::fresnel
