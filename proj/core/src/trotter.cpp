#include "gaugeprop/trotter.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "gaugeprop/error.hpp"
#include "gaugeprop/fft.hpp"
#include "gaugeprop/fresnel.hpp"

namespace gaugeprop::trotter {
namespace {

std::vector<Complex> potential_phases(const WaveState& grid, const PotentialSpec& v, double dt) {
  std::vector<Complex> out(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double x = grid.x(k);
    const double value = v(x);
    if (!std::isfinite(value)) {
      std::ostringstream os;
      os << "potential is not finite at x = " << x;
      throw Error(ErrorCode::NonFiniteValue, os.str());
    }
    out[k] = std::polar(1.0, -0.5 * dt * value);
  }
  return out;
}

// Applies one free step of fixed length with either backend.
class Kinetic {
public:
  Kinetic(std::size_t n, double h, double dt, Backend backend)
      : n_(n), dt_(dt), plan_(backend == Backend::Spectral ? n : 2 * n) {
    if (dt == 0.0) return;
    const std::size_t m = plan_.size();
    multiplier_.resize(m);
    if (backend == Backend::Spectral) {
      const double dk = 2.0 * std::numbers::pi / (static_cast<double>(n) * h);
      for (std::size_t j = 0; j < n; ++j) {
        const double idx = j < n / 2 ? static_cast<double>(j)
                                     : static_cast<double>(j) - static_cast<double>(n);
        const double k = idx * dk;
        multiplier_[j] = std::polar(1.0 / static_cast<double>(n), -0.5 * k * k * dt);
      }
      return;
    }
    // Circulant embedding of the symmetric Toeplitz kernel matrix.
    auto c = plan_.data();
    std::fill(c.begin(), c.end(), Complex{0.0, 0.0});
    for (std::size_t d = 0; d < n; ++d) {
      const Complex w = fresnel::bandlimited_weight(static_cast<double>(d) * h, dt, h);
      c[d] = w;
      if (d > 0) c[m - d] = w;
    }
    plan_.forward();
    const double scale = 1.0 / static_cast<double>(m);
    for (std::size_t j = 0; j < m; ++j) multiplier_[j] = c[j] * scale;
  }

  void apply(std::vector<Complex>& psi) {
    if (dt_ == 0.0) return;
    auto buf = plan_.data();
    std::copy(psi.begin(), psi.end(), buf.begin());
    std::fill(buf.begin() + static_cast<std::ptrdiff_t>(n_), buf.end(), Complex{0.0, 0.0});
    plan_.forward();
    for (std::size_t j = 0; j < buf.size(); ++j) buf[j] *= multiplier_[j];
    plan_.backward();
    std::copy(buf.begin(), buf.begin() + static_cast<std::ptrdiff_t>(n_), psi.begin());
  }

private:
  std::size_t n_;
  double dt_;
  fft::Plan plan_;
  std::vector<Complex> multiplier_;
};

}  // namespace

void PropagatorConfig::validate() const {
  if (slices < 1) throw Error(ErrorCode::InvalidArgument, "slices must be at least 1");
  if (!(epsilon_local > 0.0)) throw Error(ErrorCode::InvalidArgument, "epsilon_local must be positive");
}

struct Stepper::Impl {
  Kinetic full;
  std::vector<Complex> phase;
  std::vector<Complex> phase_half;

  Impl(const WaveState& grid, const PotentialSpec& pot, double step, Backend b)
      : full(grid.size(), grid.spacing(), step, b),
        phase(potential_phases(grid, pot, step)),
        phase_half(potential_phases(grid, pot, 0.5 * step)) {}
};

Stepper::Stepper(const WaveState& grid, const PotentialSpec& v, double dt, Backend backend) {
  grid.validate();
  if (!std::isfinite(dt)) throw Error(ErrorCode::InvalidArgument, "time step must be finite");
  impl_ = std::make_unique<Impl>(grid, v, dt, backend);
}

Stepper::~Stepper() = default;
Stepper::Stepper(Stepper&&) noexcept = default;
Stepper& Stepper::operator=(Stepper&&) noexcept = default;

void Stepper::kinetic(std::vector<Complex>& psi) { impl_->full.apply(psi); }

void Stepper::potential(std::vector<Complex>& psi) const {
  for (std::size_t k = 0; k < psi.size(); ++k) psi[k] *= impl_->phase[k];
}

void Stepper::potential_half(std::vector<Complex>& psi) const {
  for (std::size_t k = 0; k < psi.size(); ++k) psi[k] *= impl_->phase_half[k];
}

WaveState free_step(const WaveState& s, double dt, Backend backend) {
  s.validate();
  if (!std::isfinite(dt)) throw Error(ErrorCode::InvalidArgument, "time step must be finite");
  WaveState out = s;
  out.time_stamp += dt;
  if (dt == 0.0) return out;
  Kinetic k(s.size(), s.spacing(), dt, backend);
  k.apply(out.samples);
  return out;
}

WaveState potential_step(const WaveState& s, double dt, const PotentialSpec& v) {
  s.validate();
  WaveState out = s;
  const auto phase = potential_phases(s, v, dt);
  for (std::size_t k = 0; k < out.size(); ++k) out.samples[k] *= phase[k];
  return out;
}

WaveState trotter_propagate(const WaveState& f, const PotentialSpec& v, double t,
                            const PropagatorConfig& cfg, Diagnostics* diag) {
  cfg.validate();
  f.validate();
  if (!std::isfinite(t)) throw Error(ErrorCode::InvalidArgument, "time must be finite");
  WaveState out = f;
  out.time_stamp += t;
  if (t == 0.0) return out;
  const double dt = t / cfg.slices;
  Stepper stepper(f, v, dt, cfg.backend);
  double worst = boundary_ratio(out);
  for (int j = 0; j < cfg.slices; ++j) {
    if (cfg.splitting == Splitting::Lie) {
      stepper.potential(out.samples);
      stepper.kinetic(out.samples);
    } else {
      stepper.potential_half(out.samples);
      stepper.kinetic(out.samples);
      stepper.potential_half(out.samples);
    }
    if (diag) worst = std::max(worst, boundary_ratio(out));
  }
  if (diag) {
    diag->max_boundary_ratio = std::max(diag->max_boundary_ratio, worst);
    diag->boundary_warning = diag->max_boundary_ratio > kBoundaryWarnRatio;
  }
  return out;
}

int extension_steps(double t, double epsilon_local) {
  if (!(epsilon_local > 0.0)) throw Error(ErrorCode::InvalidArgument, "epsilon_local must be positive");
  if (!std::isfinite(t)) throw Error(ErrorCode::InvalidArgument, "time must be finite");
  const double a = std::abs(t);
  int m = static_cast<int>(std::floor(a / epsilon_local)) + 1;
  while (a / m >= epsilon_local) ++m;
  while (m > 1 && a / (m - 1) < epsilon_local) --m;
  return m;
}

WaveState group_extend(const WaveState& f, const PotentialSpec& v, double t,
                       const PropagatorConfig& cfg, Diagnostics* diag) {
  cfg.validate();
  const int m = extension_steps(t, cfg.epsilon_local);
  WaveState out = f;
  for (int j = 0; j < m; ++j) out = trotter_propagate(out, v, t / m, cfg, diag);
  return out;
}

}  // namespace gaugeprop::trotter
