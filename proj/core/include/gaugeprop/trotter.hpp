#pragma once

#include <memory>
#include <vector>

#include "gaugeprop/potential.hpp"
#include "gaugeprop/wave_state.hpp"

namespace gaugeprop::trotter {

enum class Backend { Spectral, Quadrature };
enum class Splitting { Lie, Strang };

inline constexpr double kDefaultEpsilonLocal = 0.25;
inline constexpr double kBoundaryWarnRatio = 1e-10;

struct PropagatorConfig {
  Backend backend = Backend::Spectral;
  int slices = 1;
  double epsilon_local = kDefaultEpsilonLocal;
  Splitting splitting = Splitting::Lie;

  void validate() const;
};

struct Diagnostics {
  double max_boundary_ratio = 0.0;
  bool boundary_warning = false;
};

/// Free evolution by dt. The spectral backend multiplies periodic Fourier
/// modes by exp(-i k^2 dt / 2); the quadrature backend applies the free
/// kernel to the band-limited interpolant of the samples on the open line
/// and truncates the result to the grid. Negative dt runs backwards.
WaveState free_step(const WaveState& s, double dt, Backend backend);

/// Pointwise multiplication by exp(-(i/2) dt V(x_k)).
WaveState potential_step(const WaveState& s, double dt, const PotentialSpec& v);

/// Reusable split-step propagator for one grid, potential and slice length.
class Stepper {
public:
  Stepper(const WaveState& grid, const PotentialSpec& v, double dt, Backend backend);
  ~Stepper();
  Stepper(Stepper&&) noexcept;
  Stepper& operator=(Stepper&&) noexcept;

  void kinetic(std::vector<Complex>& psi);
  void potential(std::vector<Complex>& psi) const;
  void potential_half(std::vector<Complex>& psi) const;

private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// (K^{t/n} M^{t/n})^n f with n = cfg.slices; the Strang variant uses
/// M^{dt/2} K^{dt} M^{dt/2}. time_stamp advances by t.
WaveState trotter_propagate(const WaveState& f, const PotentialSpec& v, double t,
                            const PropagatorConfig& cfg, Diagnostics* diag = nullptr);

/// Smallest m >= 1 with |t| / m < epsilon_local.
int extension_steps(double t, double epsilon_local);

/// Applies trotter_propagate over t/m, m = extension_steps(t, epsilon_local)
/// times.
WaveState group_extend(const WaveState& f, const PotentialSpec& v, double t,
                       const PropagatorConfig& cfg, Diagnostics* diag = nullptr);

}  // namespace gaugeprop::trotter
