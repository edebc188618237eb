#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "gaugeprop/special.hpp"

namespace gaugeprop {

/// Samples of a wavefunction at x_k = x_min + k h, k = 0..n-1, with
/// h = (x_max - x_min) / n.
struct WaveState {
  std::vector<Complex> samples;
  double x_min = 0.0;
  double x_max = 1.0;
  double time_stamp = 0.0;

  static WaveState zeros(double x_min, double x_max, std::size_t n);
  static WaveState sample(double x_min, double x_max, std::size_t n,
                          const std::function<Complex(double)>& f);

  std::size_t size() const noexcept { return samples.size(); }
  double spacing() const noexcept { return (x_max - x_min) / static_cast<double>(samples.size()); }
  double x(std::size_t k) const noexcept { return x_min + static_cast<double>(k) * spacing(); }

  /// Throws InvalidArgument unless n is a power of two >= 8, x_min < x_max
  /// and all samples are finite.
  void validate() const;
  bool same_grid(const WaveState& other) const noexcept;
};

double l2_norm(const WaveState& s);
/// L2 distance on a shared grid; throws InvalidArgument for mismatched grids.
double l2_distance(const WaveState& a, const WaveState& b);
/// Largest |psi| over the two boundary samples divided by the largest |psi|.
double boundary_ratio(const WaveState& s);

/// Normalized packet (2 pi sigma^2)^{-1/4} exp(-(x-c)^2 / (4 sigma^2)) e^{i p (x-c)},
/// so that |psi|^2 has standard deviation sigma.
Complex gaussian_packet(double x, double sigma, double center, double momentum);

/// The packet above evolved freely for time t.
Complex gaussian_packet_free(double x, double t, double sigma, double center, double momentum);

}  // namespace gaugeprop
