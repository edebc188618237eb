#include "gaugeprop/wave_state.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <sstream>

#include "gaugeprop/error.hpp"

namespace gaugeprop {

WaveState WaveState::zeros(double x_min, double x_max, std::size_t n) {
  WaveState s;
  s.x_min = x_min;
  s.x_max = x_max;
  s.samples.assign(n, Complex{0.0, 0.0});
  s.validate();
  return s;
}

WaveState WaveState::sample(double x_min, double x_max, std::size_t n,
                            const std::function<Complex(double)>& f) {
  WaveState s = zeros(x_min, x_max, n);
  for (std::size_t k = 0; k < n; ++k) s.samples[k] = f(s.x(k));
  s.validate();
  return s;
}

void WaveState::validate() const {
  const std::size_t n = samples.size();
  if (n < 8 || !std::has_single_bit(n)) {
    std::ostringstream os;
    os << "grid size must be a power of two >= 8, got " << n;
    throw Error(ErrorCode::InvalidArgument, os.str());
  }
  if (!std::isfinite(x_min) || !std::isfinite(x_max) || !(x_min < x_max)) {
    throw Error(ErrorCode::InvalidArgument, "grid bounds must be finite with x_min < x_max");
  }
  for (const Complex& v : samples) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw Error(ErrorCode::NonFiniteValue, "wave state has non-finite samples");
    }
  }
}

bool WaveState::same_grid(const WaveState& other) const noexcept {
  return samples.size() == other.samples.size() && x_min == other.x_min && x_max == other.x_max;
}

double l2_norm(const WaveState& s) {
  double acc = 0.0;
  for (const Complex& v : s.samples) acc += std::norm(v);
  return std::sqrt(s.spacing() * acc);
}

double l2_distance(const WaveState& a, const WaveState& b) {
  if (!a.same_grid(b)) throw Error(ErrorCode::InvalidArgument, "states live on different grids");
  double acc = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) acc += std::norm(a.samples[k] - b.samples[k]);
  return std::sqrt(a.spacing() * acc);
}

double boundary_ratio(const WaveState& s) {
  double peak = 0.0;
  for (const Complex& v : s.samples) peak = std::max(peak, std::abs(v));
  if (peak == 0.0) return 0.0;
  const double edge = std::max(std::abs(s.samples.front()), std::abs(s.samples.back()));
  return edge / peak;
}

Complex gaussian_packet(double x, double sigma, double center, double momentum) {
  return gaussian_packet_free(x, 0.0, sigma, center, momentum);
}

Complex gaussian_packet_free(double x, double t, double sigma, double center, double momentum) {
  if (!(sigma > 0.0)) throw Error(ErrorCode::InvalidArgument, "packet width must be positive");
  const double s2 = sigma * sigma;
  const Complex spread(1.0, t / (2.0 * s2));
  const double norm = std::pow(2.0 * std::numbers::pi * s2, -0.25);
  const double shift = x - center - momentum * t;
  const Complex expo = -shift * shift / (4.0 * s2 * spread) +
                       Complex(0.0, momentum * (x - center) - 0.5 * momentum * momentum * t);
  return norm / std::sqrt(spread) * std::exp(expo);
}

}  // namespace gaugeprop
