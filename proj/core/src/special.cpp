#include "gaugeprop/special.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace gaugeprop::special {
namespace {

using LongComplex = std::complex<long double>;

constexpr int kMaxFractionTerms = 20000;

// Maclaurin series erf(z) = 2/sqrt(pi) sum (-1)^n z^(2n+1) / (n! (2n+1)).
// Partial sums can exceed |erf| by exp(|z|^2); long double keeps the
// cancellation below 1e-13 up to kSeriesSwitch and a little beyond.
Complex erf_series(Complex z) {
  const LongComplex zl(z.real(), z.imag());
  const LongComplex z2 = zl * zl;
  LongComplex term = zl;
  LongComplex sum = zl;
  const long double eps = std::numeric_limits<long double>::epsilon();
  for (int n = 1; n < 4000; ++n) {
    term *= -z2 / static_cast<long double>(n);
    const LongComplex add = term / static_cast<long double>(2 * n + 1);
    sum += add;
    if (std::abs(add) <= eps * std::abs(sum)) break;
  }
  const long double scale = 2.0L / std::sqrt(std::numbers::pi_v<long double>);
  sum *= scale;
  return {static_cast<double>(sum.real()), static_cast<double>(sum.imag())};
}

// Laplace continued fraction
//   erfcx(z) = 1/sqrt(pi) * 1 / (z + (1/2) / (z + 1 / (z + (3/2) / (z + ...))))
// evaluated with the modified Lentz algorithm. Converges for Re z > 0.
bool erfcx_fraction(Complex z, Complex& out) {
  constexpr double tiny = 1e-300;
  const double eps = 0.5 * std::numeric_limits<double>::epsilon();
  Complex f = z;
  if (std::abs(f) == 0.0) f = tiny;
  Complex c = f;
  Complex d = 0.0;
  for (int j = 1; j < kMaxFractionTerms; ++j) {
    const double a = 0.5 * j;
    d = z + a * d;
    if (std::abs(d) == 0.0) d = tiny;
    c = z + a / c;
    if (std::abs(c) == 0.0) c = tiny;
    d = 1.0 / d;
    const Complex delta = c * d;
    f *= delta;
    if (std::abs(delta - 1.0) < eps) {
      out = 1.0 / (std::sqrt(std::numbers::pi) * f);
      return true;
    }
  }
  return false;
}

bool use_fraction(Complex z) {
  return z.real() > 0.0 && std::abs(z) >= kSeriesSwitch;
}

}  // namespace

Complex erf(Complex z) {
  if (z.real() < 0.0) return -erf(-z);
  if (use_fraction(z)) {
    Complex scaled;
    if (erfcx_fraction(z, scaled)) return 1.0 - std::exp(-z * z) * scaled;
  }
  return erf_series(z);
}

Complex erfc(Complex z) {
  if (z.real() < 0.0) return 2.0 - erfc(-z);
  if (use_fraction(z)) {
    Complex scaled;
    if (erfcx_fraction(z, scaled)) return std::exp(-z * z) * scaled;
  }
  return 1.0 - erf_series(z);
}

Complex erfcx(Complex z) {
  if (z.real() < 0.0) return 2.0 * std::exp(z * z) - erfcx(-z);
  if (use_fraction(z)) {
    Complex scaled;
    if (erfcx_fraction(z, scaled)) return scaled;
  }
  return std::exp(z * z) * (1.0 - erf_series(z));
}

}  // namespace gaugeprop::special
