#pragma once

#include <complex>

namespace gaugeprop {

using Complex = std::complex<double>;

namespace special {

/// |z| below which the Maclaurin series (evaluated in extended precision) is
/// used; above it the Laplace continued fraction for erfc takes over.
inline constexpr double kSeriesSwitch = 3.0;

/// Error function of a complex argument. Absolute accuracy ~1e-13 on the
/// diagonal rays arg z = +-pi/4 used by the Fresnel kernels, and in the
/// right half plane generally.
Complex erf(Complex z);

/// Complementary error function, computed without cancellation when erf(z)
/// is close to one.
Complex erfc(Complex z);

/// Scaled complementary error function exp(z^2) * erfc(z).
Complex erfcx(Complex z);

}  // namespace special
}  // namespace gaugeprop
