#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "gaugeprop/error.hpp"
#include "gaugeprop/fresnel.hpp"

namespace gaugeprop::fresnel {
namespace {

constexpr double kPi = std::numbers::pi;

TEST(FreeKernel, PrefactorAtCoincidentPoints) {
  const Complex k = free_kernel(0.7, 0.7, 1.0 / (2.0 * kPi));
  EXPECT_NEAR(k.real(), std::sqrt(0.5), 1e-15);
  EXPECT_NEAR(k.imag(), -std::sqrt(0.5), 1e-15);
}

TEST(FreeKernel, Symmetric) {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int i = 0; i < 50; ++i) {
    const double x = u(rng), y = u(rng), dt = 0.1 + std::abs(u(rng));
    EXPECT_EQ(free_kernel(x, y, dt), free_kernel(y, x, dt));
  }
}

TEST(FreeKernel, RejectsNonPositiveTime) {
  EXPECT_THROW(free_kernel(0.0, 0.0, 0.0), Error);
  EXPECT_THROW(free_kernel(0.0, 0.0, -1.0), Error);
}

TEST(WindowIntegral, WholeLineIsOne) {
  for (double dt : {0.01, 0.5, 3.0}) {
    EXPECT_LT(std::abs(window_integral(Interval::real_line(), 0.4, dt) - 1.0), 1e-13);
  }
}

TEST(WindowIntegral, HalfLineIsHalf) {
  EXPECT_LT(std::abs(window_integral({0.4, kInf}, 0.4, 0.7) - 0.5), 1e-13);
  EXPECT_LT(std::abs(window_integral({-kInf, 0.4}, 0.4, 0.7) - 0.5), 1e-13);
}

TEST(WindowIntegral, DegenerateWindowIsZero) {
  EXPECT_EQ(window_integral({0.3, 0.3}, 0.0, 1.0), Complex(0.0));
}

TEST(WindowIntegral, GaugeBackendAgreesWithClosedForm) {
  const Interval windows[] = {{-0.5, 1.0}, {0.2, 3.0}, {-kInf, 0.8}, {-1.0, kInf}, Interval::real_line()};
  WindowOptions gauge_opts;
  gauge_opts.backend = WindowBackend::Gauge;
  gauge_opts.tol = 1e-10;
  for (const Interval& w : windows) {
    const Complex a = window_integral(w, 0.1, 0.6);
    const Complex g = window_integral(w, 0.1, 0.6, gauge_opts);
    EXPECT_LT(std::abs(a - g), 1e-8) << w.lo << " " << w.hi;
  }
}

TEST(TimeGrid, ValidatesOrdering) {
  EXPECT_NO_THROW(TimeGrid::uniform(1.0, 4).validate());
  EXPECT_THROW((TimeGrid{1.0, {0.5, 0.5}}.validate()), Error);
  EXPECT_THROW((TimeGrid{1.0, {1.0}}.validate()), Error);
  EXPECT_THROW((TimeGrid{1.0, {-0.1}}.validate()), Error);
  const auto steps = TimeGrid{1.0, {0.25, 0.75}}.steps();
  ASSERT_EQ(steps.size(), 3u);
  EXPECT_DOUBLE_EQ(steps[1], 0.5);
}

TEST(TransitionProbability, AllWindowsLineCollapsesToKernel) {
  for (int n : {2, 3}) {
    Cylinder c{TimeGrid::uniform(1.3, n), std::vector<Interval>(n - 1, Interval::real_line())};
    const ComplexProbability p = transition_probability(c, {0.2, -0.4});
    EXPECT_LT(std::abs(p.value - free_kernel(-0.4, 0.2, 1.3)), 1e-8) << n;
  }
}

TEST(TransitionProbability, OneInteriorTimeAtOrigin) {
  Cylinder c{TimeGrid::uniform(1.0, 2), {Interval::real_line()}};
  const ComplexProbability p = transition_probability(c, {0.0, 0.0});
  const double v = 1.0 / std::sqrt(2.0 * kPi) * std::sqrt(0.5);
  EXPECT_LT(std::abs(p.value - Complex(v, -v)), 1e-9);
}

TEST(TransitionProbability, FixedEndBoundedWindowOracle) {
  Cylinder c{TimeGrid{1.0, {0.4}}, {{-0.5, 1.0}}};
  const ComplexProbability p = transition_probability(c, {0.0, 0.3});
  EXPECT_LT(std::abs(p.value - Complex(0.19698754981015255917, -0.40034893969342306474)), 1e-10);
}

TEST(TransitionProbability, FreeEndBoundedWindowsOracle) {
  Cylinder c{TimeGrid{1.0, {0.4}}, {{-0.5, 1.0}}};
  Endpoints e;
  e.end_window = {0.0, 2.0};
  const ComplexProbability p = transition_probability(c, e);
  EXPECT_LT(std::abs(p.value - Complex(0.56043559026113473241, -0.34006254352011044674)), 1e-9);
}

TEST(TransitionProbability, ComplexValueExceedingOne) {
  Cylinder c{TimeGrid{0.02, {0.01}}, {{-0.3, 0.3}}};
  const ComplexProbability p = transition_probability(c, {0.0, 0.0});
  const Complex oracle(2.4623259989160110503, -2.2372841906385606245);
  EXPECT_LT(std::abs(p.value - oracle), 1e-9);
  EXPECT_GT(std::abs(p.value), 1.0);
  EXPECT_GT(std::abs(p.value.imag()), 0.1);
}

TEST(TransitionProbability, FreeEndNormalization) {
  for (int n : {1, 2, 3}) {
    Cylinder c{TimeGrid::uniform(1.0, n), std::vector<Interval>(n - 1, Interval::real_line())};
    const ComplexProbability p = transition_probability(c, Endpoints{});
    EXPECT_LT(std::abs(p.value - 1.0), 1e-6) << n;
  }
}

TEST(TransitionProbability, WindowSplittingIsAdditive) {
  Cylinder whole{TimeGrid{1.0, {0.3, 0.7}}, {{-1.0, 1.5}, {-0.5, 2.0}}};
  Cylinder left = whole, right = whole;
  left.windows[0] = {-1.0, 0.2};
  right.windows[0] = {0.2, 1.5};
  const Endpoints e{0.1, 0.4};
  const Complex sum = transition_probability(left, e).value + transition_probability(right, e).value;
  EXPECT_LT(std::abs(transition_probability(whole, e).value - sum), 1e-8);
}

TEST(TransitionProbability, ExtraLineTimeLeavesValueUnchanged) {
  Cylinder coarse{TimeGrid{1.0, {0.5}}, {{-0.4, 0.9}}};
  Cylinder fine{TimeGrid{1.0, {0.25, 0.5}}, {Interval::real_line(), {-0.4, 0.9}}};
  const Endpoints e{0.0, 0.2};
  EXPECT_LT(std::abs(transition_probability(coarse, e).value - transition_probability(fine, e).value), 1e-6);
}

TEST(TransitionProbability, GaugeInnermostMatchesClosedForm) {
  Cylinder c{TimeGrid{1.0, {0.4}}, {{-0.5, 1.0}}};
  TransitionOptions opts;
  opts.innermost = WindowBackend::Gauge;
  const ComplexProbability p = transition_probability(c, {0.0, 0.3}, opts);
  EXPECT_LT(std::abs(p.value - Complex(0.19698754981015255917, -0.40034893969342306474)), 1e-8);
}

TEST(BandlimitedWeight, ZeroTimeIsKronecker) {
  EXPECT_EQ(bandlimited_weight(0.0, 0.0, 0.1), Complex(1.0));
  EXPECT_EQ(bandlimited_weight(0.3, 0.0, 0.1), Complex(0.0));
}

TEST(BandlimitedWeight, NegativeTimeConjugates) {
  const Complex w = bandlimited_weight(0.7, 0.3, 0.125);
  EXPECT_LT(std::abs(bandlimited_weight(0.7, -0.3, 0.125) - std::conj(w)), 1e-15);
}

TEST(BandlimitedWeight, MatchesDirectQuadrature) {
  // (h / 2 pi) * integral over |k| < pi/h of exp(-i k^2 dt / 2 + i k offset).
  const double h = 0.25, dt = 0.2;
  for (double offset : {0.0, 0.25, 1.5, 7.0}) {
    const double band = kPi / h;
    const int n = 200000;
    Complex s{0.0, 0.0};
    for (int j = 0; j < n; ++j) {
      const double k = -band + (j + 0.5) * (2.0 * band / n);
      s += std::polar(1.0, -0.5 * k * k * dt + k * offset);
    }
    s *= (2.0 * band / n) * h / (2.0 * kPi);
    EXPECT_LT(std::abs(bandlimited_weight(offset, dt, h) - s), 1e-8) << offset;
  }
}

}  // namespace
}  // namespace gaugeprop::fresnel
