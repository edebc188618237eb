#include <gtest/gtest.h>

#include <cmath>

#include "gaugeprop/error.hpp"
#include "gaugeprop/gauge.hpp"
#include "gaugeprop/harness.hpp"

namespace gaugeprop::harness {
namespace {

WaveState grid(std::size_t n = 512) { return WaveState::zeros(-12.0, 12.0, n); }

TEST(Bump, ProfileShape) {
  EXPECT_DOUBLE_EQ(bump_profile(0.0), 1.0);
  EXPECT_EQ(bump_profile(1.0), 0.0);
  EXPECT_EQ(bump_profile(-1.5), 0.0);
  EXPECT_GT(bump_profile(0.99), 0.0);
}

TEST(Bump, IntegralMatchesOracle) {
  // Oracle for the unit-maximum profile: e * 0.44399381616807943782.
  EXPECT_NEAR(bump_profile_integral(), std::exp(1.0) * 0.44399381616807943782, 1e-14);
  const auto r = gauge::integrate_1d([](double u) { return Complex(bump_profile(u)); }, {-1.0, 1.0});
  EXPECT_NEAR(r.value.real(), bump_profile_integral(), 1e-8);
}

TEST(Bump, RadiusMustExceedEightSpacings) {
  const WaveState g = grid();
  EXPECT_THROW(BumpFunction::on_grid(g, 0.0, 8 * g.spacing()), Error);
  EXPECT_NO_THROW(BumpFunction::on_grid(g, 0.0, 9 * g.spacing()));
}

TEST(Bump, SupportMustStayInside) {
  try {
    BumpFunction::on_grid(grid(), 11.5, 1.0);
    FAIL() << "expected SupportOverflow";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SupportOverflow);
  }
}

TEST(PairWithTest, ConstantGivesBumpIntegral) {
  WaveState s = grid(1024);
  for (auto& v : s.samples) v = 1.0;
  for (double radius : {0.5, 1.3}) {
    const auto phi = BumpFunction::on_grid(s, 0.2, radius);
    // Grid quadrature of the bump with about 20 spacings per radius.
    EXPECT_NEAR(pair_with_test(s, phi).real(), radius * bump_profile_integral(), 1e-6) << radius;
  }
}

TEST(PairWithTest, Linear) {
  const WaveState a = WaveState::sample(-12.0, 12.0, 512, [](double x) { return gaussian_packet(x, 1.0, 0.5, 1.0); });
  const WaveState b = WaveState::sample(-12.0, 12.0, 512, [](double x) { return Complex(std::cos(x), x); });
  const Complex alpha(0.3, -1.2), beta(-2.0, 0.5);
  WaveState c = a;
  for (std::size_t i = 0; i < c.size(); ++i) c.samples[i] = alpha * a.samples[i] + beta * b.samples[i];
  const auto phi = BumpFunction::on_grid(a, -0.4, 1.1);
  const Complex lhs = pair_with_test(c, phi);
  const Complex rhs = alpha * pair_with_test(a, phi) + beta * pair_with_test(b, phi);
  EXPECT_LT(std::abs(lhs - rhs), 1e-14);
}

TEST(PairWithTest, VanishesWhereStateIsZero) {
  WaveState s = grid();
  for (std::size_t i = 0; i < s.size(); ++i) s.samples[i] = s.x(i) < 0.0 ? 1.0 : 0.0;
  EXPECT_EQ(pair_with_test(s, BumpFunction::on_grid(s, 5.0, 1.0)), Complex(0.0));
}

TEST(LocalGlobalAgreement, FreeCaseIsIdentical) {
  const WaveState f = WaveState::sample(-12.0, 12.0, 512, [](double x) { return gaussian_packet(x, 0.8, 0.0, 0.5); });
  const std::vector<BumpFunction> bumps = {BumpFunction::on_grid(f, -1.0, 0.7), BumpFunction::on_grid(f, 1.0, 0.7)};
  AgreementConfig cfg;
  cfg.slices = 8;
  cfg.reference_slices = 64;
  EXPECT_LT(local_global_agreement(f, PotentialSpec::zero(), 0.2, bumps, cfg).discrepancy, 1e-10);
}

TEST(LocalGlobalAgreement, ZeroTimeIsExact) {
  const WaveState f = WaveState::sample(-12.0, 12.0, 512, [](double x) { return gaussian_packet(x, 0.8, 0.0, 0.5); });
  const std::vector<BumpFunction> bumps = {BumpFunction::on_grid(f, 0.0, 0.7)};
  EXPECT_EQ(local_global_agreement(f, PotentialSpec::harmonic(), 0.0, bumps, {}).discrepancy, 0.0);
}

TEST(LocalGlobalAgreement, HarmonicWithinFirstOrderBudget) {
  const WaveState f = WaveState::sample(-12.0, 12.0, 512, [](double x) { return gaussian_packet(x, 0.8, 0.25, 0.5); });
  const std::vector<BumpFunction> bumps = {BumpFunction::on_grid(f, -0.75, 0.6), BumpFunction::on_grid(f, 0.75, 0.6)};
  AgreementConfig a, b;
  a.slices = 32;
  b.slices = 64;
  a.reference_slices = b.reference_slices = 2048;
  const double da = local_global_agreement(f, PotentialSpec::harmonic(), 0.1, bumps, a).discrepancy;
  const double db = local_global_agreement(f, PotentialSpec::harmonic(), 0.1, bumps, b).discrepancy;
  // Constant measured at n = 32; halving the slice length should respect C / n.
  const double c = da * 32.0;
  EXPECT_LT(db, 1.2 * c / 64.0);
  EXPECT_LT(db, da);
}

TEST(ReferenceSolution, FreeGaussianAtZeroIsInitial) {
  const PacketParams p{0.7, 0.4, -1.0};
  for (double x : {-1.0, 0.0, 0.9}) {
    EXPECT_LT(std::abs(reference_solution(ReferenceKind::FreeGaussian, p, x, 0.0) - gaussian_packet(x, 0.7, 0.4, -1.0)),
              1e-15);
  }
}

TEST(ReferenceSolution, FreeGaussianOracle) {
  const Complex v = reference_solution(ReferenceKind::FreeGaussian, {1.0, 0.0, 0.0}, 0.0, 1.0);
  EXPECT_LT(std::abs(v - Complex(0.58136849224553800429, -0.13724248414650632619)), 1e-14);
  EXPECT_NEAR(std::norm(v), 0.35682482323055422291, 1e-14);
}

TEST(ReferenceSolution, GroundStateModulusIsStationary) {
  for (double t : {0.0, 0.4, 3.0}) {
    EXPECT_NEAR(std::abs(reference_solution(ReferenceKind::HarmonicGround, {}, 0.8, t)),
                std::abs(reference_solution(ReferenceKind::HarmonicGround, {}, 0.8, 0.0)), 1e-15);
  }
}

TEST(ConvergenceOrder, HarmonicSlopeNearOne) {
  const WaveState f = WaveState::sample(-12.0, 12.0, 256, [](double x) { return gaussian_packet(x, 0.8, 0.5, 0.0); });
  const ConvergenceResult r = convergence_order(f, PotentialSpec::harmonic(), 1.0, {8, 16, 32, 64});
  EXPECT_FALSE(r.degenerate);
  EXPECT_GT(r.slope, 0.8);
  EXPECT_LT(r.slope, 1.2);
  for (std::size_t i = 1; i < r.errors.size(); ++i) {
    EXPECT_NEAR(r.errors[i] / r.errors[i - 1], 0.5, 0.15);
  }
}

TEST(ConvergenceOrder, FreeCaseIsDegenerate) {
  const WaveState f = WaveState::sample(-12.0, 12.0, 256, [](double x) { return gaussian_packet(x, 0.8, 0.0, 0.0); });
  const ConvergenceResult r = convergence_order(f, PotentialSpec::zero(), 1.0, {8, 16, 32});
  EXPECT_TRUE(r.degenerate);
  EXPECT_FALSE(r.diagnostic.empty());
}

TEST(GreenLimit, ZeroTimeIsZero) {
  const GreenResult r = green_limit_check(WaveState::zeros(-4.0, 4.0, 1024), {0.05, 0.0, 0.0}, {0.0},
                                          PotentialSpec::zero());
  ASSERT_EQ(r.rows.size(), 1u);
  EXPECT_EQ(r.rows[0].deviation, 0.0);
}

TEST(GreenLimit, NarrowPacketMatchesClosedForm) {
  // Oracle: sqrt(2 - 2 Re (1 + i t / (4 sigma^2))^{-1/2}) at sigma = 0.05.
  const GreenResult r = green_limit_check(WaveState::zeros(-8.0, 8.0, 4096), {0.05, 0.0, 0.0},
                                          {1e-1, 1e-2, 1e-3}, PotentialSpec::zero());
  ASSERT_EQ(r.rows.size(), 3u);
  EXPECT_NEAR(r.rows[0].deviation, 1.2378325049034991164, 1e-10);
  EXPECT_NEAR(r.rows[1].deviation, 0.66800151644286159708, 1e-10);
  EXPECT_NEAR(r.rows[2].deviation, 0.08628881607243609869, 1e-10);
  EXPECT_TRUE(r.monotone);
}

TEST(GreenLimit, SmoothPacketHalvingRatio) {
  const GreenResult r = green_limit_check(WaveState::zeros(-8.0, 8.0, 512), {1.0, 0.0, 0.0},
                                          {0.08, 0.04, 0.02, 0.01}, PotentialSpec::harmonic(0.5));
  EXPECT_TRUE(r.monotone);
  for (std::size_t i = 1; i < r.rows.size(); ++i) {
    const double ratio = r.rows[i].deviation / r.rows[i - 1].deviation;
    EXPECT_GE(ratio, 0.3);
    EXPECT_LE(ratio, 0.7);
  }
}

TEST(Suites, NamesInCriterionOrder) {
  const auto& names = suite_names();
  ASSERT_EQ(names.size(), 10u);
  EXPECT_EQ(names.front(), "fresnel");
  EXPECT_EQ(names.back(), "escape_time");
  EXPECT_THROW(run_suite("nope"), Error);
}

TEST(Suites, ParallelRunKeepsOrder) {
  const std::vector<std::string> names = {"escape_time", "fresnel", "chapman_kolmogorov", "unitarity"};
  const auto results = run_suites(names, 3);
  ASSERT_EQ(results.size(), names.size());
  for (std::size_t i = 0; i < names.size(); ++i) {
    EXPECT_EQ(results[i].name, names[i]);
    EXPECT_TRUE(results[i].passed) << names[i] << ": " << results[i].diagnostic;
  }
}

}  // namespace
}  // namespace gaugeprop::harness
