#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "gaugeprop/error.hpp"
#include "gaugeprop/gauge.hpp"

namespace gaugeprop::gauge {
namespace {

const double kSqrtPi = std::sqrt(std::numbers::pi);

bool covers_exactly(const TaggedDivision& d, Interval domain) {
  if (d.cells.empty() || d.cells.front().cell.lo != domain.lo || d.cells.back().cell.hi != domain.hi) {
    return false;
  }
  for (std::size_t i = 1; i < d.cells.size(); ++i) {
    if (d.cells[i - 1].cell.hi != d.cells[i].cell.lo) return false;
  }
  return true;
}

TEST(IsDeltaFine, BoundedCells) {
  const Gauge1D g = Gauge1D::constant(0.3, 1.0);
  EXPECT_TRUE(is_delta_fine({{0.0, 0.2}, 0.0}, g));
  EXPECT_FALSE(is_delta_fine({{0.0, 0.5}, 0.0}, g));
}

TEST(IsDeltaFine, UnboundedCellNeedsFarBoundary) {
  const Gauge1D g = Gauge1D::constant(0.3, 0.1);
  EXPECT_TRUE(is_delta_fine({{12.0, kInf}, kInf}, g));
  EXPECT_FALSE(is_delta_fine({{8.0, kInf}, kInf}, g));
  EXPECT_TRUE(is_delta_fine({{-kInf, -12.0}, -kInf}, g));
}

TEST(TagIsVertex, EndpointsOnly) {
  EXPECT_TRUE(tag_is_vertex({{0.0, 1.0}, 0.0}));
  EXPECT_TRUE(tag_is_vertex({{0.0, 1.0}, 1.0}));
  EXPECT_FALSE(tag_is_vertex({{0.0, 1.0}, 0.5}));
  EXPECT_TRUE(tag_is_vertex({{3.0, kInf}, kInf}));
}

TEST(CousinDivision, ConstantGaugeOnUnitInterval) {
  const TaggedDivision d = cousin_division(Gauge1D::constant(0.3, 1.0), {0.0, 1.0});
  ASSERT_EQ(d.cells.size(), 4u);
  for (const auto& c : d.cells) {
    EXPECT_DOUBLE_EQ(c.cell.length(), 0.25);
    EXPECT_TRUE(is_delta_fine(c, Gauge1D::constant(0.3, 1.0)));
  }
}

TEST(CousinDivision, CoarseGaugeGivesSingleCell) {
  const TaggedDivision d = cousin_division(Gauge1D::constant(2.0, 1.0), {0.0, 1.0});
  ASSERT_EQ(d.cells.size(), 1u);
  EXPECT_TRUE(tag_is_vertex(d.cells[0]));
}

TEST(CousinDivision, UnboundedEndPushedPastReciprocal) {
  const Gauge1D g = Gauge1D::constant(0.5, 0.1);
  const TaggedDivision d = cousin_division(g, {0.0, kInf});
  ASSERT_FALSE(d.cells.empty());
  const TaggedCell& last = d.cells.back();
  EXPECT_EQ(last.cell.hi, kInf);
  EXPECT_EQ(last.tag, kInf);
  EXPECT_GT(last.cell.lo, 10.0);
  EXPECT_TRUE(covers_exactly(d, {0.0, kInf}));
}

TEST(CousinDivision, RandomPiecewiseGaugesAreFineAndCover) {
  std::mt19937_64 rng(12345);
  std::uniform_real_distribution<double> log_delta(std::log(1e-3), 0.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> breaks = {-2.0, -0.5, 0.7, 1.9};
    std::vector<double> values;
    for (int i = 0; i <= 4; ++i) values.push_back(std::exp(log_delta(rng)));
    Gauge1D g;
    g.delta = [breaks, values](double x) {
      std::size_t i = 0;
      while (i < breaks.size() && x > breaks[i]) ++i;
      return values[i];
    };
    g.delta_neg_inf = 0.05 + unit(rng);
    g.delta_pos_inf = 0.05 + unit(rng);
    const Interval domain = trial % 3 == 0 ? Interval::real_line()
                            : trial % 3 == 1 ? Interval{-3.0, 2.5}
                                             : Interval{-1.0, kInf};
    const TaggedDivision d = cousin_division(g, domain);
    EXPECT_TRUE(covers_exactly(d, domain)) << trial;
    for (const auto& c : d.cells) {
      ASSERT_TRUE(tag_is_vertex(c));
      ASSERT_TRUE(is_delta_fine(c, g)) << c.cell.lo << " " << c.cell.hi;
    }
  }
}

TEST(CousinDivision, RejectsNonPositiveInfinityParameters) {
  EXPECT_THROW(cousin_division(Gauge1D::constant(0.1, 0.0), Interval::real_line()), Error);
}

TEST(CousinDivision, VanishingGaugeOverflows) {
  Gauge1D g = Gauge1D::constant(1.0, 1.0);
  g.delta = [](double x) { return std::abs(x - 0.3) + 1e-300; };
  DivisionOptions opts;
  opts.max_depth = 20;
  try {
    cousin_division(g, {0.0, 1.0}, opts);
    FAIL() << "expected RefinementOverflow";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::RefinementOverflow);
  }
}

TEST(RiemannSum, ConstantOneTelescopes) {
  const TaggedDivision d = cousin_division(Gauge1D::constant(0.07, 1.0), {0.0, 1.0});
  EXPECT_NEAR(riemann_sum_point([](double) { return Complex(1.0); }, d).real(), 1.0, 1e-15);
}

TEST(RiemannSum, LeftTagsOnFourCells) {
  TaggedDivision d;
  for (int i = 0; i < 4; ++i) d.cells.push_back({{0.25 * i, 0.25 * (i + 1)}, 0.25 * i});
  EXPECT_DOUBLE_EQ(riemann_sum_point([](double x) { return Complex(x); }, d).real(), 0.375);
}

TEST(RiemannSum, InfiniteTagContributesNothing) {
  TaggedDivision d;
  d.cells.push_back({{0.0, 1.0}, 1.0});
  d.cells.push_back({{1.0, kInf}, kInf});
  EXPECT_DOUBLE_EQ(riemann_sum_point([](double) { return Complex(2.0); }, d).real(), 2.0);
  EXPECT_DOUBLE_EQ(riemann_sum([](double, const Interval& c) { return Complex(c.length()); }, d).real(), 1.0);
}

TEST(Integrate1D, Linear) {
  const IntegralResult r = integrate_1d([](double x) { return Complex(x); }, {0.0, 1.0});
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.value.real(), 0.5, kDefaultTolBounded);
}

TEST(Integrate1D, GaussianOverLine) {
  const IntegralResult r = integrate_1d([](double x) { return Complex(std::exp(-x * x)); },
                                        Interval::real_line());
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.value.real(), kSqrtPi, 1e-7);
}

TEST(Integrate1D, FresnelWithTail) {
  IntegrationOptions opts;
  opts.tol = 1e-10;
  opts.tail = OscillatoryTail{0.0, 0.5, 0.0};
  const IntegralResult r = integrate_1d([](double x) { return std::polar(1.0, 0.5 * x * x); },
                                        Interval::real_line(), opts);
  EXPECT_TRUE(r.converged);
  // Oracle: 1.7724538509055160273 (1 + i).
  EXPECT_LT(std::abs(r.value - Complex(1.7724538509055160273, 1.7724538509055160273)), 1e-9);
}

TEST(Integrate1D, ShiftedChirpWithTail) {
  IntegrationOptions opts;
  opts.tol = 1e-9;
  opts.tail = OscillatoryTail{1.5, 2.0, 0.0};
  const IntegralResult r = integrate_1d([](double x) { return std::polar(1.0, 2.0 * (x - 1.5) * (x - 1.5)); },
                                        Interval::real_line(), opts);
  // sqrt(pi / alpha) e^{i pi / 4}
  const Complex exact = std::sqrt(std::numbers::pi / 2.0) * std::polar(1.0, std::numbers::pi / 4);
  EXPECT_LT(std::abs(r.value - exact), 1e-8);
}

TEST(Integrate1D, AgreesWithClosedFormWithinTenTol) {
  const double tol = 1e-9;
  IntegrationOptions opts;
  opts.tol = tol;
  const IntegralResult r = integrate_1d([](double x) { return Complex(std::sin(3.0 * x), std::exp(x)); },
                                        {-0.4, 2.1}, opts);
  const double re = (std::cos(-1.2) - std::cos(6.3)) / 3.0;
  const double im = std::exp(2.1) - std::exp(-0.4);
  EXPECT_LT(std::abs(r.value - Complex(re, im)), 10 * tol);
}

TEST(Integrate1D, Additivity) {
  const double tol = 1e-9;
  IntegrationOptions opts;
  opts.tol = tol;
  auto f = [](double x) { return Complex(std::cos(x * x), x * std::exp(-x)); };
  const Complex whole = integrate_1d(f, {-1.0, 2.0}, opts).value;
  const Complex left = integrate_1d(f, {-1.0, 0.6}, opts).value;
  const Complex right = integrate_1d(f, {0.6, 2.0}, opts).value;
  EXPECT_LT(std::abs(whole - left - right), 2 * tol);
}

TEST(Integrate1D, FirstLevelExtrapolatesGaugeRiemannSums) {
  // Level k sums are trapezoid sums over the division of the constant gauge
  // L / 2^k, i.e. averages of left- and right-tagged Riemann sums.
  auto f = [](double x) { return Complex(std::exp(x), std::sin(x)); };
  const Interval domain{0.0, 1.0};
  auto trapezoid = [&](double delta) {
    TaggedDivision left = cousin_division(Gauge1D::constant(delta, 1.0), domain);
    TaggedDivision right = left;
    for (auto& c : left.cells) c.tag = c.cell.lo;
    for (auto& c : right.cells) c.tag = c.cell.hi;
    return 0.5 * (riemann_sum_point(f, left) + riemann_sum_point(f, right));
  };
  ASSERT_EQ(cousin_division(Gauge1D::constant(0.75, 1.0), domain).cells.size(), 2u);
  IntegrationOptions opts;
  opts.min_refinements = 0;
  opts.max_refinements = 1;
  opts.tol = 1e-300;
  const IntegralResult r = integrate_1d(f, domain, opts);
  const Complex t0 = trapezoid(1.5);
  const Complex t1 = trapezoid(0.75);
  EXPECT_LT(std::abs(r.value - (4.0 * t1 - t0) / 3.0), 1e-15);
  EXPECT_EQ(r.refinements_used, 1);
  EXPECT_FALSE(r.converged);
}

TEST(Integrate1D, CheckedThrowsWithoutConvergence) {
  IntegrationOptions opts;
  opts.max_refinements = 2;
  opts.min_refinements = 0;
  opts.tol = 1e-14;
  try {
    integrate_1d_checked([](double x) { return Complex(std::sqrt(x)); }, {0.0, 1.0}, opts);
    FAIL() << "expected NoConvergence";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NoConvergence);
  }
}

TEST(Integrate1D, NonFiniteIntegrandRaises) {
  try {
    integrate_1d([](double x) { return Complex(1.0 / (x - 0.5)); }, {0.0, 1.0});
    FAIL() << "expected NonFiniteValue";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonFiniteValue);
  }
}

TEST(Integrate1D, EmptyDomainIsZero) {
  const IntegralResult r = integrate_1d([](double) { return Complex(1.0); }, {0.5, 0.5});
  EXPECT_EQ(r.value, Complex(0.0));
  EXPECT_TRUE(r.converged);
}

}  // namespace
}  // namespace gaugeprop::gauge
