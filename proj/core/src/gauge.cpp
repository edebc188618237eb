#include "gaugeprop/gauge.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>
#include <utility>

#include "gaugeprop/error.hpp"

namespace gaugeprop::gauge {
namespace {

constexpr int kMaxRombergColumns = 8;

bool finite(Complex v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); }

void check_domain(const Interval& d) {
  if (std::isnan(d.lo) || std::isnan(d.hi) || d.lo == kInf || d.hi == -kInf || d.lo > d.hi) {
    std::ostringstream os;
    os << "invalid domain (" << d.lo << ", " << d.hi << "]";
    throw Error(ErrorCode::InvalidArgument, os.str());
  }
}

[[noreturn]] void throw_non_finite(double x) {
  std::ostringstream os;
  os << "integrand is not finite at x = " << x;
  throw Error(ErrorCode::NonFiniteValue, os.str());
}

// Leaf search on a bounded cell. `prefer_left` selects which vertex is tried
// first as the tag.
void bisect(const Gauge1D& g, double a, double b, bool prefer_left, int depth,
            const DivisionOptions& opts, std::vector<TaggedCell>& out) {
  const double first = prefer_left ? a : b;
  const double second = prefer_left ? b : a;
  const double len = b - a;
  if (len < g.delta(first)) {
    out.push_back({{a, b}, first});
    return;
  }
  if (len < g.delta(second)) {
    out.push_back({{a, b}, second});
    return;
  }
  const double m = 0.5 * (a + b);
  if (depth >= opts.max_depth || !(a < m && m < b)) {
    std::ostringstream os;
    os << "bisection depth exceeded on cell (" << a << ", " << b << "]";
    throw Error(ErrorCode::RefinementOverflow, os.str());
  }
  if (out.size() >= opts.max_cells) {
    throw Error(ErrorCode::RefinementOverflow, "division exceeds the configured cell budget");
  }
  bisect(g, a, m, true, depth + 1, opts, out);
  bisect(g, m, b, false, depth + 1, opts, out);
}

struct Romberg {
  Complex value{0.0, 0.0};
  double error = 0.0;
  int levels = 0;
  bool converged = false;
};

// Successive sums over the divisions produced by the constant gauges
// (b - a) / 2^k, accumulated incrementally, with Richardson extrapolation.
Romberg romberg(const PointIntegrand& f, double a, double b, double tol, int max_levels,
                int min_levels, std::size_t max_evals, std::size_t& evals) {
  auto eval = [&](double x) {
    const Complex v = f(x);
    if (!finite(v)) throw_non_finite(x);
    ++evals;
    return v;
  };
  const double len = b - a;
  std::array<Complex, kMaxRombergColumns + 1> prev{};
  std::array<Complex, kMaxRombergColumns + 1> cur{};
  Complex sum = 0.5 * len * (eval(a) + eval(b));
  prev[0] = sum;
  Romberg r;
  r.value = sum;
  r.error = kInf;
  for (int k = 1; k <= max_levels; ++k) {
    const std::size_t fresh = std::size_t{1} << (k - 1);
    if (evals + fresh > max_evals) break;
    const double step = len / static_cast<double>(std::size_t{1} << k);
    Complex s{0.0, 0.0};
    for (std::size_t j = 0; j < fresh; ++j) {
      s += eval(a + static_cast<double>(2 * j + 1) * step);
    }
    sum = 0.5 * sum + step * s;
    cur[0] = sum;
    const int cols = std::min(k, kMaxRombergColumns);
    double factor = 1.0;
    for (int m = 1; m <= cols; ++m) {
      factor *= 4.0;
      cur[m] = cur[m - 1] + (cur[m - 1] - prev[m - 1]) / (factor - 1.0);
    }
    const Complex next = cur[cols];
    r.error = std::abs(next - r.value);
    r.value = next;
    r.levels = k;
    std::swap(prev, cur);
    if (k >= min_levels && r.error < tol) {
      r.converged = true;
      break;
    }
  }
  return r;
}

IntegralResult integrate_bounded(const PointIntegrand& f, Interval d, const IntegrationOptions& o) {
  IntegralResult res;
  const Romberg r = romberg(f, d.lo, d.hi, o.tol, o.max_refinements, o.min_refinements,
                            o.max_evaluations, res.evaluations);
  res.value = r.value;
  res.error_estimate = r.error;
  res.refinements_used = r.levels;
  res.converged = r.converged;
  return res;
}

// Unbounded domain without a tail strategy: halve both the finite gauge and
// the unbounded-end parameters each round and re-sum over a fresh division.
IntegralResult integrate_expanding(const PointIntegrand& f, Interval d, const IntegrationOptions& o) {
  IntegralResult res;
  res.converged = false;
  res.error_estimate = kInf;
  double delta = 0.5;
  double delta_inf = 0.5;
  DivisionOptions dopts;
  dopts.max_cells = o.max_evaluations;
  bool have_prev = false;
  for (int k = 0; k <= o.max_refinements; ++k) {
    const Gauge1D g = Gauge1D::constant(delta, delta_inf);
    TaggedDivision div;
    try {
      div = cousin_division(g, d, dopts);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::RefinementOverflow) throw;
      break;
    }
    if (res.evaluations + div.cells.size() > o.max_evaluations) break;
    res.evaluations += div.cells.size();
    const Complex v = riemann_sum_point(f, div);
    if (have_prev) {
      res.error_estimate = std::abs(v - res.value);
      res.refinements_used = k;
    }
    res.value = v;
    if (have_prev && k >= 2 && res.error_estimate < o.tol) {
      res.converged = true;
      break;
    }
    have_prev = true;
    delta *= 0.5;
    delta_inf *= 0.5;
  }
  return res;
}

struct TailSum {
  Complex value{0.0, 0.0};
  double error = 0.0;
  bool converged = true;
  int levels = 0;
};

// One tail starting at `start`, running outward in direction `dir` (+1 or -1).
TailSum integrate_tail(const PointIntegrand& f, const OscillatoryTail& t, double start, int dir,
                       double tol, const IntegrationOptions& o, std::size_t& evals) {
  const int pieces = std::max(t.pieces, 4);
  const int depth = std::clamp(t.averaging_depth, 1, pieces - 2);
  const double r0 = std::abs(start - t.center);
  const double period = std::numbers::pi / t.alpha;
  const double piece_tol = tol / (4.0 * pieces);
  std::vector<Complex> partial(static_cast<std::size_t>(pieces));
  TailSum out;
  Complex running{0.0, 0.0};
  double prev_r = r0;
  for (int j = 0; j < pieces; ++j) {
    const double next_r = std::sqrt(r0 * r0 + (j + 1) * period);
    const double lo = dir > 0 ? t.center + prev_r : t.center - next_r;
    const double hi = dir > 0 ? t.center + next_r : t.center - prev_r;
    const Romberg r = romberg(f, lo, hi, piece_tol, o.max_refinements, 3, o.max_evaluations, evals);
    out.converged = out.converged && r.converged;
    out.error += r.error;
    out.levels = std::max(out.levels, r.levels);
    running += r.value;
    partial[static_cast<std::size_t>(j)] = running;
    prev_r = next_r;
  }
  // Repeated averaging of the last depth+1 partial sums, evaluated at the
  // final two positions to estimate the remaining error.
  auto averaged = [&](int end) {
    std::vector<Complex> w(partial.begin() + (end - depth), partial.begin() + end + 1);
    for (int level = 0; level < depth; ++level) {
      for (std::size_t i = 0; i + 1 < w.size() - static_cast<std::size_t>(level); ++i) {
        w[i] = 0.5 * (w[i] + w[i + 1]);
      }
    }
    return w[0];
  };
  const Complex last = averaged(pieces - 1);
  const Complex before = averaged(pieces - 2);
  out.value = last;
  out.error += std::abs(last - before);
  return out;
}

IntegralResult integrate_oscillatory(const PointIntegrand& f, Interval d, const IntegrationOptions& o) {
  OscillatoryTail t = *o.tail;
  if (!(t.alpha > 0.0) || !std::isfinite(t.center)) {
    throw Error(ErrorCode::InvalidArgument, "oscillatory tail needs alpha > 0 and a finite center");
  }
  if (!(t.cutoff > 0.0)) t.cutoff = std::sqrt(8.0 * std::numbers::pi / t.alpha);

  const double left = d.lo == -kInf ? std::min(t.center - t.cutoff, d.hi) : d.lo;
  const double right = d.hi == kInf ? std::max(t.center + t.cutoff, left) : d.hi;

  IntegralResult res;
  res.error_estimate = 0.0;
  const double part_tol = o.tol / 4.0;
  if (left < right) {
    const Romberg core = romberg(f, left, right, part_tol, o.max_refinements, o.min_refinements,
                                 o.max_evaluations, res.evaluations);
    res.value += core.value;
    res.error_estimate += core.error;
    res.refinements_used = core.levels;
    res.converged = core.converged;
  }
  if (d.hi == kInf) {
    const TailSum tail = integrate_tail(f, t, right, +1, part_tol, o, res.evaluations);
    res.value += tail.value;
    res.error_estimate += tail.error;
    res.refinements_used = std::max(res.refinements_used, tail.levels);
    res.converged = res.converged && tail.converged;
  }
  if (d.lo == -kInf) {
    const TailSum tail = integrate_tail(f, t, left, -1, part_tol, o, res.evaluations);
    res.value += tail.value;
    res.error_estimate += tail.error;
    res.refinements_used = std::max(res.refinements_used, tail.levels);
    res.converged = res.converged && tail.converged;
  }
  res.converged = res.converged && res.error_estimate < o.tol;
  return res;
}

}  // namespace

Gauge1D Gauge1D::constant(double d, double d_inf) {
  Gauge1D g;
  g.delta = [d](double) { return d; };
  g.delta_neg_inf = d_inf;
  g.delta_pos_inf = d_inf;
  return g;
}

void validate(const Gauge1D& g) {
  if (!g.delta) throw Error(ErrorCode::InvalidArgument, "gauge has no delta function");
  if (!(g.delta_neg_inf > 0.0) || !(g.delta_pos_inf > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "gauge parameters at infinity must be positive");
  }
}

bool tag_is_vertex(const TaggedCell& tc) {
  const Interval& c = tc.cell;
  if (c.lo == -kInf && c.hi == kInf) return tc.tag == -kInf || tc.tag == kInf;
  if (c.lo == -kInf) return tc.tag == -kInf;
  if (c.hi == kInf) return tc.tag == kInf;
  return tc.tag == c.lo || tc.tag == c.hi;
}

bool is_delta_fine(const TaggedCell& tc, const Gauge1D& g) {
  const Interval& c = tc.cell;
  if (c.lo == -kInf && c.hi == kInf) return false;
  if (c.lo == -kInf) return c.hi < -1.0 / g.delta_neg_inf;
  if (c.hi == kInf) return c.lo > 1.0 / g.delta_pos_inf;
  return c.hi - c.lo < g.delta(tc.tag);
}

TaggedDivision cousin_division(const Gauge1D& g, Interval domain, const DivisionOptions& opts) {
  validate(g);
  check_domain(domain);
  TaggedDivision div;
  if (domain.empty()) return div;

  double a = domain.lo;
  double b = domain.hi;
  bool right_tail = false;
  if (domain.lo == -kInf) {
    if (domain.hi < -1.0 / g.delta_neg_inf) {
      div.cells.push_back({domain, -kInf});
      return div;
    }
    a = -2.0 / g.delta_neg_inf;
    div.cells.push_back({{-kInf, a}, -kInf});
  }
  if (domain.hi == kInf) {
    if (a > 1.0 / g.delta_pos_inf) {
      div.cells.push_back({{a, kInf}, kInf});
      return div;
    }
    b = 2.0 / g.delta_pos_inf;
    right_tail = true;
  }
  bisect(g, a, b, true, 0, opts, div.cells);
  if (right_tail) div.cells.push_back({{b, kInf}, kInf});
  return div;
}

Complex riemann_sum(const CellIntegrand& h, const TaggedDivision& d) {
  Complex sum{0.0, 0.0};
  for (const TaggedCell& tc : d.cells) {
    if (std::isinf(tc.tag)) continue;
    const Complex v = h(tc.tag, tc.cell);
    if (!finite(v)) throw_non_finite(tc.tag);
    sum += v;
  }
  return sum;
}

Complex riemann_sum_point(const PointIntegrand& f, const TaggedDivision& d) {
  return riemann_sum([&f](double x, const Interval& c) { return f(x) * c.length(); }, d);
}

IntegralResult integrate_1d(const PointIntegrand& f, Interval domain, const IntegrationOptions& opts) {
  if (!(opts.tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "tolerance must be positive");
  if (opts.max_refinements < 1) {
    throw Error(ErrorCode::InvalidArgument, "max_refinements must be at least 1");
  }
  check_domain(domain);
  if (domain.empty()) return {};
  if (domain.bounded()) return integrate_bounded(f, domain, opts);
  if (opts.tail) return integrate_oscillatory(f, domain, opts);
  return integrate_expanding(f, domain, opts);
}

IntegralResult integrate_1d_checked(const PointIntegrand& f, Interval domain,
                                    const IntegrationOptions& opts) {
  IntegralResult r = integrate_1d(f, domain, opts);
  if (!r.converged) {
    std::ostringstream os;
    os << "integral did not reach tol " << opts.tol << " (estimate " << r.error_estimate << " after "
       << r.refinements_used << " refinements)";
    throw Error(ErrorCode::NoConvergence, os.str());
  }
  return r;
}

}  // namespace gaugeprop::gauge
