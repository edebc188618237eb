#include "gaugeprop/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <thread>

#include "gaugeprop/error.hpp"
#include "gaugeprop/fresnel.hpp"
#include "gaugeprop/gauge.hpp"
#include "gaugeprop/path_sum.hpp"

namespace gaugeprop::harness {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

Row upper_bound_row(std::string label, double value, double limit) {
  return {std::move(label), value, limit, value < limit};
}

Row flag_row(std::string label, bool ok) { return {std::move(label), ok ? 1.0 : 0.0, 1.0, ok}; }

void finish(SuiteResult& r) {
  r.passed = std::all_of(r.rows.begin(), r.rows.end(), [](const Row& row) { return row.passed; });
}

WaveState packet_state(double x_min, double x_max, std::size_t n, const PacketParams& p) {
  return WaveState::sample(x_min, x_max, n, [&](double x) {
    return gaussian_packet(x, p.sigma, p.center, p.momentum);
  });
}

WaveState ground_state(double x_min, double x_max, std::size_t n) {
  return WaveState::sample(x_min, x_max, n, [](double x) {
    return reference_solution(ReferenceKind::HarmonicGround, {}, x, 0.0);
  });
}

SuiteResult suite_fresnel() {
  SuiteResult r;
  r.name = "fresnel";
  r.criterion = 1;
  r.title = "Fresnel normalization of exp(i x^2 / 2) over the real line";
  const auto start = Clock::now();
  gauge::IntegrationOptions io;
  io.tol = 1e-10;
  io.tail = gauge::OscillatoryTail{0.0, 0.5, 0.0};
  const auto res = gauge::integrate_1d([](double x) { return std::polar(1.0, 0.5 * x * x); },
                                       Interval::real_line(), io);
  const double secs = seconds_since(start);
  const Complex target = std::sqrt(std::numbers::pi) * Complex(1.0, 1.0);
  r.metrics["value_re"] = res.value.real();
  r.metrics["value_im"] = res.value.imag();
  r.metrics["error_estimate"] = res.error_estimate;
  r.rows.push_back(upper_bound_row("abs error vs sqrt(pi)(1+i)", std::abs(res.value - target), 1e-3));
  r.rows.push_back(flag_row("runtime under 10 s", secs < 10.0));
  finish(r);
  return r;
}

SuiteResult suite_cousin() {
  SuiteResult r;
  r.name = "cousin";
  r.criterion = 2;
  r.title = "Cousin divisions for 1000 random piecewise-constant gauges";
  const auto start = Clock::now();
  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto log_uniform = [&](double lo, double hi) {
    return lo * std::pow(hi / lo, unit(rng));
  };
  constexpr int kGauges = 1000;
  int fine_ok = 0;
  int cover_ok = 0;
  std::size_t total_cells = 0;
  for (int trial = 0; trial < kGauges; ++trial) {
    const int pieces = 1 + static_cast<int>(unit(rng) * 8);
    std::vector<double> breaks;
    for (int i = 0; i + 1 < pieces; ++i) breaks.push_back(-10.0 + 20.0 * unit(rng));
    std::sort(breaks.begin(), breaks.end());
    std::vector<double> values;
    for (int i = 0; i < pieces; ++i) values.push_back(log_uniform(1e-3, 1.0));
    gauge::Gauge1D g;
    g.delta = [breaks, values](double x) {
      const auto idx = std::upper_bound(breaks.begin(), breaks.end(), x) - breaks.begin();
      return values[static_cast<std::size_t>(idx)];
    };
    g.delta_neg_inf = log_uniform(0.1, 1.0);
    g.delta_pos_inf = log_uniform(0.1, 1.0);
    Interval domain;
    const double a = -12.0 + 24.0 * unit(rng);
    const double b = a + 0.01 + 6.0 * unit(rng);
    switch (trial % 4) {
      case 0: domain = {a, b}; break;
      case 1: domain = {a, kInf}; break;
      case 2: domain = {-kInf, b}; break;
      default: domain = Interval::real_line(); break;
    }
    const gauge::TaggedDivision d = gauge::cousin_division(g, domain);
    total_cells += d.cells.size();
    const bool all_fine = std::all_of(d.cells.begin(), d.cells.end(), [&](const gauge::TaggedCell& c) {
      return gauge::tag_is_vertex(c) && gauge::is_delta_fine(c, g);
    });
    bool covers = !d.cells.empty() && d.cells.front().cell.lo == domain.lo &&
                  d.cells.back().cell.hi == domain.hi;
    for (std::size_t i = 1; covers && i < d.cells.size(); ++i) {
      covers = d.cells[i - 1].cell.hi == d.cells[i].cell.lo && d.cells[i].cell.lo < d.cells[i].cell.hi;
    }
    fine_ok += all_fine ? 1 : 0;
    cover_ok += covers ? 1 : 0;
  }
  const double secs = seconds_since(start);
  r.metrics["total_cells"] = static_cast<double>(total_cells);
  r.rows.push_back({"divisions with every cell delta-fine", static_cast<double>(fine_ok),
                    static_cast<double>(kGauges), fine_ok == kGauges});
  r.rows.push_back({"divisions covering the domain exactly", static_cast<double>(cover_ok),
                    static_cast<double>(kGauges), cover_ok == kGauges});
  r.rows.push_back(flag_row("runtime under 5 s", secs < 5.0));
  finish(r);
  return r;
}

SuiteResult suite_normalization() {
  SuiteResult r;
  r.name = "normalization";
  r.criterion = 3;
  r.title = "Transition probability with free end and all windows R sums to 1";
  for (int n = 1; n <= 3; ++n) {
    fresnel::Cylinder c;
    c.grid = fresnel::TimeGrid::uniform(1.0, n);
    c.windows.assign(c.grid.interior.size(), Interval::real_line());
    fresnel::Endpoints e;
    fresnel::TransitionOptions o;
    o.tol = 1e-9;
    const auto g = fresnel::transition_probability(c, e, o);
    r.rows.push_back(upper_bound_row("|G - 1|, n = " + std::to_string(n), std::abs(g.value - 1.0), 1e-6));
  }
  finish(r);
  return r;
}

SuiteResult suite_chapman_kolmogorov() {
  SuiteResult r;
  r.name = "chapman_kolmogorov";
  r.criterion = 4;
  r.title = "Free-kernel composition at 20 random (x, z, s, t)";
  std::mt19937_64 rng(7919);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const double x = -2.0 + 4.0 * unit(rng);
    const double z = -2.0 + 4.0 * unit(rng);
    const double t = 0.3 + 1.7 * unit(rng);
    const double s = t * (0.1 + 0.8 * unit(rng));
    const double a = 1.0 / (t - s);
    const double b = 1.0 / s;
    gauge::IntegrationOptions io;
    io.tol = 1e-11;
    io.tail = gauge::OscillatoryTail{(a * x + b * z) / (a + b), 0.5 * (a + b), 0.0};
    const auto res = gauge::integrate_1d(
        [&](double y) { return fresnel::free_kernel(x, y, t - s) * fresnel::free_kernel(y, z, s); },
        Interval::real_line(), io);
    worst = std::max(worst, std::abs(res.value - fresnel::free_kernel(x, z, t)));
  }
  r.rows.push_back(upper_bound_row("max |composition - K(x, z, t)|", worst, 1e-8));
  finish(r);
  return r;
}

SuiteResult suite_oracle_equivalence() {
  SuiteResult r;
  r.name = "oracle_equivalence";
  r.criterion = 5;
  r.title = "Path sum equals the quadrature Trotter product on uniform grids";
  const WaveState f = packet_state(-10.0, 10.0, 128, {1.0, 0.3, 0.5});
  const PotentialSpec v = PotentialSpec::harmonic();
  const double t = 0.3;
  std::vector<double> xs;
  for (std::size_t k = 0; k < f.size(); ++k) xs.push_back(f.x(k));
  for (int n = 1; n <= 3; ++n) {
    trotter::PropagatorConfig cfg;
    cfg.backend = trotter::Backend::Quadrature;
    cfg.slices = n;
    const WaveState global = trotter::trotter_propagate(f, v, t, cfg);
    const auto local = path_sum::marginal_expectation(f, v, xs, fresnel::TimeGrid::uniform(t, n));
    double worst = 0.0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
      worst = std::max(worst, std::abs(local[k] - global.samples[k]));
    }
    r.rows.push_back(upper_bound_row("max |local - global|, n = " + std::to_string(n), worst, 1e-12));
  }
  finish(r);
  return r;
}

SuiteResult suite_local_global() {
  SuiteResult r;
  r.name = "local_global";
  r.criterion = 6;
  r.title = "Local and global solutions agree against test bumps (harmonic V, t = 0.1)";
  const WaveState f = packet_state(-12.0, 12.0, 512, {0.8, 0.25, 0.5});
  const PotentialSpec v = PotentialSpec::harmonic();
  std::vector<BumpFunction> bumps;
  for (double c : {-1.5, -0.75, 0.0, 0.75, 1.5}) bumps.push_back(BumpFunction::on_grid(f, c, 0.6));
  std::vector<double> disc;
  for (int n : {16, 32, 64, 128}) {
    AgreementConfig cfg;
    cfg.slices = n;
    disc.push_back(local_global_agreement(f, v, 0.1, bumps, cfg).discrepancy);
  }
  r.series["discrepancy_by_slices"] = disc;
  bool monotone = true;
  for (std::size_t i = 1; i < disc.size(); ++i) monotone = monotone && disc[i] < disc[i - 1];
  r.rows.push_back(upper_bound_row("max pairing discrepancy, n = 128", disc.back(), 1e-3));
  r.rows.push_back(flag_row("discrepancy decreases over n = 16, 32, 64, 128", monotone));
  finish(r);
  return r;
}

SuiteResult suite_unitarity() {
  SuiteResult r;
  r.name = "unitarity";
  r.criterion = 7;
  r.title = "Spectral propagation is unitary and forms a group";
  const WaveState f = packet_state(-16.0, 16.0, 512, {1.0, 1.0, 1.0});
  const PotentialSpec harmonic = PotentialSpec::harmonic();
  const PotentialSpec zero = PotentialSpec::zero();
  const double n0 = l2_norm(f);

  constexpr int kSteps = 1000;
  trotter::Stepper stepper(f, harmonic, 1.0 / kSteps, trotter::Backend::Spectral);
  WaveState s = f;
  double drift = 0.0;
  std::vector<double> norms{n0};
  for (int j = 1; j <= kSteps; ++j) {
    stepper.potential(s.samples);
    stepper.kinetic(s.samples);
    const double nj = l2_norm(s);
    drift = std::max(drift, std::abs(nj / n0 - 1.0));
    if (j % 100 == 0) norms.push_back(nj);
  }
  r.series["norm_every_100_steps"] = norms;
  r.rows.push_back(upper_bound_row("max relative norm drift over 1000 steps", drift, 1e-12));

  trotter::PropagatorConfig cfg;
  cfg.slices = 8;
  const WaveState there = trotter::trotter_propagate(f, zero, 1.0, cfg);
  const WaveState back = trotter::trotter_propagate(there, zero, -1.0, cfg);
  r.rows.push_back(upper_bound_row("||U(-t) U(t) f - f||, V = 0", l2_distance(back, f), 1e-10));

  const WaveState there_h = trotter::trotter_propagate(f, harmonic, 1.0, cfg);
  const WaveState back_h = trotter::trotter_propagate(there_h, harmonic, -1.0, cfg);
  r.metrics["reversal_error_harmonic_8_slices"] = l2_distance(back_h, f);

  trotter::PropagatorConfig one;
  const double t = 4.0 * one.epsilon_local;
  const WaveState extended = trotter::group_extend(f, zero, t, one);
  const WaveState direct = trotter::trotter_propagate(f, zero, t, one);
  r.metrics["extension_steps"] = trotter::extension_steps(t, one.epsilon_local);
  r.rows.push_back(upper_bound_row("||group_extend(4 eps) - direct||, V = 0",
                                   l2_distance(extended, direct), 1e-10));
  finish(r);
  return r;
}

SuiteResult suite_trotter_order() {
  SuiteResult r;
  r.name = "trotter_order";
  r.criterion = 8;
  r.title = "First-order Trotter convergence for the harmonic oscillator";
  const WaveState f = ground_state(-10.0, 10.0, 256);
  const PotentialSpec v = PotentialSpec::harmonic();
  const ConvergenceResult conv = convergence_order(f, v, 1.0, {8, 16, 32, 64, 128});
  r.series["errors"] = conv.errors;
  r.metrics["slope"] = conv.slope;
  r.rows.push_back({"log-log slope over n = 8..128", conv.slope, 1.2,
                    !conv.degenerate && conv.slope >= 0.8 && conv.slope <= 1.2});

  trotter::PropagatorConfig cfg;
  cfg.slices = 128;
  const WaveState out = trotter::trotter_propagate(f, v, 1.0, cfg);
  const WaveState exact = WaveState::sample(f.x_min, f.x_max, f.size(), [](double x) {
    return reference_solution(ReferenceKind::HarmonicGround, {}, x, 1.0);
  });
  r.rows.push_back(upper_bound_row("ground state L2 error vs exp(-i t/2) f, n = 128, t = 1",
                                   l2_distance(out, exact), 1e-3));
  Complex overlap{0.0, 0.0};
  for (std::size_t k = 0; k < f.size(); ++k) overlap += std::conj(f.samples[k]) * out.samples[k];
  r.metrics["phase_error_rad"] = std::abs(std::arg(overlap) + 0.5);
  finish(r);
  return r;
}

SuiteResult suite_green_limit() {
  SuiteResult r;
  r.name = "green_limit";
  r.criterion = 9;
  r.title = "Short-time deviation of a sigma = 0.05 packet under free evolution";
  const WaveState grid = WaveState::zeros(-8.0, 8.0, 4096);
  const GreenResult g = green_limit_check(grid, {0.05, 0.0, 0.0}, {1e-1, 1e-2, 1e-3},
                                          PotentialSpec::zero());
  std::vector<double> devs;
  for (const GreenRow& row : g.rows) devs.push_back(row.deviation);
  r.series["deviation"] = devs;
  r.rows.push_back(flag_row("deviation decreases along t = 1e-1, 1e-2, 1e-3", g.monotone));
  r.rows.push_back(upper_bound_row("deviation at t = 1e-3", devs.back(), 1e-2));
  finish(r);
  return r;
}

SuiteResult suite_escape_time() {
  SuiteResult r;
  r.name = "escape_time";
  r.criterion = 10;
  r.title = "Classical escape time of -x^4 is finite, of -x^2 diverges";
  const EscapeTime quartic = escape_time(PotentialSpec::quartic_down(), 1.0);
  const EscapeTime quadratic = escape_time(PotentialSpec::power(-1.0, 1.0, 2.0), 1.0);
  r.metrics["quartic_tail_ratio"] = quartic.tail_ratio;
  r.metrics["quadratic_tail_ratio"] = quadratic.tail_ratio;
  r.rows.push_back({"escape time of -x^4 at E = 1 within [1.84, 1.87]", quartic.value, 1.87,
                    quartic.finite && quartic.value >= 1.84 && quartic.value <= 1.87});
  r.rows.push_back(flag_row("escape time of -x^2 at E = 1 reported diverged", !quadratic.finite));
  finish(r);
  return r;
}

struct SuiteEntry {
  const char* name;
  SuiteResult (*run)();
};

const SuiteEntry kSuites[] = {
    {"fresnel", suite_fresnel},
    {"cousin", suite_cousin},
    {"normalization", suite_normalization},
    {"chapman_kolmogorov", suite_chapman_kolmogorov},
    {"oracle_equivalence", suite_oracle_equivalence},
    {"local_global", suite_local_global},
    {"unitarity", suite_unitarity},
    {"trotter_order", suite_trotter_order},
    {"green_limit", suite_green_limit},
    {"escape_time", suite_escape_time},
};

}  // namespace

double bump_profile(double u) {
  if (!(std::abs(u) < 1.0)) return 0.0;
  return std::exp(1.0 - 1.0 / (1.0 - u * u));
}

double bump_profile_integral() {
  static const double value = [] {
    gauge::IntegrationOptions io;
    io.tol = 1e-14;
    io.max_refinements = 22;
    return gauge::integrate_1d([](double u) { return Complex{bump_profile(u), 0.0}; }, {-1.0, 1.0}, io)
        .value.real();
  }();
  return value;
}

BumpFunction BumpFunction::on_grid(const WaveState& grid, double center, double radius) {
  grid.validate();
  const double h = grid.spacing();
  if (!(radius > 8.0 * h)) {
    std::ostringstream os;
    os << "bump radius " << radius << " must exceed 8 grid spacings (" << 8.0 * h << ")";
    throw Error(ErrorCode::InvalidArgument, os.str());
  }
  if (!(center - radius > grid.x(0)) || !(center + radius < grid.x(grid.size() - 1))) {
    std::ostringstream os;
    os << "bump support (" << center - radius << ", " << center + radius
       << ") reaches the grid boundary";
    throw Error(ErrorCode::SupportOverflow, os.str());
  }
  BumpFunction b;
  b.center = center;
  b.radius = radius;
  b.samples.resize(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) b.samples[k] = b(grid.x(k));
  return b;
}

Complex pair_with_test(const WaveState& s, const BumpFunction& phi) {
  if (phi.samples.size() != s.size()) {
    throw Error(ErrorCode::InvalidArgument, "bump was sampled on a different grid");
  }
  if (phi.samples.front() != 0.0 || phi.samples.back() != 0.0) {
    throw Error(ErrorCode::SupportOverflow, "bump support touches the grid boundary");
  }
  Complex acc{0.0, 0.0};
  for (std::size_t k = 0; k < s.size(); ++k) acc += s.samples[k] * phi.samples[k];
  return s.spacing() * acc;
}

AgreementResult local_global_agreement(const WaveState& f, const PotentialSpec& v, double t,
                                       const std::vector<BumpFunction>& bumps,
                                       const AgreementConfig& cfg) {
  f.validate();
  if (!(std::abs(t) < cfg.epsilon_local)) {
    std::ostringstream os;
    os << "|t| = " << std::abs(t) << " is not below epsilon_local = " << cfg.epsilon_local;
    throw Error(ErrorCode::InvalidArgument, os.str());
  }
  AgreementResult out;
  out.per_bump.assign(bumps.size(), 0.0);
  if (t == 0.0) return out;
  if (t < 0.0) throw Error(ErrorCode::DegenerateTime, "local solution needs t > 0");

  trotter::PropagatorConfig gcfg;
  gcfg.slices = cfg.reference_slices;
  gcfg.epsilon_local = cfg.epsilon_local;
  const WaveState global = trotter::trotter_propagate(f, v, t, gcfg);

  std::vector<std::size_t> idx;
  for (std::size_t k = 0; k < f.size(); ++k) {
    const bool inside = std::any_of(bumps.begin(), bumps.end(),
                                    [&](const BumpFunction& b) { return b.samples[k] != 0.0; });
    if (inside) idx.push_back(k);
  }
  std::vector<double> xs;
  for (std::size_t k : idx) xs.push_back(f.x(k));
  const auto values = path_sum::marginal_expectation(f, v, xs, fresnel::TimeGrid::uniform(t, cfg.slices));
  WaveState local = WaveState::zeros(f.x_min, f.x_max, f.size());
  for (std::size_t i = 0; i < idx.size(); ++i) local.samples[idx[i]] = values[i];

  for (std::size_t b = 0; b < bumps.size(); ++b) {
    out.per_bump[b] = std::abs(pair_with_test(global, bumps[b]) - pair_with_test(local, bumps[b]));
    out.discrepancy = std::max(out.discrepancy, out.per_bump[b]);
  }
  return out;
}

Complex reference_solution(ReferenceKind kind, const PacketParams& p, double x, double t) {
  if (kind == ReferenceKind::FreeGaussian) {
    return gaussian_packet_free(x, t, p.sigma, p.center, p.momentum);
  }
  return std::polar(std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * x * x), -0.5 * t);
}

ConvergenceResult convergence_order(const WaveState& f, const PotentialSpec& v, double t,
                                    const std::vector<int>& n_list, trotter::Backend backend) {
  if (n_list.size() < 3) throw Error(ErrorCode::InvalidArgument, "need at least three slice counts");
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    if (n_list[i] < 1 || (i > 0 && n_list[i] <= n_list[i - 1])) {
      throw Error(ErrorCode::InvalidArgument, "slice counts must be positive and increasing");
    }
  }
  ConvergenceResult out;
  out.slices = n_list;
  out.reference_slices = 16 * n_list.back();
  trotter::PropagatorConfig cfg;
  cfg.backend = backend;
  cfg.slices = out.reference_slices;
  const WaveState ref = trotter::trotter_propagate(f, v, t, cfg);
  for (int n : n_list) {
    cfg.slices = n;
    out.errors.push_back(l2_distance(trotter::trotter_propagate(f, v, t, cfg), ref));
  }
  const bool floor = std::all_of(out.errors.begin(), out.errors.end(),
                                 [](double e) { return e < kNoiseFloor; });
  if (floor) {
    out.degenerate = true;
    out.diagnostic = std::string(to_string(ErrorCode::DegenerateFit)) +
                     ": errors are at the noise floor; no slope can be fitted";
    return out;
  }
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  const double m = static_cast<double>(n_list.size());
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    const double lx = -std::log(static_cast<double>(n_list[i]));
    const double ly = std::log(std::max(out.errors[i], kNoiseFloor));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  out.slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  return out;
}

GreenResult green_limit_check(const WaveState& grid, const PacketParams& packet,
                              const std::vector<double>& t_list, const PotentialSpec& v, int slices) {
  for (std::size_t i = 0; i < t_list.size(); ++i) {
    if (!(t_list[i] >= 0.0) || (i > 0 && !(t_list[i] < t_list[i - 1]))) {
      throw Error(ErrorCode::InvalidArgument, "times must be nonnegative and decreasing");
    }
  }
  const WaveState f = WaveState::sample(grid.x_min, grid.x_max, grid.size(), [&](double x) {
    return gaussian_packet(x, packet.sigma, packet.center, packet.momentum);
  });
  trotter::PropagatorConfig cfg;
  cfg.slices = slices;
  GreenResult out;
  for (double t : t_list) {
    const WaveState u = trotter::trotter_propagate(f, v, t, cfg);
    out.rows.push_back({t, l2_distance(u, f)});
  }
  for (std::size_t i = 1; i < out.rows.size(); ++i) {
    out.monotone = out.monotone && out.rows[i].deviation < out.rows[i - 1].deviation;
  }
  return out;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const SuiteEntry& e : kSuites) v.emplace_back(e.name);
    return v;
  }();
  return names;
}

SuiteResult run_suite(const std::string& name) {
  for (const SuiteEntry& e : kSuites) {
    if (name != e.name) continue;
    const auto start = Clock::now();
    SuiteResult r;
    try {
      r = e.run();
    } catch (const std::exception& ex) {
      r.name = e.name;
      r.passed = false;
      r.diagnostic = ex.what();
    }
    r.seconds = seconds_since(start);
    return r;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown suite '" + name + "'");
}

std::vector<SuiteResult> run_suites(const std::vector<std::string>& names, int threads) {
  for (const std::string& n : names) {
    if (std::find(suite_names().begin(), suite_names().end(), n) == suite_names().end()) {
      throw Error(ErrorCode::InvalidArgument, "unknown suite '" + n + "'");
    }
  }
  std::vector<SuiteResult> results(names.size());
  const auto workers = static_cast<std::size_t>(std::max(1, threads));
  const std::size_t count = std::min(workers, names.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < names.size(); i = next++) results[i] = run_suite(names[i]);
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < count; ++w) pool.emplace_back(work);
  work();
  for (std::thread& th : pool) th.join();
  return results;
}

}  // namespace gaugeprop::harness
