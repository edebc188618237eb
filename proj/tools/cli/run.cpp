#include "run.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <thread>

#include "gaugeprop/error.hpp"
#include "gaugeprop/fresnel.hpp"
#include "gaugeprop/gauge.hpp"
#include "gaugeprop/harness.hpp"
#include "gaugeprop/path_sum.hpp"
#include "gaugeprop/potential.hpp"
#include "gaugeprop/report.hpp"
#include "gaugeprop/trotter.hpp"

namespace gaugeprop::cli {
namespace {

using nlohmann::json;
using report::format_number;

[[noreturn]] void config_error(const std::string& where, const std::string& why) {
  throw Error(ErrorCode::ConfigError, where + ": " + why);
}

std::string complex_text(Complex z) {
  return format_number(z.real()) + (std::signbit(z.imag()) ? "-" : "+") +
         format_number(std::abs(z.imag())) + "i";
}

// Opens the configured output file, or standard output when no path is set.
class Sink {
public:
  Sink(const std::string& path, std::ostream& fallback) : out_(&fallback) {
    if (path.empty()) return;
    file_.open(path, std::ios::binary | std::ios::trunc);
    if (!file_) config_error("output.path", "cannot write '" + path + "'");
    out_ = &file_;
  }
  std::ostream& stream() { return *out_; }

private:
  std::ofstream file_;
  std::ostream* out_;
};

void write_json(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

json wave_json(const WaveState& s) {
  json re = json::array();
  json im = json::array();
  json xs = json::array();
  for (std::size_t k = 0; k < s.size(); ++k) {
    xs.push_back(format_number(s.x(k)));
    re.push_back(format_number(s.samples[k].real()));
    im.push_back(format_number(s.samples[k].imag()));
  }
  return {{"x_min", format_number(s.x_min)},
          {"x_max", format_number(s.x_max)},
          {"time", format_number(s.time_stamp)},
          {"x", xs},
          {"re", re},
          {"im", im}};
}

trotter::PropagatorConfig propagator(const RunConfig& cfg) {
  trotter::PropagatorConfig pc;
  pc.backend = cfg.backend;
  pc.slices = cfg.time.slices;
  pc.epsilon_local = cfg.time.epsilon_local;
  pc.splitting = cfg.splitting;
  return pc;
}

int cmd_integrate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  gauge::IntegrationOptions io;
  io.tol = cfg.tolerances.integrate;
  gauge::PointIntegrand f;
  Interval domain = Interval::real_line();
  Complex exact;
  if (cfg.expr == "fresnel") {
    f = [](double x) { return std::polar(1.0, 0.5 * x * x); };
    io.tail = gauge::OscillatoryTail{0.0, 0.5, 0.0};
    exact = std::sqrt(std::numbers::pi) * Complex(1.0, 1.0);
  } else if (cfg.expr == "gaussian") {
    f = [](double x) { return Complex(std::exp(-x * x), 0.0); };
    exact = std::sqrt(std::numbers::pi);
  } else if (cfg.expr == "bump") {
    f = [](double x) { return Complex(harness::bump_profile(x), 0.0); };
    domain = {-1.0, 1.0};
    exact = harness::bump_profile_integral();
  } else {
    config_error("expr", "unknown integrand '" + cfg.expr + "' (fresnel, gaussian, bump)");
  }
  const gauge::IntegralResult res = gauge::integrate_1d(f, domain, io);
  Sink sink(cfg.output.path, out);
  if (cfg.output.format == Format::Json) {
    write_json(sink.stream(), {{"expr", cfg.expr},
                               {"re", format_number(res.value.real())},
                               {"im", format_number(res.value.imag())},
                               {"error_estimate", format_number(res.error_estimate)},
                               {"refinements", res.refinements_used},
                               {"converged", res.converged},
                               {"reference_re", format_number(exact.real())},
                               {"reference_im", format_number(exact.imag())}});
  } else {
    sink.stream() << "expr,value,re,im,error_estimate,refinements,converged\n"
                  << cfg.expr << ',' << complex_text(res.value) << ',' << format_number(res.value.real())
                  << ',' << format_number(res.value.imag()) << ',' << format_number(res.error_estimate)
                  << ',' << res.refinements_used << ',' << (res.converged ? 1 : 0) << '\n';
  }
  if (!res.converged) {
    err << "integrate: no convergence to tol " << format_number(io.tol) << " (error estimate "
        << format_number(res.error_estimate) << ")\n";
    return 1;
  }
  return 0;
}

int cmd_propagate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const WaveState f = initial_state(cfg);
  const PotentialSpec v = cfg.potential_spec();
  trotter::Diagnostics diag;
  const WaveState psi = trotter::group_extend(f, v, cfg.time.t, propagator(cfg), &diag);
  if (diag.boundary_warning) {
    err << "propagate: wavefunction reaches the grid boundary (ratio "
        << format_number(diag.max_boundary_ratio) << "); widen the grid\n";
  }
  Sink sink(cfg.output.path, out);
  if (cfg.output.format == Format::Json) {
    write_json(sink.stream(), {{"command", "propagate"},
                               {"norm_initial", format_number(l2_norm(f))},
                               {"norm_final", format_number(l2_norm(psi))},
                               {"max_boundary_ratio", format_number(diag.max_boundary_ratio)},
                               {"state", wave_json(psi)}});
  } else {
    write_wave_csv(sink.stream(), psi);
  }
  return 0;
}

int cmd_pathsum(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const PotentialSpec v = cfg.potential_spec();
  const fresnel::TimeGrid grid = fresnel::TimeGrid::uniform(cfg.time.t, cfg.time.slices);
  std::vector<double> xs;
  std::vector<Complex> values;
  std::vector<double> errors;
  bool converged = true;
  if (cfg.initial.kind == InitialKind::Point) {
    if (cfg.eval_points.empty()) config_error("x", "a point initial state needs end points (--x)");
    xs = cfg.eval_points;
    path_sum::QuadratureConfig q;
    q.tol = cfg.tolerances.pathsum;
    for (double x : xs) {
      const path_sum::LocalSolution s =
          path_sum::marginal_expectation(path_sum::PointMass{cfg.initial.x0}, v, x, grid, q);
      values.push_back(s.value);
      errors.push_back(s.error_estimate);
      converged = converged && s.converged;
    }
  } else {
    const WaveState f = initial_state(cfg);
    if (cfg.eval_points.empty()) {
      for (std::size_t k = 0; k < f.size(); ++k) xs.push_back(f.x(k));
    } else {
      xs = cfg.eval_points;
    }
    values = path_sum::marginal_expectation(f, v, xs, grid);
    errors.assign(xs.size(), 0.0);
  }
  Sink sink(cfg.output.path, out);
  if (cfg.output.format == Format::Json) {
    json rows = json::array();
    for (std::size_t i = 0; i < xs.size(); ++i) {
      rows.push_back({{"x", format_number(xs[i])},
                      {"re", format_number(values[i].real())},
                      {"im", format_number(values[i].imag())},
                      {"error_estimate", format_number(errors[i])}});
    }
    write_json(sink.stream(), {{"command", "pathsum"},
                               {"t", format_number(cfg.time.t)},
                               {"slices", cfg.time.slices},
                               {"converged", converged},
                               {"values", rows}});
  } else {
    sink.stream() << "x,re,im\n";
    for (std::size_t i = 0; i < xs.size(); ++i) {
      sink.stream() << format_number(xs[i]) << ',' << format_number(values[i].real()) << ','
                    << format_number(values[i].imag()) << '\n';
    }
  }
  if (!converged) {
    err << "pathsum: quadrature did not reach tol " << format_number(cfg.tolerances.pathsum) << '\n';
    return 1;
  }
  return 0;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  std::vector<std::string> names;
  if (cfg.suite == "all") {
    names = harness::suite_names();
  } else {
    const auto& known = harness::suite_names();
    if (std::find(known.begin(), known.end(), cfg.suite) == known.end()) {
      std::string list;
      for (const auto& n : known) list += (list.empty() ? "" : ", ") + n;
      config_error("suite", "unknown suite '" + cfg.suite + "' (all, " + list + ")");
    }
    names = {cfg.suite};
  }
  report::PropagationReport rep;
  rep.config = cfg.echo();
  rep.run_id = report::make_run_id(rep.config);
  rep.suites = harness::run_suites(names, worker_threads());
  bool all_passed = true;
  for (const harness::SuiteResult& s : rep.suites) {
    all_passed = all_passed && s.passed;
    rep.metrics[s.name + ".passed"] = s.passed ? 1.0 : 0.0;
    if (cfg.timings) rep.timings[s.name] = s.seconds;
    out << (s.passed ? "PASS" : "FAIL") << " [" << s.criterion << "] " << s.name << ": " << s.title << '\n';
    for (const harness::Row& row : s.rows) {
      if (!row.passed) {
        err << "  " << s.name << ": " << row.label << " = " << format_number(row.value)
            << " (threshold " << format_number(row.threshold) << ")\n";
      }
    }
    if (!s.diagnostic.empty()) err << "  " << s.name << ": " << s.diagnostic << '\n';
  }
  const std::string path = cfg.output.path.empty() ? kDefaultReportPath : cfg.output.path;
  Sink sink(path, out);
  write_json(sink.stream(), report::to_json(rep));
  out << "report: " << path << '\n';
  return all_passed ? 0 : 1;
}

int cmd_classify(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  const PotentialSpec v = cfg.potential_spec();
  ProbeConfig probe;
  probe.energy = cfg.energy;
  const SAClassification c = classify_sa(v, probe);
  Sink sink(cfg.output.path, out);
  const bool has_escape = c.escape.has_value();
  if (cfg.output.format == Format::Json) {
    json j = {{"potential", v.name()},
              {"verdict", to_string(c.verdict)},
              {"rule", to_string(c.rule)},
              {"note", c.note}};
    if (has_escape) {
      j["escape_time"] = {{"finite", c.escape->finite},
                          {"value", format_number(c.escape->value)},
                          {"finite_part", format_number(c.escape->finite_part)},
                          {"tail_ratio", format_number(c.escape->tail_ratio)},
                          {"diagnostic", c.escape->diagnostic}};
    }
    write_json(sink.stream(), j);
  } else {
    std::ostream& o = sink.stream();
    o << "potential,verdict,rule,escape_finite,escape_time,note\n";
    o << v.name() << ',' << to_string(c.verdict) << ',' << to_string(c.rule) << ',';
    if (has_escape) {
      o << (c.escape->finite ? 1 : 0) << ','
        << (c.escape->finite ? format_number(c.escape->value) : std::string("inf"));
    } else {
      o << ',';
    }
    std::string note = c.note;
    for (char& ch : note) {
      if (ch == ',' || ch == '\n') ch = ';';
    }
    o << ',' << note << '\n';
  }
  return 0;
}

template <class F>
double time_best_of(int repeats, F&& f) {
  double best = 1e300;
  for (int r = 0; r < repeats; ++r) {
    const auto start = std::chrono::steady_clock::now();
    f();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
  }
  return best;
}

int cmd_bench(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  RunConfig grid_cfg = cfg;
  if (grid_cfg.initial.kind == InitialKind::Point) grid_cfg.initial.kind = InitialKind::Gaussian;
  const WaveState f = initial_state(grid_cfg);
  const PotentialSpec v = cfg.potential_spec();
  const double dt = cfg.time.t / cfg.time.slices;
  std::vector<std::pair<std::string, double>> rows;
  rows.emplace_back("free_step_spectral",
                    time_best_of(5, [&] { (void)trotter::free_step(f, dt, trotter::Backend::Spectral); }));
  rows.emplace_back("free_step_quadrature",
                    time_best_of(3, [&] { (void)trotter::free_step(f, dt, trotter::Backend::Quadrature); }));
  rows.emplace_back("trotter_propagate", time_best_of(3, [&] {
                      (void)trotter::trotter_propagate(f, v, cfg.time.t, propagator(cfg));
                    }));
  rows.emplace_back("integrate_fresnel", time_best_of(3, [&] {
                      gauge::IntegrationOptions io;
                      io.tail = gauge::OscillatoryTail{0.0, 0.5, 0.0};
                      io.tol = cfg.tolerances.integrate;
                      (void)gauge::integrate_1d([](double x) { return std::polar(1.0, 0.5 * x * x); },
                                                Interval::real_line(), io);
                    }));
  rows.emplace_back("transition_probability_n2", time_best_of(3, [&] {
                      fresnel::Cylinder c{fresnel::TimeGrid::uniform(1.0, 2),
                                          {Interval::real_line()}};
                      (void)fresnel::transition_probability(c, fresnel::Endpoints{});
                    }));
  Sink sink(cfg.output.path, out);
  if (cfg.output.format == Format::Json) {
    json j = json::object();
    for (const auto& [name, secs] : rows) j[name] = format_number(secs);
    write_json(sink.stream(), {{"seconds", j}});
  } else {
    sink.stream() << "kernel,seconds\n";
    for (const auto& [name, secs] : rows) sink.stream() << name << ',' << format_number(secs) << '\n';
  }
  return 0;
}

}  // namespace

void write_wave_csv(std::ostream& out, const WaveState& s) {
  out << "x,re,im\n";
  for (std::size_t k = 0; k < s.size(); ++k) {
    out << format_number(s.x(k)) << ',' << format_number(s.samples[k].real()) << ','
        << format_number(s.samples[k].imag()) << '\n';
  }
}

WaveState read_wave_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) config_error("initial_state.path", "cannot read '" + path + "'");
  std::string line;
  if (!std::getline(in, line) || line.rfind("x,re,im", 0) != 0) {
    config_error("initial_state.path", "'" + path + "' lacks the x,re,im header");
  }
  std::vector<double> xs;
  std::vector<Complex> samples;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    std::stringstream ss(line);
    std::string cell[3];
    for (auto& c : cell) {
      if (!std::getline(ss, c, ',')) {
        config_error("initial_state.path", path + ":" + std::to_string(line_no) + ": expected 3 columns");
      }
    }
    try {
      xs.push_back(report::parse_number(cell[0]));
      samples.emplace_back(report::parse_number(cell[1]), report::parse_number(cell[2]));
    } catch (const std::exception&) {
      config_error("initial_state.path", path + ":" + std::to_string(line_no) + ": malformed number");
    }
  }
  if (xs.size() < 2) config_error("initial_state.path", "'" + path + "' has fewer than two rows");
  const double h = xs[1] - xs[0];
  for (std::size_t k = 1; k < xs.size(); ++k) {
    const double expected = xs[0] + static_cast<double>(k) * h;
    if (std::abs(xs[k] - expected) > 1e-9 * std::max(1.0, std::abs(expected))) {
      config_error("initial_state.path", "x column is not uniformly spaced at row " + std::to_string(k + 2));
    }
  }
  WaveState s;
  s.samples = std::move(samples);
  s.x_min = xs[0];
  s.x_max = xs[0] + static_cast<double>(xs.size()) * h;
  try {
    s.validate();
  } catch (const Error& e) {
    config_error("initial_state.path", e.what());
  }
  return s;
}

WaveState initial_state(const RunConfig& cfg) {
  const InitialConfig& ic = cfg.initial;
  const GridConfig& g = cfg.grid;
  switch (ic.kind) {
    case InitialKind::Gaussian:
      return WaveState::sample(g.x_min, g.x_max, g.n_points, [&](double x) {
        return gaussian_packet(x, ic.sigma, ic.center, ic.momentum);
      });
    case InitialKind::PlaneWave: {
      const double amp = 1.0 / std::sqrt(g.x_max - g.x_min);
      return WaveState::sample(g.x_min, g.x_max, g.n_points,
                               [&](double x) { return std::polar(amp, ic.k * x); });
    }
    case InitialKind::File:
      return read_wave_csv(ic.path);
    case InitialKind::Point:
      break;
  }
  config_error("initial_state.kind", "a point initial state is only supported by pathsum");
}

int worker_threads() {
  int n = static_cast<int>(std::thread::hardware_concurrency());
  if (const char* env = std::getenv("GAUGE_PROP_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 1) {
      config_error("GAUGE_PROP_THREADS", std::string("expected a positive integer, got '") + env + "'");
    }
    n = static_cast<int>(v);
  }
  return std::max(1, n);
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    switch (cfg.command) {
      case Command::Integrate: return cmd_integrate(cfg, out, err);
      case Command::Propagate: return cmd_propagate(cfg, out, err);
      case Command::Pathsum: return cmd_pathsum(cfg, out, err);
      case Command::Verify: return cmd_verify(cfg, out, err);
      case Command::Classify: return cmd_classify(cfg, out, err);
      case Command::Bench: return cmd_bench(cfg, out, err);
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ConfigError) throw;
    err << to_string(cfg.command) << ": " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace gaugeprop::cli
