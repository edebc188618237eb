#include "config.hpp"

#include <CLI11.hpp>

#include <bit>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include "gaugeprop/error.hpp"

namespace gaugeprop::cli {
namespace {

using nlohmann::json;

[[noreturn]] void config_error(const std::string& where, const std::string& why) {
  throw Error(ErrorCode::ConfigError, where + ": " + why);
}

void check_keys(const json& obj, const std::string& path, std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) config_error(path.empty() ? "<root>" : path, "expected an object");
  for (const auto& [key, value] : obj.items()) {
    bool known = false;
    for (const char* a : allowed) known = known || key == a;
    if (!known) config_error(path.empty() ? key : path + "." + key, "unknown key");
  }
}

double get_number(const json& j, const std::string& path) {
  if (!j.is_number()) config_error(path, "expected a number");
  return j.get<double>();
}

std::string get_string(const json& j, const std::string& path) {
  if (!j.is_string()) config_error(path, "expected a string");
  return j.get<std::string>();
}

double parse_double(const std::string& text, const std::string& where) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    config_error(where, "'" + text + "' is not a number");
  }
  if (used != text.size()) config_error(where, "'" + text + "' is not a number");
  return v;
}

Command parse_command(const std::string& s, const std::string& where) {
  static const std::pair<const char*, Command> table[] = {
      {"integrate", Command::Integrate}, {"propagate", Command::Propagate},
      {"pathsum", Command::Pathsum},     {"verify", Command::Verify},
      {"classify", Command::Classify},   {"bench", Command::Bench}};
  for (const auto& [name, c] : table) {
    if (s == name) return c;
  }
  config_error(where, "unknown command '" + s + "'");
}

Format parse_format(const std::string& s, const std::string& where) {
  if (s == "csv") return Format::Csv;
  if (s == "json") return Format::Json;
  config_error(where, "format must be csv or json, got '" + s + "'");
}

trotter::Backend parse_backend(const std::string& s, const std::string& where) {
  if (s == "spectral") return trotter::Backend::Spectral;
  if (s == "quadrature") return trotter::Backend::Quadrature;
  config_error(where, "backend must be spectral or quadrature, got '" + s + "'");
}

trotter::Splitting parse_splitting(const std::string& s, const std::string& where) {
  if (s == "lie") return trotter::Splitting::Lie;
  if (s == "strang") return trotter::Splitting::Strang;
  config_error(where, "splitting must be lie or strang, got '" + s + "'");
}

InitialKind parse_kind(const std::string& s, const std::string& where) {
  if (s == "gaussian") return InitialKind::Gaussian;
  if (s == "plane_wave") return InitialKind::PlaneWave;
  if (s == "file") return InitialKind::File;
  if (s == "point") return InitialKind::Point;
  config_error(where, "unknown initial state kind '" + s + "'");
}

std::string kind_name(InitialKind k) {
  switch (k) {
    case InitialKind::Gaussian: return "gaussian";
    case InitialKind::PlaneWave: return "plane_wave";
    case InitialKind::File: return "file";
    case InitialKind::Point: return "point";
  }
  return "gaussian";
}

void parse_grid_flag(const std::string& text, GridConfig& g) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  if (parts.size() != 3) config_error("--grid", "expected min:max:n, got '" + text + "'");
  g.x_min = parse_double(parts[0], "--grid");
  g.x_max = parse_double(parts[1], "--grid");
  const double n = parse_double(parts[2], "--grid");
  if (!(n >= 1.0) || n != std::floor(n)) config_error("--grid", "n must be a positive integer");
  g.n_points = static_cast<std::size_t>(n);
}

// gaussian:sigma=..,center=..,momentum=.. | plane_wave:k=.. | file:path | point:x0
void parse_initial_flag(const std::string& text, InitialConfig& init) {
  const auto colon = text.find(':');
  const std::string kind = text.substr(0, colon);
  const std::string rest = colon == std::string::npos ? "" : text.substr(colon + 1);
  init.kind = parse_kind(kind, "--initial");
  if (init.kind == InitialKind::File) {
    if (rest.empty()) config_error("--initial", "file needs a path");
    init.path = rest;
    return;
  }
  if (init.kind == InitialKind::Point && !rest.empty() && rest.find('=') == std::string::npos) {
    init.x0 = parse_double(rest, "--initial");
    return;
  }
  std::stringstream ss(rest);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) config_error("--initial", "expected key=value, got '" + item + "'");
    const std::string key = item.substr(0, eq);
    const double value = parse_double(item.substr(eq + 1), "--initial." + key);
    const bool ok = (init.kind == InitialKind::Gaussian &&
                     (key == "sigma" || key == "center" || key == "momentum")) ||
                    (init.kind == InitialKind::PlaneWave && key == "k") ||
                    (init.kind == InitialKind::Point && key == "x0");
    if (!ok) config_error("--initial." + key, "unknown key for " + kind);
    if (key == "sigma") init.sigma = value;
    if (key == "center") init.center = value;
    if (key == "momentum") init.momentum = value;
    if (key == "k") init.k = value;
    if (key == "x0") init.x0 = value;
  }
}

struct Flags {
  std::optional<std::string> config;
  std::optional<std::string> grid;
  std::optional<double> t;
  std::optional<int> slices;
  std::optional<double> epsilon_local;
  std::optional<std::string> potential;
  std::vector<std::string> potential_params;
  std::optional<std::string> initial;
  std::optional<std::string> output;
  std::optional<std::string> format;
  std::optional<std::string> expr;
  std::optional<std::string> suite;
  std::optional<std::string> backend;
  std::optional<std::string> splitting;
  std::optional<double> tol;
  std::optional<double> energy;
  std::vector<double> x;
  bool timings = false;
};

void add_options(CLI::App* sub, Flags& f) {
  sub->add_option("--config", f.config, "JSON configuration file; flags override its values");
  sub->add_option("--grid", f.grid, "Spatial grid as min:max:n (n a power of two >= 8)");
  sub->add_option("--t", f.t, "Propagation time");
  sub->add_option("--slices", f.slices, "Number of Trotter slices");
  sub->add_option("--epsilon-local", f.epsilon_local, "Local time bound for the group extension");
  sub->add_option("--potential", f.potential,
                  "zero, constant, harmonic, quartic_down, power, bounded_periodic");
  sub->add_option("--potential-param", f.potential_params, "Potential parameter key=value (repeatable)");
  sub->add_option("--initial", f.initial,
                  "gaussian:sigma=..,center=..,momentum=.. | plane_wave:k=.. | file:path | point:x0");
  sub->add_option("--output", f.output, "Output file (default: standard output)");
  sub->add_option("--format", f.format, "csv or json");
  sub->add_option("--expr", f.expr, "Integrand for integrate: fresnel, gaussian, bump");
  sub->add_option("--suite", f.suite, "Verification suite name or 'all'");
  sub->add_option("--backend", f.backend, "spectral or quadrature");
  sub->add_option("--splitting", f.splitting, "lie or strang");
  sub->add_option("--tol", f.tol, "Quadrature tolerance");
  sub->add_option("--energy", f.energy, "Energy for the escape-time diagnostic");
  sub->add_option("--x", f.x, "End points for pathsum with a point initial state");
  sub->add_flag("--timings", f.timings, "Record wall-clock timings in report metadata");
}

void apply_flags(RunConfig& cfg, const Flags& f) {
  if (f.grid) parse_grid_flag(*f.grid, cfg.grid);
  if (f.t) cfg.time.t = *f.t;
  if (f.slices) cfg.time.slices = *f.slices;
  if (f.epsilon_local) cfg.time.epsilon_local = *f.epsilon_local;
  if (f.potential) {
    if (*f.potential != cfg.potential.name) cfg.potential.params.clear();
    cfg.potential.name = *f.potential;
  }
  for (const std::string& kv : f.potential_params) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) config_error("--potential-param", "expected key=value, got '" + kv + "'");
    cfg.potential.params[kv.substr(0, eq)] =
        parse_double(kv.substr(eq + 1), "--potential-param." + kv.substr(0, eq));
  }
  if (f.initial) parse_initial_flag(*f.initial, cfg.initial);
  if (f.output) cfg.output.path = *f.output;
  if (f.format) cfg.output.format = parse_format(*f.format, "--format");
  if (f.expr) cfg.expr = *f.expr;
  if (f.suite) cfg.suite = *f.suite;
  if (f.backend) cfg.backend = parse_backend(*f.backend, "--backend");
  if (f.splitting) cfg.splitting = parse_splitting(*f.splitting, "--splitting");
  if (f.tol) {
    cfg.tolerances.integrate = *f.tol;
    cfg.tolerances.pathsum = *f.tol;
  }
  if (f.energy) cfg.energy = *f.energy;
  if (!f.x.empty()) cfg.eval_points = f.x;
  if (f.timings) cfg.timings = true;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) config_error("--config", "cannot read '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    config_error("--config", std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace

std::string to_string(Command c) {
  switch (c) {
    case Command::Integrate: return "integrate";
    case Command::Propagate: return "propagate";
    case Command::Pathsum: return "pathsum";
    case Command::Verify: return "verify";
    case Command::Classify: return "classify";
    case Command::Bench: return "bench";
  }
  return "propagate";
}

void apply_json(RunConfig& cfg, const json& doc) {
  check_keys(doc, "", {"command", "grid", "time", "potential", "initial_state", "output", "tolerances",
                       "backend", "splitting", "expr", "suite", "x", "energy", "timings"});
  if (doc.contains("command")) cfg.command = parse_command(get_string(doc["command"], "command"), "command");
  if (doc.contains("grid")) {
    const json& g = doc["grid"];
    check_keys(g, "grid", {"x_min", "x_max", "n_points"});
    if (g.contains("x_min")) cfg.grid.x_min = get_number(g["x_min"], "grid.x_min");
    if (g.contains("x_max")) cfg.grid.x_max = get_number(g["x_max"], "grid.x_max");
    if (g.contains("n_points")) {
      const double n = get_number(g["n_points"], "grid.n_points");
      if (!(n >= 1.0) || n != std::floor(n)) config_error("grid.n_points", "expected a positive integer");
      cfg.grid.n_points = static_cast<std::size_t>(n);
    }
  }
  if (doc.contains("time")) {
    const json& t = doc["time"];
    check_keys(t, "time", {"t", "slices", "epsilon_local"});
    if (t.contains("t")) cfg.time.t = get_number(t["t"], "time.t");
    if (t.contains("slices")) {
      const double n = get_number(t["slices"], "time.slices");
      if (n != std::floor(n)) config_error("time.slices", "expected an integer");
      cfg.time.slices = static_cast<int>(n);
    }
    if (t.contains("epsilon_local")) cfg.time.epsilon_local = get_number(t["epsilon_local"], "time.epsilon_local");
  }
  if (doc.contains("potential")) {
    const json& p = doc["potential"];
    check_keys(p, "potential", {"name", "params"});
    if (p.contains("name")) cfg.potential.name = get_string(p["name"], "potential.name");
    if (p.contains("params")) {
      check_keys(p["params"], "potential.params", {"value", "coefficient", "center", "offset", "sign",
                                                    "exponent", "amplitude", "wavenumber", "phase"});
      for (const auto& [k, v] : p["params"].items()) {
        cfg.potential.params[k] = get_number(v, "potential.params." + k);
      }
    }
  }
  if (doc.contains("initial_state")) {
    const json& s = doc["initial_state"];
    check_keys(s, "initial_state", {"kind", "sigma", "center", "momentum", "k", "path", "x0"});
    if (s.contains("kind")) cfg.initial.kind = parse_kind(get_string(s["kind"], "initial_state.kind"), "initial_state.kind");
    if (s.contains("sigma")) cfg.initial.sigma = get_number(s["sigma"], "initial_state.sigma");
    if (s.contains("center")) cfg.initial.center = get_number(s["center"], "initial_state.center");
    if (s.contains("momentum")) cfg.initial.momentum = get_number(s["momentum"], "initial_state.momentum");
    if (s.contains("k")) cfg.initial.k = get_number(s["k"], "initial_state.k");
    if (s.contains("x0")) cfg.initial.x0 = get_number(s["x0"], "initial_state.x0");
    if (s.contains("path")) cfg.initial.path = get_string(s["path"], "initial_state.path");
  }
  if (doc.contains("output")) {
    const json& o = doc["output"];
    check_keys(o, "output", {"path", "format"});
    if (o.contains("path")) cfg.output.path = get_string(o["path"], "output.path");
    if (o.contains("format")) cfg.output.format = parse_format(get_string(o["format"], "output.format"), "output.format");
  }
  if (doc.contains("tolerances")) {
    const json& t = doc["tolerances"];
    check_keys(t, "tolerances", {"integrate", "pathsum"});
    if (t.contains("integrate")) cfg.tolerances.integrate = get_number(t["integrate"], "tolerances.integrate");
    if (t.contains("pathsum")) cfg.tolerances.pathsum = get_number(t["pathsum"], "tolerances.pathsum");
  }
  if (doc.contains("backend")) cfg.backend = parse_backend(get_string(doc["backend"], "backend"), "backend");
  if (doc.contains("splitting")) cfg.splitting = parse_splitting(get_string(doc["splitting"], "splitting"), "splitting");
  if (doc.contains("expr")) cfg.expr = get_string(doc["expr"], "expr");
  if (doc.contains("suite")) cfg.suite = get_string(doc["suite"], "suite");
  if (doc.contains("energy")) cfg.energy = get_number(doc["energy"], "energy");
  if (doc.contains("timings")) {
    if (!doc["timings"].is_boolean()) config_error("timings", "expected a boolean");
    cfg.timings = doc["timings"].get<bool>();
  }
  if (doc.contains("x")) {
    if (!doc["x"].is_array()) config_error("x", "expected an array of numbers");
    cfg.eval_points.clear();
    for (const json& v : doc["x"]) cfg.eval_points.push_back(get_number(v, "x"));
  }
}

void RunConfig::validate() const {
  if (!std::isfinite(grid.x_min) || !std::isfinite(grid.x_max) || !(grid.x_min < grid.x_max)) {
    config_error("grid", "need finite x_min < x_max");
  }
  if (grid.n_points < 8 || !std::has_single_bit(grid.n_points)) {
    config_error("grid.n_points", "must be a power of two >= 8, got " + std::to_string(grid.n_points));
  }
  if (!std::isfinite(time.t)) config_error("time.t", "must be finite");
  if (time.slices < 1) config_error("time.slices", "must be at least 1");
  if (!(time.epsilon_local > 0.0)) config_error("time.epsilon_local", "must be positive");
  if (!(tolerances.integrate > 0.0)) config_error("tolerances.integrate", "must be positive");
  if (!(tolerances.pathsum > 0.0)) config_error("tolerances.pathsum", "must be positive");
  if (!(energy > 0.0)) config_error("energy", "must be positive");
  if (initial.kind == InitialKind::Gaussian && !(initial.sigma > 0.0)) {
    config_error("initial_state.sigma", "must be positive");
  }
  if (initial.kind == InitialKind::File && initial.path.empty()) {
    config_error("initial_state.path", "file initial state needs a path");
  }
  potential_spec();
}

PotentialSpec RunConfig::potential_spec() const {
  try {
    return PotentialSpec::from_name(potential.name, potential.params);
  } catch (const Error& e) {
    config_error("potential", e.what());
  }
}

json RunConfig::echo() const {
  json params = json::object();
  for (const auto& [k, v] : potential.params) params[k] = v;
  json j = {
      {"command", to_string(command)},
      {"grid", {{"x_min", grid.x_min}, {"x_max", grid.x_max}, {"n_points", grid.n_points}}},
      {"time", {{"t", time.t}, {"slices", time.slices}, {"epsilon_local", time.epsilon_local}}},
      {"potential", {{"name", potential.name}, {"params", params}}},
      {"initial_state",
       {{"kind", kind_name(initial.kind)},
        {"sigma", initial.sigma},
        {"center", initial.center},
        {"momentum", initial.momentum},
        {"k", initial.k},
        {"x0", initial.x0},
        {"path", initial.path}}},
      {"output", {{"path", output.path}, {"format", output.format == Format::Csv ? "csv" : "json"}}},
      {"tolerances", {{"integrate", tolerances.integrate}, {"pathsum", tolerances.pathsum}}},
      {"backend", backend == trotter::Backend::Spectral ? "spectral" : "quadrature"},
      {"splitting", splitting == trotter::Splitting::Lie ? "lie" : "strang"},
      {"expr", expr},
      {"suite", suite},
      {"x", eval_points},
      {"energy", energy},
      {"timings", timings}};
  return j;
}

std::optional<RunConfig> parse_config(int argc, const char* const* argv, std::string& help_out) {
  CLI::App app{"Gauge-integral path sums and Trotter propagation", "gaugeprop"};
  app.require_subcommand(1, 1);
  Flags flags;
  const std::pair<const char*, const char*> commands[] = {
      {"integrate", "Gauge integral of a built-in oscillatory integrand"},
      {"propagate", "Trotter propagation of an initial state"},
      {"pathsum", "Discretized path sum (local solution) at grid or chosen points"},
      {"verify", "Run verification suites and write a report"},
      {"classify", "Sufficient-condition classification of a potential"},
      {"bench", "Time the main kernels"}};
  for (const auto& [name, desc] : commands) add_options(app.add_subcommand(name, desc), flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    std::ostringstream out, err;
    app.exit(e, out, err);
    help_out = out.str();
    return std::nullopt;
  } catch (const CLI::CallForAllHelp& e) {
    std::ostringstream out, err;
    app.exit(e, out, err);
    help_out = out.str();
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    config_error("command line", e.what());
  }

  RunConfig cfg;
  const std::string name = app.get_subcommands().front()->get_name();
  if (flags.config) {
    apply_json(cfg, read_json_file(*flags.config));
    const Command from_file = cfg.command;
    if (from_file != parse_command(name, "command") && read_json_file(*flags.config).contains("command")) {
      config_error("command", "configuration file names '" + to_string(from_file) +
                                  "' but the command line asks for '" + name + "'");
    }
  }
  cfg.command = parse_command(name, "command");
  apply_flags(cfg, flags);
  cfg.validate();
  return cfg;
}

}  // namespace gaugeprop::cli
