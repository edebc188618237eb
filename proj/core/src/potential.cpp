#include "gaugeprop/potential.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gaugeprop/error.hpp"
#include "gaugeprop/gauge.hpp"

namespace gaugeprop {
namespace {

constexpr double kPositivityFloor = 1e-12;
constexpr int kTailDoublings = 6;
// Tail shells shrink like 2^{1 - p/2} for V ~ -|x|^p. The integral is taken
// as finite when the measured exponent clears 2 by this margin.
constexpr double kExponentMargin = 0.1;

std::map<std::string, double> defaults_for(PotentialFamily f) {
  switch (f) {
    case PotentialFamily::Zero: return {};
    case PotentialFamily::Constant: return {{"value", 0.0}};
    case PotentialFamily::Harmonic: return {{"coefficient", 1.0}, {"center", 0.0}, {"offset", 0.0}};
    case PotentialFamily::QuarticDown: return {{"coefficient", 1.0}};
    case PotentialFamily::Power: return {{"sign", 1.0}, {"coefficient", 1.0}, {"exponent", 2.0}};
    case PotentialFamily::BoundedPeriodic:
      return {{"amplitude", 1.0}, {"wavenumber", 1.0}, {"phase", 0.0}, {"offset", 0.0}};
    case PotentialFamily::CustomTabulated: return {};
  }
  return {};
}

double interpolate(const std::vector<std::pair<double, double>>& nodes, double x) {
  if (x <= nodes.front().first) return nodes.front().second;
  if (x >= nodes.back().first) return nodes.back().second;
  const auto it = std::upper_bound(nodes.begin(), nodes.end(), x,
                                   [](double v, const auto& n) { return v < n.first; });
  const auto& [x1, v1] = *it;
  const auto& [x0, v0] = *(it - 1);
  const double w = (x - x0) / (x1 - x0);
  return v0 + w * (v1 - v0);
}

void require_turning_free(const PotentialSpec& v, double energy, double a, double b) {
  constexpr int kSamples = 1024;
  for (int i = 0; i <= kSamples; ++i) {
    const double x = a + (b - a) * i / kSamples;
    if (!(energy - v(x) > 0.0)) {
      std::ostringstream os;
      os << "E - V(x) <= 0 at x = " << x << "; the classical motion turns back";
      throw Error(ErrorCode::TurningPoint, os.str());
    }
  }
}

double shell_integral(const PotentialSpec& v, double energy, double a, double b) {
  require_turning_free(v, energy, a, b);
  gauge::IntegrationOptions io;
  io.tol = 1e-11;
  const auto r = gauge::integrate_1d_checked(
      [&](double x) {
        const double gap = energy - v(x);
        if (!(gap > 0.0)) {
          std::ostringstream os;
          os << "E - V(x) <= 0 at x = " << x;
          throw Error(ErrorCode::TurningPoint, os.str());
        }
        return Complex{1.0 / std::sqrt(gap), 0.0};
      },
      {a, b}, io);
  return r.value.real();
}

}  // namespace

std::string to_string(PotentialFamily f) {
  switch (f) {
    case PotentialFamily::Zero: return "zero";
    case PotentialFamily::Constant: return "constant";
    case PotentialFamily::Harmonic: return "harmonic";
    case PotentialFamily::QuarticDown: return "quartic_down";
    case PotentialFamily::Power: return "power";
    case PotentialFamily::BoundedPeriodic: return "bounded_periodic";
    case PotentialFamily::CustomTabulated: return "custom_tabulated";
  }
  return "unknown";
}

PotentialSpec::PotentialSpec(PotentialFamily family, std::map<std::string, double> params)
    : family_(family), params_(std::move(params)) {}

void PotentialSpec::bind() {
  const auto p = params_;
  switch (family_) {
    case PotentialFamily::Zero:
      eval_ = [](double) { return 0.0; };
      break;
    case PotentialFamily::Constant:
      eval_ = [c = p.at("value")](double) { return c; };
      break;
    case PotentialFamily::Harmonic:
      eval_ = [a = p.at("coefficient"), c = p.at("center"), o = p.at("offset")](double x) {
        return a * (x - c) * (x - c) + o;
      };
      break;
    case PotentialFamily::QuarticDown:
      eval_ = [a = p.at("coefficient")](double x) { return -a * x * x * x * x; };
      break;
    case PotentialFamily::Power:
      eval_ = [s = p.at("sign"), a = p.at("coefficient"), e = p.at("exponent")](double x) {
        return s * a * std::pow(std::abs(x), e);
      };
      break;
    case PotentialFamily::BoundedPeriodic:
      eval_ = [a = p.at("amplitude"), k = p.at("wavenumber"), ph = p.at("phase"),
               o = p.at("offset")](double x) { return a * std::cos(k * x + ph) + o; };
      break;
    case PotentialFamily::CustomTabulated:
      eval_ = [n = nodes_](double x) { return interpolate(n, x); };
      break;
  }
}

PotentialSpec PotentialSpec::zero() { return from_name("zero"); }

PotentialSpec PotentialSpec::constant(double value) {
  return from_name("constant", {{"value", value}});
}

PotentialSpec PotentialSpec::harmonic(double coefficient, double center, double offset) {
  return from_name("harmonic", {{"coefficient", coefficient}, {"center", center}, {"offset", offset}});
}

PotentialSpec PotentialSpec::quartic_down(double coefficient) {
  return from_name("quartic_down", {{"coefficient", coefficient}});
}

PotentialSpec PotentialSpec::power(double sign, double coefficient, double exponent) {
  return from_name("power", {{"sign", sign}, {"coefficient", coefficient}, {"exponent", exponent}});
}

PotentialSpec PotentialSpec::bounded_periodic(double amplitude, double wavenumber, double phase,
                                              double offset) {
  return from_name("bounded_periodic", {{"amplitude", amplitude},
                                        {"wavenumber", wavenumber},
                                        {"phase", phase},
                                        {"offset", offset}});
}

PotentialSpec PotentialSpec::tabulated(std::vector<std::pair<double, double>> nodes) {
  if (nodes.empty()) throw Error(ErrorCode::InvalidArgument, "tabulated potential needs nodes");
  std::sort(nodes.begin(), nodes.end());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (!std::isfinite(nodes[i].first) || !std::isfinite(nodes[i].second)) {
      throw Error(ErrorCode::InvalidArgument, "tabulated potential nodes must be finite");
    }
    if (i > 0 && nodes[i].first == nodes[i - 1].first) {
      throw Error(ErrorCode::InvalidArgument, "tabulated potential has duplicate abscissae");
    }
  }
  PotentialSpec v(PotentialFamily::CustomTabulated, {});
  v.nodes_ = std::move(nodes);
  v.bind();
  return v;
}

PotentialSpec PotentialSpec::from_name(const std::string& name,
                                       const std::map<std::string, double>& params) {
  static const PotentialFamily all[] = {
      PotentialFamily::Zero,        PotentialFamily::Constant, PotentialFamily::Harmonic,
      PotentialFamily::QuarticDown, PotentialFamily::Power,    PotentialFamily::BoundedPeriodic};
  for (PotentialFamily f : all) {
    if (to_string(f) != name) continue;
    auto merged = defaults_for(f);
    for (const auto& [key, value] : params) {
      if (!merged.contains(key)) {
        throw Error(ErrorCode::InvalidArgument,
                    "potential '" + name + "' has no parameter '" + key + "'");
      }
      if (!std::isfinite(value)) {
        throw Error(ErrorCode::InvalidArgument, "potential parameter '" + key + "' must be finite");
      }
      merged[key] = value;
    }
    if (f == PotentialFamily::Power && !(merged.at("exponent") > 0.0)) {
      throw Error(ErrorCode::InvalidArgument, "power potential needs a positive exponent");
    }
    PotentialSpec v(f, std::move(merged));
    v.bind();
    return v;
  }
  if (name == "custom_tabulated") {
    throw Error(ErrorCode::InvalidArgument, "custom_tabulated potentials are built from a node table");
  }
  throw Error(ErrorCode::InvalidArgument, "unknown potential family '" + name + "'");
}

bool PotentialSpec::declared_bounded() const noexcept {
  switch (family_) {
    case PotentialFamily::Zero:
    case PotentialFamily::Constant:
    case PotentialFamily::BoundedPeriodic:
    case PotentialFamily::CustomTabulated:
      return true;
    case PotentialFamily::Harmonic: return params_.at("coefficient") == 0.0;
    case PotentialFamily::QuarticDown: return params_.at("coefficient") == 0.0;
    case PotentialFamily::Power: return params_.at("coefficient") == 0.0;
  }
  return false;
}

bool PotentialSpec::unbounded_below() const noexcept {
  switch (family_) {
    case PotentialFamily::Harmonic: return params_.at("coefficient") < 0.0;
    case PotentialFamily::QuarticDown: return params_.at("coefficient") > 0.0;
    case PotentialFamily::Power: return params_.at("sign") * params_.at("coefficient") < 0.0;
    default: return false;
  }
}

bool PotentialSpec::identically_zero() const noexcept {
  switch (family_) {
    case PotentialFamily::Zero: return true;
    case PotentialFamily::Constant: return params_.at("value") == 0.0;
    case PotentialFamily::Harmonic:
      return params_.at("coefficient") == 0.0 && params_.at("offset") == 0.0;
    case PotentialFamily::QuarticDown: return params_.at("coefficient") == 0.0;
    case PotentialFamily::Power: return params_.at("coefficient") == 0.0 || params_.at("sign") == 0.0;
    case PotentialFamily::BoundedPeriodic:
      return params_.at("amplitude") == 0.0 && params_.at("offset") == 0.0;
    case PotentialFamily::CustomTabulated:
      return std::all_of(nodes_.begin(), nodes_.end(), [](const auto& n) { return n.second == 0.0; });
  }
  return false;
}

EscapeTime escape_time(const PotentialSpec& v, double energy, double cutoff) {
  if (!(energy > 0.0)) throw Error(ErrorCode::InvalidArgument, "energy must be positive");
  if (!(cutoff > 0.0)) throw Error(ErrorCode::InvalidArgument, "cutoff must be positive");

  EscapeTime out;
  out.finite_part = shell_integral(v, energy, 0.0, cutoff);

  double total = out.finite_part;
  double r = cutoff;
  double prev_shell = shell_integral(v, energy, r, 2.0 * r);
  total += prev_shell;
  double ratio = 1.0;
  for (int k = 1; k <= kTailDoublings; ++k) {
    r *= 2.0;
    const double shell = shell_integral(v, energy, r, 2.0 * r);
    total += shell;
    ratio = shell / prev_shell;
    prev_shell = shell;
  }
  out.tail_ratio = ratio;
  const double exponent = 2.0 * (1.0 - std::log2(ratio));
  std::ostringstream diag;
  diag << "shell ratio " << ratio << " after " << kTailDoublings
       << " doublings, effective decay exponent " << exponent;
  if (exponent > 2.0 + kExponentMargin && ratio < 1.0) {
    out.finite = true;
    out.value = total + prev_shell * ratio / (1.0 - ratio);
    diag << "; tail converges";
  } else {
    out.finite = false;
    out.value = total;
    diag << "; tail does not converge (diverged)";
  }
  out.diagnostic = diag.str();
  return out;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::ConfirmedESA: return "ConfirmedESA";
    case Verdict::Unknown: return "Unknown";
    case Verdict::SuspectNotESA: return "SuspectNotESA";
  }
  return "Unknown";
}

std::string to_string(SARule r) {
  switch (r) {
    case SARule::None: return "none";
    case SARule::GrowthRule: return "growth_rule";
    case SARule::KatoRule: return "kato_rule";
  }
  return "none";
}

SAClassification classify_sa(const PotentialSpec& v, const ProbeConfig& probe) {
  if (!(probe.radius > 0.0) || probe.samples_per_unit < 1) {
    throw Error(ErrorCode::InvalidArgument, "probe needs a positive radius and sample density");
  }
  SAClassification out;
  if (v.declared_bounded()) {
    out.verdict = Verdict::ConfirmedESA;
    out.rule = SARule::KatoRule;
    out.note = "heuristic: bounded family, one-particle specialization of the Kato condition";
    return out;
  }
  if (v.unbounded_below()) {
    try {
      EscapeTime e = escape_time(v, probe.energy, probe.escape_cutoff);
      const bool finite = e.finite;
      out.escape = std::move(e);
      if (finite) {
        out.verdict = Verdict::SuspectNotESA;
        out.note = "heuristic: classical escape to infinity in finite time";
      } else {
        out.note = "heuristic: escape time diverges; no sufficient condition applies";
      }
    } catch (const Error& err) {
      if (err.code() != ErrorCode::TurningPoint) throw;
      out.note = std::string("heuristic: ") + err.what();
    }
    return out;
  }

  // Growth rule: V > 0 on the probe range and the minimum over each dyadic
  // shell |x| in [R/2^(m+1), R/2^m] increases outward.
  constexpr int kShells = 5;
  const auto count = static_cast<long>(std::ceil(2.0 * probe.radius * probe.samples_per_unit));
  std::vector<double> shell_min(kShells, kInf);
  for (long i = 0; i <= count; ++i) {
    const double x = -probe.radius + 2.0 * probe.radius * static_cast<double>(i) / static_cast<double>(count);
    const double value = v(x);
    if (!(value >= kPositivityFloor)) {
      std::ostringstream os;
      os << "heuristic: V(" << x << ") = " << value << " is not positive; no sufficient condition applies";
      out.note = os.str();
      return out;
    }
    const double ax = std::abs(x);
    for (int m = 0; m < kShells; ++m) {
      const double hi = probe.radius / std::pow(2.0, m);
      if (ax <= hi && ax >= 0.5 * hi) shell_min[static_cast<std::size_t>(m)] =
          std::min(shell_min[static_cast<std::size_t>(m)], value);
    }
  }
  for (int m = 0; m + 1 < kShells; ++m) {
    if (!(shell_min[static_cast<std::size_t>(m)] > shell_min[static_cast<std::size_t>(m + 1)])) {
      out.note = "heuristic: sampled V does not grow outward; no sufficient condition applies";
      return out;
    }
  }
  out.verdict = Verdict::ConfirmedESA;
  out.rule = SARule::GrowthRule;
  out.note = "heuristic: V > 0 on samples and grows outward at every probe radius";
  return out;
}

}  // namespace gaugeprop
