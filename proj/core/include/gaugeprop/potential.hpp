#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace gaugeprop {

enum class PotentialFamily {
  Zero,
  Constant,
  Harmonic,
  QuarticDown,
  Power,
  BoundedPeriodic,
  CustomTabulated,
};

std::string to_string(PotentialFamily f);

/// A potential from a named family. Parameters per family:
///   constant:         value
///   harmonic:         coefficient * (x - center)^2 + offset
///   quartic_down:     -coefficient * x^4
///   power:            sign * coefficient * |x|^exponent
///   bounded_periodic: amplitude * cos(wavenumber * x + phase) + offset
///   custom_tabulated: linear interpolation of (x, V) nodes, clamped outside
class PotentialSpec {
public:
  static PotentialSpec zero();
  static PotentialSpec constant(double value);
  static PotentialSpec harmonic(double coefficient = 1.0, double center = 0.0, double offset = 0.0);
  static PotentialSpec quartic_down(double coefficient = 1.0);
  static PotentialSpec power(double sign, double coefficient, double exponent);
  static PotentialSpec bounded_periodic(double amplitude = 1.0, double wavenumber = 1.0,
                                        double phase = 0.0, double offset = 0.0);
  static PotentialSpec tabulated(std::vector<std::pair<double, double>> nodes);

  /// Builds a family by name, overriding its defaults with `params`. Unknown
  /// names or parameter keys throw InvalidArgument.
  static PotentialSpec from_name(const std::string& name,
                                 const std::map<std::string, double>& params = {});

  double operator()(double x) const { return eval_(x); }

  PotentialFamily family() const noexcept { return family_; }
  std::string name() const { return to_string(family_); }
  const std::map<std::string, double>& params() const noexcept { return params_; }
  const std::vector<std::pair<double, double>>& nodes() const noexcept { return nodes_; }

  /// True when the family is globally bounded.
  bool declared_bounded() const noexcept;
  /// True when V decreases to -inf like a power of |x| (escape-time candidates).
  bool unbounded_below() const noexcept;
  bool identically_zero() const noexcept;

private:
  PotentialSpec(PotentialFamily family, std::map<std::string, double> params);
  void bind();

  PotentialFamily family_ = PotentialFamily::Zero;
  std::map<std::string, double> params_;
  std::vector<std::pair<double, double>> nodes_;
  std::function<double(double)> eval_;
};

struct EscapeTime {
  bool finite = false;
  double value = 0.0;        // total estimate including the extrapolated tail
  double finite_part = 0.0;  // integral over [0, cutoff]
  double tail_ratio = 0.0;   // last ratio of consecutive doubling-shell integrals
  std::string diagnostic;
};

/// Classical escape time from the origin at energy E: integral of
/// 1 / sqrt(E - V(x)) over [0, cutoff] plus a tail extrapolated from
/// doubling shells [R, 2R]. Throws TurningPoint if E - V <= 0 on the range
/// and InvalidArgument for E <= 0.
EscapeTime escape_time(const PotentialSpec& v, double energy, double cutoff = 4.0);

enum class Verdict { ConfirmedESA, Unknown, SuspectNotESA };
enum class SARule { None, GrowthRule, KatoRule };

std::string to_string(Verdict v);
std::string to_string(SARule r);

struct ProbeConfig {
  double radius = 64.0;
  int samples_per_unit = 16;
  double energy = 1.0;
  double escape_cutoff = 4.0;
};

struct SAClassification {
  Verdict verdict = Verdict::Unknown;
  SARule rule = SARule::None;
  std::optional<EscapeTime> escape;
  std::string note;
};

/// Sufficient-condition check on samples; a heuristic, never a proof.
SAClassification classify_sa(const PotentialSpec& v, const ProbeConfig& probe = {});

}  // namespace gaugeprop
