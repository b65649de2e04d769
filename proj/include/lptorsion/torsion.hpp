#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "lptorsion/interval.hpp"
#include "lptorsion/pinching.hpp"
#include "lptorsion/spectral.hpp"

namespace lpt {

struct HeintzeGroup {
  DerivationSpectrum spectrum;
};
struct RealHyperbolic {
  int n;
};
// Spaces known only through stored constants. "CH2" is the only one.
struct ReferenceSpace {
  std::string name;
};

class GroupModel {
 public:
  using Kind = std::variant<HeintzeGroup, RealHyperbolic, ReferenceSpace>;

  static GroupModel heintze(DerivationSpectrum spec) { return GroupModel(HeintzeGroup{std::move(spec)}); }
  static GroupModel real_hyperbolic(int n);
  static GroupModel reference(const std::string& name);

  const Kind& kind() const { return kind_; }
  int n() const;
  std::string describe() const;
  // Pinching of the natural left-invariant metric, scaled so that K >= -1.
  // For a diagonal Heintze group that is sqrt(-delta) = lambda_min/lambda_max.
  PinchedClass model_pinching() const;

 private:
  explicit GroupModel(Kind k) : kind_(std::move(k)) {}
  Kind kind_;
};

// Nonvanishing of T^{k,p} for R^(n-1) x_alpha R with abelian kernel: the
// window w_{n-1}/W_{k-1} < p < w_{n-1}/w_{k-1}, minus degree-(k-1)
// critical exponents, which are reported as punctures rather than zeros.
struct NonvanishingWindow {
  ExponentInterval hull;
  std::vector<Scalar> punctures;  // ascending, strictly inside hull
  ExponentSet components;         // hull minus punctures
  ExponentInterval leading() const;
};
NonvanishingWindow torsion_nonvanishing_interval(const DerivationSpectrum& spec, int k);

// The interval stated for the two-valued family G_{mu,n,delta} in degree mu.
ExponentInterval theorem_b_interval(int n, int mu, const Scalar& delta);

std::vector<Scalar> hyperbolic_torsion_points(int n, int k);

Scalar t_invariant(const GroupModel& g);

struct DegreeReport {
  int degree = 0;
  ExponentSet torsion_zero;
  ExponentSet full_zero;
  ExponentSet torsion_nonzero;
  std::vector<Scalar> punctures;
  std::vector<Scalar> critical;
  ExponentSet unknown;
  std::vector<std::string> notes;
  bool approximate = false;
};
DegreeReport degree_report(const GroupModel& g, int k);

struct ObstructionReport {
  bool obstructed = false;
  int degree = 0;
  ExponentSet witness;
  bool approximate = false;
  std::vector<std::string> notes;
};
ObstructionReport qi_obstruction(const GroupModel& g, const PinchedClass& cls);

struct Tradeoff {
  double s;
  double bound;
};
// Balances m e^{-mu s} against n e^{eta s}.
Tradeoff truncation_tradeoff(double mu, double eta, double m, double n_mag);

}  // namespace lpt
