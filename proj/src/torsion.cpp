#include "lptorsion/torsion.hpp"

#include <algorithm>
#include <cmath>

#include "lptorsion/error.hpp"

namespace lpt {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// Stored constants for spaces the library knows only by name.
constexpr int kCH2Dimension = 4;
constexpr long kCH2TInvariant = 4;

void check_k(int k, int lo, int hi, const char* what) {
  if (k < lo || k > hi)
    throw Error(Errc::degree_out_of_range, std::string(what) + ": degree " + std::to_string(k) + " outside [" +
                                               std::to_string(lo) + ", " + std::to_string(hi) + "]");
}

ExponentInterval to_approx(const ExponentInterval& i) {
  if (i.is_empty()) return i;
  std::optional<Scalar> hi;
  if (i.upper()) hi = i.upper()->to_approx();
  return ExponentInterval::make(i.lower().to_approx(), i.lower_closed(), hi, i.upper_closed());
}

ExponentSet to_approx(const ExponentSet& s) {
  std::vector<ExponentInterval> parts;
  for (const auto& i : s.parts()) parts.push_back(to_approx(i));
  return ExponentSet(std::move(parts));
}

// Radicands of all irrational endpoints, used to decide whether two sets can
// be compared exactly.
void collect_radicands(const ExponentSet& s, std::vector<mpz_class>& out) {
  auto add = [&](const Scalar& x) {
    if (x.exact() && !x.is_rational()) out.push_back(x.radicand());
  };
  for (const auto& i : s.parts()) {
    add(i.lower());
    if (i.upper()) add(*i.upper());
  }
}

}  // namespace

GroupModel GroupModel::real_hyperbolic(int n) {
  if (n < 2) throw Error(Errc::domain, "real hyperbolic space needs n >= 2");
  return GroupModel(RealHyperbolic{n});
}

GroupModel GroupModel::reference(const std::string& name) {
  if (name != "CH2") throw Error(Errc::domain, "unknown reference space '" + name + "' (only CH2 is stored)");
  return GroupModel(ReferenceSpace{name});
}

int GroupModel::n() const {
  return std::visit(overloaded{[](const HeintzeGroup& h) { return h.spectrum.n(); },
                               [](const RealHyperbolic& r) { return r.n; },
                               [](const ReferenceSpace&) { return kCH2Dimension; }},
                    kind_);
}

std::string GroupModel::describe() const {
  return std::visit(overloaded{[](const HeintzeGroup& h) {
                                 std::string s = "heintze(";
                                 for (size_t i = 0; i < h.spectrum.weights().size(); ++i) {
                                   if (i) s += ", ";
                                   s += h.spectrum.weights()[i].to_string();
                                 }
                                 return s + (h.spectrum.abelian() ? ")" : "; nonabelian)");
                               },
                               [](const RealHyperbolic& r) { return "real_hyperbolic(" + std::to_string(r.n) + ")"; },
                               [](const ReferenceSpace& r) { return r.name; }},
                    kind_);
}

PinchedClass GroupModel::model_pinching() const {
  return std::visit(overloaded{[](const HeintzeGroup& h) {
                                 if (!h.spectrum.abelian())
                                   throw Error(Errc::nonabelian, "no model pinching is stored for a nonabelian kernel");
                                 const auto& w = h.spectrum.weights();
                                 return PinchedClass::from_root(h.spectrum.n(), w.front() / w.back());
                               },
                               [](const RealHyperbolic& r) { return PinchedClass(r.n, Scalar(-1)); },
                               [](const ReferenceSpace&) {
                                 return PinchedClass(kCH2Dimension, Scalar::rational(-1, 4));
                               }},
                    kind_);
}

ExponentInterval NonvanishingWindow::leading() const {
  if (components.is_empty()) return {};
  return components.parts().front();
}

NonvanishingWindow torsion_nonvanishing_interval(const DerivationSpectrum& spec, int k) {
  if (!spec.abelian())
    throw Error(Errc::nonabelian, "the nonvanishing criterion requires an abelian kernel H");
  check_k(k, 2, spec.rank(), "nonvanishing");
  NonvanishingWindow out;
  Scalar lo_sum = spec.w(k - 1), hi_sum = spec.W(k - 1);
  if (lo_sum >= hi_sum) return out;
  const Scalar& tr = spec.trace();
  out.hull = ExponentInterval::open(tr / hi_sum, tr / lo_sum);
  for (const auto& c : critical_exponents(spec, k - 1)) {
    bool strictly_inside = out.hull.contains(c) && !(c == out.hull.lower()) && !(c == *out.hull.upper());
    if (strictly_inside) out.punctures.push_back(c);
  }
  std::vector<ExponentInterval> holes;
  for (const auto& c : out.punctures) holes.push_back(ExponentInterval::point(c));
  out.components = subtract(ExponentSet(out.hull), ExponentSet(std::move(holes)));
  return out;
}

ExponentInterval theorem_b_interval(int n, int mu, const Scalar& delta) {
  if (mu < 2 || mu > n - 1) throw Error(Errc::domain, "needs 2 <= mu <= n-1");
  if (delta <= Scalar(-1) || delta.sign() >= 0) throw Error(Errc::domain, "needs -1 < delta < 0");
  PinchedClass cls(n, delta);
  const Scalar& r = cls.root();
  int k = mu;
  Scalar upper = Scalar(1) + (Scalar(1) + Scalar(n - 1 - k) * r) / (Scalar(k - 2) + r);
  return ExponentInterval::open(q_bound(cls, k - 1), upper);
}

std::vector<Scalar> hyperbolic_torsion_points(int n, int k) {
  check_k(k, 2, n - 1, "hyperbolic torsion");
  return {Scalar::rational(n - 1, k - 1)};
}

namespace {

// Two-valued shape with a single top weight: returns lambda_min/lambda_max,
// or nullopt when the spectrum is not of the G_{2,n,delta} form.
std::optional<Scalar> mu2_root(const DerivationSpectrum& spec) {
  const auto& w = spec.weights();
  if (w.size() < 2) return std::nullopt;
  const Scalar& top = w.back();
  if (w[w.size() - 2] == top) {
    // all equal is the real hyperbolic case, which fits with root 1
    if (w.front() == top) return Scalar(1);
    return std::nullopt;
  }
  for (size_t i = 1; i + 1 < w.size(); ++i)
    if (!(w[i] == w.front())) return std::nullopt;
  return w.front() / top;
}

}  // namespace

Scalar t_invariant(const GroupModel& g) {
  return std::visit(
      overloaded{[](const HeintzeGroup& h) -> Scalar {
                   if (!h.spectrum.abelian())
                     throw Error(Errc::nonabelian, "T is not determined for a nonabelian kernel");
                   auto r = mu2_root(h.spectrum);
                   if (!r)
                     throw Error(Errc::not_determined,
                                 "T is not determined by implemented theorems for this spectrum; only "
                                 "weights (r, ..., r, 1) are covered");
                   return q_bound(h.spectrum.n(), *r, 1);
                 },
                 [](const RealHyperbolic& rh) -> Scalar {
                   if (rh.n < 3) throw Error(Errc::not_determined, "degree 2 needs n >= 3");
                   return Scalar(rh.n - 1);
                 },
                 [](const ReferenceSpace&) -> Scalar { return Scalar(kCH2TInvariant); }},
      g.kind());
}

DegreeReport degree_report(const GroupModel& g, int k) {
  int n = g.n();
  check_k(k, 2, n, "degree report");
  DegreeReport rep;
  rep.degree = k;
  const auto* h = std::get_if<HeintzeGroup>(&g.kind());
  if (h && !h->spectrum.abelian()) {
    rep.notes.push_back("vanishing not covered: no model pinching for a nonabelian kernel");
  } else {
    VanishingIntervals van = vanishing_intervals(g.model_pinching(), k);
    rep.torsion_zero = ExponentSet(van.torsion_zero);
    rep.full_zero = ExponentSet(van.full_zero);
  }

  std::visit(
      overloaded{
          [&](const HeintzeGroup& h) {
            const auto& spec = h.spectrum;
            if (k <= spec.rank()) rep.critical = critical_exponents(spec, k);
            if (!spec.abelian()) {
              rep.notes.push_back("nonvanishing not covered: the criterion requires an abelian kernel");
            } else if (k > spec.rank()) {
              rep.notes.push_back("nonvanishing not covered by implemented theorems in the top degree");
            } else {
              NonvanishingWindow win = torsion_nonvanishing_interval(spec, k);
              rep.torsion_nonzero = win.components;
              rep.punctures = win.punctures;
              if (!win.punctures.empty())
                rep.notes.push_back("critical exponents of degree k-1 inside the window are not covered");
            }
          },
          [&](const RealHyperbolic& rh) {
            if (k <= rh.n - 1) {
              Scalar pt = hyperbolic_torsion_points(rh.n, k).front();
              rep.critical = {pt};
              rep.torsion_nonzero = ExponentSet(ExponentInterval::point(pt));
              rep.torsion_zero = rep.torsion_nonzero.complement();
            } else {
              rep.notes.push_back("top degree not covered by implemented theorems");
            }
          },
          [&](const ReferenceSpace&) {
            if (k == 2) {
              // T = 4 means no degree-2 torsion below 4
              rep.torsion_zero =
                  unite(rep.torsion_zero, ExponentSet(ExponentInterval::open(Scalar(1), Scalar(kCH2TInvariant))));
            }
            rep.notes.push_back("nonvanishing not covered: CH2 has a nonabelian kernel");
          }},
      g.kind());

  ExponentSet overlap = intersect(rep.torsion_zero, rep.torsion_nonzero);
  if (!overlap.is_empty())
    throw Error(Errc::internal, "vanishing and nonvanishing results overlap on " + overlap.to_string());
  rep.unknown = unite(unite(rep.torsion_zero, rep.full_zero), rep.torsion_nonzero).complement();
  rep.approximate = rep.torsion_zero.approximate() || rep.torsion_nonzero.approximate();
  return rep;
}

ObstructionReport qi_obstruction(const GroupModel& g, const PinchedClass& cls) {
  ObstructionReport out;
  if (g.n() != cls.n()) {
    out.notes.push_back("dimensions differ (" + std::to_string(g.n()) + " vs " + std::to_string(cls.n()) +
                        "); no obstruction found by implemented theorems");
    return out;
  }
  for (int k = 2; k <= g.n() - 1; ++k) {
    DegreeReport rep = degree_report(g, k);
    if (rep.torsion_nonzero.is_empty()) continue;
    VanishingIntervals van = vanishing_intervals(cls, k);
    ExponentSet zero = unite(ExponentSet(van.torsion_zero), ExponentSet(van.full_zero));
    ExponentSet nonzero = rep.torsion_nonzero;

    std::vector<mpz_class> rads;
    collect_radicands(zero, rads);
    collect_radicands(nonzero, rads);
    bool mixed = std::any_of(rads.begin(), rads.end(), [&](const mpz_class& r) { return r != rads.front(); });
    if (mixed || zero.approximate() || nonzero.approximate()) {
      zero = to_approx(zero);
      nonzero = to_approx(nonzero);
      out.approximate = true;
    }
    ExponentSet witness = intersect(nonzero, zero);
    if (!witness.is_empty()) {
      out.obstructed = true;
      out.degree = k;
      out.witness = witness;
      return out;
    }
  }
  out.notes.push_back("no obstruction found by implemented theorems");
  return out;
}

Tradeoff truncation_tradeoff(double mu, double eta, double m, double n_mag) {
  if (!(mu > 0) || !(eta > 0)) throw Error(Errc::domain, "rates must be positive");
  if (!(m > 0) || !(n_mag > 0)) throw Error(Errc::domain, "magnitudes must be positive");
  double s = std::log(eta * m / (mu * n_mag)) / (mu + eta);
  double bound = std::pow(m, mu / (mu + eta)) * std::pow(n_mag, eta / (mu + eta));
  return {s, bound};
}

}  // namespace lpt
