#include "lptorsion/pinching.hpp"

#include <string>

#include "lptorsion/error.hpp"

namespace lpt {

PinchedClass::PinchedClass(int n, const Scalar& delta) : n_(n), delta_(delta) {
  if (n < 2) throw Error(Errc::domain, "dimension must be at least 2");
  if (delta < Scalar(-1) || delta.sign() >= 0)
    throw Error(Errc::domain, "pinching needs -1 <= delta < 0, got " + delta.to_string());
  root_ = Scalar::sqrt(-delta);
}

PinchedClass PinchedClass::from_root(int n, const Scalar& root) {
  if (n < 2) throw Error(Errc::domain, "dimension must be at least 2");
  if (root.sign() <= 0 || root > Scalar(1))
    throw Error(Errc::domain, "sqrt(-delta) must lie in (0, 1], got " + root.to_string());
  return PinchedClass(n, -(root * root), root);
}

namespace {

// The formula without the range check; k = n is used internally for the
// top-degree full vanishing bound, which lands below 1 and clips to empty.
Scalar q_raw(int n, const Scalar& root, int k) {
  return Scalar(1) + Scalar::rational(n - k - 1, k) * root;
}

}  // namespace

Scalar q_bound(int n, const Scalar& root, int k) {
  if (k < 1 || k > n - 1)
    throw Error(Errc::degree_out_of_range, "q(n, delta, k) needs 1 <= k <= n-1, got k = " + std::to_string(k));
  return q_raw(n, root, k);
}

VanishingIntervals vanishing_intervals(const PinchedClass& c, int k) {
  if (k < 2 || k > c.n())
    throw Error(Errc::degree_out_of_range, "vanishing needs 2 <= k <= n, got k = " + std::to_string(k));
  VanishingIntervals v;
  v.torsion_zero = ExponentInterval::open(Scalar(1), q_raw(c.n(), c.root(), k - 1));
  v.full_zero = ExponentInterval::make(Scalar(1), false, q_raw(c.n(), c.root(), k), true);
  return v;
}

ContractionRange contraction_range(const PinchedClass& c, int k) {
  if (k < 0 || k > c.n() - 1)
    throw Error(Errc::degree_out_of_range, "contraction needs 0 <= k <= n-1, got k = " + std::to_string(k));
  ContractionRange r;
  if (k == 0) {
    // every weight is positive, so Jac alone decays
    r.contracting = ExponentInterval::whole();
    return r;
  }
  r.contracting = ExponentInterval::open(Scalar(1), q_raw(c.n(), c.root(), k));
  Scalar dil = Scalar(1) + Scalar(c.n() - k - 1) / (Scalar(k) * c.root());
  r.dilating = ExponentInterval::open(dil, std::nullopt);
  return r;
}

EtaPair eta_exponent(const PinchedClass& c, int k, const Scalar& p) {
  if (p <= Scalar(1)) throw Error(Errc::domain, "exponent p must exceed 1, got " + p.to_string());
  Scalar kp = Scalar(k) * (p - Scalar(1));
  return {Scalar(c.n() - k - 1) * c.root() - kp, kp * c.root() - Scalar(c.n() - k - 1)};
}

}  // namespace lpt
