#pragma once

#include "lptorsion/interval.hpp"
#include "lptorsion/scalar.hpp"

namespace lpt {

// Complete simply connected n-manifolds with sectional curvature in [-1, delta].
class PinchedClass {
 public:
  PinchedClass(int n, const Scalar& delta);
  // Builds the class from r = sqrt(-delta) directly, for model pinchings
  // where r is a ratio of weights rather than the root of a given delta.
  static PinchedClass from_root(int n, const Scalar& root);

  int n() const { return n_; }
  const Scalar& delta() const { return delta_; }
  const Scalar& root() const { return root_; }

 private:
  PinchedClass(int n, Scalar delta, Scalar root) : n_(n), delta_(std::move(delta)), root_(std::move(root)) {}
  int n_;
  Scalar delta_;
  Scalar root_;
};

// 1 + ((n-k-1)/k) sqrt(-delta), for 1 <= k <= n-1.
Scalar q_bound(int n, const Scalar& root, int k);
inline Scalar q_bound(const PinchedClass& c, int k) { return q_bound(c.n(), c.root(), k); }

struct VanishingIntervals {
  ExponentInterval torsion_zero;  // (1, q(k-1))
  ExponentInterval full_zero;     // (1, q(k)]
};
VanishingIntervals vanishing_intervals(const PinchedClass& c, int k);

struct ContractionRange {
  ExponentInterval contracting;
  ExponentInterval dilating;
};
ContractionRange contraction_range(const PinchedClass& c, int k);

struct EtaPair {
  Scalar eta;        // (n-k-1) sqrt(-delta) - k(p-1)
  Scalar eta_prime;  // k(p-1) sqrt(-delta) - n + k + 1
};
EtaPair eta_exponent(const PinchedClass& c, int k, const Scalar& p);

}  // namespace lpt
