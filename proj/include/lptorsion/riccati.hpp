#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "lptorsion/check.hpp"
#include "lptorsion/scalar.hpp"

namespace lpt {

constexpr int kMaxRiccatiDim = 8;
using Mat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, kMaxRiccatiDim, kMaxRiccatiDim>;
using Vec = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, kMaxRiccatiDim, 1>;

// Curvature operator v -> R(v, xi) xi along a geodesic, in a parallel frame.
// Either constant or piecewise constant on [i*dt, (i+1)*dt).
class CurvatureField {
 public:
  static CurvatureField constant(const Mat& r);
  // Each piece is Q diag(d) Q^T with d uniform in [-1, delta] and Q the
  // orthogonal factor of a Gaussian matrix.
  static CurvatureField random_piecewise(int m, double delta, double t_end, std::uint64_t seed, double dt = 0.5);

  int dim() const { return static_cast<int>(pieces_.front().rows()); }
  double piece_length() const { return dt_; }
  const std::vector<Mat>& pieces() const { return pieces_; }
  const Mat& at(double t) const;

 private:
  std::vector<Mat> pieces_;
  double dt_ = 0.0;  // 0 for constant fields
};

struct RiccatiTrajectory {
  double h = 0.0;
  std::vector<double> t;
  std::vector<Mat> U;
  std::vector<Mat> J;
  std::vector<Vec> log_sv;  // log singular values of J, descending

  int dim() const { return static_cast<int>(U.front().rows()); }
  // p log ||Lambda^k J|| - log det J at grid index i
  double n_k_p(size_t i, int k, double p) const;
  double log_det(size_t i) const { return log_sv[i].sum(); }
};

// Classical RK4 for U' = -U^2 - R, J' = J U with J(0) = I. Throws
// BlowUpError once ||U|| exceeds 1e6.
RiccatiTrajectory riccati_integrate(const CurvatureField& field, const Mat& u0, double t_end, double h);

// Spectrum of U(t) stays in [sqrt(-delta) - 1e-6, 1 + 1e-6]. worst is the
// largest excursion outside [sqrt(-delta), 1], negative when strictly inside.
CheckReport invariant_region_check(const RiccatiTrajectory& traj, double delta);

// n_k_p(t) <= -eta t + 1e-6 on the whole grid; worst is max(n_k_p + eta t).
CheckReport contraction_inequality_check(const RiccatiTrajectory& traj, int n, const Scalar& delta, int k,
                                         const Scalar& p);

// det J(t) against exp(int_0^t tr U), compared in logs via Simpson's rule.
CheckReport liouville_check(const RiccatiTrajectory& traj);

struct RiccatiBatchConfig {
  std::vector<int> dims{2, 3, 5};
  std::vector<Scalar> deltas{Scalar::rational(-1, 4), Scalar::rational(-1, 2)};
  int count = 100;
  std::uint64_t seed = 1;
  double t_end = 20.0;
  double h = 1e-3;
};

struct RiccatiFieldResult {
  int m = 0;
  std::string delta;
  std::uint64_t seed = 0;
  std::vector<CheckReport> checks;
};

struct RiccatiBatchReport {
  std::vector<RiccatiFieldResult> fields;
  // worst value per check name over the whole batch, plus the sharpness run
  std::vector<CheckReport> checks;
};

// Runs count random piecewise-constant fields, cycling through dims x deltas,
// from U(0) = I. Each field gets the invariant-region, Liouville, and
// contraction checks for 1 <= k < m and p in {(1+q)/2, q}. The batch also
// runs the constant field R = -I at delta = -1, where the contraction
// inequality is an equality.
RiccatiBatchReport riccati_batch(const RiccatiBatchConfig& cfg);

}  // namespace lpt
