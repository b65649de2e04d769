#include "lptorsion/riccati.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "lptorsion/error.hpp"
#include "lptorsion/pinching.hpp"

namespace lpt {

namespace {

constexpr double kBlowUp = 1e6;
constexpr double kRegionTol = 1e-6;
constexpr double kContractionTol = 1e-6;
constexpr double kLiouvilleTol = 1e-6;

Mat symmetrized(const Mat& a) { return 0.5 * (a + a.transpose()); }

}  // namespace

CurvatureField CurvatureField::constant(const Mat& r) {
  if (r.rows() != r.cols() || r.rows() < 1 || r.rows() > kMaxRiccatiDim)
    throw Error(Errc::domain, "curvature matrix must be square of size 1.." + std::to_string(kMaxRiccatiDim));
  if ((r - r.transpose()).cwiseAbs().maxCoeff() > 1e-12) throw Error(Errc::domain, "curvature matrix must be symmetric");
  CurvatureField f;
  f.pieces_.push_back(r);
  return f;
}

CurvatureField CurvatureField::random_piecewise(int m, double delta, double t_end, std::uint64_t seed, double dt) {
  if (m < 1 || m > kMaxRiccatiDim) throw Error(Errc::domain, "dimension must be in 1.." + std::to_string(kMaxRiccatiDim));
  if (!(delta >= -1.0 && delta < 0.0)) throw Error(Errc::domain, "delta must lie in [-1, 0)");
  if (!(dt > 0.0) || !(t_end > 0.0)) throw Error(Errc::domain, "piece length and t_end must be positive");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> level(-1.0, delta);
  auto count = static_cast<size_t>(std::ceil(t_end / dt - 1e-9));
  CurvatureField f;
  f.dt_ = dt;
  for (size_t i = 0; i < std::max<size_t>(count, 1); ++i) {
    Mat g(m, m);
    for (int r = 0; r < m; ++r)
      for (int c = 0; c < m; ++c) g(r, c) = gauss(rng);
    Mat q = Eigen::HouseholderQR<Mat>(g).householderQ();
    Vec d(m);
    for (int r = 0; r < m; ++r) d(r) = level(rng);
    f.pieces_.push_back(symmetrized(q * d.asDiagonal() * q.transpose()));
  }
  return f;
}

const Mat& CurvatureField::at(double t) const {
  if (dt_ == 0.0) return pieces_.front();
  auto i = static_cast<long>(std::floor(t / dt_));
  i = std::clamp<long>(i, 0, static_cast<long>(pieces_.size()) - 1);
  return pieces_[static_cast<size_t>(i)];
}

double RiccatiTrajectory::n_k_p(size_t i, int k, double p) const {
  const Vec& s = log_sv[i];
  return p * s.head(k).sum() - s.sum();
}

RiccatiTrajectory riccati_integrate(const CurvatureField& field, const Mat& u0, double t_end, double h) {
  if (!(h > 0.0) || !(t_end > 0.0)) throw Error(Errc::domain, "step and t_end must be positive");
  int m = field.dim();
  if (u0.rows() != m || u0.cols() != m) throw Error(Errc::domain, "U0 has the wrong size");
  if ((u0 - u0.transpose()).cwiseAbs().maxCoeff() > 1e-12) throw Error(Errc::domain, "U0 must be symmetric");

  auto steps = static_cast<size_t>(std::llround(t_end / h));
  RiccatiTrajectory tr;
  tr.h = h;
  tr.t.reserve(steps + 1);
  tr.U.reserve(steps + 1);
  tr.J.reserve(steps + 1);
  tr.log_sv.reserve(steps + 1);

  auto record = [&](double t, const Mat& u, const Mat& j) {
    tr.t.push_back(t);
    tr.U.push_back(u);
    tr.J.push_back(j);
    Eigen::JacobiSVD<Mat> svd(j);
    tr.log_sv.push_back(svd.singularValues().array().log().matrix());
  };

  Mat u = u0;
  Mat j = Mat::Identity(m, m);
  record(0.0, u, j);
  for (size_t i = 0; i < steps; ++i) {
    double t = static_cast<double>(i) * h;
    // breakpoints sit on the grid, so one piece covers the whole step
    const Mat& r = field.at(t + 0.5 * h);
    auto fu = [&](const Mat& x) -> Mat { return -(x * x) - r; };

    Mat k1u = fu(u), k1j = j * u;
    Mat u2 = u + 0.5 * h * k1u, j2 = j + 0.5 * h * k1j;
    Mat k2u = fu(u2), k2j = j2 * u2;
    Mat u3 = u + 0.5 * h * k2u, j3 = j + 0.5 * h * k2j;
    Mat k3u = fu(u3), k3j = j3 * u3;
    Mat u4 = u + h * k3u, j4 = j + h * k3j;
    Mat k4u = fu(u4), k4j = j4 * u4;
    u = symmetrized(u + (h / 6.0) * (k1u + 2.0 * k2u + 2.0 * k3u + k4u));
    j = j + (h / 6.0) * (k1j + 2.0 * k2j + 2.0 * k3j + k4j);

    double t_next = static_cast<double>(i + 1) * h;
    double norm = u.norm();
    if (!std::isfinite(norm) || norm > kBlowUp) {
      std::ostringstream msg;
      msg << "Riccati solution blew up at t = " << t_next << " (|U| = " << norm << ")";
      throw BlowUpError(t_next, msg.str());
    }
    record(t_next, u, j);
  }
  return tr;
}

CheckReport invariant_region_check(const RiccatiTrajectory& traj, double delta) {
  CheckReport rep{"invariant_region", true, -INFINITY, ""};
  double lo = std::sqrt(-delta);
  size_t worst_at = 0;
  for (size_t i = 0; i < traj.U.size(); ++i) {
    Eigen::SelfAdjointEigenSolver<Mat> es(traj.U[i], Eigen::EigenvaluesOnly);
    const auto& ev = es.eigenvalues();
    double excursion = std::max(lo - ev.minCoeff(), ev.maxCoeff() - 1.0);
    if (excursion > rep.worst) {
      rep.worst = excursion;
      worst_at = i;
    }
  }
  rep.pass = rep.worst <= kRegionTol;
  std::ostringstream d;
  d << "worst excursion " << rep.worst << " at t = " << traj.t[worst_at];
  rep.detail = d.str();
  return rep;
}

CheckReport contraction_inequality_check(const RiccatiTrajectory& traj, int n, const Scalar& delta, int k,
                                         const Scalar& p) {
  if (n - 1 != traj.dim()) throw Error(Errc::domain, "trajectory dimension must be n-1");
  if (k < 1 || k > traj.dim()) throw Error(Errc::degree_out_of_range, "k must lie in 1..n-1");
  double eta = eta_exponent(PinchedClass(n, delta), k, p).eta.to_double();
  double pd = p.to_double();
  CheckReport rep{"contraction_inequality", true, -INFINITY, ""};
  size_t worst_at = 0;
  for (size_t i = 0; i < traj.t.size(); ++i) {
    double gap = traj.n_k_p(i, k, pd) + eta * traj.t[i];
    if (gap > rep.worst) {
      rep.worst = gap;
      worst_at = i;
    }
  }
  rep.pass = rep.worst <= kContractionTol;
  std::ostringstream d;
  d << "k = " << k << ", p = " << p.to_string() << ", eta = " << eta << ", worst n + eta t = " << rep.worst
    << " at t = " << traj.t[worst_at];
  rep.detail = d.str();
  return rep;
}

CheckReport liouville_check(const RiccatiTrajectory& traj) {
  CheckReport rep{"liouville", true, 0.0, ""};
  double integral = 0.0;
  double h = traj.h;
  for (size_t i = 2; i < traj.t.size(); i += 2) {
    integral += h / 3.0 * (traj.U[i - 2].trace() + 4.0 * traj.U[i - 1].trace() + traj.U[i].trace());
    rep.worst = std::max(rep.worst, std::abs(traj.log_det(i) - integral));
  }
  for (const auto& j : traj.J)
    if (j.determinant() <= 0.0) {
      rep.pass = false;
      rep.detail = "det J changed sign";
      return rep;
    }
  rep.pass = rep.worst <= kLiouvilleTol;
  std::ostringstream d;
  d << "max |log det J - int tr U| = " << rep.worst;
  rep.detail = d.str();
  return rep;
}

}  // namespace lpt

namespace lpt {

namespace {

void fold(std::vector<CheckReport>& acc, const CheckReport& c) {
  for (auto& a : acc)
    if (a.name == c.name) {
      if (c.worst > a.worst) {
        a.worst = c.worst;
        a.detail = c.detail;
      }
      a.pass = a.pass && c.pass;
      return;
    }
  acc.push_back(c);
}

}  // namespace

RiccatiBatchReport riccati_batch(const RiccatiBatchConfig& cfg) {
  if (cfg.dims.empty() || cfg.deltas.empty() || cfg.count < 1) throw Error(Errc::domain, "empty batch");
  RiccatiBatchReport rep;
  for (int i = 0; i < cfg.count; ++i) {
    int m = cfg.dims[static_cast<size_t>(i) % cfg.dims.size()];
    const Scalar& delta = cfg.deltas[(static_cast<size_t>(i) / cfg.dims.size()) % cfg.deltas.size()];
    RiccatiFieldResult fr;
    fr.m = m;
    fr.delta = delta.to_string();
    fr.seed = cfg.seed + static_cast<std::uint64_t>(i);
    double d = delta.to_double();
    auto field = CurvatureField::random_piecewise(m, d, cfg.t_end, fr.seed);
    auto traj = riccati_integrate(field, Mat::Identity(m, m), cfg.t_end, cfg.h);
    fr.checks.push_back(invariant_region_check(traj, d));
    fr.checks.push_back(liouville_check(traj));
    int n = m + 1;
    PinchedClass cls(n, delta);
    for (int k = 1; k < m; ++k) {
      Scalar q = q_bound(cls, k);
      for (const Scalar& p : {(Scalar(1) + q) / Scalar(2), q}) {
        CheckReport c = contraction_inequality_check(traj, n, delta, k, p);
        c.name = p == q ? "contraction_limit" : "contraction";
        fr.checks.push_back(c);
      }
    }
    for (const auto& c : fr.checks) fold(rep.checks, c);
    rep.fields.push_back(std::move(fr));
  }

  // constant curvature -1: n_k_p(t) = (kp - m) t = -eta t exactly
  int m = 3, n = 4;
  auto traj = riccati_integrate(CurvatureField::constant(-Mat::Identity(m, m)), Mat::Identity(m, m), cfg.t_end, cfg.h);
  CheckReport sharp{"sharpness", true, 0.0, ""};
  for (int k = 1; k < m; ++k) {
    Scalar p = (Scalar(1) + q_bound(n, Scalar(1), k)) / Scalar(2);
    double eta = eta_exponent(PinchedClass(n, Scalar(-1)), k, p).eta.to_double();
    for (size_t i = 0; i < traj.t.size(); ++i)
      sharp.worst = std::max(sharp.worst, std::abs(traj.n_k_p(i, k, p.to_double()) + eta * traj.t[i]));
  }
  sharp.pass = sharp.worst <= kContractionTol;
  sharp.detail = "max |n_k_p(t) + eta t| for R = -I, delta = -1";
  rep.checks.push_back(sharp);
  return rep;
}

}  // namespace lpt
