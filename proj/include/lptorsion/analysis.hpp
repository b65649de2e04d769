#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "lptorsion/check.hpp"
#include "lptorsion/quadrature.hpp"

namespace lpt {

// Smooth even cutoff: 1 on [-1/2, 1/2], 0 outside (-1, 1), built from
// exp(-1/t) transitions.
double bump(double x);
double bump_derivative(double x);

// The test pair (a, v_j) on the line for exponent p, with p' = p/(p-1).
//   a(x)   = (1 - bump) e^{-1/p}                    for |x| < e
//          = |x|^{-1/p} / log|x|                     for |x| >= e
//   v_j(x) = 2 (1 - bump) e^{-j/p'}                  for |x| <= e^j
//          = 2j |x|^{-1/p'} / log|x|                 for e^j <= |x| <= e^{2j}
//          = e^{-2j/p'} (j + 1 - j e^{-2j} |x|)      up to e^{2j}(1 + 1/j)
// Both are continuous, even, and nonincreasing on [1, inf).
class TestFunctionFamily {
 public:
  TestFunctionFamily(double p, double j);

  double p() const { return p_; }
  double p_conj() const { return q_; }
  double j() const { return j_; }
  double log_support_end() const { return 2.0 * j_ + std::log1p(1.0 / j_); }

  double a(double x) const;
  double da(double x) const;
  double v(double x) const;
  double dv(double x) const;

 private:
  double p_, q_, j_;
};

struct LemmaRRow {
  int j = 0;
  double pairing_main = 0;   // int_{e^j}^{e^{2j}} a v_j
  double pairing = 0;        // int_0^inf a v_j
  double plateau_norm = 0;   // int_0^{e^j} |v_j|^{p'}
  double norm = 0;           // int_0^inf |v_j|^{p'}
  double sup_norm = 0;
  // pieces of int |v_j'|^{p'}, int |s^{-eps} v_j|^{p'}, int |s^{1-eps} v_j'|^{p'}
  double dv_plateau = 0, dv_mid = 0, dv_tail = 0;
  double sv_low = 0, sv_mid = 0, sv_tail = 0;
  double sdv_plateau = 0, sdv_mid = 0, sdv_tail = 0;
  double sa_prime = 0;  // int_R |s a'(s)|^p
  double max_jump = 0;  // continuity defect at the branch points
  bool monotone = true;
};

struct RateFit {
  std::string name;
  double analytic = 0;  // predicted r in Q ~ j^c e^{-r j}
  double fitted = 0;
  bool pass = false;
};

struct LemmaRReport {
  double p = 0, p_conj = 0, eps = 0;
  int n = 4;
  double calibration_error = 0;
  std::vector<LemmaRRow> rows;
  std::vector<double> norm_slopes;  // (N(j_{i+1}) - N(j_i)) / (j_{i+1} - j_i)
  double norm_slope_analytic = 0;
  std::vector<RateFit> fits;
  std::vector<CheckReport> checks;
};

// eps = 1/(n-1) for the weighted norms.
LemmaRReport lemma_r_report(double p, const std::vector<int>& j_list, int n = 4,
                            const QuadratureGrid& grid = QuadratureGrid());

// Least squares fit of log Q = c + a log j - r j; returns r.
double fit_decay_rate(const std::vector<double>& j, const std::vector<double>& q);

struct RadialRow {
  int j = 0;
  double outer = 0;            // int_1^inf f(r) w_j''(r^2) r^4 dr
  double inner = 0;            // int_0^1 of the same integrand
  double quarter_pairing = 0;  // (1/4) int_R a u_j
  double jacobian_bound = 0;   // (1/6) int_1^inf a u_j
};

struct RadialReport {
  double p = 0;
  int n = 4;
  std::vector<RadialRow> rows;
  double inner_rate_analytic = 0;
  double inner_rate_fitted = 0;
  std::vector<CheckReport> checks;
};

// Radial reduction for H = R^3: f(r) = r a(r^3), w_j' (s) = s^{-1/2} u_j(s^{3/2}).
RadialReport tpknonnul_radial_check(double p, const std::vector<int>& j_list,
                                    const QuadratureGrid& grid = QuadratureGrid());

// Fourier profile: equal to log(1/|xi|)^{-1/2} for |xi| <= 1/8, cut off by
// bump(4 xi) so that it vanishes for |xi| >= 1/4.
double kunneth_profile(double xi);

struct DivergenceRow {
  double eps = 0;
  double integral = 0;       // I(eps) = int_eps^{1/8} |a(xi)/xi|^2
  double integral_half = 0;  // I(eps/2)
  double ratio = 0;
};

struct AnnulusRow {
  double log2_outer = 0;  // annulus is 2^{-m-1} <= rho <= 2^{-m}, this is -m
  double gamma_x = 0;     // int |gamma_x|^2 over the annulus
  double gamma_y = 0;
  double upper = 0;       // int log(1/rho)^{-2} rho^{-2}
  double sum_x = 0;
  double sum_upper = 0;
};

struct KunnethReport {
  std::vector<DivergenceRow> divergence;
  std::vector<AnnulusRow> annuli;
  double upper_closed_form = 0;  // 2 pi (1/log 8 - 1/log(1/rho_min))
  double upper_limit = 0;        // 2 pi / log 8
  std::vector<CheckReport> checks;
};

KunnethReport kunneth_counterexample_report(const std::vector<double>& eps_list, int annuli = 200,
                                            const QuadratureGrid& grid = QuadratureGrid());

}  // namespace lpt
