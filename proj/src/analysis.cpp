#include "lptorsion/analysis.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <boost/math/constants/constants.hpp>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <sstream>

#include "lptorsion/error.hpp"

namespace lpt {

namespace {

constexpr double kPi = boost::math::constants::pi<double>();

double smooth_step_piece(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }
double smooth_step_piece_deriv(double t) { return t > 0.0 ? std::exp(-1.0 / t) / (t * t) : 0.0; }

// 0 for t <= 0, 1 for t >= 1
double smooth_step(double t) {
  double f = smooth_step_piece(t), g = smooth_step_piece(1.0 - t);
  return f / (f + g);
}

double smooth_step_deriv(double t) {
  double f = smooth_step_piece(t), g = smooth_step_piece(1.0 - t);
  double df = smooth_step_piece_deriv(t), dg = smooth_step_piece_deriv(1.0 - t);
  double s = f + g;
  return (df * g + f * dg) / (s * s);
}

double sgn(double x) { return x < 0.0 ? -1.0 : 1.0; }

std::string fmt(double x) {
  std::ostringstream o;
  o.precision(6);
  o << x;
  return o.str();
}

}  // namespace

double bump(double x) { return smooth_step(2.0 * (1.0 - std::abs(x))); }

double bump_derivative(double x) { return -2.0 * sgn(x) * smooth_step_deriv(2.0 * (1.0 - std::abs(x))); }

TestFunctionFamily::TestFunctionFamily(double p, double j) : p_(p), q_(p / (p - 1.0)), j_(j) {
  if (!(p > 1.0)) throw Error(Errc::domain, "p must exceed 1");
  if (!(j >= 1.0)) throw Error(Errc::domain, "j must be at least 1");
}

double TestFunctionFamily::a(double x) const {
  double ax = std::abs(x);
  if (ax < M_E) return (1.0 - bump(x)) * std::exp(-1.0 / p_);
  double l = std::log(ax);
  return std::exp(-l / p_) / l;
}

double TestFunctionFamily::da(double x) const {
  double ax = std::abs(x);
  if (ax < M_E) return -bump_derivative(x) * std::exp(-1.0 / p_);
  double l = std::log(ax);
  return -sgn(x) * std::exp(-l / p_) / (ax * l) * (1.0 / p_ + 1.0 / l);
}

double TestFunctionFamily::v(double x) const {
  double ax = std::abs(x);
  if (ax <= 1.0) return 2.0 * (1.0 - bump(x)) * std::exp(-j_ / q_);
  double l = std::log(ax);
  if (l <= j_) return 2.0 * std::exp(-j_ / q_);
  if (l <= 2.0 * j_) return 2.0 * j_ * std::exp(-l / q_) / l;
  if (l >= log_support_end()) return 0.0;
  // j + 1 - j e^{-2j} |x|, written to keep precision near the end of the support
  double lin = 1.0 - j_ * std::expm1(l - 2.0 * j_);
  return std::exp(-2.0 * j_ / q_) * std::max(lin, 0.0);
}

double TestFunctionFamily::dv(double x) const {
  double ax = std::abs(x);
  if (ax <= 1.0) return -2.0 * bump_derivative(x) * std::exp(-j_ / q_);
  double l = std::log(ax);
  if (l <= j_) return 0.0;
  if (l <= 2.0 * j_) return -sgn(x) * 2.0 * j_ * std::exp(-l / q_) / (ax * l) * (1.0 / q_ + 1.0 / l);
  if (l >= log_support_end()) return 0.0;
  return -sgn(x) * std::exp(-2.0 * j_ / q_) * j_ * std::exp(-2.0 * j_);
}

double fit_decay_rate(const std::vector<double>& j, const std::vector<double>& q) {
  if (j.size() != q.size() || j.size() < 3) throw Error(Errc::domain, "rate fit needs at least three points");
  Eigen::MatrixXd a(static_cast<Eigen::Index>(j.size()), 3);
  Eigen::VectorXd b(static_cast<Eigen::Index>(j.size()));
  for (size_t i = 0; i < j.size(); ++i) {
    if (!(q[i] > 0.0)) throw Error(Errc::domain, "rate fit needs positive values");
    auto r = static_cast<Eigen::Index>(i);
    a(r, 0) = 1.0;
    a(r, 1) = std::log(j[i]);
    a(r, 2) = -j[i];
    b(r) = std::log(q[i]);
  }
  Eigen::VectorXd c = a.colPivHouseholderQr().solve(b);
  return c(2);
}

namespace {

// Integrals of a family over its natural pieces (plateau, middle, tail), on x > 0.
struct Pieces {
  const TestFunctionFamily& f;
  const QuadratureGrid& grid;

  using Fn = std::function<double(double)>;
  // [1/2, 1] where the cutoff moves, [1, e], then [e, e^j] in log coordinates
  double plateau(const Fn& g) const {
    return grid.integrate(g, 0.5, 1.0) + grid.integrate(g, 1.0, M_E) + grid.integrate_log_bounds(g, 1.0, f.j());
  }
  double mid(const Fn& g) const { return grid.integrate_log_bounds(g, f.j(), 2.0 * f.j()); }
  double tail(const Fn& g) const { return grid.integrate_log_bounds(g, 2.0 * f.j(), f.log_support_end()); }
  double all(const Fn& g) const { return plateau(g) + mid(g) + tail(g); }
};

double half_line_pairing(const TestFunctionFamily& fam, const QuadratureGrid& grid) {
  Pieces pc{fam, grid};
  return pc.all([&](double x) { return fam.a(x) * fam.v(x); });
}

double max_branch_jump(const TestFunctionFamily& fam) {
  double j = fam.j(), q = fam.p_conj();
  // each branch formula evaluated at the shared endpoint
  double plateau_end = 2.0 * std::exp(-j / q);
  double mid_start = 2.0 * j * std::exp(-j / q) / j;
  double mid_end = 2.0 * j * std::exp(-2.0 * j / q) / (2.0 * j);
  double tail_start = std::exp(-2.0 * j / q);
  double tail_end = std::exp(-2.0 * j / q) * (1.0 - j * std::expm1(std::log1p(1.0 / j)));
  double a_inner = std::exp(-1.0 / fam.p());
  double a_outer = std::exp(-1.0 / fam.p()) / std::log(M_E);
  return std::max({std::abs(plateau_end - mid_start) / plateau_end, std::abs(mid_end - tail_start) / tail_start,
                   std::abs(tail_end) / tail_start, std::abs(a_inner - a_outer) / a_inner});
}

bool nonincreasing_on_ray(const TestFunctionFamily& fam) {
  const int samples = 10000;
  double top = fam.log_support_end() + 0.1;
  double prev_a = fam.a(1.0), prev_v = fam.v(1.0);
  for (int i = 1; i <= samples; ++i) {
    double x = std::exp(top * i / samples);
    double av = fam.a(x), vv = fam.v(x);
    if (av > prev_a * (1.0 + 1e-13) || vv > prev_v * (1.0 + 1e-13) + 1e-300) return false;
    prev_a = av;
    prev_v = vv;
  }
  return true;
}

CheckReport make_check(std::string name, bool pass, double worst, std::string detail) {
  return CheckReport{std::move(name), pass, worst, std::move(detail)};
}

}  // namespace

LemmaRReport lemma_r_report(double p, const std::vector<int>& j_list, int n, const QuadratureGrid& grid) {
  if (!(p > 1.0 && p <= 4.0)) throw Error(Errc::domain, "family lab needs p in (1, 4]");
  if (n < 2) throw Error(Errc::domain, "weighted norms need n >= 2");
  if (j_list.empty()) throw Error(Errc::domain, "empty j list");
  for (int j : j_list)
    if (j < 3 || j > 60) throw Error(Errc::domain, "j must lie in [3, 60]");
  std::vector<int> js = j_list;
  std::sort(js.begin(), js.end());
  js.erase(std::unique(js.begin(), js.end()), js.end());

  LemmaRReport rep;
  rep.p = p;
  rep.p_conj = p / (p - 1.0);
  rep.n = n;
  rep.eps = 1.0 / (n - 1);
  const double q = rep.p_conj, eps = rep.eps;

  rep.calibration_error = grid.calibration_error(60.0);
  for (int j : js) rep.calibration_error = std::max(rep.calibration_error, grid.calibration_error(j));
  if (rep.calibration_error >= 1e-8)
    throw Error(Errc::quadrature, "quadrature calibration failed (error " + fmt(rep.calibration_error) + ")");

  // int_R |s a'(s)|^p: the cutoff region by direct quadrature, and beyond e in
  // sigma = log s, where |s a'|^p ds = sigma^{-p} (1/p + 1/sigma)^p dsigma
  TestFunctionFamily fam0(p, 3.0);
  double cut = grid.integrate([&](double x) { return std::pow(std::abs(x * fam0.da(x)), p); }, 0.5, 1.0);
  boost::math::quadrature::exp_sinh<double> es;
  double far = es.integrate([p](double s) { return std::pow(s, -p) * std::pow(1.0 / p + 1.0 / s, p); }, 1.0,
                            std::numeric_limits<double>::infinity());
  double sa_prime = 2.0 * (cut + far);

  for (int j : js) {
    TestFunctionFamily fam(p, j);
    Pieces pc{fam, grid};
    LemmaRRow row;
    row.j = j;
    auto av = [&](double x) { return fam.a(x) * fam.v(x); };
    auto vq = [&](double x) { return std::pow(std::abs(fam.v(x)), q); };
    auto dvq = [&](double x) { return std::pow(std::abs(fam.dv(x)), q); };
    auto svq = [&](double x) { return std::pow(std::abs(std::pow(x, -eps) * fam.v(x)), q); };
    auto sdvq = [&](double x) { return std::pow(std::abs(std::pow(x, 1.0 - eps) * fam.dv(x)), q); };

    row.pairing_main = pc.mid(av);
    row.pairing = pc.all(av);
    row.plateau_norm = pc.plateau(vq);
    row.norm = row.plateau_norm + pc.mid(vq) + pc.tail(vq);
    row.sup_norm = fam.v(1.0);
    row.dv_plateau = grid.integrate(dvq, 0.5, 1.0);
    row.dv_mid = pc.mid(dvq);
    row.dv_tail = pc.tail(dvq);
    row.sv_low = pc.plateau(svq);
    row.sv_mid = pc.mid(svq);
    row.sv_tail = pc.tail(svq);
    row.sdv_plateau = grid.integrate(sdvq, 0.5, 1.0);
    row.sdv_mid = pc.mid(sdvq);
    row.sdv_tail = pc.tail(sdvq);
    row.sa_prime = sa_prime;
    row.max_jump = max_branch_jump(fam);
    row.monotone = nonincreasing_on_ray(fam);
    rep.rows.push_back(row);
  }

  rep.norm_slope_analytic = std::pow(2.0, q) * (1.0 - std::pow(2.0, 1.0 - q)) / (q - 1.0);
  for (size_t i = 1; i < rep.rows.size(); ++i)
    rep.norm_slopes.push_back((rep.rows[i].norm - rep.rows[i - 1].norm) / (rep.rows[i].j - rep.rows[i - 1].j));

  if (rep.rows.size() >= 3) {
    std::vector<double> jj;
    for (const auto& r : rep.rows) jj.push_back(r.j);
    auto add_fit = [&](const char* name, double analytic, double LemmaRRow::*field) {
      std::vector<double> vals;
      for (const auto& r : rep.rows) vals.push_back(r.*field);
      RateFit f{name, analytic, fit_decay_rate(jj, vals), false};
      f.pass = std::abs(f.fitted - analytic) <= 0.15 * analytic;
      rep.fits.push_back(f);
    };
    add_fit("dv_plateau", 1.0, &LemmaRRow::dv_plateau);
    add_fit("dv_mid", q, &LemmaRRow::dv_mid);
    add_fit("dv_tail", 2.0 * q, &LemmaRRow::dv_tail);
    add_fit("sv_low", std::min(1.0, eps * q), &LemmaRRow::sv_low);
    add_fit("sv_mid", eps * q, &LemmaRRow::sv_mid);
    add_fit("sv_tail", 2.0 * eps * q, &LemmaRRow::sv_tail);
    add_fit("sdv_plateau", 1.0, &LemmaRRow::sdv_plateau);
    add_fit("sdv_mid", eps * q, &LemmaRRow::sdv_mid);
    add_fit("sdv_tail", 2.0 * eps * q, &LemmaRRow::sdv_tail);
    add_fit("sup_norm", 1.0 / q, &LemmaRRow::sup_norm);
  }

  // checks
  rep.checks.push_back(make_check("calibration", rep.calibration_error < 1e-8, rep.calibration_error,
                                  "relative error of the closed-form calibration integral"));
  double main_err = 0, plateau_err = 0, jump = 0;
  bool monotone = true, pairing_ok = true;
  double target = std::pow(2.0, q);
  for (size_t i = 0; i < rep.rows.size(); ++i) {
    const auto& r = rep.rows[i];
    main_err = std::max(main_err, std::abs(r.pairing_main - 1.0));
    plateau_err = std::max(plateau_err, std::abs(r.plateau_norm - target) / target);
    jump = std::max(jump, r.max_jump);
    monotone = monotone && r.monotone;
    if (r.pairing < 0.9) pairing_ok = false;
    if (i > 0 && !(r.pairing - 1.0 < rep.rows[i - 1].pairing - 1.0)) pairing_ok = false;
  }
  rep.checks.push_back(make_check("pairing_main", main_err <= 1e-6, main_err, "int_{e^j}^{e^{2j}} a v_j = 1"));
  {
    std::string d = "int_0^inf a v_j per j:";
    for (const auto& r : rep.rows) d += " " + fmt(r.pairing);
    rep.checks.push_back(make_check("pairing_bounded_below", pairing_ok, rep.rows.back().pairing,
                                    d + " (>= 0.9, excess over 1 decreasing in j)"));
  }
  rep.checks.push_back(make_check("plateau_norm", plateau_err <= 0.01, plateau_err, "relative gap to 2^{p'}"));
  if (!rep.norm_slopes.empty()) {
    auto [lo, hi] = std::minmax_element(rep.norm_slopes.begin(), rep.norm_slopes.end());
    double spread = (*hi - *lo) / *lo;
    rep.checks.push_back(make_check("norm_linear_growth", *lo > 0 && spread <= 0.2, spread,
                                    "spread of finite-difference slopes of int |v_j|^{p'}; analytic slope " +
                                        fmt(rep.norm_slope_analytic)));
  }
  for (const auto& f : rep.fits) {
    double rel = std::abs(f.fitted - f.analytic) / f.analytic;
    rep.checks.push_back(make_check("decay_" + f.name, f.pass, rel,
                                    "fitted rate " + fmt(f.fitted) + " vs " + fmt(f.analytic)));
  }
  rep.checks.push_back(make_check("continuity", jump < 1e-10, jump, "relative jump at branch points"));
  rep.checks.push_back(make_check("monotone", monotone, monotone ? 0.0 : 1.0, "a and v_j nonincreasing on [1, inf)"));
  rep.checks.push_back(make_check("sa_prime_finite", std::isfinite(sa_prime), sa_prime, "int_R |s a'(s)|^p"));
  return rep;
}

RadialReport tpknonnul_radial_check(double p, const std::vector<int>& j_list, const QuadratureGrid& grid) {
  if (!(p > 1.0)) throw Error(Errc::domain, "p must exceed 1");
  if (j_list.empty()) throw Error(Errc::domain, "empty j list");
  std::vector<int> js = j_list;
  std::sort(js.begin(), js.end());
  js.erase(std::unique(js.begin(), js.end()), js.end());
  RadialReport rep;
  rep.p = p;
  rep.n = 4;
  double q = p / (p - 1.0);
  rep.inner_rate_analytic = 1.0 / q;

  for (int j : js) {
    if (j < 3 || j > 60) throw Error(Errc::domain, "j must lie in [3, 60]");
    TestFunctionFamily fam(p, j);
    // w_j''(r^2) = -(1/2) r^{-3} u(r^3) + (3/2) u'(r^3)
    auto integrand = [&](double r) {
      double r3 = r * r * r;
      double w2 = -0.5 * fam.v(r3) / r3 + 1.5 * fam.dv(r3);
      return r * fam.a(r3) * w2 * r * r * r * r;
    };
    RadialRow row;
    row.j = j;
    // branch points of r^3 in log r: e, e^j, e^{2j}, end of support
    double l1 = 1.0 / 3.0, l2 = j / 3.0, l3 = 2.0 * j / 3.0, l4 = fam.log_support_end() / 3.0;
    row.outer = grid.integrate_log_bounds(integrand, 0.0, l1) + grid.integrate_log_bounds(integrand, l1, l2) +
                grid.integrate_log_bounds(integrand, l2, l3) + grid.integrate_log_bounds(integrand, l3, l4);
    row.inner = grid.integrate(integrand, std::cbrt(0.5), 1.0);

    auto av = [&](double x) { return fam.a(x) * fam.v(x); };
    double half = half_line_pairing(fam, grid);
    double from_one = half - grid.integrate(av, 0.5, 1.0);
    row.quarter_pairing = 0.25 * 2.0 * half;
    row.jacobian_bound = from_one / 6.0;
    rep.rows.push_back(row);
  }

  bool lower_ok = true, away_ok = true, corrected_ok = true;
  double lower_worst = INFINITY, away_worst = INFINITY, corrected_worst = INFINITY;
  std::string lower_detail;
  for (const auto& r : rep.rows) {
    double margin = std::abs(r.outer) - (0.9 * r.quarter_pairing - 0.05);
    lower_worst = std::min(lower_worst, margin);
    lower_ok = lower_ok && margin >= 0;
    lower_detail += " j=" + std::to_string(r.j) + ": |outer| " + fmt(std::abs(r.outer)) + " vs " +
                    fmt(0.9 * r.quarter_pairing - 0.05) + ";";
    away_worst = std::min(away_worst, r.quarter_pairing);
    away_ok = away_ok && r.quarter_pairing >= 0.2;
    double cm = std::abs(r.outer) - r.jacobian_bound;
    corrected_worst = std::min(corrected_worst, cm);
    corrected_ok = corrected_ok && cm >= 0;
  }
  rep.checks.push_back(make_check("lower_bound_quarter_pairing", lower_ok, lower_worst,
                                  "|int_1^inf f w'' r^4| >= 0.9 (1/4) int_R a u_j - 0.05:" + lower_detail));
  rep.checks.push_back(make_check("pairing_away_from_zero", away_ok, away_worst, "(1/4) int_R a u_j >= 0.2"));
  rep.checks.push_back(make_check("lower_bound_with_jacobian", corrected_ok, corrected_worst,
                                  "|int_1^inf f w'' r^4| >= (1/6) int_1^inf a u_j"));

  // the inner integral is exactly proportional to e^{-j/p'}
  if (rep.rows.size() >= 2) {
    const auto& a = rep.rows.front();
    const auto& b = rep.rows.back();
    rep.inner_rate_fitted = std::log(std::abs(a.inner) / std::abs(b.inner)) / (b.j - a.j);
    double rel = std::abs(rep.inner_rate_fitted - rep.inner_rate_analytic) / rep.inner_rate_analytic;
    rep.checks.push_back(make_check("inner_decay_rate", rel <= 0.15, rel,
                                    "rate " + fmt(rep.inner_rate_fitted) + " vs 1/p' = " + fmt(rep.inner_rate_analytic)));
  }
  double late_inner = 0;
  for (const auto& r : rep.rows)
    if (r.j >= 20) late_inner = std::max(late_inner, std::abs(r.inner));
  rep.checks.push_back(make_check("inner_small", late_inner <= 1e-3, late_inner, "|int_0^1 f w'' r^4| for j >= 20"));
  return rep;
}

double kunneth_profile(double xi) {
  double ax = std::abs(xi);
  if (ax >= 0.25 || ax == 0.0) return 0.0;
  double l = -std::log(ax);
  return bump(4.0 * xi) / std::sqrt(l);
}

namespace {

struct KunnethCore {
  std::vector<DivergenceRow> divergence;
  std::vector<AnnulusRow> annuli;
};

KunnethCore kunneth_core(const std::vector<double>& eps_list, int annuli, const QuadratureGrid& grid) {
  KunnethCore out;
  auto integrand = [](double xi) {
    double a = kunneth_profile(xi);
    return a * a / (xi * xi);
  };
  for (double e : eps_list) {
    DivergenceRow d;
    d.eps = e;
    d.integral = grid.integrate_log(integrand, e, 0.125);
    d.integral_half = grid.integrate_log(integrand, e / 2, 0.125);
    d.ratio = d.integral_half / d.integral;
    out.divergence.push_back(d);
  }

  boost::math::quadrature::tanh_sinh<double> ts;
  const double ln2 = std::log(2.0);
  double sum_x = 0, sum_upper = 0;
  for (int i = 0; i < annuli; ++i) {
    int m = 3 + i;
    double t0 = m * ln2, t1 = (m + 1) * ln2;
    // in t = log(1/rho) and theta, d xi d eta / rho^2 ... collapses to dt dtheta
    auto quadrant = [&](bool x_component) {
      return grid.integrate(
          [&](double t) {
            double rho = std::exp(-t);
            auto f = [&](double th) {
              double c = std::cos(th), s = std::sin(th);
              double ax = kunneth_profile(rho * c), ay = kunneth_profile(rho * s);
              double w = x_component ? c * c : s * s;
              return w * ax * ax * ay * ay;
            };
            return ts.integrate(f, 0.0, kPi / 2);
          },
          t0, t1);
    };
    AnnulusRow row;
    row.log2_outer = -m;
    row.gamma_x = 4.0 * quadrant(true);
    row.gamma_y = 4.0 * quadrant(false);
    row.upper = 2.0 * kPi * grid.integrate([](double t) { return 1.0 / (t * t); }, t0, t1);
    sum_x += row.gamma_x;
    sum_upper += row.upper;
    row.sum_x = sum_x;
    row.sum_upper = sum_upper;
    out.annuli.push_back(row);
  }
  return out;
}

}  // namespace

KunnethReport kunneth_counterexample_report(const std::vector<double>& eps_list, int annuli,
                                            const QuadratureGrid& grid) {
  if (eps_list.empty()) throw Error(Errc::domain, "empty eps list");
  for (size_t i = 0; i < eps_list.size(); ++i) {
    double e = eps_list[i];
    if (!(e > 0.0 && e <= 0.125)) throw Error(Errc::domain, "eps must lie in (0, 1/8]");
    if (i > 0 && !(e < eps_list[i - 1])) throw Error(Errc::domain, "eps list must be strictly decreasing");
  }
  if (eps_list.back() < 1e-8) throw Error(Errc::domain, "smallest eps must be at least 1e-8");
  if (annuli < 4) throw Error(Errc::domain, "need at least four annuli");

  KunnethCore base = kunneth_core(eps_list, annuli, grid);
  KunnethCore fine = kunneth_core(eps_list, annuli, grid.refined());
  auto unstable = [](double x, double y) { return std::abs(x - y) > 1e-6 * std::max(std::abs(x), std::abs(y)); };
  for (size_t i = 0; i < base.divergence.size(); ++i)
    if (unstable(base.divergence[i].integral_half, fine.divergence[i].integral_half) ||
        unstable(base.divergence[i].integral, fine.divergence[i].integral))
      throw Error(Errc::quadrature, "divergence integral unstable under refinement; use a finer grid");
  if (unstable(base.annuli.back().sum_x, fine.annuli.back().sum_x))
    throw Error(Errc::quadrature, "annulus sums unstable under refinement; use a finer grid");

  KunnethReport rep;
  rep.divergence = base.divergence;
  rep.annuli = base.annuli;
  const double ln2 = std::log(2.0);
  rep.upper_limit = 2.0 * kPi / (3.0 * ln2);
  rep.upper_closed_form = 2.0 * kPi * (1.0 / (3.0 * ln2) - 1.0 / ((3.0 + annuli) * ln2));

  const auto& last = rep.divergence.back();
  rep.checks.push_back(make_check("divergence_ratio", last.ratio >= 1.8 && last.ratio <= 2.2, last.ratio,
                                  "I(eps/2)/I(eps) at eps = " + fmt(last.eps)));

  bool shrinking = true;
  double bound_worst = -INFINITY, sym_worst = 0;
  for (size_t i = 0; i < rep.annuli.size(); ++i) {
    const auto& a = rep.annuli[i];
    if (i > 0 && !(a.gamma_x < rep.annuli[i - 1].gamma_x)) shrinking = false;
    bound_worst = std::max(bound_worst, a.gamma_x - a.upper);
    sym_worst = std::max(sym_worst, std::abs(a.gamma_x - a.gamma_y) / a.gamma_x);
  }
  size_t n = rep.annuli.size();
  double cauchy = rep.annuli[n - 1].sum_x - rep.annuli[n - 4].sum_x;
  rep.checks.push_back(make_check("annuli_shrink", shrinking, 0.0, "annulus contributions strictly decreasing"));
  rep.checks.push_back(make_check("cauchy_tail", cauchy < 1e-3, cauchy, "partial sums over the last three annuli"));
  rep.checks.push_back(make_check("pointwise_bound", bound_worst <= 0.0, bound_worst,
                                  "annulus integral minus the log(1/rho)^{-2} rho^{-2} bound"));
  double up_rel = std::abs(rep.annuli.back().sum_upper - rep.upper_closed_form) / rep.upper_closed_form;
  double lim_rel = std::abs(rep.annuli.back().sum_upper - rep.upper_limit) / rep.upper_limit;
  rep.checks.push_back(make_check("upper_antiderivative", up_rel <= 0.05 && lim_rel <= 0.05, std::max(up_rel, lim_rel),
                                  "upper-bound sums vs 2 pi [1/log(1/rho)] from 1/8"));
  rep.checks.push_back(make_check("symmetry", sym_worst <= 1e-9, sym_worst, "gamma_y annuli match gamma_x"));
  return rep;
}

}  // namespace lpt
