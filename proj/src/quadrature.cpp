#include "lptorsion/quadrature.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <cmath>

#include "lptorsion/error.hpp"

namespace lpt {

using Rule = boost::math::quadrature::gauss<double, 20>;

QuadratureGrid::QuadratureGrid(double panel) : panel_(panel) {
  if (!(panel > 0.0)) throw Error(Errc::domain, "panel width must be positive");
}

double QuadratureGrid::integrate(const std::function<double(double)>& f, double a, double b) const {
  if (b <= a) return 0.0;
  auto panels = static_cast<long>(std::ceil((b - a) / panel_));
  double w = (b - a) / static_cast<double>(panels);
  double sum = 0.0;
  for (long i = 0; i < panels; ++i) {
    double lo = a + static_cast<double>(i) * w;
    sum += Rule::integrate(f, lo, i + 1 == panels ? b : lo + w);
  }
  if (!std::isfinite(sum)) throw Error(Errc::quadrature, "quadrature produced a non-finite value");
  return sum;
}

double QuadratureGrid::integrate_log_bounds(const std::function<double(double)>& g, double s0, double s1) const {
  return integrate([&](double s) { double x = std::exp(s); return g(x) * x; }, s0, s1);
}

double QuadratureGrid::integrate_log(const std::function<double(double)>& g, double a, double b) const {
  if (!(a > 0.0)) throw Error(Errc::domain, "log-coordinate quadrature needs a positive lower bound");
  return integrate_log_bounds(g, std::log(a), std::log(b));
}

double QuadratureGrid::calibration_error(double j) const {
  auto g = [j](double x) {
    double l = std::log(x);
    return 2.0 * j / (x * l * l);
  };
  double v = integrate_log_bounds(g, j, 2.0 * j);
  return std::abs(v - 1.0);
}

}  // namespace lpt
