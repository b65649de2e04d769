#pragma once

#include <functional>
#include <string>

namespace lpt {

// Composite 20-point Gauss-Legendre on fixed-width panels. integrate_log
// substitutes x = e^sigma so that supports reaching e^120 cost a few hundred
// panels and power-law integrands become smooth exponentials.
class QuadratureGrid {
 public:
  explicit QuadratureGrid(double panel = 0.25);

  double panel() const { return panel_; }
  std::string rule() const { return "gauss-legendre-20, panel " + std::to_string(panel_); }
  QuadratureGrid refined() const { return QuadratureGrid(panel_ / 2); }

  double integrate(const std::function<double(double)>& f, double a, double b) const;
  // int_a^b g(x) dx for 0 < a <= b, computed in sigma = log x
  double integrate_log(const std::function<double(double)>& g, double a, double b) const;
  // int over sigma in [s0, s1] of g(e^sigma) e^sigma; avoids forming huge x
  // bounds when only their logs are known
  double integrate_log_bounds(const std::function<double(double)>& g, double s0, double s1) const;

  // |int_{e^j}^{e^{2j}} 2j x^{-1} (log x)^{-2} dx - 1|
  double calibration_error(double j) const;

 private:
  double panel_;
};

}  // namespace lpt
