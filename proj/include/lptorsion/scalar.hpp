#pragma once

#include <gmpxx.h>

#include <compare>
#include <string>
#include <string_view>

namespace lpt {

// A number a + b*sqrt(s) with rational a, b and a squarefree integer radicand
// s, or a plain double when the inputs were decimals.
//
// Exact values whose b vanishes carry s = 0, so they combine freely with any
// field. Two irrational values must share a radicand. Approximate values mix
// with rationals (the rational is rounded) but never with irrationals, since
// the whole point of the exact path is that nothing was rounded.
class Scalar {
 public:
  static constexpr double kTolerance = 1e-12;

  Scalar() = default;
  Scalar(long v) : a_(v) {}  // NOLINT(google-explicit-constructor)
  explicit Scalar(mpq_class a);
  static Scalar rational(long num, long den);
  static Scalar quad(const mpq_class& a, const mpq_class& b, const mpq_class& s);
  static Scalar approx(double v);
  // Square root of a nonnegative value; exact when the argument is rational.
  static Scalar sqrt(const Scalar& x);

  bool exact() const { return !approx_; }
  bool is_rational() const { return !approx_ && sgn(b_) == 0; }
  const mpq_class& a() const { return a_; }
  const mpq_class& b() const { return b_; }
  const mpz_class& radicand() const { return s_; }

  double to_double() const;
  Scalar to_approx() const { return approx(to_double()); }
  // -1, 0 or +1. Exact values use rational arithmetic only; approximate
  // values treat anything within kTolerance of zero as zero.
  int sign() const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);
  friend Scalar operator+(Scalar x, const Scalar& y) { return x += y; }
  friend Scalar operator-(Scalar x, const Scalar& y) { return x -= y; }
  friend Scalar operator*(Scalar x, const Scalar& y) { return x *= y; }
  friend Scalar operator/(Scalar x, const Scalar& y) { return x /= y; }

  friend bool operator==(const Scalar& x, const Scalar& y) { return (x - y).sign() == 0; }
  friend std::strong_ordering operator<=>(const Scalar& x, const Scalar& y) {
    int s = (x - y).sign();
    return s < 0 ? std::strong_ordering::less
                 : (s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  // "2", "-1/3", "1+2*sqrt(3)", "-1/2*sqrt(2)".
  // Approximate values print the shortest round-tripping decimal.
  std::string to_string() const;

 private:
  void normalize();
  void check_compatible(const Scalar& o) const;

  mpq_class a_{0};
  mpq_class b_{0};
  mpz_class s_{0};
  bool approx_ = false;
  double v_ = 0.0;
};

// Parses "3", "-1/4", "0.3", "1+2*sqrt(3)", "1/2*sqrt(3)", "2+3√2" and
// parenthesized combinations of those. Throws Error(Errc::parse).
Scalar parse_scalar(std::string_view text);

}  // namespace lpt
