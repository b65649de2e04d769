#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lptorsion/scalar.hpp"

namespace lpt {

// A subinterval of (1, inf). Anything below 1 is clipped away, and the point 1
// itself is never included. The empty interval has a single representation.
class ExponentInterval {
 public:
  ExponentInterval() = default;  // empty

  static ExponentInterval make(const Scalar& lo, bool lo_closed, std::optional<Scalar> hi, bool hi_closed);
  static ExponentInterval open(const Scalar& lo, std::optional<Scalar> hi) {
    return make(lo, false, std::move(hi), false);
  }
  static ExponentInterval point(const Scalar& p) { return make(p, true, p, true); }
  static ExponentInterval whole() { return make(Scalar(1), false, std::nullopt, false); }

  bool is_empty() const { return empty_; }
  const Scalar& lower() const { return lo_; }
  bool lower_closed() const { return lo_closed_; }
  // nullopt is +inf
  const std::optional<Scalar>& upper() const { return hi_; }
  bool upper_closed() const { return hi_closed_; }
  bool is_point() const { return !empty_ && hi_ && lo_closed_ && hi_closed_ && *hi_ == lo_; }
  bool approximate() const;

  bool contains(const Scalar& p) const;

  friend ExponentInterval intersect(const ExponentInterval& x, const ExponentInterval& y);
  friend bool operator==(const ExponentInterval& x, const ExponentInterval& y);

  // "(2, 4)", "(1, 5/4]", "[3/2, 3/2]", "(5, inf)", "empty"
  std::string to_string() const;

 private:
  Scalar lo_{1};
  bool lo_closed_ = false;
  std::optional<Scalar> hi_ = Scalar(1);
  bool hi_closed_ = false;
  bool empty_ = true;
};

// A finite union of exponent intervals, stored sorted, disjoint and with
// touching pieces merged, so equal sets compare equal piece by piece.
class ExponentSet {
 public:
  ExponentSet() = default;
  ExponentSet(const ExponentInterval& i);  // NOLINT(google-explicit-constructor)
  explicit ExponentSet(std::vector<ExponentInterval> parts);

  const std::vector<ExponentInterval>& parts() const { return parts_; }
  bool is_empty() const { return parts_.empty(); }
  bool contains(const Scalar& p) const;
  bool approximate() const;

  ExponentSet complement() const;  // within (1, inf)
  friend ExponentSet unite(const ExponentSet& x, const ExponentSet& y);
  friend ExponentSet intersect(const ExponentSet& x, const ExponentSet& y);
  friend ExponentSet subtract(const ExponentSet& x, const ExponentSet& y) { return intersect(x, y.complement()); }
  friend bool operator==(const ExponentSet& x, const ExponentSet& y) { return x.parts_ == y.parts_; }

  std::string to_string() const;

 private:
  void normalize();
  std::vector<ExponentInterval> parts_;
};

}  // namespace lpt
