#include "lptorsion/interval.hpp"

#include <algorithm>

namespace lpt {

ExponentInterval ExponentInterval::make(const Scalar& lo, bool lo_closed, std::optional<Scalar> hi,
                                        bool hi_closed) {
  ExponentInterval r;
  r.lo_ = lo;
  r.lo_closed_ = lo_closed;
  if (lo <= Scalar(1)) {
    r.lo_ = Scalar(1);
    r.lo_closed_ = false;
  }
  if (hi) {
    auto c = r.lo_ <=> *hi;
    if (c > 0 || (c == 0 && !(r.lo_closed_ && hi_closed))) return ExponentInterval{};
    r.hi_ = std::move(hi);
    r.hi_closed_ = hi_closed;
  } else {
    r.hi_.reset();
    r.hi_closed_ = false;
  }
  r.empty_ = false;
  return r;
}

bool ExponentInterval::approximate() const {
  if (empty_) return false;
  return !lo_.exact() || (hi_ && !hi_->exact());
}

bool ExponentInterval::contains(const Scalar& p) const {
  if (empty_) return false;
  auto cl = lo_ <=> p;
  if (cl > 0 || (cl == 0 && !lo_closed_)) return false;
  if (!hi_) return true;
  auto ch = p <=> *hi_;
  return ch < 0 || (ch == 0 && hi_closed_);
}

ExponentInterval intersect(const ExponentInterval& x, const ExponentInterval& y) {
  if (x.empty_ || y.empty_) return {};
  Scalar lo = x.lo_;
  bool lo_closed = x.lo_closed_;
  auto cl = x.lo_ <=> y.lo_;
  if (cl < 0 || (cl == 0 && !y.lo_closed_)) {
    lo = y.lo_;
    lo_closed = cl == 0 ? false : y.lo_closed_;
  }
  std::optional<Scalar> hi = x.hi_;
  bool hi_closed = x.hi_closed_;
  if (!hi) {
    hi = y.hi_;
    hi_closed = y.hi_closed_;
  } else if (y.hi_) {
    auto ch = *y.hi_ <=> *hi;
    if (ch < 0 || (ch == 0 && !y.hi_closed_)) {
      hi = y.hi_;
      hi_closed = y.hi_closed_;
    }
  }
  return ExponentInterval::make(lo, lo_closed, hi, hi_closed);
}

bool operator==(const ExponentInterval& x, const ExponentInterval& y) {
  if (x.empty_ || y.empty_) return x.empty_ == y.empty_;
  if (x.lo_closed_ != y.lo_closed_ || x.hi_closed_ != y.hi_closed_) return false;
  if (x.hi_.has_value() != y.hi_.has_value()) return false;
  if (!(x.lo_ == y.lo_)) return false;
  return !x.hi_ || *x.hi_ == *y.hi_;
}

std::string ExponentInterval::to_string() const {
  if (empty_) return "empty";
  std::string out = lo_closed_ ? "[" : "(";
  out += lo_.to_string() + ", ";
  out += hi_ ? hi_->to_string() : "inf";
  out += hi_closed_ ? "]" : ")";
  return out;
}

ExponentSet::ExponentSet(const ExponentInterval& i) {
  if (!i.is_empty()) parts_.push_back(i);
}

ExponentSet::ExponentSet(std::vector<ExponentInterval> parts) : parts_(std::move(parts)) { normalize(); }

void ExponentSet::normalize() {
  std::erase_if(parts_, [](const ExponentInterval& i) { return i.is_empty(); });
  std::sort(parts_.begin(), parts_.end(), [](const ExponentInterval& x, const ExponentInterval& y) {
    auto c = x.lower() <=> y.lower();
    if (c != 0) return c < 0;
    return x.lower_closed() && !y.lower_closed();
  });
  std::vector<ExponentInterval> merged;
  for (const auto& cur : parts_) {
    if (merged.empty()) {
      merged.push_back(cur);
      continue;
    }
    ExponentInterval& last = merged.back();
    bool overlaps = true;
    if (last.upper()) {
      auto c = cur.lower() <=> *last.upper();
      overlaps = c < 0 || (c == 0 && (last.upper_closed() || cur.lower_closed()));
    }
    if (!overlaps) {
      merged.push_back(cur);
      continue;
    }
    std::optional<Scalar> hi = last.upper();
    bool hi_closed = last.upper_closed();
    if (hi) {
      if (!cur.upper()) {
        hi.reset();
        hi_closed = false;
      } else {
        auto c = *cur.upper() <=> *hi;
        if (c > 0 || (c == 0 && cur.upper_closed())) {
          hi = cur.upper();
          hi_closed = cur.upper_closed() || (c == 0 && hi_closed);
        }
      }
    }
    last = ExponentInterval::make(last.lower(), last.lower_closed(), hi, hi_closed);
  }
  parts_ = std::move(merged);
}

bool ExponentSet::contains(const Scalar& p) const {
  return std::any_of(parts_.begin(), parts_.end(), [&](const ExponentInterval& i) { return i.contains(p); });
}

bool ExponentSet::approximate() const {
  return std::any_of(parts_.begin(), parts_.end(), [](const ExponentInterval& i) { return i.approximate(); });
}

ExponentSet ExponentSet::complement() const {
  std::vector<ExponentInterval> gaps;
  Scalar lo(1);
  bool lo_closed = false;
  for (const auto& part : parts_) {
    gaps.push_back(ExponentInterval::make(lo, lo_closed, part.lower(), !part.lower_closed()));
    if (!part.upper()) return ExponentSet(std::move(gaps));
    lo = *part.upper();
    lo_closed = !part.upper_closed();
  }
  gaps.push_back(ExponentInterval::make(lo, lo_closed, std::nullopt, false));
  return ExponentSet(std::move(gaps));
}

ExponentSet unite(const ExponentSet& x, const ExponentSet& y) {
  std::vector<ExponentInterval> all = x.parts_;
  all.insert(all.end(), y.parts_.begin(), y.parts_.end());
  return ExponentSet(std::move(all));
}

ExponentSet intersect(const ExponentSet& x, const ExponentSet& y) {
  std::vector<ExponentInterval> out;
  for (const auto& a : x.parts_)
    for (const auto& b : y.parts_) out.push_back(intersect(a, b));
  return ExponentSet(std::move(out));
}

std::string ExponentSet::to_string() const {
  if (parts_.empty()) return "empty";
  std::string out;
  for (size_t i = 0; i < parts_.size(); ++i) {
    if (i) out += " U ";
    out += parts_[i].to_string();
  }
  return out;
}

}  // namespace lpt
