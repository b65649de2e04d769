#include "lptorsion/spectral.hpp"

#include <algorithm>
#include <string>

#include "lptorsion/error.hpp"

namespace lpt {

DerivationSpectrum::DerivationSpectrum(std::vector<Scalar> weights, bool abelian)
    : weights_(std::move(weights)), abelian_(abelian) {
  if (weights_.empty()) throw Error(Errc::domain, "a spectrum needs at least one weight");
  if (static_cast<int>(weights_.size()) > kMaxWeights)
    throw Error(Errc::domain, "at most " + std::to_string(kMaxWeights) + " weights are supported");
  for (const auto& x : weights_)
    if (x.sign() <= 0) throw Error(Errc::domain, "weights must be positive, got " + x.to_string());
  std::sort(weights_.begin(), weights_.end());
  for (const auto& x : weights_) trace_ += x;
}

bool DerivationSpectrum::approximate() const {
  return std::any_of(weights_.begin(), weights_.end(), [](const Scalar& x) { return !x.exact(); });
}

Scalar DerivationSpectrum::w(int k) const {
  if (k < 0 || k > rank()) throw Error(Errc::degree_out_of_range, "w_k needs 0 <= k <= n-1");
  Scalar s;
  for (int i = 0; i < k; ++i) s += weights_[i];
  return s;
}

Scalar DerivationSpectrum::W(int k) const {
  if (k < 0 || k > rank()) throw Error(Errc::degree_out_of_range, "W_k needs 0 <= k <= n-1");
  Scalar s;
  for (int i = 0; i < k; ++i) s += weights_[rank() - 1 - i];
  return s;
}

std::uint64_t ExteriorSpectrum::size() const {
  std::uint64_t n = 0;
  for (const auto& s : sums) n += s.count;
  return n;
}

const char* contraction_name(Contraction c) {
  switch (c) {
    case Contraction::contracting: return "contracting";
    case Contraction::dilating: return "dilating";
    case Contraction::neither: return "neither";
  }
  return "neither";
}

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return r;
}

namespace {

void check_degree(const DerivationSpectrum& spec, int k, int lo) {
  if (k < lo || k > spec.rank())
    throw Error(Errc::degree_out_of_range, "degree " + std::to_string(k) + " outside [" + std::to_string(lo) +
                                               ", " + std::to_string(spec.rank()) + "]");
}

void check_p(const Scalar& p) {
  if (p <= Scalar(1)) throw Error(Errc::domain, "exponent p must exceed 1, got " + p.to_string());
}

}  // namespace

ExteriorSpectrum exterior_spectrum(const DerivationSpectrum& spec, int k) {
  check_degree(spec, k, 0);
  // Equal weights are grouped, so a k-subset is a choice of how many to take
  // from each group; the number of index subsets is a product of binomials.
  std::vector<Scalar> value;
  std::vector<int> mult;
  for (const auto& x : spec.weights()) {
    if (!value.empty() && value.back() == x) {
      ++mult.back();
    } else {
      value.push_back(x);
      mult.push_back(1);
    }
  }
  std::vector<SubsetSum> raw;
  std::vector<int> take(value.size(), 0);
  auto rec = [&](auto&& self, size_t g, int left, Scalar acc, std::uint64_t count) -> void {
    if (g == value.size()) {
      if (left == 0) raw.push_back({acc, count});
      return;
    }
    for (int c = 0; c <= std::min(left, mult[g]); ++c) {
      self(self, g + 1, left - c, acc + Scalar(c) * value[g], count * binomial(mult[g], c));
    }
  };
  rec(rec, 0, k, Scalar(), 1);
  std::sort(raw.begin(), raw.end(), [](const SubsetSum& x, const SubsetSum& y) { return x.value < y.value; });
  ExteriorSpectrum out;
  out.degree = k;
  for (auto& s : raw) {
    if (!out.sums.empty() && out.sums.back().value == s.value)
      out.sums.back().count += s.count;
    else
      out.sums.push_back(std::move(s));
  }
  return out;
}

Contraction is_contracting(const DerivationSpectrum& spec, int k, const Scalar& p) {
  check_p(p);
  ExteriorSpectrum ext = exterior_spectrum(spec, k);
  Scalar level = spec.trace() / p;
  if (ext.min() > level) return Contraction::contracting;
  if (ext.max() < level) return Contraction::dilating;
  return Contraction::neither;
}

std::vector<Scalar> critical_exponents(const DerivationSpectrum& spec, int k) {
  check_degree(spec, k, 1);
  std::vector<Scalar> out;
  for (const auto& s : exterior_spectrum(spec, k).sums) {
    Scalar ratio = spec.trace() / s.value;
    if (ratio > Scalar(1)) out.push_back(ratio);
  }
  // sums ascend, so ratios descend; distinct sums give distinct ratios
  std::reverse(out.begin(), out.end());
  return out;
}

GradingDims grading_dims(const DerivationSpectrum& spec, int k, const Scalar& p) {
  check_p(p);
  Scalar level = spec.trace() / p;
  GradingDims d;
  for (const auto& s : exterior_spectrum(spec, k).sums) {
    auto c = s.value <=> level;
    if (c > 0)
      d.plus += s.count;
    else if (c < 0)
      d.minus += s.count;
    else
      d.zero += s.count;
  }
  return d;
}

DerivationSpectrum two_valued_spectrum(int n, int mu, const Scalar& root) {
  if (mu < 2 || mu > n - 1) throw Error(Errc::domain, "two-valued family needs 2 <= mu <= n-1");
  std::vector<Scalar> w(static_cast<size_t>(n - mu), root);
  w.insert(w.end(), static_cast<size_t>(mu - 1), Scalar(1));
  return DerivationSpectrum(std::move(w));
}

}  // namespace lpt
