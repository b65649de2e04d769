#pragma once

#include <cstdint>
#include <vector>

#include "lptorsion/scalar.hpp"

namespace lpt {

// Real parts of the eigenvalues of the derivation alpha acting on R^(n-1),
// sorted ascending. All weights must be positive.
class DerivationSpectrum {
 public:
  static constexpr int kMaxWeights = 24;

  DerivationSpectrum(std::vector<Scalar> weights, bool abelian = true);

  const std::vector<Scalar>& weights() const { return weights_; }
  int n() const { return static_cast<int>(weights_.size()) + 1; }
  int rank() const { return static_cast<int>(weights_.size()); }
  bool abelian() const { return abelian_; }
  const Scalar& trace() const { return trace_; }
  bool approximate() const;

  // Sum of the k smallest / k largest weights. k = 0 gives 0.
  Scalar w(int k) const;
  Scalar W(int k) const;

 private:
  std::vector<Scalar> weights_;
  Scalar trace_;
  bool abelian_;
};

// One distinct subset sum and the number of k-subsets that produce it.
struct SubsetSum {
  Scalar value;
  std::uint64_t count;
};

struct ExteriorSpectrum {
  int degree = 0;
  std::vector<SubsetSum> sums;  // ascending, distinct values

  std::uint64_t size() const;
  const Scalar& min() const { return sums.front().value; }
  const Scalar& max() const { return sums.back().value; }
};

enum class Contraction { contracting, dilating, neither };
const char* contraction_name(Contraction c);

struct GradingDims {
  std::uint64_t plus = 0;
  std::uint64_t zero = 0;
  std::uint64_t minus = 0;
};

std::uint64_t binomial(int n, int k);

ExteriorSpectrum exterior_spectrum(const DerivationSpectrum& spec, int k);
Contraction is_contracting(const DerivationSpectrum& spec, int k, const Scalar& p);
// tr(alpha)/lambda_I over k-subsets, restricted to (1, inf), ascending.
std::vector<Scalar> critical_exponents(const DerivationSpectrum& spec, int k);
GradingDims grading_dims(const DerivationSpectrum& spec, int k, const Scalar& p);

// Weights of the two-valued family G_{mu,n,delta}: sqrt(-delta) repeated
// n - mu times, then 1 repeated mu - 1 times.
DerivationSpectrum two_valued_spectrum(int n, int mu, const Scalar& root);

}  // namespace lpt
