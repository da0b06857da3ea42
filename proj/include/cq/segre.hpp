#ifndef CQ_SEGRE_HPP
#define CQ_SEGRE_HPP

// Projective degrees of gradient maps from Segre-class data of the base
// locus. The Segre degrees are inputs; nothing here computes them.

#include <span>
#include <vector>

#include "cq/error.hpp"
#include "cq/exactmath.hpp"

namespace cq {

struct SegreData {
  long degF = 1;
  long nL = 0;  // dim P(L)
  long mY = 0;  // dim Y
  std::vector<BigInt> s;  // s_0 .. s_{mY}

  void validate() const {
    if (degF < 1) throw DomainError("degF must be >= 1");
    if (nL < 0) throw DomainError("nL must be >= 0");
    if (mY < 0) throw DomainError("mY must be >= 0");
    if (static_cast<long>(s.size()) != mY + 1)
      throw DomainError("expected " + std::to_string(mY + 1) + " Segre degrees, got " + std::to_string(s.size()));
  }
};

/// (degF-1)^i - sum_{j=0}^{i-nL+mY} C(i, nL-mY+j) (degF-1)^{i-nL+mY-j} s_j
inline BigInt mu_from_segre(const SegreData& d, long i) {
  d.validate();
  if (i < 0 || i > d.nL) throw DomainError("index i must lie in 0.." + std::to_string(d.nL));
  const BigInt base = d.degF - 1;
  BigInt value = pow(base, static_cast<unsigned long>(i));
  const long top = i - d.nL + d.mY;
  for (long j = 0; j <= top; ++j) {
    if (j > d.mY) break;  // no Segre component beyond dim Y
    value -= binomial(i, d.nL - d.mY + j) * pow(base, static_cast<unsigned long>(top - j)) * d.s[j];
  }
  return value;
}

/// Same evaluator, fed the Segre data of the restricted gradient map.
inline BigInt nu_from_segre(const SegreData& d, long i) { return mu_from_segre(d, i); }

/// mu_a - sum_{j=0}^{b} C(n, j) s_j; b = -1 (empty s) leaves mu_a unchanged.
inline BigInt nu_from_mu_correction(const BigInt& mu_a, long n_ambient, long b, std::span<const BigInt> s) {
  if (b < -1) throw DomainError("b must be >= -1");
  if (static_cast<long>(s.size()) != b + 1)
    throw DomainError("expected " + std::to_string(b + 1) + " Segre degrees, got " + std::to_string(s.size()));
  BigInt value = mu_a;
  for (long j = 0; j <= b; ++j) value -= binomial(n_ambient, j) * s[j];
  return value;
}

inline BigInt nu_from_mu_correction(const BigInt& mu_a, long n_ambient, long b, const std::vector<BigInt>& s) {
  return nu_from_mu_correction(mu_a, n_ambient, b, std::span<const BigInt>(s));
}

/// nu_i <= mu_i for every i, and nu = mu exactly when the last entries agree.
inline bool mu_nu_inequality_check(std::span<const BigInt> mu, std::span<const BigInt> nu) {
  if (mu.size() != nu.size()) throw DomainError("mu and nu have different lengths");
  bool all_equal = true;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    if (nu[i] > mu[i]) return false;
    all_equal = all_equal && nu[i] == mu[i];
  }
  bool last_equal = mu.empty() || mu.back() == nu.back();
  return all_equal == last_equal;
}

inline bool mu_nu_inequality_check(const std::vector<BigInt>& mu, const std::vector<BigInt>& nu) {
  return mu_nu_inequality_check(std::span<const BigInt>(mu), std::span<const BigInt>(nu));
}

} // namespace cq

#endif // CQ_SEGRE_HPP
