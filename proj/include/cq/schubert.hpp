#ifndef CQ_SCHUBERT_HPP
#define CQ_SCHUBERT_HPP

// Schubert calculus on the complete flag variety Fl_n, restricted to what the
// complete-quadrics reduction needs: products with the divisor classes
// sigma_{s_i} via Monk's rule, and top-degree integrals of such products.

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "cq/error.hpp"
#include "cq/exactmath.hpp"

namespace cq {

/// A permutation of {1..n} in one-line notation: w(i) = images()[i-1].
class Permutation {
public:
  explicit Permutation(std::vector<int> images) : w_(std::move(images)) {
    std::vector<bool> seen(w_.size() + 1, false);
    for (int v : w_) {
      if (v < 1 || v > static_cast<int>(w_.size()) || seen[v]) throw DomainError("not a permutation: " + str());
      seen[v] = true;
    }
  }

  static Permutation identity(int n) {
    std::vector<int> w(n);
    std::iota(w.begin(), w.end(), 1);
    return Permutation(std::move(w));
  }
  static Permutation longest(int n) {
    std::vector<int> w(n);
    for (int i = 0; i < n; ++i) w[i] = n - i;
    return Permutation(std::move(w));
  }

  int size() const { return static_cast<int>(w_.size()); }
  /// 1-based access, w(i).
  int operator()(int i) const { return w_[i - 1]; }
  const std::vector<int>& images() const { return w_; }

  /// Number of pairs i < j with w(i) > w(j).
  int inversion_number() const {
    int inv = 0;
    for (std::size_t i = 0; i < w_.size(); ++i)
      for (std::size_t j = i + 1; j < w_.size(); ++j)
        if (w_[i] > w_[j]) ++inv;
    return inv;
  }

  /// The permutation with the values in positions p and q exchanged (1-based).
  Permutation swapped(int p, int q) const {
    Permutation r = *this;
    std::swap(r.w_[p - 1], r.w_[q - 1]);
    return r;
  }

  std::string str() const {
    std::string s = "[";
    for (std::size_t i = 0; i < w_.size(); ++i) {
      if (i) s += ',';
      s += std::to_string(w_[i]);
    }
    return s + "]";
  }

  friend auto operator<=>(const Permutation&, const Permutation&) = default;
  friend bool operator==(const Permutation&, const Permutation&) = default;

private:
  std::vector<int> w_;
};

/// Finite integer combination of Schubert classes sigma_w on Fl_n.
class SchubertCombination {
public:
  explicit SchubertCombination(int n) : n_(n) {}
  SchubertCombination(const Permutation& w, BigInt coeff) : n_(w.size()) { add(w, std::move(coeff)); }

  int n() const { return n_; }
  const std::map<Permutation, BigInt>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add(const Permutation& w, const BigInt& coeff) {
    if (w.size() != n_) throw DomainError("permutation " + w.str() + " does not live in S_" + std::to_string(n_));
    if (coeff == 0) return;
    auto [it, inserted] = terms_.try_emplace(w, coeff);
    if (!inserted) {
      it->second += coeff;
      if (it->second == 0) terms_.erase(it);
    }
  }

  BigInt coefficient(const Permutation& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? BigInt(0) : it->second;
  }

  /// Coefficient of the class of a point, sigma_{w0}.
  BigInt integral() const { return coefficient(Permutation::longest(n_)); }

  /// All terms share one inversion number.
  bool is_homogeneous() const {
    if (terms_.empty()) return true;
    int d = terms_.begin()->first.inversion_number();
    return std::all_of(terms_.begin(), terms_.end(), [d](const auto& kv) { return kv.first.inversion_number() == d; });
  }

  friend bool operator==(const SchubertCombination&, const SchubertCombination&) = default;

private:
  int n_;
  std::map<Permutation, BigInt> terms_;
};

/// Monk's rule: sigma_{s_i} * sigma_w as a sum of sigma_v, v = w with the
/// values at p <= i < q exchanged, where w(p) < w(q) and no position strictly
/// between p and q carries a value strictly between w(p) and w(q).
inline SchubertCombination monk_multiply(int i, const Permutation& w) {
  const int n = w.size();
  if (i < 1 || i > n - 1) throw DomainError("Monk index s_" + std::to_string(i) + " out of range for S_" + std::to_string(n));
  SchubertCombination out(n);
  const int target = w.inversion_number() + 1;
  for (int p = 1; p <= i; ++p)
    for (int q = i + 1; q <= n; ++q) {
      if (w(p) > w(q)) continue;
      bool blocked = false;
      for (int k = p + 1; k < q && !blocked; ++k) blocked = w(k) > w(p) && w(k) < w(q);
      if (blocked) continue;
      Permutation v = w.swapped(p, q);
      if (v.inversion_number() != target) throw InternalError("Monk term " + v.str() + " breaks the grading");
      out.add(v, 1);
    }
  return out;
}

inline SchubertCombination monk_multiply(int i, const SchubertCombination& c) {
  SchubertCombination out(c.n());
  for (const auto& [w, coeff] : c.terms()) {
    const SchubertCombination step = monk_multiply(i, w);
    for (const auto& [v, one] : step.terms()) out.add(v, coeff * one);
  }
  return out;
}

/// Evaluates top-degree integrals over Fl_n of products of the classes L_i,
/// where L_i restricts to sigma_{s_{n-i}}. Results are memoised on
/// (current permutation, remaining exponents); safe for concurrent use.
class FlagIntegrator {
public:
  explicit FlagIntegrator(int n) : n_(n), dim_(static_cast<int>(binomial(n, 2).get_si())) {
    if (n < 2) throw DomainError("flag variety needs n >= 2");
  }

  int n() const { return n_; }

  /// \int_{Fl_n} L_1^{b_1} ... L_{n-1}^{b_{n-1}}
  BigInt integrate(const std::vector<int>& b) const {
    if (static_cast<int>(b.size()) != n_ - 1)
      throw DomainError("expected " + std::to_string(n_ - 1) + " exponents, got " + std::to_string(b.size()));
    int total = 0;
    for (int e : b) {
      if (e < 0) throw DomainError("negative exponent");
      total += e;
    }
    if (total != dim_) throw DomainError("degree mismatch: exponents sum to " + std::to_string(total) + ", dim Fl_" + std::to_string(n_) + " = " + std::to_string(dim_));
    return from(Permutation::identity(n_), b);
  }

  std::size_t memo_size() const {
    std::shared_lock lock(mutex_);
    return memo_.size();
  }

private:
  // Coefficient of sigma_{w0} in sigma_w * prod_i L_i^{b_i}.
  BigInt from(const Permutation& w, std::vector<int> b) const {
    int remaining = std::accumulate(b.begin(), b.end(), 0);
    if (remaining == 0) return w == Permutation::longest(n_) ? 1 : 0;
    if (w.inversion_number() + remaining != dim_) return 0;

    std::string key = encode(w, b);
    {
      std::shared_lock lock(mutex_);
      if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    }
    // Largest remaining multiplicity first; ties go to the smallest index.
    int pick = static_cast<int>(std::max_element(b.begin(), b.end()) - b.begin());
    --b[pick];
    BigInt total = 0;
    const SchubertCombination step = monk_multiply(n_ - (pick + 1), w);
    for (const auto& [v, coeff] : step.terms()) total += coeff * from(v, b);
    std::unique_lock lock(mutex_);
    memo_.emplace(std::move(key), total);
    return total;
  }

  static std::string encode(const Permutation& w, const std::vector<int>& b) {
    std::string key;
    key.reserve(w.size() + b.size());
    for (int v : w.images()) key.push_back(static_cast<char>(v));
    for (int e : b) key.push_back(static_cast<char>(e));
    return key;
  }

  int n_;
  int dim_;
  mutable std::shared_mutex mutex_;
  mutable std::unordered_map<std::string, BigInt> memo_;
};

/// Process-wide integrator for Fl_n, created on first use.
inline const FlagIntegrator& flag_integrator(int n) {
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<FlagIntegrator>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<FlagIntegrator>(n);
  return *slot;
}

/// \int_{Fl_n} L_1^{b_1} ... L_{n-1}^{b_{n-1}}, L_i <-> sigma_{s_{n-i}}.
inline BigInt flag_integral(int n, const std::vector<int>& b) {
  if (n < 2) throw DomainError("flag variety needs n >= 2");
  return flag_integrator(n).integrate(b);
}

} // namespace cq

#endif // CQ_SCHUBERT_HPP
