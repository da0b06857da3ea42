#ifndef CQ_QUADRICS_HPP
#define CQ_QUADRICS_HPP

// Intersection theory on the space of complete quadrics CQ_n: the divisor
// classes L_i and S_i, the De Concini-Procesi reduction of
//   \int S_1^{a_1} ... S_{n-1}^{a_{n-1}} L_1^{b_1} ... L_{n-1}^{b_{n-1}}
// down to integrals over the flag variety, and the invariants built on top
// of it (ML-degrees phi, SDP degrees delta, phi_c, polynomiality).

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "cq/error.hpp"
#include "cq/exactmath.hpp"
#include "cq/parallel.hpp"
#include "cq/schubert.hpp"

namespace cq {

/// dim CQ_n = C(n+1,2) - 1.
inline int cq_dimension(int n) { return static_cast<int>(binomial(n + 1, 2).get_si()) - 1; }

/// A divisor class on CQ_n in the basis L_1..L_{n-1}.
struct DivisorClass {
  int n = 0;
  std::vector<Rational> coeffs;

  static DivisorClass zero(int n) { return {n, std::vector<Rational>(n - 1)}; }
  static DivisorClass L(int n, int i) {
    check_index(n, i);
    DivisorClass d = zero(n);
    d.coeffs[i - 1] = 1;
    return d;
  }
  /// S_i = -L_{i-1} + 2 L_i - L_{i+1}, with L_0 = L_n = 0.
  static DivisorClass S(int n, int i) {
    check_index(n, i);
    DivisorClass d = zero(n);
    d.coeffs[i - 1] = 2;
    if (i > 1) d.coeffs[i - 2] = -1;
    if (i < n - 1) d.coeffs[i] = -1;
    return d;
  }

  DivisorClass& operator+=(const DivisorClass& o) {
    for (std::size_t k = 0; k < coeffs.size(); ++k) coeffs[k] += o.coeffs[k];
    return *this;
  }
  friend DivisorClass operator+(DivisorClass a, const DivisorClass& b) { return a += b; }
  friend DivisorClass operator*(const Rational& s, DivisorClass d) {
    for (auto& c : d.coeffs) c *= s;
    return d;
  }
  friend bool operator==(const DivisorClass&, const DivisorClass&) = default;

  static void check_index(int n, int i) {
    if (n < 2 || i < 1 || i > n - 1) throw DomainError("divisor index " + std::to_string(i) + " out of range for CQ_" + std::to_string(n));
  }
};

/// Exponent profile of \int_{CQ_n} prod S_i^{a_i} prod L_i^{b_i}.
struct CQProduct {
  int n = 0;
  std::vector<int> a;
  std::vector<int> b;

  static CQProduct empty(int n) { return {n, std::vector<int>(std::max(0, n - 1)), std::vector<int>(std::max(0, n - 1))}; }

  CQProduct& times_L(int i, int power = 1) {
    DivisorClass::check_index(n, i);
    b[i - 1] += power;
    return *this;
  }
  CQProduct& times_S(int i, int power = 1) {
    DivisorClass::check_index(n, i);
    a[i - 1] += power;
    return *this;
  }

  int degree() const { return std::accumulate(a.begin(), a.end(), 0) + std::accumulate(b.begin(), b.end(), 0); }

  friend bool operator==(const CQProduct&, const CQProduct&) = default;
};

enum class BasisKind { S, L };

struct BasisElement {
  BasisKind kind;
  int index;
  friend auto operator<=>(const BasisElement&, const BasisElement&) = default;
};

/// Coefficients of L_i in the basis {S_j : j in X} u {L_j : j not in X}.
inline std::map<BasisElement, Rational> l_in_mixed_basis(int n, int i, const std::vector<int>& X) {
  DivisorClass::check_index(n, i);
  std::vector<bool> in_x(n, false);
  for (int j : X) {
    DivisorClass::check_index(n, j);
    in_x[j] = true;
  }
  const int m = n - 1;
  // Column j holds the L-coordinates of the j-th basis element.
  RationalMatrix system(m, std::vector<Rational>(m));
  for (int j = 1; j <= m; ++j) {
    DivisorClass e = in_x[j] ? DivisorClass::S(n, j) : DivisorClass::L(n, j);
    for (int r = 0; r < m; ++r) system[r][j - 1] = e.coeffs[r];
  }
  std::vector<Rational> rhs = DivisorClass::L(n, i).coeffs;
  auto solution = solve_linear(system, rhs);
  if (!solution) throw InternalError("mixed S/L set is not a basis");
  std::map<BasisElement, Rational> out;
  for (int j = 1; j <= m; ++j)
    if (!(*solution)[j - 1].is_zero()) out.emplace(BasisElement{in_x[j] ? BasisKind::S : BasisKind::L, j}, (*solution)[j - 1]);
  return out;
}

/// Chooses which L_i (among indices with a_i = 0, b_i > 0) to rewrite next.
/// Receives the eligible 1-based indices in increasing order.
using PickStrategy = std::function<int(const std::vector<int>& eligible)>;

/// The reduction engine for one CQ_n. Values of partial products are memoised
/// on the canonical (n, a, b) tuple; the memo is safe for concurrent callers.
class CompleteQuadrics {
public:
  explicit CompleteQuadrics(int n, PickStrategy pick = {}) : n_(n), pick_(std::move(pick)) {
    if (n < 2) throw DomainError("complete quadrics need n >= 2");
    // S_1 ... S_{n-1} meet in Fl_n, and each L_i restricts there to twice
    // the Schubert divisor (the quadric v.v^T is the Veronese square of the
    // Pluecker point), hence one factor 2 per L in the flag integral.
    flag_scale_ = pow(BigInt(2), static_cast<unsigned long>(binomial(n, 2).get_ui()));
  }

  int n() const { return n_; }
  int dimension() const { return cq_dimension(n_); }

  BigInt integrate(const CQProduct& p) const {
    if (p.n != n_) throw DomainError("product lives on CQ_" + std::to_string(p.n) + ", engine is CQ_" + std::to_string(n_));
    if (static_cast<int>(p.a.size()) != n_ - 1 || static_cast<int>(p.b.size()) != n_ - 1)
      throw DomainError("expected " + std::to_string(n_ - 1) + " exponents of S and of L");
    for (int e : p.a)
      if (e < 0) throw DomainError("negative exponent");
    for (int e : p.b)
      if (e < 0) throw DomainError("negative exponent");
    if (p.degree() != dimension())
      throw DomainError("degree mismatch: product has degree " + std::to_string(p.degree()) + ", dim CQ_" + std::to_string(n_) + " = " + std::to_string(dimension()));
    Rational v = value(p.a, p.b);
    if (!v.is_integer()) throw InternalError("non-integral intersection number " + v.str());
    return v.to_integer();
  }

  std::size_t memo_size() const {
    std::shared_lock lock(mutex_);
    return memo_.size();
  }

private:
  Rational value(std::vector<int> a, std::vector<int> b) const {
    const int m = n_ - 1;
    std::string key = encode(a, b);
    {
      std::shared_lock lock(mutex_);
      if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    }

    Rational total;
    auto surplus = std::find_if(a.begin(), a.end(), [](int e) { return e >= 2; });
    if (surplus != a.end()) {
      // Keep one S_i, rewrite another through S_i = -L_{i-1} + 2L_i - L_{i+1}.
      int i = static_cast<int>(surplus - a.begin()) + 1;
      --a[i - 1];
      const DivisorClass s = DivisorClass::S(n_, i);
      for (int j = 1; j <= m; ++j) {
        if (s.coeffs[j - 1].is_zero()) continue;
        ++b[j - 1];
        total += s.coeffs[j - 1] * value(a, b);
        --b[j - 1];
      }
    } else if (std::all_of(a.begin(), a.end(), [](int e) { return e == 1; })) {
      total = Rational(flag_scale_ * flag_integral(n_, b));
    } else {
      std::vector<int> eligible;
      for (int i = 1; i <= m; ++i)
        if (a[i - 1] == 0 && b[i - 1] > 0) eligible.push_back(i);
      // Otherwise zero: every missing S_i comes with no L_i.
      if (!eligible.empty()) total = rewrite_one(a, b, choose(eligible));
    }

    std::unique_lock lock(mutex_);
    memo_.emplace(std::move(key), total);
    return total;
  }

  // Replaces one factor L_i (a_i = 0) by its expansion in the basis
  // {S_j : a_j = 0} u {L_j : a_j = 1}.
  Rational rewrite_one(std::vector<int> a, std::vector<int> b, int i) const {
    const int parent_a = std::accumulate(a.begin(), a.end(), 0);
    const int parent_rest = open_weight(a, b);
    --b[i - 1];
    Rational total;
    for (const auto& [elem, coeff] : mixed_expansion(a, i)) {
      auto& slot = elem.kind == BasisKind::S ? a[elem.index - 1] : b[elem.index - 1];
      ++slot;
      int child_a = std::accumulate(a.begin(), a.end(), 0);
      if (!(child_a > parent_a || (child_a == parent_a && open_weight(a, b) < parent_rest)))
        throw InternalError("reduction step did not decrease the tuple order");
      total += coeff * value(a, b);
      --slot;
    }
    return total;
  }

  int choose(const std::vector<int>& eligible) const {
    if (!pick_) return eligible.front();
    int i = pick_(eligible);
    if (std::find(eligible.begin(), eligible.end(), i) == eligible.end()) throw InternalError("pick strategy returned an ineligible index");
    return i;
  }

  static int open_weight(const std::vector<int>& a, const std::vector<int>& b) {
    int s = 0;
    for (std::size_t k = 0; k < a.size(); ++k)
      if (a[k] == 0) s += b[k];
    return s;
  }

  const std::map<BasisElement, Rational>& mixed_expansion(const std::vector<int>& a, int i) const {
    unsigned long mask = 0;
    std::vector<int> X;
    for (int j = 1; j <= n_ - 1; ++j)
      if (a[j - 1] == 0) {
        X.push_back(j);
        mask |= 1ul << j;
      }
    std::pair<unsigned long, int> key{mask, i};
    {
      std::shared_lock lock(mutex_);
      if (auto it = basis_cache_.find(key); it != basis_cache_.end()) return it->second;
    }
    auto expansion = l_in_mixed_basis(n_, i, X);
    std::unique_lock lock(mutex_);
    return basis_cache_.try_emplace(key, std::move(expansion)).first->second;
  }

  static std::string encode(const std::vector<int>& a, const std::vector<int>& b) {
    std::string key;
    key.reserve(a.size() + b.size());
    for (int e : a) key.push_back(static_cast<char>(e));
    for (int e : b) key.push_back(static_cast<char>(e));
    return key;
  }

  int n_;
  PickStrategy pick_;
  BigInt flag_scale_;
  mutable std::shared_mutex mutex_;
  mutable std::unordered_map<std::string, Rational> memo_;
  mutable std::map<std::pair<unsigned long, int>, std::map<BasisElement, Rational>> basis_cache_;
};

/// Shared engine for CQ_n (default pick strategy), created on first use.
inline const CompleteQuadrics& quadrics_engine(int n) {
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<CompleteQuadrics>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<CompleteQuadrics>(n);
  return *slot;
}

inline BigInt intersection_product(const CQProduct& p) {
  if (p.n < 2) throw DomainError("complete quadrics need n >= 2");
  return quadrics_engine(p.n).integrate(p);
}

/// ML-degree of a generic d-dimensional linear concentration model of n x n
/// symmetric matrices: \int L_1^{C(n+1,2)-d} L_{n-1}^{d-1}.
inline BigInt phi(int n, int d) {
  if (n < 2) throw DomainError("phi needs n >= 2");
  const int top = cq_dimension(n) + 1;
  if (d < 1 || d > top) throw DomainError("phi(n,d) needs 1 <= d <= C(n+1,2) = " + std::to_string(top));
  return intersection_product(CQProduct::empty(n).times_L(1, top - d).times_L(n - 1, d - 1));
}

inline void check_delta_range(int m, int n, int r) {
  if (n < 2) throw DomainError("delta needs n >= 2");
  const int top = cq_dimension(n) + 1;
  if (m <= 0 || m >= top) throw DomainError("delta(m,n,r) needs 0 < m < C(n+1,2) = " + std::to_string(top));
  if (r <= 0 || r >= n) throw DomainError("delta(m,n,r) needs 0 < r < n");
}

/// Algebraic degree of semidefinite programming:
/// \int S_r L_1^{C(n+1,2)-m-1} L_{n-1}^{m-1}.
inline BigInt delta(int m, int n, int r) {
  check_delta_range(m, n, r);
  const int top = cq_dimension(n) + 1;
  return intersection_product(CQProduct::empty(n).times_S(r).times_L(1, top - m - 1).times_L(n - 1, m - 1));
}

/// C(n-r+1,2) <= m <= C(n+1,2) - C(r+1,2).
inline bool pataki_nonzero(int m, int n, int r) {
  check_delta_range(m, n, r);
  return binomial(n - r + 1, 2) <= m && m <= binomial(n + 1, 2) - binomial(r + 1, 2);
}

/// phi(n,d) = (1/n) sum_{1 <= C(s+1,2) <= d} s delta(d,n,n-s).
/// At d = C(n+1,2) no delta(d,...) exists; there phi(n,d) = phi(n,1) by the
/// duality CQ(V) = CQ(V*), and the sum is taken for d = 1.
inline BigInt phi_from_delta(int n, int d) {
  if (n < 2) throw DomainError("phi needs n >= 2");
  const int top = cq_dimension(n) + 1;
  if (d < 1 || d > top) throw DomainError("phi(n,d) needs 1 <= d <= C(n+1,2) = " + std::to_string(top));
  if (d == top) d = 1;
  BigInt sum = 0;
  for (int s = 1; s <= n - 1 && binomial(s + 1, 2) <= d; ++s) sum += s * delta(d, n, n - s);
  if (sum % n != 0) throw InternalError("phi-delta relation gave a non-integer for n=" + std::to_string(n) + ", d=" + std::to_string(d));
  return sum / n;
}

/// \int L_c L_1^{C(n+1,2)-d-1} L_{n-1}^{d-1}.
inline BigInt phi_c(int n, int c, int d) {
  if (n < 2) throw DomainError("phi_c needs n >= 2");
  const int top = cq_dimension(n) + 1;
  if (d < 1 || d >= top) throw DomainError("phi_c(n,c,d) needs 1 <= d < C(n+1,2) = " + std::to_string(top));
  if (c < 1 || c > n - 1) throw DomainError("phi_c(n,c,d) needs 1 <= c <= n-1");
  return intersection_product(CQProduct::empty(n).times_L(c).times_L(1, top - d - 1).times_L(n - 1, d - 1));
}

/// phi(., d) as a polynomial of degree d-1 in n, interpolated on d
/// consecutive admissible n and checked at one more.
inline UnivariatePolynomial phi_polynomial(int d, unsigned jobs = 1) {
  if (d < 1) throw DomainError("phi_polynomial needs d >= 1");
  int n0 = 2;
  while (binomial(n0 + 1, 2) < d) ++n0;
  auto values = parallel_map(static_cast<std::size_t>(d) + 1, jobs, [&](std::size_t k) { return phi(n0 + static_cast<int>(k), d); });
  std::vector<std::pair<long, Rational>> pts;
  for (int k = 0; k < d; ++k) pts.emplace_back(n0 + k, Rational(values[k]));
  UnivariatePolynomial p = interpolate(pts);
  if (p(Rational(n0 + d)) != Rational(values[d])) throw DomainError("polynomiality check failed");
  return p;
}

/// delta(m, ., . - s) as a polynomial of degree m in n, interpolated on m+1
/// admissible n, checked at one more point and for vanishing at n = 0.
inline UnivariatePolynomial delta_polynomial(int m, int s, unsigned jobs = 1) {
  if (m < 1 || s < 1) throw DomainError("delta_polynomial needs m, s >= 1");
  int n0 = std::max(2, s + 1);
  while (binomial(n0 + 1, 2) <= m) ++n0;
  auto values = parallel_map(static_cast<std::size_t>(m) + 2, jobs, [&](std::size_t k) {
    int n = n0 + static_cast<int>(k);
    return delta(m, n, n - s);
  });
  std::vector<std::pair<long, Rational>> pts;
  for (int k = 0; k <= m; ++k) pts.emplace_back(n0 + k, Rational(values[k]));
  UnivariatePolynomial p = interpolate(pts);
  if (p(Rational(n0 + m + 1)) != Rational(values[m + 1]) || !p(Rational(0)).is_zero())
    throw DomainError("polynomiality check failed");
  return p;
}

/// Number of smooth degree-d hypersurfaces in P^n tangent to b general
/// hyperplanes through C(n+d,n)-1-b general points: (n (d-1)^{n-1})^b.
/// Only defined where the closed form is known to hold: d = 5 or d >= 7,
/// and b < n(d-2)+3.
inline BigInt hypersurface_characteristic_number(int d, int n, int b) {
  if (n < 1 || !(d == 5 || d >= 7) || b < 0 || b >= n * (d - 2) + 3) throw DomainError("outside theorem hypotheses");
  BigInt base = make_bigint(n) * pow(BigInt(d - 1), static_cast<unsigned long>(n - 1));
  return pow(base, static_cast<unsigned long>(b));
}

} // namespace cq

#endif // CQ_QUADRICS_HPP
