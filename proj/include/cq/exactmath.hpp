#ifndef CQ_EXACTMATH_HPP
#define CQ_EXACTMATH_HPP

// Exact scalars, polynomials and small linear algebra shared by every other
// header in the library. Nothing here ever rounds.

#include <gmpxx.h>

#include <algorithm>
#include <compare>
#include <concepts>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cq/error.hpp"

namespace cq {

using BigInt = mpz_class;

inline std::string to_string(const BigInt& v) { return v.get_str(); }

template <std::integral T>
BigInt make_bigint(T v) {
  if constexpr (std::is_signed_v<T>)
    return BigInt(static_cast<long>(v));
  else
    return BigInt(static_cast<unsigned long>(v));
}

inline BigInt parse_bigint(std::string_view text) {
  std::string s(text);
  if (!s.empty() && s.front() == '+') s.erase(0, 1);
  BigInt v;
  if (s.empty() || v.set_str(s, 10) != 0) throw ParseError("not an integer: '" + std::string(text) + "'");
  return v;
}

inline BigInt pow(const BigInt& base, unsigned long exp) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
  return r;
}

/// C(n,k), with C(n,k) = 0 when k < 0, k > n, or n < 0.
inline BigInt binomial(long n, long k) {
  if (n < 0 || k < 0 || k > n) return 0;
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

/// Arbitrary-precision rational, always in lowest terms with a positive
/// denominator.
class Rational {
public:
  Rational() = default;
  template <std::integral T>
  Rational(T v) : v_(make_bigint(v)) {}  // NOLINT(google-explicit-constructor)
  Rational(const BigInt& v) : v_(v) {}   // NOLINT(google-explicit-constructor)
  Rational(const BigInt& num, const BigInt& den) {
    if (den == 0) throw DomainError("zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
  }

  /// Accepts "p", "-p", "p/q".
  static Rational parse(std::string_view text) {
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(parse_bigint(text));
    return Rational(parse_bigint(text.substr(0, slash)), parse_bigint(text.substr(slash + 1)));
  }

  BigInt numerator() const { return v_.get_num(); }
  BigInt denominator() const { return v_.get_den(); }
  bool is_integer() const { return v_.get_den() == 1; }
  bool is_zero() const { return sgn(v_) == 0; }
  int sign() const { return sgn(v_); }

  BigInt to_integer() const {
    if (!is_integer()) throw DomainError("rational " + str() + " is not an integer");
    return v_.get_num();
  }

  std::string str() const { return v_.get_str(); }

  Rational operator-() const { return from(-v_); }
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw DomainError("division by zero");
    v_ /= o.v_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.v_, b.v_) == 0; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

  const mpq_class& raw() const { return v_; }

private:
  static Rational from(mpq_class v) {
    Rational r;
    r.v_ = std::move(v);
    return r;
  }
  mpq_class v_;
};

// ---------------------------------------------------------------------------
// Univariate polynomials

/// Dense polynomial over Q; coefficients()[k] multiplies x^k.
class UnivariatePolynomial {
public:
  UnivariatePolynomial() = default;
  explicit UnivariatePolynomial(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

  static UnivariatePolynomial constant(const Rational& c) { return UnivariatePolynomial({c}); }
  static UnivariatePolynomial monomial(const Rational& c, std::size_t degree) {
    std::vector<Rational> v(degree + 1);
    v[degree] = c;
    return UnivariatePolynomial(std::move(v));
  }
  static UnivariatePolynomial x() { return monomial(1, 1); }

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Rational>& coefficients() const { return c_; }
  Rational coefficient(std::size_t k) const { return k < c_.size() ? c_[k] : Rational(); }
  Rational leading_coefficient() const { return c_.empty() ? Rational() : c_.back(); }

  Rational operator()(const Rational& x) const {
    Rational acc;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  UnivariatePolynomial& operator+=(const UnivariatePolynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
    trim();
    return *this;
  }
  UnivariatePolynomial& operator-=(const UnivariatePolynomial& o) { return *this += -o; }
  UnivariatePolynomial operator-() const {
    UnivariatePolynomial r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
  }
  friend UnivariatePolynomial operator+(UnivariatePolynomial a, const UnivariatePolynomial& b) { return a += b; }
  friend UnivariatePolynomial operator-(UnivariatePolynomial a, const UnivariatePolynomial& b) { return a -= b; }
  friend UnivariatePolynomial operator*(const UnivariatePolynomial& a, const UnivariatePolynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> r(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    return UnivariatePolynomial(std::move(r));
  }
  friend UnivariatePolynomial operator*(const Rational& s, UnivariatePolynomial p) {
    for (auto& c : p.c_) c *= s;
    p.trim();
    return p;
  }

  /// Euclidean division: returns (quotient, remainder).
  std::pair<UnivariatePolynomial, UnivariatePolynomial> divmod(const UnivariatePolynomial& divisor) const {
    if (divisor.is_zero()) throw DomainError("polynomial division by zero");
    std::vector<Rational> rem = c_;
    int dd = divisor.degree();
    std::vector<Rational> quot(std::max(0, degree() - dd + 1));
    for (int k = degree(); k >= dd; --k) {
      Rational q = rem[k] / divisor.c_.back();
      quot[k - dd] = q;
      if (q.is_zero()) continue;
      for (int j = 0; j <= dd; ++j) rem[k - dd + j] -= q * divisor.c_[j];
    }
    return {UnivariatePolynomial(std::move(quot)), UnivariatePolynomial(std::move(rem))};
  }

  friend bool operator==(const UnivariatePolynomial&, const UnivariatePolynomial&) = default;

  /// Human-readable form, highest degree first, e.g. "n^2 - 2*n + 1".
  std::string str(std::string_view var = "n") const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int k = degree(); k >= 0; --k) {
      const Rational& c = c_[k];
      if (c.is_zero()) continue;
      Rational mag = c.sign() < 0 ? -c : c;
      if (first)
        os << (c.sign() < 0 ? "-" : "");
      else
        os << (c.sign() < 0 ? " - " : " + ");
      first = false;
      bool unit = mag == Rational(1);
      if (k == 0 || !unit) os << mag.str();
      if (k > 0) {
        if (!unit) os << '*';
        os << var;
        if (k > 1) os << '^' << k;
      }
    }
    return os.str();
  }

private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }
  std::vector<Rational> c_;
};

/// Lagrange interpolation through integer abscissae. The result has degree
/// below the number of points.
inline UnivariatePolynomial interpolate(std::span<const std::pair<long, Rational>> points) {
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j)
      if (points[i].first == points[j].first) throw DomainError("duplicate abscissa");
  UnivariatePolynomial result;
  for (std::size_t i = 0; i < points.size(); ++i) {
    UnivariatePolynomial basis = UnivariatePolynomial::constant(1);
    Rational denom = 1;
    for (std::size_t j = 0; j < points.size(); ++j) {
      if (j == i) continue;
      basis = basis * UnivariatePolynomial({Rational(-points[j].first), Rational(1)});
      denom *= Rational(points[i].first - points[j].first);
    }
    result += (points[i].second / denom) * basis;
  }
  return result;
}

inline UnivariatePolynomial interpolate(const std::vector<std::pair<long, Rational>>& points) {
  return interpolate(std::span<const std::pair<long, Rational>>(points));
}

/// order-th forward difference of equally spaced samples.
inline std::vector<Rational> forward_difference(std::vector<Rational> values, std::size_t order) {
  for (std::size_t k = 0; k < order && !values.empty(); ++k) {
    for (std::size_t i = 0; i + 1 < values.size(); ++i) values[i] = values[i + 1] - values[i];
    values.pop_back();
  }
  return values;
}

/// a[i]^2 >= a[i-1] a[i+1] at every interior index and no zero strictly
/// between two nonzero entries.
inline bool is_log_concave(std::span<const BigInt> seq) {
  for (const auto& v : seq)
    if (v < 0) throw DomainError("log-concavity is only defined for nonnegative sequences");
  for (std::size_t i = 1; i + 1 < seq.size(); ++i)
    if (seq[i] * seq[i] < seq[i - 1] * seq[i + 1]) return false;
  auto first = std::find_if(seq.begin(), seq.end(), [](const BigInt& v) { return v != 0; });
  auto last = std::find_if(seq.rbegin(), seq.rend(), [](const BigInt& v) { return v != 0; });
  if (first == seq.end()) return true;
  return std::none_of(first, last.base(), [](const BigInt& v) { return v == 0; });
}

inline bool is_log_concave(const std::vector<BigInt>& seq) { return is_log_concave(std::span<const BigInt>(seq)); }

// ---------------------------------------------------------------------------
// Multivariate polynomials with named variables

/// Variable name -> exponent; zero exponents are never stored.
using Monomial = std::map<std::string, unsigned>;

class MultivariatePolynomial {
public:
  MultivariatePolynomial() = default;
  template <std::integral T>
  MultivariatePolynomial(T c) : MultivariatePolynomial(Rational(c)) {}  // NOLINT
  MultivariatePolynomial(const Rational& c) {                            // NOLINT
    if (!c.is_zero()) terms_.emplace(Monomial{}, c);
  }

  static MultivariatePolynomial variable(const std::string& name) {
    MultivariatePolynomial p;
    p.terms_.emplace(Monomial{{name, 1u}}, Rational(1));
    return p;
  }
  static MultivariatePolynomial term(const Rational& c, Monomial m) {
    MultivariatePolynomial p;
    std::erase_if(m, [](const auto& kv) { return kv.second == 0; });
    if (!c.is_zero()) p.terms_.emplace(std::move(m), c);
    return p;
  }

  const std::map<Monomial, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  MultivariatePolynomial& operator+=(const MultivariatePolynomial& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  MultivariatePolynomial& operator-=(const MultivariatePolynomial& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  MultivariatePolynomial operator-() const {
    MultivariatePolynomial r = *this;
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
  }
  friend MultivariatePolynomial operator+(MultivariatePolynomial a, const MultivariatePolynomial& b) { return a += b; }
  friend MultivariatePolynomial operator-(MultivariatePolynomial a, const MultivariatePolynomial& b) { return a -= b; }
  friend MultivariatePolynomial operator*(const MultivariatePolynomial& a, const MultivariatePolynomial& b) {
    MultivariatePolynomial r;
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) {
        Monomial m = ma;
        for (const auto& [v, e] : mb) m[v] += e;
        r.add_term(m, ca * cb);
      }
    return r;
  }
  MultivariatePolynomial& operator*=(const MultivariatePolynomial& o) { return *this = *this * o; }

  friend bool operator==(const MultivariatePolynomial&, const MultivariatePolynomial&) = default;

  /// Full evaluation; every variable occurring must be assigned.
  Rational evaluate(const std::map<std::string, Rational>& values) const {
    Rational acc;
    for (const auto& [m, c] : terms_) {
      Rational t = c;
      for (const auto& [v, e] : m) {
        auto it = values.find(v);
        if (it == values.end()) throw DomainError("no value for variable " + v);
        for (unsigned k = 0; k < e; ++k) t *= it->second;
      }
      acc += t;
    }
    return acc;
  }

  /// Partial substitution of the named variables.
  MultivariatePolynomial substitute(const std::map<std::string, Rational>& values) const {
    MultivariatePolynomial r;
    for (const auto& [m, c] : terms_) {
      Rational t = c;
      Monomial rest;
      for (const auto& [v, e] : m) {
        auto it = values.find(v);
        if (it == values.end()) {
          rest.emplace(v, e);
          continue;
        }
        for (unsigned k = 0; k < e; ++k) t *= it->second;
      }
      r.add_term(rest, t);
    }
    return r;
  }

  /// Divides every term by m; throws if some term is not divisible.
  MultivariatePolynomial divide_by_monomial(const Monomial& m) const {
    MultivariatePolynomial r;
    for (const auto& [tm, c] : terms_) {
      Monomial q = tm;
      for (const auto& [v, e] : m) {
        auto it = q.find(v);
        if (it == q.end() || it->second < e) throw DomainError("monomial does not divide polynomial");
        if ((it->second -= e) == 0) q.erase(it);
      }
      r.terms_.emplace(std::move(q), c);
    }
    return r;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    // Graded lexicographic, variables in name order.
    std::vector<std::pair<const Monomial*, const Rational*>> order;
    for (const auto& [m, c] : terms_) order.emplace_back(&m, &c);
    auto deg = [](const Monomial& m) {
      unsigned d = 0;
      for (const auto& kv : m) d += kv.second;
      return d;
    };
    std::stable_sort(order.begin(), order.end(), [&](const auto& a, const auto& b) {
      unsigned da = deg(*a.first), db = deg(*b.first);
      if (da != db) return da > db;
      auto i = a.first->begin(), j = b.first->begin();
      for (; i != a.first->end() && j != b.first->end(); ++i, ++j) {
        if (i->first != j->first) return i->first < j->first;
        if (i->second != j->second) return i->second > j->second;
      }
      return j == b.first->end() && i != a.first->end();
    });
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : order) {
      Rational mag = c->sign() < 0 ? -*c : *c;
      if (first)
        os << (c->sign() < 0 ? "-" : "");
      else
        os << (c->sign() < 0 ? " - " : " + ");
      first = false;
      bool unit = mag == Rational(1);
      if (m->empty() || !unit) os << mag.str();
      bool need_star = !m->empty() && !unit;
      for (const auto& [v, e] : *m) {
        if (need_star) os << '*';
        os << v;
        if (e > 1) os << '^' << e;
        need_star = true;
      }
    }
    return os.str();
  }

private:
  void add_term(const Monomial& m, const Rational& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }
  std::map<Monomial, Rational> terms_;
};

/// Largest monomial dividing every term of every polynomial given.
inline Monomial monomial_gcd(std::span<const MultivariatePolynomial> polys) {
  std::optional<Monomial> g;
  for (const auto& p : polys)
    for (const auto& [m, c] : p.terms()) {
      if (!g) {
        g = m;
        continue;
      }
      Monomial next;
      for (const auto& [v, e] : *g) {
        auto it = m.find(v);
        if (it != m.end()) next.emplace(v, std::min(e, it->second));
      }
      g = std::move(next);
    }
  return g.value_or(Monomial{});
}

// ---------------------------------------------------------------------------
// Exact dense linear algebra

using RationalMatrix = std::vector<std::vector<Rational>>;

/// Row-reduces in place; returns the rank.
inline std::size_t row_reduce(RationalMatrix& m) {
  std::size_t rank = 0;
  std::size_t cols = m.empty() ? 0 : m.front().size();
  for (std::size_t col = 0; col < cols && rank < m.size(); ++col) {
    std::size_t pivot = rank;
    while (pivot < m.size() && m[pivot][col].is_zero()) ++pivot;
    if (pivot == m.size()) continue;
    std::swap(m[rank], m[pivot]);
    Rational inv = Rational(1) / m[rank][col];
    for (auto& v : m[rank]) v *= inv;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == rank || m[r][col].is_zero()) continue;
      Rational f = m[r][col];
      for (std::size_t c = col; c < cols; ++c) m[r][c] -= f * m[rank][c];
    }
    ++rank;
  }
  return rank;
}

inline std::size_t matrix_rank(RationalMatrix m) { return row_reduce(m); }

/// Unique solution of a square system, or nullopt when it is singular.
inline std::optional<std::vector<Rational>> solve_linear(const RationalMatrix& a, const std::vector<Rational>& b) {
  std::size_t n = a.size();
  RationalMatrix aug(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i].size() != n) throw DomainError("solve_linear needs a square matrix");
    aug[i] = a[i];
    aug[i].push_back(b[i]);
  }
  RationalMatrix reduced = aug;
  row_reduce(reduced);
  std::vector<Rational> x(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (reduced[i][i] != Rational(1)) return std::nullopt;
    x[i] = reduced[i][n];
  }
  return x;
}

inline Rational determinant(RationalMatrix m) {
  std::size_t n = m.size();
  Rational det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m[pivot][col].is_zero()) ++pivot;
    if (pivot == n) return 0;
    if (pivot != col) {
      std::swap(m[pivot], m[col]);
      det = -det;
    }
    det *= m[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      if (m[r][col].is_zero()) continue;
      Rational f = m[r][col] / m[col][col];
      for (std::size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
    }
  }
  return det;
}

} // namespace cq

template <>
struct std::hash<cq::Rational> {
  std::size_t operator()(const cq::Rational& r) const noexcept { return std::hash<std::string>{}(r.str()); }
};

#endif // CQ_EXACTMATH_HPP
