#ifndef CQ_CELLS_HPP
#define CQ_CELLS_HPP

// Bialynicki-Birula cells of CQ_n. Torus-fixed points are indexed by
// 2-permutations (ordered set partitions of [n] into blocks of size 1 or 2);
// the cell of sigma is parametrized by a unitriangular X and a monomial
// symmetric Y_sigma through (X Y X^T, X^{-T} Y~ X^{-1}).

#include <algorithm>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "cq/error.hpp"
#include "cq/exactmath.hpp"

namespace cq {

class TwoPermutation {
public:
  /// blocks[j] = sigma^{-1}(j+1), elements 1-based.
  explicit TwoPermutation(std::vector<std::vector<int>> blocks) : blocks_(std::move(blocks)) {
    int n = 0;
    for (auto& b : blocks_) {
      if (b.empty() || b.size() > 2) throw DomainError("2-permutation blocks must have size 1 or 2");
      std::sort(b.begin(), b.end());
      n += static_cast<int>(b.size());
    }
    n_ = n;
    std::vector<bool> seen(n + 1, false);
    for (const auto& b : blocks_)
      for (int e : b) {
        if (e < 1 || e > n || seen[e]) throw DomainError("blocks do not partition [" + std::to_string(n) + "]");
        seen[e] = true;
      }
  }

  /// "2|13"; for n >= 10 the elements inside a block are comma separated ("1,10|2").
  static TwoPermutation parse(std::string_view text) {
    std::vector<std::vector<int>> blocks;
    bool commas = text.find(',') != std::string_view::npos;
    std::size_t start = 0;
    while (true) {
      std::size_t bar = text.find('|', start);
      std::string_view part = text.substr(start, bar == std::string_view::npos ? std::string_view::npos : bar - start);
      std::vector<int> block;
      if (part.empty()) throw ParseError("empty block in 2-permutation '" + std::string(text) + "'");
      if (commas) {
        std::size_t s = 0;
        while (true) {
          std::size_t c = part.find(',', s);
          std::string_view num = part.substr(s, c == std::string_view::npos ? std::string_view::npos : c - s);
          if (num.empty() || !std::all_of(num.begin(), num.end(), [](char ch) { return ch >= '0' && ch <= '9'; }))
            throw ParseError("bad element in 2-permutation '" + std::string(text) + "'");
          block.push_back(std::stoi(std::string(num)));
          if (c == std::string_view::npos) break;
          s = c + 1;
        }
      } else {
        for (char ch : part) {
          if (ch < '1' || ch > '9') throw ParseError("bad element in 2-permutation '" + std::string(text) + "'");
          block.push_back(ch - '0');
        }
      }
      blocks.push_back(std::move(block));
      if (bar == std::string_view::npos) break;
      start = bar + 1;
    }
    try {
      return TwoPermutation(std::move(blocks));
    } catch (const DomainError& e) {
      throw ParseError(std::string(e.what()) + ": '" + std::string(text) + "'");
    }
  }

  int n() const { return n_; }
  int block_count() const { return static_cast<int>(blocks_.size()); }
  const std::vector<std::vector<int>>& blocks() const { return blocks_; }

  /// sigma(i), 1-based in and out.
  int operator()(int i) const {
    for (std::size_t j = 0; j < blocks_.size(); ++j)
      if (std::find(blocks_[j].begin(), blocks_[j].end(), i) != blocks_[j].end()) return static_cast<int>(j) + 1;
    throw DomainError("element " + std::to_string(i) + " outside [" + std::to_string(n_) + "]");
  }

  /// max sigma^{-1}(j), j 1-based.
  int block_max(int j) const { return blocks_[j - 1].back(); }

  std::string str() const {
    std::string s;
    for (std::size_t j = 0; j < blocks_.size(); ++j) {
      if (j) s += '|';
      for (std::size_t k = 0; k < blocks_[j].size(); ++k) {
        if (k && n_ >= 10) s += ',';
        s += std::to_string(blocks_[j][k]);
      }
    }
    return s;
  }

  friend auto operator<=>(const TwoPermutation& a, const TwoPermutation& b) { return a.blocks_ <=> b.blocks_; }
  friend bool operator==(const TwoPermutation& a, const TwoPermutation& b) { return a.blocks_ == b.blocks_; }

private:
  int n_ = 0;
  std::vector<std::vector<int>> blocks_;
};

namespace detail {

inline void enumerate_blocks(std::vector<int>& remaining, std::vector<std::vector<int>>& prefix, std::vector<TwoPermutation>& out) {
  if (remaining.empty()) {
    out.emplace_back(prefix);
    return;
  }
  const std::vector<int> snapshot = remaining;
  for (std::size_t a = 0; a < snapshot.size(); ++a) {
    // [a] sorts before every [a, b].
    for (std::size_t b = a; b < snapshot.size(); ++b) {
      std::vector<int> block{snapshot[a]};
      if (b != a) block.push_back(snapshot[b]);
      remaining.clear();
      for (std::size_t k = 0; k < snapshot.size(); ++k)
        if (k != a && k != b) remaining.push_back(snapshot[k]);
      prefix.push_back(std::move(block));
      enumerate_blocks(remaining, prefix, out);
      prefix.pop_back();
    }
  }
  remaining = snapshot;
}

} // namespace detail

/// All 2-permutations of [n], ordered lexicographically by their block lists.
inline std::vector<TwoPermutation> enumerate_two_permutations(int n) {
  if (n < 1) throw DomainError("2-permutations need n >= 1");
  if (n > 10) throw DomainError("enumeration is limited to n <= 10");
  std::vector<int> remaining(n);
  for (int i = 0; i < n; ++i) remaining[i] = i + 1;
  std::vector<std::vector<int>> prefix;
  std::vector<TwoPermutation> out;
  detail::enumerate_blocks(remaining, prefix, out);
  return out;
}

/// #{i < j : sigma(i) <= sigma(j)} + #{j : max sigma^{-1}(j) < max sigma^{-1}(j+1)}
inline int weight(const TwoPermutation& s) {
  std::vector<int> sigma(s.n() + 1);
  for (int j = 1; j <= s.block_count(); ++j)
    for (int e : s.blocks()[j - 1]) sigma[e] = j;
  int w = 0;
  for (int i = 1; i <= s.n(); ++i)
    for (int j = i + 1; j <= s.n(); ++j)
      if (sigma[i] <= sigma[j]) ++w;
  for (int j = 1; j < s.block_count(); ++j)
    if (s.block_max(j) < s.block_max(j + 1)) ++w;
  return w;
}

/// dim A_m(CQ_n) for m = 0 .. C(n+1,2)-1.
inline std::vector<BigInt> chow_group_dimensions(int n) {
  const long dim = binomial(n + 1, 2).get_si();
  std::vector<BigInt> h(dim, 0);
  for (const auto& s : enumerate_two_permutations(n)) {
    int w = weight(s);
    if (w < 0 || w >= dim) throw InternalError("weight " + std::to_string(w) + " of " + s.str() + " outside 0.." + std::to_string(dim - 1));
    h[w] += 1;
  }
  return h;
}

/// Exponents d_i = 4^i of the one-parameter subgroup t -> (t^{d_1}, ..., t^{d_n}).
/// The pair sums must be strictly increasing in the order
/// 2d_1 < d_1+d_2 < 2d_2 < d_1+d_3 < d_2+d_3 < 2d_3 < ...
inline std::vector<BigInt> one_parameter_weights(int n) {
  if (n < 1) throw DomainError("n must be positive");
  std::vector<BigInt> d;
  for (int i = 1; i <= n; ++i) d.push_back(pow(BigInt(4), i));
  std::optional<BigInt> prev;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i <= j; ++i) {
      BigInt s = d[i] + d[j];
      if (prev && !(*prev < s)) throw InternalError("one-parameter subgroup is not generic");
      prev = s;
    }
  return d;
}

using PolynomialMatrix = std::vector<std::vector<MultivariatePolynomial>>;

inline PolynomialMatrix multiply(const PolynomialMatrix& a, const PolynomialMatrix& b) {
  const std::size_t n = a.size(), m = b.empty() ? 0 : b[0].size(), inner = b.size();
  PolynomialMatrix c(n, std::vector<MultivariatePolynomial>(m));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < inner; ++k) {
      if (a[i][k].is_zero()) continue;
      for (std::size_t j = 0; j < m; ++j)
        if (!b[k][j].is_zero()) c[i][j] += a[i][k] * b[k][j];
    }
  return c;
}

inline PolynomialMatrix transpose(const PolynomialMatrix& a) {
  PolynomialMatrix t(a.empty() ? 0 : a[0].size(), std::vector<MultivariatePolynomial>(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) t[j][i] = a[i][j];
  return t;
}

/// Inverse of a unitriangular matrix: sum_k (I - X)^k.
inline PolynomialMatrix unitriangular_inverse(const PolynomialMatrix& x) {
  const std::size_t n = x.size();
  PolynomialMatrix nil(n, std::vector<MultivariatePolynomial>(n)), inv(n, std::vector<MultivariatePolynomial>(n));
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i][i] != MultivariatePolynomial(1)) throw DomainError("matrix is not unitriangular");
    inv[i][i] = 1;
    for (std::size_t j = 0; j < i; ++j) nil[i][j] = -x[i][j];
  }
  PolynomialMatrix power = nil;
  for (std::size_t k = 1; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) inv[i][j] += power[i][j];
    power = multiply(power, nil);
  }
  return inv;
}

struct CellParametrization {
  TwoPermutation sigma;
  PolynomialMatrix X;          // lower unitriangular, X[j][i] = x_{i+1,j+1}
  PolynomialMatrix Y;          // Y_sigma, normalized so that block 1 carries 1
  PolynomialMatrix Y_companion;
  std::vector<std::string> x_variables;  // free ones only
  std::vector<std::string> y_variables;  // free ones only

  int free_variable_count() const { return static_cast<int>(x_variables.size() + y_variables.size()); }
  std::vector<std::string> free_variables() const {
    std::vector<std::string> v = x_variables;
    v.insert(v.end(), y_variables.begin(), y_variables.end());
    return v;
  }
};

inline std::string x_variable_name(int n, int i, int j) {
  return n >= 10 ? "x" + std::to_string(i) + "_" + std::to_string(j) : "x" + std::to_string(i) + std::to_string(j);
}

/// X with x_{ij} = 0 when i < j and sigma(i) > sigma(j); Y_sigma with
/// Y_{jj} (singleton block {j}) or Y_{j1 j2} (pair block) equal to
/// y_1 ... y_{b-1} for block b, and y_b = 0 when max block b > max block b+1.
/// The companion Y~ is adj(Y) over generic y with its monomial content removed,
/// the forced zeros being imposed afterwards.
inline CellParametrization cell_parametrization(const TwoPermutation& s) {
  const int n = s.n(), k = s.block_count();
  CellParametrization p{s, {}, {}, {}, {}, {}};
  p.X.assign(n, std::vector<MultivariatePolynomial>(n));
  for (int j = 1; j <= n; ++j) {
    p.X[j - 1][j - 1] = 1;
    for (int i = 1; i < j; ++i) {
      if (s(i) > s(j)) continue;
      std::string name = x_variable_name(n, i, j);
      p.X[j - 1][i - 1] = MultivariatePolynomial::variable(name);
      p.x_variables.push_back(name);
    }
  }
  std::map<std::string, Rational> forced;
  for (int b = 1; b < k; ++b) {
    std::string name = "y" + std::to_string(b);
    if (s.block_max(b) > s.block_max(b + 1))
      forced[name] = 0;
    else
      p.y_variables.push_back(name);
  }

  // Monomial of block b is y_1 ... y_{b-1}; Y pairs every row with one column.
  std::vector<int> partner(n + 1);
  std::vector<Monomial> entry(n + 1);
  for (int b = 1; b <= k; ++b) {
    Monomial m;
    for (int t = 1; t < b; ++t) m["y" + std::to_string(t)] = 1;
    const auto& block = s.blocks()[b - 1];
    partner[block.front()] = block.back();
    partner[block.back()] = block.front();
    for (int e : block) entry[e] = m;
  }
  Monomial det;
  for (int r = 1; r <= n; ++r)
    for (const auto& [v, e] : entry[r]) det[v] += e;
  // Y^{-1} has 1/Y_{r, partner(r)} in the same slot, so |adj Y| there is det / entry.
  std::vector<Monomial> adj(n + 1);
  for (int r = 1; r <= n; ++r) {
    Monomial q = det;
    for (const auto& [v, e] : entry[r])
      if ((q[v] -= e) == 0) q.erase(v);
    adj[r] = std::move(q);
  }
  std::vector<MultivariatePolynomial> adj_terms;
  for (int r = 1; r <= n; ++r) adj_terms.push_back(MultivariatePolynomial::term(1, adj[r]));
  const Monomial content = monomial_gcd(adj_terms);

  p.Y.assign(n, std::vector<MultivariatePolynomial>(n));
  p.Y_companion.assign(n, std::vector<MultivariatePolynomial>(n));
  for (int r = 1; r <= n; ++r) {
    p.Y[r - 1][partner[r] - 1] = MultivariatePolynomial::term(1, entry[r]).substitute(forced);
    p.Y_companion[r - 1][partner[r] - 1] = adj_terms[r - 1].divide_by_monomial(content).substitute(forced);
  }
  return p;
}

/// Symbolic (A, B) = (X Y X^T, X^{-T} Y~ X^{-1}); since det X = 1, adj(X) = X^{-1}.
inline std::pair<PolynomialMatrix, PolynomialMatrix> cell_matrices(const CellParametrization& p) {
  PolynomialMatrix xinv = unitriangular_inverse(p.X);
  PolynomialMatrix a = multiply(multiply(p.X, p.Y), transpose(p.X));
  PolynomialMatrix b = multiply(multiply(transpose(xinv), p.Y_companion), xinv);
  return {a, b};
}

inline RationalMatrix evaluate(const PolynomialMatrix& m, const std::map<std::string, Rational>& values) {
  RationalMatrix out(m.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (const auto& e : m[i]) out[i].push_back(e.evaluate(values));
  return out;
}

inline RationalMatrix multiply(const RationalMatrix& a, const RationalMatrix& b) {
  RationalMatrix c(a.size(), std::vector<Rational>(b.empty() ? 0 : b[0].size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k)
      for (std::size_t j = 0; j < c[i].size(); ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

/// lambda if m = lambda * I.
inline std::optional<Rational> scalar_multiple_of_identity(const RationalMatrix& m) {
  if (m.empty()) return Rational(0);
  Rational lambda = m[0][0];
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m[i].size(); ++j)
      if (m[i][j] != (i == j ? lambda : Rational(0))) return std::nullopt;
  return lambda;
}

struct CellPoint {
  RationalMatrix A, B;
  std::optional<Rational> lambda;  // A B = lambda I
};

inline CellPoint evaluate_cell_point(const CellParametrization& p, const std::map<std::string, Rational>& values) {
  const auto names = p.free_variables();
  for (const auto& name : names) {
    auto it = values.find(name);
    if (it == values.end()) throw DomainError("no value for free variable " + name);
    if (it->second.is_zero()) throw DomainError("value of " + name + " must be nonzero");
  }
  for (const auto& [name, v] : values)
    if (std::find(names.begin(), names.end(), name) == names.end()) throw DomainError(name + " is not a free variable of cell " + p.sigma.str());
  auto [a, b] = cell_matrices(p);
  CellPoint pt{evaluate(a, values), evaluate(b, values), std::nullopt};
  pt.lambda = scalar_multiple_of_identity(multiply(pt.A, pt.B));
  return pt;
}

namespace detail {

inline bool is_symmetric_nonzero(const RationalMatrix& m) {
  bool nonzero = false;
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) {
      if (m[i][j] != m[j][i]) return false;
      nonzero = nonzero || !m[i][j].is_zero();
    }
  return nonzero;
}

} // namespace detail

/// (A, B) is a point of P(S^2) x P(S^2) with A B = lambda I (lambda may be 0).
inline bool verify_cell_point(const TwoPermutation& s, const std::map<std::string, Rational>& values) {
  if (s.n() != 3) throw DomainError("companion matrix construction only specified for n=3");
  CellPoint pt = evaluate_cell_point(cell_parametrization(s), values);
  return detail::is_symmetric_nonzero(pt.A) && detail::is_symmetric_nonzero(pt.B) && pt.lambda.has_value();
}

/// Any n: A B = lambda I, and lambda != 0 whenever A is invertible.
inline bool verify_generic_point(const TwoPermutation& s, const std::map<std::string, Rational>& values) {
  CellPoint pt = evaluate_cell_point(cell_parametrization(s), values);
  if (!detail::is_symmetric_nonzero(pt.A) || !detail::is_symmetric_nonzero(pt.B) || !pt.lambda) return false;
  bool invertible = !determinant(pt.A).is_zero();
  return !invertible || !pt.lambda->is_zero();
}

/// Random nonzero rationals p/q with |p|, q <= bound for every free variable.
inline std::map<std::string, Rational> random_cell_values(const CellParametrization& p, std::mt19937_64& rng, int bound = 9) {
  std::uniform_int_distribution<int> num(1, bound), den(1, bound), sign(0, 1);
  std::map<std::string, Rational> values;
  for (const auto& name : p.free_variables()) values.emplace(name, Rational(sign(rng) ? num(rng) : -num(rng), den(rng)));
  return values;
}

} // namespace cq

#endif // CQ_CELLS_HPP
