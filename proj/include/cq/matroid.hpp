#ifndef CQ_MATROID_HPP
#define CQ_MATROID_HPP

// Matroids given by a rank oracle (graphic, linear, uniform, duals) and their
// characteristic polynomials. The unsigned coefficients of the reduced
// characteristic polynomial are the projective degrees nu_i of the Cremona
// map restricted to the corresponding linear space.

#include <bit>
#include <cstdint>
#include <functional>
#include <istream>
#include <memory>
#include <numeric>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "cq/error.hpp"
#include "cq/exactmath.hpp"

namespace cq {

/// Multigraph on vertices 0..vertices-1; loops and parallel edges allowed.
struct Graph {
  int vertices = 0;
  std::vector<std::pair<int, int>> edges;

  Graph() = default;
  Graph(int v, std::vector<std::pair<int, int>> e) : vertices(v), edges(std::move(e)) {
    if (v < 0) throw DomainError("negative vertex count");
    for (auto [a, b] : edges)
      if (a < 0 || b < 0 || a >= v || b >= v) throw DomainError("edge endpoint outside vertex range");
  }

  static Graph cycle(int n) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
    return Graph(n, std::move(e));
  }
  static Graph complete(int n) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) e.emplace_back(i, j);
    return Graph(n, std::move(e));
  }

  /// Connected components, isolated vertices included.
  int component_count() const {
    std::vector<int> parent(vertices);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    int components = vertices;
    for (auto [a, b] : edges) {
      int ra = find(a), rb = find(b);
      if (ra != rb) {
        parent[ra] = rb;
        --components;
      }
    }
    return components;
  }
};

/// Text format: "v e" on the first line, then e lines "i j" with 1-based
/// vertex indices; a loop is "i i".
inline Graph parse_graph(std::istream& in) {
  long v = 0, e = 0;
  if (!(in >> v >> e) || v < 0 || e < 0) throw ParseError("graph file: expected header 'v e'");
  std::vector<std::pair<int, int>> edges;
  for (long k = 0; k < e; ++k) {
    long a = 0, b = 0;
    if (!(in >> a >> b)) throw ParseError("graph file: expected " + std::to_string(e) + " edge lines, got " + std::to_string(k));
    if (a < 1 || b < 1 || a > v || b > v) throw ParseError("graph file: edge " + std::to_string(k + 1) + " has an endpoint outside 1.." + std::to_string(v));
    edges.emplace_back(static_cast<int>(a - 1), static_cast<int>(b - 1));
  }
  return Graph(static_cast<int>(v), std::move(edges));
}

/// Text format: "rows cols" on the first line, then rows of rationals
/// ("3", "-1/2", ...). The rows span the subspace.
inline RationalMatrix parse_matrix(std::istream& in, int* cols_out = nullptr) {
  long rows = 0, cols = 0;
  if (!(in >> rows >> cols) || rows < 0 || cols < 0) throw ParseError("matrix file: expected header 'rows cols'");
  RationalMatrix m(rows, std::vector<Rational>(cols));
  for (long r = 0; r < rows; ++r)
    for (long c = 0; c < cols; ++c) {
      std::string tok;
      if (!(in >> tok)) throw ParseError("matrix file: too few entries");
      m[r][c] = Rational::parse(tok);
    }
  if (cols_out) *cols_out = static_cast<int>(cols);
  return m;
}

enum class Realization { Graphic, Linear, Uniform, Dual };

inline const char* to_string(Realization r) {
  switch (r) {
    case Realization::Graphic: return "graphic";
    case Realization::Linear: return "linear";
    case Realization::Uniform: return "uniform";
    case Realization::Dual: return "dual";
  }
  return "?";
}

/// A matroid on {0..ground_size-1} given by its rank function on bitmasks.
class Matroid {
public:
  using Mask = std::uint64_t;
  using RankFn = std::function<int(Mask)>;

  Matroid(int ground_size, RankFn rank, Realization tag) : n_(ground_size), rank_(std::move(rank)), tag_(tag) {
    if (ground_size < 0 || ground_size > 62) throw DomainError("matroid ground sets are limited to 62 elements");
  }

  int ground_size() const { return n_; }
  Mask ground() const { return n_ == 0 ? 0 : (Mask{1} << n_) - 1; }
  int rank(Mask s) const { return rank_(s & ground()); }
  int rank() const { return rank(ground()); }
  Realization realization() const { return tag_; }

  bool is_loop(int e) const { return rank(Mask{1} << e) == 0; }
  bool has_loop() const {
    for (int e = 0; e < n_; ++e)
      if (is_loop(e)) return true;
    return false;
  }

private:
  int n_;
  RankFn rank_;
  Realization tag_;
};

/// rank(S) = #vertices touched by S - #components of the subgraph S.
inline Matroid matroid_from_graph(const Graph& g) {
  auto graph = std::make_shared<const Graph>(g);
  auto rank = [graph](Matroid::Mask s) {
    std::vector<int> parent(graph->vertices);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    int r = 0;
    for (std::size_t k = 0; k < graph->edges.size(); ++k) {
      if (!(s >> k & 1)) continue;
      int a = find(graph->edges[k].first), b = find(graph->edges[k].second);
      if (a != b) {
        parent[a] = b;
        ++r;
      }
    }
    return r;
  };
  return Matroid(static_cast<int>(g.edges.size()), rank, Realization::Graphic);
}

/// The literal reading: S is independent iff {e_i : i in S} is linearly
/// independent modulo the row span L, i.e.
/// rank(S) = rank(L + span{e_i : i in S}) - rank(L).
inline Matroid matroid_from_subspace(const RationalMatrix& rows, int ambient_dimension) {
  for (const auto& r : rows)
    if (static_cast<int>(r.size()) != ambient_dimension) throw DomainError("subspace rows must have length " + std::to_string(ambient_dimension));
  if (ambient_dimension > 20) throw DomainError("linear matroids are limited to 20 coordinates");
  const std::size_t base = matrix_rank(rows);
  auto table = std::make_shared<std::vector<int>>(std::size_t{1} << ambient_dimension);
  for (Matroid::Mask s = 0; s < table->size(); ++s) {
    RationalMatrix m = rows;
    for (int i = 0; i < ambient_dimension; ++i)
      if (s >> i & 1) {
        std::vector<Rational> e(ambient_dimension);
        e[i] = 1;
        m.push_back(std::move(e));
      }
    (*table)[s] = static_cast<int>(matrix_rank(std::move(m)) - base);
  }
  return Matroid(ambient_dimension, [table](Matroid::Mask s) { return (*table)[s]; }, Realization::Linear);
}

/// U_{r,n}: rank(S) = min(|S|, r).
inline Matroid uniform_matroid(int r, int n) {
  if (r < 0 || n < 0 || r > n) throw DomainError("uniform matroid U_{r,n} needs 0 <= r <= n");
  return Matroid(n, [r](Matroid::Mask s) { return std::min(std::popcount(s), r); }, Realization::Uniform);
}

/// rank*(S) = |S| - rank(E) + rank(E \ S).
inline Matroid dual(const Matroid& m) {
  auto base = std::make_shared<const Matroid>(m);
  return Matroid(
      m.ground_size(),
      [base](Matroid::Mask s) { return std::popcount(s) - base->rank() + base->rank(base->ground() & ~s); },
      Realization::Dual);
}

/// chi_M(t) = sum_{S subset E} (-1)^{|S|} t^{rk(E) - rk(S)}, summed directly.
inline UnivariatePolynomial characteristic_polynomial_whitney(const Matroid& m) {
  if (m.ground_size() > 24) throw DomainError("Whitney sum is limited to 24 elements");
  const int full = m.rank();
  std::vector<BigInt> coeff(full + 1);
  for (Matroid::Mask s = 0; s <= m.ground(); ++s) {
    int k = full - m.rank(s);
    if (std::popcount(s) % 2 == 0)
      coeff[k] += 1;
    else
      coeff[k] -= 1;
    if (s == m.ground()) break;
  }
  std::vector<Rational> c(coeff.begin(), coeff.end());
  return UnivariatePolynomial(std::move(c));
}

namespace detail {

// chi of the minor (M / contracted) restricted to `remaining`.
inline UnivariatePolynomial deletion_contraction(const Matroid& m, Matroid::Mask contracted, Matroid::Mask remaining) {
  if (remaining == 0) return UnivariatePolynomial::constant(1);
  const int base = m.rank(contracted);
  auto rank = [&](Matroid::Mask s) { return m.rank(s | contracted) - base; };
  const Matroid::Mask e = remaining & (~remaining + 1);
  const Matroid::Mask rest = remaining & ~e;
  if (rank(e) == 0) return {};
  if (rank(rest) < rank(remaining)) return UnivariatePolynomial({Rational(-1), Rational(1)}) * deletion_contraction(m, contracted, rest);
  return deletion_contraction(m, contracted, rest) - deletion_contraction(m, contracted | e, rest);
}

} // namespace detail

/// chi_M via deletion-contraction: 0 on a loop, (t-1) chi_{M\e} on a
/// coloop, chi_{M\e} - chi_{M/e} otherwise.
inline UnivariatePolynomial characteristic_polynomial(const Matroid& m) {
  return detail::deletion_contraction(m, 0, m.ground());
}

/// Unsigned coefficients of chi_M(t)/(t-1), top degree first: (nu_0, ..., nu_{rk-1}).
inline std::vector<BigInt> reduced_characteristic_coefficients(const Matroid& m) {
  if (m.rank() < 1) throw DomainError("reduced characteristic polynomial needs rank >= 1");
  if (m.has_loop()) throw DomainError("matroid has a loop, chi_M vanishes identically");
  auto [quot, rem] = characteristic_polynomial(m).divmod(UnivariatePolynomial({Rational(-1), Rational(1)}));
  if (!rem.is_zero()) throw DomainError("chi_M(1) != 0");
  std::vector<BigInt> nu;
  for (int k = quot.degree(); k >= 0; --k) {
    BigInt c = quot.coefficient(k).to_integer();
    nu.push_back(abs(c));
  }
  return nu;
}

/// P(g, q) = q^{#components} chi_{M(g)}(q).
inline UnivariatePolynomial chromatic_polynomial(const Graph& g) {
  return UnivariatePolynomial::monomial(1, g.component_count()) * characteristic_polynomial(matroid_from_graph(g));
}

/// sum_i (-1)^i nu_i
inline BigInt euler_characteristic_complement(std::span<const BigInt> nu) {
  BigInt sum = 0;
  for (std::size_t i = 0; i < nu.size(); ++i) sum += (i % 2 == 0) ? nu[i] : BigInt(-nu[i]);
  return sum;
}

inline BigInt euler_characteristic_complement(const std::vector<BigInt>& nu) {
  return euler_characteristic_complement(std::span<const BigInt>(nu));
}

} // namespace cq

#endif // CQ_MATROID_HPP
