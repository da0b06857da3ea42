#ifndef CQ_TORIC_HPP
#define CQ_TORIC_HPP

// Chow rings of smooth complete toric varieties, presented on the fan: one
// generator x_rho per ray, products of rays not spanning a cone vanish, and
// sum_rho <m, u_rho> x_rho = 0 for every character m. Classes are kept as
// combinations of cone monomials; on a smooth complete fan every maximal cone
// monomial has degree 1.

#include <algorithm>
#include <bit>
#include <istream>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "cq/error.hpp"
#include "cq/exactmath.hpp"

namespace cq {

/// Sorted ray indices.
using Cone = std::vector<int>;

struct Fan {
  int rank = 0;
  std::vector<std::vector<long>> rays;
  std::vector<Cone> maximal_cones;
  std::vector<std::string> ray_labels;  // optional, one per ray

  std::string label(int ray) const {
    return ray < static_cast<int>(ray_labels.size()) ? ray_labels[ray] : std::to_string(ray + 1);
  }
};

/// Text format: "rank #rays #cones", then #rays rows of `rank` integers,
/// then #cones rows of `rank` 1-based ray indices.
inline Fan parse_fan(std::istream& in) {
  long rank = 0, nrays = 0, ncones = 0;
  if (!(in >> rank >> nrays >> ncones) || rank < 1 || nrays < 0 || ncones < 0) throw ParseError("fan file: expected header 'rank #rays #cones'");
  Fan fan;
  fan.rank = static_cast<int>(rank);
  fan.rays.assign(nrays, std::vector<long>(rank));
  for (auto& r : fan.rays)
    for (auto& x : r)
      if (!(in >> x)) throw ParseError("fan file: too few ray coordinates");
  for (long c = 0; c < ncones; ++c) {
    Cone cone(rank);
    for (auto& idx : cone) {
      long v = 0;
      if (!(in >> v)) throw ParseError("fan file: too few cone entries");
      if (v < 1 || v > nrays) throw ParseError("fan file: ray index " + std::to_string(v) + " out of range");
      idx = static_cast<int>(v - 1);
    }
    std::sort(cone.begin(), cone.end());
    if (std::adjacent_find(cone.begin(), cone.end()) != cone.end()) throw ParseError("fan file: repeated ray in a cone");
    fan.maximal_cones.push_back(std::move(cone));
  }
  return fan;
}

namespace detail {

inline RationalMatrix cone_matrix(const Fan& fan, const Cone& cone) {
  RationalMatrix m;
  for (int r : cone) m.emplace_back(fan.rays[r].begin(), fan.rays[r].end());
  return m;
}

} // namespace detail

/// Every maximal cone is generated by a Z-basis of the lattice.
inline bool is_smooth(const Fan& fan) {
  for (const auto& cone : fan.maximal_cones) {
    if (static_cast<int>(cone.size()) != fan.rank) return false;
    Rational det = determinant(detail::cone_matrix(fan, cone));
    if (det != Rational(1) && det != Rational(-1)) return false;
  }
  return true;
}

/// Every codimension-one face of a maximal cone lies in exactly two maximal
/// cones (no boundary walls).
inline bool is_complete(const Fan& fan) {
  if (fan.maximal_cones.empty()) return false;
  std::map<Cone, int> walls;
  for (const auto& cone : fan.maximal_cones) {
    if (static_cast<int>(cone.size()) != fan.rank) return false;
    for (std::size_t skip = 0; skip < cone.size(); ++skip) {
      Cone wall;
      for (std::size_t k = 0; k < cone.size(); ++k)
        if (k != skip) wall.push_back(cone[k]);
      ++walls[wall];
    }
  }
  return std::all_of(walls.begin(), walls.end(), [](const auto& kv) { return kv.second == 2; });
}

/// Normal fan of the permutohedron in Z^{n+1}/Z(1,...,1): a ray u_S for every
/// proper nonempty S of [n+1] and a maximal cone per complete chain of such
/// subsets. Coordinates drop the last basis vector (u_S -> 1_S - [n+1 in S] 1).
/// Labels list the elements of S, e.g. "13".
inline Fan permutohedral_fan(int n) {
  if (n < 1) throw DomainError("permutohedral fan needs n >= 1");
  if (n > 8) throw DomainError("permutohedral fan is limited to n <= 8");
  const int m = n + 1;
  std::vector<unsigned> subsets;
  for (unsigned s = 1; s + 1 < (1u << m); ++s) subsets.push_back(s);
  std::stable_sort(subsets.begin(), subsets.end(), [](unsigned a, unsigned b) {
    int pa = std::popcount(a), pb = std::popcount(b);
    if (pa != pb) return pa < pb;
    for (int i = 0;; ++i) {  // lexicographic on the sorted element lists
      bool ia = a >> i & 1, ib = b >> i & 1;
      if (ia != ib) return ia;
    }
  });
  std::map<unsigned, int> index;
  Fan fan;
  fan.rank = n;
  for (unsigned s : subsets) {
    index[s] = static_cast<int>(fan.rays.size());
    std::vector<long> u(n);
    long last = (s >> n) & 1;
    for (int i = 0; i < n; ++i) u[i] = static_cast<long>((s >> i) & 1) - last;
    fan.rays.push_back(std::move(u));
    std::string label;
    for (int i = 0; i < m; ++i)
      if (s >> i & 1) label += std::to_string(i + 1);
    fan.ray_labels.push_back(std::move(label));
  }
  std::vector<int> perm(m);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    Cone cone;
    unsigned chain = 0;
    for (int k = 0; k < n; ++k) {
      chain |= 1u << perm[k];
      cone.push_back(index.at(chain));
    }
    std::sort(cone.begin(), cone.end());
    fan.maximal_cones.push_back(std::move(cone));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return fan;
}

/// A homogeneous Chow class: cone -> coefficient, degree = cone size.
struct ToricClass {
  int degree = 0;
  std::map<Cone, Rational> terms;

  void add(const Cone& c, const Rational& v) {
    if (v.is_zero()) return;
    auto [it, inserted] = terms.try_emplace(c, v);
    if (!inserted) {
      it->second += v;
      if (it->second.is_zero()) terms.erase(it);
    }
  }
  friend bool operator==(const ToricClass&, const ToricClass&) = default;
};

class ToricChowRing {
public:
  explicit ToricChowRing(Fan fan) : fan_(std::move(fan)) {
    for (const auto& r : fan_.rays)
      if (static_cast<int>(r.size()) != fan_.rank) throw DomainError("ray dimension does not match fan rank");
    for (const auto& cone : fan_.maximal_cones) {
      if (static_cast<int>(cone.size()) != fan_.rank) throw DomainError("maximal cone without rank-many rays");
      for (int r : cone)
        if (r < 0 || r >= static_cast<int>(fan_.rays.size())) throw DomainError("cone refers to a missing ray");
      const std::size_t k = cone.size();
      for (unsigned long mask = 0; mask < (1ul << k); ++mask) {
        Cone face;
        for (std::size_t j = 0; j < k; ++j)
          if (mask >> j & 1) face.push_back(cone[j]);
        faces_.insert(std::move(face));
      }
    }
  }

  const Fan& fan() const { return fan_; }
  int ray_count() const { return static_cast<int>(fan_.rays.size()); }

  bool is_cone(const Cone& c) const { return faces_.count(c) > 0; }

  ToricClass one() const {
    ToricClass c;
    c.add({}, 1);
    return c;
  }

  ToricClass ray_class(int r) const { return multiply_by_ray(one(), r); }

  /// Divisor sum_rho d[rho] x_rho.
  ToricClass multiply_by_divisor(const ToricClass& c, std::span<const Rational> d) const {
    if (static_cast<int>(d.size()) != ray_count()) throw DomainError("divisor needs one coefficient per ray");
    ToricClass out;
    out.degree = c.degree + 1;
    for (int r = 0; r < ray_count(); ++r) {
      if (d[r].is_zero()) continue;
      const ToricClass step = multiply_by_ray(c, r);
      for (const auto& [cone, coeff] : step.terms) out.add(cone, coeff * d[r]);
    }
    return out;
  }

  ToricClass multiply_by_divisor(const ToricClass& c, const std::vector<Rational>& d) const {
    return multiply_by_divisor(c, std::span<const Rational>(d));
  }

  ToricClass multiply_by_ray(const ToricClass& c, int r) const {
    if (r < 0 || r >= ray_count()) throw DomainError("ray index out of range");
    ToricClass out;
    out.degree = c.degree + 1;
    for (const auto& [tau, coeff] : c.terms) {
      if (!std::binary_search(tau.begin(), tau.end(), r)) {
        Cone grown = tau;
        grown.insert(std::upper_bound(grown.begin(), grown.end(), r), r);
        if (is_cone(grown)) out.add(grown, coeff);
        continue;
      }
      // x_r = -sum_{rho not in tau} <m, u_rho> x_rho, with m dual to r on a
      // maximal cone containing tau.
      const std::vector<Rational>& pairing = dual_pairing(tau, r);
      for (int rho = 0; rho < ray_count(); ++rho) {
        if (pairing[rho].is_zero() || std::binary_search(tau.begin(), tau.end(), rho)) continue;
        Cone grown = tau;
        grown.insert(std::upper_bound(grown.begin(), grown.end(), rho), rho);
        if (is_cone(grown)) out.add(grown, -pairing[rho] * coeff);
      }
    }
    return out;
  }

  /// Degree map: every maximal-cone monomial integrates to 1.
  Rational integral(const ToricClass& c) const {
    if (c.degree != fan_.rank) throw DomainError("degree mismatch: class has degree " + std::to_string(c.degree) + ", fan rank is " + std::to_string(fan_.rank));
    Rational total;
    for (const auto& [cone, coeff] : c.terms) total += coeff;
    return total;
  }

private:
  // <m, u_rho> for all rho, where m pairs to 1 with u_r and to 0 with the
  // other rays of a maximal cone containing tau.
  const std::vector<Rational>& dual_pairing(const Cone& tau, int r) const {
    std::size_t sigma_index = 0;
    for (; sigma_index < fan_.maximal_cones.size(); ++sigma_index) {
      const Cone& sigma = fan_.maximal_cones[sigma_index];
      if (std::includes(sigma.begin(), sigma.end(), tau.begin(), tau.end())) break;
    }
    if (sigma_index == fan_.maximal_cones.size()) throw DomainError("monomial is not supported on a cone");
    std::pair<std::size_t, int> key{sigma_index, r};
    std::lock_guard lock(mutex_);
    if (auto it = pairing_cache_.find(key); it != pairing_cache_.end()) return it->second;

    const Cone& sigma = fan_.maximal_cones[sigma_index];
    RationalMatrix basis = detail::cone_matrix(fan_, sigma);
    Rational det = determinant(basis);
    if (det != Rational(1) && det != Rational(-1)) throw DomainError("fan not smooth");
    std::vector<Rational> rhs(fan_.rank);
    rhs[std::lower_bound(sigma.begin(), sigma.end(), r) - sigma.begin()] = 1;
    auto m = solve_linear(basis, rhs);
    if (!m) throw DomainError("fan not smooth");
    std::vector<Rational> pairing(ray_count());
    for (int rho = 0; rho < ray_count(); ++rho)
      for (int j = 0; j < fan_.rank; ++j) pairing[rho] += (*m)[j] * Rational(fan_.rays[rho][j]);
    return pairing_cache_.emplace(key, std::move(pairing)).first->second;
  }

  Fan fan_;
  std::set<Cone> faces_;
  mutable std::mutex mutex_;
  mutable std::map<std::pair<std::size_t, int>, std::vector<Rational>> pairing_cache_;
};

/// Pullbacks of the hyperplane class along the two projections of the
/// permutohedral variety: H1 = sum_{S containing 1} x_S, H2 = sum_{S not containing 1} x_S.
inline std::pair<std::vector<Rational>, std::vector<Rational>> permutohedral_hyperplanes(const Fan& permutohedral) {
  std::vector<Rational> h1(permutohedral.rays.size()), h2(permutohedral.rays.size());
  for (std::size_t r = 0; r < permutohedral.rays.size(); ++r) {
    // S contains the last element iff some coordinate is negative; then
    // u_1 = 0 means 1 in S, otherwise u_1 = 1 does.
    const auto& u = permutohedral.rays[r];
    bool last_in = std::any_of(u.begin(), u.end(), [](long x) { return x < 0; });
    bool in = u[0] == (last_in ? 0 : 1);
    (in ? h1 : h2)[r] = 1;
  }
  return {h1, h2};
}

/// Projective degrees mu_i = \int H1^{n-i} H2^i of the Cremona map on P^n,
/// computed on the permutohedral variety.
inline std::vector<BigInt> mu_generic(int n) {
  ToricChowRing ring(permutohedral_fan(n));
  auto [h1, h2] = permutohedral_hyperplanes(ring.fan());
  std::vector<BigInt> mu;
  for (int i = 0; i <= n; ++i) {
    ToricClass c = ring.one();
    for (int k = 0; k < n - i; ++k) c = ring.multiply_by_divisor(c, h1);
    for (int k = 0; k < i; ++k) c = ring.multiply_by_divisor(c, h2);
    mu.push_back(ring.integral(c).to_integer());
  }
  return mu;
}

} // namespace cq

#endif // CQ_TORIC_HPP
