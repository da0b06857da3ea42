// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "cq/cells.hpp"
#include "cq/matroid.hpp"
#include "cq/quadrics.hpp"
#include "cq/schubert.hpp"
#include "cq/segre.hpp"
#include "cq/toric.hpp"
#include "oracles.hpp"

using namespace cq;

namespace {

struct Failure {
  std::string what;
};

void require(bool ok, const std::string& what) {
  if (!ok) throw Failure{what};
}

std::string str(const BigInt& v) { return v.get_str(); }

std::vector<BigInt> ints(std::initializer_list<long> v) { return {v.begin(), v.end()}; }

BigInt lx_ly(int n, int x, int y) { return intersection_product(CQProduct::empty(n).times_L(1, x).times_L(n - 1, y)); }

void criterion_1() {
  const std::vector<std::pair<int, std::vector<long>>> rows{
      {3, {1, 2, 4, 4, 2, 1}}, {4, {1, 3, 9, 17, 21, 21, 17, 9, 3}}, {5, {1, 4, 16, 44, 86, 137, 188, 212, 188}}};
  int count = 0;
  for (const auto& [n, row] : rows)
    for (std::size_t k = 0; k < row.size(); ++k, ++count) {
      BigInt got = phi(n, static_cast<int>(k) + 1);
      require(got == row[k], "phi(" + std::to_string(n) + "," + std::to_string(k + 1) + ") = " + str(got) + ", expected " + std::to_string(row[k]));
    }
  require(count == 24, "table size");
}

void criterion_2() {
  for (int n = 2; n <= 5; ++n)
    for (int d = 1; d <= cq_dimension(n) + 1; ++d)
      require(phi(n, d) == phi_from_delta(n, d), "phi != phi_from_delta at n=" + std::to_string(n) + ", d=" + std::to_string(d));
}

void criterion_3() {
  for (int n = 2; n <= 5; ++n)
    for (int m = 1; m <= cq_dimension(n); ++m)
      for (int r = 1; r < n; ++r)
        require((delta(m, n, r) != 0) == pataki_nonzero(m, n, r),
                "support mismatch at (m,n,r)=(" + std::to_string(m) + "," + std::to_string(n) + "," + std::to_string(r) + ")");
}

void criterion_4() {
  const UnivariatePolynomial n = UnivariatePolynomial::x();
  const UnivariatePolynomial one = UnivariatePolynomial::constant(1);
  const std::vector<UnivariatePolynomial> expected{one, n - one, (n - one) * (n - one)};
  for (int d = 1; d <= 3; ++d) {
    UnivariatePolynomial p = phi_polynomial(d);
    require(p == expected[d - 1], "phi_polynomial(" + std::to_string(d) + ") = " + p.str("n"));
    // phi_polynomial interpolates on n0..n0+d-1 and checks n0+d; probe one further point.
    int n0 = 2;
    while (binomial(n0 + 1, 2) < d) ++n0;
    const int extra = n0 + d + 1;
    require(p(Rational(extra)) == Rational(phi(extra, d)), "phi(" + std::to_string(extra) + "," + std::to_string(d) + ") off the polynomial");
  }
  for (int m = 1; m <= 3; ++m)
    for (int s = 1; s <= 2; ++s) {
      UnivariatePolynomial p = delta_polynomial(m, s);
      require(p(Rational(0)).is_zero(), "delta_polynomial(" + std::to_string(m) + "," + std::to_string(s) + ") at 0");
    }
}

void criterion_5() {
  int checked = 0;
  for (int n = 2; n <= 4; ++n)
    for (int c = 1; c <= n - 1; ++c)
      for (int d = 1; d <= cq_dimension(n); ++d) {
        if (!(binomial(n - c + 2, 2) > d)) continue;
        ++checked;
        require(phi_c(n, c, d) == c * phi(n, d), "phi_c(" + std::to_string(n) + "," + std::to_string(c) + "," + std::to_string(d) + ")");
      }
  require(checked > 0, "no admissible triples");
}

void criterion_6() {
  std::mt19937_64 rng(20240611);
  for (int k = 0; k < 50; ++k) {
    const int n = std::uniform_int_distribution<int>(2, 5)(rng);
    const int dim = cq_dimension(n);
    const int x = std::uniform_int_distribution<int>(0, dim)(rng);
    const int y = dim - x;
    require(lx_ly(n, x, y) == lx_ly(n, y, x), "asymmetry at n=" + std::to_string(n) + ", x=" + std::to_string(x));
  }
  std::vector<BigInt> row;
  for (int d = 1; d <= 6; ++d) row.push_back(phi(3, d));
  require(std::equal(row.begin(), row.end(), row.rbegin()), "n=3 row is not a palindrome");
}

void criterion_7() {
  require(reduced_characteristic_coefficients(matroid_from_graph(Graph::cycle(4))) == ints({1, 3, 3}), "C4");
  require(reduced_characteristic_coefficients(uniform_matroid(3, 3)) == ints({1, 2, 1}), "U(3,3)");
  for (int n = 1; n <= 8; ++n)
    for (int a = 1; a <= n; ++a) {
      // A generic a-dimensional L: its literal "independent modulo L" matroid is U_{n-a,n};
      // the matroid M(L) carrying the nu_i is the dual one.
      Matroid literal = matroid_from_subspace(oracle::generic_subspace(a, n), n);
      Matroid u = uniform_matroid(n - a, n);
      for (Matroid::Mask s = 0; s <= u.ground(); ++s)
        require(literal.rank(s) == u.rank(s), "generic subspace is not U_{n-a,n} at a=" + std::to_string(a) + ", n=" + std::to_string(n));
      auto nu = reduced_characteristic_coefficients(dual(literal));
      require(nu.back() == binomial(n - 1, a - 1),
              "d(" + std::to_string(a) + "," + std::to_string(n) + ") = " + str(nu.back()) + ", expected " + str(binomial(n - 1, a - 1)));
    }
  int loopless = 0;
  for (const auto& g : oracle::graph_corpus()) {
    Matroid m = matroid_from_graph(g);
    require(characteristic_polynomial(m) == characteristic_polynomial_whitney(m), "deletion-contraction != Whitney");
    if (m.rank() < 1 || m.has_loop()) continue;
    ++loopless;
    require(is_log_concave(reduced_characteristic_coefficients(m)), "log-concavity");
  }
  require(loopless > 0, "no loopless graphs in the corpus");
}

void criterion_8() {
  require(euler_characteristic_complement(ints({1, 1, 1})) == 1, "(1,1,1)");
  require(euler_characteristic_complement(ints({1, 1, 1, 1})) == 0, "(1,1,1,1)");
  require(euler_characteristic_complement(ints({1, 2, 2, 1})) == 0, "(1,2,2,1)");
}

void criterion_9() {
  ToricChowRing ring(permutohedral_fan(2));
  const Fan& f = ring.fan();
  auto [h1, h2] = permutohedral_hyperplanes(f);
  std::vector<BigInt> mu;
  for (int i = 0; i <= 2; ++i) {
    ToricClass c = ring.one();
    for (int k = 0; k < i; ++k) c = ring.multiply_by_divisor(c, h1);
    for (int k = i; k < 2; ++k) c = ring.multiply_by_divisor(c, h2);
    Rational v = ring.integral(c);
    require(v.is_integer(), "non-integral hexagon degree");
    mu.push_back(v.numerator());
  }
  require(mu == ints({1, 2, 1}), "hexagon mu");
  auto ray = [&](const std::string& label) {
    for (std::size_t r = 0; r < f.ray_labels.size(); ++r)
      if (f.ray_labels[r] == label) return static_cast<int>(r);
    throw Failure{"no ray " + label};
  };
  ToricClass product = ring.multiply_by_divisor(ring.multiply_by_divisor(ring.one(), h1), h2);
  ToricClass expected;
  expected.degree = 2;
  expected.add({ray("2"), ray("12")}, 1);
  expected.add({ray("3"), ray("13")}, 1);
  require(product.terms == expected.terms, "H1 H2 != x2 x12 + x3 x13");
  for (int n = 1; n <= 4; ++n) {
    require(mu_generic(n) == reduced_characteristic_coefficients(uniform_matroid(n + 1, n + 1)), "mu_generic(" + std::to_string(n) + ")");
    Fan p = permutohedral_fan(n);
    require(is_smooth(p) && is_complete(p), "permutohedral_fan(" + std::to_string(n) + ")");
  }
}

void criterion_10() {
  auto all = enumerate_two_permutations(3);
  require(all.size() == 12, "12 two-permutations");
  const std::vector<std::pair<const char*, long>> table{{"1|2|3", 5}, {"1|3|2", 3}, {"2|1|3", 3}, {"2|3|1", 2}, {"3|1|2", 2}, {"3|2|1", 0},
                                                        {"12|3", 4},  {"13|2", 2},  {"23|1", 1},  {"1|23", 4},  {"2|13", 3},  {"3|12", 1}};
  for (const auto& [s, w] : table) require(weight(TwoPermutation::parse(s)) == w, std::string("weight of ") + s);
  require(chow_group_dimensions(3) == ints({1, 2, 3, 3, 2, 1}), "histogram");
  std::mt19937_64 rng(31337);
  for (const auto& s : all) {
    CellParametrization p = cell_parametrization(s);
    for (int k = 0; k < 5; ++k) require(verify_cell_point(s, random_cell_values(p, rng)), "cell " + s.str());
  }
}

void criterion_11() {
  require(mu_from_segre(SegreData{4, 2, 1, ints({0, 6})}, 2) == 3, "Cremona mu_2");
  const BigInt mu3 = mu_from_segre(SegreData{3, 3, 0, ints({4})}, 3);
  require(mu3 == 4, "hollow mu_3");
  require(nu_from_segre(SegreData{3, 3, 1, ints({2, -5})}, 3) == 1, "hollow nu_3");
  require(nu_from_mu_correction(mu3, 5, 1, ints({-7, 2})) == 1, "correction path 4+7-10");
}

void criterion_12() {
  for (int n = 1; n <= 5; ++n)
    for (const auto& w : oracle::all_permutations(n))
      for (int i = 1; i < n; ++i) require(monk_multiply(i, w) == oracle::bruhat_monk(i, w), "Monk vs Bruhat");
  // L_1 <-> sigma_{s_2}, L_2 <-> sigma_{s_1}
  require(flag_integral(3, {1, 2}) == 1, "s1^2 s2");
  require(flag_integral(3, {0, 3}) == 0, "s1^3");
  SchubertCombination s1s1s2 = monk_multiply(2, monk_multiply(1, monk_multiply(1, SchubertCombination(Permutation::identity(3), 1))));
  require(s1s1s2.integral() == 1, "s1^2 s2 by Monk");
  BigInt total = 0;
  for (int k = 0; k <= 3; ++k) total += binomial(3, k) * flag_integral(3, {k, 3 - k});
  require(total == 6, "degree of Fl3");
}

void criterion_13() {
  const auto start = std::chrono::steady_clock::now();
  for (int d = 1; d <= 10; ++d) {
    BigInt v = phi(6, d);
    require(v > 0, "phi(6," + std::to_string(d) + ") = " + str(v));
    if (d <= 3) require(phi_polynomial(d)(Rational(6)) == Rational(v), "phi(6," + std::to_string(d) + ") off the polynomial");
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  require(seconds < 600.0, "took " + std::to_string(seconds) + " s");
}

} // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void()>>> criteria{
      {"phi table", criterion_1},
      {"phi from delta", criterion_2},
      {"Pataki support", criterion_3},
      {"polynomiality", criterion_4},
      {"phi_c corollary", criterion_5},
      {"duality and palindromy", criterion_6},
      {"matroid values", criterion_7},
      {"Euler sums", criterion_8},
      {"toric", criterion_9},
      {"cells", criterion_10},
      {"Segre formulas", criterion_11},
      {"Schubert oracle", criterion_12},
      {"scale probe n=6", criterion_13},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const auto start = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = true;
    try {
      criteria[k].second();
    } catch (const Failure& f) {
      ok = false;
      detail = f.what;
    } catch (const std::exception& e) {
      ok = false;
      detail = std::string("exception: ") + e.what();
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::ostringstream line;
    line << (ok ? "PASS" : "FAIL") << " " << (k + 1) << " " << criteria[k].first;
    if (!ok) line << ": " << detail;
    line << " (" << std::fixed;
    line.precision(2);
    line << seconds << " s)";
    std::cout << line.str() << std::endl;
    failed += ok ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
