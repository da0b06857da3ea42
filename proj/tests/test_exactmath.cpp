#include <random>

#include <gtest/gtest.h>

#include "cq/exactmath.hpp"

using namespace cq;

TEST(Rational, CanonicalForm) {
  Rational r(BigInt(6), BigInt(-4));
  EXPECT_EQ(r.str(), "-3/2");
  EXPECT_EQ(r.numerator(), -3);
  EXPECT_EQ(r.denominator(), 2);
  EXPECT_EQ(Rational::parse("10/4"), Rational(BigInt(5), BigInt(2)));
  EXPECT_EQ(Rational::parse("-7"), Rational(-7));
  EXPECT_TRUE(Rational::parse("8/4").is_integer());
}

TEST(Rational, Errors) {
  EXPECT_THROW(Rational(BigInt(1), BigInt(0)), DomainError);
  EXPECT_THROW(Rational(1) / Rational(0), DomainError);
  EXPECT_THROW(Rational::parse("1/x"), ParseError);
  EXPECT_THROW(Rational::parse(""), ParseError);
  EXPECT_THROW(Rational(BigInt(1), BigInt(2)).to_integer(), DomainError);
}

TEST(Rational, FieldIdentities) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> num(-50, 50), den(1, 50);
  for (int k = 0; k < 200; ++k) {
    Rational a(BigInt(num(rng)), BigInt(den(rng))), b(BigInt(num(rng)), BigInt(den(rng))), c(BigInt(num(rng)), BigInt(den(rng)));
    EXPECT_EQ((a + b) * c, a * c + b * c);
    EXPECT_EQ(a - a, Rational(0));
    if (!b.is_zero()) {
      EXPECT_EQ(a / b * b, a);
    }
  }
}

TEST(Binomial, Values) {
  EXPECT_EQ(binomial(5, 2), 10);
  EXPECT_EQ(binomial(4, 0), 1);
  EXPECT_EQ(binomial(3, 4), 0);
  EXPECT_EQ(binomial(3, -1), 0);
  EXPECT_EQ(binomial(60, 30), parse_bigint("118264581564861424"));
}

TEST(Polynomial, ArithmeticAndPrinting) {
  auto n = UnivariatePolynomial::x();
  auto one = UnivariatePolynomial::constant(1);
  auto p = (n - one) * (n - one);
  EXPECT_EQ(p.str(), "n^2 - 2*n + 1");
  EXPECT_EQ(p.degree(), 2);
  EXPECT_EQ(p(Rational(5)), Rational(16));
  auto [q, r] = p.divmod(n - one);
  EXPECT_EQ(q, n - one);
  EXPECT_TRUE(r.is_zero());
  EXPECT_EQ(UnivariatePolynomial().degree(), -1);
  EXPECT_EQ(UnivariatePolynomial().str(), "0");
}

TEST(Interpolation, KnownSequences) {
  EXPECT_EQ(interpolate({{1, Rational(1)}, {2, Rational(1)}, {5, Rational(1)}}), UnivariatePolynomial::constant(1));
  EXPECT_EQ(interpolate({{3, Rational(2)}, {4, Rational(3)}}).str(), "n - 1");
  auto p = interpolate({{0, Rational(0)}, {1, Rational(0)}, {2, Rational(1)}, {3, Rational(4)}});
  EXPECT_EQ(p.str(), "1/6*n^3 - 1/6*n");  // C(n+1,3)
  EXPECT_THROW(interpolate({{1, Rational(1)}, {1, Rational(2)}}), DomainError);
}

TEST(Interpolation, RecoversRandomPolynomials) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> coeff(-20, 20), deg(0, 6);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Rational> c;
    for (int k = 0, d = deg(rng); k <= d; ++k) c.emplace_back(BigInt(coeff(rng)), BigInt(1 + std::abs(coeff(rng))));
    UnivariatePolynomial p(c);
    std::vector<std::pair<long, Rational>> pts;
    for (long x = -3; x < -3 + std::max(1, p.degree() + 1); ++x) pts.emplace_back(x, p(Rational(x)));
    EXPECT_EQ(interpolate(pts), p);
  }
}

TEST(ForwardDifference, PolynomialVanishes) {
  std::vector<Rational> cubes;
  for (int k = 0; k < 8; ++k) cubes.emplace_back(k * k * k);
  auto d3 = forward_difference(cubes, 3);
  for (const auto& v : d3) EXPECT_EQ(v, Rational(6));
  for (const auto& v : forward_difference(cubes, 4)) EXPECT_TRUE(v.is_zero());
}

TEST(LogConcave, Sequences) {
  EXPECT_TRUE(is_log_concave(std::vector<BigInt>{1, 3, 3, 1}));
  EXPECT_TRUE(is_log_concave(std::vector<BigInt>{1, 4, 16, 44, 86, 137, 188, 212, 188}));
  EXPECT_FALSE(is_log_concave(std::vector<BigInt>{1, 1, 3}));
  EXPECT_FALSE(is_log_concave(std::vector<BigInt>{1, 0, 1}));
  EXPECT_THROW(is_log_concave(std::vector<BigInt>{1, -1}), DomainError);
}

TEST(Multivariate, SubstituteAndGcd) {
  auto x = MultivariatePolynomial::variable("x"), y = MultivariatePolynomial::variable("y");
  auto p = x * x * y + MultivariatePolynomial(2) * x * y * y;
  EXPECT_EQ(p.str(), "x^2*y + 2*x*y^2");
  EXPECT_EQ(p.evaluate({{"x", Rational(1)}, {"y", Rational(2)}}), Rational(10));
  EXPECT_THROW(p.evaluate({{"x", Rational(1)}}), DomainError);
  EXPECT_EQ(p.substitute({{"y", Rational(0)}}), MultivariatePolynomial());
  std::vector<MultivariatePolynomial> ps{p, x * y * y * y};
  Monomial g = monomial_gcd(ps);
  EXPECT_EQ(g, (Monomial{{"x", 1}, {"y", 1}}));
  EXPECT_EQ(p.divide_by_monomial(g), x + MultivariatePolynomial(2) * y);
}

TEST(LinearAlgebra, SolveAndDeterminant) {
  RationalMatrix a{{Rational(2), Rational(1)}, {Rational(1), Rational(3)}};
  EXPECT_EQ(determinant(a), Rational(5));
  auto x = solve_linear(a, {Rational(3), Rational(4)});
  ASSERT_TRUE(x);
  EXPECT_EQ((*x)[0], Rational(1));
  EXPECT_EQ((*x)[1], Rational(1));
  RationalMatrix singular{{Rational(1), Rational(2)}, {Rational(2), Rational(4)}};
  EXPECT_FALSE(solve_linear(singular, {Rational(1), Rational(1)}));
  EXPECT_EQ(matrix_rank(singular), 1u);
}
