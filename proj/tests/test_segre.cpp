#include <gtest/gtest.h>

#include "cq/matroid.hpp"
#include "cq/segre.hpp"

using namespace cq;

namespace {
std::vector<BigInt> ints(std::initializer_list<long> v) { return {v.begin(), v.end()}; }
} // namespace

TEST(Segre, Mu) {
  SegreData cremona{4, 2, 1, ints({0, 6})};
  EXPECT_EQ(mu_from_segre(cremona, 2), 3);
  EXPECT_EQ(mu_from_segre(cremona, 0), 1);
  SegreData hollow{3, 3, 0, ints({4})};
  EXPECT_EQ(mu_from_segre(hollow, 3), 4);
  EXPECT_EQ(mu_from_segre(hollow, 0), 1);
  EXPECT_EQ(mu_from_segre(hollow, 2), 4);  // empty sum: Bezout
}

TEST(Segre, Nu) {
  SegreData restricted{3, 3, 1, ints({2, -5})};
  EXPECT_EQ(nu_from_segre(restricted, 3), 1);
  EXPECT_EQ(nu_from_segre(restricted, 0), 1);
  SegreData cremona{4, 2, 1, ints({0, 6})};
  EXPECT_EQ(nu_from_segre(cremona, 1), 3);
  for (long i = 0; i <= 2; ++i) EXPECT_EQ(nu_from_segre(cremona, i), mu_from_segre(cremona, i));
}

TEST(Segre, BezoutWithoutCorrections) {
  for (long deg = 1; deg <= 5; ++deg)
    for (long i = 0; i <= 4; ++i) EXPECT_EQ(mu_from_segre(SegreData{deg, 4, 2, ints({0, 0, 0})}, i), pow(BigInt(deg - 1), i));
}

TEST(Segre, Validation) {
  EXPECT_THROW(mu_from_segre(SegreData{4, 2, 1, ints({0})}, 1), DomainError);
  EXPECT_THROW(mu_from_segre(SegreData{0, 2, 0, ints({0})}, 1), DomainError);
  EXPECT_THROW(mu_from_segre(SegreData{4, 2, 1, ints({0, 6})}, 3), DomainError);
}

TEST(Segre, Correction) {
  EXPECT_EQ(nu_from_mu_correction(4, 5, 1, ints({-7, 2})), 1);
  EXPECT_EQ(nu_from_mu_correction(9, 9, -1, ints({})), 9);
  EXPECT_EQ(nu_from_mu_correction(9, 9, 0, ints({4})), 5);
  EXPECT_THROW(nu_from_mu_correction(9, 9, 1, ints({4})), DomainError);
}

TEST(Segre, InequalityCheck) {
  EXPECT_TRUE(mu_nu_inequality_check(ints({1, 3, 9, 17, 21, 21, 17, 9}), ints({1, 3, 9, 17, 21, 21, 15, 5})));
  EXPECT_TRUE(mu_nu_inequality_check(ints({1, 2, 1}), ints({1, 2, 1})));
  EXPECT_FALSE(mu_nu_inequality_check(ints({1, 2, 4}), ints({1, 3, 4})));
  EXPECT_FALSE(mu_nu_inequality_check(ints({1, 3, 4}), ints({1, 2, 4})));  // last equal, not all equal
  EXPECT_THROW(mu_nu_inequality_check(ints({1, 2}), ints({1})), DomainError);
}

TEST(Segre, EulerConsistency) { EXPECT_EQ(euler_characteristic_complement(ints({1, 2, 2, 1})), 0); }
