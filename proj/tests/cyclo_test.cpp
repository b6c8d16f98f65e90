#include "cyclomat/cyclo.hpp"

#include <gtest/gtest.h>

#include <complex>
#include <random>

using namespace cyclomat;
using arith::Integer;
using arith::Rational;
using arith::u64;
using cyclo::CycloCtx;
using cyclo::CycNum;

namespace {

unsigned euler_phi(unsigned m) {
  unsigned result = m;
  for (unsigned p = 2; p * p <= m; ++p) {
    if (m % p == 0) {
      while (m % p == 0) m /= p;
      result -= result / p;
    }
  }
  if (m > 1) result -= result / m;
  return result;
}

CycNum random_element(unsigned m, std::mt19937_64& rng) {
  std::uniform_int_distribution<long> v(-5, 5);
  std::vector<Rational> coeffs(CycloCtx::get(m)->degree());
  for (Rational& c : coeffs) c = v(rng);
  return CycNum::from_power_coeffs(m, std::move(coeffs));
}

}  // namespace

TEST(CyclotomicPolynomial, KnownSmallCases) {
  auto coeffs = [](unsigned m) { return CycloCtx::get(m)->polynomial(); };
  EXPECT_EQ(coeffs(1), (std::vector<Integer>{-1, 1}));
  EXPECT_EQ(coeffs(2), (std::vector<Integer>{1, 1}));
  EXPECT_EQ(coeffs(4), (std::vector<Integer>{1, 0, 1}));
  EXPECT_EQ(coeffs(6), (std::vector<Integer>{1, -1, 1}));
  EXPECT_EQ(coeffs(12), (std::vector<Integer>{1, 0, -1, 0, 1}));
}

TEST(CyclotomicPolynomial, DegreeIsEulerPhi) {
  for (unsigned m = 1; m <= 200; ++m) EXPECT_EQ(CycloCtx::get(m)->degree(), euler_phi(m)) << m;
}

TEST(CyclotomicPolynomial, DivisorProductRecoversPowerMinusOne) {
  // prod_{d | m} Phi_d = x^m - 1; 105 exercises the first coefficient of
  // magnitude 2 in any cyclotomic polynomial.
  for (unsigned m : {12u, 30u, 105u}) {
    std::vector<Integer> prod{1};
    for (unsigned d = 1; d <= m; ++d) {
      if (m % d != 0) continue;
      const std::vector<Integer>& f = CycloCtx::get(d)->polynomial();
      std::vector<Integer> next(prod.size() + f.size() - 1, Integer(0));
      for (std::size_t i = 0; i < prod.size(); ++i)
        for (std::size_t j = 0; j < f.size(); ++j) next[i + j] += prod[i] * f[j];
      prod = std::move(next);
    }
    ASSERT_EQ(prod.size(), m + 1);
    EXPECT_EQ(prod[0], Integer(-1));
    EXPECT_EQ(prod[m], Integer(1));
    for (unsigned i = 1; i < m; ++i) EXPECT_EQ(prod[i], Integer(0)) << m << " " << i;
  }
  // The famous coefficient -2 appears in Phi_105 at degree 7.
  EXPECT_EQ(CycloCtx::get(105)->polynomial()[7], Integer(-2));
}

TEST(CycNumArithmetic, RootOfUnityRelations) {
  CycNum i4 = CycNum::zeta_pow(4, 1);
  EXPECT_EQ(i4 * i4, CycNum::from_rational(4, Rational(-1)));

  CycNum a = CycNum::one(6) + CycNum::zeta_pow(6, 1);
  CycNum b = CycNum::one(6) + CycNum::zeta_pow(6, 5);
  EXPECT_EQ(a * b, CycNum::from_rational(6, Rational(3)));

  for (unsigned m : {4u, 6u, 12u, 8u}) {
    EXPECT_EQ(CycNum::zeta_pow(m, m), CycNum::one(m));
    EXPECT_EQ(CycNum::zeta_pow(m, -1), CycNum::zeta_pow(m, static_cast<arith::i64>(m) - 1));
    EXPECT_EQ(CycNum::zeta_pow(m, 3) * CycNum::zeta_pow(m, 5),
              CycNum::zeta_pow(m, (3 + 5) % static_cast<arith::i64>(m)));
  }
}

TEST(CycNumArithmetic, InverseIsExact) {
  std::mt19937_64 rng(31);
  for (unsigned m : {4u, 6u, 12u}) {
    for (int t = 0; t < 40; ++t) {
      CycNum a = random_element(m, rng);
      if (a.is_zero()) continue;
      EXPECT_EQ(a * a.inverse(), CycNum::one(m));
    }
  }
  EXPECT_THROW(CycNum::zero(6).inverse(), std::domain_error);
}

TEST(CycNumArithmetic, ConductorMismatchRejected) {
  CycNum a = CycNum::one(4), b = CycNum::one(6);
  EXPECT_THROW(a * b, std::invalid_argument);
  EXPECT_THROW(a + b, std::invalid_argument);
}

TEST(CycNumArithmetic, RationalDetection) {
  CycNum z = CycNum::zeta_pow(8, 1);
  EXPECT_FALSE(z.is_rational());
  CycNum r = CycNum::from_rational(8, Rational(-7, 3));
  EXPECT_TRUE(r.is_rational());
  EXPECT_EQ(r.rational_value(), Rational(-7, 3));
  EXPECT_FALSE(r.is_integral());
  EXPECT_TRUE(CycNum::from_rational(8, Rational(5)).is_integral());
  EXPECT_THROW(z.rational_value(), std::domain_error);
  // zeta_8^2 = i is not rational, zeta_8^4 = -1 is.
  EXPECT_FALSE((z * z).is_rational());
  EXPECT_TRUE((z * z * z * z).is_rational());
  EXPECT_EQ((z * z * z * z).rational_value(), Rational(-1));
}

TEST(Embedding, KnownValues) {
  EXPECT_NEAR(std::abs(CycNum::one(12).embed() - std::complex<double>(1.0, 0.0)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(CycNum::zeta_pow(4, 1).embed() - std::complex<double>(0.0, 1.0)), 0.0, 1e-12);
  for (unsigned m : {3u, 7u, 16u, 60u}) {
    for (unsigned k = 0; k < m; ++k)
      EXPECT_NEAR(std::abs(CycNum::zeta_pow(m, k).embed()), 1.0, 1e-10) << m << " " << k;
  }
}

TEST(Embedding, RingHomomorphismToMachinePrecision) {
  std::mt19937_64 rng(77);
  for (unsigned m : {8u, 37u, 60u, 200u}) {
    for (int t = 0; t < 25; ++t) {
      CycNum a = random_element(m, rng);
      CycNum b = random_element(m, rng);
      std::complex<double> lhs = (a * b).embed();
      std::complex<double> rhs = a.embed() * b.embed();
      EXPECT_LE(std::abs(lhs - rhs), 1e-9 * (1.0 + std::abs(rhs))) << m;
      EXPECT_LE(std::abs((a + b).embed() - (a.embed() + b.embed())), 1e-9) << m;
    }
  }
}

TEST(ReductionModP, PrimeFieldAndGeneratorImages) {
  ff::FqCtx F7(7, 1);
  EXPECT_EQ(CycNum::from_rational(6, Rational(5)).reduce_mod_p(F7), F7.from_int(5));
  EXPECT_EQ(CycNum::from_rational(6, Rational(1, 2)).reduce_mod_p(F7), F7.from_int(4));
  EXPECT_EQ(CycNum::zeta_pow(6, 1).reduce_mod_p(F7), F7.generator());

  ff::FqCtx F9(3, 2);
  EXPECT_EQ(CycNum::zeta_pow(8, 1).reduce_mod_p(F9), F9.generator());
  ff::FqCtx F25(5, 2);
  EXPECT_EQ(CycNum::zeta_pow(24, 1).reduce_mod_p(F25), F25.generator());

  // zeta^k maps to g^k, so the image of zeta has full multiplicative order.
  for (u64 k = 0; k < 8; ++k)
    EXPECT_EQ(CycNum::zeta_pow(8, static_cast<arith::i64>(k)).reduce_mod_p(F9), F9.exp(k));
}

TEST(ReductionModP, IsARingHomomorphism) {
  std::mt19937_64 rng(13);
  ff::FqCtx F(3, 2);
  for (int t = 0; t < 100; ++t) {
    CycNum a = random_element(8, rng);
    CycNum b = random_element(8, rng);
    EXPECT_EQ((a * b).reduce_mod_p(F), F.mul(a.reduce_mod_p(F), b.reduce_mod_p(F)));
    EXPECT_EQ((a + b).reduce_mod_p(F), F.add(a.reduce_mod_p(F), b.reduce_mod_p(F)));
  }
}

TEST(ReductionModP, DomainErrors) {
  ff::FqCtx F9(3, 2);
  EXPECT_THROW(CycNum::from_rational(8, Rational(1, 3)).reduce_mod_p(F9), std::domain_error);
  ff::FqCtx F7(7, 1);
  EXPECT_THROW(CycNum::one(4).reduce_mod_p(F7), std::invalid_argument);  // 4 does not divide 6
  // Smaller conductors dividing q-1 reduce compatibly: zeta_3 -> g^2 in F_7.
  EXPECT_EQ(CycNum::zeta_pow(3, 1).reduce_mod_p(F7), F7.exp(2));
}
