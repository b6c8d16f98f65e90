// Tests for multiplicative characters, Jacobi/Gauss sums, and the derived
// aggregate and eigenvalue quantities.  Oracles: classical closed forms
// (Gauss sum magnitudes and quadratic-character evaluations, Jacobi sum
// modulus |J|^2 = q, J(chi, conj chi) = -chi(-1)), orthogonality relations,
// and the Gauss-Jacobi factorization, all independent of the implementation's
// exponent-counting route.

#include "cyclomat/chars.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <random>

namespace ca = cyclomat::arith;
namespace cf = cyclomat::ff;
namespace cc = cyclomat::cyclo;
namespace ch = cyclomat::chars;

using ca::Rational;
using ca::u64;
using cc::CycNum;

namespace {

CycNum cyc_rat(unsigned m, long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return CycNum::from_rational(m, r);
}

}  // namespace

TEST(CharValue, TrivialAndQuadraticBasics) {
  for (auto [p, f] : {std::pair<u64, unsigned>{7, 1}, {3, 2}, {5, 2}}) {
    cf::FqCtx F = cf::make_field(p, f);
    const unsigned m = static_cast<unsigned>(F.q() - 1);
    ch::CharSpec eps = ch::trivial_char(F);
    ch::CharSpec phi = ch::quadratic_char(F);
    EXPECT_TRUE(ch::char_value(eps, F.zero()).is_zero());
    EXPECT_TRUE(ch::char_value(phi, F.zero()).is_zero());
    for (u64 code = 1; code < F.q(); ++code) {
      cf::FqElem x = F.from_code(code);
      EXPECT_EQ(ch::char_value(eps, x), CycNum::one(m));
      CycNum v = ch::char_value(phi, x);
      EXPECT_EQ(v, F.is_square(x) ? cyc_rat(m, 1) : cyc_rat(m, -1));
    }
    // chi(-1) = (-1)^k.
    cf::FqElem minus_one = F.neg(F.one());
    for (u64 k = 0; k < F.q() - 1; ++k) {
      ch::CharSpec chi(F, k);
      CycNum v = ch::char_value(chi, minus_one);
      EXPECT_EQ(v, cyc_rat(m, chi.sign_at_minus_one()));
    }
  }
}

TEST(CharValue, Multiplicativity) {
  std::mt19937_64 rng(20260814);
  for (auto [p, f] : {std::pair<u64, unsigned>{7, 1}, {3, 2}, {5, 2}}) {
    cf::FqCtx F = cf::make_field(p, f);
    std::uniform_int_distribution<u64> code(1, F.q() - 1);
    std::uniform_int_distribution<u64> kpick(0, F.q() - 2);
    for (int t = 0; t < 50; ++t) {
      ch::CharSpec chi(F, kpick(rng));
      cf::FqElem x = F.from_code(code(rng)), y = F.from_code(code(rng));
      EXPECT_EQ(ch::char_value(chi, F.mul(x, y)),
                ch::char_value(chi, x) * ch::char_value(chi, y));
      // chi_j * chi_k = chi_{j+k} pointwise.
      ch::CharSpec chi2(F, kpick(rng));
      ch::CharSpec prod(F, chi.k + chi2.k);
      EXPECT_EQ(ch::char_value(chi, x) * ch::char_value(chi2, x), ch::char_value(prod, x));
    }
  }
}

TEST(CharValue, ComplexAgreesWithExactEmbedding) {
  cf::FqCtx F = cf::make_field(5, 2);
  for (u64 k : {u64{1}, u64{5}, u64{12}, u64{17}}) {
    ch::CharSpec chi(F, k);
    for (u64 code = 0; code < F.q(); ++code) {
      cf::FqElem x = F.from_code(code);
      std::complex<double> lhs = ch::char_value_complex(chi, x);
      std::complex<double> rhs = ch::char_value(chi, x).embed();
      EXPECT_NEAR(std::abs(lhs - rhs), 0.0, 1e-12);
    }
  }
}

TEST(CharacterOrthogonality, SumOverGroupVanishesForNontrivial) {
  for (auto [p, f] : {std::pair<u64, unsigned>{7, 1}, {3, 2}, {11, 1}, {13, 1}, {5, 2},
                      {3, 3}, {7, 2}, {3, 4}, {11, 2}}) {
    cf::FqCtx F = cf::make_field(p, f);
    const unsigned m = static_cast<unsigned>(F.q() - 1);
    for (u64 k = 1; k < F.q() - 1; ++k) {
      ch::CharSpec chi(F, k);
      CycNum s = CycNum::zero(m);
      for (u64 a = 0; a < F.q() - 1; ++a) s = s + ch::char_value(chi, F.exp(a));
      EXPECT_TRUE(s.is_zero()) << "q=" << F.q() << " k=" << k;
    }
    // And the trivial character sums to q-1.
    CycNum s0 = CycNum::zero(m);
    for (u64 a = 0; a < F.q() - 1; ++a) s0 = s0 + ch::char_value(ch::trivial_char(F), F.exp(a));
    EXPECT_EQ(s0, cyc_rat(m, static_cast<long>(F.q() - 1)));
  }
}

TEST(CharacterOrthogonality, SumOverCharactersVanishesOffIdentity) {
  for (auto [p, f] : {std::pair<u64, unsigned>{13, 1}, {3, 2}}) {
    cf::FqCtx F = cf::make_field(p, f);
    const unsigned m = static_cast<unsigned>(F.q() - 1);
    for (u64 a = 0; a < F.q() - 1; ++a) {
      cf::FqElem x = F.exp(a);
      CycNum s = CycNum::zero(m);
      for (u64 k = 0; k < F.q() - 1; ++k) s = s + ch::char_value(ch::CharSpec(F, k), x);
      if (a == 0)
        EXPECT_EQ(s, cyc_rat(m, static_cast<long>(F.q() - 1)));
      else
        EXPECT_TRUE(s.is_zero()) << "q=" << F.q() << " a=" << a;
    }
  }
}

TEST(JacobiSum, KnownSmallValues) {
  // J_5(phi, phi) = -1.
  cf::FqCtx F5 = cf::make_field(5, 1);
  EXPECT_EQ(ch::jacobi_sum(ch::quadratic_char(F5), ch::quadratic_char(F5)), cyc_rat(4, -1));
  // J(trivial, trivial) = q - 2.
  for (auto [p, f] : {std::pair<u64, unsigned>{5, 1}, {7, 1}, {3, 2}, {13, 1}}) {
    cf::FqCtx F = cf::make_field(p, f);
    const unsigned m = static_cast<unsigned>(F.q() - 1);
    ch::CharSpec eps = ch::trivial_char(F);
    EXPECT_EQ(ch::jacobi_sum(eps, eps), cyc_rat(m, static_cast<long>(F.q() - 2)));
    // J(psi, trivial) = -1 for nontrivial psi, and symmetry in the arguments.
    for (u64 k = 1; k < F.q() - 1; ++k) {
      ch::CharSpec psi(F, k);
      EXPECT_EQ(ch::jacobi_sum(psi, eps), cyc_rat(m, -1));
      EXPECT_EQ(ch::jacobi_sum(eps, psi), cyc_rat(m, -1));
      // J(psi, conj psi) = -psi(-1).
      EXPECT_EQ(ch::jacobi_sum(psi, psi.conj()), cyc_rat(m, -psi.sign_at_minus_one()));
    }
  }
}

TEST(JacobiSum, SymmetryAndModulus) {
  std::mt19937_64 rng(9);
  for (auto [p, f] : {std::pair<u64, unsigned>{7, 1}, {3, 2}, {11, 1}, {13, 1}}) {
    cf::FqCtx F = cf::make_field(p, f);
    const u64 m = F.q() - 1;
    std::uniform_int_distribution<u64> kpick(1, m - 1);
    for (int t = 0; t < 30; ++t) {
      u64 k1 = kpick(rng), k2 = kpick(rng);
      ch::CharSpec psi(F, k1), chi(F, k2);
      CycNum j = ch::jacobi_sum(psi, chi);
      EXPECT_EQ(j, ch::jacobi_sum(chi, psi));
      if ((k1 + k2) % m != 0) {
        // |J|^2 = q when psi, chi, psi*chi all nontrivial.
        EXPECT_NEAR(std::norm(j.embed()), static_cast<double>(F.q()), 1e-8);
      }
    }
  }
}

TEST(JacobiSum, GaussJacobiFactorization) {
  std::mt19937_64 rng(77);
  for (auto [p, f] : {std::pair<u64, unsigned>{3, 3}, {7, 2}, {11, 2}}) {
    cf::FqCtx F = cf::make_field(p, f);
    const u64 m = F.q() - 1;
    std::uniform_int_distribution<u64> kpick(1, m - 1);
    int done = 0;
    while (done < 20) {
      u64 k1 = kpick(rng), k2 = kpick(rng);
      if ((k1 + k2) % m == 0) continue;
      ++done;
      ch::CharSpec psi(F, k1), chi(F, k2), prod(F, k1 + k2);
      std::complex<double> lhs = ch::jacobi_sum(psi, chi).embed();
      std::complex<double> rhs =
          ch::gauss_sum_complex(psi) * ch::gauss_sum_complex(chi) / ch::gauss_sum_complex(prod);
      EXPECT_NEAR(std::abs(lhs - rhs), 0.0, 1e-6 * std::sqrt(static_cast<double>(F.q())));
    }
  }
}

TEST(JacobiSum, EvenPowerColumnIdentity) {
  // sum_{r=0}^{n-1} J(psi, chi^{2r}) = n * psi(2) for every nontrivial psi.
  for (auto [p, f] : {std::pair<u64, unsigned>{7, 1}, {3, 2}, {13, 1}, {5, 2}, {3, 3}, {7, 2}}) {
    cf::FqCtx F = cf::make_field(p, f);
    const unsigned m = static_cast<unsigned>(F.q() - 1);
    const u64 n = F.n();
    cf::FqElem two = F.from_int(2);
    for (u64 k = 1; k < F.q() - 1; ++k) {
      ch::CharSpec psi(F, k);
      CycNum s = CycNum::zero(m);
      for (u64 r = 0; r < n; ++r) s = s + ch::jacobi_sum(psi, ch::CharSpec(F, 2 * r));
      CycNum rhs = ch::char_value(psi, two) * Rational(static_cast<unsigned long>(n));
      EXPECT_EQ(s, rhs) << "q=" << F.q() << " k=" << k;
    }
  }
}

TEST(JacobiSum, FullColumnSumVanishes) {
  // sum_{r=0}^{q-2} J(chi^{-j}, chi^r) = 0 for j != 0 mod q-1.
  for (auto [p, f] : {std::pair<u64, unsigned>{7, 1}, {3, 2}, {5, 2}, {3, 3}, {7, 2}}) {
    cf::FqCtx F = cf::make_field(p, f);
    const unsigned m = static_cast<unsigned>(F.q() - 1);
    for (u64 j = 1; j < F.q() - 1; ++j) {
      ch::CharSpec lead = ch::char_power(F, -static_cast<ca::i64>(j));
      CycNum s = CycNum::zero(m);
      for (u64 r = 0; r < F.q() - 1; ++r) s = s + ch::jacobi_sum(lead, ch::CharSpec(F, r));
      EXPECT_TRUE(s.is_zero()) << "q=" << F.q() << " j=" << j;
    }
  }
}

TEST(GaussSum, ClosedForms) {
  // Trivial character: G = -1.
  for (auto [p, f] : {std::pair<u64, unsigned>{5, 1}, {7, 1}, {3, 2}, {5, 2}}) {
    cf::FqCtx F = cf::make_field(p, f);
    std::complex<double> g = ch::gauss_sum_complex(ch::trivial_char(F));
    EXPECT_NEAR(std::abs(g - std::complex<double>(-1.0, 0.0)), 0.0, 1e-9);
  }
  // Quadratic character, classical evaluations: sqrt(q) for p = 1 mod 4 (f=1),
  // i*sqrt(p) for p = 3 mod 4 (f=1), and the degree-f lift G_{p^f} =
  // (-1)^{f-1} G_p^f giving 3, -5, 7 for q = 9, 25, 49.
  struct Case {
    u64 p;
    unsigned f;
    std::complex<double> expect;
  };
  const Case cases[] = {
      {5, 1, {std::sqrt(5.0), 0.0}},  {13, 1, {std::sqrt(13.0), 0.0}},
      {7, 1, {0.0, std::sqrt(7.0)}},  {11, 1, {0.0, std::sqrt(11.0)}},
      {3, 2, {3.0, 0.0}},             {5, 2, {-5.0, 0.0}},
      {7, 2, {7.0, 0.0}},
  };
  for (const Case& c : cases) {
    cf::FqCtx F = cf::make_field(c.p, c.f);
    std::complex<double> g = ch::gauss_sum_complex(ch::quadratic_char(F));
    EXPECT_NEAR(std::abs(g - c.expect), 0.0, 1e-8) << "q=" << F.q();
  }
  // Magnitude sqrt(q) for every nontrivial character.
  for (auto [p, f] : {std::pair<u64, unsigned>{13, 1}, {3, 3}, {5, 2}}) {
    cf::FqCtx F = cf::make_field(p, f);
    for (u64 k = 1; k < F.q() - 1; ++k) {
      std::complex<double> g = ch::gauss_sum_complex(ch::CharSpec(F, k));
      EXPECT_NEAR(std::abs(g), std::sqrt(static_cast<double>(F.q())), 1e-8);
    }
  }
}

TEST(GaussSum, SquareIndicatorDecomposition) {
  // (trivial(x) + phi(x)) / 2 is the indicator of nonzero squares.
  for (auto [p, f] : {std::pair<u64, unsigned>{7, 1}, {3, 2}, {13, 1}, {5, 2}}) {
    cf::FqCtx F = cf::make_field(p, f);
    const unsigned m = static_cast<unsigned>(F.q() - 1);
    ch::CharSpec eps = ch::trivial_char(F), phi = ch::quadratic_char(F);
    Rational half(1, 2);
    for (u64 code = 0; code < F.q(); ++code) {
      cf::FqElem x = F.from_code(code);
      CycNum ind = (ch::char_value(eps, x) + ch::char_value(phi, x)) * half;
      bool is_nonzero_square = !F.is_zero(x) && F.is_square(x);
      EXPECT_EQ(ind, is_nonzero_square ? CycNum::one(m) : CycNum::zero(m));
    }
  }
}

TEST(Aggregates, MatchClosedForms) {
  // a_q ~ G(psi)^{q-1} / q, s_q = (1-q)/q * (1 + psi(-1)),
  // t_q = (1-q)/q * (2 - conj(psi)(2)), for every nontrivial psi.
  for (auto [p, f] : {std::pair<u64, unsigned>{5, 1}, {7, 1}, {3, 2}, {11, 1}, {13, 1}}) {
    cf::FqCtx F = cf::make_field(p, f);
    const unsigned m = static_cast<unsigned>(F.q() - 1);
    const double qd = static_cast<double>(F.q());
    cf::FqElem two = F.from_int(2);
    Rational coef(1 - static_cast<long>(F.q()), static_cast<long>(F.q()));
    coef.canonicalize();
    for (u64 k = 1; k < F.q() - 1; ++k) {
      ch::CharSpec psi(F, k);
      ch::ColumnAggregates agg = ch::column_aggregates(psi);

      std::complex<double> g = ch::gauss_sum_complex(psi);
      std::complex<double> expected_a = std::pow(g, static_cast<int>(F.q() - 1)) / qd;
      double scale = std::pow(qd, (qd - 1.0) / 2.0) / qd;
      EXPECT_NEAR(std::abs(agg.a_q - expected_a), 0.0, 1e-6 * scale) << "q=" << F.q() << " k=" << k;

      CycNum s_expect = cyc_rat(m, 1 + psi.sign_at_minus_one()) * coef;
      EXPECT_EQ(agg.s_q, s_expect) << "q=" << F.q() << " k=" << k;

      CycNum t_expect = (cyc_rat(m, 2) - ch::char_value(psi.conj(), two)) * coef;
      EXPECT_EQ(agg.t_q, t_expect) << "q=" << F.q() << " k=" << k;
    }
  }
}

TEST(Aggregates, RejectsTrivialCharacter) {
  cf::FqCtx F = cf::make_field(7, 1);
  EXPECT_THROW(ch::column_aggregates(ch::trivial_char(F)), std::invalid_argument);
  EXPECT_THROW(ch::greene_binomial_sum(ch::trivial_char(F)), std::invalid_argument);
  EXPECT_THROW(ch::alpha_beta_r(ch::trivial_char(F), 1), std::invalid_argument);
}

TEST(GreeneSum, ClosedForm) {
  // sum_r [ (chi^r(-1)/q) J(psi, conj chi^r) ]^{-1} = (1-q)(2 - conj(psi)(2)).
  for (auto [p, f] : {std::pair<u64, unsigned>{5, 1}, {7, 1}, {3, 2}, {13, 1}}) {
    cf::FqCtx F = cf::make_field(p, f);
    const unsigned m = static_cast<unsigned>(F.q() - 1);
    cf::FqElem two = F.from_int(2);
    for (u64 k = 1; k < F.q() - 1; ++k) {
      ch::CharSpec psi(F, k);
      CycNum lhs = ch::greene_binomial_sum(psi);
      CycNum rhs =
          (cyc_rat(m, 2) - ch::char_value(psi.conj(), two)) * Rational(1 - static_cast<long>(F.q()));
      EXPECT_EQ(lhs, rhs) << "q=" << F.q() << " k=" << k;
      // Consistency with the alternating inverse sum: lhs = q * t_q.
      ch::ColumnAggregates agg = ch::column_aggregates(psi);
      EXPECT_EQ(lhs, agg.t_q * Rational(static_cast<unsigned long>(F.q())));
    }
  }
  // Rational spot values for the quadratic character: q=5 -> -12, q=7 -> -6.
  cf::FqCtx F5 = cf::make_field(5, 1), F7 = cf::make_field(7, 1);
  EXPECT_EQ(ch::greene_binomial_sum(ch::quadratic_char(F5)), cyc_rat(4, -12));
  EXPECT_EQ(ch::greene_binomial_sum(ch::quadratic_char(F7)), cyc_rat(6, -6));
}

TEST(Lambda, ZeroIndexIsMinusOne) {
  for (auto [p, f] : {std::pair<u64, unsigned>{7, 1}, {3, 2}, {11, 1}, {13, 1}, {5, 2}}) {
    cf::FqCtx F = cf::make_field(p, f);
    const unsigned m = static_cast<unsigned>(F.q() - 1);
    EXPECT_EQ(ch::lambda_r(F, 0), cyc_rat(m, -1));
  }
}

TEST(Lambda, SecondJacobiTermReducesToZero) {
  // J(w^{-n}, w^{-(n+r)}) lies in the prime ideal above p for 1 <= r <= n-1.
  for (auto [p, f] : {std::pair<u64, unsigned>{7, 1}, {3, 2}, {11, 1}, {13, 1}, {5, 2},
                      {3, 3}, {7, 2}}) {
    cf::FqCtx F = cf::make_field(p, f);
    const ca::i64 n = static_cast<ca::i64>(F.n());
    ch::CharSpec wn = ch::char_power(F, -n);
    for (ca::i64 r = 1; r < n; ++r) {
      CycNum j2 = ch::jacobi_sum(wn, ch::char_power(F, -(n + r)));
      EXPECT_TRUE(F.is_zero(j2.reduce_mod_p(F))) << "q=" << F.q() << " r=" << r;
    }
  }
}

TEST(Lambda, ReductionGivesHalvedBinomial) {
  // reduce(lambda_r) = -C(n, r)/2 in F_q (binomial taken mod p via Lucas).
  for (auto [p, f] : {std::pair<u64, unsigned>{7, 1}, {11, 1}, {13, 1}, {23, 1}, {3, 2},
                      {5, 2}, {3, 3}}) {
    cf::FqCtx F = cf::make_field(p, f);
    const u64 n = F.n();
    ca::ModRing zp(p);
    u64 inv2 = zp.inv(2);
    for (u64 r = 0; r < n; ++r) {
      cf::FqElem lhs = ch::lambda_r(F, r).reduce_mod_p(F);
      if (r == 0) {
        EXPECT_EQ(lhs, F.neg(F.one()));
        continue;
      }
      u64 c = ca::binom_mod_p(n, r, p);
      cf::FqElem rhs = F.neg(F.from_int(zp.mul(c, inv2)));
      EXPECT_EQ(lhs, rhs) << "q=" << F.q() << " r=" << r;
    }
  }
}

TEST(AlphaBeta, DefinitionAndEigenvalueProperty) {
  std::mt19937_64 rng(5);
  for (auto [p, f] : {std::pair<u64, unsigned>{7, 1}, {3, 2}, {13, 1}}) {
    cf::FqCtx F = cf::make_field(p, f);
    const u64 m = F.q() - 1;
    ch::CharSpec psi = ch::quadratic_char(F);
    // Definitional checks against the plain Jacobi sum for a random character.
    std::uniform_int_distribution<u64> kpick(1, m - 1);
    for (int t = 0; t < 5; ++t) {
      ch::CharSpec any(F, kpick(rng));
      u64 r = kpick(rng);
      ch::AlphaBeta ab = ch::alpha_beta_r(any, r);
      CycNum j = ch::jacobi_sum(any, ch::CharSpec(F, r));
      EXPECT_EQ(ab.alpha, j * Rational(any.sign_at_minus_one()));
      EXPECT_EQ(ab.beta, j * Rational(ca::sign_pow(r)));
    }
    // Eigenvalue property for the quadratic character: with
    // M[i][j] = psi(g^{j-i} - 1), N[i][j] = psi(g^{j-i} + 1), and
    // xi_r = (zeta^{r i})_i, we have M xi_r = alpha_r xi_r and
    // N xi_r = beta_r xi_r.
    const double two_pi = 2.0 * std::numbers::pi;
    std::vector<std::vector<std::complex<double>>> M(m), N(m);
    for (u64 i = 0; i < m; ++i) {
      M[i].resize(m);
      N[i].resize(m);
      for (u64 j = 0; j < m; ++j) {
        cf::FqElem gpow = F.exp((j + m - i) % m);
        M[i][j] = ch::char_value_complex(psi, F.sub(gpow, F.one()));
        N[i][j] = ch::char_value_complex(psi, F.add(gpow, F.one()));
      }
    }
    for (u64 r = 0; r < m; ++r) {
      ch::AlphaBeta ab = ch::alpha_beta_r(psi, r);
      std::complex<double> alpha = ab.alpha.embed(), beta = ab.beta.embed();
      std::vector<std::complex<double>> xi(m);
      for (u64 i = 0; i < m; ++i) {
        double ang = two_pi * static_cast<double>(r * i % m) / static_cast<double>(m);
        xi[i] = {std::cos(ang), std::sin(ang)};
      }
      for (u64 i = 0; i < m; ++i) {
        std::complex<double> mx(0.0, 0.0), nx(0.0, 0.0);
        for (u64 j = 0; j < m; ++j) {
          mx += M[i][j] * xi[j];
          nx += N[i][j] * xi[j];
        }
        EXPECT_NEAR(std::abs(mx - alpha * xi[i]), 0.0, 1e-6) << "q=" << F.q() << " r=" << r;
        EXPECT_NEAR(std::abs(nx - beta * xi[i]), 0.0, 1e-6) << "q=" << F.q() << " r=" << r;
      }
    }
  }
}

TEST(CharSpec, ConjOrderAndFieldMismatch) {
  cf::FqCtx F = cf::make_field(13, 1);
  ch::CharSpec chi(F, 5);
  EXPECT_EQ(chi.conj().k, 7u);
  EXPECT_EQ(ch::CharSpec(F, 0).conj().k, 0u);
  EXPECT_EQ(ch::CharSpec(F, 4).order(), 3u);
  EXPECT_EQ(ch::quadratic_char(F).order(), 2u);
  EXPECT_EQ(ch::CharSpec(F, 14).k, 2u);  // exponent normalized mod q-1
  cf::FqCtx G = cf::make_field(7, 1);
  EXPECT_THROW(ch::jacobi_sum(ch::CharSpec(F, 1), ch::CharSpec(G, 1)), std::invalid_argument);
}
