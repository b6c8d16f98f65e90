#pragma once

// Multiplicative characters of F_q^x as powers of the generator character
// (chi(g^a) = zeta_{q-1}^{k*a}, extended by chi(0) = 0), exact Jacobi sums in
// Q(zeta_{q-1}), complex Gauss sums, the product/inverse-sum aggregates of the
// Jacobi-sum lemma, the binomial-coefficient-analogue sum, and the eigenvalue
// quantities lambda_r, alpha_r, beta_r.

#include "cyclomat/arith.hpp"
#include "cyclomat/cyclo.hpp"
#include "cyclomat/ff.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace cyclomat::chars {

using arith::i64;
using arith::Rational;
using arith::u64;
using cyclo::CycNum;
using ff::FqCtx;
using ff::FqElem;

struct CharSpec {
  const FqCtx* F;
  u64 k;  // exponent in [0, q-2]

  CharSpec(const FqCtx& field, u64 exponent) : F(&field), k(exponent % (field.q() - 1)) {}

  u64 conductor() const { return F->q() - 1; }
  bool is_trivial() const { return k == 0; }
  u64 order() const { return (F->q() - 1) / std::gcd(k, F->q() - 1); }
  CharSpec conj() const { return CharSpec(*F, (F->q() - 1 - k) % (F->q() - 1)); }
  // chi(-1) = (-1)^k since -1 = g^{(q-1)/2}.
  int sign_at_minus_one() const { return arith::sign_pow(k); }
};

inline CharSpec trivial_char(const FqCtx& F) { return CharSpec(F, 0); }
inline CharSpec generator_char(const FqCtx& F) { return CharSpec(F, 1); }
inline CharSpec quadratic_char(const FqCtx& F) { return CharSpec(F, F.n()); }
inline CharSpec char_power(const FqCtx& F, i64 e) {
  return CharSpec(F, arith::reduce_signed(e, F.q() - 1));
}

// ---------------------------------------------------------------------------
// Evaluation.
// ---------------------------------------------------------------------------

inline CycNum char_value(const CharSpec& chi, const FqElem& x) {
  const u64 m = chi.conductor();
  if (chi.F->is_zero(x)) return CycNum::zero(static_cast<unsigned>(m));
  u64 e = chi.k * chi.F->log(x) % m;
  return CycNum::zeta_pow(static_cast<unsigned>(m), static_cast<i64>(e));
}

inline std::complex<double> char_value_complex(const CharSpec& chi, const FqElem& x) {
  const u64 m = chi.conductor();
  if (chi.F->is_zero(x)) return {0.0, 0.0};
  double ang = 2.0 * std::numbers::pi * static_cast<double>(chi.k * chi.F->log(x) % m) /
               static_cast<double>(m);
  return {std::cos(ang), std::sin(ang)};
}

// ---------------------------------------------------------------------------
// Jacobi sums J_q(psi, chi) = sum_{x in F_q} psi(x) chi(1-x), exact.
// Nonzero terms have x != 0 and x != 1; the sum is accumulated as counts of
// zeta-exponents and reduced once, so coordinates are integers by built.
// ---------------------------------------------------------------------------

inline CycNum jacobi_sum(const CharSpec& psi, const CharSpec& chi) {
  if (psi.F != chi.F) throw std::invalid_argument("jacobi_sum: characters on different fields");
  const FqCtx& F = *psi.F;
  const u64 m = F.q() - 1;
  std::vector<Rational> counts(m, Rational(0));
  const FqElem one = F.one();
  for (u64 code = 1; code < F.q(); ++code) {
    FqElem x = F.from_code(code);
    FqElem y = F.sub(one, x);
    if (F.is_zero(y)) continue;
    u64 e = (psi.k * F.log(x) + chi.k * F.log(y)) % m;
    counts[e] += 1;
  }
  CycNum j = CycNum::from_power_coeffs(static_cast<unsigned>(m), std::move(counts));
  if (!j.is_integral()) throw std::logic_error("jacobi_sum: non-integral coordinates");
  return j;
}

// ---------------------------------------------------------------------------
// Complex Gauss sums G_q(psi) = sum_{x != 0} psi(x) zeta_p^{Tr(x)}.
// ---------------------------------------------------------------------------

inline std::complex<double> gauss_sum_complex(const CharSpec& psi) {
  const FqCtx& F = *psi.F;
  const u64 m = F.q() - 1;
  const double two_pi = 2.0 * std::numbers::pi;
  std::complex<double> s(0.0, 0.0);
  for (u64 a = 0; a < m; ++a) {
    double ang = two_pi * (static_cast<double>(psi.k * a % m) / static_cast<double>(m) +
                           static_cast<double>(F.trace(F.exp(a))) / static_cast<double>(F.p()));
    s += std::complex<double>(std::cos(ang), std::sin(ang));
  }
  return s;
}

// ---------------------------------------------------------------------------
// Aggregates over the full character column {J_q(psi, chi_q^r)}_{r=0..q-2}:
//   a_q = prod_r J (exact product, embedded),
//   s_q = sum_r J^{-1} (exact),
//   t_q = sum_r (-1)^r J^{-1} (exact).
// Every factor is nonzero: J(psi, trivial) = -1, J(psi, conj psi) = +-1, and
// the remaining values have modulus sqrt(q).
// ---------------------------------------------------------------------------

struct ColumnAggregates {
  std::complex<double> a_q;
  CycNum s_q;
  CycNum t_q;
};

inline ColumnAggregates column_aggregates(const CharSpec& psi) {
  if (psi.is_trivial()) throw std::invalid_argument("column_aggregates: character must be nontrivial");
  const FqCtx& F = *psi.F;
  const unsigned m = static_cast<unsigned>(F.q() - 1);
  CycNum prod = CycNum::one(m);
  CycNum s = CycNum::zero(m), t = CycNum::zero(m);
  for (u64 r = 0; r < F.q() - 1; ++r) {
    CycNum j = jacobi_sum(psi, CharSpec(F, r));
    prod = prod * j;
    CycNum jinv = j.inverse();
    s = s + jinv;
    t = (r % 2 == 0) ? t + jinv : t - jinv;
  }
  return ColumnAggregates{prod.embed(), std::move(s), std::move(t)};
}

// sum_r [ (chi_q^r(-1)/q) * J_q(psi, conj chi_q^r) ]^{-1}, exact.
inline CycNum greene_binomial_sum(const CharSpec& psi) {
  if (psi.is_trivial()) throw std::invalid_argument("greene_binomial_sum: character must be nontrivial");
  const FqCtx& F = *psi.F;
  const unsigned m = static_cast<unsigned>(F.q() - 1);
  const Rational q_rat(static_cast<unsigned long>(F.q()));
  CycNum acc = CycNum::zero(m);
  for (u64 r = 0; r < F.q() - 1; ++r) {
    CharSpec chi_r(F, r);
    CycNum j = jacobi_sum(psi, chi_r.conj());
    Rational sign_over_q = Rational(chi_r.sign_at_minus_one()) / q_rat;
    acc = acc + (j * sign_over_q).inverse();
  }
  return acc;
}

// ---------------------------------------------------------------------------
// lambda_r = ((-1)^r / 2) J(w^{-n}, w^{-r}) + ((-1)^{n+r} / 2) J(w^{-n}, w^{-(n+r)}),
// where w^{-s} is the character of exponent -s mod (q-1) (the reduction-
// compatible stand-in for the Teichmueller character power).
// ---------------------------------------------------------------------------

inline CycNum lambda_r(const FqCtx& F, u64 r) {
  if (F.q() < 7) throw std::invalid_argument("lambda_r: requires q >= 7");
  if (r >= F.n()) throw std::invalid_argument("lambda_r: index must lie in [0, n-1]");
  const i64 n = static_cast<i64>(F.n());
  CharSpec wn = char_power(F, -n);
  CycNum j1 = jacobi_sum(wn, char_power(F, -static_cast<i64>(r)));
  CycNum j2 = jacobi_sum(wn, char_power(F, -(n + static_cast<i64>(r))));
  Rational half1(arith::sign_pow(r), 2), half2(arith::sign_pow(F.n() + r), 2);
  half1.canonicalize();
  half2.canonicalize();
  return j1 * half1 + j2 * half2;
}

// alpha_r = psi(-1) J(psi, chi_q^r) and beta_r = (-1)^r J(psi, chi_q^r).
struct AlphaBeta {
  CycNum alpha;
  CycNum beta;
};

inline AlphaBeta alpha_beta_r(const CharSpec& psi, u64 r) {
  if (psi.is_trivial()) throw std::invalid_argument("alpha_beta_r: character must be nontrivial");
  CycNum j = jacobi_sum(psi, CharSpec(*psi.F, r));
  CycNum alpha = j * Rational(psi.sign_at_minus_one());
  CycNum beta = j * Rational(arith::sign_pow(r));
  return AlphaBeta{std::move(alpha), std::move(beta)};
}

}  // namespace cyclomat::chars
