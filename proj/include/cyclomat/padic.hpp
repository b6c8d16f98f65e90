#pragma once

// Base-p digit sums s(r) attached to an odd prime power q = p^f, the
// fractional-part identity s(r) = (p-1) * sum_i frac(r p^i / (q-1)), the
// strict digit-sum inequality s(n) + s(n+r) > s(r) for n = (q-1)/2, and the
// Morita p-adic Gamma function
//
//   Gamma_p(n) = (-1)^n * prod_{1 <= k < n, p does not divide k} k
//
// evaluated modulo p^N.  Arguments outside [0, p^N) -- large integers,
// negative integers, and rationals whose denominator divides p-1 -- are
// handled through a positive representative mod p^N, which agrees with the
// direct product because the product of the units in any window of p^N
// consecutive integers is -1 mod p^N (Wilson's theorem for odd prime powers)
// and p^N is odd, so the representative also carries the right sign.

#include "cyclomat/arith.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace cyclomat::padic {

using arith::i64;
using arith::Integer;
using arith::ModRing;
using arith::PrimePowerCtx;
using arith::Rational;
using arith::u64;

// ---------------------------------------------------------------------------
// Base-p digit sums.
// ---------------------------------------------------------------------------

// Base-p digits of r (least significant first, exactly f entries) and their
// sum.  Satisfies sum_i digits[i] * p^i = r with every digit in [0, p).
struct DigitSum {
  u64 r = 0;
  std::vector<u64> digits;
  u64 s = 0;
};

inline DigitSum digit_decompose(u64 r, const PrimePowerCtx& ctx) {
  if (r > ctx.q - 2)
    throw std::invalid_argument("digit_decompose: r = " + std::to_string(r) + " is outside [0, q-2] for q = " +
                                std::to_string(ctx.q));
  DigitSum out;
  out.r = r;
  out.digits.resize(ctx.f);
  u64 rest = r;
  for (unsigned i = 0; i < ctx.f; ++i) {
    out.digits[i] = rest % ctx.p;
    rest /= ctx.p;
    out.s += out.digits[i];
  }
  // Cross-check against the fractional-part form: multiplying r by p mod q-1
  // cyclically shifts the digit string, and frac(x / (q-1)) for x in [0, q-2]
  // is x / (q-1), so s * (q-1) must equal (p-1) * sum_i (r p^i mod (q-1)).
  u64 frac_numerator_sum = 0;
  u64 t = r;  // r <= q-2 is already reduced mod q-1
  for (unsigned i = 0; i < ctx.f; ++i) {
    frac_numerator_sum += t;
    t = (t * ctx.p) % (ctx.q - 1);
  }
  if (out.s * (ctx.q - 1) != (ctx.p - 1) * frac_numerator_sum)
    throw std::logic_error("digit_decompose: digit sum disagrees with the fractional-part formula");
  return out;
}

inline u64 digit_sum(u64 r, const PrimePowerCtx& ctx) { return digit_decompose(r, ctx).s; }

// True iff s(n) + s(n+r) > s(r) strictly for every r in [0, n-1], where
// n = (q-1)/2.  (For r in that range n+r <= q-2, so every argument is a
// valid digit-sum input.)
inline bool digit_sum_inequality_holds(const PrimePowerCtx& ctx) {
  const u64 n = ctx.n;
  const u64 s_n = digit_sum(n, ctx);
  for (u64 r = 0; r < n; ++r) {
    if (s_n + digit_sum(n + r, ctx) <= digit_sum(r, ctx)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Morita p-adic Gamma function mod p^N.
// ---------------------------------------------------------------------------

// A residue approximating a p-adic integer to precision N, i.e. mod p^N.
struct PadicApprox {
  u64 p = 0;
  unsigned N = 0;
  u64 modulus = 0;  // p^N, capped at 10^13
  u64 value = 0;    // in [0, modulus)
};

namespace detail {

inline ModRing gamma_ring(u64 p, unsigned N) {
  if (p == 2 || p == 3)
    throw std::invalid_argument("gamma_p: p = " + std::to_string(p) + " is rejected; requires a prime p >= 5");
  if (p < 5 || !arith::is_prime(p)) throw std::invalid_argument("gamma_p: requires a prime p >= 5");
  if (N == 0) throw std::invalid_argument("gamma_p: precision N must be >= 1");
  u64 m = 1;
  for (unsigned i = 0; i < N; ++i) {
    if (m > ModRing::kMaxModulus / p)
      throw std::invalid_argument("gamma_p: p^N exceeds the 10^13 modulus cap");
    m *= p;
  }
  return ModRing(m);
}

// Gamma_p at a representative rep in [0, p^N): the literal definition
// (-1)^rep * prod_{1 <= k < rep, p not dividing k} k, reduced mod p^N.
inline u64 gamma_at_representative(u64 rep, u64 p, const ModRing& R) {
  u64 prod = R.reduce(static_cast<u64>(1));
  for (u64 k = 1; k < rep; ++k) {
    if (k % p != 0) prod = R.mul(prod, R.reduce(k));
  }
  if (rep % 2 == 1) prod = R.neg(prod);
  if (prod % p == 0) throw std::logic_error("gamma_p: result is not a unit mod p");
  return prod;
}

}  // namespace detail

inline PadicApprox gamma_p(const Integer& x, u64 p, unsigned N) {
  ModRing R = detail::gamma_ring(p, N);
  const u64 rep = R.reduce(x);
  return PadicApprox{p, N, R.modulus(), detail::gamma_at_representative(rep, p, R)};
}

inline PadicApprox gamma_p(i64 x, u64 p, unsigned N) { return gamma_p(Integer(static_cast<long>(x)), p, N); }

// Rational arguments a/b with b dividing p-1 (the shape produced by the
// Gross-Koblitz exponents r/(p-1)): replaced by the positive integer
// representative a * b^{-1} mod p^N and evaluated through the integer
// definition.
inline PadicApprox gamma_p(const Rational& x, u64 p, unsigned N) {
  ModRing R = detail::gamma_ring(p, N);
  Rational xc = x;
  xc.canonicalize();
  const Integer den = xc.get_den();
  if (!den.fits_ulong_p() || (p - 1) % den.get_ui() != 0)
    throw std::invalid_argument("gamma_p: rational argument needs a denominator dividing p-1");
  const u64 rep = R.mul(R.reduce(Integer(xc.get_num())), R.inv(R.reduce(den)));
  return PadicApprox{p, N, R.modulus(), detail::gamma_at_representative(rep, p, R)};
}

}  // namespace cyclomat::padic
