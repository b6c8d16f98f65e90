#pragma once

// Pell numbers P_i (0, 1, 2, 5, 12, ...) and companion Pell numbers Q_i
// (2, 2, 6, 14, 34, ...), defined by X_{i+1} = 2 X_i + X_{i-1}, evaluated
// modulo arbitrary 64-bit-safe moduli in O(log i) via the 2x2 matrix power
// [[2,1],[1,0]]^i = [[P_{i+1}, P_i], [P_i, P_{i-1}]], together with the
// derived residues a_p = (2 - Q_p)/p mod p and
// b_p = (2(2/p) - 2 P_p - p)/p mod p and the two mod-p^2 congruence
// predicates they encode.

#include "cyclomat/arith.hpp"

#include <stdexcept>

namespace cyclomat::pell {

using arith::i64;
using arith::ModRing;
using arith::u64;

struct PellPair {
  u64 index;
  u64 P;
  u64 Q;
};

namespace detail {

struct Mat2 {
  u64 a, b, c, d;
};

inline Mat2 mat_mul(const Mat2& x, const Mat2& y, const ModRing& R) {
  return Mat2{R.add(R.mul(x.a, y.a), R.mul(x.b, y.c)), R.add(R.mul(x.a, y.b), R.mul(x.b, y.d)),
              R.add(R.mul(x.c, y.a), R.mul(x.d, y.c)), R.add(R.mul(x.c, y.b), R.mul(x.d, y.d))};
}

inline void require_pell_prime(u64 p, const char* who) {
  if (p < 7 || !arith::is_prime(p))
    throw std::invalid_argument(std::string(who) + ": requires a prime p >= 7");
}

}  // namespace detail

inline PellPair pell_pair_mod(u64 i, const ModRing& R) {
  detail::Mat2 acc{R.reduce(u64{1}), 0, 0, R.reduce(u64{1})};
  detail::Mat2 base{R.reduce(u64{2}), R.reduce(u64{1}), R.reduce(u64{1}), 0};
  u64 e = i;
  while (e) {
    if (e & 1) acc = detail::mat_mul(acc, base, R);
    base = detail::mat_mul(base, base, R);
    e >>= 1;
  }
  return PellPair{i, acc.b, R.add(acc.a, acc.d)};
}

// a_p = (2 - Q_p)/p mod p.  Q_p = 2 (mod p) is the underlying congruence;
// its failure would mean the Pell evaluation itself is broken, so the
// divisibility is checked and hard-fails.
inline u64 a_p(u64 p) {
  detail::require_pell_prime(p, "a_p");
  ModRing r2(p * p);
  PellPair pr = pell_pair_mod(p, r2);
  u64 diff = r2.sub(r2.reduce(u64{2}), pr.Q);
  if (diff % p != 0)
    throw std::logic_error("a_p: Q_p is not 2 mod p, contradicting the Pell congruence");
  return (diff / p) % p;
}

// b_p = (2(2/p) - 2 P_p - p)/p mod p, numerator taken mod p^2 where it is
// divisible by p because P_p = (2/p) (mod p).
inline u64 b_p(u64 p) {
  detail::require_pell_prime(p, "b_p");
  ModRing r2(p * p);
  PellPair pr = pell_pair_mod(p, r2);
  u64 lead = r2.reduce(static_cast<i64>(2 * arith::legendre(i64{2}, p)));
  u64 num = r2.sub(lead, r2.add(r2.reduce(p), r2.mul(2, pr.P)));
  if (num % p != 0)
    throw std::logic_error("b_p: 2(2/p) - 2P_p - p is not divisible by p, contradicting the Pell congruence");
  return (num / p) % p;
}

// Q_p = 2 (mod p^2)?
inline bool predicate_qp(u64 p) {
  detail::require_pell_prime(p, "predicate_qp");
  ModRing r2(p * p);
  return pell_pair_mod(p, r2).Q == r2.reduce(u64{2});
}

// 2 P_p = 2(2/p) - p (mod p^2)?
inline bool predicate_pp(u64 p) {
  detail::require_pell_prime(p, "predicate_pp");
  return b_p(p) == 0;
}

}  // namespace cyclomat::pell
