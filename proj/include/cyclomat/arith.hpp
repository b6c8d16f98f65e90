#pragma once

// Exact integer / rational / modular primitives shared by every other header:
// primality, Legendre symbols, binomials (exact and via Lucas digits),
// Bernoulli numbers, elementary symmetric polynomials, the class number of
// Q(sqrt(-p)), and a checked fixed-modulus ring for congruences mod p^2, p^3.

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cyclomat::arith {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;
using i128 = __int128;

using Integer = mpz_class;
using Rational = mpq_class;

// ---------------------------------------------------------------------------
// Low-level modular helpers (all arguments already reduced unless noted).
// ---------------------------------------------------------------------------

inline u64 mulmod(u64 a, u64 b, u64 m) {
  return static_cast<u64>(static_cast<u128>(a) * b % m);
}

inline u64 addmod(u64 a, u64 b, u64 m) {
  u64 s = a + b;  // a, b < m <= 10^13 << 2^63: no overflow
  return s >= m ? s - m : s;
}

inline u64 submod(u64 a, u64 b, u64 m) { return a >= b ? a - b : a + m - b; }

inline u64 powmod(u64 a, u64 e, u64 m) {
  u64 r = 1 % m;
  a %= m;
  while (e != 0) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

// Modular inverse by extended Euclid; throws if gcd(a, m) != 1.
inline u64 invmod(u64 a, u64 m) {
  i128 r0 = static_cast<i128>(a % m), r1 = static_cast<i128>(m);
  i128 s0 = 1, s1 = 0;
  while (r1 != 0) {
    i128 q = r0 / r1;
    i128 r2 = r0 - q * r1;
    i128 s2 = s0 - q * s1;
    r0 = r1; r1 = r2;
    s0 = s1; s1 = s2;
  }
  if (r0 != 1) throw std::domain_error("invmod: argument not invertible");
  i128 s = s0 % static_cast<i128>(m);
  if (s < 0) s += static_cast<i128>(m);
  return static_cast<u64>(s);
}

// Reduce a possibly negative 64-bit value into [0, m).
inline u64 reduce_signed(i64 x, u64 m) {
  i64 r = x % static_cast<i64>(m);
  if (r < 0) r += static_cast<i64>(m);
  return static_cast<u64>(r);
}

// (-1)^k as a signed unit.
inline int sign_pow(u64 k) { return (k & 1) ? -1 : 1; }

// ---------------------------------------------------------------------------
// Primality: deterministic Miller-Rabin.  The witness set {2,...,37} is
// deterministic for all inputs below 3.3 * 10^24, far beyond the 2^63 domain.
// ---------------------------------------------------------------------------

inline bool is_prime(u64 x) {
  constexpr u64 kWitnesses[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  if (x < 2) return false;
  for (u64 w : kWitnesses) {
    if (x % w == 0) return x == w;
  }
  u64 d = x - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 w : kWitnesses) {
    u64 y = powmod(w, d, x);
    if (y == 1 || y == x - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      y = mulmod(y, y, x);
      if (y == x - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

inline void require_odd_prime(u64 p, const char* who) {
  if (p % 2 == 0 || !is_prime(p))
    throw std::invalid_argument(std::string(who) + ": requires an odd prime, got " + std::to_string(p));
}

// Simple sieve of Eratosthenes; fine for the desk-scale bounds used here.
inline std::vector<u64> primes_up_to(u64 n) {
  std::vector<u64> out;
  if (n < 2) return out;
  std::vector<bool> comp(n + 1, false);
  for (u64 i = 2; i <= n; ++i) {
    if (!comp[i]) {
      out.push_back(i);
      for (u64 j = i * i; j <= n; j += i) comp[j] = true;
    }
    if (i * i > n) break;
  }
  // finish collecting the tail once sieving is done
  for (u64 i = out.empty() ? 2 : out.back() + 1; i <= n; ++i)
    if (!comp[i]) out.push_back(i);
  return out;
}

// ---------------------------------------------------------------------------
// Legendre symbol.  Primary route is GMP's implementation; callers that want
// the Euler-criterion route (used as an independent oracle in tests) can call
// legendre_euler directly.
// ---------------------------------------------------------------------------

inline int legendre_euler(i64 a, u64 p) {
  require_odd_prime(p, "legendre");
  u64 r = powmod(reduce_signed(a, p), (p - 1) / 2, p);
  if (r == 0) return 0;
  return r == 1 ? 1 : -1;
}

inline int legendre(const Integer& a, u64 p) {
  require_odd_prime(p, "legendre");
  Integer pz(static_cast<unsigned long>(p));
  return mpz_legendre(a.get_mpz_t(), pz.get_mpz_t());
}

inline int legendre(i64 a, u64 p) { return legendre(Integer(static_cast<long>(a)), p); }

// ---------------------------------------------------------------------------
// Prime-power context (p, f, q = p^f, n = (q-1)/2).
// ---------------------------------------------------------------------------

struct PrimePowerCtx {
  u64 p = 0;       // odd prime
  unsigned f = 0;  // exponent >= 1
  u64 q = 0;       // p^f
  u64 n = 0;       // (q - 1) / 2

  PrimePowerCtx(u64 p_, unsigned f_) : p(p_), f(f_) {
    require_odd_prime(p_, "PrimePowerCtx");
    if (f_ == 0) throw std::invalid_argument("PrimePowerCtx: exponent must be >= 1");
    q = 1;
    for (unsigned i = 0; i < f_; ++i) {
      if (q > (static_cast<u64>(1) << 62) / p_)
        throw std::overflow_error("PrimePowerCtx: p^f exceeds the 64-bit-safe range");
      q *= p_;
    }
    n = (q - 1) / 2;
  }
};

// Recognize q as an odd prime power; throws if it is not one.
inline PrimePowerCtx prime_power_decompose(u64 q) {
  if (q < 3 || q % 2 == 0) throw std::invalid_argument("prime_power_decompose: need an odd value >= 3");
  u64 p = 0;
  if (is_prime(q)) {
    p = q;
  } else {
    for (u64 d = 3; d * d <= q; d += 2) {
      if (q % d == 0) {
        p = d;
        break;
      }
    }
    if (p == 0) throw std::invalid_argument("prime_power_decompose: not a prime power");
  }
  unsigned f = 0;
  u64 rest = q;
  while (rest % p == 0) {
    rest /= p;
    ++f;
  }
  if (rest != 1)
    throw std::invalid_argument("prime_power_decompose: " + std::to_string(q) + " is not a prime power");
  return PrimePowerCtx(p, f);
}

// ---------------------------------------------------------------------------
// Fixed-modulus ring with a hard 10^13 cap so that products never leave the
// 128-bit intermediate range and p^2 fits for every prime below 10^6.
// ---------------------------------------------------------------------------

class ModRing {
 public:
  static constexpr u64 kMaxModulus = 10'000'000'000'000ULL;  // 10^13

  explicit ModRing(u64 modulus) : m_(modulus) {
    if (modulus == 0) throw std::invalid_argument("ModRing: modulus must be positive");
    if (modulus > kMaxModulus)
      throw std::invalid_argument("ModRing: modulus " + std::to_string(modulus) + " exceeds the 10^13 cap");
  }

  u64 modulus() const { return m_; }
  u64 reduce(u64 x) const { return x % m_; }
  u64 reduce(i64 x) const { return reduce_signed(x, m_); }
  u64 reduce(const Integer& x) const {
    Integer m = Integer(static_cast<unsigned long>(m_));
    Integer r = x % m;
    if (r < 0) r += m;
    return static_cast<u64>(r.get_ui());
  }
  u64 add(u64 a, u64 b) const { return addmod(a, b, m_); }
  u64 sub(u64 a, u64 b) const { return submod(a, b, m_); }
  u64 mul(u64 a, u64 b) const { return mulmod(a, b, m_); }
  u64 neg(u64 a) const { return a == 0 ? 0 : m_ - a; }
  u64 pow(u64 a, u64 e) const { return powmod(a, e, m_); }
  u64 inv(u64 a) const { return invmod(a, m_); }

 private:
  u64 m_;
};

// ---------------------------------------------------------------------------
// Binomials and factorials.
// ---------------------------------------------------------------------------

inline Integer binom_exact(u64 a, u64 b) {
  Integer r;
  if (b > a) return Integer(0);
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(a), static_cast<unsigned long>(b));
  return r;
}

inline Integer factorial_exact(u64 k) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(k));
  return r;
}

inline u64 factorial_mod(u64 k, const ModRing& ring) {
  u64 r = ring.reduce(static_cast<u64>(1));
  for (u64 i = 2; i <= k; ++i) r = ring.mul(r, ring.reduce(i));
  return r;
}

// C(a, b) mod p for a residue-digit pair below p (helper for the Lucas walk).
inline u64 binom_small_mod_p(u64 a, u64 b, u64 p) {
  if (b > a) return 0;
  b = std::min(b, a - b);
  u64 num = 1, den = 1;
  for (u64 j = 1; j <= b; ++j) {
    num = mulmod(num, (a - b + j) % p, p);
    den = mulmod(den, j % p, p);
  }
  return mulmod(num, invmod(den, p), p);
}

// C(a, b) mod p via base-p digits (the Lucas congruence).
inline u64 binom_mod_p(u64 a, u64 b, u64 p) {
  require_odd_prime(p, "binom_mod_p");
  if (b > a) return 0;
  u64 r = 1;
  while (a != 0 || b != 0) {
    u64 ad = a % p, bd = b % p;
    if (bd > ad) return 0;
    r = mulmod(r, binom_small_mod_p(ad, bd, p), p);
    a /= p;
    b /= p;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Bernoulli numbers, convention B_1 = -1/2, via the defining recurrence
// sum_{j=0}^{m} C(m+1, j) B_j = 0 for m >= 1.
// ---------------------------------------------------------------------------

inline Rational bernoulli(unsigned k) {
  if (k > 200) throw std::invalid_argument("bernoulli: index above the supported bound 200");
  std::vector<Rational> b(k + 1);
  b[0] = 1;
  for (unsigned m = 1; m <= k; ++m) {
    Rational s = 0;
    for (unsigned j = 0; j < m; ++j) {
      Rational t(binom_exact(m + 1, j));
      s += t * b[j];
    }
    Rational r = -s / Rational(static_cast<long>(m) + 1);
    r.canonicalize();
    b[m] = r;
  }
  return b[k];
}

// ---------------------------------------------------------------------------
// Elementary symmetric polynomials sigma_k.  Generic over any exact domain
// with +, * and integer literals (mpz_class, mpq_class, complex, ...).
// Convention: sigma_0 = 1 and sigma_k = 0 for k > #values.
// ---------------------------------------------------------------------------

template <class T>
T elementary_symmetric(const std::vector<T>& values, std::size_t k) {
  if (k > values.size()) return T(0);
  std::vector<T> e(k + 1, T(0));
  e[0] = T(1);
  for (const T& v : values) {
    for (std::size_t j = std::min(k, values.size()); j >= 1; --j) {
      e[j] = e[j] + e[j - 1] * v;
      if (j == 1) break;
    }
  }
  return e[k];
}

inline u64 elementary_symmetric_mod(const std::vector<u64>& values, std::size_t k, const ModRing& ring) {
  if (k > values.size()) return 0;
  std::vector<u64> e(k + 1, 0);
  e[0] = ring.reduce(static_cast<u64>(1));
  for (u64 v : values) {
    for (std::size_t j = k; j >= 1; --j) {
      e[j] = ring.add(e[j], ring.mul(e[j - 1], ring.reduce(v)));
      if (j == 1) break;
    }
  }
  return e[k];
}

// ---------------------------------------------------------------------------
// Class number h(-p) of the imaginary quadratic field Q(sqrt(-p)) for primes
// p = 3 (mod 4), p > 3, by the Dirichlet character-sum formula
//   h(-p) = (sum_{k=1}^{(p-1)/2} (k/p)) / (2 - (2/p)).
// ---------------------------------------------------------------------------

inline u64 class_number_neg_p(u64 p) {
  require_odd_prime(p, "class_number_neg_p");
  if (p % 4 != 3 || p == 3)
    throw std::invalid_argument("class_number_neg_p: requires a prime p = 3 (mod 4), p > 3");
  i64 s = 0;
  for (u64 k = 1; k <= (p - 1) / 2; ++k) s += legendre(static_cast<i64>(k), p);
  i64 d = 2 - legendre(static_cast<i64>(2), p);
  if (s <= 0 || s % d != 0)
    throw std::logic_error("class_number_neg_p: character sum not divisible as expected");
  return static_cast<u64>(s / d);
}

}  // namespace cyclomat::arith
