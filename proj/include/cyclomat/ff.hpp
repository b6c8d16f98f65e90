#pragma once

// Explicit construction of the finite field F_{p^f}: deterministic
// lexicographically-smallest monic irreducible modulus polynomial,
// coefficient-vector arithmetic, the lexicographically smallest generator of
// the multiplicative group, one-time discrete-log/exp tables, the trace to
// F_p, and the canonical enumeration s_i = g^{2(i-1)} of the nonzero squares.

#include "cyclomat/arith.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace cyclomat::ff {

using arith::i64;
using arith::u32;
using arith::u64;

// Element of F_{p^f}: exactly f residues mod p, constant coefficient first.
struct FqElem {
  std::vector<u32> c;
  bool operator==(const FqElem&) const = default;
};

class FqCtx {
 public:
  static constexpr u64 kMaxQ = 1ULL << 20;  // discrete-log table bound

  FqCtx(u64 p, unsigned f) : ctx_(p, f) {
    if (ctx_.q > kMaxQ)
      throw std::invalid_argument("FqCtx: field size exceeds the 2^20 table bound");
    build_modulus();
    find_generator();
    build_tables();
  }

  const arith::PrimePowerCtx& ctx() const { return ctx_; }
  u64 p() const { return ctx_.p; }
  unsigned f() const { return ctx_.f; }
  u64 q() const { return ctx_.q; }
  u64 n() const { return ctx_.n; }

  // Monic modulus polynomial, f+1 coefficients, constant first (for f = 1 the
  // conventionally trivial "x - 0").
  const std::vector<u32>& modulus_poly() const { return mod_; }
  const FqElem& generator() const { return g_; }

  // --- element constructors -----------------------------------------------
  FqElem zero() const { return FqElem{std::vector<u32>(ctx_.f, 0)}; }
  FqElem one() const { return from_int(1); }
  FqElem from_int(i64 a) const {
    FqElem e = zero();
    e.c[0] = static_cast<u32>(arith::reduce_signed(a, ctx_.p));
    return e;
  }
  FqElem from_coeffs(std::vector<u32> coeffs) const {
    if (coeffs.size() != ctx_.f) throw std::invalid_argument("FqCtx: coefficient vector has wrong length");
    for (u32& x : coeffs) x = static_cast<u32>(x % ctx_.p);
    return FqElem{std::move(coeffs)};
  }

  bool is_zero(const FqElem& a) const {
    for (u32 x : a.c)
      if (x != 0) return false;
    return true;
  }

  // --- arithmetic -----------------------------------------------------------
  FqElem add(const FqElem& a, const FqElem& b) const {
    FqElem r = a;
    for (unsigned i = 0; i < ctx_.f; ++i) r.c[i] = static_cast<u32>((r.c[i] + b.c[i]) % ctx_.p);
    return r;
  }
  FqElem sub(const FqElem& a, const FqElem& b) const {
    FqElem r = a;
    for (unsigned i = 0; i < ctx_.f; ++i) r.c[i] = static_cast<u32>((r.c[i] + ctx_.p - b.c[i]) % ctx_.p);
    return r;
  }
  FqElem neg(const FqElem& a) const { return sub(zero(), a); }

  FqElem mul(const FqElem& a, const FqElem& b) const {
    if (is_zero(a) || is_zero(b)) return zero();
    return expt_[(log(a) + log(b)) % (ctx_.q - 1)];
  }

  FqElem inv(const FqElem& a) const {
    if (is_zero(a)) throw std::domain_error("FqCtx: inversion of zero");
    return expt_[(ctx_.q - 1 - log(a)) % (ctx_.q - 1)];
  }

  FqElem pow(const FqElem& a, u64 e) const {
    if (is_zero(a)) return e == 0 ? one() : zero();
    u64 k = arith::mulmod(log(a), e % (ctx_.q - 1), ctx_.q - 1);
    return expt_[k];
  }

  // Discrete log base g of a nonzero element, in [0, q-2].
  u64 log(const FqElem& a) const {
    if (is_zero(a)) throw std::domain_error("FqCtx: log of zero");
    return logt_[code(a)];
  }

  // g^k with k taken mod q-1.
  const FqElem& exp(u64 k) const { return expt_[k % (ctx_.q - 1)]; }

  // x != 0 is a square exactly when its discrete log is even.
  bool is_square(const FqElem& a) const { return log(a) % 2 == 0; }

  // Trace to the prime field: sum of the f Frobenius conjugates.
  u64 trace(const FqElem& a) const {
    FqElem s = a, t = a;
    for (unsigned i = 1; i < ctx_.f; ++i) {
      t = pow(t, ctx_.p);
      s = add(s, t);
    }
    for (unsigned i = 1; i < ctx_.f; ++i) {
      if (s.c[i] != 0) throw std::logic_error("FqCtx: trace left the prime field");
    }
    return s.c[0];
  }

  // The nonzero squares in the canonical order s_i = g^{2(i-1)}, s_1 = 1.
  std::vector<FqElem> nonzero_squares() const {
    std::vector<FqElem> s;
    s.reserve(ctx_.n);
    for (u64 i = 0; i < ctx_.n; ++i) s.push_back(expt_[(2 * i) % (ctx_.q - 1)]);
    return s;
  }

  // Dense index of an element: sum c_i p^i in [0, q).
  u64 code(const FqElem& a) const {
    u64 v = 0;
    for (unsigned i = ctx_.f; i-- > 0;) v = v * ctx_.p + a.c[i];
    return v;
  }
  FqElem from_code(u64 v) const {
    FqElem e = zero();
    for (unsigned i = 0; i < ctx_.f; ++i) {
      e.c[i] = static_cast<u32>(v % ctx_.p);
      v /= ctx_.p;
    }
    return e;
  }

  std::string to_string(const FqElem& a) const {
    if (ctx_.f == 1) return std::to_string(a.c[0]);
    std::string s = "[";
    for (unsigned i = 0; i < ctx_.f; ++i) {
      if (i) s += ",";
      s += std::to_string(a.c[i]);
    }
    return s + "]";
  }

 private:
  using Poly = std::vector<u64>;  // coefficients mod p, constant first

  arith::PrimePowerCtx ctx_;
  std::vector<u32> mod_;          // modulus polynomial, degree f, monic
  FqElem g_;
  std::vector<FqElem> expt_;      // k -> g^k, size q-1
  std::vector<u32> logt_;         // element code -> discrete log

  static void strip(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
  }

  // a mod m, m monic; both constant-first.
  Poly poly_mod(Poly a, const Poly& m) const {
    const u64 p = ctx_.p;
    while (a.size() >= m.size()) {
      u64 c = a.back() % p;
      if (c != 0) {
        std::size_t off = a.size() - m.size();
        for (std::size_t i = 0; i < m.size(); ++i)
          a[off + i] = (a[off + i] + p * p - c * (m[i] % p) % p) % p;
      }
      a.pop_back();
    }
    strip(a);
    return a;
  }

  Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& m) const {
    const u64 p = ctx_.p;
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] == 0) continue;
      for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    }
    return poly_mod(std::move(r), m);
  }

  Poly poly_powmod(Poly base, u64 e, const Poly& m) const {
    Poly acc{1};
    while (e != 0) {
      if (e & 1) acc = poly_mulmod(acc, base, m);
      base = poly_mulmod(base, base, m);
      e >>= 1;
    }
    return acc;
  }

  // gcd over F_p[x]; both inputs arbitrary, result monic or empty.
  Poly poly_gcd(Poly a, Poly b) const {
    const u64 p = ctx_.p;
    strip(a);
    strip(b);
    while (!b.empty()) {
      u64 lead_inv = arith::invmod(b.back(), p);
      Poly bm = b;
      for (u64& x : bm) x = x * lead_inv % p;
      a = poly_mod(std::move(a), bm);
      std::swap(a, b);
    }
    return a;
  }

  bool irreducible(const Poly& poly) const {
    const u64 p = ctx_.p;
    const unsigned f = static_cast<unsigned>(poly.size()) - 1;
    if (f == 0) return false;
    Poly x{0, 1};
    Poly xp = x;  // will hold x^{p^i} mod poly
    for (unsigned i = 1; i < f; ++i) {
      xp = poly_powmod(xp, p, poly);
      // gcd(poly, x^{p^i} - x) must be trivial; a zero difference means the
      // polynomial splits over F_{p^i} entirely.
      Poly diff = xp;
      if (diff.size() < 2) diff.resize(2, 0);
      diff[1] = (diff[1] + p - 1) % p;
      strip(diff);
      if (diff.empty()) return false;
      Poly d = poly_gcd(poly, diff);
      if (d.size() > 1) return false;
    }
    Poly xq = poly_powmod(x, 1, poly);
    for (unsigned i = 0; i < f; ++i) xq = poly_powmod(xq, p, poly);
    return xq == x;
  }

  void build_modulus() {
    const u64 p = ctx_.p;
    const unsigned f = ctx_.f;
    if (f == 1) {
      mod_ = {0, 1};
      return;
    }
    // Lexicographically smallest tail (constant coefficient most significant
    // in the comparison): odometer with the last position varying fastest.
    std::vector<u32> tail(f, 0);
    while (true) {
      Poly poly(tail.begin(), tail.end());
      poly.push_back(1);
      if (irreducible(poly)) {
        mod_.assign(poly.begin(), poly.end());
        return;
      }
      int pos = static_cast<int>(f) - 1;
      while (pos >= 0) {
        if (++tail[pos] < p) break;
        tail[pos] = 0;
        --pos;
      }
      if (pos < 0) throw std::logic_error("FqCtx: no irreducible polynomial found");
    }
  }

  Poly elem_poly(const FqElem& e) const {
    Poly a(e.c.begin(), e.c.end());
    strip(a);
    return a;
  }

  void find_generator() {
    const u64 p = ctx_.p;
    const unsigned f = ctx_.f;
    const u64 order = ctx_.q - 1;
    std::vector<u64> prime_factors;
    u64 rest = order;
    for (u64 d = 2; d * d <= rest; ++d) {
      if (rest % d == 0) {
        prime_factors.push_back(d);
        while (rest % d == 0) rest /= d;
      }
    }
    if (rest > 1) prime_factors.push_back(rest);

    Poly modp(mod_.begin(), mod_.end());
    std::vector<u32> cand(f, 0);
    while (true) {
      int pos = static_cast<int>(f) - 1;
      while (pos >= 0) {
        if (++cand[pos] < p) break;
        cand[pos] = 0;
        --pos;
      }
      if (pos < 0) throw std::logic_error("FqCtx: no generator found");
      Poly e(cand.begin(), cand.end());
      strip(e);
      if (e.empty()) continue;
      if (poly_powmod(e, order, modp) != Poly{1}) continue;
      bool ok = true;
      for (u64 ell : prime_factors) {
        if (poly_powmod(e, order / ell, modp) == Poly{1}) {
          ok = false;
          break;
        }
      }
      if (ok) {
        g_ = FqElem{cand};
        return;
      }
    }
  }

  void build_tables() {
    const u64 q = ctx_.q;
    Poly modp(mod_.begin(), mod_.end());
    Poly gp = elem_poly(g_);
    expt_.reserve(q - 1);
    logt_.assign(q, 0xFFFFFFFFu);
    Poly x{1};
    for (u64 k = 0; k < q - 1; ++k) {
      FqElem e = zero();
      for (std::size_t i = 0; i < x.size(); ++i) e.c[i] = static_cast<u32>(x[i]);
      logt_[code(e)] = static_cast<u32>(k);
      expt_.push_back(std::move(e));
      x = poly_mulmod(x, gp, modp);
    }
    if (x != Poly{1}) throw std::logic_error("FqCtx: generator order check failed");
  }
};

inline FqCtx make_field(u64 p, unsigned f) { return FqCtx(p, f); }

}  // namespace cyclomat::ff
