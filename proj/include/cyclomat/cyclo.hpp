#pragma once

// Exact arithmetic in the cyclotomic field Q(zeta_m): elements are stored as
// canonical remainders mod the m-th cyclotomic polynomial (power basis
// zeta^0..zeta^{phi(m)-1} with exact rational coordinates), so equality is
// coefficient-wise.  Also provides the complex embedding zeta_m = e^{2*pi*i/m}
// and the reduction homomorphism into F_q determined by zeta_{q-1} -> g.

#include "cyclomat/arith.hpp"
#include "cyclomat/ff.hpp"

#include <cmath>
#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cyclomat::cyclo {

using arith::i64;
using arith::Integer;
using arith::Rational;
using arith::u64;

// Per-conductor immutable data: the cyclotomic polynomial Phi_m and its degree.
class CycloCtx {
 public:
  explicit CycloCtx(unsigned m) : m_(m) {
    if (m == 0) throw std::invalid_argument("CycloCtx: conductor must be positive");
    phi_ = cyclotomic_polynomial(m);
  }

  unsigned conductor() const { return m_; }
  unsigned degree() const { return static_cast<unsigned>(phi_.size()) - 1; }
  // Phi_m coefficients, constant first, monic.
  const std::vector<Integer>& polynomial() const { return phi_; }

  static std::shared_ptr<const CycloCtx> get(unsigned m) {
    static std::mutex mu;
    static std::map<unsigned, std::shared_ptr<const CycloCtx>> cache;
    std::scoped_lock lock(mu);
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;
    auto ctx = std::make_shared<const CycloCtx>(m);
    cache.emplace(m, ctx);
    return ctx;
  }

 private:
  // Phi_m = (x^m - 1) / prod_{d | m, d < m} Phi_d, by exact integer division,
  // built bottom-up over the divisors of m with local storage only.
  static std::vector<Integer> cyclotomic_polynomial(unsigned m) {
    std::map<unsigned, std::vector<Integer>> phi;
    for (unsigned d = 1; d <= m; ++d) {
      if (m % d != 0) continue;
      std::vector<Integer> num(d + 1, Integer(0));
      num[0] = -1;
      num[d] = 1;
      for (const auto& [e, poly] : phi) {
        if (d % e == 0) num = divide_exact(num, poly);
      }
      phi.emplace(d, std::move(num));
    }
    return phi.at(m);
  }

  // Exact division of integer polynomials (divisor monic), constant first.
  static std::vector<Integer> divide_exact(const std::vector<Integer>& a,
                                           const std::vector<Integer>& b) {
    if (b.empty() || b.back() != 1) throw std::logic_error("CycloCtx: divisor must be monic");
    std::vector<Integer> rem = a;
    std::vector<Integer> quot(a.size() - b.size() + 1, Integer(0));
    for (std::size_t k = a.size(); k-- >= b.size();) {
      Integer c = rem[k];
      if (c != 0) {
        std::size_t off = k - (b.size() - 1);
        quot[off] = c;
        for (std::size_t i = 0; i < b.size(); ++i) rem[off + i] -= c * b[i];
      }
      if (k == b.size() - 1) break;
    }
    for (const Integer& r : rem)
      if (r != 0) throw std::logic_error("CycloCtx: non-exact cyclotomic division");
    return quot;
  }

  unsigned m_;
  std::vector<Integer> phi_;
};

class CycNum {
 public:
  // Zero of conductor m.
  explicit CycNum(unsigned m) : ctx_(CycloCtx::get(m)), c_(ctx_->degree(), Rational(0)) {}

  static CycNum zero(unsigned m) { return CycNum(m); }

  static CycNum from_rational(unsigned m, const Rational& r) {
    CycNum v(m);
    if (v.c_.empty()) throw std::invalid_argument("CycNum: conductor 1 unsupported");
    v.c_[0] = r;
    return v;
  }

  static CycNum one(unsigned m) { return from_rational(m, Rational(1)); }

  // zeta_m^e for any integer exponent e.
  static CycNum zeta_pow(unsigned m, i64 e) {
    u64 r = arith::reduce_signed(e, m);
    std::vector<Rational> powers(static_cast<std::size_t>(r) + 1, Rational(0));
    powers.back() = 1;
    return from_power_coeffs(m, std::move(powers));
  }

  // Construct from coefficients of zeta^0..zeta^{len-1} (len <= m), then
  // reduce once mod Phi_m.  This is the workhorse for character sums.
  static CycNum from_power_coeffs(unsigned m, std::vector<Rational> powers) {
    if (powers.size() > m) throw std::invalid_argument("CycNum: power-coefficient list longer than conductor");
    CycNum v(m);
    v.reduce_assign(std::move(powers));
    return v;
  }

  unsigned conductor() const { return ctx_->conductor(); }
  unsigned degree() const { return ctx_->degree(); }
  const std::vector<Rational>& coords() const { return c_; }

  bool is_zero() const {
    for (const Rational& x : c_)
      if (x != 0) return false;
    return true;
  }

  bool is_rational() const {
    for (std::size_t i = 1; i < c_.size(); ++i)
      if (c_[i] != 0) return false;
    return true;
  }

  Rational rational_value() const {
    if (!is_rational()) throw std::domain_error("CycNum: value is not rational");
    return c_[0];
  }

  bool is_integral() const {
    for (const Rational& x : c_)
      if (x.get_den() != 1) return false;
    return true;
  }

  bool operator==(const CycNum& o) const {
    return conductor() == o.conductor() && c_ == o.c_;
  }
  bool operator!=(const CycNum& o) const { return !(*this == o); }

  CycNum operator-() const {
    CycNum r = *this;
    for (Rational& x : r.c_) x = -x;
    return r;
  }

  friend CycNum operator+(const CycNum& a, const CycNum& b) {
    a.check_same(b);
    CycNum r = a;
    for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] += b.c_[i];
    return r;
  }

  friend CycNum operator-(const CycNum& a, const CycNum& b) {
    a.check_same(b);
    CycNum r = a;
    for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] -= b.c_[i];
    return r;
  }

  friend CycNum operator*(const CycNum& a, const CycNum& b) {
    a.check_same(b);
    const std::size_t d = a.c_.size();
    std::vector<Rational> prod(2 * d - 1, Rational(0));
    for (std::size_t i = 0; i < d; ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; j < d; ++j) {
        if (b.c_[j] == 0) continue;
        prod[i + j] += a.c_[i] * b.c_[j];
      }
    }
    CycNum r(a.conductor());
    r.reduce_assign(std::move(prod));
    return r;
  }

  friend CycNum operator*(const CycNum& a, const Rational& s) {
    CycNum r = a;
    for (Rational& x : r.c_) x *= s;
    return r;
  }
  friend CycNum operator*(const Rational& s, const CycNum& a) { return a * s; }

  // Exact inverse via the extended Euclidean algorithm against Phi_m
  // (irreducible over Q, so every nonzero element is invertible).
  CycNum inverse() const {
    if (is_zero()) throw std::domain_error("CycNum: inversion of zero");
    using Poly = std::vector<Rational>;
    Poly r0(c_.begin(), c_.end());
    strip(r0);
    Poly r1;
    for (const Integer& x : ctx_->polynomial()) r1.emplace_back(x);
    Poly s0{Rational(1)}, s1;  // coefficients of the original element

    while (!r1.empty()) {
      auto [quot, rem] = divmod(r0, r1);
      Poly s2 = sub(s0, mul(quot, s1));
      r0 = std::move(r1);
      r1 = std::move(rem);
      s0 = std::move(s1);
      s1 = std::move(s2);
    }
    // r0 = gcd (a nonzero constant, since Phi_m is irreducible).
    if (r0.size() != 1) throw std::logic_error("CycNum: element shares a factor with the modulus");
    Rational scale = Rational(1) / r0[0];
    std::vector<Rational> inv_coeffs;
    for (Rational& x : s0) inv_coeffs.push_back(x * scale);
    CycNum r(conductor());
    r.reduce_assign(std::move(inv_coeffs));
    return r;
  }

  // Evaluate at zeta_m = e^{2*pi*i/m} in double precision.
  std::complex<double> embed() const {
    const double ang = 2.0 * std::numbers::pi / static_cast<double>(conductor());
    const std::complex<double> z(std::cos(ang), std::sin(ang));
    std::complex<double> acc(0.0, 0.0);
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * z + c_[i].get_d();
    return acc;
  }

  // Reduction homomorphism into F_q fixed by zeta_{q-1} -> g (and compatibly
  // zeta_m -> g^{(q-1)/m} when the conductor properly divides q-1).  Requires
  // every coordinate denominator to be coprime to p.
  ff::FqElem reduce_mod_p(const ff::FqCtx& F) const {
    const u64 m = conductor();
    if ((F.q() - 1) % m != 0)
      throw std::invalid_argument("CycNum: conductor does not divide q-1");
    const u64 step = (F.q() - 1) / m;
    const arith::ModRing ring(F.p());
    ff::FqElem acc = F.zero();
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (c_[i] == 0) continue;
      const Integer& den = c_[i].get_den();
      if (mpz_divisible_ui_p(den.get_mpz_t(), static_cast<unsigned long>(F.p())))
        throw std::domain_error("CycNum: denominator not invertible mod p");
      u64 num = ring.reduce(c_[i].get_num());
      u64 dinv = ring.inv(ring.reduce(den));
      u64 scalar = ring.mul(num, dinv);
      ff::FqElem term = F.mul(F.from_int(static_cast<i64>(scalar)), F.exp(i * step));
      acc = F.add(acc, term);
    }
    return acc;
  }

  std::string to_string() const {
    if (is_rational()) return c_[0].get_str();
    std::string s = "cyc(" + std::to_string(conductor()) + "):[";
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (i) s += ",";
      s += c_[i].get_str();
    }
    return s + "]";
  }

 private:
  std::shared_ptr<const CycloCtx> ctx_;
  std::vector<Rational> c_;

  void check_same(const CycNum& o) const {
    if (conductor() != o.conductor())
      throw std::invalid_argument("CycNum: conductor mismatch");
  }

  // Reduce an arbitrary power-coefficient vector mod Phi_m into c_.
  void reduce_assign(std::vector<Rational> v) {
    const std::vector<Integer>& phi = ctx_->polynomial();
    const std::size_t d = ctx_->degree();
    for (std::size_t k = v.size(); k-- > d;) {
      Rational c = v[k];
      if (c != 0) {
        std::size_t off = k - d;
        for (std::size_t i = 0; i <= d; ++i) v[off + i] -= c * Rational(phi[i]);
      }
    }
    v.resize(std::max<std::size_t>(v.size(), d));
    c_.assign(v.begin(), v.begin() + d);
  }

  // --- small rational-polynomial helpers for the extended gcd ---------------
  using Poly = std::vector<Rational>;

  static void strip(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
  }

  static Poly sub(const Poly& a, const Poly& b) {
    Poly r = a;
    if (b.size() > r.size()) r.resize(b.size(), Rational(0));
    for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    strip(r);
    return r;
  }

  static Poly mul(const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] == 0) continue;
      for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    strip(r);
    return r;
  }

  static std::pair<Poly, Poly> divmod(Poly a, const Poly& b) {
    Poly quot(a.size() > b.size() - 1 ? a.size() - b.size() + 1 : 0, Rational(0));
    while (a.size() >= b.size() && !a.empty()) {
      Rational c = a.back() / b.back();
      std::size_t off = a.size() - b.size();
      quot[off] = c;
      for (std::size_t i = 0; i < b.size(); ++i) a[off + i] -= c * b[i];
      a.pop_back();
      strip(a);
      if (a.size() < b.size()) break;
    }
    return {std::move(quot), std::move(a)};
  }
};

}  // namespace cyclomat::cyclo
