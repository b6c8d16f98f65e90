#pragma once

// Dense matrices over the domains used by the determinant identities
// (prime-field residues, F_q elements, arbitrary-precision integers, exact
// rationals, complex doubles), the specific matrix builders (square-power
// matrices B_q(m), character matrices D_q^+-, C_p^+-, Legendre-symbol
// matrices, sum-of-two-squares power matrices), three independent determinant
// engines (modular Gaussian elimination, fraction-free Bareiss elimination,
// complex LU with partial pivoting), and the closed-form determinant
// formulas: the rank-one-kernel formula for det [h(x_i + y_j)], the
// power-matrix formula for det [(x_i + y_j)^l], and the circulant /
// almost-circulant eigenvalue formulas.

#include "cyclomat/arith.hpp"
#include "cyclomat/chars.hpp"
#include "cyclomat/cyclo.hpp"
#include "cyclomat/ff.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

namespace cyclomat::linalg {

using arith::Integer;
using arith::ModRing;
using arith::Rational;
using arith::u64;
using chars::CharSpec;
using cyclo::CycNum;
using ff::FqCtx;
using ff::FqElem;

using Complex = std::complex<double>;

// ---------------------------------------------------------------------------
// Matrix container (row-major, rectangular, homogeneous domain).
// ---------------------------------------------------------------------------

template <typename T>
class Matrix {
 public:
  Matrix() : rows_(0), cols_(0) {}
  Matrix(std::size_t rows, std::size_t cols, const T& init = T{})
      : rows_(rows), cols_(cols), data_(rows * cols, init) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  const std::vector<T>& data() const { return data_; }

 private:
  std::size_t rows_, cols_;
  std::vector<T> data_;
};

namespace detail {
inline void require_square(std::size_t rows, std::size_t cols) {
  if (rows != cols) throw std::invalid_argument("determinant: matrix must be square");
}
}  // namespace detail

// ---------------------------------------------------------------------------
// Builders.
// ---------------------------------------------------------------------------

enum class MatrixSign { plus, minus };

// B_q(m) = [(s_i + s_j)^m] for 2 <= i, j <= n, where s_1, ..., s_n are the
// nonzero squares in generator-power order; an (n-1) x (n-1) matrix.
inline Matrix<FqElem> build_bq(const FqCtx& F, u64 m) {
  if (F.q() < 7) throw std::invalid_argument("build_bq: requires q >= 7");
  if (m > F.q() - 1) throw std::invalid_argument("build_bq: exponent exceeds q - 1");
  std::vector<FqElem> s = F.nonzero_squares();
  const std::size_t dim = s.size() - 1;  // drop s_1 = 1
  Matrix<FqElem> M(dim, dim, F.zero());
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j)
      M(i, j) = F.pow(F.add(s[i + 1], s[j + 1]), m);
  return M;
}

// D_q^-(psi) = [psi(x_j - x_i)] and D_q^+(psi) = [psi(x_j + x_i)] for
// 2 <= i, j <= q-1, with x_i = g^{i-1}; a (q-2) x (q-2) matrix.
inline Matrix<CycNum> build_dq(const FqCtx& F, const CharSpec& psi, MatrixSign sign) {
  if (psi.F != &F) throw std::invalid_argument("build_dq: character field mismatch");
  if (psi.is_trivial()) throw std::invalid_argument("build_dq: character must be nontrivial");
  const std::size_t dim = F.q() - 2;
  const unsigned m = static_cast<unsigned>(F.q() - 1);
  Matrix<CycNum> M(dim, dim, CycNum::zero(m));
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) {
      FqElem xi = F.exp(i + 1), xj = F.exp(j + 1);
      FqElem arg = sign == MatrixSign::minus ? F.sub(xj, xi) : F.add(xj, xi);
      M(i, j) = chars::char_value(psi, arg);
    }
  return M;
}

// C_p^-(psi) = [psi(j - i)] and C_p^+(psi) = [psi(j + i)] for
// 1 <= i, j <= p-1, over a prime field.
inline Matrix<CycNum> build_carlitz(u64 p, const CharSpec& psi, MatrixSign sign) {
  if (psi.F->p() != p || psi.F->f() != 1)
    throw std::invalid_argument("build_carlitz: requires the prime field F_p");
  if (psi.is_trivial()) throw std::invalid_argument("build_carlitz: character must be nontrivial");
  const FqCtx& F = *psi.F;
  const std::size_t dim = p - 1;
  const unsigned m = static_cast<unsigned>(p - 1);
  Matrix<CycNum> M(dim, dim, CycNum::zero(m));
  for (std::size_t i = 1; i <= dim; ++i)
    for (std::size_t j = 1; j <= dim; ++j) {
      arith::i64 t = sign == MatrixSign::minus ? static_cast<arith::i64>(j) - static_cast<arith::i64>(i)
                                               : static_cast<arith::i64>(j) + static_cast<arith::i64>(i);
      M(i - 1, j - 1) = chars::char_value(psi, F.from_int(t));
    }
  return M;
}

// Legendre-symbol matrices [( (i+j) / p )]: variant 0 indexes 0..(p-1)/2,
// variant 1 indexes 1..(p-1)/2.
inline Matrix<Integer> build_chapman(u64 p, int variant) {
  arith::require_odd_prime(p, "build_chapman");
  if (variant != 0 && variant != 1) throw std::invalid_argument("build_chapman: variant must be 0 or 1");
  const std::size_t lo = variant == 0 ? 0 : 1;
  const std::size_t hi = (p - 1) / 2;
  const std::size_t dim = hi - lo + 1;
  Matrix<Integer> M(dim, dim, Integer(0));
  for (std::size_t i = lo; i <= hi; ++i)
    for (std::size_t j = lo; j <= hi; ++j)
      M(i - lo, j - lo) = arith::legendre(static_cast<arith::i64>(i + j), p);
  return M;
}

// S_p(m) = [(i^2 + j^2)^m mod p] for 1 <= i, j <= (p-1)/2.
inline Matrix<u64> build_sun(u64 p, u64 m) {
  arith::require_odd_prime(p, "build_sun");
  ModRing R(p);
  const std::size_t dim = (p - 1) / 2;
  Matrix<u64> M(dim, dim, 0);
  for (std::size_t i = 1; i <= dim; ++i)
    for (std::size_t j = 1; j <= dim; ++j)
      M(i - 1, j - 1) = R.pow(R.add(R.mul(i, i), R.mul(j, j)), m);
  return M;
}

// ---------------------------------------------------------------------------
// Entry-domain conversions.
// ---------------------------------------------------------------------------

inline Matrix<Integer> cyc_matrix_to_integer(const Matrix<CycNum>& M) {
  Matrix<Integer> R(M.rows(), M.cols(), Integer(0));
  for (std::size_t i = 0; i < M.rows(); ++i)
    for (std::size_t j = 0; j < M.cols(); ++j) {
      const Rational v = M(i, j).rational_value();
      if (v.get_den() != 1)
        throw std::domain_error("cyc_matrix_to_integer: entry is not an integer");
      R(i, j) = v.get_num();
    }
  return R;
}

inline Matrix<Complex> cyc_matrix_embed(const Matrix<CycNum>& M) {
  Matrix<Complex> R(M.rows(), M.cols());
  for (std::size_t i = 0; i < M.rows(); ++i)
    for (std::size_t j = 0; j < M.cols(); ++j) R(i, j) = M(i, j).embed();
  return R;
}

inline Matrix<u64> integer_matrix_mod(const Matrix<Integer>& M, const ModRing& R) {
  Matrix<u64> out(M.rows(), M.cols(), 0);
  for (std::size_t i = 0; i < M.rows(); ++i)
    for (std::size_t j = 0; j < M.cols(); ++j) out(i, j) = R.reduce(M(i, j));
  return out;
}

// ---------------------------------------------------------------------------
// Determinant engines.
// ---------------------------------------------------------------------------

// Gaussian elimination over F_q (exact; singular -> 0).
inline FqElem det_mod_p(Matrix<FqElem> M, const FqCtx& F) {
  detail::require_square(M.rows(), M.cols());
  const std::size_t n = M.rows();
  FqElem det = F.one();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    while (pivot < n && F.is_zero(M(pivot, k))) ++pivot;
    if (pivot == n) return F.zero();
    if (pivot != k) {
      for (std::size_t j = k; j < n; ++j) std::swap(M(pivot, j), M(k, j));
      det = F.neg(det);
    }
    det = F.mul(det, M(k, k));
    FqElem inv = F.inv(M(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      if (F.is_zero(M(i, k))) continue;
      FqElem factor = F.mul(M(i, k), inv);
      for (std::size_t j = k; j < n; ++j)
        M(i, j) = F.sub(M(i, j), F.mul(factor, M(k, j)));
    }
  }
  return det;
}

// Gaussian elimination over Z/p (prime modulus; singular -> 0).
inline u64 det_mod_p(Matrix<u64> M, const ModRing& R) {
  detail::require_square(M.rows(), M.cols());
  const std::size_t n = M.rows();
  u64 det = 1;
  bool negate = false;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    while (pivot < n && M(pivot, k) == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != k) {
      for (std::size_t j = k; j < n; ++j) std::swap(M(pivot, j), M(k, j));
      negate = !negate;
    }
    det = R.mul(det, M(k, k));
    u64 inv = R.inv(M(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      if (M(i, k) == 0) continue;
      u64 factor = R.mul(M(i, k), inv);
      for (std::size_t j = k; j < n; ++j)
        M(i, j) = R.sub(M(i, j), R.mul(factor, M(k, j)));
    }
  }
  return negate ? R.neg(det) : det;
}

// Fraction-free (Bareiss) elimination over arbitrary-precision integers.
inline Integer det_exact(Matrix<Integer> M) {
  detail::require_square(M.rows(), M.cols());
  const std::size_t n = M.rows();
  if (n == 0) return Integer(1);
  Integer prev(1);
  bool negate = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (M(k, k) == 0) {
      std::size_t pivot = k + 1;
      while (pivot < n && M(pivot, k) == 0) ++pivot;
      if (pivot == n) return Integer(0);
      for (std::size_t j = k; j < n; ++j) std::swap(M(pivot, j), M(k, j));
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer num = M(i, j) * M(k, k) - M(i, k) * M(k, j);
        mpz_divexact(M(i, j).get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
      }
      M(i, k) = 0;
    }
    prev = M(k, k);
  }
  return negate ? Integer(-M(n - 1, n - 1)) : M(n - 1, n - 1);
}

// Complex LU with partial (max-magnitude) pivoting.  Exact-zero claims never
// come from this engine: results below the entry-scale threshold are flagged
// numerically singular instead.
struct ComplexDet {
  Complex value;
  bool numerically_singular;
};

inline ComplexDet det_complex_lu(Matrix<Complex> M) {
  detail::require_square(M.rows(), M.cols());
  const std::size_t n = M.rows();
  double norm = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) norm = std::max(norm, std::abs(M(i, j)));
  Complex det(1.0, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    double best = std::abs(M(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      double mag = std::abs(M(i, k));
      if (mag > best) {
        best = mag;
        pivot = i;
      }
    }
    if (best == 0.0) return ComplexDet{Complex(0.0, 0.0), true};
    if (pivot != k) {
      for (std::size_t j = k; j < n; ++j) std::swap(M(pivot, j), M(k, j));
      det = -det;
    }
    det *= M(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      Complex factor = M(i, k) / M(k, k);
      for (std::size_t j = k; j < n; ++j) M(i, j) -= factor * M(k, j);
    }
  }
  double threshold = 1e-6 * std::pow(std::max(norm, 1.0), static_cast<double>(n));
  return ComplexDet{det, std::abs(det) < threshold};
}

// ---------------------------------------------------------------------------
// Entry domains for the closed-form determinant formulas.
// ---------------------------------------------------------------------------

struct IntegerDomain {
  using Elem = Integer;
  Elem add(const Elem& a, const Elem& b) const { return a + b; }
  Elem sub(const Elem& a, const Elem& b) const { return a - b; }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  Elem from_integer(const Integer& v) const { return v; }
};

struct RationalDomain {
  using Elem = Rational;
  Elem add(const Elem& a, const Elem& b) const { return a + b; }
  Elem sub(const Elem& a, const Elem& b) const { return a - b; }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  Elem from_integer(const Integer& v) const { return Rational(v); }
};

struct ModPDomain {
  ModRing ring;
  using Elem = u64;
  Elem add(Elem a, Elem b) const { return ring.add(a, b); }
  Elem sub(Elem a, Elem b) const { return ring.sub(a, b); }
  Elem mul(Elem a, Elem b) const { return ring.mul(a, b); }
  Elem from_integer(const Integer& v) const { return ring.reduce(v); }
};

struct FqDomain {
  const FqCtx* F;
  using Elem = FqElem;
  Elem add(const Elem& a, const Elem& b) const { return F->add(a, b); }
  Elem sub(const Elem& a, const Elem& b) const { return F->sub(a, b); }
  Elem mul(const Elem& a, const Elem& b) const { return F->mul(a, b); }
  Elem from_integer(const Integer& v) const {
    ModRing R(F->p());
    return F->from_int(static_cast<arith::i64>(R.reduce(v)));
  }
};

namespace detail {

// All elementary symmetric polynomials sigma_0..sigma_n of xs, by the
// one-pass product expansion.
template <class D>
std::vector<typename D::Elem> elementary_symmetric_all(const D& d,
                                                       const std::vector<typename D::Elem>& xs) {
  using E = typename D::Elem;
  std::vector<E> sigma;
  sigma.reserve(xs.size() + 1);
  sigma.push_back(d.from_integer(Integer(1)));
  for (const E& x : xs) {
    sigma.push_back(d.mul(sigma.back(), x));
    for (std::size_t k = sigma.size() - 2; k >= 1; --k)
      sigma[k] = d.add(sigma[k], d.mul(sigma[k - 1], x));
  }
  return sigma;
}

template <class D>
typename D::Elem difference_product(const D& d, const std::vector<typename D::Elem>& x,
                                    const std::vector<typename D::Elem>& y, bool x_forward) {
  // prod_{i<j} (x_i - x_j)(y_j - y_i) when x_forward, else
  // prod_{i<j} (x_j - x_i)(y_j - y_i).
  typename D::Elem acc = d.from_integer(Integer(1));
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = i + 1; j < x.size(); ++j) {
      acc = d.mul(acc, x_forward ? d.sub(x[i], x[j]) : d.sub(x[j], x[i]));
      acc = d.mul(acc, d.sub(y[j], y[i]));
    }
  return acc;
}

}  // namespace detail

// det [h(x_i + y_j)]_{1<=i,j<=m} for deg h <= m-1, via the rank-one-kernel
// closed form a_{m-1}^m * prod_r binom(m-1, r) * prod_{i<j} (x_i - x_j)(y_j - y_i).
template <class D>
typename D::Elem det_linear_kernel_formula(const D& d, const std::vector<typename D::Elem>& x,
                                           const std::vector<typename D::Elem>& y,
                                           const std::vector<typename D::Elem>& h_coeffs) {
  if (x.size() != y.size() || x.size() != h_coeffs.size())
    throw std::invalid_argument("det_linear_kernel_formula: x, y, h_coeffs must share length m");
  const std::size_t m = x.size();
  if (m == 0) throw std::invalid_argument("det_linear_kernel_formula: empty input");
  using E = typename D::Elem;
  E lead = h_coeffs[m - 1];
  E acc = lead;
  for (std::size_t i = 1; i < m; ++i) acc = d.mul(acc, lead);
  for (std::size_t r = 0; r + 1 < m; ++r)
    acc = d.mul(acc, d.from_integer(arith::binom_exact(m - 1, r)));
  // r = m-1 contributes binom(m-1, m-1) = 1.
  return d.mul(acc, detail::difference_product(d, x, y, /*x_forward=*/true));
}

// det [(x_i + y_j)^l]_{1<=i,j<=l}: the power-matrix closed form
// (-1)^{l(l-1)/2} * prod_{i<j} (x_j - x_i)(y_j - y_i) * sum_k U_k with
// U_k = sigma_k(x) sigma_{l-k}(y) prod_{r != k} binom(l, r).
template <class D>
typename D::Elem det_gsz(const D& d, const std::vector<typename D::Elem>& x,
                         const std::vector<typename D::Elem>& y) {
  if (x.size() != y.size()) throw std::invalid_argument("det_gsz: x and y must share length");
  const std::size_t l = x.size();
  if (l == 0) throw std::invalid_argument("det_gsz: empty input");
  using E = typename D::Elem;
  std::vector<E> sx = detail::elementary_symmetric_all(d, x);
  std::vector<E> sy = detail::elementary_symmetric_all(d, y);
  std::vector<Integer> binoms(l + 1);
  for (std::size_t r = 0; r <= l; ++r) binoms[r] = arith::binom_exact(l, r);
  E total = d.from_integer(Integer(0));
  for (std::size_t k = 0; k <= l; ++k) {
    Integer prod(1);
    for (std::size_t r = 0; r <= l; ++r)
      if (r != k) prod *= binoms[r];
    E term = d.mul(sx[k], sy[l - k]);
    total = d.add(total, d.mul(term, d.from_integer(prod)));
  }
  Integer sign = (l * (l - 1) / 2) % 2 == 0 ? Integer(1) : Integer(-1);
  E acc = d.mul(d.from_integer(sign), detail::difference_product(d, x, y, /*x_forward=*/false));
  return d.mul(acc, total);
}

// ---------------------------------------------------------------------------
// Circulant and almost-circulant determinants.
// ---------------------------------------------------------------------------

struct CirculantSpec {
  std::size_t n;
  std::vector<Complex> v;  // (a_0, ..., a_{n-1})
};

inline void validate(const CirculantSpec& spec) {
  if (spec.n < 2) throw std::invalid_argument("CirculantSpec: requires n >= 2");
  if (spec.v.size() != spec.n) throw std::invalid_argument("CirculantSpec: vector length must equal n");
}

// C_n(v) = [a_{(j-i) mod n}]_{0<=i,j<=n-1}.
inline Matrix<Complex> circulant_matrix(const CirculantSpec& spec) {
  validate(spec);
  Matrix<Complex> M(spec.n, spec.n);
  for (std::size_t i = 0; i < spec.n; ++i)
    for (std::size_t j = 0; j < spec.n; ++j) M(i, j) = spec.v[(j + spec.n - i) % spec.n];
  return M;
}

// W_n(v): C_n(v) with the first row and column deleted.
inline Matrix<Complex> almost_circulant_minor(const CirculantSpec& spec) {
  validate(spec);
  Matrix<Complex> M(spec.n - 1, spec.n - 1);
  for (std::size_t i = 1; i < spec.n; ++i)
    for (std::size_t j = 1; j < spec.n; ++j) M(i - 1, j - 1) = spec.v[(j + spec.n - i) % spec.n];
  return M;
}

// lambda_l = sum_j a_j rho^{lj}, rho = e^{2 pi i / n}.
inline std::vector<Complex> circulant_eigenvalues(const CirculantSpec& spec) {
  validate(spec);
  std::vector<Complex> eigs(spec.n);
  const double two_pi = 2.0 * std::numbers::pi;
  for (std::size_t l = 0; l < spec.n; ++l) {
    Complex s(0.0, 0.0);
    for (std::size_t j = 0; j < spec.n; ++j) {
      double ang = two_pi * static_cast<double>(l * j % spec.n) / static_cast<double>(spec.n);
      s += spec.v[j] * Complex(std::cos(ang), std::sin(ang));
    }
    eigs[l] = s;
  }
  return eigs;
}

// det C_n = prod_l lambda_l and det W_n = (1/n) sum_l prod_{k != l} lambda_k.
// Eigenvalues may be supplied externally; an empty list means "compute from v".
struct CirculantDets {
  Complex det_cn;
  Complex det_wn;
};

inline CirculantDets circulant_eigen_det(const CirculantSpec& spec, std::vector<Complex> eigs = {}) {
  validate(spec);
  if (eigs.empty()) eigs = circulant_eigenvalues(spec);
  if (eigs.size() != spec.n)
    throw std::invalid_argument("circulant_eigen_det: eigenvalue count must equal n");
  Complex det_cn(1.0, 0.0);
  for (const Complex& lam : eigs) det_cn *= lam;
  Complex det_wn(0.0, 0.0);
  for (std::size_t l = 0; l < spec.n; ++l) {
    Complex prod(1.0, 0.0);
    for (std::size_t k = 0; k < spec.n; ++k)
      if (k != l) prod *= eigs[k];
    det_wn += prod;
  }
  det_wn /= static_cast<double>(spec.n);
  return CirculantDets{det_cn, det_wn};
}

}  // namespace cyclomat::linalg
