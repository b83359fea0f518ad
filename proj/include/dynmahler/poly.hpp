#pragma once

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <utility>
#include <vector>

#include "dynmahler/types.hpp"

namespace dynmahler {

// Scalar conversions used by Poly::cast. Exact -> Complex rounds; the other
// directions are exact.
template <typename To, typename From>
To convert_scalar(const From& v) {
  if constexpr (std::is_same_v<To, From>) {
    return v;
  } else if constexpr (std::is_same_v<To, Complex>) {
    return to_complex(v);
  } else if constexpr (std::is_same_v<To, Rational> &&
                       std::is_same_v<From, BigInt>) {
    return Rational(v);
  } else {
    static_assert(sizeof(To) == 0, "unsupported scalar conversion");
  }
}

/// Dense univariate polynomial, coefficients ascending by degree.
///
/// The coefficient vector is always tight: its last entry is nonzero, or the
/// vector is empty for the zero polynomial, whose degree() is kZeroDegree.
template <typename Scalar>
class Poly {
 public:
  using Coeffs = CoeffVector<Scalar>;
  static constexpr int kZeroDegree = -1;

  Poly() = default;
  explicit Poly(Coeffs c) : coeffs_(std::move(c)) { trim(); }
  Poly(std::initializer_list<Scalar> c) : coeffs_(Eigen::Index(c.size())) {
    Eigen::Index i = 0;
    for (const auto& v : c) coeffs_(i++) = v;
    trim();
  }

  static Poly constant(const Scalar& c) {
    Coeffs v(1);
    v(0) = c;
    return Poly(std::move(v));
  }
  static Poly monomial(const Scalar& c, int k) {
    Coeffs v = Coeffs::Zero(k + 1);
    v(k) = c;
    return Poly(std::move(v));
  }
  static Poly identity() { return monomial(Scalar(1), 1); }

  int degree() const { return int(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.size() == 0; }
  const Coeffs& coeffs() const { return coeffs_; }
  Eigen::Index size() const { return coeffs_.size(); }

  Scalar operator[](int i) const {
    return (i >= 0 && i < int(coeffs_.size())) ? coeffs_(i) : Scalar(0);
  }
  Scalar leading() const {
    return is_zero() ? Scalar(0) : coeffs_(coeffs_.size() - 1);
  }

  template <typename To>
  Poly<To> cast() const {
    CoeffVector<To> out(coeffs_.size());
    for (Eigen::Index i = 0; i < coeffs_.size(); ++i)
      out(i) = convert_scalar<To>(coeffs_(i));
    return Poly<To>(std::move(out));
  }

  friend bool operator==(const Poly& a, const Poly& b) {
    if (a.coeffs_.size() != b.coeffs_.size()) return false;
    for (Eigen::Index i = 0; i < a.coeffs_.size(); ++i)
      if (!(a.coeffs_(i) == b.coeffs_(i))) return false;
    return true;
  }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

 private:
  void trim() {
    Eigen::Index n = coeffs_.size();
    while (n > 0 && dynmahler::is_zero(coeffs_(n - 1))) --n;
    if (n != coeffs_.size()) coeffs_.conservativeResize(n);
  }

  Coeffs coeffs_;
};

using ComplexPoly = Poly<Complex>;
using IntPoly = Poly<BigInt>;
using RationalPoly = Poly<Rational>;

// ---------------------------------------------------------------------------
// Ring operations

template <typename Scalar>
Poly<Scalar> operator+(const Poly<Scalar>& a, const Poly<Scalar>& b) {
  const Eigen::Index n = std::max(a.size(), b.size());
  CoeffVector<Scalar> c = CoeffVector<Scalar>::Zero(n);
  c.head(a.size()) = a.coeffs();
  c.head(b.size()) += b.coeffs();
  return Poly<Scalar>(std::move(c));
}

template <typename Scalar>
Poly<Scalar> operator-(const Poly<Scalar>& a) {
  return Poly<Scalar>(CoeffVector<Scalar>(-a.coeffs()));
}

template <typename Scalar>
Poly<Scalar> operator-(const Poly<Scalar>& a, const Poly<Scalar>& b) {
  return a + (-b);
}

template <typename Scalar>
Poly<Scalar> operator*(const Scalar& s, const Poly<Scalar>& p) {
  return Poly<Scalar>(CoeffVector<Scalar>(p.coeffs() * s));
}

template <typename Scalar>
Poly<Scalar> operator*(const Poly<Scalar>& a, const Poly<Scalar>& b) {
  if (a.is_zero() || b.is_zero()) return Poly<Scalar>();
  CoeffVector<Scalar> c = CoeffVector<Scalar>::Zero(a.size() + b.size() - 1);
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (is_zero(a.coeffs()(i))) continue;
    c.segment(i, b.size()) += b.coeffs() * a.coeffs()(i);
  }
  return Poly<Scalar>(std::move(c));
}

template <typename Scalar>
Poly<Scalar> operator+(const Poly<Scalar>& a, const Scalar& s) {
  return a + Poly<Scalar>::constant(s);
}

template <typename Scalar>
Poly<Scalar> operator-(const Poly<Scalar>& a, const Scalar& s) {
  return a - Poly<Scalar>::constant(s);
}

template <typename Scalar>
Poly<Scalar> derivative(const Poly<Scalar>& p) {
  if (p.degree() < 1) return Poly<Scalar>();
  CoeffVector<Scalar> c(p.degree());
  for (int i = 1; i <= p.degree(); ++i) c(i - 1) = p.coeffs()(i) * Scalar(i);
  return Poly<Scalar>(std::move(c));
}

/// Horner evaluation. Zero polynomial evaluates to 0.
template <typename Scalar, typename Arg>
auto eval(const Poly<Scalar>& p, const Arg& x) {
  using Out = std::conditional_t<std::is_same_v<Arg, Complex>, Complex, Scalar>;
  Out acc(0);
  for (Eigen::Index i = p.size() - 1; i >= 0; --i)
    acc = acc * x + convert_scalar<Out>(p.coeffs()(i));
  return acc;
}

/// p∘q by Horner's scheme over the coefficients of p.
template <typename Scalar>
Poly<Scalar> compose(const Poly<Scalar>& p, const Poly<Scalar>& q) {
  Poly<Scalar> acc;
  for (Eigen::Index i = p.size() - 1; i >= 0; --i)
    acc = acc * q + Poly<Scalar>::constant(p.coeffs()(i));
  return acc;
}

inline constexpr std::int64_t kDefaultIterateCap = std::int64_t(1) << 20;

/// f^n, with f^0 the identity. Throws CapExceeded when d^n + 1 coefficients
/// would exceed `max_coeffs`.
template <typename Scalar>
Poly<Scalar> iterate(const Poly<Scalar>& f, int n,
                     std::int64_t max_coeffs = kDefaultIterateCap) {
  if (n < 0) throw InputError("iterate: negative iteration count");
  if (f.degree() >= 2) {
    std::int64_t deg = 1;
    for (int k = 0; k < n; ++k) {
      deg *= f.degree();
      if (deg + 1 > max_coeffs)
        throw CapExceeded("iterate: degree of f^" + std::to_string(n) +
                          " exceeds the coefficient cap");
    }
  }
  Poly<Scalar> acc = Poly<Scalar>::identity();
  for (int k = 0; k < n; ++k) acc = compose(f, acc);
  return acc;
}

/// The conjugate φ⁻¹∘f∘φ for φ(z) = a z + b.
template <typename Scalar>
Poly<Scalar> affine_conjugate(const Poly<Scalar>& f, const Scalar& a,
                              const Scalar& b) {
  if (is_zero(a)) throw InputError("affine_conjugate: a must be nonzero");
  CoeffVector<Scalar> lin(2);
  lin << b, a;
  const Poly<Scalar> phi(std::move(lin));
  Poly<Scalar> inner = compose(f, phi) - b;
  const Scalar inv = Scalar(1) / a;
  return inv * inner;
}

/// Normalized Chebyshev polynomial, T_d(z + 1/z) = z^d + z^-d.
IntPoly chebyshev(int d);

/// Largest coefficient magnitude; 0 for the zero polynomial.
template <typename Scalar>
double max_abs_coeff(const Poly<Scalar>& p) {
  double m = 0.0;
  for (Eigen::Index i = 0; i < p.size(); ++i)
    m = std::max(m, magnitude(p.coeffs()(i)));
  return m;
}

/// Drops trailing coefficients whose magnitude is at most `rel_tol` times the
/// largest one. Floating-point composition can leave such residue.
ComplexPoly trimmed(const ComplexPoly& p, double rel_tol = 1e-14);

/// Index of the lowest nonzero coefficient; throws on the zero polynomial.
template <typename Scalar>
int lowest_nonzero_index(const Poly<Scalar>& p) {
  for (Eigen::Index i = 0; i < p.size(); ++i)
    if (!is_zero(p.coeffs()(i))) return int(i);
  throw InputError("lowest_nonzero_index: zero polynomial");
}

}  // namespace dynmahler
