#pragma once

#include "dynmahler/poly.hpp"

namespace dynmahler {

/// Dense bivariate polynomial; coeff(i, j) multiplies x^i y^j.
///
/// Degrees are tight: row degx() and column degy() each hold a nonzero
/// entry. The zero polynomial has an empty matrix and degx() == degy() == -1.
template <typename Scalar>
class BivarPoly {
 public:
  using Matrix = CoeffMatrix<Scalar>;

  BivarPoly() = default;
  explicit BivarPoly(Matrix c) : coeffs_(std::move(c)) { trim(); }

  /// p(x) viewed as a polynomial in (x, y).
  static BivarPoly in_x(const Poly<Scalar>& p) {
    Matrix m = Matrix::Zero(p.size(), p.size() ? 1 : 0);
    if (p.size()) m.col(0) = p.coeffs();
    return BivarPoly(std::move(m));
  }
  /// p(y) viewed as a polynomial in (x, y).
  static BivarPoly in_y(const Poly<Scalar>& p) {
    Matrix m = Matrix::Zero(p.size() ? 1 : 0, p.size());
    if (p.size()) m.row(0) = p.coeffs().transpose();
    return BivarPoly(std::move(m));
  }

  int degx() const { return int(coeffs_.rows()) - 1; }
  int degy() const { return int(coeffs_.cols()) - 1; }
  bool is_zero() const { return coeffs_.size() == 0; }
  const Matrix& coeffs() const { return coeffs_; }

  Scalar operator()(int i, int j) const {
    if (i < 0 || j < 0 || i > degx() || j > degy()) return Scalar(0);
    return coeffs_(i, j);
  }

  /// Coefficient of x^i as a polynomial in y.
  Poly<Scalar> x_coefficient(int i) const {
    if (i < 0 || i > degx()) return Poly<Scalar>();
    return Poly<Scalar>(CoeffVector<Scalar>(coeffs_.row(i).transpose()));
  }
  /// Coefficient of y^j as a polynomial in x.
  Poly<Scalar> y_coefficient(int j) const {
    if (j < 0 || j > degy()) return Poly<Scalar>();
    return Poly<Scalar>(CoeffVector<Scalar>(coeffs_.col(j)));
  }

  template <typename To>
  BivarPoly<To> cast() const {
    CoeffMatrix<To> out(coeffs_.rows(), coeffs_.cols());
    for (Eigen::Index i = 0; i < coeffs_.rows(); ++i)
      for (Eigen::Index j = 0; j < coeffs_.cols(); ++j)
        out(i, j) = convert_scalar<To>(coeffs_(i, j));
    return BivarPoly<To>(std::move(out));
  }

  friend bool operator==(const BivarPoly& a, const BivarPoly& b) {
    if (a.coeffs_.rows() != b.coeffs_.rows() ||
        a.coeffs_.cols() != b.coeffs_.cols())
      return false;
    for (Eigen::Index i = 0; i < a.coeffs_.rows(); ++i)
      for (Eigen::Index j = 0; j < a.coeffs_.cols(); ++j)
        if (!(a.coeffs_(i, j) == b.coeffs_(i, j))) return false;
    return true;
  }

 private:
  bool row_is_zero(Eigen::Index i) const {
    for (Eigen::Index j = 0; j < coeffs_.cols(); ++j)
      if (!dynmahler::is_zero(coeffs_(i, j))) return false;
    return true;
  }
  bool col_is_zero(Eigen::Index j) const {
    for (Eigen::Index i = 0; i < coeffs_.rows(); ++i)
      if (!dynmahler::is_zero(coeffs_(i, j))) return false;
    return true;
  }
  void trim() {
    Eigen::Index r = coeffs_.rows();
    while (r > 0 && row_is_zero(r - 1)) --r;
    Eigen::Index c = coeffs_.cols();
    while (c > 0 && col_is_zero(c - 1)) --c;
    if (r == 0 || c == 0) {
      coeffs_.resize(0, 0);
      return;
    }
    if (r != coeffs_.rows() || c != coeffs_.cols()) {
      Matrix tight(r, c);
      for (Eigen::Index i = 0; i < r; ++i)
        for (Eigen::Index j = 0; j < c; ++j) tight(i, j) = coeffs_(i, j);
      coeffs_.swap(tight);
    }
  }

  Matrix coeffs_;
};

using IntBivarPoly = BivarPoly<BigInt>;
using ComplexBivarPoly = BivarPoly<Complex>;

template <typename Scalar>
BivarPoly<Scalar> operator+(const BivarPoly<Scalar>& a,
                            const BivarPoly<Scalar>& b) {
  const Eigen::Index r = std::max(a.coeffs().rows(), b.coeffs().rows());
  const Eigen::Index c = std::max(a.coeffs().cols(), b.coeffs().cols());
  CoeffMatrix<Scalar> m(r, c);
  for (Eigen::Index i = 0; i < r; ++i)
    for (Eigen::Index j = 0; j < c; ++j) m(i, j) = a(int(i), int(j)) + b(int(i), int(j));
  return BivarPoly<Scalar>(std::move(m));
}

template <typename Scalar>
BivarPoly<Scalar> operator-(const BivarPoly<Scalar>& a) {
  CoeffMatrix<Scalar> m(a.coeffs().rows(), a.coeffs().cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = -a.coeffs()(i, j);
  return BivarPoly<Scalar>(std::move(m));
}

template <typename Scalar>
BivarPoly<Scalar> operator-(const BivarPoly<Scalar>& a,
                            const BivarPoly<Scalar>& b) {
  return a + (-b);
}

template <typename Scalar>
BivarPoly<Scalar> operator*(const BivarPoly<Scalar>& a,
                            const BivarPoly<Scalar>& b) {
  if (a.is_zero() || b.is_zero()) return BivarPoly<Scalar>();
  const Eigen::Index br = b.coeffs().rows(), bc = b.coeffs().cols();
  CoeffMatrix<Scalar> m(a.coeffs().rows() + br - 1, a.coeffs().cols() + bc - 1);
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = Scalar(0);
  for (Eigen::Index i = 0; i < a.coeffs().rows(); ++i)
    for (Eigen::Index j = 0; j < a.coeffs().cols(); ++j) {
      const Scalar& s = a.coeffs()(i, j);
      if (is_zero(s)) continue;
      for (Eigen::Index k = 0; k < br; ++k)
        for (Eigen::Index l = 0; l < bc; ++l) m(i + k, j + l) += s * b.coeffs()(k, l);
    }
  return BivarPoly<Scalar>(std::move(m));
}

/// P(x, y) at a point.
template <typename Scalar, typename Arg>
auto eval(const BivarPoly<Scalar>& p, const Arg& x, const Arg& y) {
  using Out = std::conditional_t<std::is_same_v<Arg, Complex>, Complex, Scalar>;
  Out acc(0);
  for (int i = p.degx(); i >= 0; --i) acc = acc * x + eval(p.x_coefficient(i), y);
  return acc;
}

/// P(·, y) as a complex polynomial in x. Not trimmed beyond exact zeros.
template <typename Scalar>
ComplexPoly x_poly_at(const BivarPoly<Scalar>& p, const Complex& y) {
  CoeffVector<Complex> c(p.degx() + 1);
  for (int i = 0; i <= p.degx(); ++i) c(i) = eval(p.x_coefficient(i), y);
  return ComplexPoly(std::move(c));
}

/// The one-variable specialization P(x, q(x)).
template <typename Scalar>
Poly<Scalar> specialize_y(const BivarPoly<Scalar>& p, const Poly<Scalar>& q) {
  Poly<Scalar> acc;
  for (int j = p.degy(); j >= 0; --j) acc = acc * q + p.y_coefficient(j);
  return acc;
}

/// P(x + a, y + a).
template <typename Scalar>
BivarPoly<Scalar> translate(const BivarPoly<Scalar>& p, const Scalar& a) {
  CoeffVector<Scalar> lin(2);
  lin << a, Scalar(1);
  const Poly<Scalar> shift(std::move(lin));
  // Expand y first: Q(x, y) = Σ_j P_j(x + a) (y + a)^j.
  BivarPoly<Scalar> acc;
  const BivarPoly<Scalar> y_shift = BivarPoly<Scalar>::in_y(shift);
  for (int j = p.degy(); j >= 0; --j) {
    const Poly<Scalar> col = compose(p.y_coefficient(j), shift);
    acc = acc * y_shift + BivarPoly<Scalar>::in_x(col);
  }
  return acc;
}

}  // namespace dynmahler
