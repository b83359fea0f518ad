#pragma once

// Reference computations used only by the tests. Each one reaches its answer
// by a route that shares no code with the library routine it checks.

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "dynmahler/poly.hpp"

namespace oracle {

using dynmahler::BigInt;
using dynmahler::Complex;
using dynmahler::ComplexPoly;
using dynmahler::IntPoly;

/// Eigenvalues of the companion matrix of p.
inline std::vector<Complex> companion_roots(const ComplexPoly& p) {
  const int n = p.degree();
  Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 1; i < n; ++i) c(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) c(i, n - 1) = -p[i] / p.leading();
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(c, false);
  const auto ev = solver.eigenvalues();
  return std::vector<Complex>(ev.data(), ev.data() + ev.size());
}

/// Largest distance from an element of `a` to its greedy partner in `b`.
inline double multiset_distance(std::vector<Complex> a, std::vector<Complex> b) {
  if (a.size() != b.size()) return INFINITY;
  double worst = 0.0;
  for (const Complex& x : a) {
    auto best = std::min_element(b.begin(), b.end(), [&](const Complex& u, const Complex& v) {
      return std::abs(u - x) < std::abs(v - x);
    });
    worst = std::max(worst, std::abs(*best - x));
    b.erase(best);
  }
  return worst;
}

/// Determinant of an integer matrix by Bareiss fraction-free elimination.
inline BigInt bareiss_det(std::vector<std::vector<BigInt>> m) {
  const std::size_t n = m.size();
  BigInt sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t swap = k + 1;
      while (swap < n && m[swap][k] == 0) ++swap;
      if (swap == n) return 0;
      std::swap(m[k], m[swap]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

/// Res(p, q) as the determinant of the Sylvester matrix.
inline BigInt sylvester_resultant(const IntPoly& p, const IntPoly& q) {
  const int m = p.degree(), n = q.degree();
  const int size = m + n;
  std::vector<std::vector<BigInt>> s(size, std::vector<BigInt>(size, 0));
  for (int r = 0; r < n; ++r)
    for (int i = 0; i <= m; ++i) s[r][r + i] = p[m - i];
  for (int r = 0; r < m; ++r)
    for (int i = 0; i <= n; ++i) s[n + r][r + i] = q[n - i];
  return bareiss_det(std::move(s));
}

/// Full composition by expanding powers of q explicitly.
template <typename Scalar>
dynmahler::Poly<Scalar> expand_compose(const dynmahler::Poly<Scalar>& p,
                                       const dynmahler::Poly<Scalar>& q) {
  using P = dynmahler::Poly<Scalar>;
  P acc;
  P power = P::constant(Scalar(1));
  for (int i = 0; i <= p.degree(); ++i) {
    acc = acc + p[i] * power;
    power = power * q;
  }
  return acc;
}

/// L(χ₋₃, 2) = Σ χ₋₃(n)/n², paired as 1/(3k+1)² − 1/(3k+2)².
inline double l_chi3_at_2() {
  double sum = 0.0;
  for (long k = 2000000; k >= 0; --k) {
    const double a = 3.0 * k + 1.0, b = 3.0 * k + 2.0;
    sum += 1.0 / (a * a) - 1.0 / (b * b);
  }
  return sum;
}

/// m(1 + x + y) = 3√3/(4π) · L(χ₋₃, 2).
inline double smyth_value() { return 3.0 * std::sqrt(3.0) / (4.0 * M_PI) * l_chi3_at_2(); }

/// ∫ z² dz / (π √(4 − z²)) over [−2, 2] by the midpoint rule in z = 2 sin θ.
inline double arcsine_second_moment() {
  const int n = 200000;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const double theta = -M_PI / 2 + (i + 0.5) * M_PI / n;
    const double z = 2.0 * std::sin(theta);
    sum += z * z;
  }
  return sum / n;
}

/// Root of a real function on [lo, hi] with a sign change.
inline double bisect(const std::function<double(double)>& g, double lo, double hi) {
  double glo = g(lo);
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double gm = g(mid);
    if ((gm < 0) == (glo < 0)) {
      lo = mid;
      glo = gm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

/// Largest real root of the Lehmer polynomial, located by bisection.
inline double lehmer_root() {
  return bisect(
      [](double x) {
        const double c[] = {1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1};
        double acc = 0.0;
        for (int i = 10; i >= 0; --i) acc = acc * x + c[i];
        return acc;
      },
      1.1, 1.3);
}

/// Asymptotic expansion of m_f(x) for f = z² + c, truncated after c^{-6}.
inline double ingram_series(double c) {
  return std::log(std::abs(c)) / 2 + 1 / (4 * c) - 1 / (8 * c * c) + 5 / (24 * std::pow(c, 3)) -
         5 / (16 * std::pow(c, 4)) + 17 / (40 * std::pow(c, 5)) - 29 / (48 * std::pow(c, 6));
}

/// Random integer polynomial with coefficients in [−bound, bound] and a
/// nonzero leading coefficient.
inline IntPoly random_int_poly(std::mt19937_64& rng, int degree, int bound) {
  std::uniform_int_distribution<int> coeff(-bound, bound);
  dynmahler::CoeffVector<BigInt> c(degree + 1);
  for (int i = 0; i <= degree; ++i) c(i) = coeff(rng);
  while (c(degree) == 0) c(degree) = coeff(rng);
  return IntPoly(std::move(c));
}

inline ComplexPoly random_complex_poly(std::mt19937_64& rng, int degree) {
  std::normal_distribution<double> g(0.0, 1.0);
  dynmahler::CoeffVector<Complex> c(degree + 1);
  for (int i = 0; i <= degree; ++i) c(i) = Complex(g(rng), g(rng));
  return ComplexPoly(std::move(c));
}

inline double max_coeff_diff(const ComplexPoly& a, const ComplexPoly& b) {
  double worst = 0.0;
  for (int i = 0; i <= std::max(a.degree(), b.degree()); ++i)
    worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

}  // namespace oracle
