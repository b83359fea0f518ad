#pragma once

#include <vector>

#include "dynmahler/poly.hpp"

namespace dynmahler {

struct RootOptions {
  // Accepted backward error |p(z)| / Σ|a_i||z|^i. Raised internally to
  // 8(n+1)ε for degree n, the floor of Horner's rounding error.
  double tol = 1e-12;
  int max_iterations = 1000;
};

class RootFindingError : public NumericalError {
 public:
  RootFindingError(const std::string& what, double worst)
      : NumericalError(what), worst_residual_(worst) {}
  double worst_residual() const { return worst_residual_; }

 private:
  double worst_residual_;
};

/// All deg(p) roots of p with multiplicity, via Aberth–Ehrlich simultaneous
/// iteration from a deterministic start on the circle of radius 1.1× the
/// Cauchy bound. Exact zero low-order coefficients give exact zero roots.
/// Converged approximations within sqrt(tol)(1+|z|) of each other are
/// replaced by their centroid when that does not worsen the residual.
std::vector<Complex> find_roots(const ComplexPoly& p, const RootOptions& opts = {});

/// |p(z)| / Σ|a_i||z|^i, evaluated without overflow for large |z|.
double backward_error(const ComplexPoly& p, const Complex& z);

/// 1 + max|a_i / a_n|.
double cauchy_bound(const ComplexPoly& p);

/// ∏ (x - r) over the given roots, times `leading`.
ComplexPoly from_roots(const std::vector<Complex>& roots, Complex leading = 1.0);

}  // namespace dynmahler
