#include "dynmahler/poly.hpp"

namespace dynmahler {

IntPoly chebyshev(int d) {
  if (d < 0) throw InputError("chebyshev: negative degree");
  IntPoly prev = IntPoly::constant(BigInt(2));
  if (d == 0) return prev;
  IntPoly cur = IntPoly::identity();
  const IntPoly w = IntPoly::identity();
  for (int k = 2; k <= d; ++k) {
    IntPoly next = w * cur - prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

ComplexPoly trimmed(const ComplexPoly& p, double rel_tol) {
  const double scale = max_abs_coeff(p);
  Eigen::Index n = p.size();
  while (n > 0 && std::abs(p.coeffs()(n - 1)) <= rel_tol * scale) --n;
  return ComplexPoly(CoeffVector<Complex>(p.coeffs().head(n)));
}

}  // namespace dynmahler
