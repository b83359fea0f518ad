#include "dynmahler/orbit.hpp"

#include <boost/integer/common_factor_rt.hpp>

namespace dynmahler {
namespace {

bool is_monic(const Poly<BigInt>& p, int min_degree) {
  return p.degree() >= min_degree && p.leading() == 1;
}

// Power sums p_0..p_{count-1} of the roots of a monic polynomial.
std::vector<BigInt> power_sums(const IntPoly& p, int count) {
  const int D = p.degree();
  // e_k = (−1)^k a_{D−k}
  auto e = [&](int k) -> BigInt {
    const BigInt& a = p.coeffs()(D - k);
    return (k % 2) ? BigInt(-a) : a;
  };
  std::vector<BigInt> s(count);
  if (count > 0) s[0] = D;
  for (int k = 1; k < count; ++k) {
    BigInt acc = 0;
    for (int i = 1; i < k && i <= D; ++i) {
      const BigInt term = e(i) * s[k - i];
      if (i % 2) acc += term;
      else acc -= term;
    }
    if (k <= D) {
      const BigInt term = e(k) * k;
      if (k % 2) acc += term;
      else acc -= term;
    }
    s[k] = acc;
  }
  return s;
}

// h mod p for monic p, h of degree < deg p + deg f.
void reduce_in_place(CoeffVector<BigInt>& h, const IntPoly& p) {
  const Eigen::Index D = p.degree();
  for (Eigen::Index top = h.size() - 1; top >= D; --top) {
    const BigInt c = h(top);
    if (c == 0) continue;
    for (Eigen::Index i = 0; i < D; ++i) h(top - D + i) -= c * p.coeffs()(i);
    h(top) = 0;
  }
  h.conservativeResize(std::min<Eigen::Index>(h.size(), D));
}

}  // namespace

BigInt content(const IntPoly& p) {
  BigInt g = 0;
  for (Eigen::Index i = 0; i < p.size(); ++i)
    g = boost::integer::gcd(g, BigInt(abs(p.coeffs()(i))));
  return g;
}

IntPoly monic_normalized(const IntPoly& p) {
  if (p.is_zero()) throw InputError("monic_normalized: zero polynomial");
  if (p.leading() == 1) return p;
  if (p.leading() == -1) return -p;
  throw InputError("leading coefficient must be +1 or -1");
}

IntPoly orbit_step(const IntPoly& monic_p, const IntPoly& f) {
  if (!is_monic(monic_p, 1)) throw InputError("orbit_step: P must be monic and nonconstant");
  if (f.is_zero()) throw InputError("orbit_step: f must be nonzero");
  const int D = monic_p.degree();
  const std::vector<BigInt> p_sums = power_sums(monic_p, D);

  CoeffVector<BigInt> f_mod = f.coeffs();
  if (f_mod.size() > D) reduce_in_place(f_mod, monic_p);

  // s_m = Tr(f^m mod P) for m = 1..D.
  std::vector<BigInt> s(D + 1);
  CoeffVector<BigInt> power = f_mod;
  for (int m = 1; m <= D; ++m) {
    if (m > 1) {
      CoeffVector<BigInt> prod = CoeffVector<BigInt>::Zero(
          std::max<Eigen::Index>(power.size() + f_mod.size() - 1, 1));
      for (Eigen::Index i = 0; i < power.size(); ++i) {
        if (power(i) == 0) continue;
        for (Eigen::Index j = 0; j < f_mod.size(); ++j)
          prod(i + j) += power(i) * f_mod(j);
      }
      reduce_in_place(prod, monic_p);
      power = std::move(prod);
    }
    BigInt tr = 0;
    for (Eigen::Index j = 0; j < power.size(); ++j) tr += power(j) * p_sums[j];
    s[m] = tr;
  }

  // k e_k = Σ_{i=1..k} (−1)^{i−1} e_{k−i} s_i
  std::vector<BigInt> e(D + 1);
  e[0] = 1;
  for (int k = 1; k <= D; ++k) {
    BigInt acc = 0;
    for (int i = 1; i <= k; ++i) {
      const BigInt term = e[k - i] * s[i];
      if (i % 2) acc += term;
      else acc -= term;
    }
    if (acc % k != 0) throw VerificationError("orbit_step: inexact Newton division");
    e[k] = acc / k;
  }
  CoeffVector<BigInt> out(D + 1);
  for (int k = 0; k <= D; ++k) out(D - k) = (k % 2) ? BigInt(-e[k]) : e[k];
  return IntPoly(std::move(out));
}

IntPoly orbit_poly(const IntPoly& p, const IntPoly& f, int n, unsigned max_coeff_bits) {
  if (n < 0) throw InputError("orbit_poly: negative iteration count");
  if (!is_monic(f, 2)) throw InputError("orbit_poly: f must be monic of degree >= 2");
  if (p.degree() < 1) throw InputError("orbit_poly: P must be nonconstant");
  IntPoly cur = monic_normalized(p);
  for (int k = 0; k < n; ++k) {
    cur = orbit_step(cur, f);
    for (Eigen::Index i = 0; i < cur.size(); ++i)
      if (cur.coeffs()(i) != 0 && msb(abs(cur.coeffs()(i))) + 1 > max_coeff_bits)
        throw CapExceeded("orbit_poly: coefficient size cap exceeded at step " +
                          std::to_string(k + 1));
  }
  return cur;
}

}  // namespace dynmahler
