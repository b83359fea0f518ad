#include "dynmahler/commuting.hpp"

#include <cmath>
#include <numeric>

namespace dynmahler {
namespace {

constexpr double kCoeffTol = 1e-9;

template <typename Scalar>
bool negligible(const Scalar& v, double scale) {
  if constexpr (is_exact_v<Scalar>) {
    return v == Scalar(0);
  } else {
    return std::abs(v) <= 1e-12 * std::max(scale, 1.0);
  }
}

template <typename Scalar>
bool polys_match(const Poly<Scalar>& a, const Poly<Scalar>& b) {
  if constexpr (is_exact_v<Scalar>) {
    return a == b;
  } else {
    const double scale = std::max({1.0, max_abs_coeff(a), max_abs_coeff(b)});
    const int n = std::max(a.degree(), b.degree());
    for (int i = 0; i <= n; ++i)
      if (std::abs(a[i] - b[i]) > kCoeffTol * scale) return false;
    return true;
  }
}

bool complex_match(const ComplexPoly& a, const ComplexPoly& b) { return polys_match(a, b); }

template <typename Scalar>
void require_monic(const Poly<Scalar>& f, const char* who) {
  if (f.degree() < 2) throw InputError(std::string(who) + ": degree must be at least 2");
  if constexpr (is_exact_v<Scalar>) {
    if (f.leading() != Scalar(1)) throw InputError(std::string(who) + ": f must be monic");
  } else {
    if (std::abs(f.leading() - 1.0) > 1e-12) throw InputError(std::string(who) + ": f must be monic");
  }
}

int power_mod(int base, long long exp, int mod) {
  long long result = 1 % mod, b = base % mod;
  while (exp > 0) {
    if (exp & 1) result = result * b % mod;
    b = b * b % mod;
    exp >>= 1;
  }
  return int(result);
}

// (a * b) restricted to the top `len` coefficients, both inputs given as
// top-coefficient vectors.
template <typename Scalar>
std::vector<Scalar> top_product(const std::vector<Scalar>& a, const std::vector<Scalar>& b) {
  std::vector<Scalar> out(a.size(), Scalar(0));
  for (std::size_t i = 0; i < out.size(); ++i)
    for (std::size_t j = 0; j <= i; ++j) out[i] += a[j] * b[i - j];
  return out;
}

template <typename Scalar>
Poly<Complex> as_complex(const Poly<Scalar>& p) {
  return p.template cast<Complex>();
}

template <typename Scalar>
Complex scalar_complex(const Scalar& s) {
  return convert_scalar<Complex>(s);
}

// Checks that w ↦ u·w commutes with h (the β-shifted iterate): u^m = u for
// every nonzero coefficient index m, that is ord(u) | (m − 1).
template <typename Scalar>
bool rotation_commutes(const Poly<Scalar>& h, const RootOfUnity& u) {
  const int ord = u.order();
  const double scale = max_abs_coeff(h);
  for (int m = 0; m <= h.degree(); ++m) {
    if (negligible(h[m], scale)) continue;
    if (((m - 1) % ord + ord) % ord != 0) return false;
  }
  return true;
}

ComplexPoly linear_poly(const Complex& slope, const Complex& offset) {
  CoeffVector<Complex> c(2);
  c << offset, slope;
  return ComplexPoly(std::move(c));
}

}  // namespace

Complex RootOfUnity::value() const {
  if (num % den == 0) return 1.0;
  if ((2 * num) % den == 0) return -1.0;
  return std::polar(1.0, 2.0 * M_PI * double(num) / double(den));
}

int RootOfUnity::order() const { return den / std::gcd(num, den); }

int multiplicative_order(int base, int modulus) {
  if (modulus < 1) throw InputError("multiplicative_order: modulus must be positive");
  if (modulus == 1) return 1;
  if (std::gcd(base, modulus) != 1) throw InputError("multiplicative_order: base not a unit");
  long long x = ((base % modulus) + modulus) % modulus;
  const long long b = x;
  for (int n = 1; n <= modulus; ++n) {
    if (x == 1) return n;
    x = x * b % modulus;
  }
  throw VerificationError("multiplicative_order: no order found");
}

template <typename Scalar>
BetaShift<Scalar> beta_shift(const Poly<Scalar>& f) {
  require_monic(f, "beta_shift");
  const int d = f.degree();
  BetaShift<Scalar> out{f[d - 1] / (Scalar(d) * f.leading()), Poly<Scalar>()};
  Poly<Scalar> fb = affine_conjugate(f, Scalar(1), Scalar(-out.beta));
  if constexpr (!is_exact_v<Scalar>) {
    CoeffVector<Scalar> c = fb.coeffs();
    c(d - 1) = Scalar(0);
    fb = Poly<Scalar>(std::move(c));
  }
  if (!(fb[d - 1] == Scalar(0)))
    throw VerificationError("beta_shift: degree d-1 coefficient did not vanish");
  out.f_beta = std::move(fb);
  return out;
}

template <typename Scalar>
int j_invariant(const Poly<Scalar>& p) {
  if (p.degree() < 1) throw InputError("j_invariant: polynomial must be nonconstant");
  const double scale = max_abs_coeff(p);
  int g = 0;
  for (int i = 0; i <= p.degree(); ++i)
    if (!negligible(p[i], scale)) g = std::gcd(g, std::abs(i - 1));
  return g;
}

template <typename Scalar>
CoeffTable<Scalar> top_coeffs(const Poly<Scalar>& f_beta, int n) {
  if (n < 1) throw InputError("top_coeffs: n must be positive");
  const int d = f_beta.degree();
  if (d < 2) throw InputError("top_coeffs: degree must be at least 2");
  if (!negligible(f_beta[d - 1], max_abs_coeff(f_beta)))
    throw InputError("top_coeffs: f must have vanishing degree d-1 coefficient");

  std::vector<Scalar> base(d + 1);
  for (int i = 0; i <= d; ++i) base[i] = f_beta[d - i];
  // exponent d^{n−1}
  BigInt exp = 1;
  for (int k = 1; k < n; ++k) exp *= d;
  std::vector<Scalar> result(d + 1, Scalar(0));
  result[0] = Scalar(1);
  std::vector<Scalar> sq = base;
  while (exp > 0) {
    if (bit_test(exp, 0)) result = top_product(result, sq);
    exp >>= 1;
    if (exp > 0) sq = top_product(sq, sq);
  }
  return {n, std::move(result)};
}

template <typename Scalar>
RInvariants r_and_rprime(const Poly<Scalar>& f) {
  const BetaShift<Scalar> bs = beta_shift(f);
  const int d = f.degree();
  const double scale = max_abs_coeff(bs.f_beta);
  int r = 0;
  for (int i = 1; i <= d; ++i)
    if (!negligible(bs.f_beta[d - i], scale)) r = std::gcd(r, i);
  if (r == 0) throw InputError("f is conjugate to z^d; r is undefined");
  int rp = r;
  int rest = d;
  for (int p = 2; rest > 1; ++p) {
    if (rest % p) continue;
    while (rest % p == 0) rest /= p;
    while (rp % p == 0) rp /= p;
  }
  return {r, rp};
}

template <typename Scalar>
int j_of_iterate(const Poly<Scalar>& f, int n) {
  if (n < 1) throw InputError("j_of_iterate: n must be positive");
  const int r = r_and_rprime(f).r;
  const int dn = power_mod(f.degree(), n, r);
  return std::gcd((dn - 1 + r) % r, r);
}

template <typename Scalar>
std::vector<Commuter> enumerate_linear_commuters(const Poly<Scalar>& f) {
  const BetaShift<Scalar> bs = beta_shift(f);
  const RInvariants rr = r_and_rprime(f);
  const int n = multiplicative_order(f.degree(), rr.r_prime);
  const Poly<Scalar> fbn = iterate(bs.f_beta, n);
  const ComplexPoly fn = iterate(as_complex(f), n);
  const Complex beta = scalar_complex(bs.beta);

  std::vector<Commuter> out;
  for (int k = 0; k < rr.r_prime; ++k) {
    const RootOfUnity u{k, rr.r_prime};
    const Complex uv = u.value();
    Commuter c{u, linear_poly(uv, (uv - 1.0) * beta), n};
    if (!rotation_commutes(fbn, u) || !complex_match(compose(c.poly, fn), compose(fn, c.poly)))
      throw VerificationError("linear commuter failed verification for u = " +
                              std::to_string(k) + "/" + std::to_string(rr.r_prime));
    out.push_back(std::move(c));
  }
  return out;
}

template <typename Scalar>
IterateRoot<Scalar> minimal_root_iterate(const Poly<Scalar>& f) {
  require_monic(f, "minimal_root_iterate");
  const int d = f.degree();
  for (int e = 2; e < d; ++e) {
    int k = 0;
    long long pw = 1;
    while (pw < d) {
      pw *= e;
      ++k;
    }
    if (pw != d || k < 2) continue;
    // ℓ^N = 1 with N = 1 + e + ... + e^{k−1}.
    const long long N = (pw - 1) / (e - 1);
    std::vector<Scalar> leads;
    if constexpr (is_exact_v<Scalar>) {
      leads.push_back(Scalar(1));
      if (N % 2 == 0) leads.push_back(Scalar(-1));
    } else {
      for (long long j = 0; j < N; ++j) leads.push_back(RootOfUnity{int(j), int(N)}.value());
    }
    for (const Scalar& lead : leads) {
      CoeffVector<Scalar> g = CoeffVector<Scalar>::Zero(e + 1);
      g(e) = lead;
      bool ok = true;
      for (int j = 1; j <= e && ok; ++j) {
        CoeffVector<Scalar> trial = g;
        trial(e - j) = Scalar(0);
        const Scalar h0 = iterate(Poly<Scalar>(trial), k)[d - j];
        trial(e - j) = Scalar(1);
        const Scalar h1 = iterate(Poly<Scalar>(trial), k)[d - j];
        const Scalar slope = h1 - h0;
        if (slope == Scalar(0)) {
          ok = false;
          break;
        }
        g(e - j) = (f[d - j] - h0) / slope;
      }
      if (!ok) continue;
      Poly<Scalar> root(std::move(g));
      if (polys_match(iterate(root, k), f)) return {std::move(root), k};
    }
  }
  return {f, 1};
}

template <typename Scalar>
std::vector<Commuter> enumerate_min_nonlinear_commuters(const Poly<Scalar>& f) {
  const BetaShift<Scalar> bs = beta_shift(f);
  const RInvariants rr = r_and_rprime(f);
  const int n = multiplicative_order(f.degree(), rr.r_prime);
  const IterateRoot<Scalar> root = minimal_root_iterate(f);
  const Poly<Scalar> fbn = iterate(bs.f_beta, n);
  const Poly<Scalar> gb = affine_conjugate(root.g, Scalar(1), Scalar(-bs.beta));
  if (!polys_match(compose(gb, fbn), compose(fbn, gb)))
    throw VerificationError("minimal iterate root does not commute with the witness iterate");
  const ComplexPoly fn = iterate(as_complex(f), n);
  const ComplexPoly g = as_complex(root.g);
  const Complex beta = scalar_complex(bs.beta);

  std::vector<Commuter> out;
  for (int k = 0; k < rr.r_prime; ++k) {
    const RootOfUnity u{k, rr.r_prime};
    const Complex uv = u.value();
    Commuter c{u, uv * g + ComplexPoly::constant((uv - 1.0) * beta), n};
    if (!rotation_commutes(fbn, u) || !complex_match(compose(c.poly, fn), compose(fn, c.poly)))
      throw VerificationError("nonlinear commuter failed verification for u = " +
                              std::to_string(k) + "/" + std::to_string(rr.r_prime));
    out.push_back(std::move(c));
  }
  return out;
}

template <typename Scalar>
std::vector<std::string> exceptional_warnings(const Poly<Scalar>& f) {
  std::vector<std::string> out;
  const BetaShift<Scalar> bs = beta_shift(f);
  const int d = f.degree();
  const double scale = max_abs_coeff(bs.f_beta);
  bool pure = true;
  for (int i = 0; i < d; ++i)
    if (!negligible(bs.f_beta[i], scale)) pure = false;
  if (pure) {
    out.push_back("f is affinely conjugate to z^" + std::to_string(d));
    return out;
  }
  // ±T_d fit: f_β(z) = σ T_d(a z) / a forces a² = −d / c_{d−2} and σ = a^{1−d}.
  const ComplexPoly fb = as_complex(bs.f_beta);
  const Complex c2 = fb[d - 2];
  if (std::abs(c2) <= 1e-12 * std::max(scale, 1.0)) return out;
  const ComplexPoly cheb = chebyshev(d).cast<Complex>();
  const Complex a0 = std::sqrt(Complex(-double(d)) / c2);
  for (const Complex& a : {a0, -a0}) {
    const Complex sigma = std::pow(a, 1 - d);
    for (const double s : {1.0, -1.0}) {
      if (std::abs(sigma - s) > 1e-9) continue;
      const ComplexPoly fit = (s / a) * compose(cheb, linear_poly(a, 0.0));
      if (complex_match(fit, fb)) {
        out.push_back(std::string("f is affinely conjugate to ") + (s > 0 ? "" : "-") + "T_" +
                      std::to_string(d));
        return out;
      }
    }
  }
  return out;
}

template <typename Scalar>
CommutingReport<Scalar> commuting_report(const Poly<Scalar>& f, int j_terms) {
  CommutingReport<Scalar> rep;
  const BetaShift<Scalar> bs = beta_shift(f);
  rep.beta = bs.beta;
  rep.f_beta = bs.f_beta;
  rep.warnings = exceptional_warnings(f);
  const RInvariants rr = r_and_rprime(f);
  rep.r = rr.r;
  rep.r_prime = rr.r_prime;
  rep.j_f_beta = j_invariant(bs.f_beta);
  for (int n = 1; n <= j_terms; ++n) rep.j_table[n] = j_of_iterate(f, n);
  rep.linear_commuters = enumerate_linear_commuters(f);
  rep.min_root = minimal_root_iterate(f);
  rep.min_nonlinear = enumerate_min_nonlinear_commuters(f);
  return rep;
}

template <typename Scalar>
ZeroFamily zero_family(const Poly<Scalar>& f, int n, int m, int u_index,
                       std::int64_t max_degree) {
  if (n < 0 || m < 0) throw InputError("zero_family: n and m must be nonnegative");
  const BetaShift<Scalar> bs = beta_shift(f);
  const RInvariants rr = r_and_rprime(f);
  if (u_index < 0 || u_index >= rr.r_prime)
    throw InputError("zero_family: u index must lie in [0, " + std::to_string(rr.r_prime) + ")");
  const IterateRoot<Scalar> root = minimal_root_iterate(f);
  const int e = root.g.degree();
  std::int64_t deg = 1;
  for (int k = 0; k < std::max(n, m); ++k) {
    deg *= e;
    if (deg > max_degree) throw CapExceeded("zero_family: degree exceeds the cap");
  }
  const RootOfUnity u{u_index, rr.r_prime};
  const Poly<Scalar> gx = iterate(root.g, n);
  const Poly<Scalar> gy = iterate(root.g, m);

  ZeroFamily out;
  const Complex uv = u.value();
  const Complex offset = (uv - 1.0) * scalar_complex(bs.beta);
  out.poly = ComplexBivarPoly::in_x(as_complex(gx)) -
             ComplexBivarPoly::in_y(uv * as_complex(gy)) -
             ComplexBivarPoly::in_x(ComplexPoly::constant(offset));

  if constexpr (is_exact_v<Scalar>) {
    if (u.is_real()) {
      const Scalar us = u.order() == 1 ? Scalar(1) : Scalar(-1);
      using RB = BivarPoly<Scalar>;
      const RB exact = RB::in_x(gx) - RB::in_y(us * gy) -
                       RB::in_x(Poly<Scalar>::constant((us - Scalar(1)) * bs.beta));
      CoeffMatrix<BigInt> ints(exact.coeffs().rows(), exact.coeffs().cols());
      bool integral = true;
      for (Eigen::Index i = 0; i < ints.rows() && integral; ++i)
        for (Eigen::Index j = 0; j < ints.cols(); ++j) {
          const Scalar& v = exact.coeffs()(i, j);
          if (denominator(v) != 1) {
            integral = false;
            break;
          }
          ints(i, j) = numerator(v);
        }
      if (integral) out.exact = IntBivarPoly(std::move(ints));
    }
  }
  return out;
}

#define DYNMAHLER_INSTANTIATE(S)                                                        \
  template BetaShift<S> beta_shift(const Poly<S>&);                                     \
  template int j_invariant(const Poly<S>&);                                             \
  template CoeffTable<S> top_coeffs(const Poly<S>&, int);                               \
  template RInvariants r_and_rprime(const Poly<S>&);                                    \
  template int j_of_iterate(const Poly<S>&, int);                                       \
  template std::vector<Commuter> enumerate_linear_commuters(const Poly<S>&);            \
  template IterateRoot<S> minimal_root_iterate(const Poly<S>&);                         \
  template std::vector<Commuter> enumerate_min_nonlinear_commuters(const Poly<S>&);     \
  template std::vector<std::string> exceptional_warnings(const Poly<S>&);               \
  template CommutingReport<S> commuting_report(const Poly<S>&, int);                    \
  template ZeroFamily zero_family(const Poly<S>&, int, int, int, std::int64_t);

DYNMAHLER_INSTANTIATE(Rational)
DYNMAHLER_INSTANTIATE(Complex)

#undef DYNMAHLER_INSTANTIATE

}  // namespace dynmahler
