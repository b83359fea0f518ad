#include "dynmahler/bop.hpp"

#include <cmath>

namespace dynmahler {
namespace {

constexpr double kRelZero = 1e-12;

template <typename Scalar>
bool is_negligible(const Scalar& v, double scale) {
  if constexpr (is_exact_v<Scalar>) {
    return v == Scalar(0);
  } else {
    return std::abs(v) <= kRelZero * scale;
  }
}

template <typename Scalar>
Poly<Scalar> truncate(const Poly<Scalar>& p, int len) {
  if (p.size() <= len) return p;
  return Poly<Scalar>(CoeffVector<Scalar>(p.coeffs().head(len)));
}

template <typename Scalar>
void require_fixed_origin(const Poly<Scalar>& f, const char* who) {
  if (f.degree() < 1) throw InputError(std::string(who) + ": f must be nonconstant");
  if (!is_negligible(f[0], std::max(1.0, max_abs_coeff(f))))
    throw InputError(std::string(who) + ": requires f(0) = 0");
}

}  // namespace

template <typename Scalar>
int ord_at_zero(const Poly<Scalar>& p) {
  if (p.is_zero()) throw InputError("ord_at_zero: zero polynomial");
  const double scale = max_abs_coeff(p);
  for (int i = 0; i <= p.degree(); ++i)
    if (!is_negligible(p[i], scale)) return i;
  throw InputError("ord_at_zero: zero polynomial");
}

template <typename Scalar>
Poly<Scalar> truncated_compose(const Poly<Scalar>& p, const Poly<Scalar>& q, int len) {
  const Poly<Scalar> qt = truncate(q, len);
  Poly<Scalar> acc;
  for (int i = p.degree(); i >= 0; --i)
    acc = truncate(acc * qt, len) + Poly<Scalar>::constant(p[i]);
  return truncate(acc, len);
}

template <typename Scalar>
OrderSequence<Scalar> order_sequence(const Poly<Scalar>& f, const BivarPoly<Scalar>& p,
                                     const Scalar& alpha, int max_n, int threshold,
                                     std::int64_t max_degree) {
  if (p.is_zero()) throw InputError("order_sequence: P must be nonzero");
  if (f.degree() < 2) throw InputError("order_sequence: f must have degree at least 2");
  if (max_n < 0) throw InputError("order_sequence: N must be nonnegative");

  OrderSequence<Scalar> out;
  out.alpha = alpha;
  const Poly<Scalar> fa = affine_conjugate(f, Scalar(1), alpha);
  const BivarPoly<Scalar> pa = translate(p, alpha);
  double p_scale = 0.0;
  for (Eigen::Index i = 0; i < pa.coeffs().size(); ++i)
    p_scale = std::max(p_scale, magnitude(pa.coeffs().data()[i]));

  // Exact orders up to the threshold are visible mod x^{window}; the full
  // specialization is only built when every coefficient below it vanishes.
  const int window = threshold + 2;
  Poly<Scalar> h = Poly<Scalar>::identity();
  std::int64_t deg_h = 1;
  for (int n = 0; n <= max_n; ++n) {
    if (n > 0) {
      deg_h *= f.degree();
      if (std::max<std::int64_t>(pa.degy(), 1) * deg_h > max_degree)
        throw CapExceeded("order_sequence: degree of P(x, f^" + std::to_string(n) +
                          "(x)) exceeds the cap");
      if constexpr (is_exact_v<Scalar>) h = truncated_compose(fa, h, window);
      else h = compose(fa, h);
    }
    if constexpr (is_exact_v<Scalar>) {
      const Poly<Scalar> low = truncate(specialize_y(pa, h), window);
      if (!low.is_zero()) {
        const int ord = ord_at_zero(low);
        out.orders.emplace_back(n, ord);
        if (ord > threshold) out.flag = OrderFlag::exceeded_threshold;
        continue;
      }
      const Poly<Scalar> q = specialize_y(pa, iterate(fa, n, max_degree + 1));
      if (q.is_zero()) {
        out.skipped.push_back(n);
      } else {
        out.orders.emplace_back(n, ord_at_zero(q));
        out.flag = OrderFlag::exceeded_threshold;
      }
    } else {
      const Poly<Scalar> q = specialize_y(pa, h);
      const double scale =
          std::max(1.0, p_scale) * std::pow(std::max(1.0, max_abs_coeff(h)), pa.degy());
      bool zero = true;
      for (int i = 0; i <= q.degree(); ++i)
        if (!is_negligible(q[i], scale)) zero = false;
      if (zero) {
        out.skipped.push_back(n);
        continue;
      }
      const int ord = ord_at_zero(q);
      out.orders.emplace_back(n, ord);
      if (ord > threshold) out.flag = OrderFlag::exceeded_threshold;
    }
  }
  return out;
}

template <typename Scalar>
DistinguishingIndex distinguishing_index(const Poly<Scalar>& f) {
  require_fixed_origin(f, "distinguishing_index");
  const double scale = std::max(1.0, max_abs_coeff(f));
  const Scalar lambda = f[1];
  if (is_negligible(lambda, scale)) throw SuperattractingError();

  auto parabolic = [&]() {
    for (int i = 2; i <= f.degree(); ++i)
      if (!is_negligible(f[i], scale)) return DistinguishingIndex{i, MultiplierClass::parabolic};
    throw InputError("distinguishing_index: f is the identity");
  };

  if constexpr (is_exact_v<Scalar>) {
    if (lambda == Scalar(1)) return parabolic();
    if (lambda == Scalar(-1)) throw RootOfUnityMultiplierError(2);
  } else {
    // Gaussian-rational roots of unity are exactly ±1, ±i.
    if (lambda == Complex(1.0)) return parabolic();
    if (lambda == Complex(-1.0)) throw RootOfUnityMultiplierError(2);
    if (lambda == Complex(0.0, 1.0) || lambda == Complex(0.0, -1.0))
      throw RootOfUnityMultiplierError(4);
    if (std::abs(lambda - 1.0) <= kRelZero) return parabolic();
    if (std::abs(std::abs(lambda) - 1.0) <= kRelZero) {
      Complex power = 1.0;
      for (int k = 1; k <= kMaxRootOfUnityOrder; ++k) {
        power *= lambda;
        if (std::abs(power - 1.0) <= kRelZero * k) throw RootOfUnityMultiplierError(k);
      }
    }
  }
  return {1, MultiplierClass::multiplier_power};
}

template <typename Scalar>
std::vector<Scalar> coefficient_track(const Poly<Scalar>& f, int i, int max_n) {
  require_fixed_origin(f, "coefficient_track");
  if (i < 0) throw InputError("coefficient_track: index must be nonnegative");
  std::vector<Scalar> out;
  out.reserve(std::size_t(std::max(max_n, 0)));
  const Poly<Scalar> ft = truncate(f, i + 1);
  Poly<Scalar> h = ft;
  for (int n = 1; n <= max_n; ++n) {
    if (n > 1) h = truncated_compose(ft, h, i + 1);
    out.push_back(h[i]);
  }
  return out;
}

template int ord_at_zero(const Poly<BigInt>&);
template int ord_at_zero(const Poly<Rational>&);
template int ord_at_zero(const Poly<Complex>&);

#define DYNMAHLER_INSTANTIATE(S)                                                         \
  template Poly<S> truncated_compose(const Poly<S>&, const Poly<S>&, int);               \
  template OrderSequence<S> order_sequence(const Poly<S>&, const BivarPoly<S>&, const S&, \
                                           int, int, std::int64_t);                      \
  template DistinguishingIndex distinguishing_index(const Poly<S>&);                     \
  template std::vector<S> coefficient_track(const Poly<S>&, int, int);

DYNMAHLER_INSTANTIATE(Rational)
DYNMAHLER_INSTANTIATE(Complex)

#undef DYNMAHLER_INSTANTIATE

}  // namespace dynmahler
