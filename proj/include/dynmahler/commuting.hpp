#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dynmahler/bivar.hpp"
#include "dynmahler/poly.hpp"

namespace dynmahler {

// The routines below are instantiated for Rational (exact) and Complex
// (tolerance 1e-9 relative) coefficients. Integer maps are cast to Rational.

/// exp(2πi num/den), kept as a fraction until evaluation.
struct RootOfUnity {
  int num = 0;
  int den = 1;
  Complex value() const;
  int order() const;  // den / gcd(num, den)
  bool is_real() const { return (2 * num) % den == 0; }
};

template <typename Scalar>
struct BetaShift {
  Scalar beta;
  Poly<Scalar> f_beta;  // vanishing z^{d−1} coefficient
};

/// β = a_{d−1} / (d a_d) and f_β(w) = f(w − β) + β.
template <typename Scalar>
BetaShift<Scalar> beta_shift(const Poly<Scalar>& f);

/// gcd of |i − 1| over the indices i of nonzero coefficients. A nonzero
/// constant term forces 1; a pure multiple of z gives 0.
template <typename Scalar>
int j_invariant(const Poly<Scalar>& p);

/// c[i] is the coefficient of z^{d^n − i} in f_β^n, for i = 0..d.
template <typename Scalar>
struct CoeffTable {
  int n = 0;
  std::vector<Scalar> c;
};

/// Top d+1 coefficients of f_β^n, read off the truncated power
/// (f_β)^{d^{n−1}} computed by repeated squaring of top coefficients.
template <typename Scalar>
CoeffTable<Scalar> top_coeffs(const Poly<Scalar>& f_beta, int n);

struct RInvariants {
  int r = 0;        // gcd of the positive i with c_{1,i} ≠ 0
  int r_prime = 0;  // r with every prime dividing d removed
};

/// Throws InputError when f is conjugate to z^d (no positive index survives).
template <typename Scalar>
RInvariants r_and_rprime(const Poly<Scalar>& f);

/// j(f_β^n) = gcd(d^n − 1, r), computed with d^n reduced mod r.
template <typename Scalar>
int j_of_iterate(const Poly<Scalar>& f, int n);

/// Least n ≥ 1 with base^n ≡ 1 (mod modulus); 1 when modulus is 1.
int multiplicative_order(int base, int modulus);

struct Commuter {
  RootOfUnity u;
  ComplexPoly poly;  // u·g + (u − 1)β
  int witness_n = 1;  // commutes with f^witness_n
};

/// L(z) = u z + (u − 1)β for the r′-th roots of unity u, each verified against
/// f^n with n = ord(d mod r′). Throws VerificationError if a check fails.
template <typename Scalar>
std::vector<Commuter> enumerate_linear_commuters(const Poly<Scalar>& f);

template <typename Scalar>
struct IterateRoot {
  Poly<Scalar> g;
  int k = 1;  // g^k == f
};

/// Lowest-degree g with g^k = f, solved top-down by undetermined
/// coefficients and verified by recomposition. Falls back to (f, 1).
template <typename Scalar>
IterateRoot<Scalar> minimal_root_iterate(const Poly<Scalar>& f);

/// u·f̃₀ + (u − 1)β for the r′-th roots of unity u, f̃₀ the minimal iterate root.
template <typename Scalar>
std::vector<Commuter> enumerate_min_nonlinear_commuters(const Poly<Scalar>& f);

/// Warn-only flags for maps conjugate to z^d or ±T_d; empty when none apply.
template <typename Scalar>
std::vector<std::string> exceptional_warnings(const Poly<Scalar>& f);

template <typename Scalar>
struct CommutingReport {
  Scalar beta;
  Poly<Scalar> f_beta;
  int r = 0;
  int r_prime = 0;
  int j_f_beta = 0;
  std::map<int, int> j_table;  // n -> j(f_β^n)
  std::vector<Commuter> linear_commuters;
  IterateRoot<Scalar> min_root;
  std::vector<Commuter> min_nonlinear;
  std::vector<std::string> warnings;
};

template <typename Scalar>
CommutingReport<Scalar> commuting_report(const Poly<Scalar>& f, int j_terms = 4);

struct ZeroFamily {
  ComplexBivarPoly poly;
  std::optional<IntBivarPoly> exact;  // set when every coefficient is an integer
};

/// f̃₀^n(x) − L(f̃₀^m(y)) with L the u_index-th linear commuter.
template <typename Scalar>
ZeroFamily zero_family(const Poly<Scalar>& f, int n, int m, int u_index,
                       std::int64_t max_degree = std::int64_t(1) << 14);

}  // namespace dynmahler
