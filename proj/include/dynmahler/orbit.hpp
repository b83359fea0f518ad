#pragma once

#include "dynmahler/poly.hpp"

namespace dynmahler {

inline constexpr unsigned kDefaultOrbitCoeffBits = 1u << 20;

/// Given monic P with roots β_i, the monic polynomial ∏ (x − f(β_i)).
///
/// Works entirely over the integers: power sums of the β_i come from Newton's
/// identities, power sums of the f(β_i) are traces of f^m modulo P, and the
/// new coefficients follow from Newton's identities run backwards. Repeated
/// roots are carried with their multiplicity.
IntPoly orbit_step(const IntPoly& monic_p, const IntPoly& f);

/// P_n(x) = ∏ (x − f^n(α_i)) over the roots α_i of P, monic.
///
/// P must have leading coefficient ±1 and f must be monic of degree ≥ 2.
/// Throws CapExceeded once any coefficient needs more than `max_coeff_bits`
/// bits.
IntPoly orbit_poly(const IntPoly& p, const IntPoly& f, int n,
                   unsigned max_coeff_bits = kDefaultOrbitCoeffBits);

/// ±P scaled so the leading coefficient is +1; requires leading ±1.
IntPoly monic_normalized(const IntPoly& p);

/// gcd of the coefficients, positive; 0 for the zero polynomial.
BigInt content(const IntPoly& p);

}  // namespace dynmahler
