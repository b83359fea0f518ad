#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dynmahler/bivar.hpp"
#include "dynmahler/dynamics.hpp"

namespace dynmahler {

enum class MeasureMethod { jensen, mc, mc_naive, tree, boyd_lawton, cheby_closed_form };

std::string to_string(MeasureMethod m);

struct MeasureDiagnostics {
  std::int64_t dropped_points = 0;     // root-finder failures
  std::int64_t degenerate_points = 0;  // leading x-coefficient vanished
  std::int64_t bounded_at_cap = 0;     // roots whose orbit hit the cap
  int sampler_restarts = 0;
};

struct MeasureEstimate {
  double value = 0.0;
  double std_error = 0.0;  // 0 for deterministic methods
  double abs_error = 0.0;
  MeasureMethod method = MeasureMethod::jensen;
  std::int64_t n_points = 0;  // sample size, or the iterate index for boyd-lawton
  std::optional<std::uint64_t> seed;
  MeasureDiagnostics diagnostics;
};

/// log|a| + Σ_{|α|>1} log|α|.
double mahler_classical(const ComplexPoly& p, const RootOptions& opts = {});
double mahler_classical(const IntPoly& p, const RootOptions& opts = {});

struct UnivariateOptions {
  double tol = 1e-12;  // per-root potential tolerance
  int n_cap = kDefaultOrbitCap;
  RootOptions roots{};
};

/// m_f(P) = log|a| + Σ_i g_f(α_i).
MeasureEstimate dyn_mahler_univariate(const DynamicalSystem& sys, const ComplexPoly& p,
                                      const UnivariateOptions& opts = {});

struct BivariateOptions {
  SampleOptions sample{};
  UnivariateOptions univariate{};
  bool naive = false;  // average log|P(x_i, y_i)| over paired samples instead
  double degenerate_rel_tol = 1e-12;
};

/// Monte Carlo estimate of m_f(P) for P(x, y).
///
/// Draws y_i from the equilibrium measure and adds the exact x-integral at
/// each y_i: m_f(lead_x P) + mean_i Σ_j g_f(roots of P(·, y_i)). Draws where
/// the leading x-coefficient vanishes are dropped and counted.
MeasureEstimate dyn_mahler_bivariate_mc(const DynamicalSystem& sys,
                                        const ComplexBivarPoly& p,
                                        const BivariateOptions& opts = {});

inline constexpr std::int64_t kDefaultMaxDegree = std::int64_t(1) << 14;

/// m_f of the specialization P(x, f^n(x)), built exactly for integral input.
MeasureEstimate dyn_mahler_boyd_lawton(const DynamicalSystem& sys,
                                       const ComplexBivarPoly& p, int n,
                                       std::int64_t max_degree = kDefaultMaxDegree,
                                       const UnivariateOptions& opts = {});
MeasureEstimate dyn_mahler_boyd_lawton(const DynamicalSystem& sys, const IntBivarPoly& p,
                                       int n, std::int64_t max_degree = kDefaultMaxDegree,
                                       const UnivariateOptions& opts = {});

/// P(x, f^n(x)) over the integers; throws InputError on the zero polynomial.
IntPoly boyd_lawton_specialization(const IntPoly& f, const IntBivarPoly& p, int n,
                                   std::int64_t max_degree = kDefaultMaxDegree);

/// m(Q) for Q(z) = z^{deg P} P(s(z + 1/z) + t), s = (β−α)/4, t = (α+β)/2.
/// For f affinely conjugate to a Chebyshev map with Julia set [α, β] this is
/// m_f(P).
double cheby_closed_form(const Complex& alpha, const Complex& beta, int d,
                         const ComplexPoly& p, const RootOptions& opts = {});

/// The polynomial Q used by cheby_closed_form.
ComplexPoly cheby_pullback(const Complex& alpha, const Complex& beta, const ComplexPoly& p);

struct ExactZeroEvidence {
  int n = 0;   // specialization index
  int n1 = 0;  // repeating orbit-polynomial indices
  int n2 = 0;
};

struct ZeroMeasureReport {
  bool consistent_with_zero = false;
  MeasureEstimate estimate;
  double threshold = 0.02;
  std::vector<ExactZeroEvidence> exact_evidence;
};

struct ZeroCheckOptions {
  BivariateOptions mc{};
  double threshold = 0.02;
  int n_small = 2;
  std::int64_t max_degree = kDefaultMaxDegree;
};

/// Monte Carlo verdict plus exact certificates: a specialization P(x, f^n(x))
/// with content 1, unit leading coefficient, and all roots preperiodic has
/// dynamical measure exactly 0.
ZeroMeasureReport zero_measure_check(const DynamicalSystem& sys, const IntBivarPoly& p,
                                     const ZeroCheckOptions& opts = {});

}  // namespace dynmahler
