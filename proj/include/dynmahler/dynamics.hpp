#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "dynmahler/poly.hpp"
#include "dynmahler/roots.hpp"

namespace dynmahler {

/// max(1, 2(1 + Σ_{i<d} |a_i|)) for monic f. Outside this radius |f(z)| > 2|z|.
double escape_radius(const ComplexPoly& f);

/// A monic polynomial map of degree ≥ 2 with its escape radius.
///
/// Integer input keeps an exact copy for the certification routines.
class DynamicalSystem {
 public:
  explicit DynamicalSystem(const IntPoly& f);
  explicit DynamicalSystem(const ComplexPoly& f);

  DynamicalSystem(const DynamicalSystem& other);
  DynamicalSystem& operator=(const DynamicalSystem&) = delete;

  const ComplexPoly& f() const { return f_; }
  const std::optional<IntPoly>& exact() const { return exact_; }
  bool is_integral() const { return exact_.has_value(); }
  int degree() const { return f_.degree(); }
  double escape_radius() const { return radius_; }
  /// Σ_{i<d} |a_i|, the constant in the escape tail bound.
  double lower_coeff_sum() const { return lower_sum_; }

  /// f^n (floating point), cached.
  const ComplexPoly& iterate(int n) const;

  /// 64-bit FNV-1a digest of the coefficient text of f.
  std::uint64_t digest() const;

  /// f(z) / z^d, evaluated without forming z^d.
  Complex normalized_ratio(const Complex& z) const;

 private:
  void init();

  ComplexPoly f_;
  std::optional<IntPoly> exact_;
  double radius_ = 1.0;
  double lower_sum_ = 0.0;
  mutable std::mutex cache_mutex_;
  mutable std::map<int, ComplexPoly> cache_;
};

// ---------------------------------------------------------------------------
// Green's function

enum class OrbitClass { escaped, bounded_at_cap };

struct PotentialResult {
  double value = 0.0;      // g_f(z, ∞) ≥ 0
  double abs_error = 0.0;  // truncation bound of the escape series
  int iterations = 0;
  OrbitClass classification = OrbitClass::bounded_at_cap;
};

inline constexpr int kDefaultOrbitCap = 10000;

/// Escape-rate Green's function g_f(z) = lim d^{-n} log⁺|f^n(z)|.
///
/// Once the orbit leaves the escape radius at step N the remainder is summed
/// as a telescoped series in log|f(w)/w^d| until its tail bound drops below
/// tol. Orbits that stay inside for n_cap steps report 0.
PotentialResult green_potential(const DynamicalSystem& sys, const Complex& z,
                                double tol = 1e-12, int n_cap = kDefaultOrbitCap);

enum class Membership { inside_at_cap, outside };

/// `outside` is a certificate; `inside_at_cap` is not.
Membership in_filled_julia(const DynamicalSystem& sys, const Complex& z,
                           int n_cap = kDefaultOrbitCap);

/// The d solutions of f(z) = w with multiplicity.
std::vector<Complex> preimages(const DynamicalSystem& sys, const Complex& w,
                               const RootOptions& opts = {});

// ---------------------------------------------------------------------------
// Equilibrium measure

struct MeasureSample {
  std::vector<Complex> points;
  std::vector<int> chain_of;  // chain index per point
  std::vector<int> step_of;   // post-burn-in step per point
  std::uint64_t seed = 0;
  int chains = 0;
  int burn_in = 0;
  int restarts = 0;  // chains restarted after a root-finder failure
  std::uint64_t system_digest = 0;
};

struct SampleOptions {
  std::size_t count = 100000;
  std::uint64_t seed = 0xD1CE;
  int burn_in = 64;
  int chains = 16;
  int max_restarts = 64;
  RootOptions roots{};
};

/// Backward-iteration chains started at the escape radius. Chain c draws from
/// a mt19937_64 seeded with seed ^ c and picks preimages uniformly, counted
/// with multiplicity. Points are concatenated in chain order.
MeasureSample sample_equilibrium(const DynamicalSystem& sys, const SampleOptions& opts);

/// One uniformly chosen preimage of w, using the supplied generator.
template <typename Rng>
Complex random_preimage(const DynamicalSystem& sys, const Complex& w, Rng& rng,
                        const RootOptions& opts = {}) {
  const std::vector<Complex> pre = preimages(sys, w, opts);
  return pre[rng() % pre.size()];
}

std::string sample_to_csv(const MeasureSample& s);

inline constexpr std::int64_t kDefaultTreeCap = std::int64_t(1) << 14;

/// d^{-n} Σ_{f^n(w) = z0} F(w), expanding preimages level by level.
double integrate_measure_tree(const DynamicalSystem& sys,
                              const std::function<double(const Complex&)>& F,
                              int depth, const Complex& z0,
                              std::int64_t max_leaves = kDefaultTreeCap,
                              const RootOptions& opts = {});

// ---------------------------------------------------------------------------
// Preperiodicity

struct RationalOrbitResult {
  bool preperiodic = false;
  int tail = 0;
  int period = 0;
};

/// Exact orbit of a rational point under integral f.
RationalOrbitResult is_preperiodic_rational(const DynamicalSystem& sys, const Rational& alpha);

enum class Certificate { all_preperiodic, not_all_preperiodic, inconclusive };

struct KroneckerResult {
  Certificate verdict = Certificate::inconclusive;
  int n1 = -1;  // P_{n1} == P_{n2} when verdict is all_preperiodic
  int n2 = -1;
  int steps = 0;
  std::string reason;
};

inline constexpr int kDefaultKroneckerSteps = 256;

/// Decides whether every root of P is preperiodic for integral f.
///
/// Iterates the orbit polynomials P_n and stops at the first repeat, or when a
/// coefficient of x^{D−k} exceeds binom(D,k)·R^k, which no polynomial with
/// all roots in the filled Julia set can reach. A primitive part whose leading
/// coefficient is not ±1 has a root that is not an algebraic integer and is
/// answered negatively at once.
KroneckerResult all_roots_preperiodic(const DynamicalSystem& sys, const IntPoly& p,
                                      int n_max = kDefaultKroneckerSteps);

}  // namespace dynmahler
