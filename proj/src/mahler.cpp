#include "dynmahler/mahler.hpp"

#include <cmath>

#include "dynmahler/orbit.hpp"

namespace dynmahler {

std::string to_string(MeasureMethod m) {
  switch (m) {
    case MeasureMethod::jensen: return "jensen";
    case MeasureMethod::mc: return "mc";
    case MeasureMethod::mc_naive: return "mc-naive";
    case MeasureMethod::tree: return "tree";
    case MeasureMethod::boyd_lawton: return "boyd-lawton";
    case MeasureMethod::cheby_closed_form: return "cheby-closed-form";
  }
  return "unknown";
}

double mahler_classical(const ComplexPoly& p, const RootOptions& opts) {
  if (p.is_zero()) throw InputError("mahler measure of the zero polynomial");
  double m = std::log(std::abs(p.leading()));
  if (p.degree() < 1) return m;
  for (const Complex& r : find_roots(p, opts)) {
    const double a = std::abs(r);
    if (a > 1.0) m += std::log(a);
  }
  return m;
}

double mahler_classical(const IntPoly& p, const RootOptions& opts) {
  return mahler_classical(p.cast<Complex>(), opts);
}

MeasureEstimate dyn_mahler_univariate(const DynamicalSystem& sys, const ComplexPoly& p,
                                      const UnivariateOptions& opts) {
  if (p.is_zero()) throw InputError("dynamical mahler measure of the zero polynomial");
  MeasureEstimate out;
  out.method = MeasureMethod::jensen;
  out.value = std::log(std::abs(p.leading()));
  if (p.degree() < 1) return out;
  for (const Complex& r : find_roots(p, opts.roots)) {
    const PotentialResult g = green_potential(sys, r, opts.tol, opts.n_cap);
    out.value += g.value;
    out.abs_error += g.abs_error;
    if (g.classification == OrbitClass::bounded_at_cap) ++out.diagnostics.bounded_at_cap;
  }
  return out;
}

namespace {

struct RunningMean {
  std::int64_t n = 0;
  double mean = 0.0;
  double m2 = 0.0;
  void add(double x) {
    ++n;
    const double delta = x - mean;
    mean += delta / double(n);
    m2 += delta * (x - mean);
  }
  double std_error() const {
    if (n < 2) return 0.0;
    return std::sqrt(m2 / double(n - 1) / double(n));
  }
};

}  // namespace

MeasureEstimate dyn_mahler_bivariate_mc(const DynamicalSystem& sys, const ComplexBivarPoly& p,
                                        const BivariateOptions& opts) {
  if (p.is_zero()) throw InputError("dynamical mahler measure of the zero polynomial");
  if (p.degx() < 1)
    throw InputError("P has no x-dependence; use the univariate measure in y");

  MeasureEstimate out;
  out.method = opts.naive ? MeasureMethod::mc_naive : MeasureMethod::mc;
  out.seed = opts.sample.seed;

  const MeasureSample ys = sample_equilibrium(sys, opts.sample);
  out.diagnostics.sampler_restarts = ys.restarts;
  RunningMean acc;

  if (opts.naive) {
    SampleOptions xo = opts.sample;
    xo.seed = opts.sample.seed ^ 0x9E3779B97F4A7C15ULL;
    const MeasureSample xs = sample_equilibrium(sys, xo);
    out.diagnostics.sampler_restarts += xs.restarts;
    for (std::size_t i = 0; i < ys.points.size(); ++i) {
      const double v = std::log(std::abs(eval(p, xs.points[i], ys.points[i])));
      if (!std::isfinite(v)) {
        ++out.diagnostics.degenerate_points;
        continue;
      }
      acc.add(v);
    }
    out.value = acc.mean;
  } else {
    const ComplexPoly lead = p.x_coefficient(p.degx());
    const MeasureEstimate lead_m = dyn_mahler_univariate(sys, lead, opts.univariate);
    out.abs_error = lead_m.abs_error;
    for (const Complex& y : ys.points) {
      const ComplexPoly q = x_poly_at(p, y);
      if (q.degree() < p.degx() ||
          std::abs(q.leading()) <= opts.degenerate_rel_tol * max_abs_coeff(q)) {
        ++out.diagnostics.degenerate_points;
        continue;
      }
      double v = 0.0;
      try {
        for (const Complex& r : find_roots(q, opts.univariate.roots)) {
          const PotentialResult g =
              green_potential(sys, r, opts.univariate.tol, opts.univariate.n_cap);
          v += g.value;
          if (g.classification == OrbitClass::bounded_at_cap) ++out.diagnostics.bounded_at_cap;
        }
      } catch (const NumericalError&) {
        ++out.diagnostics.dropped_points;
        continue;
      }
      acc.add(v);
    }
    out.value = lead_m.value + acc.mean;
  }
  if (acc.n == 0) throw NumericalError("bivariate measure: every sample point was dropped");
  out.std_error = acc.std_error();
  out.n_points = acc.n;
  return out;
}

namespace {

void check_specialization_degree(int degx, int degy, int d, int n, std::int64_t max_degree) {
  std::int64_t deg = degy;
  for (int k = 0; k < n && deg <= max_degree; ++k) deg *= d;
  deg = std::max<std::int64_t>(deg, degx);
  if (deg > max_degree)
    throw CapExceeded("specialization degree exceeds the cap " + std::to_string(max_degree));
}

}  // namespace

IntPoly boyd_lawton_specialization(const IntPoly& f, const IntBivarPoly& p, int n,
                                   std::int64_t max_degree) {
  if (n < 0) throw InputError("negative iteration count");
  check_specialization_degree(p.degx(), p.degy(), f.degree(), n, max_degree);
  const IntPoly spec = specialize_y(p, iterate(f, n, max_degree + 1));
  if (spec.is_zero())
    throw InputError("P(x, f^" + std::to_string(n) + "(x)) is the zero polynomial");
  return spec;
}

MeasureEstimate dyn_mahler_boyd_lawton(const DynamicalSystem& sys, const IntBivarPoly& p, int n,
                                       std::int64_t max_degree, const UnivariateOptions& opts) {
  if (!sys.is_integral())
    return dyn_mahler_boyd_lawton(sys, p.cast<Complex>(), n, max_degree, opts);
  const IntPoly spec = boyd_lawton_specialization(*sys.exact(), p, n, max_degree);
  MeasureEstimate out = dyn_mahler_univariate(sys, spec.cast<Complex>(), opts);
  out.method = MeasureMethod::boyd_lawton;
  out.n_points = n;
  return out;
}

MeasureEstimate dyn_mahler_boyd_lawton(const DynamicalSystem& sys, const ComplexBivarPoly& p,
                                       int n, std::int64_t max_degree,
                                       const UnivariateOptions& opts) {
  if (n < 0) throw InputError("negative iteration count");
  check_specialization_degree(p.degx(), p.degy(), sys.degree(), n, max_degree);
  const ComplexPoly spec = trimmed(specialize_y(p, iterate(sys.f(), n, max_degree + 1)));
  if (spec.is_zero())
    throw InputError("P(x, f^" + std::to_string(n) + "(x)) is the zero polynomial");
  MeasureEstimate out = dyn_mahler_univariate(sys, spec, opts);
  out.method = MeasureMethod::boyd_lawton;
  out.n_points = n;
  return out;
}

ComplexPoly cheby_pullback(const Complex& alpha, const Complex& beta, const ComplexPoly& p) {
  if (p.is_zero()) throw InputError("cheby_pullback: zero polynomial");
  const Complex s = (beta - alpha) / 4.0;
  const Complex t = (alpha + beta) / 2.0;
  const int D = p.degree();
  const ComplexPoly u{s, t, s};  // z·(s(z + 1/z) + t)
  ComplexPoly upow = ComplexPoly::constant(1.0);
  ComplexPoly q;
  for (int k = 0; k <= D; ++k) {
    if (p[k] != Complex(0.0)) {
      CoeffVector<Complex> shifted = CoeffVector<Complex>::Zero(upow.size() + (D - k));
      shifted.segment(D - k, upow.size()) = upow.coeffs() * p[k];
      q = q + ComplexPoly(std::move(shifted));
    }
    upow = upow * u;
  }
  return q;
}

double cheby_closed_form(const Complex& alpha, const Complex& beta, int d, const ComplexPoly& p,
                         const RootOptions& opts) {
  if (alpha == beta) throw InputError("cheby_closed_form: alpha must differ from beta");
  if (d < 2) throw InputError("cheby_closed_form: degree must be at least 2");
  return mahler_classical(cheby_pullback(alpha, beta, p), opts);
}

ZeroMeasureReport zero_measure_check(const DynamicalSystem& sys, const IntBivarPoly& p,
                                     const ZeroCheckOptions& opts) {
  if (p.is_zero()) throw InputError("zero_measure_check: zero polynomial");
  ZeroMeasureReport report;
  report.threshold = opts.threshold;
  report.estimate = dyn_mahler_bivariate_mc(sys, p.cast<Complex>(), opts.mc);
  report.consistent_with_zero =
      std::abs(report.estimate.value) <= std::max(opts.threshold, 3.0 * report.estimate.std_error);

  if (!sys.is_integral()) return report;
  for (int n = 0; n <= opts.n_small; ++n) {
    IntPoly spec;
    try {
      spec = boyd_lawton_specialization(*sys.exact(), p, n, opts.max_degree);
    } catch (const InputError&) {
      continue;
    }
    if (spec.degree() == 0) {
      if (abs(spec.leading()) == 1) report.exact_evidence.push_back({n, 0, 0});
      continue;
    }
    if (content(spec) != 1 || abs(spec.leading()) != 1) continue;
    const KroneckerResult k = all_roots_preperiodic(sys, spec);
    if (k.verdict == Certificate::all_preperiodic)
      report.exact_evidence.push_back({n, k.n1, k.n2});
  }
  return report;
}

}  // namespace dynmahler
