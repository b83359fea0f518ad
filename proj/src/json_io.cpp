#include "dynmahler/json_io.hpp"

#include "dynmahler/parse.hpp"

namespace dynmahler {
namespace {

template <typename Scalar>
Json coeff_array(const Poly<Scalar>& p) {
  Json arr = Json::array();
  for (Eigen::Index i = 0; i < p.size(); ++i) arr.push_back(format_scalar(p.coeffs()(i)));
  return arr;
}

template <typename Scalar>
Json bivar_json(const BivarPoly<Scalar>& p) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < p.coeffs().rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < p.coeffs().cols(); ++j)
      row.push_back(format_scalar(p.coeffs()(i, j)));
    rows.push_back(std::move(row));
  }
  Json out;
  out["degx"] = p.degx();
  out["degy"] = p.degy();
  out["coeffs"] = std::move(rows);
  return out;
}

Json commuter_json(const Commuter& c) {
  Json out;
  out["u"] = as_json(c.u);
  out["poly"] = as_json(c.poly);
  out["text"] = to_string(c.poly, 'z');
  out["witness_n"] = c.witness_n;
  return out;
}

std::string poly_text(const RationalPoly& p) {
  // Integral rational polynomials print in the integer grammar.
  CoeffVector<BigInt> ints(p.size());
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    if (denominator(p.coeffs()(i)) != 1) return to_string(p.cast<Complex>(), 'z');
    ints(i) = numerator(p.coeffs()(i));
  }
  return to_string(IntPoly(std::move(ints)), 'z');
}

std::string poly_text(const ComplexPoly& p) { return to_string(p, 'z'); }

}  // namespace

Json as_json(const IntPoly& p) { return coeff_array(p); }
Json as_json(const RationalPoly& p) { return coeff_array(p); }
Json as_json(const ComplexPoly& p) { return coeff_array(p); }
Json as_json(const IntBivarPoly& p) { return bivar_json(p); }
Json as_json(const ComplexBivarPoly& p) { return bivar_json(p); }

std::string to_string(OrbitClass c) {
  return c == OrbitClass::escaped ? "escaped" : "bounded-at-cap";
}

std::string to_string(Certificate c) {
  switch (c) {
    case Certificate::all_preperiodic: return "true";
    case Certificate::not_all_preperiodic: return "false";
    case Certificate::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

std::string to_string(OrderFlag f) {
  return f == OrderFlag::bounded_within_n ? "bounded-within-N" : "exceeded-threshold";
}

std::string to_string(MultiplierClass k) {
  return k == MultiplierClass::parabolic ? "parabolic" : "multiplier-power";
}

Json as_json(const PotentialResult& r) {
  Json out;
  out["value"] = r.value;
  out["abs_error"] = r.abs_error;
  out["iterations"] = r.iterations;
  out["classification"] = to_string(r.classification);
  return out;
}

Json as_json(const MeasureEstimate& m, Json params) {
  Json out;
  out["value"] = m.value;
  out["stderr"] = m.std_error;
  out["method"] = to_string(m.method);
  if (m.seed) params["seed"] = *m.seed;
  if (m.method == MeasureMethod::boyd_lawton) params["n"] = m.n_points;
  else if (m.method == MeasureMethod::tree) params["depth"] = m.n_points;
  else if (m.n_points) params["n_points"] = m.n_points;
  params["abs_error"] = m.abs_error;
  out["params"] = std::move(params);
  Json diag;
  diag["dropped_points"] = m.diagnostics.dropped_points;
  diag["degenerate_points"] = m.diagnostics.degenerate_points;
  diag["bounded_at_cap"] = m.diagnostics.bounded_at_cap;
  diag["sampler_restarts"] = m.diagnostics.sampler_restarts;
  out["diagnostics"] = std::move(diag);
  return out;
}

Json as_json(const MeasureSample& s, const DynamicalSystem& sys) {
  Json meta;
  meta["seed"] = s.seed;
  meta["burn_in"] = s.burn_in;
  meta["chains"] = s.chains;
  meta["restarts"] = s.restarts;
  meta["f"] = sys.exact() ? as_json(*sys.exact()) : as_json(sys.f());
  meta["system_digest"] = s.system_digest;
  Json pts = Json::array();
  for (std::size_t i = 0; i < s.points.size(); ++i)
    pts.push_back({s.points[i].real(), s.points[i].imag(), s.chain_of[i], s.step_of[i]});
  Json out;
  out["metadata"] = std::move(meta);
  out["columns"] = {"re", "im", "chain", "step"};
  out["points"] = std::move(pts);
  return out;
}

Json as_json(const RationalOrbitResult& r) {
  Json out;
  out["preperiodic"] = r.preperiodic;
  if (r.preperiodic) {
    out["tail"] = r.tail;
    out["period"] = r.period;
  }
  return out;
}

Json as_json(const KroneckerResult& r) {
  Json out;
  out["verdict"] = to_string(r.verdict);
  if (r.verdict == Certificate::all_preperiodic) out["witness"] = {r.n1, r.n2};
  out["steps"] = r.steps;
  out["reason"] = r.reason;
  return out;
}

Json as_json(const ZeroMeasureReport& r, Json params) {
  Json out;
  out["verdict"] = r.consistent_with_zero ? "consistent-with-zero" : "positive";
  out["threshold"] = r.threshold;
  out["estimate"] = as_json(r.estimate, std::move(params));
  Json ev = Json::array();
  for (const ExactZeroEvidence& e : r.exact_evidence) {
    Json item;
    item["n"] = e.n;
    item["witness"] = {e.n1, e.n2};
    ev.push_back(std::move(item));
  }
  out["exact_evidence"] = std::move(ev);
  return out;
}

Json as_json(const RootOfUnity& u) {
  Json out;
  out["num"] = u.num;
  out["den"] = u.den;
  return out;
}

template <typename Scalar>
Json as_json(const CommutingReport<Scalar>& r) {
  Json out;
  out["beta"] = format_scalar(r.beta);
  out["f_beta"] = as_json(r.f_beta);
  out["f_beta_text"] = poly_text(r.f_beta);
  out["r"] = r.r;
  out["r_prime"] = r.r_prime;
  out["j_f_beta"] = r.j_f_beta;
  Json jt = Json::object();
  for (const auto& [n, j] : r.j_table) jt[std::to_string(n)] = j;
  out["j_table"] = std::move(jt);
  Json lin = Json::array();
  for (const Commuter& c : r.linear_commuters) lin.push_back(commuter_json(c));
  out["linear_commuters"] = std::move(lin);
  Json mn;
  mn["f_tilde_0"] = as_json(r.min_root.g);
  mn["f_tilde_0_text"] = poly_text(r.min_root.g);
  mn["k"] = r.min_root.k;
  Json com = Json::array();
  for (const Commuter& c : r.min_nonlinear) com.push_back(commuter_json(c));
  mn["commuters"] = std::move(com);
  out["min_nonlinear"] = std::move(mn);
  out["warnings"] = r.warnings;
  return out;
}

template <typename Scalar>
Json as_json(const OrderSequence<Scalar>& s) {
  Json out;
  out["alpha"] = format_scalar(s.alpha);
  Json orders = Json::array();
  for (const auto& [n, ord] : s.orders) orders.push_back({n, ord});
  out["orders"] = std::move(orders);
  out["skipped"] = s.skipped;
  out["flag"] = to_string(s.flag);
  return out;
}

template Json as_json(const CommutingReport<Rational>&);
template Json as_json(const CommutingReport<Complex>&);
template Json as_json(const OrderSequence<Rational>&);
template Json as_json(const OrderSequence<Complex>&);

}  // namespace dynmahler
