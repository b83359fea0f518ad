#include "dynmahler/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>

#include "dynmahler/json_io.hpp"
#include "dynmahler/parse.hpp"

namespace dynmahler::cli {
namespace {

struct RunConfig {
  std::string f_text;
  std::string p_text;
  std::string method = "auto";
  std::string z_text = "0";
  std::string alpha_text = "0";
  std::string beta_text = "2";
  std::string format = "json";
  std::string out_path;
  int n = 0;
  int m = 0;
  int u = 0;
  int d = 2;
  int depth = 12;
  int max_n = 12;
  int terms = 4;
  int order_threshold = kDefaultOrderThreshold;
  int track = -1;
  int n_small = 2;
  int steps = kDefaultKroneckerSteps;
  bool check = false;
  std::size_t count = 100000;
  int burn_in = 64;
  int chains = 16;
  std::uint64_t seed = 0xD1CE;
  double tol = 1e-10;
  double threshold = 0.02;
  std::int64_t max_degree = std::int64_t(1) << 14;
  int n_cap = kDefaultOrbitCap;
};

DynamicalSystem make_system(const std::string& text) {
  if (text.empty()) throw InputError("--f is required");
  const ParsedPoly parsed = parse_poly(text);
  if (parsed.is_bivariate()) throw InputError("f must be univariate");
  if (parsed.is_integer()) return DynamicalSystem(parsed.int_univariate());
  return DynamicalSystem(parsed.complex_univariate());
}

ParsedPoly parse_p(const std::string& text) {
  if (text.empty()) throw InputError("--P is required");
  return parse_poly(text);
}

SampleOptions sample_options(const RunConfig& cfg) {
  SampleOptions s;
  s.count = cfg.count;
  s.seed = cfg.seed;
  s.burn_in = cfg.burn_in;
  s.chains = cfg.chains;
  return s;
}

UnivariateOptions univariate_options(const RunConfig& cfg) {
  UnivariateOptions u;
  u.tol = cfg.tol;
  u.n_cap = cfg.n_cap;
  return u;
}

Json base_params(const RunConfig& cfg) {
  Json p;
  if (!cfg.f_text.empty()) p["f"] = cfg.f_text;
  if (!cfg.p_text.empty()) p["P"] = cfg.p_text;
  return p;
}

Json cmd_measure(const RunConfig& cfg) {
  const ParsedPoly P = parse_p(cfg.p_text);
  std::string method = cfg.method;
  if (method == "auto") method = P.is_bivariate() ? "mc" : "jensen";
  Json params = base_params(cfg);

  if (method == "classical") {
    if (P.is_bivariate()) throw InputError("classical measure needs a univariate P");
    MeasureEstimate est;
    est.value = mahler_classical(P.complex_univariate());
    Json out = as_json(est, std::move(params));
    out["method"] = "classical";
    return out;
  }

  const DynamicalSystem sys = make_system(cfg.f_text);
  if (method == "jensen") {
    if (P.is_bivariate()) throw InputError("jensen needs a univariate P; use --method mc");
    params["tol"] = cfg.tol;
    return as_json(dyn_mahler_univariate(sys, P.complex_univariate(), univariate_options(cfg)),
                   std::move(params));
  }
  if (method == "mc" || method == "mc-naive") {
    BivariateOptions opts;
    opts.sample = sample_options(cfg);
    opts.univariate = univariate_options(cfg);
    opts.naive = method == "mc-naive";
    params["count"] = cfg.count;
    params["burn_in"] = cfg.burn_in;
    params["chains"] = cfg.chains;
    return as_json(dyn_mahler_bivariate_mc(sys, P.complex_bivariate(), opts), std::move(params));
  }
  if (method == "boyd-lawton") {
    const MeasureEstimate est =
        P.is_integer()
            ? dyn_mahler_boyd_lawton(sys, P.int_bivariate(), cfg.n, cfg.max_degree,
                                     univariate_options(cfg))
            : dyn_mahler_boyd_lawton(sys, P.complex_bivariate(), cfg.n, cfg.max_degree,
                                     univariate_options(cfg));
    return as_json(est, std::move(params));
  }
  if (method == "tree") {
    if (P.is_bivariate()) throw InputError("tree needs a univariate P");
    const ComplexPoly p = P.complex_univariate();
    MeasureEstimate est;
    est.method = MeasureMethod::tree;
    est.n_points = cfg.depth;
    est.value = integrate_measure_tree(
        sys, [&](const Complex& w) { return std::log(std::abs(eval(p, w))); }, cfg.depth,
        Complex(sys.escape_radius(), 0.0), cfg.max_degree);
    return as_json(est, std::move(params));
  }
  throw InputError("unknown method '" + method + "'");
}

Json cmd_potential(const RunConfig& cfg) {
  const DynamicalSystem sys = make_system(cfg.f_text);
  const Complex z = parse_complex_literal(cfg.z_text);
  Json out = as_json(green_potential(sys, z, cfg.tol, cfg.n_cap));
  out["z"] = format_scalar(z);
  out["escape_radius"] = sys.escape_radius();
  return out;
}

Json cmd_kronecker(const RunConfig& cfg) {
  const DynamicalSystem sys = make_system(cfg.f_text);
  if (!sys.is_integral()) throw InputError("kronecker needs f with integer coefficients");
  if (cfg.p_text.empty()) {
    const Rational alpha = parse_rational_literal(cfg.alpha_text);
    Json out = as_json(is_preperiodic_rational(sys, alpha));
    out["alpha"] = format_scalar(alpha);
    return out;
  }
  const ParsedPoly P = parse_p(cfg.p_text);
  if (!P.is_integer() || P.is_bivariate())
    throw InputError("kronecker needs a univariate P with integer coefficients");
  const KroneckerResult r = all_roots_preperiodic(sys, P.int_univariate(), cfg.steps);
  Json out = as_json(r);
  if (r.verdict == Certificate::inconclusive) out["inconclusive"] = true;
  return out;
}

Json cmd_commuting(const RunConfig& cfg) {
  const DynamicalSystem sys = make_system(cfg.f_text);
  if (sys.is_integral()) {
    Json out = as_json(commuting_report(sys.exact()->cast<Rational>(), cfg.terms));
    return out;
  }
  return as_json(commuting_report(sys.f(), cfg.terms));
}

Json cmd_zero_family(const RunConfig& cfg) {
  const DynamicalSystem sys = make_system(cfg.f_text);
  const ZeroFamily fam = sys.is_integral()
                             ? zero_family(sys.exact()->cast<Rational>(), cfg.n, cfg.m, cfg.u,
                                           cfg.max_degree)
                             : zero_family(sys.f(), cfg.n, cfg.m, cfg.u, cfg.max_degree);
  Json out;
  if (fam.exact) {
    out["poly"] = as_json(*fam.exact);
    out["text"] = to_string(*fam.exact);
  } else {
    out["poly"] = as_json(fam.poly);
    out["text"] = to_string(fam.poly);
  }
  out["integral"] = fam.exact.has_value();
  if (cfg.check) {
    if (!fam.exact) throw InputError("--check needs an integral family member");
    ZeroCheckOptions opts;
    opts.mc.sample = sample_options(cfg);
    opts.mc.univariate = univariate_options(cfg);
    opts.threshold = cfg.threshold;
    opts.n_small = cfg.n_small;
    opts.max_degree = cfg.max_degree;
    out["check"] = as_json(zero_measure_check(sys, *fam.exact, opts));
  }
  return out;
}

Json cmd_zero_check(const RunConfig& cfg) {
  const DynamicalSystem sys = make_system(cfg.f_text);
  const ParsedPoly P = parse_p(cfg.p_text);
  if (!P.is_integer()) throw InputError("zero-check needs P with integer coefficients");
  ZeroCheckOptions opts;
  opts.mc.sample = sample_options(cfg);
  opts.mc.univariate = univariate_options(cfg);
  opts.threshold = cfg.threshold;
  opts.n_small = cfg.n_small;
  opts.max_degree = cfg.max_degree;
  return as_json(zero_measure_check(sys, P.int_bivariate(), opts), base_params(cfg));
}

template <typename Scalar>
Json bop_report(const Poly<Scalar>& f, const BivarPoly<Scalar>& P, const Scalar& alpha,
                const RunConfig& cfg) {
  Json out = as_json(order_sequence(f, P, alpha, cfg.max_n, cfg.order_threshold, cfg.max_degree));
  const Poly<Scalar> fa = affine_conjugate(f, Scalar(1), alpha);
  if (dynmahler::is_zero(fa[0])) {
    try {
      const DistinguishingIndex di = distinguishing_index(fa);
      out["distinguishing_index"] = di.index;
      out["multiplier_class"] = to_string(di.kind);
      if (cfg.track < 0) {
        Json track = Json::array();
        for (const Scalar& c : coefficient_track(fa, di.index, cfg.max_n))
          track.push_back(format_scalar(c));
        out["track"] = std::move(track);
      }
    } catch (const InputError& e) {
      out["distinguishing_index_error"] = e.what();
    }
  }
  if (cfg.track >= 0) {
    Json track = Json::array();
    for (const Scalar& c : coefficient_track(fa, cfg.track, cfg.max_n))
      track.push_back(format_scalar(c));
    out["track"] = std::move(track);
  }
  return out;
}

Json cmd_bop(const RunConfig& cfg) {
  const DynamicalSystem sys = make_system(cfg.f_text);
  const ParsedPoly P = parse_p(cfg.p_text);
  std::optional<Rational> alpha_q;
  try {
    alpha_q = parse_rational_literal(cfg.alpha_text);
  } catch (const InputError&) {
  }
  if (sys.is_integral() && P.is_integer() && alpha_q) {
    const RationalPoly f = sys.exact()->cast<Rational>();
    const BivarPoly<Rational> p = P.int_bivariate().cast<Rational>();
    return bop_report(f, p, *alpha_q, cfg);
  }
  return bop_report(sys.f(), P.complex_bivariate(), parse_complex_literal(cfg.alpha_text), cfg);
}

Json cmd_cheby(const RunConfig& cfg) {
  const ParsedPoly P = parse_p(cfg.p_text);
  if (P.is_bivariate()) throw InputError("cheby needs a univariate P");
  const Complex alpha = parse_complex_literal(cfg.alpha_text);
  const Complex beta = parse_complex_literal(cfg.beta_text);
  MeasureEstimate est;
  est.method = MeasureMethod::cheby_closed_form;
  est.value = cheby_closed_form(alpha, beta, cfg.d, P.complex_univariate());
  Json params = base_params(cfg);
  params["alpha"] = format_scalar(alpha);
  params["beta"] = format_scalar(beta);
  params["d"] = cfg.d;
  return as_json(est, std::move(params));
}

std::string render_text(const Json& report) {
  if (report.contains("value") && report.contains("method")) {
    std::ostringstream os;
    os.precision(12);
    os << report["method"].get<std::string>() << ": " << report["value"].get<double>();
    if (report["stderr"].get<double>() > 0) os << " +/- " << report["stderr"].get<double>();
    os << '\n';
    return os.str();
  }
  return report.dump(2) + "\n";
}

void add_common(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--f", cfg.f_text, "monic polynomial map, e.g. \"z^2-1\"");
  sub->add_option("--format", cfg.format, "json, text or csv")
      ->check(CLI::IsMember({"json", "text", "csv"}));
  sub->add_option("--out", cfg.out_path, "write the report to this file");
  sub->add_option("--tol", cfg.tol, "potential / root tolerance")->envname("JM_TOL");
  sub->add_option("--n-cap", cfg.n_cap, "orbit iteration cap")->envname("JM_N_CAP");
  sub->add_option("--max-degree", cfg.max_degree, "degree cap for specializations")
      ->envname("JM_MAX_DEGREE");
}

void add_sampling(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--seed", cfg.seed, "random seed")->envname("JM_SEED");
  sub->add_option("--count", cfg.count, "number of sample points")->envname("JM_COUNT");
  sub->add_option("--burn-in", cfg.burn_in, "discarded steps per chain")->envname("JM_BURN_IN");
  sub->add_option("--chains", cfg.chains, "independent backward chains")->envname("JM_CHAINS");
}

}  // namespace

int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Dynamical Mahler measures of polynomials", "dynmahler"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto* measure = app.add_subcommand("measure", "Mahler measure of P relative to f");
  add_common(measure, cfg);
  add_sampling(measure, cfg);
  measure->add_option("--P", cfg.p_text, "polynomial in x (and y)");
  measure->add_option("--method", cfg.method,
                      "auto, jensen, mc, mc-naive, boyd-lawton, tree, classical");
  measure->add_option("--n", cfg.n, "iterate index for boyd-lawton");
  measure->add_option("--depth", cfg.depth, "preimage tree depth");

  auto* potential = app.add_subcommand("potential", "Green's function of f at z");
  add_common(potential, cfg);
  potential->add_option("--z", cfg.z_text, "point, e.g. 3 or (1.5-2i)")->required();

  auto* sample = app.add_subcommand("sample", "equilibrium-measure sample points");
  add_common(sample, cfg);
  add_sampling(sample, cfg);

  auto* kron = app.add_subcommand("kronecker", "exact preperiodicity certificate");
  add_common(kron, cfg);
  kron->add_option("--P", cfg.p_text, "integer polynomial whose roots are tested");
  kron->add_option("--alpha", cfg.alpha_text, "rational point, used when --P is absent");
  kron->add_option("--steps", cfg.steps, "orbit-polynomial step limit");

  auto* comm = app.add_subcommand("commuting", "commuting-polynomial report");
  add_common(comm, cfg);
  comm->add_option("--terms", cfg.terms, "number of j(f^n) entries");

  auto* fam = app.add_subcommand("zero-family", "member of a measure-zero family");
  add_common(fam, cfg);
  add_sampling(fam, cfg);
  fam->add_option("--n", cfg.n, "x-side iterate");
  fam->add_option("--m", cfg.m, "y-side iterate");
  fam->add_option("--u", cfg.u, "index of the root of unity");
  fam->add_flag("--check", cfg.check, "run the zero-measure check on the result");
  fam->add_option("--threshold", cfg.threshold, "zero-measure threshold")
      ->envname("JM_THRESHOLD");
  fam->add_option("--n-small", cfg.n_small, "specializations tried for exact evidence");

  auto* zcheck = app.add_subcommand("zero-check", "is m_f(P) zero?");
  add_common(zcheck, cfg);
  add_sampling(zcheck, cfg);
  zcheck->add_option("--P", cfg.p_text, "integer polynomial in x and y");
  zcheck->add_option("--threshold", cfg.threshold, "zero-measure threshold")
      ->envname("JM_THRESHOLD");
  zcheck->add_option("--n-small", cfg.n_small, "specializations tried for exact evidence");

  auto* bop = app.add_subcommand("bop", "orders of vanishing of P(x, f^n(x))");
  add_common(bop, cfg);
  bop->add_option("--P", cfg.p_text, "polynomial in x and y");
  bop->add_option("--alpha", cfg.alpha_text, "base point");
  bop->add_option("--max-n", cfg.max_n, "largest n");
  bop->add_option("--order-threshold", cfg.order_threshold, "flag orders above this");
  bop->add_option("--track", cfg.track, "coefficient index to track");

  auto* cheby = app.add_subcommand("cheby", "closed form for Chebyshev-type maps");
  add_common(cheby, cfg);
  cheby->add_option("--P", cfg.p_text, "univariate polynomial");
  cheby->add_option("--alpha", cfg.alpha_text, "left end of the Julia segment");
  cheby->add_option("--beta", cfg.beta_text, "right end of the Julia segment");
  cheby->add_option("--d", cfg.d, "degree of the map");

  std::reverse(args.begin(), args.end());
  try {
    app.parse(std::move(args));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }

  CLI::App* chosen = app.get_subcommands().front();
  const std::string command = chosen->get_name();
  try {
    std::string rendered;
    bool inconclusive = false;
    if (command == "sample") {
      const DynamicalSystem sys = make_system(cfg.f_text);
      const MeasureSample s = sample_equilibrium(sys, sample_options(cfg));
      const bool csv = cfg.format == "csv" ||
                       (cfg.format == "json" && cfg.out_path.size() > 4 &&
                        cfg.out_path.compare(cfg.out_path.size() - 4, 4, ".csv") == 0);
      rendered = csv ? sample_to_csv(s) : as_json(s, sys).dump(2) + "\n";
    } else {
      if (cfg.format == "csv") throw InputError("csv output is only available for sample");
      Json report;
      if (command == "measure") report = cmd_measure(cfg);
      else if (command == "potential") report = cmd_potential(cfg);
      else if (command == "kronecker") report = cmd_kronecker(cfg);
      else if (command == "commuting") report = cmd_commuting(cfg);
      else if (command == "zero-family") report = cmd_zero_family(cfg);
      else if (command == "zero-check") report = cmd_zero_check(cfg);
      else if (command == "bop") report = cmd_bop(cfg);
      else if (command == "cheby") report = cmd_cheby(cfg);
      if (report.contains("inconclusive")) {
        report.erase("inconclusive");
        inconclusive = true;
      }
      rendered = cfg.format == "text" ? render_text(report) : report.dump(2) + "\n";
    }
    if (cfg.out_path.empty()) {
      out << rendered;
    } else {
      std::ofstream file(cfg.out_path, std::ios::binary);
      if (!file) throw InputError("cannot open " + cfg.out_path);
      file << rendered;
    }
    return inconclusive ? kInconclusive : kOk;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << '\n';
    return kInputError;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumericalFailure;
  } catch (const VerificationError& e) {
    err << "verification failure: " << e.what() << '\n';
    return kNumericalFailure;
  }
}

}  // namespace dynmahler::cli
