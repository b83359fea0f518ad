#include "dynmahler/dynamics.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "dynmahler/orbit.hpp"
#include "dynmahler/parse.hpp"

namespace dynmahler {

double escape_radius(const ComplexPoly& f) {
  double sum = 0.0;
  for (int i = 0; i < f.degree(); ++i) sum += std::abs(f[i]);
  return std::max(1.0, 2.0 * (1.0 + sum));
}

DynamicalSystem::DynamicalSystem(const IntPoly& f)
    : f_(f.cast<Complex>()), exact_(f) {
  if (f.degree() < 2 || f.leading() != 1)
    throw InputError("dynamical system must be monic of degree >= 2");
  init();
}

DynamicalSystem::DynamicalSystem(const ComplexPoly& f) : f_(f) {
  if (f.degree() < 2 || f.leading() != Complex(1.0))
    throw InputError("dynamical system must be monic of degree >= 2");
  init();
}

DynamicalSystem::DynamicalSystem(const DynamicalSystem& other)
    : f_(other.f_), exact_(other.exact_), radius_(other.radius_),
      lower_sum_(other.lower_sum_) {}

void DynamicalSystem::init() {
  radius_ = dynmahler::escape_radius(f_);
  lower_sum_ = 0.0;
  for (int i = 0; i < f_.degree(); ++i) lower_sum_ += std::abs(f_[i]);
}

const ComplexPoly& DynamicalSystem::iterate(int n) const {
  std::lock_guard<std::mutex> lock(cache_mutex_);
  auto it = cache_.find(n);
  if (it != cache_.end()) return it->second;
  return cache_.emplace(n, dynmahler::iterate(f_, n)).first->second;
}

std::uint64_t DynamicalSystem::digest() const {
  const std::string text = exact_ ? to_string(*exact_) : to_string(f_);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

Complex DynamicalSystem::normalized_ratio(const Complex& z) const {
  const Complex u = 1.0 / z;
  const int d = f_.degree();
  Complex acc = 0.0;
  for (int k = d; k >= 0; --k) acc = acc * u + f_[d - k];
  return acc;
}

PotentialResult green_potential(const DynamicalSystem& sys, const Complex& z,
                                double tol, int n_cap) {
  if (!(tol > 0)) throw InputError("green_potential: tol must be positive");
  PotentialResult out;
  const double R = sys.escape_radius();
  const double d = sys.degree();
  Complex w = z;
  int N = 0;
  while (std::abs(w) <= R) {
    if (N >= n_cap) {
      out.iterations = N;
      out.classification = OrbitClass::bounded_at_cap;
      return out;
    }
    w = eval(sys.f(), w);
    ++N;
  }
  out.classification = OrbitClass::escaped;

  double scale = std::pow(d, -N);
  double value = scale * std::log(std::abs(w));
  const double A = sys.lower_coeff_sum();
  int k = 0;
  double tail = 0.0;
  for (;; ++k) {
    const double aw = std::abs(w);
    tail = 2.0 * scale / d * (-std::log1p(-A / aw));
    if (tail < tol) break;
    const Complex ratio = sys.normalized_ratio(w);
    value += scale / d * std::log(std::abs(ratio));
    const Complex next = std::pow(w, int(d)) * ratio;
    scale /= d;
    if (!std::isfinite(next.real()) || !std::isfinite(next.imag())) {
      tail = 2.0 * scale / d * (-std::log1p(-A / aw));
      ++k;
      break;
    }
    w = next;
  }
  out.value = std::max(0.0, value);
  out.abs_error = tail;
  out.iterations = N + k;
  return out;
}

Membership in_filled_julia(const DynamicalSystem& sys, const Complex& z, int n_cap) {
  const double R = sys.escape_radius();
  Complex w = z;
  for (int n = 0; n <= n_cap; ++n) {
    if (std::abs(w) > R) return Membership::outside;
    if (n < n_cap) w = eval(sys.f(), w);
  }
  return Membership::inside_at_cap;
}

std::vector<Complex> preimages(const DynamicalSystem& sys, const Complex& w,
                               const RootOptions& opts) {
  CoeffVector<Complex> c = sys.f().coeffs();
  c(0) -= w;
  return find_roots(ComplexPoly(std::move(c)), opts);
}

MeasureSample sample_equilibrium(const DynamicalSystem& sys, const SampleOptions& opts) {
  if (opts.count == 0) throw InputError("sample_equilibrium: count must be positive");
  if (opts.burn_in < 16) throw InputError("sample_equilibrium: burn_in must be at least 16");
  if (opts.chains < 1) throw InputError("sample_equilibrium: chains must be positive");

  MeasureSample out;
  out.seed = opts.seed;
  out.chains = opts.chains;
  out.burn_in = opts.burn_in;
  out.system_digest = sys.digest();
  out.points.reserve(opts.count);
  out.chain_of.reserve(opts.count);
  out.step_of.reserve(opts.count);

  const std::size_t per = opts.count / std::size_t(opts.chains);
  const std::size_t extra = opts.count % std::size_t(opts.chains);
  const Complex start(sys.escape_radius(), 0.0);

  for (int c = 0; c < opts.chains; ++c) {
    const std::size_t length = per + (std::size_t(c) < extra ? 1 : 0);
    if (length == 0) continue;
    std::vector<Complex> chain;
    chain.reserve(length);
    for (int attempt = 0;; ++attempt) {
      if (attempt > opts.max_restarts)
        throw NumericalError("sample_equilibrium: chain " + std::to_string(c) +
                             " failed after repeated restarts");
      const std::uint64_t sub = opts.seed ^ std::uint64_t(c) ^ (std::uint64_t(attempt) << 32);
      std::mt19937_64 rng(sub);
      chain.clear();
      try {
        Complex z = start;
        for (std::size_t s = 0; s < std::size_t(opts.burn_in) + length; ++s) {
          z = random_preimage(sys, z, rng, opts.roots);
          if (s >= std::size_t(opts.burn_in)) chain.push_back(z);
        }
        break;
      } catch (const NumericalError&) {
        ++out.restarts;
      }
    }
    for (std::size_t s = 0; s < chain.size(); ++s) {
      out.points.push_back(chain[s]);
      out.chain_of.push_back(c);
      out.step_of.push_back(int(s));
    }
  }
  return out;
}

std::string sample_to_csv(const MeasureSample& s) {
  std::ostringstream os;
  os.precision(17);
  os << "re,im,chain,step\n";
  for (std::size_t i = 0; i < s.points.size(); ++i)
    os << s.points[i].real() << ',' << s.points[i].imag() << ',' << s.chain_of[i] << ','
       << s.step_of[i] << '\n';
  return os.str();
}

double integrate_measure_tree(const DynamicalSystem& sys,
                              const std::function<double(const Complex&)>& F,
                              int depth, const Complex& z0, std::int64_t max_leaves,
                              const RootOptions& opts) {
  if (depth < 0) throw InputError("integrate_measure_tree: negative depth");
  std::int64_t leaves = 1;
  for (int k = 0; k < depth; ++k) {
    leaves *= sys.degree();
    if (leaves > max_leaves)
      throw CapExceeded("integrate_measure_tree: d^n = " + std::to_string(leaves) +
                        "+ exceeds the leaf cap " + std::to_string(max_leaves));
  }
  std::vector<Complex> level{z0};
  for (int k = 0; k < depth; ++k) {
    std::vector<Complex> next;
    next.reserve(level.size() * std::size_t(sys.degree()));
    for (const Complex& w : level) {
      const std::vector<Complex> pre = preimages(sys, w, opts);
      next.insert(next.end(), pre.begin(), pre.end());
    }
    level = std::move(next);
  }
  double sum = 0.0;
  for (const Complex& w : level) sum += F(w);
  return sum / double(level.size());
}

namespace {

BigInt exact_escape_radius(const IntPoly& f) {
  BigInt sum = 0;
  for (int i = 0; i < f.degree(); ++i) sum += abs(f.coeffs()(i));
  return 2 * (1 + sum);
}

const IntPoly& require_integral(const DynamicalSystem& sys, const char* who) {
  if (!sys.is_integral())
    throw InputError(std::string(who) + ": requires a map with integer coefficients");
  return *sys.exact();
}

}  // namespace

RationalOrbitResult is_preperiodic_rational(const DynamicalSystem& sys, const Rational& alpha) {
  const IntPoly& f = require_integral(sys, "is_preperiodic_rational");
  RationalOrbitResult out;
  // Under a monic integral map the denominator of a non-integer point is
  // raised to the d-th power at every step, so its orbit never repeats.
  if (denominator(alpha) != 1) return out;
  const BigInt R = exact_escape_radius(f);
  std::map<BigInt, int> seen;
  BigInt a = numerator(alpha);
  for (int k = 0;; ++k) {
    if (abs(a) > R) return out;
    auto [it, inserted] = seen.emplace(a, k);
    if (!inserted) {
      out.preperiodic = true;
      out.tail = it->second;
      out.period = k - it->second;
      return out;
    }
    a = eval(f, a);
  }
}

KroneckerResult all_roots_preperiodic(const DynamicalSystem& sys, const IntPoly& p, int n_max) {
  const IntPoly& f = require_integral(sys, "all_roots_preperiodic");
  if (p.degree() < 1) throw InputError("all_roots_preperiodic: P must be nonconstant");
  KroneckerResult out;

  const BigInt c = content(p);
  IntPoly prim(CoeffVector<BigInt>(p.coeffs() / c));
  if (abs(prim.leading()) != 1) {
    out.verdict = Certificate::not_all_preperiodic;
    out.reason = "primitive part has non-unit leading coefficient";
    return out;
  }
  IntPoly cur = monic_normalized(prim);
  const int D = cur.degree();

  const BigInt R = exact_escape_radius(f);
  std::vector<BigInt> bound(D + 1);
  {
    BigInt binom = 1, rpow = 1;
    for (int k = 0; k <= D; ++k) {
      bound[k] = binom * rpow;
      binom = binom * (D - k) / (k + 1);
      rpow *= R;
    }
  }

  std::map<std::vector<BigInt>, int> seen;
  for (int n = 0;; ++n) {
    out.steps = n;
    for (int k = 1; k <= D; ++k)
      if (abs(cur.coeffs()(D - k)) > bound[k]) {
        out.verdict = Certificate::not_all_preperiodic;
        out.reason = "coefficient bound exceeded at step " + std::to_string(n);
        return out;
      }
    std::vector<BigInt> key(cur.coeffs().data(), cur.coeffs().data() + cur.size());
    auto [it, inserted] = seen.emplace(std::move(key), n);
    if (!inserted) {
      out.verdict = Certificate::all_preperiodic;
      out.n1 = it->second;
      out.n2 = n;
      out.reason = "orbit polynomial repeated";
      return out;
    }
    if (n >= n_max) break;
    cur = orbit_step(cur, f);
  }
  out.verdict = Certificate::inconclusive;
  out.reason = "step limit reached";
  return out;
}

}  // namespace dynmahler
