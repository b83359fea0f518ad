#include "dynmahler/roots.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace dynmahler {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

struct NewtonEval {
  Complex log_derivative;  // p'(z) / p(z); meaningless when exact_root
  double backward_error = 0.0;
  bool exact_root = false;
};

// Evaluates p'/p and the backward error at z. For |z| > 1 the reversed
// polynomial is evaluated at 1/z so that high degrees do not overflow.
NewtonEval newton_eval(const CoeffVector<Complex>& a, const Complex& z) {
  const Eigen::Index n = a.size() - 1;
  NewtonEval out;
  if (std::abs(z) <= 1.0) {
    Complex p = a(n), dp = 0.0;
    double s = std::abs(a(n));
    const double az = std::abs(z);
    for (Eigen::Index i = n - 1; i >= 0; --i) {
      dp = dp * z + p;
      p = p * z + a(i);
      s = s * az + std::abs(a(i));
    }
    out.backward_error = s > 0 ? std::abs(p) / s : 0.0;
    if (p == Complex(0.0)) {
      out.exact_root = true;
      return out;
    }
    out.log_derivative = dp / p;
    return out;
  }
  const Complex w = 1.0 / z;
  const double aw = std::abs(w);
  // q(w) = Σ a_{n-i} w^i.
  Complex q = a(0), dq = 0.0;
  double s = std::abs(a(0));
  for (Eigen::Index i = 1; i <= n; ++i) {
    dq = dq * w + q;
    q = q * w + a(i);
    s = s * aw + std::abs(a(i));
  }
  out.backward_error = s > 0 ? std::abs(q) / s : 0.0;
  if (q == Complex(0.0)) {
    out.exact_root = true;
    return out;
  }
  // p(z) = z^n q(1/z)  =>  p'/p = (n - w q'/q) / z.
  out.log_derivative = (double(n) - w * dq / q) * w;
  return out;
}

double accept_threshold(double tol, Eigen::Index n) {
  return std::max(tol, 8.0 * double(n + 1) * kEps);
}

std::vector<Complex> aberth(const CoeffVector<Complex>& a, const RootOptions& opts) {
  const Eigen::Index n = a.size() - 1;
  double maxc = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) maxc = std::max(maxc, std::abs(a(i)));
  const double radius = 1.1 * (1.0 + maxc);
  // Golden-ratio fraction of the angular spacing keeps the start configuration
  // away from any symmetry of real or pure-power inputs.
  const double offset = 0.5 * (std::sqrt(5.0) - 1.0);
  std::vector<Complex> z(n);
  for (Eigen::Index j = 0; j < n; ++j)
    z[j] = std::polar(radius, 2.0 * M_PI * (double(j) + offset) / double(n));

  const double stop = 4.0 * double(n + 1) * kEps;
  std::vector<char> done(n, 0);
  Eigen::Index remaining = n;
  int iter = 0;
  for (; iter < opts.max_iterations && remaining > 0; ++iter) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (done[j]) continue;
      const NewtonEval ev = newton_eval(a, z[j]);
      if (ev.exact_root || ev.backward_error <= stop) {
        done[j] = 1;
        --remaining;
        continue;
      }
      Complex repulsion = 0.0;
      for (Eigen::Index k = 0; k < n; ++k)
        if (k != j) {
          const Complex diff = z[j] - z[k];
          if (diff != Complex(0.0)) repulsion += 1.0 / diff;
        }
      Complex denom = ev.log_derivative - repulsion;
      if (denom == Complex(0.0)) denom = Complex(1e-3, 1e-3);
      const Complex step = 1.0 / denom;
      z[j] -= step;
      if (std::abs(step) <= 2.0 * kEps * std::abs(z[j])) {
        done[j] = 1;
        --remaining;
      }
    }
  }
  // One polishing sweep for every root.
  for (Eigen::Index j = 0; j < n; ++j) {
    const NewtonEval ev = newton_eval(a, z[j]);
    if (ev.exact_root) continue;
    Complex repulsion = 0.0;
    for (Eigen::Index k = 0; k < n; ++k)
      if (k != j && z[j] != z[k]) repulsion += 1.0 / (z[j] - z[k]);
    const Complex denom = ev.log_derivative - repulsion;
    if (denom == Complex(0.0)) continue;
    const Complex cand = z[j] - 1.0 / denom;
    if (newton_eval(a, cand).backward_error <= ev.backward_error) z[j] = cand;
  }
  return z;
}

void merge_clusters(const CoeffVector<Complex>& a, std::vector<Complex>& z,
                    double radius, double accept) {
  const std::size_t n = z.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::abs(z[i] - z[j]) <= radius * (1.0 + std::abs(z[i])))
        parent[find(j)] = find(i);
  std::vector<Complex> sum(n, 0.0);
  std::vector<int> count(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    sum[find(i)] += z[i];
    ++count[find(i)];
  }
  for (std::size_t r = 0; r < n; ++r) {
    if (count[r] < 2) continue;
    const Complex centroid = sum[r] / double(count[r]);
    if (newton_eval(a, centroid).backward_error > accept) continue;
    for (std::size_t i = 0; i < n; ++i)
      if (find(i) == r) z[i] = centroid;
  }
}

}  // namespace

double backward_error(const ComplexPoly& p, const Complex& z) {
  if (p.degree() < 1) return p.is_zero() ? 0.0 : 1.0;
  return newton_eval(p.coeffs(), z).backward_error;
}

double cauchy_bound(const ComplexPoly& p) {
  if (p.degree() < 1) return 1.0;
  const Complex lead = p.leading();
  double m = 0.0;
  for (int i = 0; i < p.degree(); ++i) m = std::max(m, std::abs(p[i] / lead));
  return 1.0 + m;
}

namespace {

// Greedy Leja ordering: each next point maximizes the product of distances to
// the points already chosen, which keeps partial products well scaled.
std::vector<Complex> leja_order(std::vector<Complex> pts) {
  if (pts.size() < 3) return pts;
  auto first = std::max_element(pts.begin(), pts.end(),
                                [](Complex a, Complex b) { return std::abs(a) < std::abs(b); });
  std::iter_swap(pts.begin(), first);
  std::vector<double> score(pts.size(), 0.0);
  for (std::size_t k = 1; k < pts.size(); ++k) {
    std::size_t best = k;
    for (std::size_t j = k; j < pts.size(); ++j) {
      score[j] += std::log(std::abs(pts[j] - pts[k - 1]) + 1e-300);
      if (score[j] > score[best]) best = j;
    }
    std::swap(pts[k], pts[best]);
    std::swap(score[k], score[best]);
  }
  return pts;
}

}  // namespace

ComplexPoly from_roots(const std::vector<Complex>& roots, Complex leading) {
  CoeffVector<Complex> c = CoeffVector<Complex>::Zero(Eigen::Index(roots.size()) + 1);
  c(0) = leading;
  Eigen::Index deg = 0;
  for (const Complex& r : leja_order(roots)) {
    // multiply by (x - r) in place
    for (Eigen::Index i = deg + 1; i >= 1; --i) c(i) = c(i - 1) - r * c(i);
    c(0) = -r * c(0);
    ++deg;
  }
  return ComplexPoly(std::move(c));
}

std::vector<Complex> find_roots(const ComplexPoly& p, const RootOptions& opts) {
  if (p.degree() < 1)
    throw InputError("find_roots: polynomial must be nonzero and nonconstant");
  for (Eigen::Index i = 0; i < p.size(); ++i)
    if (!std::isfinite(p.coeffs()(i).real()) || !std::isfinite(p.coeffs()(i).imag()))
      throw RootFindingError("find_roots: non-finite coefficient", INFINITY);

  const int zeros = lowest_nonzero_index(p);
  const Eigen::Index n = p.degree() - zeros;
  CoeffVector<Complex> a = p.coeffs().segment(zeros, n + 1) / p.leading();

  std::vector<Complex> roots;
  if (n == 1) {
    roots.push_back(-a(0));
  } else if (n > 1) {
    roots = aberth(a, opts);
    const double accept = accept_threshold(opts.tol, n);
    merge_clusters(a, roots, std::sqrt(opts.tol), accept);
    double worst = 0.0;
    for (const Complex& r : roots) worst = std::max(worst, newton_eval(a, r).backward_error);
    if (!(worst <= accept))
      throw RootFindingError("find_roots: no convergence after " +
                                 std::to_string(opts.max_iterations) +
                                 " iterations (worst backward error " +
                                 std::to_string(worst) + ")",
                             worst);
  }
  roots.insert(roots.end(), zeros, Complex(0.0));
  return roots;
}

}  // namespace dynmahler
