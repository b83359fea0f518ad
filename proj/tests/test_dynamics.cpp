#include <doctest.h>

#include <random>

#include "dynmahler/dynamics.hpp"
#include "dynmahler/orbit.hpp"
#include "dynmahler/parse.hpp"
#include "oracles.hpp"

using namespace dynmahler;

namespace {

IntPoly ip(const char* text) { return parse_poly(text).int_univariate(); }
DynamicalSystem sys_of(const char* text) { return DynamicalSystem(ip(text)); }

struct Moments {
  double mean = 0.0;
  double std_error = 0.0;
};

Moments moments(const std::vector<double>& v) {
  double sum = 0.0, sq = 0.0;
  for (double x : v) sum += x;
  const double mean = sum / v.size();
  for (double x : v) sq += (x - mean) * (x - mean);
  return {mean, std::sqrt(sq / (v.size() - 1) / v.size())};
}

}  // namespace

TEST_SUITE("dynamics") {
  TEST_CASE("escape radius") {
    CHECK(sys_of("z^2").escape_radius() == 2.0);
    CHECK(sys_of("z^2 - 2").escape_radius() == 6.0);
    CHECK(sys_of("z^14 - z^2").escape_radius() == 4.0);
    CHECK(escape_radius(ComplexPoly{Complex(0, 0.5), 0.0, 1.0}) == 3.0);
  }

  TEST_CASE("construction requires monic degree at least 2") {
    CHECK_THROWS_AS(sys_of("2z^2 + 1"), InputError);
    CHECK_THROWS_AS(sys_of("z + 1"), InputError);
    CHECK(sys_of("z^3 - z").degree() == 3);
    CHECK(sys_of("z^3 - z").is_integral());
    CHECK_FALSE(DynamicalSystem(ComplexPoly{Complex(0, 1), 0.0, 1.0}).is_integral());
  }

  TEST_CASE("digest depends only on f") {
    CHECK(sys_of("z^2 - 1").digest() == sys_of("z^2-1").digest());
    CHECK(sys_of("z^2 - 1").digest() != sys_of("z^2 - 2").digest());
  }

  TEST_CASE("iterate cache") {
    const DynamicalSystem sys = sys_of("z^2 - 1");
    CHECK(sys.iterate(3) == iterate(ip("z^2 - 1"), 3).cast<Complex>());
    CHECK(sys.iterate(0) == ComplexPoly::identity());
  }

  TEST_CASE("Green potential examples") {
    const PotentialResult pure = green_potential(sys_of("z^2"), Complex(2, 0));
    CHECK(pure.classification == OrbitClass::escaped);
    CHECK(pure.value == doctest::Approx(std::log(2.0)).epsilon(1e-12));

    const PotentialResult cheb = green_potential(sys_of("z^2 - 2"), Complex(3, 0));
    CHECK(cheb.value == doctest::Approx(std::log((3 + std::sqrt(5.0)) / 2)).epsilon(1e-11));
    CHECK(cheb.abs_error <= 1e-12);

    const PotentialResult periodic = green_potential(sys_of("z^2 - 1"), Complex(0, 0));
    CHECK(periodic.classification == OrbitClass::bounded_at_cap);
    CHECK(periodic.value == 0.0);
  }

  TEST_CASE("Green potential for large arguments avoids overflow") {
    const PotentialResult r = green_potential(sys_of("z^3 - z"), Complex(1e150, 1e150));
    CHECK(r.classification == OrbitClass::escaped);
    CHECK(std::isfinite(r.value));
    CHECK(r.value == doctest::Approx(std::log(std::abs(Complex(1e150, 1e150)))).epsilon(1e-10));
  }

  TEST_CASE("filled Julia membership") {
    CHECK(in_filled_julia(sys_of("z^2"), Complex(1.01, 0)) == Membership::outside);
    CHECK(in_filled_julia(sys_of("z^2 - 2"), Complex(1.99, 0)) == Membership::inside_at_cap);
    CHECK(in_filled_julia(sys_of("z^2 - 1"), Complex(3, 0)) == Membership::outside);
  }

  TEST_CASE("preimages") {
    CHECK(oracle::multiset_distance(preimages(sys_of("z^2"), 1.0), {1.0, -1.0}) < 1e-12);
    CHECK(oracle::multiset_distance(preimages(sys_of("z^2 - 1"), -1.0), {0.0, 0.0}) < 1e-7);
    CHECK(oracle::multiset_distance(preimages(sys_of("z^2 - 2"), 2.0), {2.0, -2.0}) < 1e-12);
  }

  TEST_CASE("property: potential is nonnegative and satisfies the functional equation") {
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> coord(-3.0, 3.0);
    const char* systems[] = {"z^2 - 1", "z^3 - z + 1", "z^2 + z - 2"};
    int escaped = 0;
    double worst = 0.0;
    for (const char* text : systems) {
      const DynamicalSystem sys = sys_of(text);
      const int d = sys.degree();
      int found = 0;
      while (found < 34) {
        const Complex z(coord(rng), coord(rng));
        const PotentialResult g = green_potential(sys, z);
        CHECK(g.value >= 0.0);
        if (g.classification != OrbitClass::escaped) continue;
        const PotentialResult gf = green_potential(sys, eval(sys.f(), z));
        const double excess = std::abs(gf.value - d * g.value) / (1 + d * g.value);
        worst = std::max(worst, excess);
        ++found;
      }
      escaped += found;
    }
    CHECK(escaped >= 100);
    CHECK(worst <= 1e-8);
  }

  TEST_CASE("property: potential vanishes exactly inside the filled Julia set") {
    const DynamicalSystem sys = sys_of("z^2 - 1");
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> coord(-1.5, 1.5);
    for (int k = 0; k < 200; ++k) {
      const Complex z(coord(rng), coord(rng));
      if (in_filled_julia(sys, z, 20000) == Membership::inside_at_cap)
        CHECK(green_potential(sys, z, 1e-12, 20000).value == 0.0);
    }
  }

  TEST_CASE("equilibrium sample on the unit circle") {
    SampleOptions opts;
    opts.count = 10000;
    const MeasureSample s = sample_equilibrium(sys_of("z^2"), opts);
    REQUIRE(s.points.size() == 10000);
    Complex mean = 0.0;
    double worst = 0.0;
    for (const Complex& z : s.points) {
      worst = std::max(worst, std::abs(std::abs(z) - 1.0));
      mean += z;
    }
    CHECK(worst < 1e-6);
    CHECK(std::abs(mean / 10000.0) < 0.05);
    CHECK(s.seed == 0xD1CE);
    CHECK(s.chains == 16);
    CHECK(s.system_digest == sys_of("z^2").digest());
  }

  TEST_CASE("equilibrium sample for the Chebyshev map follows the arcsine law") {
    SampleOptions opts;
    opts.count = 10000;
    const MeasureSample s = sample_equilibrium(sys_of("z^2 - 2"), opts);
    double second = 0.0;
    bool on_segment = true;
    for (const Complex& z : s.points) {
      if (std::abs(z.imag()) > 1e-6 || std::abs(z.real()) > 2 + 1e-6) on_segment = false;
      second += std::norm(z);
    }
    CHECK(on_segment);
    CHECK(std::abs(second / s.points.size() - oracle::arcsine_second_moment()) < 0.1);
  }

  TEST_CASE("sampling is deterministic per seed") {
    SampleOptions opts;
    opts.count = 2000;
    opts.seed = 99;
    const DynamicalSystem sys = sys_of("z^3 - z + 1");
    const MeasureSample a = sample_equilibrium(sys, opts);
    const MeasureSample b = sample_equilibrium(sys, opts);
    CHECK(a.points == b.points);
    CHECK(a.chain_of == b.chain_of);
    opts.seed = 100;
    CHECK(sample_equilibrium(sys, opts).points != a.points);
  }

  TEST_CASE("sample options are validated") {
    SampleOptions opts;
    opts.count = 0;
    CHECK_THROWS_AS(sample_equilibrium(sys_of("z^2"), opts), InputError);
    opts.count = 10;
    opts.burn_in = 4;
    CHECK_THROWS_AS(sample_equilibrium(sys_of("z^2"), opts), InputError);
  }

  TEST_CASE("CSV export") {
    SampleOptions opts;
    opts.count = 3;
    opts.chains = 1;
    const std::string csv = sample_to_csv(sample_equilibrium(sys_of("z^2"), opts));
    CHECK(csv.rfind("re,im,chain,step\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
  }

  TEST_CASE("property: measure invariance under one backward step") {
    const DynamicalSystem sys = sys_of("z^2 - 1");
    SampleOptions opts;
    opts.count = 20000;
    const MeasureSample s = sample_equilibrium(sys, opts);
    std::mt19937_64 rng(31337);
    std::vector<Complex> stepped;
    stepped.reserve(s.points.size());
    for (const Complex& z : s.points) stepped.push_back(random_preimage(sys, z, rng));

    const std::function<double(const Complex&)> tests[] = {
        [](const Complex& z) { return z.real(); },
        [](const Complex& z) { return z.imag(); },
        [](const Complex& z) { return std::norm(z); },
        [](const Complex& z) { return (z * z * z).real(); },
    };
    for (const auto& F : tests) {
      std::vector<double> a, b;
      for (std::size_t i = 0; i < s.points.size(); ++i) {
        a.push_back(F(s.points[i]));
        b.push_back(F(stepped[i]));
      }
      const Moments ma = moments(a), mb = moments(b);
      const double combined = std::hypot(ma.std_error, mb.std_error);
      CHECK(std::abs(ma.mean - mb.mean) <= 4 * combined + 1e-12);
    }
  }

  TEST_CASE("tree integration examples") {
    const DynamicalSystem square = sys_of("z^2");
    const double log_term = integrate_measure_tree(
        square, [](const Complex& z) { return std::log(std::abs(z - 2.0)); }, 12, 3.0);
    CHECK(std::abs(log_term - std::log(2.0)) < 1e-3);
    const double re = integrate_measure_tree(square, [](const Complex& z) { return z.real(); },
                                             12, 3.0);
    CHECK(std::abs(re) < 1e-6);

    const double moment = integrate_measure_tree(
        sys_of("z^2 - 2"), [](const Complex& z) { return std::norm(z); }, 12, 3.0);
    CHECK(std::abs(moment - oracle::arcsine_second_moment()) < 1e-2);
  }

  TEST_CASE("tree integration respects the leaf cap") {
    CHECK_THROWS_AS(integrate_measure_tree(sys_of("z^2"), [](const Complex&) { return 1.0; },
                                           15, 3.0),
                    CapExceeded);
  }

  TEST_CASE("property: tree and Monte Carlo agree") {
    const DynamicalSystem sys = sys_of("z^3 - z + 1");
    const auto F = [](const Complex& z) { return std::cos(z.real()) + 0.5 * std::sin(z.imag()); };
    const double tree = integrate_measure_tree(sys, F, 8, Complex(sys.escape_radius(), 0));
    SampleOptions opts;
    opts.count = 100000;
    const MeasureSample s = sample_equilibrium(sys, opts);
    std::vector<double> v;
    for (const Complex& z : s.points) v.push_back(F(z));
    const Moments m = moments(v);
    CHECK(std::abs(tree - m.mean) <= 3 * m.std_error + 1e-2);
  }

  TEST_CASE("rational orbits") {
    const RationalOrbitResult cycle = is_preperiodic_rational(sys_of("z^2 - 1"), Rational(0));
    CHECK(cycle.preperiodic);
    CHECK(cycle.tail == 0);
    CHECK(cycle.period == 2);

    CHECK_FALSE(is_preperiodic_rational(sys_of("z^2"), Rational(2)).preperiodic);

    const RationalOrbitResult tail = is_preperiodic_rational(sys_of("z^2 - 2"), Rational(0));
    CHECK(tail.preperiodic);
    CHECK(tail.tail == 2);
    CHECK(tail.period == 1);

    CHECK_FALSE(is_preperiodic_rational(sys_of("z^2 - 1"), Rational(1, 2)).preperiodic);
  }

  TEST_CASE("Kronecker certificates") {
    const KroneckerResult yes = all_roots_preperiodic(sys_of("z^2 - 1"), ip("x^2 + x"));
    CHECK(yes.verdict == Certificate::all_preperiodic);
    CHECK(yes.n1 == 0);
    CHECK(yes.n2 == 1);

    CHECK(all_roots_preperiodic(sys_of("z^2"), ip("x - 2")).verdict ==
          Certificate::not_all_preperiodic);

    const KroneckerResult cyclo =
        all_roots_preperiodic(sys_of("z^2"), ip("x^4 + x^3 + x^2 + x + 1"));
    CHECK(cyclo.verdict == Certificate::all_preperiodic);
    CHECK(cyclo.n1 < cyclo.n2);
    CHECK(orbit_poly(ip("x^4 + x^3 + x^2 + x + 1"), ip("z^2"), cyclo.n1) ==
          orbit_poly(ip("x^4 + x^3 + x^2 + x + 1"), ip("z^2"), cyclo.n2));
  }

  TEST_CASE("Kronecker edge cases") {
    // Content is stripped; a non-unit leading coefficient means a non-integral root.
    CHECK(all_roots_preperiodic(sys_of("z^2 - 1"), ip("3x^2 + 3x")).verdict ==
          Certificate::all_preperiodic);
    CHECK(all_roots_preperiodic(sys_of("z^2 - 1"), ip("2x - 1")).verdict ==
          Certificate::not_all_preperiodic);
    CHECK(all_roots_preperiodic(sys_of("z^2 - 2"), ip("x^2 - 2x + 1")).verdict ==
          Certificate::all_preperiodic);
    const KroneckerResult capped = all_roots_preperiodic(sys_of("z^2"), ip("x - 1"), 0);
    CHECK(capped.verdict == Certificate::inconclusive);
  }

  TEST_CASE("property: rational orbits agree with orbit-polynomial certificates") {
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<int> num(-20, 20), den(1, 20);
    const char* systems[] = {"z^2 - 1", "z^2 - 2", "z^3 - z"};
    for (const char* text : systems) {
      const DynamicalSystem sys = sys_of(text);
      for (int k = 0; k < 50; ++k) {
        const Rational alpha(num(rng), den(rng));
        // Minimal polynomial of α with the denominator cleared: q x − p.
        CoeffVector<BigInt> c(2);
        c << -numerator(alpha), denominator(alpha);
        const bool exact = is_preperiodic_rational(sys, alpha).preperiodic;
        const Certificate cert = all_roots_preperiodic(sys, IntPoly(std::move(c))).verdict;
        CAPTURE(text);
        CAPTURE(alpha);
        CHECK(cert != Certificate::inconclusive);
        CHECK(exact == (cert == Certificate::all_preperiodic));
      }
    }
  }
}
