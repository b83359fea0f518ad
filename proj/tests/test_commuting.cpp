#include <doctest.h>

#include <numeric>

#include "dynmahler/commuting.hpp"
#include "dynmahler/mahler.hpp"
#include "dynmahler/parse.hpp"
#include "oracles.hpp"

using namespace dynmahler;

namespace {

IntPoly ip(const char* text) { return parse_poly(text).int_univariate(); }
RationalPoly rp(const char* text) { return ip(text).cast<Rational>(); }
ComplexPoly cp(const char* text) { return parse_poly(text).complex_univariate(); }

const Complex kOmega = std::polar(1.0, 2 * M_PI / 3);

bool commutes_with_iterate(const ComplexPoly& g, const ComplexPoly& f, int n) {
  const ComplexPoly fn = iterate(f, n);
  const ComplexPoly lhs = compose(g, fn), rhs = compose(fn, g);
  return oracle::max_coeff_diff(lhs, rhs) <= 1e-9 * std::max(1.0, max_abs_coeff(lhs));
}

std::vector<RationalPoly> sample_maps() {
  return {rp("z^14 - z^2"), rp("z^3 - z"),       rp("z^2 - 1"),       rp("z^5 + z^3 - 2z + 1"),
          rp("z^4 + 3z^2"), rp("z^7 - z^4 + z"), rp("z^6 + 2z^3 - z"), rp("z^3 + 3z^2 + z")};
}

}  // namespace

TEST_SUITE("commuting") {
  TEST_CASE("beta shift") {
    const BetaShift<Rational> a = beta_shift(rp("z^14 - z^2"));
    CHECK(a.beta == 0);
    CHECK(a.f_beta == rp("z^14 - z^2"));

    const BetaShift<Rational> b = beta_shift(rp("z^2 + 2z"));
    CHECK(b.beta == 1);
    CHECK(b.f_beta[1] == 0);
    CHECK(b.f_beta == rp("z^2"));

    CHECK(beta_shift(rp("z^3")).f_beta == rp("z^3"));
    CHECK(beta_shift(rp("z^3 + z^2")).beta == Rational(1, 3));
  }

  TEST_CASE("j invariant") {
    CHECK(j_invariant(rp("z^5")) == 4);
    CHECK(j_invariant(rp("z^3 + z")) == 2);
    CHECK(j_invariant(rp("z^14 - z^2")) == 1);
    CHECK(j_invariant(rp("3z")) == 0);
    CHECK(j_invariant(rp("z + 3")) == 1);
    CHECK(j_invariant(rp("z^3 - 2z + 2")) == 1);
  }

  TEST_CASE("top coefficients") {
    const CoeffTable<Rational> t = top_coeffs(rp("z^14 - z^2"), 1);
    REQUIRE(t.c.size() == 15);
    for (int i = 0; i <= 14; ++i) {
      CAPTURE(i);
      CHECK(t.c[i] == (i == 0 ? 1 : i == 12 ? -1 : 0));
    }

    const CoeffTable<Rational> sq = top_coeffs(rp("z^2 - 5"), 2);
    CHECK(sq.c[0] == 1);
    CHECK(sq.c[1] == 0);
    CHECK(sq.c[2] == -10);

    CHECK_THROWS_AS(top_coeffs(rp("z^3 + z^2"), 1), InputError);
  }

  TEST_CASE("property: top coefficients match full iteration") {
    for (const RationalPoly& f : sample_maps()) {
      const RationalPoly fb = beta_shift(f).f_beta;
      const int d = fb.degree();
      for (int n = 1; n <= (d > 5 ? 2 : 3); ++n) {
        const RationalPoly full = iterate(fb, n);
        const CoeffTable<Rational> t = top_coeffs(fb, n);
        for (int i = 0; i <= d; ++i) CHECK(t.c[i] == full[full.degree() - i]);
      }
    }
  }

  TEST_CASE("property: coefficient congruence and the nonvanishing set") {
    for (const RationalPoly& f : sample_maps()) {
      const RationalPoly fb = beta_shift(f).f_beta;
      const int d = fb.degree();
      const int r = r_and_rprime(f).r;
      const CoeffTable<Rational> one = top_coeffs(fb, 1);
      std::vector<int> gcd_steps;
      int running = 0;
      for (int i = 1; i <= d; ++i) {
        if (one.c[i] == 0) continue;
        const int next = std::gcd(running, i);
        if (next != running) gcd_steps.push_back(i);
        running = next;
      }
      for (int n = 1; n <= 4; ++n) {
        const CoeffTable<Rational> t = top_coeffs(fb, n);
        CHECK(t.c[0] == 1);
        CHECK(t.c[1] == 0);
        // The degree d^n - i term can be nonzero only when that degree is d^n mod r.
        for (int i = 0; i <= d; ++i)
          if (i % r != 0) CHECK(t.c[i] == 0);
        Rational scale = 1;
        for (int k = 1; k < n; ++k) scale *= d;
        for (int i : gcd_steps) {
          CHECK(t.c[i] == scale * one.c[i]);
          CHECK(t.c[i] != 0);
        }
      }
    }
  }

  TEST_CASE("r and r prime") {
    const RInvariants a = r_and_rprime(rp("z^14 - z^2"));
    CHECK(a.r == 12);
    CHECK(a.r_prime == 3);
    const RInvariants b = r_and_rprime(rp("z^3 - z"));
    CHECK(b.r == 2);
    CHECK(b.r_prime == 2);
    const RInvariants c = r_and_rprime(rp("z^2 - 1"));
    CHECK(c.r == 2);
    CHECK(c.r_prime == 1);
    CHECK_THROWS_AS(r_and_rprime(rp("z^3 + 3z^2 + 3z")), InputError);
  }

  TEST_CASE("j of iterates") {
    for (int n = 1; n <= 8; ++n) CHECK(j_of_iterate(rp("z^14 - z^2"), n) == (n % 2 ? 1 : 3));
    CHECK(j_of_iterate(rp("z^3 - z"), 1) == 2);
    CHECK(j_of_iterate(rp("z^3 + z^2 + 1"), 5) == 1);
    CHECK(j_of_iterate(rp("z^14 - z^2"), 1000000) == 3);
  }

  TEST_CASE("property: j consistency") {
    for (const RationalPoly& f : sample_maps()) {
      const int d = f.degree();
      const int r = r_and_rprime(f).r;
      CHECK(j_of_iterate(f, 1) == std::gcd(d - 1, r));
      CHECK(j_of_iterate(f, 1) == j_invariant(beta_shift(f).f_beta));
    }
  }

  TEST_CASE("multiplicative order") {
    CHECK(multiplicative_order(14, 3) == 2);
    CHECK(multiplicative_order(2, 7) == 3);
    CHECK(multiplicative_order(5, 1) == 1);
  }

  TEST_CASE("linear commuters") {
    const std::vector<Commuter> a = enumerate_linear_commuters(rp("z^14 - z^2"));
    REQUIRE(a.size() == 3);
    const Complex expected[] = {1.0, kOmega, kOmega * kOmega};
    for (int k = 0; k < 3; ++k) {
      CHECK(a[k].poly.degree() == 1);
      CHECK(std::abs(a[k].poly[1] - expected[k]) < 1e-12);
      CHECK(std::abs(a[k].poly[0]) < 1e-12);
      CHECK(a[k].u.den == 3);
    }

    const std::vector<Commuter> b = enumerate_linear_commuters(rp("z^3 - z"));
    REQUIRE(b.size() == 2);
    CHECK(std::abs(b[1].poly[1] + 1.0) < 1e-15);
    CHECK(compose(cp("z^3 - z"), cp("-z")) == -cp("z^3 - z"));

    CHECK(enumerate_linear_commuters(rp("z^2 - 1")).size() == 1);
  }

  TEST_CASE("minimal iterate roots") {
    const IterateRoot<Rational> a = minimal_root_iterate(rp("z^4 + 2z^2 + 2"));
    CHECK(a.g == rp("z^2 + 1"));
    CHECK(a.k == 2);

    const IterateRoot<Rational> b = minimal_root_iterate(rp("z^14 - z^2"));
    CHECK(b.g == rp("z^14 - z^2"));
    CHECK(b.k == 1);

    const IterateRoot<Rational> c = minimal_root_iterate(chebyshev(4).cast<Rational>());
    CHECK(c.g == chebyshev(2).cast<Rational>());
    CHECK(c.k == 2);

    const RationalPoly g = rp("z^2 + z - 1");
    const IterateRoot<Rational> d = minimal_root_iterate(iterate(g, 3));
    CHECK(d.g == g);
    CHECK(d.k == 3);
  }

  TEST_CASE("property: decomposition soundness") {
    const RationalPoly seeds[] = {rp("z^2 + 3"), rp("z^3 - 2z + 1"), rp("z^2 - z"),
                                  rp("z^2 + 7z - 4")};
    for (const RationalPoly& g : seeds)
      for (int k = 1; k <= 3; ++k) {
        const RationalPoly f = iterate(g, k);
        if (f.degree() > 27) continue;
        const IterateRoot<Rational> root = minimal_root_iterate(f);
        CHECK(iterate(root.g, root.k) == f);
        CHECK(root.g.degree() <= g.degree());
      }
  }

  TEST_CASE("nonlinear commuters") {
    const std::vector<Commuter> a = enumerate_min_nonlinear_commuters(rp("z^14 - z^2"));
    REQUIRE(a.size() == 3);
    for (int k = 0; k < 3; ++k) {
      const Complex u = std::polar(1.0, 2 * M_PI * k / 3);
      CHECK(oracle::max_coeff_diff(a[k].poly, u * cp("z^14 - z^2")) < 1e-12);
    }

    const std::vector<Commuter> b = enumerate_min_nonlinear_commuters(rp("z^3 - z"));
    REQUIRE(b.size() == 2);
    CHECK(oracle::max_coeff_diff(b[1].poly, -cp("z^3 - z")) < 1e-15);
    CHECK(commutes_with_iterate(b[1].poly, cp("z^3 - z"), 2));

    CHECK(enumerate_min_nonlinear_commuters(rp("z^2 - 1")).size() == 1);
  }

  TEST_CASE("property: commutation certificates") {
    for (const RationalPoly& f : sample_maps()) {
      if (f.degree() > 7) continue;
      const ComplexPoly fc = f.cast<Complex>();
      for (const Commuter& c : enumerate_linear_commuters(f))
        CHECK(commutes_with_iterate(c.poly, fc, c.witness_n));
      for (const Commuter& c : enumerate_min_nonlinear_commuters(f))
        CHECK(commutes_with_iterate(c.poly, fc, c.witness_n));
    }
  }

  TEST_CASE("exceptional map warnings") {
    CHECK(exceptional_warnings(rp("z^2 + 2z")).size() == 1);
    CHECK(exceptional_warnings(chebyshev(4).cast<Rational>()).size() == 1);
    const ComplexPoly neg_t3 =
        affine_conjugate((-chebyshev(3)).cast<Complex>(), Complex(0, 1), Complex(0));
    REQUIRE(neg_t3.leading() == Complex(1, 0));
    CHECK_FALSE(exceptional_warnings(neg_t3).empty());
    CHECK(exceptional_warnings(rp("z^14 - z^2")).empty());
    CHECK(exceptional_warnings(rp("z^3 - z")).empty());
  }

  TEST_CASE("full report for the worked example") {
    const CommutingReport<Rational> rep = commuting_report(rp("z^14 - z^2"));
    CHECK(rep.beta == 0);
    CHECK(rep.r == 12);
    CHECK(rep.r_prime == 3);
    CHECK(rep.j_f_beta == 1);
    CHECK(rep.j_table.at(2) == 3);
    CHECK(rep.linear_commuters.size() == 3);
    CHECK(rep.min_root.g == rp("z^14 - z^2"));
    CHECK(rep.min_root.k == 1);
    CHECK(rep.warnings.empty());
  }

  TEST_CASE("complex coefficients") {
    // z^3 − z conjugated by z ↦ z + i: β = −i and the shifted map is z^3 − z again.
    const ComplexPoly f = affine_conjugate(cp("z^3 - z"), Complex(1), Complex(0, 1));
    const BetaShift<Complex> bs = beta_shift(f);
    CHECK(std::abs(bs.beta - Complex(0, 1)) < 1e-12);
    CHECK(oracle::max_coeff_diff(bs.f_beta, cp("z^3 - z")) < 1e-12);
    const RInvariants rr = r_and_rprime(f);
    CHECK(rr.r == 2);
    CHECK(rr.r_prime == 2);
    for (const Commuter& c : enumerate_linear_commuters(f))
      CHECK(commutes_with_iterate(c.poly, f, c.witness_n));
    const CommutingReport<Complex> rep = commuting_report(f);
    CHECK(rep.min_nonlinear.size() == 2);
  }

  TEST_CASE("zero families") {
    const ZeroFamily a = zero_family(rp("z^2 - 1"), 0, 0, 0);
    REQUIRE(a.exact);
    CHECK(*a.exact == parse_poly("x - y").int_bivariate());

    const ZeroFamily b = zero_family(rp("z^3 - z"), 1, 1, 1);
    REQUIRE(b.exact);
    CHECK(*b.exact == parse_poly("x^3 - x + y^3 - y").int_bivariate());

    const ZeroFamily c = zero_family(rp("z^14 - z^2"), 1, 0, 1);
    CHECK_FALSE(c.exact);
    CHECK(c.poly.degx() == 14);
    CHECK(c.poly.degy() == 1);
    CHECK(std::abs(c.poly(0, 1) + kOmega) < 1e-12);
    CHECK(std::abs(c.poly(2, 0) + 1.0) < 1e-15);

    CHECK_THROWS_AS(zero_family(rp("z^3 - z"), 1, 1, 2), InputError);
    CHECK_THROWS_AS(zero_family(rp("z^3 - z"), 20, 1, 0), CapExceeded);
  }

  TEST_CASE("property: zero-family members have measure zero") {
    BivariateOptions opts;
    opts.sample.count = 4000;
    const struct {
      const char* f;
      int n, m, u;
    } cases[] = {{"z^2 - 1", 1, 0, 0}, {"z^3 - z", 1, 1, 1}, {"z^3 - z", 2, 1, 0}};
    for (const auto& c : cases) {
      const ZeroFamily fam = zero_family(rp(c.f), c.n, c.m, c.u);
      const MeasureEstimate m =
          dyn_mahler_bivariate_mc(DynamicalSystem(ip(c.f)), fam.poly, opts);
      CAPTURE(c.f);
      CHECK(std::abs(m.value) <= 3 * m.std_error + 1e-3);
    }
  }
}
