#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "varbound/reference.hpp"

using namespace varbound;

TEST_CASE("solvable r^-2 perturbed oscillator spectrum") {
    CHECK(gk_energy(0.0, 0) == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(gk_energy(0.0, 1) == doctest::Approx(7.0).epsilon(1e-15));
    CHECK(gk_energy(2.0, 0) == doctest::Approx(5.0).epsilon(1e-15));
    // ground state consistency with the two-parameter form
    for (double a : {0.0, 0.3, 1.0, 5.0})
        CHECK(gk_energy(a, 0) == doctest::Approx(spiked_alpha2_ground(a)).epsilon(1e-14));
    // monotone in both arguments
    for (int n = 0; n < 4; ++n)
        for (double a : {0.0, 0.5, 1.0, 4.0}) {
            CHECK(gk_energy(a, n + 1) > gk_energy(a, n));
            CHECK(gk_energy(a + 0.5, n) > gk_energy(a, n));
        }
    CHECK_THROWS_AS(gk_energy(-1.0, 0), domain_error);
    CHECK_THROWS_AS(gk_energy(1.0, -1), domain_error);
}

TEST_CASE("doubly spiked oscillator solvability condition") {
    // a = b = c = 1 satisfies (2 sqrt(c) + b)^2 = c + 8 c sqrt(a c): E = 5
    ExactConstraintReport ok = anharmonic_exact(1.0, 1.0, 1.0);
    CHECK(ok.satisfied);
    REQUIRE(ok.energy.has_value());
    CHECK(*ok.energy == doctest::Approx(5.0).epsilon(1e-14));

    ExactConstraintReport bad = anharmonic_exact(1.0, -7.0, 49.0);
    CHECK(!bad.satisfied);
    CHECK(bad.residual == doctest::Approx(2744.0).epsilon(1e-12));
    CHECK(!bad.energy.has_value());

    CHECK_THROWS_AS(anharmonic_exact(-1.0, 0.0, 1.0), domain_error);
    CHECK_THROWS_AS(anharmonic_exact(1.0, 0.0, 0.0), domain_error);
}

TEST_CASE("perturbed Coulomb termination condition") {
    // -1/r + A'r + A'^2 r^2 terminates at n = 0 with E = 3A' - 1/4
    for (double ap : {0.1, 1.0, 2.0}) {
        ExactConstraintReport r = coulomb_determinant(1.0, ap, ap * ap, 0, 0);
        CHECK(r.satisfied);
        REQUIRE(r.energy.has_value());
        CHECK(*r.energy == doctest::Approx(3.0 * ap - 0.25).epsilon(1e-13));
    }
    // perturbing D away from the root leaves a nonzero determinant
    ExactConstraintReport off = coulomb_determinant(1.1, 1.0, 1.0, 0, 0);
    CHECK(!off.satisfied);
    CHECK(off.residual == doctest::Approx(0.1).epsilon(1e-12));
    CHECK_THROWS_AS(coulomb_determinant(1.0, 1.0, 0.0, 0, 0), domain_error);
    CHECK_THROWS_AS(coulomb_determinant(1.0, 1.0, 1.0, -1, 0), domain_error);
}

TEST_CASE("shooting oracle on closed-form spectra") {
    Channel s_wave(3, 0);
    CHECK(integrate_radial(parse_potential("r^2"), s_wave, 0) ==
          doctest::Approx(3.0).epsilon(1e-8));
    CHECK(integrate_radial(parse_potential("r^2"), s_wave, 1) ==
          doctest::Approx(7.0).epsilon(1e-8));
    CHECK(integrate_radial(parse_potential("r^2 + 2/r^2"), s_wave, 0) ==
          doctest::Approx(5.0).epsilon(1e-8));
    // Coulomb plus matched oscillator terminates in closed form:
    // V = -1/r + A'r + A'^2 r^2 has E_0 = 3A' - 1/4
    CHECK(integrate_radial(parse_potential("-1/r + 1*r + 1*r^2"), s_wave, 0) ==
          doctest::Approx(2.75).epsilon(1e-7));
    // oscillator in a higher channel: E = 2(2n + l) + d at d=3
    CHECK(integrate_radial(parse_potential("r^2"), Channel(3, 2), 0) ==
          doctest::Approx(7.0).epsilon(1e-8));
    CHECK(integrate_radial(parse_potential("r^2"), Channel(5, 0), 0) ==
          doctest::Approx(5.0).epsilon(1e-8));
}

TEST_CASE("shooting oracle matches the r^-2 family across (A, n)") {
    Channel s_wave(3, 0);
    for (double a : {0.0, 1.0, 2.0, 6.0})
        for (int n : {0, 1, 2}) {
            std::vector<PowerTerm> terms{{1.0, 2.0}};
            if (a != 0.0) terms.push_back({a, -2.0});
            const double numeric = integrate_radial(Potential(terms), s_wave, n);
            CHECK(numeric == doctest::Approx(gk_energy(a, n)).epsilon(1e-6));
        }
}

TEST_CASE("shooting oracle handles the kinetic prefactor one-half") {
    // -1/2 u'' + r^2/2: levels 2n + l + 3/2 at d = 3
    std::vector<PowerTerm> osc{{0.5, 2.0}};
    CHECK(integrate_radial(Potential(osc, 0.5), Channel(3, 0), 0) ==
          doctest::Approx(1.5).epsilon(1e-7));
    CHECK(integrate_radial(Potential(osc, 0.5), Channel(3, 1), 0) ==
          doctest::Approx(2.5).epsilon(1e-7));
    // Coulomb + linear + quadratic with B = sqrt(2A): doubling the
    // Hamiltonian maps it onto the terminating family, so
    // E = (sqrt(2A)(2l+3) - B^2/(2A)) / 2 in closed form
    for (int l : {0, 1}) {
        const double a = 0.1;
        const double b = std::sqrt(2.0 * a) / (l + 1.0);
        std::vector<PowerTerm> coul{{-1.0, -1.0}, {b, 1.0}, {a, 2.0}};
        const double exact =
            0.5 * (std::sqrt(2.0 * a) * (2.0 * l + 3.0) - b * b / (2.0 * a));
        CHECK(integrate_radial(Potential(coul, 0.5), Channel(3, l), 0) ==
              doctest::Approx(exact).epsilon(1e-6));
    }
}

TEST_CASE("double well levels") {
    Potential v = parse_potential("-1*r^2 + r^4");
    Channel s_wave(3, 0);
    CHECK(integrate_radial(v, s_wave, 0) == doctest::Approx(2.83454).epsilon(1e-5));
    CHECK(integrate_radial(v, s_wave, 1) == doctest::Approx(10.03865).epsilon(1e-5));
}

TEST_CASE("singularity steeper than r^-2") {
    // solvable doubly spiked case a = b = c = 1: ground energy 5
    Potential v = parse_potential("r^2 + 1/r^4 + 1/r^6");
    CHECK(integrate_radial(v, Channel(3, 0), 0) == doctest::Approx(5.0).epsilon(1e-6));
}

TEST_CASE("result is stable under mesh and box changes") {
    Potential v = parse_potential("r^2 + 1/r");
    Channel s_wave(3, 0);
    const double base = integrate_radial(v, s_wave, 0);
    IntegrateOptions finer;
    finer.mesh = 300000;
    CHECK(integrate_radial(v, s_wave, 0, finer) == doctest::Approx(base).epsilon(1e-7));
    IntegrateOptions boxed;
    boxed.r_max = 14.0;
    CHECK(integrate_radial(v, s_wave, 0, boxed) == doctest::Approx(base).epsilon(1e-7));
}

TEST_CASE("shooting oracle input validation") {
    Channel s_wave(3, 0);
    Potential v = parse_potential("r^2");
    CHECK_THROWS_AS(integrate_radial(v, s_wave, -1), domain_error);
    IntegrateOptions coarse;
    coarse.mesh = 100;
    CHECK_THROWS_AS(integrate_radial(v, s_wave, 0, coarse), domain_error);
    IntegrateOptions tiny_box;
    tiny_box.r_max = 2.0;
    CHECK_THROWS_AS(integrate_radial(v, s_wave, 0, tiny_box), numeric_error);
    // attractive singularity steeper than r^-2 has no ground state
    CHECK_THROWS_AS(integrate_radial(parse_potential("r^2 - 1/r^4"), s_wave, 0), domain_error);
}
