#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "varbound/eigensolver.hpp"
#include "varbound/matrix_elements.hpp"
#include "support/quadrature.hpp"

using namespace varbound;
using varbound::testing::quad_power_exp;

namespace {
const double kSqrtPi = std::sqrt(std::acos(-1.0));
}

TEST_CASE("closed-form spot values") {
    // p = 2, t = 1: N_00 = Gamma(3/2)/2, N_11 = Gamma(5/2)/2
    SymMatrix n = norm_matrix(2.0, 1.0, 2);
    CHECK(n(0, 0) == doctest::Approx(kSqrtPi / 4.0).epsilon(1e-14));
    CHECK(n(1, 1) == doctest::Approx(3.0 * kSqrtPi / 8.0).epsilon(1e-14));
    CHECK(n(0, 1) == doctest::Approx(0.5).epsilon(1e-14));

    // p = 1, t = 1, q = 1: P_00 = Gamma(4) = 6
    SymMatrix p = power_matrix(1.0, 1.0, 1.0, 1);
    CHECK(p(0, 0) == doctest::Approx(6.0).epsilon(1e-14));
}

TEST_CASE("power matrix matches quadrature") {
    std::mt19937 rng(7071067);
    std::uniform_real_distribution<double> pick_p(0.4, 3.0);
    std::uniform_real_distribution<double> pick_t(0.1, 8.0);
    std::uniform_int_distribution<int> pick_n(1, 5);
    const double qs[] = {-2.0, -1.0, 0.0, 1.0, 2.0, 4.0, -2.5};
    std::uniform_int_distribution<int> pick_q(0, 6);

    for (int trial = 0; trial < 200; ++trial) {
        const double p = pick_p(rng);
        double t = pick_t(rng);
        const double q = qs[pick_q(rng)];
        if (!(t > -(q + 2.0))) t += -(q + 2.0) + 0.5;
        const int n = pick_n(rng);
        SymMatrix m = power_matrix(q, p, t, n);
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) {
                const double oracle = quad_power_exp(i + j + t + q + 1.0, p);
                CHECK(m(i, j) == doctest::Approx(oracle).epsilon(1e-10));
            }
    }
}

TEST_CASE("kinetic matrix matches the derivative integrals") {
    std::mt19937 rng(31415);
    std::uniform_real_distribution<double> pick_p(0.5, 2.8);
    std::uniform_real_distribution<double> pick_t(0.3, 6.0);
    struct Case { int d, l; };
    const Case channels[] = {{3, 0}, {3, 1}, {3, 3}, {2, 0}, {5, 2}, {9, 0}};
    for (const Case& ch : channels) {
        const Channel channel(ch.d, ch.l);
        const double c_cent = channel.centrifugal_constant();
        const double p = pick_p(rng);
        const double t = pick_t(rng);
        const int n = 4;
        SymMatrix k = kinetic_matrix(p, t, channel, n);
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) {
                const double ki = 0.5 * (t + 1.0) + i;
                const double kj = 0.5 * (t + 1.0) + j;
                const double ksum = ki + kj;
                const double oracle =
                    (ki * kj + c_cent) * quad_power_exp(ksum - 2.0, p) -
                    0.5 * p * ksum * quad_power_exp(ksum + p - 2.0, p) +
                    0.25 * p * p * quad_power_exp(ksum + 2.0 * p - 2.0, p);
                CHECK(k(i, j) == doctest::Approx(oracle).epsilon(1e-9));
            }
    }
}

TEST_CASE("kinetic matrix depends on the channel only through 2l + d") {
    SymMatrix a = kinetic_matrix(1.7, 2.3, Channel(5, 0), 6);
    SymMatrix b = kinetic_matrix(1.7, 2.3, Channel(3, 1), 6);
    CHECK(a == b);
    SymMatrix c = kinetic_matrix(0.9, 4.0, Channel(2, 4), 5);
    SymMatrix d = kinetic_matrix(0.9, 4.0, Channel(8, 1), 5);
    CHECK(c == d);
}

TEST_CASE("one-dimensional oscillator closure") {
    // V = r^2 in the (d=3, l=0) channel with the exact ground shape
    // p = 2, t = 1: the 1x1 Rayleigh quotient is already the exact 3.
    Potential v = parse_potential("r^2");
    MatrixBundle bundle(v, BasisSpec(1, 2.0, 1.0, 1.0), Channel(3, 0));
    SymMatrix h = bundle.scaled_hamiltonian(1.0);
    SymMatrix n = bundle.norm();
    CHECK(h(0, 0) / n(0, 0) == doctest::Approx(3.0).epsilon(1e-13));
}

TEST_CASE("prenormalization leaves the generalized eigenvalues unchanged") {
    Potential v = parse_potential("r^2 + 0.5/r^2");
    MatrixBundle bundle(v, BasisSpec(6, 1.5, 2.2, 1.0), Channel(3, 0));
    for (double s : {0.3, 1.0, 2.5}) {
        std::vector<double> plain =
            generalized_eigs(bundle.scaled_hamiltonian(s), bundle.norm());
        auto [hp, np] = bundle.scaled_pair(s);
        std::vector<double> pre = generalized_eigs(hp, np);
        REQUIRE(pre.size() == plain.size());
        for (std::size_t i = 0; i < pre.size(); ++i)
            CHECK(pre[i] == doctest::Approx(plain[i]).epsilon(1e-10));
    }
}

TEST_CASE("prenormalized matrices stay finite where plain entries overflow") {
    // large t with small p puts the raw Gamma values far outside double
    // range; the congruence-scaled pair must remain finite
    Potential v = parse_potential("r^2 + 1000/r^4");
    MatrixBundle bundle(v, BasisSpec(6, 0.62, 100.8, 1.0), Channel(3, 0));
    auto [h, n] = bundle.scaled_pair(0.01);
    for (int i = 0; i < 6; ++i) {
        CHECK(n(i, i) == 1.0);
        for (int j = i; j < 6; ++j) {
            CHECK(std::isfinite(h(i, j)));
            CHECK(std::isfinite(n(i, j)));
        }
    }
    std::vector<double> eigs = generalized_eigs(h, n);
    CHECK(std::isfinite(eigs.front()));
    CHECK(eigs.front() > 0.0);
}

TEST_CASE("scaled hamiltonian assembles the announced combination") {
    Potential v = parse_potential("r^2 + 0.1/r");
    MatrixBundle bundle(v, BasisSpec(4, 2.0, 1.5, 1.0), Channel(3, 0));
    const double s = 1.7;
    SymMatrix expected(4);
    expected.add_scaled(bundle.kinetic(), 1.0 / (s * s));
    expected.add_scaled(bundle.power(2.0), s * s);
    expected.add_scaled(bundle.power(-1.0), 0.1 / s);
    SymMatrix actual = bundle.scaled_hamiltonian(s);
    for (int i = 0; i < 4; ++i)
        for (int j = i; j < 4; ++j)
            CHECK(actual(i, j) == doctest::Approx(expected(i, j)).epsilon(1e-14));
}

TEST_CASE("bundle rejects shifts outside the matrix-element domain") {
    Potential v = parse_potential("r^2 + 1/r^4");
    CHECK_THROWS_AS(MatrixBundle(v, BasisSpec(4, 2.0, 1.0, 1.0), Channel(3, 0)), domain_error);
}
