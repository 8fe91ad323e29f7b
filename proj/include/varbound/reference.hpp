#pragma once

#include <optional>

#include "varbound/potential.hpp"

namespace varbound {

// Outcome of testing an exactly-solvable parameter set against its
// constraint condition.
struct ExactConstraintReport {
    bool satisfied;
    double residual;               // absolute constraint defect
    std::optional<double> energy;  // present iff satisfied
};

// Spectrum 2(2n + gamma), gamma = 1 + sqrt(A + 1/4), of the solvable
// Hamiltonian -d^2/dr^2 + r^2 + A/r^2.
double gk_energy(double strength_a, int n_radial);

// Ground state 2 + sqrt(1 + 4 lambda) of -d^2/dr^2 + r^2 + lambda/r^2.
double spiked_alpha2_ground(double lambda);

// Solvability check for -d^2/dr^2 + a r^2 + b/r^4 + c/r^6 at l = 0:
// the ground state is sqrt(a)(4 + b/sqrt(c)) when
// (2 sqrt(c) + b)^2 = c + 8 c sqrt(a c).
ExactConstraintReport anharmonic_exact(double a, double b, double c);

// Termination condition for the perturbed Coulomb potential
// -D/r + B r + A r^2: E = sqrt(A)(2n+2l+3) - B^2/(4A) is exact when the
// (n+1)x(n+1) tridiagonal continuant vanishes.
ExactConstraintReport coulomb_determinant(double d_coeff, double b_coeff, double a_coeff,
                                          int l, int n_trunc);

struct IntegrateOptions {
    double r_max = 0.0;  // <= 0 means choose automatically
    int mesh = 200000;
};

// Independent oracle: k-th eigenvalue of the half-line problem
// -kinetic_factor R'' + U R = E R, U = V + centrifugal, by Numerov
// propagation with node-count bisection on E.
double integrate_radial(const Potential& potential, const Channel& channel, int k,
                        const IntegrateOptions& options = {});

}  // namespace varbound
