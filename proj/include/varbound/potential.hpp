#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "varbound/errors.hpp"

namespace varbound {

// One power term a(q) * r^q of the potential.
struct PowerTerm {
    double coefficient = 0.0;
    double exponent = 0.0;

    friend bool operator==(const PowerTerm&, const PowerTerm&) = default;
};

// V(r) = sum of power terms, plus the kinetic prefactor convention:
// the half-line Hamiltonian is  -kinetic_factor * d^2/dr^2 + U(r).
// Only the two conventions 1 and 1/2 are accepted.
class Potential {
public:
    Potential() = default;
    Potential(std::vector<PowerTerm> terms, double kinetic_factor = 1.0);

    const std::vector<PowerTerm>& terms() const { return terms_; }
    double kinetic_factor() const { return kinetic_factor_; }
    bool empty() const { return terms_.empty(); }

    // Smallest exponent over all terms; +infinity for the empty potential.
    double min_exponent() const;

    // Coefficient of r^q, or 0 if no such term.
    double coefficient(double q) const;

    // V(r) evaluated pointwise (r > 0).
    double operator()(double r) const;

    friend bool operator==(const Potential&, const Potential&) = default;

private:
    std::vector<PowerTerm> terms_;   // sorted ascending by exponent, merged
    double kinetic_factor_ = 1.0;
};

// Angular momentum subspace: spatial dimension d >= 2 and l >= 0.
// Spectra depend on the pair only through nu() = 2l + d.
class Channel {
public:
    Channel(int dimension, int angular_momentum);

    int dimension() const { return d_; }
    int angular_momentum() const { return l_; }
    int nu() const { return 2 * l_ + d_; }

    // Strength of the centrifugal barrier (nu-1)(nu-3)/4 in U(r).
    double centrifugal_constant() const {
        return 0.25 * double(nu() - 1) * double(nu() - 3);
    }

    friend bool operator==(const Channel&, const Channel&) = default;

private:
    int d_;
    int l_;
};

// Trial-space shape: size n, exponent power p, shift t, scale s.
// Basis functions are R_i(r) = r^{(t+1)/2+i} exp(-r^p/2), with the scale
// entering as the substitution r -> r/s.
class BasisSpec {
public:
    BasisSpec(int size, double power, double exponent_shift, double scale);

    int size() const { return n_; }
    double power() const { return p_; }
    double exponent_shift() const { return t_; }
    double scale() const { return s_; }

    BasisSpec with_scale(double s) const { return {n_, p_, t_, s}; }

    friend bool operator==(const BasisSpec&, const BasisSpec&) = default;

private:
    int n_;
    double p_;
    double t_;
    double s_;
};

// Parse the potential grammar described in the README, e.g.
// "r^2 + 0.001/r^4" or "-1/r + 0.5*r + 1*r^2".
Potential parse_potential(const std::string& expression);

// Canonical text form; parse_potential(render(V)) == V.
std::string render(const Potential& potential);

// Multiplicity of the level (d, l): 1 for l = 0, else
// (2l+d-2)(l+d-3)! / (l!(d-2)!).
std::uint64_t degeneracy(const Channel& channel);

// Lower limit for the basis shift t: any valid t must satisfy
// t > minimum_t(V) = max(0, -(2 + q_min)).
double minimum_t(const Potential& potential);

// Throws domain_error unless basis.t strictly exceeds minimum_t and the
// matrix-element domain t > -(q+2) holds for every term.
void validate_basis(const BasisSpec& basis, const Potential& potential);

}  // namespace varbound
