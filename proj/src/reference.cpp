#include "varbound/reference.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace varbound {

double gk_energy(double strength_a, int n_radial) {
    if (strength_a < 0.0) throw domain_error("gk_energy: A must be >= 0");
    if (n_radial < 0) throw domain_error("gk_energy: radial quantum number must be >= 0");
    const double gamma = 1.0 + std::sqrt(strength_a + 0.25);
    return 2.0 * (2.0 * n_radial + gamma);
}

double spiked_alpha2_ground(double lambda) {
    return 2.0 + std::sqrt(1.0 + 4.0 * lambda);
}

ExactConstraintReport anharmonic_exact(double a, double b, double c) {
    if (!(a > 0.0) || !(c > 0.0)) throw domain_error("anharmonic_exact: need a > 0 and c > 0");
    const double sqrt_c = std::sqrt(c);
    const double lhs = (2.0 * sqrt_c + b) * (2.0 * sqrt_c + b);
    const double rhs = c + 8.0 * c * std::sqrt(a * c);
    const double residual = std::fabs(lhs - rhs);
    ExactConstraintReport report{residual <= 1e-9, residual, std::nullopt};
    if (report.satisfied) report.energy = std::sqrt(a) * (4.0 + b / sqrt_c);
    return report;
}

ExactConstraintReport coulomb_determinant(double d_coeff, double b_coeff, double a_coeff,
                                          int l, int n_trunc) {
    if (!(a_coeff > 0.0)) throw domain_error("coulomb_determinant: need A > 0");
    if (l < 0 || n_trunc < 0) throw domain_error("coulomb_determinant: need l, n >= 0");
    const double sqrt_a = std::sqrt(a_coeff);
    const double energy = sqrt_a * (2.0 * n_trunc + 2.0 * l + 3.0) -
                          b_coeff * b_coeff / (4.0 * a_coeff);

    auto diag = [&](int k) { return d_coeff - (b_coeff / sqrt_a) * (k + l + 1); };
    auto upper = [&](int k) { return double((k + 1) * (k + 2 * l + 2)); };
    auto lower = [&](int k) {
        return energy - sqrt_a * (2.0 * k + 2.0 * l + 1.0) + b_coeff / sqrt_a;
    };

    // Continuant recurrence for the tridiagonal determinant, with a
    // parallel all-positive recurrence as the magnitude reference.
    double det_prev2 = 1.0, det_prev1 = diag(0);
    double mag_prev2 = 1.0, mag_prev1 = std::fabs(diag(0));
    for (int k = 1; k <= n_trunc; ++k) {
        const double det = diag(k) * det_prev1 - lower(k) * upper(k - 1) * det_prev2;
        const double mag = std::fabs(diag(k)) * mag_prev1 +
                           std::fabs(lower(k) * upper(k - 1)) * mag_prev2;
        det_prev2 = det_prev1;
        det_prev1 = det;
        mag_prev2 = mag_prev1;
        mag_prev1 = mag;
    }
    const double residual = std::fabs(det_prev1);
    ExactConstraintReport report{residual <= 1e-9 * std::max(1.0, mag_prev1), residual,
                                 std::nullopt};
    if (report.satisfied) report.energy = energy;
    return report;
}

namespace {

// One shooting problem on a fixed mesh: counts nodes of the solution of
// R'' = Q(E) R propagated from the origin-side asymptotic seed.
class Shooter {
public:
    Shooter(const Potential& potential, const Channel& channel, double r_max, int mesh)
        : kf_(potential.kinetic_factor()), h_(r_max / mesh), mesh_(mesh) {
        u_.resize(mesh + 1);
        // the centrifugal barrier scales with the kinetic prefactor:
        // -kf u'' + [kf C/r^2 + V] u = E u
        const double c_cent = channel.centrifugal_constant();
        for (int i = 1; i <= mesh; ++i) {
            const double r = i * h_;
            u_[i] = potential(r) + kf_ * c_cent / (r * r);
        }
        u_[0] = u_[1];  // never used: propagation starts past the origin

        const double q_min = potential.min_exponent();
        steep_singularity_ = q_min < -2.0;
        if (steep_singularity_) {
            singular_alpha_ = -q_min;
            singular_lambda_ = potential.coefficient(q_min);
            if (!(singular_lambda_ > 0.0))
                throw domain_error("attractive singularity steeper than 1/r^2 is not supported");
        }
        // indicial equation nu(nu-1) = C + lambda/kf near the origin
        const double c_total = c_cent + potential.coefficient(-2.0) / kf_;
        const double disc = 1.0 + 4.0 * c_total;
        if (disc < 0.0)
            throw domain_error("attractive 1/r^2 strength below the critical coupling");
        nu_ = 0.5 * (1.0 + std::sqrt(disc));
        // first-order cusp correction u ~ r^nu (1 + beta r) from a 1/r term
        cusp_beta_ = potential.coefficient(-1.0) / kf_ / (2.0 * nu_);
    }

    double min_potential() const { return *std::min_element(u_.begin() + 1, u_.end()); }
    double potential_at_edge() const { return u_[mesh_]; }

    int count_nodes(double energy) const {
        // choose the start index: the local step must be well inside the
        // Numerov stability region, and the seed representable
        int i0 = 1;
        const double h2 = h_ * h_;
        while (i0 + 2 < mesh_ && h2 * std::fabs(q(i0, energy)) / 12.0 > 0.25) ++i0;
        if (steep_singularity_) {
            // start only once exp(-g) is representable
            while (i0 + 2 < mesh_ && singular_exponent(i0 * h_) < -300.0) ++i0;
        }
        if (i0 + 2 >= mesh_)
            throw numeric_error("integrate_radial: mesh cannot resolve the singular region");

        double y_prev, y_curr;
        if (steep_singularity_ && q(i0, energy) > 0.0 && q(i0 + 1, energy) > 0.0) {
            // WKB ratio between the two seed points, deep in the forbidden zone
            const double s01 = wkb_action(i0, i0 + 1, energy);
            y_prev = std::pow(q(i0 + 1, energy) / q(i0, energy), 0.25) * std::exp(-s01);
            y_curr = 1.0;
        } else {
            const double r0 = i0 * h_, r1 = (i0 + 1) * h_;
            y_prev = std::pow(r0 / r1, nu_);
            if (1.0 + cusp_beta_ * r0 > 0.0 && 1.0 + cusp_beta_ * r1 > 0.0)
                y_prev *= (1.0 + cusp_beta_ * r0) / (1.0 + cusp_beta_ * r1);
            y_curr = 1.0;
        }

        int nodes = 0;
        double f_prev = 1.0 - h2 * q(i0, energy) / 12.0;
        double f_curr = 1.0 - h2 * q(i0 + 1, energy) / 12.0;
        for (int i = i0 + 1; i < mesh_; ++i) {
            const double f_next = 1.0 - h2 * q(i + 1, energy) / 12.0;
            const double y_next =
                ((12.0 - 10.0 * f_curr) * y_curr - f_prev * y_prev) / f_next;
            if (y_next * y_curr < 0.0) ++nodes;
            y_prev = y_curr;
            y_curr = y_next;
            f_prev = f_curr;
            f_curr = f_next;
            if (std::fabs(y_curr) > 1e200) {
                y_prev /= 1e200;
                y_curr /= 1e200;
            }
        }
        return nodes;
    }

private:
    double q(int i, double energy) const { return (u_[i] - energy) / kf_; }

    double singular_exponent(double r) const {
        const double m = 0.5 * (singular_alpha_ - 2.0);
        const double c = std::sqrt(singular_lambda_ / kf_) / m;
        return -c * std::pow(r, -m);
    }

    double wkb_action(int i, int j, double energy) const {
        // Simpson over [r_i, r_j] of sqrt(Q); Q interpolated through U
        const double ra = i * h_, rb = j * h_;
        const int steps = 16;
        const double dr = (rb - ra) / steps;
        double sum = 0.0;
        for (int s = 0; s <= steps; ++s) {
            const double r = ra + s * dr;
            // linear interpolation of U between mesh points
            const double x = r / h_;
            const int base = std::min(int(x), mesh_ - 1);
            const double frac = x - base;
            const double u = u_[base] * (1.0 - frac) + u_[base + 1] * frac;
            const double integrand = std::sqrt(std::max((u - energy) / kf_, 0.0));
            const double w = (s == 0 || s == steps) ? 1.0 : (s % 2 ? 4.0 : 2.0);
            sum += w * integrand;
        }
        return sum * dr / 3.0;
    }

    double kf_;
    double h_;
    int mesh_;
    std::vector<double> u_;
    bool steep_singularity_ = false;
    double singular_alpha_ = 0.0;
    double singular_lambda_ = 0.0;
    double nu_ = 1.0;
    double cusp_beta_ = 0.0;
};

double solve_on_mesh(const Potential& potential, const Channel& channel, int k, double r_max,
                     int mesh, double* edge_margin) {
    Shooter shooter(potential, channel, r_max, mesh);
    double e_lo = shooter.min_potential();
    if (shooter.count_nodes(e_lo) > k)
        throw numeric_error("integrate_radial: node count already exceeds k at the potential minimum");

    double step = 1.0 + 0.01 * std::fabs(e_lo);
    double e_hi = e_lo + step;
    while (shooter.count_nodes(e_hi) < k + 1) {
        e_lo = e_hi;
        step *= 2.0;
        e_hi += step;
        if (e_hi > shooter.min_potential() + 1e8)
            throw numeric_error("integrate_radial: node-count bracket not found");
    }
    while (e_hi - e_lo > 1e-9) {
        const double mid = 0.5 * (e_lo + e_hi);
        if (shooter.count_nodes(mid) >= k + 1)
            e_hi = mid;
        else
            e_lo = mid;
    }
    const double energy = 0.5 * (e_lo + e_hi);
    *edge_margin = shooter.potential_at_edge() - energy;
    return energy;
}

}  // namespace

double integrate_radial(const Potential& potential, const Channel& channel, int k,
                        const IntegrateOptions& options) {
    if (k < 0) throw domain_error("integrate_radial: k must be >= 0");
    if (options.mesh < 10000) throw domain_error("integrate_radial: mesh must be >= 10^4");

    double edge_margin = 0.0;
    if (options.r_max > 0.0) {
        const double energy =
            solve_on_mesh(potential, channel, k, options.r_max, options.mesh, &edge_margin);
        if (edge_margin < 25.0)
            throw numeric_error("integrate_radial: r_max too small (U(r_max) - E = " +
                                std::to_string(edge_margin) + " < 25)");
        return energy;
    }
    double r_max = 10.0;
    for (int attempt = 0; attempt < 12; ++attempt) {
        const double energy = solve_on_mesh(potential, channel, k, r_max, options.mesh, &edge_margin);
        if (edge_margin >= 25.0) return energy;
        r_max *= 1.5;
    }
    throw numeric_error("integrate_radial: potential tail too shallow; no safe r_max found");
}

}  // namespace varbound
