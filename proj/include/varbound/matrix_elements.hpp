#pragma once

#include <map>
#include <utility>
#include <vector>

#include "varbound/potential.hpp"
#include "varbound/sym_matrix.hpp"

namespace varbound {

// Symmetric matrix held as sign and log of magnitude per entry, so Gamma
// values far outside double range stay representable until prenormalization.
class LogSymMatrix {
public:
    LogSymMatrix() = default;
    explicit LogSymMatrix(int order)
        : n_(order),
          log_abs_(std::size_t(order) * order, 0.0L),
          sign_(std::size_t(order) * order, 0) {}

    int order() const { return n_; }
    double log_abs(int i, int j) const { return double(log_abs_[std::size_t(i) * n_ + j]); }
    // full-precision log magnitude, for the extended evaluation path
    long double log_abs_ext(int i, int j) const { return log_abs_[std::size_t(i) * n_ + j]; }
    int sign(int i, int j) const { return sign_[std::size_t(i) * n_ + j]; }

    void set_sym(int i, int j, int sign, long double log_abs) {
        const std::size_t a = std::size_t(i) * n_ + j, b = std::size_t(j) * n_ + i;
        log_abs_[a] = log_abs_[b] = log_abs;
        sign_[a] = sign_[b] = static_cast<signed char>(sign);
    }

    // Entry-wise exp; overflows to +/-inf for magnitudes beyond double range.
    SymMatrix exp() const;

    // exp with the congruence scaling X'_ij = X_ij / sqrt(N_ii N_jj) applied
    // in log space; log_norm_diag holds log N_ii.
    SymMatrix exp_prenormalized(const std::vector<double>& log_norm_diag) const;

private:
    int n_ = 0;
    std::vector<long double> log_abs_;
    std::vector<signed char> sign_;
};

// P_ij(q) = (1/p) Gamma((i+j+t+q+2)/p), the matrix of r^q in the basis.
SymMatrix power_matrix(double q, double p, double t, int n);

// N = P(0), the Gram matrix of the basis.
SymMatrix norm_matrix(double p, double t, int n);

// K_ij = (1/4p) Gamma((i+j+t)/p) [(nu-1)(nu-3) + 1 - (i-j)^2 + p(i+j+t)]
// with nu = 2l+d.  This is -(R_i, R_j'') plus the centrifugal expectation
// (nu-1)(nu-3)/4 * (R_i, r^-2 R_j): the effective-potential barrier is
// folded in.
SymMatrix kinetic_matrix(double p, double t, const Channel& channel, int n);

// All s-independent matrices for one (potential, basis shape, channel).
// Entries are kept in log space; scale-only optimization re-evaluates no
// Gamma functions.
class MatrixBundle {
public:
    MatrixBundle(const Potential& potential, const BasisSpec& basis, const Channel& channel);

    int order() const { return basis_.size(); }
    const Potential& potential() const { return potential_; }
    const BasisSpec& basis() const { return basis_; }
    const Channel& channel() const { return channel_; }

    SymMatrix norm() const { return norm_.exp(); }
    SymMatrix kinetic() const { return kinetic_.exp(); }
    SymMatrix power(double q) const;
    std::vector<double> power_exponents() const;

    // H(s) = kinetic_factor * K/s^2 + sum_q a(q) s^q P(q), plain entries.
    SymMatrix scaled_hamiltonian(double s) const;

    // Same H(s) together with N, both prenormalized by sqrt(N_ii N_jj).
    // This is the overflow-safe path the solver pipeline uses.
    std::pair<SymMatrix, SymMatrix> scaled_pair(double s) const;

    // Extended-precision variant of scaled_pair: the same prenormalized
    // (H(s), N) assembled entirely in long double, returned row-major.
    // Past the double-precision conditioning limit this keeps a few more
    // basis directions usable.
    std::pair<std::vector<long double>, std::vector<long double>> scaled_pair_ext(
        double s) const;

private:
    Potential potential_;
    BasisSpec basis_;
    Channel channel_;
    LogSymMatrix norm_;
    LogSymMatrix kinetic_;
    std::vector<std::pair<double, LogSymMatrix>> powers_;  // (q, P(q))
    std::vector<long double> log_norm_diag_;
};

MatrixBundle build_bundle(const Potential& potential, const BasisSpec& basis,
                          const Channel& channel);

// Congruence by diag(N_ii^{-1/2}): returns (H', N') with N' having unit
// diagonal and the generalized eigenvalues unchanged.
std::pair<SymMatrix, SymMatrix> prenormalize(const SymMatrix& matrix, const SymMatrix& norm);

// log Gamma for x > 0 (thread-safe wrapper).
double log_gamma(double x);

// Extended-precision log Gamma for x > 0.
long double log_gamma_ext(long double x);

}  // namespace varbound
