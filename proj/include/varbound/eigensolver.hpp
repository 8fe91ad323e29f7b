#pragma once

#include <vector>

#include "varbound/matrix_elements.hpp"

namespace varbound {

// How H v = lambda N v is reduced to a standard symmetric problem.
enum class Route {
    cholesky,  // N = L^T L, solve for L^{-T} H L^{-1}
    lowdin,    // N = S D S^T, solve for M S^T H S M with M = D^{-1/2}
};

struct SpectrumEstimate {
    std::vector<double> eigenvalues;  // sorted ascending, one per basis vector
    BasisSpec basis;
    Channel channel;
    double conditioning;  // smallest/largest Cholesky pivot of N
};

// All n eigenvalues of H v = lambda N v, sorted ascending.  N must be
// positive definite; a nonpositive pivot raises basis_dependent_error.
// conditioning_out (optional) receives the pivot ratio diagnostic.
std::vector<double> generalized_eigs(const SymMatrix& h, const SymMatrix& n,
                                     Route route = Route::cholesky,
                                     double* conditioning_out = nullptr);

// Variational bounds for the potential in the given channel: each
// eigenvalues[k] is an upper bound to the k-th exact level.
SpectrumEstimate upper_bounds(const Potential& potential, const BasisSpec& basis,
                              const Channel& channel);

// Same, reusing an already-built bundle (the scale fast path).
SpectrumEstimate upper_bounds(const MatrixBundle& bundle, double s);

// Eigenvalues of a dense symmetric matrix by cyclic Jacobi rotations,
// sorted ascending.
std::vector<double> symmetric_eigenvalues(const SymMatrix& a);

// Rayleigh-Ritz levels restricted to the span of the N-eigendirections whose
// eigenvalue is at least drop_ratio times the largest.  Discarding the
// near-dependent directions keeps the reduction well conditioned, and by
// eigenvalue interlacing each retained level is still an upper bound to the
// corresponding exact one.  Returns the retained levels, sorted ascending;
// the result may be shorter than n.
std::vector<double> truncated_bounds(const SymMatrix& h, const SymMatrix& n,
                                     double drop_ratio = 1e-13);

// Same solve on flattened row-major long double matrices (as produced by
// MatrixBundle::scaled_pair_ext).  The extra precision pushes the usable
// conditioning range well past the double limit, so the default drop
// ratio is correspondingly smaller.
std::vector<double> truncated_bounds_ext(const std::vector<long double>& h,
                                         const std::vector<long double>& n, int order,
                                         double drop_ratio = 1e-16);

}  // namespace varbound
