#include "varbound/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace varbound {

namespace {

// Cyclic Jacobi.  Diagonalizes a in place; if vectors != nullptr it
// accumulates the rotations so that a_in = V diag V^T on exit.
// Convergence is quadratic; 50 sweeps is far beyond what n <= 30 needs.
template <typename T>
void jacobi(std::vector<T>& a, int n, std::vector<T>* vectors) {
    auto at = [&](int i, int j) -> T& { return a[std::size_t(i) * n + j]; };
    if (vectors) {
        vectors->assign(std::size_t(n) * n, T(0));
        for (int i = 0; i < n; ++i) (*vectors)[std::size_t(i) * n + i] = T(1);
    }
    const T eps = std::numeric_limits<T>::epsilon();
    const T tol = eps * eps;
    for (int sweep = 0; sweep < 50; ++sweep) {
        T off = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) off += at(i, j) * at(i, j);
        if (off == T(0)) return;
        T diag = 0;
        for (int i = 0; i < n; ++i) diag += at(i, i) * at(i, i);
        if (off <= tol * std::max(diag, std::numeric_limits<T>::min())) return;

        for (int p = 0; p < n - 1; ++p)
            for (int q = p + 1; q < n; ++q) {
                const T apq = at(p, q);
                if (apq == T(0)) continue;
                const T app = at(p, p), aqq = at(q, q);
                const T theta = T(0.5) * (aqq - app) / apq;
                const T t = (theta >= T(0) ? T(1) : T(-1)) /
                            (std::fabs(theta) + std::sqrt(theta * theta + T(1)));
                const T c = T(1) / std::sqrt(t * t + T(1));
                const T s = t * c;
                const T tau = s / (T(1) + c);
                at(p, p) = app - t * apq;
                at(q, q) = aqq + t * apq;
                at(p, q) = at(q, p) = T(0);
                for (int k = 0; k < n; ++k) {
                    if (k == p || k == q) continue;
                    const T akp = at(k, p), akq = at(k, q);
                    at(k, p) = at(p, k) = akp - s * (akq + tau * akp);
                    at(k, q) = at(q, k) = akq + s * (akp - tau * akq);
                }
                if (vectors) {
                    for (int k = 0; k < n; ++k) {
                        T& vkp = (*vectors)[std::size_t(k) * n + p];
                        T& vkq = (*vectors)[std::size_t(k) * n + q];
                        const T vp = vkp, vq = vkq;
                        vkp = vp - s * (vq + tau * vp);
                        vkq = vq + s * (vp - tau * vq);
                    }
                }
            }
    }
}

std::vector<double> flatten(const SymMatrix& m) {
    const int n = m.order();
    std::vector<double> a(std::size_t(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a[std::size_t(i) * n + j] = m(i, j);
    return a;
}

// N = U^T U with U upper triangular.  Returns U row-major.
std::vector<double> cholesky_upper(const SymMatrix& nmat, double* conditioning) {
    const int n = nmat.order();
    std::vector<double> u(std::size_t(n) * n, 0.0);
    auto at = [&](int i, int j) -> double& { return u[std::size_t(i) * n + j]; };
    double min_pivot = 0.0, max_pivot = 0.0;
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i <= j; ++i) {
            double sum = nmat(i, j);
            for (int k = 0; k < i; ++k) sum -= at(k, i) * at(k, j);
            if (i == j) {
                if (!(sum > 0.0)) throw basis_dependent_error(j, sum);
                at(i, j) = std::sqrt(sum);
                if (j == 0) {
                    min_pivot = max_pivot = at(i, j);
                } else {
                    min_pivot = std::min(min_pivot, at(i, j));
                    max_pivot = std::max(max_pivot, at(i, j));
                }
            } else {
                at(i, j) = sum / at(i, i);
            }
        }
    }
    const double ratio = max_pivot > 0.0 ? min_pivot / max_pivot : 0.0;
    if (conditioning) *conditioning = ratio;
    if (ratio < 1e-13)
        throw basis_dependent_error(n - 1, min_pivot);
    return u;
}

// A = U^{-T} H U^{-1} for upper triangular U.
std::vector<double> reduce_cholesky(const SymMatrix& h, const std::vector<double>& u, int n) {
    auto uat = [&](int i, int j) { return u[std::size_t(i) * n + j]; };
    // W = U^{-T} H: solve U^T W = H column by column (forward substitution).
    std::vector<double> w(std::size_t(n) * n);
    for (int col = 0; col < n; ++col)
        for (int i = 0; i < n; ++i) {
            double sum = h(i, col);
            for (int k = 0; k < i; ++k) sum -= uat(k, i) * w[std::size_t(k) * n + col];
            w[std::size_t(i) * n + col] = sum / uat(i, i);
        }
    // A = W U^{-1}: solve A U = W row by row (forward substitution on columns).
    std::vector<double> a(std::size_t(n) * n);
    for (int row = 0; row < n; ++row)
        for (int j = 0; j < n; ++j) {
            double sum = w[std::size_t(row) * n + j];
            for (int k = 0; k < j; ++k) sum -= a[std::size_t(row) * n + k] * uat(k, j);
            a[std::size_t(row) * n + j] = sum / uat(j, j);
        }
    // Symmetrize away the last round-off asymmetry.
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double v = 0.5 * (a[std::size_t(i) * n + j] + a[std::size_t(j) * n + i]);
            a[std::size_t(i) * n + j] = a[std::size_t(j) * n + i] = v;
        }
    return a;
}

// H' = M S^T H S M with N = S diag S^T and M = diag^{-1/2}.
std::vector<double> reduce_lowdin(const SymMatrix& h, const SymMatrix& nmat, int n) {
    std::vector<double> nd = flatten(nmat);
    std::vector<double> s;
    jacobi(nd, n, &s);
    std::vector<double> inv_sqrt(n);
    double min_eig = 0.0, max_eig = 0.0;
    for (int i = 0; i < n; ++i) {
        const double d = nd[std::size_t(i) * n + i];
        if (!(d > 0.0)) throw basis_dependent_error(i, d);
        if (i == 0) {
            min_eig = max_eig = d;
        } else {
            min_eig = std::min(min_eig, d);
            max_eig = std::max(max_eig, d);
        }
        inv_sqrt[i] = 1.0 / std::sqrt(d);
    }
    if (min_eig / max_eig < 1e-26) throw basis_dependent_error(n - 1, min_eig);
    // B = H S, then A = M S^T B M.
    std::vector<double> b(std::size_t(n) * n, 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double sum = 0.0;
            for (int k = 0; k < n; ++k) sum += h(i, k) * s[std::size_t(k) * n + j];
            b[std::size_t(i) * n + j] = sum;
        }
    std::vector<double> a(std::size_t(n) * n, 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double sum = 0.0;
            for (int k = 0; k < n; ++k) sum += s[std::size_t(k) * n + i] * b[std::size_t(k) * n + j];
            a[std::size_t(i) * n + j] = inv_sqrt[i] * sum * inv_sqrt[j];
        }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double v = 0.5 * (a[std::size_t(i) * n + j] + a[std::size_t(j) * n + i]);
            a[std::size_t(i) * n + j] = a[std::size_t(j) * n + i] = v;
        }
    return a;
}

}  // namespace

std::vector<double> symmetric_eigenvalues(const SymMatrix& m) {
    const int n = m.order();
    std::vector<double> a = flatten(m);
    jacobi<double>(a, n, nullptr);
    std::vector<double> eigs(n);
    for (int i = 0; i < n; ++i) eigs[i] = a[std::size_t(i) * n + i];
    std::sort(eigs.begin(), eigs.end());
    return eigs;
}

std::vector<double> generalized_eigs(const SymMatrix& h, const SymMatrix& nmat, Route route,
                                     double* conditioning_out) {
    const int n = nmat.order();
    if (h.order() != n) throw domain_error("generalized_eigs: dimension mismatch");
    std::vector<double> reduced;
    if (route == Route::cholesky) {
        const std::vector<double> u = cholesky_upper(nmat, conditioning_out);
        reduced = reduce_cholesky(h, u, n);
    } else {
        if (conditioning_out) {
            // Report the same pivot-based diagnostic on either route.
            cholesky_upper(nmat, conditioning_out);
        }
        reduced = reduce_lowdin(h, nmat, n);
    }
    jacobi<double>(reduced, n, nullptr);
    std::vector<double> eigs(n);
    for (int i = 0; i < n; ++i) eigs[i] = reduced[std::size_t(i) * n + i];
    std::sort(eigs.begin(), eigs.end());
    return eigs;
}

namespace {

// Shared core of the truncated Rayleigh-Ritz solve at scalar type T, on
// flattened row-major copies of H and N.
template <typename T>
std::vector<double> truncated_core(const std::vector<T>& h, std::vector<T> nd, int n,
                                   double drop_ratio) {
    std::vector<T> s;
    jacobi(nd, n, &s);
    T max_eig = 0;
    for (int i = 0; i < n; ++i) max_eig = std::max(max_eig, nd[std::size_t(i) * n + i]);
    if (!(max_eig > T(0))) throw basis_dependent_error(0, double(max_eig));
    std::vector<int> keep;
    for (int i = 0; i < n; ++i)
        if (nd[std::size_t(i) * n + i] >= T(drop_ratio) * max_eig) keep.push_back(i);
    const int m = int(keep.size());
    if (m == 0) throw basis_dependent_error(n - 1, 0.0);

    // A_ab = s_a^T H s_b / sqrt(d_a d_b) over the retained directions.
    std::vector<T> b(std::size_t(n) * m, T(0));  // B = H S_keep
    for (int i = 0; i < n; ++i)
        for (int a = 0; a < m; ++a) {
            T sum = 0;
            for (int k = 0; k < n; ++k)
                sum += h[std::size_t(i) * n + k] * s[std::size_t(k) * n + keep[a]];
            b[std::size_t(i) * m + a] = sum;
        }
    std::vector<T> reduced(std::size_t(m) * m, T(0));
    for (int a = 0; a < m; ++a)
        for (int c = a; c < m; ++c) {
            T sum = 0;
            for (int k = 0; k < n; ++k)
                sum += s[std::size_t(k) * n + keep[a]] * b[std::size_t(k) * m + c];
            const T scale = T(1) / std::sqrt(nd[std::size_t(keep[a]) * n + keep[a]] *
                                             nd[std::size_t(keep[c]) * n + keep[c]]);
            reduced[std::size_t(a) * m + c] = reduced[std::size_t(c) * m + a] = sum * scale;
        }
    jacobi(reduced, m, static_cast<std::vector<T>*>(nullptr));
    std::vector<double> eigs(m);
    for (int i = 0; i < m; ++i) eigs[std::size_t(i)] = double(reduced[std::size_t(i) * m + i]);
    std::sort(eigs.begin(), eigs.end());
    return eigs;
}

}  // namespace

std::vector<double> truncated_bounds(const SymMatrix& h, const SymMatrix& nmat,
                                     double drop_ratio) {
    const int n = nmat.order();
    if (h.order() != n) throw domain_error("truncated_bounds: dimension mismatch");
    return truncated_core<double>(flatten(h), flatten(nmat), n, drop_ratio);
}

std::vector<double> truncated_bounds_ext(const std::vector<long double>& h,
                                         const std::vector<long double>& nmat, int order,
                                         double drop_ratio) {
    if (h.size() != nmat.size() || h.size() != std::size_t(order) * order)
        throw domain_error("truncated_bounds_ext: dimension mismatch");
    return truncated_core<long double>(h, nmat, order, drop_ratio);
}

SpectrumEstimate upper_bounds(const MatrixBundle& bundle, double s) {
    auto [h, nmat] = bundle.scaled_pair(s);
    double conditioning = 0.0;
    std::vector<double> eigs = generalized_eigs(h, nmat, Route::cholesky, &conditioning);
    return {std::move(eigs), bundle.basis().with_scale(s), bundle.channel(), conditioning};
}

SpectrumEstimate upper_bounds(const Potential& potential, const BasisSpec& basis,
                              const Channel& channel) {
    return upper_bounds(build_bundle(potential, basis, channel), basis.scale());
}

}  // namespace varbound
