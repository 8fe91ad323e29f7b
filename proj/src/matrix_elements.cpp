#include "varbound/matrix_elements.hpp"

#include <cmath>
#include <limits>

namespace varbound {

double log_gamma(double x) {
    int sign = 0;
    return lgamma_r(x, &sign);
}

long double log_gamma_ext(long double x) {
    int sign = 0;
    return lgammal_r(x, &sign);
}

SymMatrix LogSymMatrix::exp() const {
    SymMatrix out(n_);
    for (int i = 0; i < n_; ++i)
        for (int j = i; j < n_; ++j)
            out.set_sym(i, j, double(sign(i, j) * expl(log_abs_ext(i, j))));
    return out;
}

SymMatrix LogSymMatrix::exp_prenormalized(const std::vector<double>& log_norm_diag) const {
    SymMatrix out(n_);
    for (int i = 0; i < n_; ++i)
        for (int j = i; j < n_; ++j) {
            const long double shift = 0.5L * (static_cast<long double>(log_norm_diag[i]) +
                                              static_cast<long double>(log_norm_diag[j]));
            out.set_sym(i, j, double(sign(i, j) * expl(log_abs_ext(i, j) - shift)));
        }
    return out;
}

namespace {

void check_power_domain(double q, double p, double t, int n) {
    if (!(p > 0.0)) throw domain_error("basis power p must be > 0");
    if (n < 1) throw domain_error("matrix order must be >= 1");
    if (!(t > -(q + 2.0)))
        throw domain_error("basis shift t = " + std::to_string(t) +
                           " outside the domain of the r^" + std::to_string(q) +
                           " matrix element: need t > " + std::to_string(-(q + 2.0)));
}

LogSymMatrix log_power_matrix(double q, double p, double t, int n) {
    check_power_domain(q, p, t, n);
    LogSymMatrix m(n);
    const long double lp = p, lt = t, lq = q;
    const long double log_p = logl(lp);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
            m.set_sym(i, j, 1, log_gamma_ext((i + j + lt + lq + 2.0L) / lp) - log_p);
    return m;
}

LogSymMatrix log_kinetic_matrix(double p, double t, const Channel& channel, int n) {
    if (!(p > 0.0)) throw domain_error("basis power p must be > 0");
    if (!(t > 0.0)) throw domain_error("basis shift t must be > 0 for kinetic elements");
    LogSymMatrix m(n);
    const long double lp = p, lt = t;
    const long double nu = channel.nu();
    const long double log_4p = logl(4.0L * lp);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            const long double bracket = (nu - 1.0L) * (nu - 3.0L) + 1.0L -
                                        static_cast<long double>(i - j) * (i - j) +
                                        lp * (i + j + lt);
            const int sign = bracket > 0.0L ? 1 : bracket < 0.0L ? -1 : 0;
            const long double log_abs =
                sign == 0 ? -std::numeric_limits<long double>::infinity()
                          : log_gamma_ext((i + j + lt) / lp) - log_4p + logl(fabsl(bracket));
            m.set_sym(i, j, sign, log_abs);
        }
    return m;
}

}  // namespace

SymMatrix power_matrix(double q, double p, double t, int n) {
    return log_power_matrix(q, p, t, n).exp();
}

SymMatrix norm_matrix(double p, double t, int n) { return power_matrix(0.0, p, t, n); }

SymMatrix kinetic_matrix(double p, double t, const Channel& channel, int n) {
    return log_kinetic_matrix(p, t, channel, n).exp();
}

MatrixBundle::MatrixBundle(const Potential& potential, const BasisSpec& basis,
                           const Channel& channel)
    : potential_(potential), basis_(basis), channel_(channel) {
    validate_basis(basis, potential);
    const int n = basis.size();
    const double p = basis.power();
    const double t = basis.exponent_shift();
    norm_ = log_power_matrix(0.0, p, t, n);
    kinetic_ = log_kinetic_matrix(p, t, channel, n);
    powers_.reserve(potential.terms().size());
    for (const auto& term : potential.terms())
        powers_.emplace_back(term.exponent, log_power_matrix(term.exponent, p, t, n));
    log_norm_diag_.resize(n);
    for (int i = 0; i < n; ++i) log_norm_diag_[i] = norm_.log_abs_ext(i, i);
}

SymMatrix MatrixBundle::power(double q) const {
    for (const auto& [exponent, matrix] : powers_)
        if (exponent == q) return matrix.exp();
    throw domain_error("no cached power matrix for exponent " + std::to_string(q));
}

std::vector<double> MatrixBundle::power_exponents() const {
    std::vector<double> out;
    out.reserve(powers_.size());
    for (const auto& [exponent, matrix] : powers_) out.push_back(exponent);
    return out;
}

SymMatrix MatrixBundle::scaled_hamiltonian(double s) const {
    if (!(s > 0.0)) throw domain_error("scale s must be > 0, got " + std::to_string(s));
    SymMatrix h = kinetic_.exp();
    SymMatrix out(order());
    out.add_scaled(h, potential_.kinetic_factor() / (s * s));
    for (const auto& term : potential_.terms())
        out.add_scaled(power(term.exponent), term.coefficient * std::pow(s, term.exponent));
    return out;
}

namespace {

// Shared assembly of the prenormalized (H(s), N) pair at scalar type T.
template <typename T, typename Sink>
void assemble_scaled_pair(const Potential& potential, const LogSymMatrix& kinetic,
                          const LogSymMatrix& norm,
                          const std::vector<std::pair<double, LogSymMatrix>>& powers,
                          const std::vector<long double>& log_norm_diag, int n, double s,
                          Sink&& sink) {
    const long double log_s = logl(static_cast<long double>(s));
    const long double log_kf = logl(static_cast<long double>(potential.kinetic_factor()));
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            const long double shift = 0.5L * (log_norm_diag[i] + log_norm_diag[j]);
            T sum = T(kinetic.sign(i, j) *
                      expl(log_kf - 2.0L * log_s + kinetic.log_abs_ext(i, j) - shift));
            for (std::size_t term = 0; term < powers.size(); ++term) {
                const auto& [q, matrix] = powers[term];
                const long double a = potential.terms()[term].coefficient;
                const long double sign = a < 0.0L ? -1.0L : 1.0L;
                sum += T(sign * matrix.sign(i, j) *
                         expl(logl(fabsl(a)) + q * log_s + matrix.log_abs_ext(i, j) - shift));
            }
            const T nrm = i == j ? T(1) : T(expl(norm.log_abs_ext(i, j) - shift));
            sink(i, j, sum, nrm);
        }
}

}  // namespace

std::pair<SymMatrix, SymMatrix> MatrixBundle::scaled_pair(double s) const {
    if (!(s > 0.0)) throw domain_error("scale s must be > 0, got " + std::to_string(s));
    const int n = order();
    SymMatrix h(n), norm(n);
    assemble_scaled_pair<double>(potential_, kinetic_, norm_, powers_, log_norm_diag_, n, s,
                                 [&](int i, int j, double hv, double nv) {
                                     h.set_sym(i, j, hv);
                                     norm.set_sym(i, j, nv);
                                 });
    return {h, norm};
}

std::pair<std::vector<long double>, std::vector<long double>> MatrixBundle::scaled_pair_ext(
    double s) const {
    if (!(s > 0.0)) throw domain_error("scale s must be > 0, got " + std::to_string(s));
    const int n = order();
    std::vector<long double> h(std::size_t(n) * n), norm(std::size_t(n) * n);
    assemble_scaled_pair<long double>(
        potential_, kinetic_, norm_, powers_, log_norm_diag_, n, s,
        [&](int i, int j, long double hv, long double nv) {
            h[std::size_t(i) * n + j] = h[std::size_t(j) * n + i] = hv;
            norm[std::size_t(i) * n + j] = norm[std::size_t(j) * n + i] = nv;
        });
    return {std::move(h), std::move(norm)};
}

MatrixBundle build_bundle(const Potential& potential, const BasisSpec& basis,
                          const Channel& channel) {
    return MatrixBundle(potential, basis, channel);
}

std::pair<SymMatrix, SymMatrix> prenormalize(const SymMatrix& matrix, const SymMatrix& norm) {
    const int n = norm.order();
    if (matrix.order() != n) throw domain_error("prenormalize: order mismatch");
    std::vector<double> inv_sqrt(n);
    for (int i = 0; i < n; ++i) {
        const double d = norm(i, i);
        if (!(d > 0.0))
            throw domain_error("prenormalize: nonpositive norm diagonal at index " +
                               std::to_string(i));
        inv_sqrt[i] = 1.0 / std::sqrt(d);
    }
    SymMatrix h(n), np(n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            const double f = inv_sqrt[i] * inv_sqrt[j];
            h.set_sym(i, j, matrix(i, j) * f);
            np.set_sym(i, j, i == j ? 1.0 : norm(i, j) * f);
        }
    return {h, np};
}

}  // namespace varbound
