#include "varbound/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace varbound {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kScaleFloor = 1e-6;
constexpr double kScaleCeiling = 1e6;
constexpr double kShiftCeiling = 150.0;  // never explore t above t_min + 150
constexpr double kGolden = 0.6180339887498949;

// Near the conditioning limit a full-space reduction can return spuriously
// low levels, and a minimizer will lock onto exactly those values.  The
// truncated solve stays a genuine variational bound everywhere, so it is the
// only value the search is allowed to act on.
double checked_level(const MatrixBundle& bundle, double s, int k) {
    const auto [h, nm] = bundle.scaled_pair_ext(s);
    const std::vector<double> levels = truncated_bounds_ext(h, nm, bundle.order());
    if (std::size_t(k) >= levels.size())
        throw numeric_error("basis too ill-conditioned for the requested level");
    return levels[std::size_t(k)];
}

struct ScaleObjective {
    const MatrixBundle& bundle;
    int k;
    long evaluations = 0;
    double best_x = 0.0;
    double best_f = kInf;

    double operator()(double log_s) {
        ++evaluations;
        double value;
        try {
            value = checked_level(bundle, std::exp(log_s), k);
        } catch (const numeric_error&) {
            value = kInf;
        }
        if (value < best_f) {
            best_f = value;
            best_x = log_s;
        }
        return value;
    }
};

}  // namespace

OptimizationResult minimize_scale(const MatrixBundle& bundle, int k, double s_init,
                                  const OptimizeOptions& options) {
    if (k < 0 || k >= bundle.order())
        throw domain_error("eigenvalue index k out of range for basis size");
    if (!(s_init > 0.0)) throw domain_error("s_init must be > 0");
    ScaleObjective f{bundle, k};

    const double lo = std::log(kScaleFloor), hi = std::log(kScaleCeiling);
    double start = std::clamp(std::log(s_init), lo, hi);
    double best_x = 0.0, best_f = kInf;

    // Bracket from `start`, golden-section refine, then spot-check both
    // sides of the result; a lower sample restarts the search there.
    for (int attempt = 0; attempt < 4; ++attempt) {
        // -- bracket by geometric expansion
        double step = std::log(2.0);
        double xa = start, fa = f(xa);
        double xb = xa + step, fb = f(xb);
        if (fb > fa) {
            std::swap(xa, xb);
            std::swap(fa, fb);
        }
        double xc = xb + 2.0 * (xb - xa), fc;
        bool bracketed = false;
        while (true) {
            if (xc < lo || xc > hi) break;
            fc = f(xc);
            if (fc > fb) {
                bracketed = true;
                break;
            }
            xa = xb; fa = fb;
            xb = xc; fb = fc;
            xc = xb + 2.0 * (xb - xa);
        }
        if (!bracketed)
            throw numeric_error("minimize_scale: no minimum bracketed for s in [1e-6, 1e6]");
        if (xa > xc) std::swap(xa, xc);

        // -- golden section on [xa, xc]
        double x1 = xc - kGolden * (xc - xa);
        double x2 = xa + kGolden * (xc - xa);
        double f1 = f(x1), f2 = f(x2);
        while (xc - xa > 1e-10) {
            if (f1 < f2) {
                xc = x2; x2 = x1; f2 = f1;
                x1 = xc - kGolden * (xc - xa);
                f1 = f(x1);
            } else {
                xa = x1; x1 = x2; f1 = f2;
                x2 = xa + kGolden * (xc - xa);
                f2 = f(x2);
            }
            if (f.evaluations > options.max_evaluations)
                throw numeric_error("minimize_scale: evaluation budget exhausted");
        }
        best_x = f.best_x;
        best_f = f.best_f;

        // -- unimodality spot check
        double lower_x = best_x;
        double lower_f = best_f;
        for (double delta : {0.01, 0.1, 1.0})
            for (double side : {-1.0, 1.0}) {
                const double x = std::clamp(best_x + side * delta, lo, hi);
                const double fx = f(x);
                if (fx < lower_f - 1e-12) {
                    lower_f = fx;
                    lower_x = x;
                }
            }
        if (lower_x == best_x) break;
        start = lower_x;
    }

    const BasisSpec& basis = bundle.basis();
    OptimizationResult result;
    result.best_params = {basis.power(), basis.exponent_shift(), std::exp(best_x)};
    result.best_value = best_f;
    result.evaluations = f.evaluations;
    result.converged = true;
    return result;
}

namespace {

using Coords = std::array<double, 3>;

struct FullObjective {
    const Potential& potential;
    const Channel& channel;
    int n;
    int k;
    double t_min;
    const OptimizeOptions& options;
    long evaluations = 0;
    double best_value = kInf;
    ParamTriple best_params{};
    std::vector<std::pair<ParamTriple, double>>* trace = nullptr;

    ParamTriple decode(const Coords& u) const {
        return {std::exp(u[0]), t_min + std::exp(u[1]), std::exp(u[2])};
    }

    double operator()(const Coords& u) {
        ++evaluations;
        const ParamTriple params = decode(u);
        double value = kInf;
        if (params.t - t_min <= kShiftCeiling && params.s >= kScaleFloor &&
            params.s <= kScaleCeiling) {
            try {
                MatrixBundle bundle(potential, BasisSpec(n, params.p, params.t, 1.0), channel);
                value = checked_level(bundle, params.s, k);
            } catch (const error&) {
                value = kInf;
            }
        }
        if (value < best_value) {
            best_value = value;
            best_params = params;
        }
        if (trace) trace->emplace_back(params, value);
        return value;
    }
};

double simplex_diameter(const std::array<Coords, 4>& x) {
    double d = 0.0;
    for (std::size_t a = 0; a < x.size(); ++a)
        for (std::size_t b = a + 1; b < x.size(); ++b) {
            double dist2 = 0.0;
            for (int i = 0; i < 3; ++i) {
                const double diff = x[a][i] - x[b][i];
                dist2 += diff * diff;
            }
            d = std::max(d, std::sqrt(dist2));
        }
    return d;
}

// One Nelder-Mead run, stopped at `cap` total objective evaluations.
// Returns true if the stopping tolerances were met within the cap.
bool nelder_mead(FullObjective& f, Coords start, const OptimizeOptions& options,
                 Coords& best_out, long cap) {
    std::array<Coords, 4> x;
    std::array<double, 4> fx;
    x[0] = start;
    for (int i = 1; i < 4; ++i) {
        x[i] = start;
        x[i][i - 1] += 0.25;
    }
    for (int i = 0; i < 4; ++i) fx[i] = f(x[i]);
    if (!std::any_of(fx.begin(), fx.end(), [](double v) { return std::isfinite(v); }))
        throw numeric_error("minimize_full: every initial simplex vertex failed to evaluate");

    auto order = [&] {
        std::array<int, 4> idx{0, 1, 2, 3};
        std::sort(idx.begin(), idx.end(), [&](int a, int b) { return fx[a] < fx[b]; });
        std::array<Coords, 4> xs;
        std::array<double, 4> fs;
        for (int i = 0; i < 4; ++i) {
            xs[i] = x[idx[i]];
            fs[i] = fx[idx[i]];
        }
        x = xs;
        fx = fs;
    };

    bool converged = false;
    while (f.evaluations < cap) {
        order();
        if (fx[3] - fx[0] < options.value_tolerance &&
            simplex_diameter(x) < options.diameter_tolerance) {
            converged = true;
            break;
        }
        Coords centroid{};
        for (int v = 0; v < 3; ++v)
            for (int i = 0; i < 3; ++i) centroid[i] += x[v][i] / 3.0;

        auto along = [&](double coeff) {
            Coords p;
            for (int i = 0; i < 3; ++i) p[i] = centroid[i] + coeff * (x[3][i] - centroid[i]);
            return p;
        };

        const Coords reflected = along(-1.0);
        const double fr = f(reflected);
        if (fr < fx[0]) {
            const Coords expanded = along(-2.0);
            const double fe = f(expanded);
            if (fe < fr) {
                x[3] = expanded; fx[3] = fe;
            } else {
                x[3] = reflected; fx[3] = fr;
            }
        } else if (fr < fx[2]) {
            x[3] = reflected; fx[3] = fr;
        } else {
            const bool outside = fr < fx[3];
            const Coords contracted = along(outside ? -0.5 : 0.5);
            const double fc = f(contracted);
            if (fc < std::min(fr, fx[3])) {
                x[3] = contracted; fx[3] = fc;
            } else {
                // shrink toward the best vertex
                for (int v = 1; v < 4; ++v) {
                    for (int i = 0; i < 3; ++i) x[v][i] = x[0][i] + 0.5 * (x[v][i] - x[0][i]);
                    fx[v] = f(x[v]);
                }
            }
        }
    }
    order();
    best_out = x[0];
    return converged;
}

}  // namespace

OptimizationResult minimize_full(const Potential& potential, const Channel& channel, int n,
                                 int k, const ParamTriple& init, const OptimizeOptions& options) {
    if (k < 0 || k >= n) throw domain_error("eigenvalue index k out of range for basis size");
    const double t_min = minimum_t(potential);
    if (!(init.p > 0.0) || !(init.t > t_min) || !(init.s > 0.0))
        throw domain_error("minimize_full: infeasible initial parameters");

    OptimizationResult result;
    FullObjective f{potential, channel, n, k, t_min, options};
    if (options.keep_trace) f.trace = &result.trace;

    Coords start{std::log(init.p), std::log(init.t - t_min), std::log(init.s)};
    Coords best = start;
    // Restart from the incumbent until a fresh simplex stops improving it;
    // a restart re-expands the simplex and escapes premature collapse.
    bool converged_any = false;
    double before = kInf;
    for (int round = 0; round < 8; ++round) {
        const long cap = std::min(options.max_evaluations,
                                  f.evaluations + options.max_evaluations / 8);
        converged_any = nelder_mead(f, best, options, best, cap) || converged_any;
        if (std::isfinite(f.best_value))
            best = {std::log(f.best_params.p), std::log(f.best_params.t - t_min),
                    std::log(f.best_params.s)};
        // Reserve half the budget for the valley walk below.
        if (f.evaluations >= options.max_evaluations / 2) break;
        if (round > 0 && before - f.best_value <= options.value_tolerance) break;
        before = f.best_value;
    }

    // Walk the (t, s) valley.  The landscape is nearly flat along a curve
    // where a larger shift trades against a smaller scale, and a collapsed
    // simplex can stall partway along it.  Probe a geometric grid of shifts
    // around the incumbent, re-optimizing s at each (seeded with the
    // compensating guess s * t_old/t_new), and restart the simplex from any
    // improvement.
    for (int walk = 0; walk < 4 && f.evaluations < options.max_evaluations; ++walk) {
        const ParamTriple incumbent = f.best_params;
        const double dt = incumbent.t - t_min;
        bool improved = false;
        for (double factor : {0.5, 0.63, 0.8, 1.25, 1.6, 2.0, 2.5, 3.2}) {
            const double t = t_min + factor * dt;
            if (t - t_min > kShiftCeiling) continue;
            try {
                MatrixBundle bundle(potential, BasisSpec(n, incumbent.p, t, 1.0), channel);
                OptimizationResult scale =
                    minimize_scale(bundle, k, incumbent.s / factor, options);
                f.evaluations += scale.evaluations;
                if (scale.best_value < f.best_value - options.value_tolerance) {
                    f.best_value = scale.best_value;
                    f.best_params = scale.best_params;
                    if (f.trace) f.trace->emplace_back(scale.best_params, scale.best_value);
                    improved = true;
                }
            } catch (const error&) {
                // infeasible shift; skip
            }
        }
        if (!improved) break;
        best = {std::log(f.best_params.p), std::log(f.best_params.t - t_min),
                std::log(f.best_params.s)};
        nelder_mead(f, best, options, best,
                    std::min(options.max_evaluations,
                             f.evaluations + options.max_evaluations / 8));
    }

    // Final polish over s alone on the best (p, t); the scale path is exact
    // and cheap, and the matrices are already in hand.
    try {
        BasisSpec shape(n, f.best_params.p, f.best_params.t, 1.0);
        MatrixBundle bundle(potential, shape, channel);
        OptimizationResult scale = minimize_scale(bundle, k, f.best_params.s, options);
        f.evaluations += scale.evaluations;
        if (scale.best_value < f.best_value) {
            f.best_value = scale.best_value;
            f.best_params = scale.best_params;
            if (f.trace) f.trace->emplace_back(scale.best_params, scale.best_value);
        }
    } catch (const error&) {
        // keep the simplex result
    }

    result.best_params = f.best_params;
    result.best_value = f.best_value;
    result.evaluations = f.evaluations;
    result.converged = converged_any;
    return result;
}

ParamTriple suggest_initial(const Potential& potential, const Channel& channel) {
    const double t_min = minimum_t(potential);
    double strongest = 0.0;  // exponent alpha of the most singular 1/r^alpha term
    if (potential.min_exponent() < 0.0) strongest = -potential.min_exponent();
    const double lambda_eff = potential.coefficient(-2.0) + channel.centrifugal_constant();
    if (lambda_eff > 0.0) strongest = std::max(strongest, 2.0);

    if (strongest == 2.0 && lambda_eff > 0.0)
        return {2.0, 1.0 + std::fabs(1.0 - std::sqrt(1.0 + 4.0 * lambda_eff)), 1.0};
    if (strongest > 2.0) return {2.0, t_min + 1.0, 1.0};
    return {2.0, std::max(1.0, t_min + 1.0), 1.0};
}

}  // namespace varbound
