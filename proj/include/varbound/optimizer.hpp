#pragma once

#include <array>
#include <optional>
#include <vector>

#include "varbound/eigensolver.hpp"

namespace varbound {

struct ParamTriple {
    double p;
    double t;
    double s;
};

struct OptimizationResult {
    ParamTriple best_params;
    double best_value;      // the optimized k-th eigenvalue bound
    long evaluations;
    bool converged;
    std::vector<std::pair<ParamTriple, double>> trace;  // filled when requested
};

struct OptimizeOptions {
    bool keep_trace = false;
    long max_evaluations = 20000;
    double value_tolerance = 1e-10;   // simplex spread
    double diameter_tolerance = 1e-8; // simplex size in transformed coordinates
};

// Minimize the k-th bound over the scale s alone, on a fixed bundle: no
// Gamma function is re-evaluated.  Brackets by geometric expansion from
// s_init, then golden-section refinement.
OptimizationResult minimize_scale(const MatrixBundle& bundle, int k, double s_init,
                                  const OptimizeOptions& options = {});

// Nelder-Mead over (log p, log(t - t_min), log s); every iterate is
// feasible by construction.  Restarts once from the best vertex.
OptimizationResult minimize_full(const Potential& potential, const Channel& channel, int n,
                                 int k, const ParamTriple& init,
                                 const OptimizeOptions& options = {});

// Starting triple (p, t, s) from the small-r balance of the trial function:
// with an r^-2 term (explicit or centrifugal) and no steeper singularity,
// t = 1 + |1 - sqrt(1 + 4 lambda_eff)|; otherwise t stays near its lower
// feasibility limit.
ParamTriple suggest_initial(const Potential& potential, const Channel& channel);

}  // namespace varbound
