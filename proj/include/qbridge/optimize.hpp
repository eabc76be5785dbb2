#pragma once

#include <functional>
#include <vector>

namespace qbridge {

struct MinimizeResult {
    std::vector<double> best_x;
    double best_value = 0.0;
    std::vector<double> eval_trace;  // objective value of every evaluation, in order
};

/// Derivative-free simplex minimization (Nelder-Mead with the
/// dimension-adaptive expansion/contraction/shrink coefficients).
/// Stops after max_evals objective evaluations or once the simplex value
/// spread falls below tol. Deterministic for a given starting point.
MinimizeResult nelder_mead(const std::function<double(const std::vector<double>&)>& objective,
                           std::vector<double> x0, int max_evals, double tol,
                           double initial_step = 1.0);

}  // namespace qbridge
