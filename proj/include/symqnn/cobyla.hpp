#pragma once

#include <functional>
#include <string>
#include <vector>

namespace symqnn {

/// Budget and trust-region bounds for the derivative-free optimizer.
/// One iteration is one objective evaluation.
struct CobylaOptions {
    int max_evaluations = 1000;
    double initial_step = 0.5;  // starting trust radius (radians here)
    double tolerance = 1e-4;    // final trust radius; stop below it
};

struct CobylaResult {
    std::vector<double> best_point;
    double best_value = 0.0;
    std::vector<double> history;  // best-so-far after every evaluation
    int evaluations = 0;
    std::string status;
};

using Objective = std::function<double(const std::vector<double>&)>;

/// Derivative-free minimization by linear approximation over a simplex of
/// n+1 points inside a shrinking trust region (Powell's COBYLA scheme;
/// with no constraints the machinery reduces to the trust-region loop).
/// Deterministic given (objective, x0, options). The returned point is
/// never worse than the start. A non-finite objective value aborts with a
/// diagnostic.
CobylaResult minimize_cobyla(const Objective& objective, const std::vector<double>& x0,
                             const CobylaOptions& options);

}  // namespace symqnn
