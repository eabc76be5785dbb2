#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qbridge/state.hpp"

namespace qbridge {

/// Layered rotation circuit: an RY layer on every wire, then `reps`
/// repetitions of a linear CNOT staircase followed by another RY layer.
/// Parameter count is n_qubits * (reps + 1).
struct AnsatzSpec {
    int n_qubits = 0;
    int reps = 0;
    std::vector<double> thetas;
};

/// Compose the ansatz into its (real orthogonal) matrix.
Matrix ry_ansatz(const AnsatzSpec& spec);

/// Protocol quality of a candidate transfer operator built from `thetas`
/// for N pairs: one minus the average over the state set of
/// (final-state fidelity + exchanged-qubit entropy / ln 2) / 2.
/// Zero exactly when every state teleports perfectly and the exchanged
/// qubit is maximally mixed. The repetition count is inferred from the
/// parameter count. An empty state set selects the six reference states.
double cost(const std::vector<double>& thetas, int n_pairs,
            const std::vector<StateVector>& state_set = {});

struct OptimizerConfig {
    int max_iters = 500;  // cost evaluations per restart
    int restarts = 5;
    std::uint64_t rng_seed = 0;
    double tol = 1e-8;    // stop a restart once the simplex spread is below this
};

struct RestartTrace {
    std::vector<double> costs;  // one entry per evaluation
    std::vector<double> best_thetas;
    double best_cost = 0.0;
    // protocol quality at best_thetas, over the six reference states
    double fidelity_mean = 0.0;
    double fidelity_sd = 0.0;
    double entropy_over_ln2_mean = 0.0;
    double entropy_over_ln2_sd = 0.0;
};

struct OptimizationTrace {
    int n_pairs = 0;
    int reps = 0;
    std::vector<RestartTrace> restarts;
    std::size_t best_restart = 0;

    const RestartTrace& best() const { return restarts[best_restart]; }
};

/// Search for a transfer operator on N+1 qubits: `restarts` independent
/// simplex descents from angles drawn uniformly in [0, 2pi), each capped at
/// max_iters cost evaluations. Deterministic per seed; restarts own derived
/// RNG streams, so they may run in any order.
OptimizationTrace optimize(int n_pairs, int reps, const OptimizerConfig& cfg);

struct VEquivalence {
    double gate_overlap = 0.0;  // |tr(A^dagger B)| / 8 against the exact operator
    double cost_value = 0.0;    // cost of the candidate at N=2
    bool equivalent = false;    // cost below 1e-6
};

/// Compare a 3-qubit ansatz parameter vector against the exact N=2 transfer
/// operator, both as a raw matrix overlap and through the protocol cost.
VEquivalence verify_v_equivalence(const std::vector<double>& thetas);

}  // namespace qbridge
