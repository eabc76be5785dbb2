#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qbridge/circuit.hpp"
#include "qbridge/state.hpp"

namespace qbridge {

/// Result of one unitary-teleportation run.
///
/// The "hawking" qubit is the single intermediate wire the sender hands to
/// the receiver between the two applications of the transfer operator; its
/// reduced state carries no information about the teleported state.
struct ProtocolReport {
    std::string teleported_state_label;
    int n_pairs = 0;
    int hawking_wire = 0;
    double output_fidelity = 0.0;
    double hawking_fidelity = 0.0;       // against I/2
    double hawking_entropy_nats = 0.0;
    DensityMatrix hawking_reduced_dm;
    double epr_restored_fidelity = 0.0;  // pair block against its reference
};

/// Full register snapshots of a protocol run, for callers that need more
/// than the report (cost functions, recycling).
struct ProtocolRun {
    StateVector midpoint;      // after the sender's operator
    StateVector final_state;   // after the receiver's operator
    DensityMatrix hawking_dm;  // wire-N reduced state at the midpoint
};

/// The six reference states used throughout: Z, X and Y eigenstates.
const std::vector<std::pair<std::string, StateVector>>& test_state_set();

/// Look up one of the six states by label {0,1,plus,minus,left,right}.
StateVector labeled_state(const std::string& label);

/// Entanglement resource on 2N wires: EPR pairs nested as (i, 2N-1-i).
/// Prepended with a sender wire this places register pairs at (i, 2N+1-i).
StateVector epr_resource_block(int n_pairs);

/// Pair block the ideal protocol leaves behind: the nested arrangement,
/// with the first two wires exchanged when N is even (the exact N=2
/// operator restores the pairs up to that relabeling).
StateVector restored_epr_block(int n_pairs);

/// Ideal final register: restored pair block on wires 0..2N-1, the
/// teleported state on wire 2N.
StateVector protocol_target_state(const StateVector& psi, int n_pairs);

/// Run the two-window protocol: psi on wire 0 and nested pairs on wires
/// 1..2N, v applied to wires 0..N and then to wires N..2N. v must be a
/// 2^(N+1)-dimensional unitary.
ProtocolRun run_general_protocol(const StateVector& psi, const Matrix& v, int n_pairs);

/// As run_general_protocol, summarized into a report.
ProtocolReport general_protocol(const StateVector& psi, const Matrix& v, int n_pairs,
                                const std::string& label = "");

/// The N=2 protocol with the exact transfer operator.
ProtocolReport measurement_free_teleport(const StateVector& psi,
                                         const std::string& label = "");

/// Teleport a sequence of states through the same entanglement resource,
/// re-extracting the pair block after each round. Throws if the block's
/// purity drops below 1 - 1e-8, which signals a damaged resource.
std::vector<ProtocolReport> recycle_teleport(
    const std::vector<StateVector>& states);

/// Two-sided thermal purification: energies (one per basis state of an
/// N-qubit side) and inverse temperature. beta may be infinity, selecting
/// the unique ground state; a degenerate ground energy is rejected there.
struct TfdSpec {
    std::vector<double> energies;
    double beta = 0.0;
};

/// (1/sqrt(Z)) sum_n exp(-beta E_n) |n>_A |n>_B on 2N wires, A side first.
StateVector tfd_state(const TfdSpec& spec);

/// Entropy (nats) of the first-N-wire reduced state of a 2N-qubit register.
double black_hole_side_entropy(const StateVector& tfd, int side_qubits);

}  // namespace qbridge
