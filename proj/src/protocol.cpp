#include "qbridge/protocol.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace qbridge {

namespace {

StateVector single_qubit(Complex a0, Complex a1) {
    Vector v(2);
    v << a0, a1;
    return StateVector(1, std::move(v));
}

std::vector<int> range_vec(int first, int last_inclusive) {
    std::vector<int> r(static_cast<std::size_t>(last_inclusive - first + 1));
    std::iota(r.begin(), r.end(), first);
    return r;
}

}  // namespace

const std::vector<std::pair<std::string, StateVector>>& test_state_set() {
    static const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    static const std::vector<std::pair<std::string, StateVector>> set = {
        {"0", single_qubit(1.0, 0.0)},
        {"1", single_qubit(0.0, 1.0)},
        {"plus", single_qubit(inv_sqrt2, inv_sqrt2)},
        {"minus", single_qubit(inv_sqrt2, -inv_sqrt2)},
        {"left", single_qubit(inv_sqrt2, Complex(0.0, -inv_sqrt2))},
        {"right", single_qubit(inv_sqrt2, Complex(0.0, inv_sqrt2))},
    };
    return set;
}

StateVector labeled_state(const std::string& label) {
    for (const auto& [name, state] : test_state_set()) {
        if (name == label) return state;
    }
    throw std::invalid_argument("unknown state label '" + label +
                                "' (expected 0, 1, plus, minus, left or right)");
}

StateVector epr_resource_block(int n_pairs) {
    if (n_pairs < 1) throw std::invalid_argument("epr_resource_block: need at least one pair");
    const int n = 2 * n_pairs;
    Vector v = Vector::Zero(Eigen::Index{1} << n);
    const double amp = std::pow(2.0, -0.5 * n_pairs);
    for (std::size_t bits = 0; bits < (std::size_t{1} << n_pairs); ++bits) {
        std::size_t idx = 0;
        for (int k = 0; k < n_pairs; ++k) {
            if ((bits >> k) & 1u) {
                idx |= detail::bit_mask(k, n) | detail::bit_mask(n - 1 - k, n);
            }
        }
        v(static_cast<Eigen::Index>(idx)) = amp;
    }
    return StateVector(n, std::move(v));
}

StateVector restored_epr_block(int n_pairs) {
    StateVector nested = epr_resource_block(n_pairs);
    if (n_pairs % 2 != 0) return nested;
    std::vector<int> relabel = range_vec(0, 2 * n_pairs - 1);
    relabel[0] = 1;
    relabel[1] = 0;
    return permute_wires(nested, relabel);
}

StateVector protocol_target_state(const StateVector& psi, int n_pairs) {
    return tensor_product(restored_epr_block(n_pairs), psi);
}

ProtocolRun run_general_protocol(const StateVector& psi, const Matrix& v, int n_pairs) {
    if (psi.n_qubits != 1) {
        throw std::invalid_argument("run_general_protocol: teleported state must be one qubit");
    }
    if (n_pairs < 1) {
        throw std::invalid_argument("run_general_protocol: need at least one pair");
    }
    const Eigen::Index want = Eigen::Index{1} << (n_pairs + 1);
    if (v.rows() != want || v.cols() != want) {
        throw std::invalid_argument("run_general_protocol: operator dimension " +
                                    std::to_string(v.rows()) + " does not match " +
                                    std::to_string(n_pairs) + " pairs");
    }
    const int n = 2 * n_pairs + 1;
    StateVector reg = tensor_product(psi, epr_resource_block(n_pairs));
    StateVector midpoint = apply_unitary(reg, v, range_vec(0, n_pairs));
    DensityMatrix hawking = reduced_density(midpoint, {n_pairs});
    StateVector final_state = apply_unitary(midpoint, v, range_vec(n_pairs, 2 * n_pairs));
    return ProtocolRun{std::move(midpoint), std::move(final_state), std::move(hawking)};
}

namespace {

ProtocolReport report_from_run(const StateVector& psi, const ProtocolRun& run,
                               int n_pairs, const std::string& label) {
    const int n = 2 * n_pairs + 1;
    DensityMatrix out = reduced_density(run.final_state, {n - 1});
    DensityMatrix block = reduced_density(run.final_state, range_vec(0, 2 * n_pairs - 1));
    return ProtocolReport{
        label,
        n_pairs,
        n_pairs,
        fidelity(to_density(psi), out),
        fidelity(run.hawking_dm, DensityMatrix::maximally_mixed(1)),
        von_neumann_entropy(run.hawking_dm),
        run.hawking_dm,
        fidelity(block, to_density(restored_epr_block(n_pairs))),
    };
}

}  // namespace

ProtocolReport general_protocol(const StateVector& psi, const Matrix& v, int n_pairs,
                                const std::string& label) {
    ProtocolRun run = run_general_protocol(psi, v, n_pairs);
    return report_from_run(psi, run, n_pairs, label);
}

ProtocolReport measurement_free_teleport(const StateVector& psi, const std::string& label) {
    return general_protocol(psi, build_v(), 2, label);
}

std::vector<ProtocolReport> recycle_teleport(const std::vector<StateVector>& states) {
    if (states.empty()) {
        throw std::invalid_argument("recycle_teleport: empty state sequence");
    }
    const Matrix v = build_v();
    StateVector resource = epr_resource_block(2);
    std::vector<ProtocolReport> reports;
    reports.reserve(states.size());

    for (std::size_t round = 0; round < states.size(); ++round) {
        const StateVector& psi = states[round];
        if (psi.n_qubits != 1) {
            throw std::invalid_argument("recycle_teleport: states must be single qubits");
        }
        StateVector reg = tensor_product(psi, resource);
        StateVector midpoint = apply_unitary(reg, v, {0, 1, 2});
        DensityMatrix hawking = reduced_density(midpoint, {2});
        StateVector final_state = apply_unitary(midpoint, v, {2, 3, 4});
        ProtocolRun run{midpoint, final_state, hawking};
        reports.push_back(report_from_run(psi, run, 2, ""));

        // Re-extract the pair block for the next round.
        DensityMatrix block = reduced_density(final_state, {0, 1, 2, 3});
        HermitianDecomposition dec = hermitian_eig(block.matrix);
        const Eigen::Index top = dec.eigenvalues.size() - 1;
        const double purity = dec.eigenvalues(top);
        if (purity < 1.0 - 1e-8) {
            throw std::runtime_error(
                "recycle_teleport: pair block impure after round " +
                std::to_string(round + 1) + " (largest eigenvalue " +
                std::to_string(purity) + "); resource damaged");
        }
        Vector amps = dec.eigenvectors.col(top);
        // fix the arbitrary eigenvector phase for reproducibility
        Eigen::Index lead;
        amps.cwiseAbs().maxCoeff(&lead);
        amps *= std::conj(amps(lead)) / std::abs(amps(lead));
        amps /= amps.norm();
        StateVector extracted(4, std::move(amps));
        // relabeling the first two wires restores the nested arrangement
        resource = permute_wires(extracted, {1, 0, 2, 3});
    }
    return reports;
}

StateVector tfd_state(const TfdSpec& spec) {
    const std::size_t m = spec.energies.size();
    if (m < 2 || (m & (m - 1)) != 0) {
        throw std::invalid_argument("tfd_state: energies length must be a power of 2 (>= 2)");
    }
    if (!(spec.beta >= 0.0)) {
        throw std::invalid_argument("tfd_state: beta must be non-negative");
    }
    int side = 0;
    while ((std::size_t{1} << side) < m) ++side;
    const int n = 2 * side;
    Vector v = Vector::Zero(Eigen::Index{1} << n);

    if (std::isinf(spec.beta)) {
        std::size_t ground = 0;
        for (std::size_t i = 1; i < m; ++i) {
            if (spec.energies[i] < spec.energies[ground]) ground = i;
        }
        for (std::size_t i = 0; i < m; ++i) {
            if (i != ground && spec.energies[i] == spec.energies[ground]) {
                throw std::invalid_argument(
                    "tfd_state: beta = inf with degenerate ground energy is ill-defined");
            }
        }
        v(static_cast<Eigen::Index>((ground << side) | ground)) = 1.0;
        return StateVector(n, std::move(v));
    }

    const double e_min = *std::min_element(spec.energies.begin(), spec.energies.end());
    double z = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double w = std::exp(-spec.beta * (spec.energies[i] - e_min));
        z += w * w;
    }
    const double scale = 1.0 / std::sqrt(z);
    for (std::size_t i = 0; i < m; ++i) {
        v(static_cast<Eigen::Index>((i << side) | i)) =
            scale * std::exp(-spec.beta * (spec.energies[i] - e_min));
    }
    return StateVector(n, std::move(v));
}

double black_hole_side_entropy(const StateVector& tfd, int side_qubits) {
    if (side_qubits < 1 || tfd.n_qubits != 2 * side_qubits) {
        throw std::invalid_argument("black_hole_side_entropy: register is not 2N qubits");
    }
    return von_neumann_entropy(reduced_density(tfd, range_vec(0, side_qubits - 1)));
}

}  // namespace qbridge
