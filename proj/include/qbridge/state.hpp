#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace qbridge {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

// Wire 0 is the top wire of a circuit diagram and the most significant bit
// of the basis index, so |abc> sits at index (a<<2 | b<<1 | c).

/// Pure state of an n-qubit register. Amplitudes are kept normalized;
/// construction rejects vectors whose norm deviates from 1 by more than 1e-10
/// or whose length is not 2^n_qubits.
struct StateVector {
    int n_qubits = 0;
    Vector amplitudes;

    StateVector(int n, Vector amps);

    std::size_t dim() const { return amplitudes.size(); }

    /// Computational basis state |index> on n qubits.
    static StateVector basis(int n, std::size_t index);
    /// |00...0>
    static StateVector zero(int n) { return basis(n, 0); }
};

/// Mixed state. Construction rejects matrices that are not Hermitian
/// (within 1e-10 max elementwise), not unit trace (1e-10), or that have an
/// eigenvalue below -1e-10.
struct DensityMatrix {
    int n_qubits = 0;
    Matrix matrix;

    DensityMatrix(int n, Matrix m);

    std::size_t dim() const { return matrix.rows(); }

    /// Maximally mixed state I/2^n.
    static DensityMatrix maximally_mixed(int n);
};

/// Spectral decomposition M = U diag(eigenvalues) U^dagger of a Hermitian
/// matrix, eigenvalues ascending.
struct HermitianDecomposition {
    Eigen::VectorXd eigenvalues;
    Matrix eigenvectors;
};

/// Decompose a Hermitian matrix. Throws if the input is not Hermitian within
/// 1e-10 or the reconstruction error exceeds 1e-9.
HermitianDecomposition hermitian_eig(const Matrix& m);

/// Kronecker product: amplitude of the result at (i * 2^b.n + j) is a_i * b_j.
StateVector tensor_product(const StateVector& a, const StateVector& b);

/// Apply a 2^k x 2^k unitary to the ordered target wires (targets[0] is the
/// most significant bit of the gate's own index space), identity elsewhere.
/// Rejects non-unitary matrices, duplicate/out-of-range wires, and dimension
/// mismatches.
StateVector apply_unitary(const StateVector& state, const Matrix& u,
                          const std::vector<int>& targets);

/// rho -> U rho U^dagger with U lifted onto the target wires.
DensityMatrix apply_unitary(const DensityMatrix& dm, const Matrix& u,
                            const std::vector<int>& targets);

/// Outer product |psi><psi|.
DensityMatrix to_density(const StateVector& state);

/// Trace out every wire not in `keep`. The kept wires retain their relative
/// order. Rejects an empty keep set, duplicates, and out-of-range wires.
DensityMatrix partial_trace(const DensityMatrix& dm, const std::vector<int>& keep);

/// Reduced state of a pure state, equal to partial_trace(to_density(state), keep)
/// but without forming the full density matrix.
DensityMatrix reduced_density(const StateVector& state, const std::vector<int>& keep);

/// S = -sum lambda_i ln lambda_i in nats, with 0 ln 0 := 0. Eigenvalues in
/// [-1e-10, 0) are treated as 0.
double von_neumann_entropy(const DensityMatrix& dm);

/// Hermitian PSD square root via eigendecomposition. Eigenvalues below -1e-8
/// are rejected as non-PSD; values in [-1e-8, 0) are clamped to 0.
Matrix hermitian_sqrt(const DensityMatrix& dm);

/// Uhlmann fidelity F = (tr sqrt(sqrt(rho1) rho2 sqrt(rho1)))^2.
double fidelity(const DensityMatrix& rho1, const DensityMatrix& rho2);

/// Relabel wires: input wire w becomes output wire dst_of_src[w]. The map
/// must be a permutation of 0..n-1.
StateVector permute_wires(const StateVector& state, const std::vector<int>& dst_of_src);

namespace detail {

inline int bit_at(std::size_t index, int wire, int n_qubits) {
    return static_cast<int>((index >> (n_qubits - 1 - wire)) & 1u);
}

inline std::size_t bit_mask(int wire, int n_qubits) {
    return std::size_t{1} << (n_qubits - 1 - wire);
}

bool is_unitary(const Matrix& u, double tol);

}  // namespace detail

}  // namespace qbridge
