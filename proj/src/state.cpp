#include "qbridge/state.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>

namespace qbridge {

namespace {

bool is_power_of_two(std::size_t x) { return x > 0 && (x & (x - 1)) == 0; }

void check_wires(const std::vector<int>& wires, int n_qubits, const char* what) {
    std::set<int> seen;
    for (int w : wires) {
        if (w < 0 || w >= n_qubits) {
            throw std::invalid_argument(std::string(what) + ": wire " +
                                        std::to_string(w) + " out of range for " +
                                        std::to_string(n_qubits) + " qubits");
        }
        if (!seen.insert(w).second) {
            throw std::invalid_argument(std::string(what) + ": duplicate wire " +
                                        std::to_string(w));
        }
    }
}

}  // namespace

namespace detail {

bool is_unitary(const Matrix& u, double tol) {
    if (u.rows() != u.cols()) return false;
    Matrix g = u.adjoint() * u;
    g -= Matrix::Identity(u.rows(), u.cols());
    return g.cwiseAbs().maxCoeff() <= tol;
}

}  // namespace detail

StateVector::StateVector(int n, Vector amps) : n_qubits(n), amplitudes(std::move(amps)) {
    if (n < 0) throw std::invalid_argument("StateVector: negative qubit count");
    if (amplitudes.size() != (Eigen::Index{1} << n)) {
        throw std::invalid_argument("StateVector: amplitude length " +
                                    std::to_string(amplitudes.size()) +
                                    " != 2^" + std::to_string(n));
    }
    double norm = amplitudes.norm();
    if (std::abs(norm - 1.0) > 1e-10) {
        throw std::invalid_argument("StateVector: norm " + std::to_string(norm) +
                                    " deviates from 1 beyond 1e-10");
    }
}

StateVector StateVector::basis(int n, std::size_t index) {
    Vector v = Vector::Zero(Eigen::Index{1} << n);
    v(static_cast<Eigen::Index>(index)) = 1.0;
    return StateVector(n, std::move(v));
}

DensityMatrix::DensityMatrix(int n, Matrix m) : n_qubits(n), matrix(std::move(m)) {
    const Eigen::Index d = Eigen::Index{1} << n;
    if (n < 0 || matrix.rows() != d || matrix.cols() != d) {
        throw std::invalid_argument("DensityMatrix: matrix is not 2^n x 2^n");
    }
    double herm = (matrix - matrix.adjoint()).cwiseAbs().maxCoeff();
    if (herm > 1e-10) {
        throw std::invalid_argument("DensityMatrix: not Hermitian (max deviation " +
                                    std::to_string(herm) + ")");
    }
    double tr = matrix.trace().real();
    if (std::abs(tr - 1.0) > 1e-10) {
        throw std::invalid_argument("DensityMatrix: trace " + std::to_string(tr) +
                                    " != 1");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(matrix, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-10) {
        throw std::invalid_argument("DensityMatrix: eigenvalue " +
                                    std::to_string(es.eigenvalues().minCoeff()) +
                                    " below -1e-10");
    }
}

DensityMatrix DensityMatrix::maximally_mixed(int n) {
    const Eigen::Index d = Eigen::Index{1} << n;
    return DensityMatrix(n, Matrix::Identity(d, d) / static_cast<double>(d));
}

HermitianDecomposition hermitian_eig(const Matrix& m) {
    if (m.rows() != m.cols() || (m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-10) {
        throw std::invalid_argument("hermitian_eig: matrix not Hermitian");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(m);
    if (es.info() != Eigen::Success) {
        throw std::runtime_error("hermitian_eig: eigensolver failed to converge");
    }
    HermitianDecomposition dec{es.eigenvalues(), es.eigenvectors()};
    Matrix rec = dec.eigenvectors * dec.eigenvalues.asDiagonal().toDenseMatrix().cast<Complex>() *
                 dec.eigenvectors.adjoint();
    if ((rec - m).cwiseAbs().maxCoeff() > 1e-9) {
        throw std::runtime_error("hermitian_eig: reconstruction error exceeds 1e-9");
    }
    return dec;
}

StateVector tensor_product(const StateVector& a, const StateVector& b) {
    Vector out(a.amplitudes.size() * b.amplitudes.size());
    const Eigen::Index db = b.amplitudes.size();
    for (Eigen::Index i = 0; i < a.amplitudes.size(); ++i) {
        out.segment(i * db, db) = a.amplitudes(i) * b.amplitudes;
    }
    return StateVector(a.n_qubits + b.n_qubits, std::move(out));
}

StateVector apply_unitary(const StateVector& state, const Matrix& u,
                          const std::vector<int>& targets) {
    const int n = state.n_qubits;
    const int k = static_cast<int>(targets.size());
    check_wires(targets, n, "apply_unitary");
    if (u.rows() != (Eigen::Index{1} << k) || u.cols() != u.rows()) {
        throw std::invalid_argument("apply_unitary: matrix dimension does not match " +
                                    std::to_string(k) + " target wires");
    }
    if (!detail::is_unitary(u, 1e-10)) {
        throw std::invalid_argument("apply_unitary: matrix is not unitary within 1e-10");
    }

    // Positions (from the LSB) of target and non-target wires.
    std::vector<int> tpos(k);
    for (int i = 0; i < k; ++i) tpos[i] = n - 1 - targets[i];
    std::vector<int> rest;
    for (int w = 0; w < n; ++w) {
        if (std::find(targets.begin(), targets.end(), w) == targets.end()) {
            rest.push_back(n - 1 - w);
        }
    }

    const std::size_t gate_dim = std::size_t{1} << k;
    const std::size_t n_outer = std::size_t{1} << rest.size();
    Vector out = Vector::Zero(state.amplitudes.size());
    Vector scratch(gate_dim);
    for (std::size_t outer = 0; outer < n_outer; ++outer) {
        std::size_t base = 0;
        for (std::size_t b = 0; b < rest.size(); ++b) {
            if ((outer >> b) & 1u) base |= std::size_t{1} << rest[b];
        }
        for (std::size_t g = 0; g < gate_dim; ++g) {
            std::size_t idx = base;
            for (int i = 0; i < k; ++i) {
                if ((g >> (k - 1 - i)) & 1u) idx |= std::size_t{1} << tpos[i];
            }
            scratch(static_cast<Eigen::Index>(g)) =
                state.amplitudes(static_cast<Eigen::Index>(idx));
        }
        scratch = u * scratch;
        for (std::size_t g = 0; g < gate_dim; ++g) {
            std::size_t idx = base;
            for (int i = 0; i < k; ++i) {
                if ((g >> (k - 1 - i)) & 1u) idx |= std::size_t{1} << tpos[i];
            }
            out(static_cast<Eigen::Index>(idx)) = scratch(static_cast<Eigen::Index>(g));
        }
    }
    return StateVector(n, std::move(out));
}

DensityMatrix apply_unitary(const DensityMatrix& dm, const Matrix& u,
                            const std::vector<int>& targets) {
    const int n = dm.n_qubits;
    const Eigen::Index d = dm.dim();
    check_wires(targets, n, "apply_unitary");
    // Lift u to the full register by applying it to each basis column.
    Matrix full(d, d);
    for (Eigen::Index j = 0; j < d; ++j) {
        StateVector col = apply_unitary(StateVector::basis(n, static_cast<std::size_t>(j)),
                                        u, targets);
        full.col(j) = col.amplitudes;
    }
    return DensityMatrix(n, full * dm.matrix * full.adjoint());
}

DensityMatrix to_density(const StateVector& state) {
    return DensityMatrix(state.n_qubits,
                         state.amplitudes * state.amplitudes.adjoint());
}

DensityMatrix partial_trace(const DensityMatrix& dm, const std::vector<int>& keep) {
    const int n = dm.n_qubits;
    if (keep.empty()) throw std::invalid_argument("partial_trace: empty keep set");
    check_wires(keep, n, "partial_trace");
    std::vector<int> kept(keep);
    std::sort(kept.begin(), kept.end());

    std::vector<int> traced;
    for (int w = 0; w < n; ++w) {
        if (!std::binary_search(kept.begin(), kept.end(), w)) traced.push_back(w);
    }

    const int nk = static_cast<int>(kept.size());
    const Eigen::Index dk = Eigen::Index{1} << nk;
    Matrix out = Matrix::Zero(dk, dk);

    const std::size_t n_tr = std::size_t{1} << traced.size();
    for (std::size_t r = 0; r < static_cast<std::size_t>(dk); ++r) {
        for (std::size_t c = 0; c < static_cast<std::size_t>(dk); ++c) {
            std::size_t row_base = 0, col_base = 0;
            for (int i = 0; i < nk; ++i) {
                std::size_t m = detail::bit_mask(kept[i], n);
                if ((r >> (nk - 1 - i)) & 1u) row_base |= m;
                if ((c >> (nk - 1 - i)) & 1u) col_base |= m;
            }
            Complex sum = 0.0;
            for (std::size_t t = 0; t < n_tr; ++t) {
                std::size_t tbits = 0;
                for (std::size_t b = 0; b < traced.size(); ++b) {
                    if ((t >> b) & 1u) tbits |= detail::bit_mask(traced[b], n);
                }
                sum += dm.matrix(static_cast<Eigen::Index>(row_base | tbits),
                                 static_cast<Eigen::Index>(col_base | tbits));
            }
            out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = sum;
        }
    }
    return DensityMatrix(nk, std::move(out));
}

DensityMatrix reduced_density(const StateVector& state, const std::vector<int>& keep) {
    const int n = state.n_qubits;
    if (keep.empty()) throw std::invalid_argument("reduced_density: empty keep set");
    check_wires(keep, n, "reduced_density");
    std::vector<int> kept(keep);
    std::sort(kept.begin(), kept.end());

    std::vector<int> traced;
    for (int w = 0; w < n; ++w) {
        if (!std::binary_search(kept.begin(), kept.end(), w)) traced.push_back(w);
    }

    const int nk = static_cast<int>(kept.size());
    const Eigen::Index dk = Eigen::Index{1} << nk;
    const std::size_t n_tr = std::size_t{1} << traced.size();

    // rho(r,c) = sum over traced configurations of amp(r,t) conj(amp(c,t))
    Matrix out = Matrix::Zero(dk, dk);
    std::vector<std::size_t> kept_index(static_cast<std::size_t>(dk));
    for (std::size_t r = 0; r < static_cast<std::size_t>(dk); ++r) {
        std::size_t base = 0;
        for (int i = 0; i < nk; ++i) {
            if ((r >> (nk - 1 - i)) & 1u) base |= detail::bit_mask(kept[i], n);
        }
        kept_index[r] = base;
    }
    for (std::size_t t = 0; t < n_tr; ++t) {
        std::size_t tbits = 0;
        for (std::size_t b = 0; b < traced.size(); ++b) {
            if ((t >> b) & 1u) tbits |= detail::bit_mask(traced[b], n);
        }
        for (std::size_t r = 0; r < static_cast<std::size_t>(dk); ++r) {
            Complex ar = state.amplitudes(static_cast<Eigen::Index>(kept_index[r] | tbits));
            if (ar == Complex(0.0, 0.0)) continue;
            for (std::size_t c = 0; c < static_cast<std::size_t>(dk); ++c) {
                Complex ac = state.amplitudes(static_cast<Eigen::Index>(kept_index[c] | tbits));
                out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) +=
                    ar * std::conj(ac);
            }
        }
    }
    return DensityMatrix(nk, std::move(out));
}

double von_neumann_entropy(const DensityMatrix& dm) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(dm.matrix, Eigen::EigenvaluesOnly);
    double s = 0.0;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        double lam = es.eigenvalues()(i);
        if (lam < 0.0) lam = 0.0;  // roundoff in [-1e-10, 0)
        if (lam > 0.0) s -= lam * std::log(lam);
    }
    return s;
}

Matrix hermitian_sqrt(const DensityMatrix& dm) {
    HermitianDecomposition dec = hermitian_eig(dm.matrix);
    Eigen::VectorXd lam = dec.eigenvalues;
    for (Eigen::Index i = 0; i < lam.size(); ++i) {
        if (lam(i) < -1e-8) {
            throw std::invalid_argument("hermitian_sqrt: eigenvalue " +
                                        std::to_string(lam(i)) + " is not PSD");
        }
        lam(i) = lam(i) > 0.0 ? std::sqrt(lam(i)) : 0.0;
    }
    return dec.eigenvectors * lam.asDiagonal().toDenseMatrix().cast<Complex>() *
           dec.eigenvectors.adjoint();
}

double fidelity(const DensityMatrix& rho1, const DensityMatrix& rho2) {
    if (rho1.dim() != rho2.dim()) {
        throw std::invalid_argument("fidelity: dimension mismatch");
    }
    Matrix s = hermitian_sqrt(rho1);
    Matrix inner = s * rho2.matrix * s;
    // inner is PSD up to roundoff; sum the square roots of its eigenvalues
    Eigen::SelfAdjointEigenSolver<Matrix> es(inner, Eigen::EigenvaluesOnly);
    double tr = 0.0;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        double lam = es.eigenvalues()(i);
        if (lam > 0.0) tr += std::sqrt(lam);
    }
    return tr * tr;
}

StateVector permute_wires(const StateVector& state, const std::vector<int>& dst_of_src) {
    const int n = state.n_qubits;
    if (static_cast<int>(dst_of_src.size()) != n) {
        throw std::invalid_argument("permute_wires: map size != qubit count");
    }
    check_wires(dst_of_src, n, "permute_wires");
    Vector out = Vector::Zero(state.amplitudes.size());
    for (std::size_t idx = 0; idx < static_cast<std::size_t>(state.amplitudes.size()); ++idx) {
        std::size_t dst = 0;
        for (int w = 0; w < n; ++w) {
            if (detail::bit_at(idx, w, n)) dst |= detail::bit_mask(dst_of_src[w], n);
        }
        out(static_cast<Eigen::Index>(dst)) = state.amplitudes(static_cast<Eigen::Index>(idx));
    }
    return StateVector(n, std::move(out));
}

}  // namespace qbridge
