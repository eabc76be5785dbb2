#include "qbridge/variational.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "qbridge/circuit.hpp"
#include "qbridge/optimize.hpp"
#include "qbridge/protocol.hpp"
#include "qbridge/rng.hpp"

namespace qbridge {

namespace {

Matrix lift_gate(const Gate& g, int n_qubits) {
    const Eigen::Index d = Eigen::Index{1} << n_qubits;
    Matrix m(d, d);
    for (Eigen::Index j = 0; j < d; ++j) {
        StateVector col = apply_unitary(
            StateVector::basis(n_qubits, static_cast<std::size_t>(j)), g.matrix, g.wires);
        m.col(j) = col.amplitudes;
    }
    return m;
}

Matrix staircase(int q) {
    const Eigen::Index d = Eigen::Index{1} << q;
    Matrix s = Matrix::Identity(d, d);
    for (int w = 0; w + 1 < q; ++w) {
        s = lift_gate(Gate::cnot(w, w + 1), q) * s;
    }
    return s;
}

Matrix ry_layer(int q, const double* thetas) {
    Matrix layer(1, 1);
    layer(0, 0) = 1.0;
    for (int w = 0; w < q; ++w) {
        Matrix r = gates::ry(thetas[w]);
        Matrix next(layer.rows() * 2, layer.cols() * 2);
        next.topLeftCorner(layer.rows(), layer.cols()) = r(0, 0) * layer;
        next.topRightCorner(layer.rows(), layer.cols()) = r(0, 1) * layer;
        next.bottomLeftCorner(layer.rows(), layer.cols()) = r(1, 0) * layer;
        next.bottomRightCorner(layer.rows(), layer.cols()) = r(1, 1) * layer;
        layer = std::move(next);
    }
    return layer;
}

const double ln2 = std::log(2.0);

std::vector<StateVector> default_states() {
    std::vector<StateVector> states;
    for (const auto& [label, psi] : test_state_set()) states.push_back(psi);
    return states;
}

struct CostBreakdown {
    double cost = 0.0;
    double fidelity_mean = 0.0, fidelity_sd = 0.0;
    double entropy_mean = 0.0, entropy_sd = 0.0;  // over ln 2
};

CostBreakdown evaluate(const Matrix& v, int n_pairs, const std::vector<StateVector>& states) {
    std::vector<double> fs, ss;
    fs.reserve(states.size());
    ss.reserve(states.size());
    for (const StateVector& psi : states) {
        ProtocolRun run = run_general_protocol(psi, v, n_pairs);
        StateVector target = protocol_target_state(psi, n_pairs);
        const Complex overlap = target.amplitudes.dot(run.final_state.amplitudes);
        fs.push_back(std::norm(overlap));
        ss.push_back(von_neumann_entropy(run.hawking_dm) / ln2);
    }
    auto mean_sd = [](const std::vector<double>& xs) {
        double mean = 0.0;
        for (double x : xs) mean += x;
        mean /= static_cast<double>(xs.size());
        double var = 0.0;
        if (xs.size() > 1) {
            for (double x : xs) var += (x - mean) * (x - mean);
            var /= static_cast<double>(xs.size() - 1);
        }
        return std::pair<double, double>{mean, std::sqrt(var)};
    };
    CostBreakdown b;
    std::tie(b.fidelity_mean, b.fidelity_sd) = mean_sd(fs);
    std::tie(b.entropy_mean, b.entropy_sd) = mean_sd(ss);
    b.cost = std::max(0.0, 1.0 - 0.5 * (b.fidelity_mean + b.entropy_mean));
    return b;
}

}  // namespace

Matrix ry_ansatz(const AnsatzSpec& spec) {
    const int q = spec.n_qubits;
    if (q < 1 || spec.reps < 0) {
        throw std::invalid_argument("ry_ansatz: need n_qubits >= 1 and reps >= 0");
    }
    const std::size_t want = static_cast<std::size_t>(q) * (spec.reps + 1);
    if (spec.thetas.size() != want) {
        throw std::invalid_argument("ry_ansatz: expected " + std::to_string(want) +
                                    " angles, got " + std::to_string(spec.thetas.size()));
    }
    Matrix s = staircase(q);
    Matrix u = ry_layer(q, spec.thetas.data());
    for (int r = 1; r <= spec.reps; ++r) {
        u = ry_layer(q, spec.thetas.data() + static_cast<std::ptrdiff_t>(r) * q) * (s * u);
    }
    return u;
}

double cost(const std::vector<double>& thetas, int n_pairs,
            const std::vector<StateVector>& state_set) {
    if (n_pairs < 1) throw std::invalid_argument("cost: need at least one pair");
    const int q = n_pairs + 1;
    if (thetas.empty() || thetas.size() % static_cast<std::size_t>(q) != 0) {
        throw std::invalid_argument("cost: parameter count must be a multiple of " +
                                    std::to_string(q));
    }
    const int reps = static_cast<int>(thetas.size()) / q - 1;
    Matrix v = ry_ansatz(AnsatzSpec{q, reps, thetas});
    const std::vector<StateVector>& states = state_set.empty() ? default_states() : state_set;
    return evaluate(v, n_pairs, states).cost;
}

OptimizationTrace optimize(int n_pairs, int reps, const OptimizerConfig& cfg) {
    if (n_pairs < 1 || reps < 0) {
        throw std::invalid_argument("optimize: need n_pairs >= 1 and reps >= 0");
    }
    if (cfg.max_iters < 1 || cfg.restarts < 1) {
        throw std::invalid_argument("optimize: max_iters and restarts must be >= 1");
    }
    const int q = n_pairs + 1;
    const std::size_t n_par = static_cast<std::size_t>(q) * (reps + 1);
    const std::vector<StateVector> states = default_states();

    auto objective = [&](const std::vector<double>& th) { return cost(th, n_pairs, states); };

    OptimizationTrace trace{n_pairs, reps, {}, 0};
    for (int r = 0; r < cfg.restarts; ++r) {
        std::mt19937_64 rng(detail::mix_seed(cfg.rng_seed, static_cast<std::uint64_t>(r)));
        std::uniform_real_distribution<double> unif(0.0, 2.0 * M_PI);
        std::vector<double> x0(n_par);
        for (double& x : x0) x = unif(rng);

        MinimizeResult res = nelder_mead(objective, std::move(x0), cfg.max_iters, cfg.tol);
        Matrix v = ry_ansatz(AnsatzSpec{q, reps, res.best_x});
        CostBreakdown b = evaluate(v, n_pairs, states);
        trace.restarts.push_back(RestartTrace{
            std::move(res.eval_trace), std::move(res.best_x), res.best_value,
            b.fidelity_mean, b.fidelity_sd, b.entropy_mean, b.entropy_sd});
        if (trace.restarts[static_cast<std::size_t>(r)].best_cost <
            trace.restarts[trace.best_restart].best_cost) {
            trace.best_restart = static_cast<std::size_t>(r);
        }
    }
    return trace;
}

VEquivalence verify_v_equivalence(const std::vector<double>& thetas) {
    if (thetas.empty() || thetas.size() % 3 != 0) {
        throw std::invalid_argument("verify_v_equivalence: parameter count must fit 3 qubits");
    }
    const int reps = static_cast<int>(thetas.size()) / 3 - 1;
    Matrix a = ry_ansatz(AnsatzSpec{3, reps, thetas});
    Matrix b = build_v();
    VEquivalence out;
    out.gate_overlap = std::abs((a.adjoint() * b).trace()) / 8.0;
    out.cost_value = cost(thetas, 2);
    out.equivalent = out.cost_value < 1e-6;
    return out;
}

}  // namespace qbridge
