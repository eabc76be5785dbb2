#include "qbridge/circuit.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace qbridge {

namespace gates {

namespace {
const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
}

Matrix h() {
    Matrix m(2, 2);
    m << inv_sqrt2, inv_sqrt2, inv_sqrt2, -inv_sqrt2;
    return m;
}

Matrix x() {
    Matrix m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

Matrix y() {
    Matrix m(2, 2);
    m << 0, Complex(0, -1), Complex(0, 1), 0;
    return m;
}

Matrix z() {
    Matrix m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}

Matrix s() {
    Matrix m(2, 2);
    m << 1, 0, 0, Complex(0, 1);
    return m;
}

Matrix sdg() {
    Matrix m(2, 2);
    m << 1, 0, 0, Complex(0, -1);
    return m;
}

Matrix ry(double theta) {
    Matrix m(2, 2);
    m << std::cos(theta / 2), -std::sin(theta / 2),
         std::sin(theta / 2),  std::cos(theta / 2);
    return m;
}

Matrix cnot() {
    Matrix m = Matrix::Zero(4, 4);
    m(0, 0) = 1;
    m(1, 1) = 1;
    m(2, 3) = 1;
    m(3, 2) = 1;
    return m;
}

Matrix cz() {
    Matrix m = Matrix::Identity(4, 4);
    m(3, 3) = -1;
    return m;
}

Matrix swap() {
    Matrix m = Matrix::Zero(4, 4);
    m(0, 0) = 1;
    m(1, 2) = 1;
    m(2, 1) = 1;
    m(3, 3) = 1;
    return m;
}

}  // namespace gates

Gate::Gate(std::string name_, Matrix m, std::vector<int> wires_)
    : name(std::move(name_)), matrix(std::move(m)), wires(std::move(wires_)) {
    const Eigen::Index want = Eigen::Index{1} << wires.size();
    if (matrix.rows() != want || matrix.cols() != want) {
        throw std::invalid_argument("Gate '" + name + "': matrix dimension does not match " +
                                    std::to_string(wires.size()) + " wires");
    }
    if (!detail::is_unitary(matrix, 1e-10)) {
        throw std::invalid_argument("Gate '" + name + "': matrix is not unitary within 1e-10");
    }
}

namespace {

void check_step(const CircuitStep& step, int n_wires, int n_cbits) {
    auto check_gate_wires = [&](const Gate& g) {
        for (int w : g.wires) {
            if (w < 0 || w >= n_wires) {
                throw std::invalid_argument("Circuit: gate '" + g.name + "' references wire " +
                                            std::to_string(w) + " outside register of " +
                                            std::to_string(n_wires));
            }
        }
    };
    auto check_cbit = [&](int b) {
        if (b < 0 || b >= n_cbits) {
            throw std::invalid_argument("Circuit: classical bit " + std::to_string(b) +
                                        " outside register of " + std::to_string(n_cbits));
        }
    };
    if (const Gate* g = std::get_if<Gate>(&step)) {
        check_gate_wires(*g);
    } else if (const Measure* m = std::get_if<Measure>(&step)) {
        if (m->wire < 0 || m->wire >= n_wires) {
            throw std::invalid_argument("Circuit: measurement of out-of-range wire " +
                                        std::to_string(m->wire));
        }
        check_cbit(m->cbit);
    } else if (const ClassicallyControlled* cc = std::get_if<ClassicallyControlled>(&step)) {
        check_gate_wires(cc->gate);
        check_cbit(cc->cbit);
    }
}

}  // namespace

Circuit& Circuit::add(Gate g) {
    CircuitStep step = std::move(g);
    check_step(step, n_wires, n_cbits);
    steps.push_back(std::move(step));
    return *this;
}

Circuit& Circuit::add(Measure m) {
    CircuitStep step = m;
    check_step(step, n_wires, n_cbits);
    steps.push_back(step);
    return *this;
}

Circuit& Circuit::add(ClassicallyControlled c) {
    CircuitStep step = std::move(c);
    check_step(step, n_wires, n_cbits);
    steps.push_back(std::move(step));
    return *this;
}

namespace {

// Collapse onto the branch where `wire` reads `outcome`, renormalizing.
// Returns the branch probability before collapse.
double collapse(Vector& amps, int wire, int n, int outcome) {
    double p = 0.0;
    for (Eigen::Index i = 0; i < amps.size(); ++i) {
        if (detail::bit_at(static_cast<std::size_t>(i), wire, n) == outcome) {
            p += std::norm(amps(i));
        }
    }
    if (p <= 0.0) return 0.0;
    const double scale = 1.0 / std::sqrt(p);
    for (Eigen::Index i = 0; i < amps.size(); ++i) {
        if (detail::bit_at(static_cast<std::size_t>(i), wire, n) == outcome) {
            amps(i) *= scale;
        } else {
            amps(i) = 0.0;
        }
    }
    return p;
}

MeasurementRecord run_impl(const Circuit& c, const StateVector& input,
                           std::mt19937_64* rng, const std::vector<int>* forced) {
    if (input.n_qubits != c.n_wires) {
        throw std::invalid_argument("run_circuit: input register width " +
                                    std::to_string(input.n_qubits) + " != circuit width " +
                                    std::to_string(c.n_wires));
    }
    for (const CircuitStep& step : c.steps) check_step(step, c.n_wires, c.n_cbits);

    StateVector state = input;
    std::vector<int> cbits(static_cast<std::size_t>(c.n_cbits), 0);
    std::size_t n_measured = 0;

    for (const CircuitStep& step : c.steps) {
        if (const Gate* g = std::get_if<Gate>(&step)) {
            state = apply_unitary(state, g->matrix, g->wires);
        } else if (const Measure* m = std::get_if<Measure>(&step)) {
            int outcome;
            if (forced) {
                if (n_measured >= forced->size()) {
                    throw std::invalid_argument("run_circuit_forced: not enough forced outcomes");
                }
                outcome = (*forced)[n_measured];
                if (outcome != 0 && outcome != 1) {
                    throw std::invalid_argument("run_circuit_forced: outcome must be 0 or 1");
                }
            } else {
                double p1 = 0.0;
                for (Eigen::Index i = 0; i < state.amplitudes.size(); ++i) {
                    if (detail::bit_at(static_cast<std::size_t>(i), m->wire, c.n_wires)) {
                        p1 += std::norm(state.amplitudes(i));
                    }
                }
                std::uniform_real_distribution<double> unif(0.0, 1.0);
                outcome = unif(*rng) < p1 ? 1 : 0;
            }
            Vector amps = state.amplitudes;
            double p = collapse(amps, m->wire, c.n_wires, outcome);
            if (p < 1e-12) {
                throw std::runtime_error("measurement branch has vanishing probability");
            }
            state = StateVector(c.n_wires, std::move(amps));
            cbits[static_cast<std::size_t>(m->cbit)] = outcome;
            ++n_measured;
        } else if (const ClassicallyControlled* cc = std::get_if<ClassicallyControlled>(&step)) {
            if (cbits[static_cast<std::size_t>(cc->cbit)] == 1) {
                state = apply_unitary(state, cc->gate.matrix, cc->gate.wires);
            }
        }
    }
    return MeasurementRecord{std::move(cbits), std::move(state)};
}

}  // namespace

MeasurementRecord run_circuit(const Circuit& c, const StateVector& input,
                              std::uint64_t rng_seed) {
    std::mt19937_64 rng(rng_seed);
    return run_impl(c, input, &rng, nullptr);
}

MeasurementRecord run_circuit_forced(const Circuit& c, const StateVector& input,
                                     const std::vector<int>& outcomes) {
    return run_impl(c, input, nullptr, &outcomes);
}

StateVector epr_pair() {
    Vector v = Vector::Zero(4);
    v(0) = 1.0 / std::sqrt(2.0);
    v(3) = 1.0 / std::sqrt(2.0);
    return StateVector(2, std::move(v));
}

std::vector<Gate> v_gates(int w0, int w1, int w2) {
    return {Gate::cnot(w0, w1), Gate::cnot(w1, w2), Gate::h(w0), Gate::cz(w0, w2)};
}

Matrix build_v() {
    Matrix v(8, 8);
    for (std::size_t j = 0; j < 8; ++j) {
        StateVector col = StateVector::basis(3, j);
        for (const Gate& g : v_gates(0, 1, 2)) {
            col = apply_unitary(col, g.matrix, g.wires);
        }
        v.col(static_cast<Eigen::Index>(j)) = col.amplitudes;
    }
    return v;
}

StateVector v_closed_form(int a, int b, int c) {
    if ((a | b | c) > 1 || a < 0 || b < 0 || c < 0) {
        throw std::invalid_argument("v_closed_form: inputs must be bits");
    }
    const int ab = a ^ b;
    const int abc = a ^ b ^ c;
    const int abar = 1 - a;
    Vector v = Vector::Zero(8);
    const double amp = 1.0 / std::sqrt(2.0);
    auto sign = [](int e) { return e % 2 == 0 ? 1.0 : -1.0; };
    v((abar << 2) | (ab << 1) | abc) += sign(abar * abc) * amp;
    v((a << 2) | (ab << 1) | abc) += sign(a * abc + a) * amp;
    return StateVector(3, std::move(v));
}

namespace {

TeleportationOutcome teleport_from_record(const StateVector& psi, const MeasurementRecord& rec) {
    DensityMatrix bob = partial_trace(to_density(rec.state), {2});
    double f = fidelity(to_density(psi), bob);
    return TeleportationOutcome{rec.bits[0], rec.bits[1], f, rec.state};
}

Circuit teleportation_circuit() {
    Circuit c(3, 2);
    c.add(Gate::h(1))
        .add(Gate::cnot(1, 2))
        .add(Gate::cnot(0, 1))
        .add(Gate::h(0))
        .add(Measure{0, 0})
        .add(Measure{1, 1})
        .add(ClassicallyControlled{Gate::x(2), 1})
        .add(ClassicallyControlled{Gate::z(2), 0});
    return c;
}

}  // namespace

TeleportationOutcome standard_teleportation(const StateVector& psi, std::uint64_t rng_seed) {
    if (psi.n_qubits != 1) {
        throw std::invalid_argument("standard_teleportation: input must be a single qubit");
    }
    StateVector input = tensor_product(psi, StateVector::zero(2));
    MeasurementRecord rec = run_circuit(teleportation_circuit(), input, rng_seed);
    return teleport_from_record(psi, rec);
}

TeleportationOutcome standard_teleportation_branch(const StateVector& psi, int bit0, int bit1) {
    if (psi.n_qubits != 1) {
        throw std::invalid_argument("standard_teleportation: input must be a single qubit");
    }
    StateVector input = tensor_product(psi, StateVector::zero(2));
    MeasurementRecord rec = run_circuit_forced(teleportation_circuit(), input, {bit0, bit1});
    return teleport_from_record(psi, rec);
}

std::pair<int, int> superdense_code(int b1, int b0, std::uint64_t rng_seed) {
    if ((b0 | b1) > 1 || b0 < 0 || b1 < 0) {
        throw std::invalid_argument("superdense_code: message must be two bits");
    }
    Circuit c(2, 2);
    c.add(Gate::h(0)).add(Gate::cnot(0, 1));
    // encoder on the sender's half: X for the low bit, Z for the high bit
    if (b0) c.add(Gate::x(0));
    if (b1) c.add(Gate::z(0));
    // decoder
    c.add(Gate::cnot(0, 1)).add(Gate::h(0)).add(Measure{0, 0}).add(Measure{1, 1});
    MeasurementRecord rec = run_circuit(c, StateVector::zero(2), rng_seed);
    return {rec.bits[0], rec.bits[1]};
}

}  // namespace qbridge
