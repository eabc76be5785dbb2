#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qbridge/state.hpp"

namespace qbridge {

namespace gates {
Matrix h();
Matrix x();
Matrix y();
Matrix z();
Matrix s();
Matrix sdg();
Matrix ry(double theta);
Matrix cnot();   // control = first (most significant) wire
Matrix cz();
Matrix swap();
}  // namespace gates

/// One gate application: a unitary on an ordered list of wires.
struct Gate {
    std::string name;
    Matrix matrix;
    std::vector<int> wires;

    Gate(std::string name, Matrix m, std::vector<int> wires);

    static Gate h(int wire) { return {"h", gates::h(), {wire}}; }
    static Gate x(int wire) { return {"x", gates::x(), {wire}}; }
    static Gate y(int wire) { return {"y", gates::y(), {wire}}; }
    static Gate z(int wire) { return {"z", gates::z(), {wire}}; }
    static Gate ry(double theta, int wire) { return {"ry", gates::ry(theta), {wire}}; }
    static Gate cnot(int control, int target) { return {"cnot", gates::cnot(), {control, target}}; }
    static Gate cz(int a, int b) { return {"cz", gates::cz(), {a, b}}; }
    static Gate swap(int a, int b) { return {"swap", gates::swap(), {a, b}}; }
    static Gate custom(std::string name, Matrix m, std::vector<int> wires) {
        return {std::move(name), std::move(m), std::move(wires)};
    }
};

struct Measure {
    int wire = 0;
    int cbit = 0;
};

/// Gate applied only when the named classical bit holds 1.
struct ClassicallyControlled {
    Gate gate;
    int cbit = 0;
};

using CircuitStep = std::variant<Gate, Measure, ClassicallyControlled>;

/// Ordered gate/measure sequence on a fixed-width register. Steps are
/// validated against the register width as they are appended.
struct Circuit {
    int n_wires = 0;
    int n_cbits = 0;
    std::vector<CircuitStep> steps;

    explicit Circuit(int wires, int cbits = 0) : n_wires(wires), n_cbits(cbits) {}

    Circuit& add(Gate g);
    Circuit& add(Measure m);
    Circuit& add(ClassicallyControlled c);
};

struct MeasurementRecord {
    std::vector<int> bits;
    StateVector state;
};

/// Execute the circuit. Measurements sample from the branch probabilities,
/// collapse, and renormalize; the run is deterministic for a given seed.
MeasurementRecord run_circuit(const Circuit& c, const StateVector& input,
                              std::uint64_t rng_seed);

/// Execute with every measurement outcome fixed in advance (one entry per
/// Measure step, in order). Rejects branches of probability below 1e-12.
/// Supports exhaustive branch enumeration in tests and analyses.
MeasurementRecord run_circuit_forced(const Circuit& c, const StateVector& input,
                                     const std::vector<int>& outcomes);

/// (|00> + |11>)/sqrt(2)
StateVector epr_pair();

/// The sender/receiver operation as a gate sequence on three wires:
/// CNOT(w0,w1), then CNOT(w1,w2) and H(w0), then CZ(w0,w2).
std::vector<Gate> v_gates(int w0, int w1, int w2);

/// The same operation composed into an 8x8 matrix.
Matrix build_v();

/// Closed-form image of |abc> under the three-wire operation.
StateVector v_closed_form(int a, int b, int c);

struct TeleportationOutcome {
    int bit0 = 0;                // sender's first measured bit (drives Z)
    int bit1 = 0;                // sender's second measured bit (drives X)
    double output_fidelity = 0;  // receiver's wire against the input state
    StateVector final_state;
};

/// Measurement-based teleportation: entangle, measure the sender's two wires,
/// and patch the receiver's wire with classically controlled X and Z.
TeleportationOutcome standard_teleportation(const StateVector& psi, std::uint64_t rng_seed);

/// As above with both measurement outcomes forced, for branch enumeration.
TeleportationOutcome standard_teleportation_branch(const StateVector& psi, int bit0, int bit1);

/// Send two classical bits through one qubit of a shared EPR pair.
/// Returns (b1, b0) as decoded by the receiver.
std::pair<int, int> superdense_code(int b1, int b0, std::uint64_t rng_seed);

}  // namespace qbridge
