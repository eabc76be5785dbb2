#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qbridge/state.hpp"

namespace qbridge {

/// Global noise model: pseudo-pure mixing weight plus an optional classical
/// readout bit-flip probability applied per sampled shot.
struct NoiseConfig {
    double epsilon = 0.0;
    double readout_flip_prob = 0.0;
};

struct ExperimentConfig {
    int runs = 12;
    int shots = 8192;
    std::uint64_t rng_seed = 0;
    std::vector<std::string> state_labels = {"0", "1", "plus", "minus", "left", "right"};
};

enum class PauliBasis { X, Y, Z };

/// Outcome tallies for one measurement basis. Doubles so that exact
/// (non-sampled) probabilities can flow through the same tomography path.
struct CountPair {
    double count0 = 0;
    double count1 = 0;

    double shots() const { return count0 + count1; }
};

struct TomographyResult {
    double rx = 0.0, ry = 0.0, rz = 0.0;
    DensityMatrix reconstructed_dm;
    double shots_used = 0;
};

/// (1 - epsilon) rho + epsilon I / 2^n.
DensityMatrix pseudo_pure(const DensityMatrix& rho0, double epsilon);

/// Measure a single-qubit state in the given Pauli basis for `shots` shots.
/// Rotates into the measurement basis (H for X, H S^dagger for Y), samples
/// Bernoulli outcomes from the diagonal, and flips each recorded bit with
/// probability readout_flip_prob. Deterministic per seed.
CountPair sample_counts(const DensityMatrix& dm, PauliBasis basis, int shots,
                        std::uint64_t rng_seed, double readout_flip_prob = 0.0);

/// Linear-inversion single-qubit tomography. Bloch components are the count
/// asymmetries per basis; a vector of length > 1 is rescaled onto the Bloch
/// sphere before the state is formed.
TomographyResult tomography_1q(const CountPair& counts_x, const CountPair& counts_y,
                               const CountPair& counts_z);

/// Exact-probability counts for a basis (shots * p, no sampling), for
/// round-trip checks of the tomography path.
CountPair exact_counts(const DensityMatrix& dm, PauliBasis basis, double shots);

struct ExperimentRow {
    std::string state_label;
    int run = 0;
    double output_fidelity = 0.0;
    double hawking_fidelity = 0.0;
    double hawking_entropy_over_ln2 = 0.0;
};

struct StateSummary {
    std::string state_label;
    double output_fidelity_mean = 0.0, output_fidelity_sem = 0.0;
    double hawking_fidelity_mean = 0.0, hawking_fidelity_sem = 0.0;
    double hawking_entropy_mean = 0.0, hawking_entropy_sem = 0.0;  // over ln 2
};

struct ExperimentReport {
    ExperimentConfig config;
    NoiseConfig noise;
    std::vector<ExperimentRow> rows;
    std::vector<StateSummary> summary;
};

/// Teleport each configured state `runs` times through the N=2 protocol with
/// pseudo-pure noise injected at the exchange point, tomograph the output and
/// the exchanged qubit at `shots` shots per basis, and aggregate per-state
/// means with standard deviations of the mean.
ExperimentReport run_experiment(const ExperimentConfig& cfg, const NoiseConfig& noise);

}  // namespace qbridge
