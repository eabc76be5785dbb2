#include "qbridge/noise.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "qbridge/protocol.hpp"
#include "qbridge/rng.hpp"

namespace qbridge {

DensityMatrix pseudo_pure(const DensityMatrix& rho0, double epsilon) {
    if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
        throw std::invalid_argument("pseudo_pure: epsilon must lie in [0, 1]");
    }
    const Eigen::Index d = rho0.dim();
    Matrix m = (1.0 - epsilon) * rho0.matrix +
               (epsilon / static_cast<double>(d)) * Matrix::Identity(d, d);
    return DensityMatrix(rho0.n_qubits, std::move(m));
}

namespace {

Matrix basis_rotation(PauliBasis basis) {
    switch (basis) {
        case PauliBasis::X: return gates::h();
        case PauliBasis::Y: return gates::h() * gates::sdg();
        case PauliBasis::Z: return Matrix::Identity(2, 2);
    }
    throw std::logic_error("unreachable");
}

double prob_zero(const DensityMatrix& dm, PauliBasis basis) {
    Matrix u = basis_rotation(basis);
    Matrix rot = u * dm.matrix * u.adjoint();
    double p0 = rot(0, 0).real();
    return std::clamp(p0, 0.0, 1.0);
}

}  // namespace

CountPair sample_counts(const DensityMatrix& dm, PauliBasis basis, int shots,
                        std::uint64_t rng_seed, double readout_flip_prob) {
    if (dm.n_qubits != 1) {
        throw std::invalid_argument("sample_counts: expected a single-qubit state");
    }
    if (shots < 1) throw std::invalid_argument("sample_counts: shots must be >= 1");
    if (!(readout_flip_prob >= 0.0 && readout_flip_prob < 1.0)) {
        throw std::invalid_argument("sample_counts: readout flip probability must lie in [0, 1)");
    }
    const double p1 = 1.0 - prob_zero(dm, basis);
    std::mt19937_64 rng(rng_seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    CountPair counts;
    for (int s = 0; s < shots; ++s) {
        int bit = unif(rng) < p1 ? 1 : 0;
        if (readout_flip_prob > 0.0 && unif(rng) < readout_flip_prob) bit ^= 1;
        if (bit) {
            counts.count1 += 1;
        } else {
            counts.count0 += 1;
        }
    }
    return counts;
}

CountPair exact_counts(const DensityMatrix& dm, PauliBasis basis, double shots) {
    if (dm.n_qubits != 1) {
        throw std::invalid_argument("exact_counts: expected a single-qubit state");
    }
    const double p0 = prob_zero(dm, basis);
    return CountPair{shots * p0, shots * (1.0 - p0)};
}

TomographyResult tomography_1q(const CountPair& counts_x, const CountPair& counts_y,
                               const CountPair& counts_z) {
    const double shots = counts_x.shots();
    if (shots <= 0.0) throw std::invalid_argument("tomography_1q: zero shots");
    if (std::abs(counts_y.shots() - shots) > 1e-9 ||
        std::abs(counts_z.shots() - shots) > 1e-9) {
        throw std::invalid_argument("tomography_1q: bases have inconsistent shot totals");
    }
    double rx = (counts_x.count0 - counts_x.count1) / shots;
    double ry = (counts_y.count0 - counts_y.count1) / shots;
    double rz = (counts_z.count0 - counts_z.count1) / shots;
    const double r = std::sqrt(rx * rx + ry * ry + rz * rz);
    if (r > 1.0) {  // project onto the physical set
        rx /= r;
        ry /= r;
        rz /= r;
    }
    Matrix m(2, 2);
    m << Complex(0.5 * (1.0 + rz), 0.0), Complex(0.5 * rx, -0.5 * ry),
         Complex(0.5 * rx, 0.5 * ry),    Complex(0.5 * (1.0 - rz), 0.0);
    return TomographyResult{rx, ry, rz, DensityMatrix(1, std::move(m)), shots};
}

namespace {

struct TomographedQubit {
    TomographyResult tomo;
};

TomographyResult tomograph(const DensityMatrix& dm, int shots, std::uint64_t seed,
                           double flip_prob) {
    CountPair cx = sample_counts(dm, PauliBasis::X, shots, detail::mix_seed(seed, 1), flip_prob);
    CountPair cy = sample_counts(dm, PauliBasis::Y, shots, detail::mix_seed(seed, 2), flip_prob);
    CountPair cz = sample_counts(dm, PauliBasis::Z, shots, detail::mix_seed(seed, 3), flip_prob);
    return tomography_1q(cx, cy, cz);
}

StateSummary summarize(const std::string& label, const std::vector<ExperimentRow>& rows) {
    std::vector<double> f_out, f_h, s_h;
    for (const ExperimentRow& r : rows) {
        if (r.state_label != label) continue;
        f_out.push_back(r.output_fidelity);
        f_h.push_back(r.hawking_fidelity);
        s_h.push_back(r.hawking_entropy_over_ln2);
    }
    auto mean_sem = [](const std::vector<double>& xs) {
        double mean = 0.0;
        for (double x : xs) mean += x;
        mean /= static_cast<double>(xs.size());
        if (xs.size() < 2) return std::pair<double, double>{mean, 0.0};
        double var = 0.0;
        for (double x : xs) var += (x - mean) * (x - mean);
        var /= static_cast<double>(xs.size() - 1);
        return std::pair<double, double>{mean, std::sqrt(var / static_cast<double>(xs.size()))};
    };
    auto [fo_m, fo_s] = mean_sem(f_out);
    auto [fh_m, fh_s] = mean_sem(f_h);
    auto [sh_m, sh_s] = mean_sem(s_h);
    return StateSummary{label, fo_m, fo_s, fh_m, fh_s, sh_m, sh_s};
}

}  // namespace

ExperimentReport run_experiment(const ExperimentConfig& cfg, const NoiseConfig& noise) {
    if (cfg.runs < 1 || cfg.shots < 1) {
        throw std::invalid_argument("run_experiment: runs and shots must be >= 1");
    }
    if (cfg.state_labels.empty()) {
        throw std::invalid_argument("run_experiment: empty state set");
    }
    const Matrix v = build_v();
    const DensityMatrix half = DensityMatrix::maximally_mixed(1);
    const double ln2 = std::log(2.0);

    ExperimentReport report{cfg, noise, {}, {}};
    for (std::size_t si = 0; si < cfg.state_labels.size(); ++si) {
        const std::string& label = cfg.state_labels[si];
        const StateVector psi = labeled_state(label);
        const DensityMatrix ideal = to_density(psi);

        // Exact evolution is deterministic; only the tomography shots vary by run.
        ProtocolRun ideal_run = run_general_protocol(psi, v, 2);
        DensityMatrix mixed_mid = pseudo_pure(to_density(ideal_run.midpoint), noise.epsilon);
        DensityMatrix hawking = partial_trace(mixed_mid, {2});
        DensityMatrix mixed_final = apply_unitary(mixed_mid, v, {2, 3, 4});
        DensityMatrix output = partial_trace(mixed_final, {4});

        for (int run = 0; run < cfg.runs; ++run) {
            const std::uint64_t run_seed = cfg.rng_seed + static_cast<std::uint64_t>(run);
            const std::uint64_t out_seed = detail::mix_seed(run_seed, 2 * si);
            const std::uint64_t haw_seed = detail::mix_seed(run_seed, 2 * si + 1);

            TomographyResult rec_out =
                tomograph(output, cfg.shots, out_seed, noise.readout_flip_prob);
            TomographyResult rec_haw =
                tomograph(hawking, cfg.shots, haw_seed, noise.readout_flip_prob);

            report.rows.push_back(ExperimentRow{
                label,
                run,
                fidelity(rec_out.reconstructed_dm, ideal),
                fidelity(rec_haw.reconstructed_dm, half),
                von_neumann_entropy(rec_haw.reconstructed_dm) / ln2,
            });
        }
    }
    for (const std::string& label : cfg.state_labels) {
        report.summary.push_back(summarize(label, report.rows));
    }
    return report;
}

}  // namespace qbridge
