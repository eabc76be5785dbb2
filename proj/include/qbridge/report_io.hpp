#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "qbridge/noise.hpp"
#include "qbridge/protocol.hpp"
#include "qbridge/variational.hpp"

namespace qbridge {

/// Raised by file output failures so callers can distinguish I/O trouble
/// from numerical trouble.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

nlohmann::json dm_to_json(const DensityMatrix& dm);
nlohmann::json state_to_json(const StateVector& state);

nlohmann::json report_to_json(const ProtocolReport& report);
nlohmann::json experiment_to_json(const ExperimentReport& report);
nlohmann::json trace_to_json(const OptimizationTrace& trace);

/// One row per run: state_label, run, output_fidelity, hawking_fidelity,
/// hawking_entropy_over_ln2.
std::string experiment_csv(const ExperimentReport& report);

/// One row per cost evaluation: restart, iteration, cost.
std::string trace_csv(const OptimizationTrace& trace);

/// Write via a temporary file in the same directory plus rename, so readers
/// never observe a partial file.
void atomic_write(const std::filesystem::path& path, const std::string& content);

}  // namespace qbridge
