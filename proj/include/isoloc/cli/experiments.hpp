#pragma once

#include <functional>
#include <map>

#include "isoloc/cli/record.hpp"

namespace isoloc {

struct ExperimentInfo {
    std::string name;
    std::string summary;
    /// CSV columns of the main table.
    std::string columns;
};

const std::vector<ExperimentInfo>& experiment_list();

/// Runs a named experiment; throws Error for unknown names.
ExperimentRecord run_experiment(const ExperimentConfig& cfg);

/// One SVG per chartable table under outdir/plots; returns the files
/// written. Throws Error for a record without rows.
std::vector<std::filesystem::path> plot_record(const ExperimentRecord& record, const std::filesystem::path& outdir);

}  // namespace isoloc
