#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "isoloc/cli/config.hpp"

namespace isoloc {

/// Output of one run. Rows carry a "table" name and an "ok" property flag;
/// certificates carry enough to be recomputed.
struct ExperimentRecord {
    std::string version;
    nlohmann::ordered_json config;
    std::vector<nlohmann::ordered_json> rows;
    std::vector<nlohmann::ordered_json> certificates;
    double wall_clock = 0.0;
    /// Violation count stated by the summary line of a stored record.
    std::optional<std::size_t> stated_violations;

    void add_row(const std::string& table, nlohmann::ordered_json row);
    std::size_t violations() const;
    /// Distinct table names in first-appearance order.
    std::vector<std::string> tables() const;
    std::vector<nlohmann::ordered_json> table(const std::string& name) const;
};

/// JSONL: a header line, rows, certificates, then a summary. Only the
/// summary's wall_clock_s varies between identical runs.
void write_record(const std::filesystem::path& path, const ExperimentRecord& record);
ExperimentRecord read_record(const std::filesystem::path& path);

/// Columns in first-appearance order across the table's rows.
void write_table_csv(const std::filesystem::path& path, const std::vector<nlohmann::ordered_json>& rows);

/// record.jsonl, config.json and tables/<name>.csv under outdir.
void write_outputs(const std::filesystem::path& outdir, const ExperimentRecord& record);

std::string version_string();

}  // namespace isoloc
