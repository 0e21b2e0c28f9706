#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "isoloc/numkit/linalg.hpp"
#include "json.hpp"

namespace isoloc {

/// Settings of one experiment run. Optional fields fall back to
/// per-experiment defaults.
struct ExperimentConfig {
    std::string experiment;
    std::vector<std::string> bodies;
    /// "K1:K2" pairs.
    std::vector<std::pair<std::string, std::string>> pairs;
    std::vector<std::size_t> dims;
    std::optional<std::size_t> samples;
    std::optional<std::size_t> paths;
    std::optional<std::size_t> inner;
    std::optional<std::size_t> rotations;
    std::optional<std::size_t> trials;
    std::optional<double> horizon;
    std::optional<double> dt;
    std::optional<double> beta;
    std::vector<double> p_values;
    std::vector<double> qv_caps;
    std::vector<double> levels;
    std::string driver = "exact";
    std::optional<std::uint64_t> seed;
    std::filesystem::path outdir = "isoloc-out";
    std::optional<double> kappa;
    std::optional<double> slack;

    /// Throws Error when the seed is missing.
    std::uint64_t require_seed() const;
};

/// Keys match the field names, with "n" for dims and "pairs" as "A:B"
/// strings. Unknown keys throw Error.
ExperimentConfig config_from_json(const nlohmann::json& j);
ExperimentConfig load_config(const std::filesystem::path& path);
nlohmann::ordered_json config_to_json(const ExperimentConfig& cfg);

std::vector<std::size_t> parse_size_list(const std::string& s);
std::vector<double> parse_double_list(const std::string& s);
std::vector<std::string> parse_string_list(const std::string& s);
/// "cube:crosspoly,simplex:cube"
std::vector<std::pair<std::string, std::string>> parse_pairs(const std::string& s);

}  // namespace isoloc
