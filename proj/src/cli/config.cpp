#include "isoloc/cli/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "isoloc/numkit/linalg.hpp"

namespace isoloc {

namespace {

using nlohmann::json;

const std::set<std::string> kKeys{"experiment", "bodies", "pairs",    "n",      "samples", "paths",  "inner",
                                  "rotations",  "trials", "horizon",  "dt",     "beta",    "p",      "qv_caps",
                                  "levels",     "driver", "seed",     "outdir", "kappa",   "slack"};

template <class T>
void get_opt(const json& j, const char* key, std::optional<T>& out) {
    if (j.contains(key)) out = j.at(key).get<T>();
}

std::string trim(std::string s) {
    const auto b = s.find_first_not_of(" \t");
    const auto e = s.find_last_not_of(" \t");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

}  // namespace

std::uint64_t ExperimentConfig::require_seed() const {
    if (!seed) throw Error("config: a seed is required (--seed, config \"seed\" or ISOLOC_SEED)");
    return *seed;
}

std::vector<std::string> parse_string_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream in(s);
    for (std::string item; std::getline(in, item, ',');) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

std::vector<std::size_t> parse_size_list(const std::string& s) {
    std::vector<std::size_t> out;
    for (const auto& item : parse_string_list(s)) {
        std::size_t used = 0;
        const unsigned long long v = std::stoull(item, &used);
        if (used != item.size()) throw Error("not an integer: " + item);
        out.push_back(static_cast<std::size_t>(v));
    }
    return out;
}

std::vector<double> parse_double_list(const std::string& s) {
    std::vector<double> out;
    for (const auto& item : parse_string_list(s)) {
        std::size_t used = 0;
        const double v = std::stod(item, &used);
        if (used != item.size()) throw Error("not a number: " + item);
        out.push_back(v);
    }
    return out;
}

std::vector<std::pair<std::string, std::string>> parse_pairs(const std::string& s) {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& item : parse_string_list(s)) {
        const auto colon = item.find(':');
        if (colon == std::string::npos || colon == 0 || colon + 1 == item.size())
            throw Error("pair must look like A:B, got " + item);
        out.emplace_back(item.substr(0, colon), item.substr(colon + 1));
    }
    return out;
}

ExperimentConfig config_from_json(const json& j) {
    if (!j.is_object()) throw Error("config: expected a JSON object");
    for (const auto& [key, value] : j.items())
        if (!kKeys.count(key)) throw Error("config: unknown key \"" + key + "\"");
    ExperimentConfig c;
    if (j.contains("experiment")) c.experiment = j.at("experiment").get<std::string>();
    if (j.contains("bodies")) c.bodies = j.at("bodies").get<std::vector<std::string>>();
    if (j.contains("pairs"))
        for (const auto& p : j.at("pairs")) {
            const auto parsed = parse_pairs(p.get<std::string>());
            c.pairs.insert(c.pairs.end(), parsed.begin(), parsed.end());
        }
    if (j.contains("n")) c.dims = j.at("n").get<std::vector<std::size_t>>();
    get_opt(j, "samples", c.samples);
    get_opt(j, "paths", c.paths);
    get_opt(j, "inner", c.inner);
    get_opt(j, "rotations", c.rotations);
    get_opt(j, "trials", c.trials);
    get_opt(j, "horizon", c.horizon);
    get_opt(j, "dt", c.dt);
    get_opt(j, "beta", c.beta);
    if (j.contains("p")) c.p_values = j.at("p").get<std::vector<double>>();
    if (j.contains("qv_caps")) c.qv_caps = j.at("qv_caps").get<std::vector<double>>();
    if (j.contains("levels")) c.levels = j.at("levels").get<std::vector<double>>();
    if (j.contains("driver")) c.driver = j.at("driver").get<std::string>();
    get_opt(j, "seed", c.seed);
    if (j.contains("outdir")) c.outdir = j.at("outdir").get<std::string>();
    get_opt(j, "kappa", c.kappa);
    get_opt(j, "slack", c.slack);
    return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot read config " + path.string());
    return config_from_json(json::parse(in));
}

nlohmann::ordered_json config_to_json(const ExperimentConfig& c) {
    nlohmann::ordered_json j;
    j["experiment"] = c.experiment;
    j["bodies"] = c.bodies;
    std::vector<std::string> pairs;
    for (const auto& [a, b] : c.pairs) pairs.push_back(a + ":" + b);
    j["pairs"] = pairs;
    j["n"] = c.dims;
    auto put = [&](const char* key, const auto& opt) {
        if (opt) j[key] = *opt;
    };
    put("samples", c.samples);
    put("paths", c.paths);
    put("inner", c.inner);
    put("rotations", c.rotations);
    put("trials", c.trials);
    put("horizon", c.horizon);
    put("dt", c.dt);
    put("beta", c.beta);
    if (!c.p_values.empty()) j["p"] = c.p_values;
    if (!c.qv_caps.empty()) j["qv_caps"] = c.qv_caps;
    if (!c.levels.empty()) j["levels"] = c.levels;
    j["driver"] = c.driver;
    put("seed", c.seed);
    j["outdir"] = c.outdir.string();
    put("kappa", c.kappa);
    put("slack", c.slack);
    return j;
}

}  // namespace isoloc
