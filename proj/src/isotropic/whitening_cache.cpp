#include "isoloc/isotropic/whitening_cache.hpp"

#include <fstream>

#include "json.hpp"

#include "isoloc/bodies/constructors.hpp"

namespace isoloc {

namespace {

using nlohmann::json;

json matrix_json(const Matrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        const auto r = m.row(i);
        rows.push_back(std::vector<double>(r.begin(), r.end()));
    }
    return rows;
}

Matrix matrix_from_json(const json& j, std::size_t n) {
    if (!j.is_array() || j.size() != n) throw DimensionError("whitening cache: map has wrong shape");
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto row = j[i].get<std::vector<double>>();
        check_same_dim(row.size(), n, "whitening cache: map row");
        for (std::size_t k = 0; k < n; ++k) m(i, k) = row[k];
    }
    return m;
}

}  // namespace

WhiteningCache WhiteningCache::load(const std::filesystem::path& path) {
    WhiteningCache cache;
    if (!std::filesystem::exists(path)) return cache;
    std::ifstream in(path);
    const json j = json::parse(in);
    for (const auto& e : j.at("entries")) {
        WhiteningKey key{canonical_body_name(e.at("name").get<std::string>()), e.at("n").get<std::size_t>(),
                         e.at("seed").get<std::uint64_t>()};
        WhiteningEntry entry;
        entry.map = matrix_from_json(e.at("map"), key.n);
        entry.shift = e.at("shift").get<Vector>();
        check_same_dim(entry.shift.size(), key.n, "whitening cache: shift");
        entry.samples = e.at("samples").get<std::size_t>();
        entry.residual_mean = e.at("residual_mean").get<double>();
        entry.residual_cov = e.at("residual_cov").get<double>();
        cache.entries_[key] = std::move(entry);
    }
    return cache;
}

void WhiteningCache::save(const std::filesystem::path& path) const {
    json entries = json::array();
    for (const auto& [key, e] : entries_) {
        entries.push_back({{"name", key.name},
                           {"n", key.n},
                           {"seed", key.seed},
                           {"map", matrix_json(e.map)},
                           {"shift", e.shift},
                           {"samples", e.samples},
                           {"residual_mean", e.residual_mean},
                           {"residual_cov", e.residual_cov}});
    }
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path);
    if (!out) throw Error("whitening cache: cannot write " + path.string());
    out << json{{"entries", entries}}.dump(1) << "\n";
}

const WhiteningEntry* WhiteningCache::find(const WhiteningKey& key) const {
    const auto it = entries_.find(key);
    return it == entries_.end() ? nullptr : &it->second;
}

void WhiteningCache::insert(const WhiteningKey& key, WhiteningEntry entry) { entries_[key] = std::move(entry); }

BodyPtr whiten_named(WhiteningCache& cache, const std::string& name, std::size_t n, std::uint64_t seed,
                     const IsotropizeConfig& cfg) {
    const WhiteningKey key{canonical_body_name(name), n, seed};
    const BodyPtr base = named_body(key.name, n);
    if (const WhiteningEntry* e = cache.find(key)) return apply_whitening(base, e->map, e->shift);
    RngStream rng(seed);
    auto iso = isotropize(base, cfg, rng);
    cache.insert(key, {iso.report.map, iso.report.shift, iso.report.samples, iso.report.residual_mean,
                       iso.report.residual_cov});
    return iso.body;
}

}  // namespace isoloc
