#pragma once

#include <filesystem>
#include <cstdint>
#include <map>

#include "isoloc/isotropic/isotropic.hpp"

namespace isoloc {

struct WhiteningKey {
    std::string name;
    std::size_t n = 0;
    std::uint64_t seed = 0;

    auto operator<=>(const WhiteningKey&) const = default;
};

struct WhiteningEntry {
    Matrix map;
    Vector shift;
    std::size_t samples = 0;
    double residual_mean = 0.0;
    double residual_cov = 0.0;
};

/// Whitening maps stored as JSON:
///   {"entries":[{"name":..,"n":..,"seed":..,"map":[[..]],"shift":[..],
///                "samples":..,"residual_mean":..,"residual_cov":..}]}
class WhiteningCache {
public:
    WhiteningCache() = default;
    static WhiteningCache load(const std::filesystem::path& path);
    void save(const std::filesystem::path& path) const;

    const WhiteningEntry* find(const WhiteningKey& key) const;
    void insert(const WhiteningKey& key, WhiteningEntry entry);
    std::size_t size() const { return entries_.size(); }
    const std::map<WhiteningKey, WhiteningEntry>& entries() const { return entries_; }

private:
    std::map<WhiteningKey, WhiteningEntry> entries_;
};

/// Isotropizes the named body with RngStream(seed), reusing a cached map
/// when present and recording a new one otherwise.
BodyPtr whiten_named(WhiteningCache& cache, const std::string& name, std::size_t n, std::uint64_t seed,
                     const IsotropizeConfig& cfg);

/// map·K + shift, with the same eager rules as linear_image and translate.
BodyPtr apply_whitening(const BodyPtr& body, const Matrix& map, std::span<const double> shift);

}  // namespace isoloc
