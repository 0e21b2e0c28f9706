#pragma once

#include <array>
#include <cstdint>
#include <optional>

#include "isoloc/numkit/linalg.hpp"

namespace isoloc {

/// Reproducible random stream identified by (seed, stream id).
///
/// The generator is xoshiro256** seeded through SplitMix64 from the pair, so
/// two streams with the same identity produce bit-identical draws on every
/// platform. `spawn(k)` derives an independent child stream; Monte Carlo
/// trials each take their own child so results do not depend on scheduling.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed, std::uint64_t stream = 0);

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_id() const { return stream_; }

    RngStream spawn(std::uint64_t child) const;

    std::uint64_t next_u64();
    /// Uniform on [0, 1) with 53 random bits.
    double uniform();
    /// Uniform on (0, 1).
    double uniform_open();
    double normal();
    /// Uniform integer in [0, bound).
    std::uint64_t below(std::uint64_t bound);

private:
    std::uint64_t seed_;
    std::uint64_t stream_;
    std::array<std::uint64_t, 4> s_{};
    std::optional<double> spare_normal_;
};

Vector gaussian_vector(std::size_t n, RngStream& rng);
/// Uniform on the unit sphere S^{n-1}.
Vector uniform_sphere(std::size_t n, RngStream& rng);
/// N(0, dt·Id) increment.
Vector brownian_increment(std::size_t n, double dt, RngStream& rng);
/// n×n matrix with iid N(0,1) entries.
Matrix gaussian_matrix(std::size_t n, RngStream& rng);
/// Haar-distributed orthogonal matrix: QR of a Gaussian matrix with the
/// signs of R's diagonal moved into Q.
Matrix haar_orthogonal(std::size_t n, RngStream& rng);

}  // namespace isoloc
