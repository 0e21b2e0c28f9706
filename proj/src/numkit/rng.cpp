#include "isoloc/numkit/rng.hpp"

#include <cmath>
#include <numbers>

namespace isoloc {

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
    x += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream) : seed_(seed), stream_(stream) {
    std::uint64_t x = seed ^ (0xD1B54A32D192ED03ULL * (stream + 1));
    std::uint64_t mix = splitmix64(x);
    x ^= mix;
    for (auto& word : s_) word = splitmix64(x);
}

RngStream RngStream::spawn(std::uint64_t child) const {
    std::uint64_t x = stream_ * 0x9E3779B97F4A7C15ULL + child + 1;
    return RngStream(seed_, splitmix64(x));
}

std::uint64_t RngStream::next_u64() {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

double RngStream::uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

double RngStream::uniform_open() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double RngStream::normal() {
    if (spare_normal_) {
        const double v = *spare_normal_;
        spare_normal_.reset();
        return v;
    }
    // Box-Muller; both outputs are used.
    const double u1 = uniform_open();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double phi = 2.0 * std::numbers::pi * u2;
    spare_normal_ = r * std::sin(phi);
    return r * std::cos(phi);
}

std::uint64_t RngStream::below(std::uint64_t bound) {
    if (bound == 0) throw Error("RngStream::below: zero bound");
    // Lemire's nearly divisionless method, with rejection for exact uniformity.
    while (true) {
        const unsigned __int128 m = static_cast<unsigned __int128>(next_u64()) * bound;
        const auto low = static_cast<std::uint64_t>(m);
        if (low >= bound || low >= (-bound) % bound) return static_cast<std::uint64_t>(m >> 64);
    }
}

Vector gaussian_vector(std::size_t n, RngStream& rng) {
    Vector g(n);
    for (double& v : g) v = rng.normal();
    return g;
}

Vector uniform_sphere(std::size_t n, RngStream& rng) {
    if (n == 0) throw DimensionError("uniform_sphere: n must be >= 1");
    while (true) {
        Vector g = gaussian_vector(n, rng);
        const double r = norm(g);
        if (r < 1e-150) continue;
        for (double& v : g) v /= r;
        return g;
    }
}

Vector brownian_increment(std::size_t n, double dt, RngStream& rng) {
    if (!(dt > 0)) throw NumericError("brownian_increment: dt must be positive");
    const double s = std::sqrt(dt);
    Vector g = gaussian_vector(n, rng);
    for (double& v : g) v *= s;
    return g;
}

Matrix gaussian_matrix(std::size_t n, RngStream& rng) {
    Matrix g(n, n);
    for (double& v : g.data()) v = rng.normal();
    return g;
}

Matrix haar_orthogonal(std::size_t n, RngStream& rng) {
    if (n == 0) throw DimensionError("haar_orthogonal: n must be >= 1");
    Matrix a = gaussian_matrix(n, rng);
    // Householder QR: A = Q R. Q is accumulated explicitly.
    Matrix q = Matrix::identity(n);
    Vector rdiag(n);
    for (std::size_t k = 0; k < n; ++k) {
        double nrm = 0.0;
        for (std::size_t i = k; i < n; ++i) nrm += a(i, k) * a(i, k);
        nrm = std::sqrt(nrm);
        const double alpha = a(k, k) > 0 ? -nrm : nrm;
        Vector v(n, 0.0);
        for (std::size_t i = k; i < n; ++i) v[i] = a(i, k);
        v[k] -= alpha;
        const double vnorm2 = dot(v, v);
        rdiag[k] = alpha;
        if (vnorm2 < 1e-300) continue;
        // A ← (I − 2vvᵀ/vᵀv) A, Q ← Q (I − 2vvᵀ/vᵀv)
        for (std::size_t j = k; j < n; ++j) {
            double s = 0.0;
            for (std::size_t i = k; i < n; ++i) s += v[i] * a(i, j);
            s *= 2.0 / vnorm2;
            for (std::size_t i = k; i < n; ++i) a(i, j) -= s * v[i];
        }
        for (std::size_t i = 0; i < n; ++i) {
            double s = 0.0;
            for (std::size_t j = k; j < n; ++j) s += q(i, j) * v[j];
            s *= 2.0 / vnorm2;
            for (std::size_t j = k; j < n; ++j) q(i, j) -= s * v[j];
        }
    }
    // Q diag(sign(R_kk)) makes the factorization unique and Q Haar-distributed.
    for (std::size_t k = 0; k < n; ++k) {
        if (rdiag[k] < 0)
            for (std::size_t i = 0; i < n; ++i) q(i, k) = -q(i, k);
    }
    return q;
}

}  // namespace isoloc
