#include "isoloc/sampling/hit_and_run.hpp"

#include <cmath>
#include <fstream>

#include "isoloc/numkit/parallel.hpp"
#include "isoloc/numkit/special.hpp"

namespace isoloc {

namespace {

constexpr double kMinChord = 1e-12;
constexpr int kMaxDirectionRetries = 1000;

bool zero_tilt(double t, std::span<const double> theta) { return t == 0.0 && max_abs(theta) == 0.0; }

void run_chain(const Body& body, double t, std::span<const double> theta, std::size_t count,
               const SamplerConfig& cfg, RngStream& rng, PointCloud& out, std::size_t row0) {
    const std::size_t n = body.dim();
    if (cfg.walk == WalkType::exact) {
        for (std::size_t k = 0; k < count; ++k) body.sample_exact(rng, out.row(row0 + k));
        return;
    }
    Vector x = cfg.start.value_or(Vector(n, 0.0));
    check_same_dim(x.size(), n, "sampler start");
    const std::size_t burn = cfg.burn_in_for(n);
    const std::size_t thin = cfg.thinning_for(n);
    for (std::size_t s = 0; s < burn; ++s) hit_and_run_step(body, t, theta, x, rng);
    for (std::size_t k = 0; k < count; ++k) {
        for (std::size_t s = 0; s < thin; ++s) hit_and_run_step(body, t, theta, x, rng);
        std::copy(x.begin(), x.end(), out.row(row0 + k).begin());
    }
}

}  // namespace

void hit_and_run_step(const Body& body, double t, std::span<const double> theta, std::span<double> x,
                      RngStream& rng) {
    const std::size_t n = body.dim();
    for (int attempt = 0; attempt < kMaxDirectionRetries; ++attempt) {
        const Vector d = uniform_sphere(n, rng);
        const Chord ch = body.chord(x, d);
        if (ch.upper - ch.lower < kMinChord) continue;
        // Restricted to the line the log-density is s(θ·d − t x·d) − t s²/2 + const.
        const double slope = dot(theta, d) - t * dot(x, d);
        double s;
        if (t > 0.0) {
            s = sample_truncated_normal(slope / t, 1.0 / std::sqrt(t), ch.lower, ch.upper, rng);
        } else {
            s = sample_truncated_exponential(slope, ch.lower, ch.upper, rng);
        }
        axpy(s, d, x);
        return;
    }
    throw NumericError("hit_and_run_step: only degenerate chords found");
}

PointCloud tilted_sample(const Body& body, double t, std::span<const double> theta, std::size_t count,
                         const SamplerConfig& cfg, RngStream& rng) {
    const std::size_t n = body.dim();
    check_same_dim(theta.size(), n, "tilted_sample: theta");
    if (!(t >= 0.0)) throw NumericError("tilted_sample: t must be >= 0");
    if (cfg.chains == 0) throw Error("sampler: chains must be >= 1");
    if (cfg.thinning && *cfg.thinning == 0) throw Error("sampler: thinning must be >= 1");
    if (cfg.walk == WalkType::exact && (!zero_tilt(t, theta) || !body.has_exact_sampler()))
        throw Error("sampler: exact walk needs zero tilt and a body with an exact sampler");
    PointCloud out(count, n);
    if (cfg.chains == 1) {
        run_chain(body, t, theta, count, cfg, rng, out, 0);
        return out;
    }
    const std::size_t per = count / cfg.chains;
    parallel_for(cfg.chains, [&](std::size_t c) {
        RngStream child = rng.spawn(c);
        const std::size_t begin = c * per;
        const std::size_t len = c + 1 == cfg.chains ? count - begin : per;
        run_chain(body, t, theta, len, cfg, child, out, begin);
    });
    // Advance the parent so consecutive calls draw fresh chains.
    rng.next_u64();
    return out;
}

PointCloud uniform_sample(const Body& body, std::size_t count, const SamplerConfig& cfg, RngStream& rng) {
    const Vector zero(body.dim(), 0.0);
    return tilted_sample(body, 0.0, zero, count, cfg, rng);
}

void write_points_csv(const std::filesystem::path& path, const PointCloud& points) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path.string());
    for (std::size_t j = 0; j < points.cols(); ++j) out << (j ? "," : "") << "x" << j;
    out << "\n";
    out.precision(17);
    for (std::size_t i = 0; i < points.rows(); ++i) {
        for (std::size_t j = 0; j < points.cols(); ++j) out << (j ? "," : "") << points(i, j);
        out << "\n";
    }
}

}  // namespace isoloc
