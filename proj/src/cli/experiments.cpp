#include "isoloc/cli/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>

#include "isoloc/cli/svg.hpp"
#include "isoloc/estimators/containment.hpp"
#include "isoloc/estimators/gauge_means.hpp"
#include "isoloc/isotropic/isotropic.hpp"
#include "isoloc/localization/martingale.hpp"
#include "isoloc/numkit/eig.hpp"
#include "isoloc/numkit/parallel.hpp"
#include "isoloc/numkit/special.hpp"

namespace isoloc {

namespace {

using ojson = nlohmann::ordered_json;
using Runner = void (*)(const ExperimentConfig&, ExperimentRecord&);

const std::vector<std::string> kAllBodies{"cube", "ball", "crosspoly", "simplex"};
const std::vector<std::string> kPolytopes{"cube", "crosspoly", "simplex"};

BodyPtr iso(const std::string& name, std::size_t n) { return named_isotropic(name, n, Representation::automatic); }

ojson body_spec(const std::string& name, std::size_t n) {
    return {{"name", canonical_body_name(name)}, {"n", n}, {"isotropic", true}};
}

std::vector<std::string> bodies_or(const ExperimentConfig& c, const std::vector<std::string>& def) {
    std::vector<std::string> out;
    for (const auto& b : c.bodies.empty() ? def : c.bodies) out.push_back(canonical_body_name(b));
    return out;
}

std::vector<std::size_t> dims_or(const ExperimentConfig& c, std::vector<std::size_t> def) {
    auto d = c.dims.empty() ? std::move(def) : c.dims;
    for (std::size_t n : d)
        if (n == 0) throw Error("dimensions must be positive");
    return d;
}

std::vector<std::pair<std::string, std::string>> pairs_or(const ExperimentConfig& c,
                                                          std::vector<std::pair<std::string, std::string>> def) {
    auto p = c.pairs.empty() ? std::move(def) : c.pairs;
    for (auto& [a, b] : p) {
        a = canonical_body_name(a);
        b = canonical_body_name(b);
    }
    return p;
}

double slack(const ExperimentConfig& c) { return c.slack.value_or(10.0); }

TheoryConstants constants(const ExperimentConfig& c, std::size_t n) {
    return TheoryConstants::for_dimension(n, c.kappa.value_or(2.0), slack(c));
}

double log2sq(std::size_t n) {
    const double l = std::log(double(n) + 1.0);
    return l * l;
}

// Gaussian tail threshold for the largest of m standard normal magnitudes at
// family-wise level 0.0027 (the single-test 3σ level).
double max_z_threshold(std::size_t m) { return normal_quantile(1.0 - 0.00135 / double(std::max<std::size_t>(m, 1))); }

void run_sandwich(const ExperimentConfig& c, ExperimentRecord& rec) {
    RngStream rng(c.require_seed());
    const auto bodies = bodies_or(c, kAllBodies);
    const std::size_t samples = c.samples.value_or(20000);
    std::uint64_t stream = 0;
    for (std::size_t n : dims_or(c, {8})) {
        const auto tc = constants(c, n);
        for (const auto& xname : bodies) {
            for (const auto& kname : bodies) {
                RngStream r = rng.spawn(stream++);
                const auto x = iso(xname, n);
                const auto k = iso(kname, n);
                const auto eu = mean_gauge_uniform(*k, *x, samples, r);
                const auto eg = mean_gauge_gaussian(*k, samples, r);
                const double ratio = eu.value / eg.value;
                const double lo = 1.0 / (tc.slack * tc.q), hi = tc.slack * tc.q;
                rec.add_row("sandwich", {{"n", n},
                                         {"x_body", xname},
                                         {"k_body", kname},
                                         {"mean_uniform", eu.value},
                                         {"se_uniform", eu.se},
                                         {"mean_gaussian", eg.value},
                                         {"se_gaussian", eg.se},
                                         {"ratio", ratio},
                                         {"lower", lo},
                                         {"upper", hi},
                                         {"ok", ratio >= lo && ratio <= hi}});
            }
        }
    }
    for (std::size_t n : std::vector<std::size_t>{4, 16, 64, 256}) {
        RngStream r = rng.spawn(stream++);
        const double logn = std::log(double(n));
        auto row = [&](const std::string& q, const ScalarEstimate& e, double reference, double scale, double lo,
                       double hi) {
            const double v = e.value / scale;
            rec.add_row("sup_norms", {{"n", n},
                                   {"quantity", q},
                                   {"estimate", e.value},
                                   {"se", e.se},
                                   {"reference", reference},
                                   {"normalized", v},
                                   {"band_lo", lo},
                                   {"band_hi", hi},
                                   {"ok", v >= lo && v <= hi}});
        };
        row("cube_sup", mean_gauge_uniform(*cube(n), *iso("cube", n), samples, r), isotropic_cube_sup_mean(n), 1.0, 1.0,
            std::sqrt(3.0));
        row("gaussian_sup_over_sqrt_log", mean_gauge_gaussian(*cube(n), samples, r), gaussian_sup_mean(n),
            std::sqrt(logn), 0.8, 2.2);
        row("laplace_sup_over_log", mean_sup_norm_laplace(n, samples, r), laplace_sup_mean(n), logn, 0.5, 2.5);
    }
}

void run_mm(const ExperimentConfig& c, ExperimentRecord& rec) {
    RngStream rng(c.require_seed());
    const std::size_t samples = c.samples.value_or(50000);
    std::uint64_t stream = 0;
    for (std::size_t n : dims_or(c, {4, 8, 16})) {
        if (n < 2) throw Error("mm: dimensions must be at least 2");
        const auto tc = constants(c, n);
        const double logn = std::log(double(n));
        for (const auto& name : bodies_or(c, kAllBodies)) {
            RngStream r = rng.spawn(stream++);
            const auto k = iso(name, n);
            const auto m = M_of(*k, samples, r);
            const auto ms = Mstar_of(*k, samples, r);
            const auto g = mean_gauge_gaussian(*k, samples, r);
            const double a = alpha_n(n);
            const double m_scaled = m.value * std::sqrt(double(n)) / (tc.psi * std::sqrt(logn));
            const double ms_scaled = ms.value / (std::sqrt(double(n)) * logn * logn);
            const double gap = g.value - a * m.value;
            const double gap_se = std::hypot(g.se, a * m.se);
            rec.add_row("mm", {{"n", n},
                               {"body", name},
                               {"M", m.value},
                               {"M_se", m.se},
                               {"Mstar", ms.value},
                               {"Mstar_se", ms.se},
                               {"mean_gauge_gaussian", g.value},
                               {"mean_gauge_gaussian_se", g.se},
                               {"M_scaled", m_scaled},
                               {"Mstar_scaled", ms_scaled},
                               {"identity_gap", gap},
                               {"identity_se", gap_se},
                               {"ok", m_scaled <= tc.slack && ms_scaled <= tc.slack &&
                                          std::abs(gap) <= 3 * gap_se + 1e-12}});
        }
    }
}

Driver parse_driver(const std::string& s) {
    if (s == "exact") return Driver::exact;
    if (s == "sde") return Driver::sde;
    throw Error("unknown driver: " + s);
}

void run_localize(const ExperimentConfig& c, ExperimentRecord& rec) {
    RngStream rng(c.require_seed());
    const std::string name = bodies_or(c, {"cube"}).front();
    const std::size_t paths = c.paths.value_or(200);
    const std::size_t inner = c.inner.value_or(10000);
    const Driver driver = parse_driver(c.driver);
    const auto trace_dir = c.outdir / "tables" / "traces";
    std::filesystem::create_directories(trace_dir);
    std::uint64_t stream = 0;
    for (std::size_t n : dims_or(c, {4})) {
        const auto body = iso(name, n);
        const double horizon = c.horizon.value_or(default_horizon(n, c.kappa.value_or(2.0)));
        const double dt = c.dt.value_or(horizon / 8.0);
        std::vector<CovarianceTrace> traces(paths);
        RngStream base = rng.spawn(stream++);
        parallel_for(paths, [&](std::size_t p) {
            RngStream r = base.spawn(p);
            const auto path = driver == Driver::exact ? tilt_path_exact(*body, horizon, dt, r)
                                                      : tilt_path_sde(*body, horizon, dt, inner, r);
            traces[p] = covariance_trace(*body, path, inner, r);
        });
        std::size_t stayed = 0;
        for (std::size_t p = 0; p < paths; ++p) {
            const auto& tr = traces[p];
            double lmin = std::numeric_limits<double>::infinity(), lmax = 0.0;
            bool cap_ok = true;
            for (const auto& s : tr.steps) {
                lmin = std::min(lmin, s.lambda_min);
                lmax = std::max(lmax, s.lambda_max);
                if (s.t > 0.0 && s.lambda_max > 1.0 / s.t + 3 * s.se_scale) cap_ok = false;
                rec.add_row("localize_trace", {{"n", n},
                                               {"path", p},
                                               {"t", s.t},
                                               {"lambda_min", s.lambda_min},
                                               {"lambda_max", s.lambda_max},
                                               {"f_beta", s.f_beta},
                                               {"g_beta", s.g_beta},
                                               {"se_scale", s.se_scale},
                                               {"exited_window", s.exited_window}});
            }
            stayed += tr.stayed_in_window();
            rec.add_row("localize_paths", {{"n", n},
                                           {"path", p},
                                           {"stayed_in_window", tr.stayed_in_window()},
                                           {"first_exit", tr.first_exit ? long(*tr.first_exit) : -1L},
                                           {"min_lambda_min", lmin},
                                           {"max_lambda_max", lmax},
                                           {"ok", cap_ok}});
            write_trace_csv(trace_dir / ("n" + std::to_string(n) + "_path" + std::to_string(p) + ".csv"), tr);
        }
        const double rate = double(stayed) / double(paths);
        const auto ci = clopper_pearson(stayed, paths);
        rec.add_row("localize", {{"n", n},
                                 {"body", name},
                                 {"driver", to_string(driver)},
                                 {"paths", paths},
                                 {"inner", inner},
                                 {"horizon", horizon},
                                 {"dt", dt},
                                 {"window_rate", rate},
                                 {"rate_lo", ci.first},
                                 {"rate_hi", ci.second},
                                 {"ok", rate >= 0.9}});
    }
}

// Clipped martingales built on exact-driver localization paths.
std::vector<ClippedPath> clipped_ensemble(const Body& body, std::size_t paths, std::size_t inner, double horizon,
                                          double dt, RngStream& rng) {
    std::vector<ClippedPath> out(paths);
    parallel_for(paths, [&](std::size_t p) {
        RngStream r = rng.spawn(p);
        const auto path = tilt_path_exact(body, horizon, dt, r);
        out[p] = clipped_martingale(path, covariance_trace(body, path, inner, r));
    });
    rng.next_u64();
    return out;
}

void run_maurey(const ExperimentConfig& c, ExperimentRecord& rec) {
    RngStream rng(c.require_seed());
    const std::string name = bodies_or(c, {"cube"}).front();
    const std::size_t paths = c.paths.value_or(2000);
    const std::size_t inner = c.inner.value_or(1000);
    const double horizon = c.horizon.value_or(0.1);
    const double dt = c.dt.value_or(horizon / 4.0);
    const double r = 4.0 * horizon;
    for (std::size_t n : dims_or(c, {4})) {
        const auto body = iso(name, n);
        const auto ens = clipped_ensemble(*body, paths, inner, horizon, dt, rng);
        std::vector<std::vector<double>> z1(n);
        double recon = 0.0, qv_max = 0.0;
        for (const auto& v : ens) {
            qv_max = std::max(qv_max, sym_eig(v.quadratic_variation).lambda_max());
            const auto pair = maurey_decompose(v.endpoint(), v.quadratic_variation, r, rng);
            for (std::size_t i = 0; i < n; ++i) {
                recon = std::max(recon, std::abs(std::sqrt(r) * (pair.z1[i] + pair.z2[i]) / 2 - v.endpoint()[i]));
                z1[i].push_back(pair.z1[i]);
            }
        }
        rec.add_row("maurey_checks", {{"n", n},
                                      {"paths", paths},
                                      {"r", r},
                                      {"max_reconstruction_error", recon},
                                      {"max_qv_eigenvalue", qv_max},
                                      {"ok", recon <= 1e-12 && qv_max <= r + 1e-12}});
        for (std::size_t i = 0; i < n; ++i) {
            const auto b = moment_battery(z1[i]);
            rec.add_row("maurey", {{"n", n},
                                   {"coordinate", i},
                                   {"mean", b.mean},
                                   {"mean_se", b.mean_se},
                                   {"var", b.var},
                                   {"var_se", b.var_se},
                                   {"kurtosis", b.kurtosis},
                                   {"kurtosis_se", b.kurtosis_se},
                                   {"ok", std::abs(b.mean) <= 3 * b.mean_se && std::abs(b.var - 1) <= 3 * b.var_se &&
                                              std::abs(b.kurtosis - 3) <= 5 * b.kurtosis_se}});
        }
    }
}

void run_convex_order(const ExperimentConfig& c, ExperimentRecord& rec) {
    RngStream rng(c.require_seed());
    const std::string name = bodies_or(c, {"cube"}).front();
    const std::size_t paths = c.paths.value_or(2000);
    const std::size_t inner = c.inner.value_or(1000);
    const double horizon = c.horizon.value_or(0.1);
    const double dt = c.dt.value_or(horizon / 4.0);
    const double r = 0.25;
    for (std::size_t n : dims_or(c, {4})) {
        const auto body = iso(name, n);
        const auto ens = clipped_ensemble(*body, paths, inner, horizon, dt, rng);
        std::vector<Vector> ends;
        for (const auto& v : ens) ends.push_back(v.endpoint());
        const auto cb = cube(n);
        const auto cp = cross_polytope(n);
        const std::vector<std::pair<std::string, std::function<double(std::span<const double>)>>> fs{
            {"squared_norm", [](std::span<const double> x) { return dot(x, x); }},
            {"cube_gauge", [&](std::span<const double> x) { return cb->gauge(x); }},
            {"crosspoly_gauge", [&](std::span<const double> x) { return cp->gauge(x); }}};
        for (const auto& [fname, f] : fs) {
            const auto rep = convex_order_check(f, ends, r, horizon, rng, 4 * paths);
            rec.add_row("convex_order", {{"n", n},
                                         {"functional", fname},
                                         {"martingale_mean", rep.martingale_mean},
                                         {"martingale_se", rep.martingale_se},
                                         {"gaussian_mean", rep.gaussian_mean},
                                         {"gaussian_se", rep.gaussian_se},
                                         {"ok", rep.passed}});
        }
    }
}

void run_kahane(const ExperimentConfig& c, ExperimentRecord& rec) {
    RngStream rng(c.require_seed());
    const std::size_t samples = c.samples.value_or(100000);
    const auto ps = c.p_values.empty() ? std::vector<double>{2, 4, 8} : c.p_values;
    for (std::size_t n : dims_or(c, {8})) {
        for (const auto& name : bodies_or(c, kPolytopes)) {
            const auto k = named_body(name, n);
            for (double p : ps) {
                const auto e = kahane_ratio(*k, p, samples, rng);
                const double bound = 3.0 * std::sqrt(p);
                rec.add_row("kahane", {{"n", n},
                                       {"body", name},
                                       {"p", p},
                                       {"ratio", e.value},
                                       {"se", e.se},
                                       {"bound", bound},
                                       {"ok", e.value <= bound && e.value >= 1.0}});
            }
        }
    }
}

void run_chevet(const ExperimentConfig& c, ExperimentRecord& rec) {
    RngStream rng(c.require_seed());
    const std::size_t trials = c.trials.value_or(500);
    const std::size_t sphere = c.samples.value_or(20000);
    const auto bodies = bodies_or(c, kPolytopes);
    for (std::size_t n : dims_or(c, {2, 4, 8})) {
        for (const auto& kname : bodies) {
            for (const auto& tname : bodies) {
                const auto k = named_isotropic(kname, n, Representation::both);
                const auto t = named_isotropic(tname, n, Representation::both);
                const auto r = chevet_estimate(*k, *t, trials, sphere, rng);
                rec.add_row("chevet", {{"n", n},
                                       {"k_body", kname},
                                       {"t_body", tname},
                                       {"gaussian", r.gaussian.value},
                                       {"gaussian_se", r.gaussian.se},
                                       {"orthogonal", r.orthogonal.value},
                                       {"orthogonal_se", r.orthogonal.se},
                                       {"bracket", r.bracket},
                                       {"gaussian_ratio", r.gaussian_ratio},
                                       {"orthogonal_ratio", r.orthogonal_ratio},
                                       {"certified", r.certified},
                                       {"ok", r.gaussian_ratio <= slack(c) && r.orthogonal_ratio <= slack(c)}});
            }
        }
        const auto s = mean_singular_factor(n, std::max<std::size_t>(trials, 2), rng);
        const double ratio = s.delta.value / std::sqrt(double(n));
        const std::size_t pairs = n * (n - 1) / 2;
        const double z = s.off_diagonal_se > 0.0 ? s.max_off_diagonal / s.off_diagonal_se : 0.0;
        rec.add_row("singular_factor", {{"n", n},
                                        {"delta", s.delta.value},
                                        {"delta_se", s.delta.se},
                                        {"delta_over_sqrt_n", ratio},
                                        {"max_off_diagonal", s.max_off_diagonal},
                                        {"off_diagonal_se", s.off_diagonal_se},
                                        {"ok", ratio >= 0.5 && ratio <= 1.0 && z <= max_z_threshold(pairs)}});
    }
}

void run_rotate(const ExperimentConfig& c, ExperimentRecord& rec) {
    const std::uint64_t seed = c.require_seed();
    const std::size_t rotations = c.rotations.value_or(1000);
    if (rotations == 0) throw Error("rotate: need at least one rotation");
    std::uint64_t stream = 0;
    for (const auto& [a, b] : pairs_or(c, {{"crosspoly", "simplex"}, {"simplex", "crosspoly"}})) {
        for (std::size_t n : dims_or(c, {4, 8, 16})) {
            const auto k1 = iso(a, n);
            const auto k2 = iso(b, n);
            const RngStream base = RngStream(seed).spawn(stream++);
            std::vector<double> lam(rotations);
            parallel_for(rotations, [&](std::size_t i) {
                RngStream r = base.spawn(i);
                lam[i] = containment_lambda(*k1, *k2, haar_orthogonal(n, r));
            });
            const auto q90 = quantile_with_ci(lam, 0.9);
            const double bound = slack(c) * std::sqrt(double(n)) * log2sq(n);
            rec.add_row("rotate", {{"pair", a + ":" + b},
                                   {"n", n},
                                   {"rotations", rotations},
                                   {"min", *std::min_element(lam.begin(), lam.end())},
                                   {"p50", empirical_quantile(lam, 0.5)},
                                   {"p90", q90.estimate},
                                   {"p90_lo", q90.lower},
                                   {"p90_hi", q90.upper},
                                   {"p99", empirical_quantile(lam, 0.99)},
                                   {"max", *std::max_element(lam.begin(), lam.end())},
                                   {"bound", bound},
                                   {"ok", q90.estimate <= bound}});
        }
    }
}

void run_partial(const ExperimentConfig& c, ExperimentRecord& rec) {
    RngStream rng(c.require_seed());
    const double beta = c.beta.value_or(0.99);
    const std::size_t samples = c.samples.value_or(20000);
    for (const auto& [a, b] : pairs_or(c, {{"cube", "crosspoly"}, {"cube", "simplex"}})) {
        for (std::size_t n : dims_or(c, {4, 8, 16})) {
            const auto k = iso(a, n);
            const auto t = iso(b, n);
            const auto fwd = partial_containment_lambda(*k, *t, beta, samples, rng);
            const auto bwd = partial_containment_lambda(*t, *k, beta, samples, rng);
            const double bound = slack(c) * log2sq(n);
            const double q = std::max(fwd.quantile.estimate, bwd.quantile.estimate);
            const double dpc_bound = slack(c) * log2sq(n) * log2sq(n);
            rec.add_row("partial", {{"pair", a + ":" + b},
                                    {"n", n},
                                    {"beta", beta},
                                    {"forward", fwd.quantile.estimate},
                                    {"forward_lo", fwd.quantile.lower},
                                    {"forward_hi", fwd.quantile.upper},
                                    {"backward", bwd.quantile.estimate},
                                    {"backward_lo", bwd.quantile.lower},
                                    {"backward_hi", bwd.quantile.upper},
                                    {"bound", bound},
                                    {"dpc", q * q},
                                    {"dpc_bound", dpc_bound},
                                    {"ok", fwd.quantile.estimate <= bound && bwd.quantile.estimate <= bound &&
                                               q * q <= dpc_bound}});
        }
    }
    for (std::size_t n : dims_or(c, {4, 8, 16})) {
        const auto bl = ball(n, 1.0);
        const auto pc = partial_containment_lambda(*bl, *bl, beta, samples, rng);
        const double exact = std::pow(beta, 1.0 / double(n));
        rec.add_row("partial_ball", {{"n", n},
                                     {"beta", beta},
                                     {"estimate", pc.quantile.estimate},
                                     {"lower", pc.quantile.lower},
                                     {"upper", pc.quantile.upper},
                                     {"exact", exact},
                                     {"ok", pc.quantile.lower <= exact && exact <= pc.quantile.upper}});
    }
}

ojson matrix_json(const Matrix& m) {
    ojson rows = ojson::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        const auto r = m.row(i);
        rows.push_back(std::vector<double>(r.begin(), r.end()));
    }
    return rows;
}

void run_dbm(const ExperimentConfig& c, ExperimentRecord& rec) {
    const std::uint64_t seed = c.require_seed();
    const std::size_t rotations = c.rotations.value_or(1000);
    for (const auto& [a, b] : pairs_or(c, {{"cube", "crosspoly"}})) {
        for (std::size_t n : dims_or(c, {2, 4})) {
            const auto cert = dbm_upper(iso(a, n), iso(b, n), rotations, seed);
            rec.add_row("dbm", {{"pair", a + ":" + b},
                                {"n", n},
                                {"bound", cert.bound},
                                {"forward", cert.forward},
                                {"backward", cert.backward},
                                {"best_index", cert.best_index},
                                {"trials", cert.trials},
                                {"ok", cert.bound >= 1.0 - 1e-9}});
            rec.certificates.push_back({{"kind", to_string(cert.kind)},
                                        {"body1", body_spec(a, n)},
                                        {"body2", body_spec(b, n)},
                                        {"u", matrix_json(cert.u)},
                                        {"forward", cert.forward},
                                        {"backward", cert.backward},
                                        {"bound", cert.bound},
                                        {"seed", seed},
                                        {"trials", cert.trials},
                                        {"best_index", cert.best_index}});
        }
    }
}

void run_dpc(const ExperimentConfig& c, ExperimentRecord& rec) {
    const std::uint64_t seed = c.require_seed();
    const double beta = c.beta.value_or(0.99);
    const std::size_t samples = c.samples.value_or(20000);
    for (const auto& [a, b] : pairs_or(c, {{"cube", "simplex"}})) {
        for (std::size_t n : dims_or(c, {8})) {
            const auto cert = dpc_upper(iso(a, n), iso(b, n), beta, samples, seed);
            const double bound = slack(c) * log2sq(n) * log2sq(n);
            rec.add_row("dpc", {{"pair", a + ":" + b},
                                {"n", n},
                                {"beta", beta},
                                {"forward", cert.forward},
                                {"backward", cert.backward},
                                {"bound", cert.bound},
                                {"surrogate_bound", bound},
                                {"ok", cert.bound <= bound}});
            rec.certificates.push_back({{"kind", to_string(cert.kind)},
                                        {"body1", body_spec(a, n)},
                                        {"body2", body_spec(b, n)},
                                        {"forward", cert.forward},
                                        {"backward", cert.backward},
                                        {"bound", cert.bound},
                                        {"seed", seed},
                                        {"beta", beta},
                                        {"samples", samples}});
        }
    }
}

void run_freedman(const ExperimentConfig& c, ExperimentRecord& rec) {
    RngStream rng(c.require_seed());
    const auto caps = c.qv_caps.empty() ? std::vector<double>{0.5, 1.0} : c.qv_caps;
    const auto levels = c.levels.empty() ? std::vector<double>{0.5, 1.0, 1.5, 2.0} : c.levels;
    const std::size_t paths = c.paths.value_or(10000);
    const std::size_t steps = c.trials.value_or(8);
    for (double b : caps) {
        for (bool adaptive : {false, true}) {
            const auto rep = freedman_check(b, levels, paths, steps, rng, adaptive);
            for (const auto& row : rep.rows) {
                // Binomial se under the reflection value, so a zero count is not exact.
                const double oracle_se = std::sqrt(row.reflection * (1 - row.reflection) / double(paths));
                const bool matches = adaptive || std::abs(row.frequency - row.reflection) <= 3 * oracle_se + 1e-12;
                rec.add_row("freedman", {{"b", b},
                                         {"a", row.a},
                                         {"adaptive", adaptive},
                                         {"paths", paths},
                                         {"frequency", row.frequency},
                                         {"se", row.se},
                                         {"bound", row.bound},
                                         {"reflection", row.reflection},
                                         {"ok", row.passed && matches}});
            }
        }
    }
}

struct Entry {
    ExperimentInfo info;
    Runner run;
};

const std::vector<Entry>& registry() {
    static const std::vector<Entry> r{
        {{"sandwich", "E|X|_K / E|G|_K for isotropic body pairs, and sup-norm magnitudes",
          "n,x_body,k_body,mean_uniform,se_uniform,mean_gaussian,se_gaussian,ratio,lower,upper,ok"},
         run_sandwich},
        {{"mm", "M and M* of isotropic bodies against their scaled bounds",
          "n,body,M,M_se,Mstar,Mstar_se,mean_gauge_gaussian,mean_gauge_gaussian_se,M_scaled,Mstar_scaled,"
          "identity_gap,identity_se,ok"},
         run_mm},
        {{"localize", "covariance traces along localization paths and the window rate",
          "n,body,driver,paths,inner,horizon,dt,window_rate,rate_lo,rate_hi,ok"},
         run_localize},
        {{"maurey", "Maurey decomposition of clipped-martingale endpoints with r = 4T",
          "n,coordinate,mean,mean_se,var,var_se,kurtosis,kurtosis_se,ok"},
         run_maurey},
        {{"convex-order", "E F(v_T) against E F(sqrt(r) B_T) with r = 1/4",
          "n,functional,martingale_mean,martingale_se,gaussian_mean,gaussian_se,ok"},
         run_convex_order},
        {{"kahane", "(E|G|^p)^(1/p) / E|G| against 3 sqrt(p)", "n,body,p,ratio,se,bound,ok"}, run_kahane},
        {{"chevet", "Gaussian and orthogonal operator norms against R(K)M(T) + R(T°)M(K°)",
          "n,k_body,t_body,gaussian,gaussian_se,orthogonal,orthogonal_se,bracket,gaussian_ratio,orthogonal_ratio,"
          "certified,ok"},
         run_chevet},
        {{"rotate", "percentiles of the containment factor over Haar rotations",
          "pair,n,rotations,min,p50,p90,p90_lo,p90_hi,p99,max,bound,ok"},
         run_rotate},
        {{"partial", "beta-quantile containment factors in both directions",
          "pair,n,beta,forward,forward_lo,forward_hi,backward,backward_lo,backward_hi,bound,dpc,dpc_bound,ok"},
         run_partial},
        {{"dbm", "Banach-Mazur upper bounds with rotation certificates",
          "pair,n,bound,forward,backward,best_index,trials,ok"},
         run_dbm},
        {{"dpc", "partial-containment distance bounds with certificates",
          "pair,n,beta,forward,backward,bound,surrogate_bound,ok"},
         run_dpc},
        {{"freedman", "running-maximum tail frequencies against exp(-a^2/2b)",
          "b,a,adaptive,paths,frequency,se,bound,reflection,ok"},
         run_freedman},
    };
    return r;
}

std::vector<double> column(const std::vector<ojson>& rows, const std::string& key) {
    std::vector<double> out;
    for (const auto& r : rows) {
        if (!r.contains(key)) throw Error("plot: missing column " + key);
        out.push_back(r.at(key).get<double>());
    }
    return out;
}

void write_chart(const Chart& chart, const std::filesystem::path& file, std::vector<std::filesystem::path>& out) {
    const std::string svg = render_svg(chart);
    std::ofstream(file) << svg;
    out.push_back(file);
}

// Rows grouped by a string key, groups in first-appearance order.
std::vector<std::pair<std::string, std::vector<ojson>>> group_by(const std::vector<ojson>& rows,
                                                                 const std::string& key) {
    std::vector<std::pair<std::string, std::vector<ojson>>> g;
    for (const auto& r : rows) {
        if (!r.contains(key)) throw Error("plot: missing column " + key);
        const std::string v = r.at(key).is_string() ? r.at(key).get<std::string>() : r.at(key).dump();
        auto it = std::find_if(g.begin(), g.end(), [&](const auto& e) { return e.first == v; });
        if (it == g.end()) {
            g.push_back({v, {}});
            it = g.end() - 1;
        }
        it->second.push_back(r);
    }
    return g;
}

std::vector<double> dense_grid(double lo, double hi, int k = 64) {
    std::vector<double> x(k + 1);
    for (int i = 0; i <= k; ++i) x[i] = lo + (hi - lo) * i / double(k);
    return x;
}

}  // namespace

const std::vector<ExperimentInfo>& experiment_list() {
    static const std::vector<ExperimentInfo> list = [] {
        std::vector<ExperimentInfo> l;
        for (const auto& e : registry()) l.push_back(e.info);
        return l;
    }();
    return list;
}

ExperimentRecord run_experiment(const ExperimentConfig& cfg) {
    const auto& reg = registry();
    const auto it = std::find_if(reg.begin(), reg.end(), [&](const Entry& e) { return e.info.name == cfg.experiment; });
    if (it == reg.end()) throw Error("unknown experiment: " + cfg.experiment);
    cfg.require_seed();
    ExperimentRecord rec;
    rec.version = version_string();
    rec.config = config_to_json(cfg);
    const auto start = std::chrono::steady_clock::now();
    it->run(cfg, rec);
    rec.wall_clock = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rec;
}

std::vector<std::filesystem::path> plot_record(const ExperimentRecord& record, const std::filesystem::path& outdir) {
    if (record.rows.empty()) throw Error("plot: record has no rows");
    const auto dir = outdir / "plots";
    std::filesystem::create_directories(dir);
    std::vector<std::filesystem::path> out;
    const double sl = record.config.value("slack", 10.0);
    for (const auto& name : record.tables()) {
        const auto rows = record.table(name);
        if (name == "rotate") {
            Chart ch{"90th percentile containment factor", "n", "lambda*", {}};
            double lo = 1e300, hi = -1e300;
            for (const auto& [pair, g] : group_by(rows, "pair")) {
                const auto xs = column(g, "n");
                ch.series.push_back({pair, xs, column(g, "p90"), ChartSeries::Style::line});
                lo = std::min(lo, *std::min_element(xs.begin(), xs.end()));
                hi = std::max(hi, *std::max_element(xs.begin(), xs.end()));
            }
            auto xs = dense_grid(lo, hi);
            std::vector<double> ys;
            for (double x : xs) ys.push_back(std::sqrt(x) * std::pow(std::log(x + 1), 2));
            ch.series.push_back({"sqrt(n) log^2(n+1)", xs, ys, ChartSeries::Style::dashed});
            write_chart(ch, dir / "rotate.svg", out);
        } else if (name == "localize_trace") {
            for (const std::string stat : {"lambda_min", "lambda_max", "f_beta", "g_beta"}) {
                Chart ch{stat + " along localization paths", "t", stat, {}};
                for (const auto& [key, g] : group_by(rows, "path"))
                    ch.series.push_back({"path " + key, column(g, "t"), column(g, stat), ChartSeries::Style::line});
                if (ch.series.size() > 8) {
                    // Keep the legend readable; all paths stay on the chart.
                    for (std::size_t i = 8; i < ch.series.size(); ++i) ch.series[i].name.clear();
                }
                write_chart(ch, dir / ("trace_" + stat + ".svg"), out);
            }
        } else if (name == "sandwich") {
            Chart ch{"E|X|_K / E|G|_K", "n", "ratio", {}};
            ch.series.push_back({"pairs", column(rows, "n"), column(rows, "ratio"), ChartSeries::Style::points});
            ch.series.push_back({"window", column(rows, "n"), column(rows, "lower"), ChartSeries::Style::dashed});
            ch.series.push_back({"", column(rows, "n"), column(rows, "upper"), ChartSeries::Style::dashed});
            write_chart(ch, dir / "sandwich.svg", out);
        } else if (name == "mm") {
            Chart ch{"scaled M and M*", "n", "value / bound shape", {}};
            for (const auto& [body, g] : group_by(rows, "body")) {
                ch.series.push_back({body + " M", column(g, "n"), column(g, "M_scaled"), ChartSeries::Style::line});
                ch.series.push_back(
                    {body + " M*", column(g, "n"), column(g, "Mstar_scaled"), ChartSeries::Style::dashed});
            }
            write_chart(ch, dir / "mm.svg", out);
        } else if (name == "partial") {
            Chart ch{"beta-quantile containment factor", "n", "lambda", {}};
            for (const auto& [pair, g] : group_by(rows, "pair"))
                ch.series.push_back({pair, column(g, "n"), column(g, "forward"), ChartSeries::Style::line});
            const auto ns = column(rows, "n");
            auto xs = dense_grid(*std::min_element(ns.begin(), ns.end()), *std::max_element(ns.begin(), ns.end()));
            std::vector<double> ys;
            for (double x : xs) ys.push_back(sl * std::pow(std::log(x + 1), 2));
            ch.series.push_back({"bound", xs, ys, ChartSeries::Style::dashed});
            write_chart(ch, dir / "partial.svg", out);
        } else if (name == "freedman") {
            Chart ch{"running maximum tails", "a", "P(sup M >= a)", {}};
            for (const auto& [b, g] : group_by(rows, "b")) {
                std::vector<ojson> plain;
                for (const auto& r : g)
                    if (!r.at("adaptive").get<bool>()) plain.push_back(r);
                if (plain.empty()) continue;
                ch.series.push_back(
                    {"empirical b=" + b, column(plain, "a"), column(plain, "frequency"), ChartSeries::Style::points});
                ch.series.push_back({"bound b=" + b, column(plain, "a"), column(plain, "bound"), ChartSeries::Style::dashed});
            }
            if (!ch.series.empty()) write_chart(ch, dir / "freedman.svg", out);
        }
    }
    return out;
}

}  // namespace isoloc
