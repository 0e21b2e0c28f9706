#include <cstdlib>
#include <iostream>

#include "CLI11.hpp"
#include "isoloc/bodies/constructors.hpp"
#include "isoloc/cli/experiments.hpp"
#include "isoloc/cli/verify.hpp"

using namespace isoloc;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitViolation = 2;

std::string experiments_help() {
    std::string s = "Experiments (main table columns):\n";
    for (const auto& e : experiment_list()) s += "  " + e.name + ": " + e.summary + "\n    " + e.columns + "\n";
    return s;
}

// Raw flag values; applied over the JSON config so that flags win.
struct RunFlags {
    std::string experiment, config, n, bodies, pairs, p, qv_caps, levels, driver, outdir;
    std::optional<std::size_t> samples, paths, inner, rotations, trials;
    std::optional<double> horizon, dt, beta, kappa, slack;
    std::optional<std::uint64_t> seed;
};

ExperimentConfig build_config(const RunFlags& f) {
    ExperimentConfig c = f.config.empty() ? ExperimentConfig{} : load_config(f.config);
    if (!f.experiment.empty()) c.experiment = f.experiment;
    if (!f.n.empty()) c.dims = parse_size_list(f.n);
    if (!f.bodies.empty()) c.bodies = parse_string_list(f.bodies);
    if (!f.pairs.empty()) c.pairs = parse_pairs(f.pairs);
    if (!f.p.empty()) c.p_values = parse_double_list(f.p);
    if (!f.qv_caps.empty()) c.qv_caps = parse_double_list(f.qv_caps);
    if (!f.levels.empty()) c.levels = parse_double_list(f.levels);
    if (!f.driver.empty()) c.driver = f.driver;
    if (!f.outdir.empty()) c.outdir = f.outdir;
    auto over = [](auto& dst, const auto& src) {
        if (src) dst = src;
    };
    over(c.samples, f.samples);
    over(c.paths, f.paths);
    over(c.inner, f.inner);
    over(c.rotations, f.rotations);
    over(c.trials, f.trials);
    over(c.horizon, f.horizon);
    over(c.dt, f.dt);
    over(c.beta, f.beta);
    over(c.kappa, f.kappa);
    over(c.slack, f.slack);
    over(c.seed, f.seed);
    if (!c.seed) {
        if (const char* env = std::getenv("ISOLOC_SEED")) {
            try {
                c.seed = std::stoull(env);
            } catch (const std::exception&) {
                throw Error(std::string("ISOLOC_SEED is not an unsigned integer: ") + env);
            }
        }
    }
    return c;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"isoloc: isotropic bodies, stochastic localization and containment experiments"};
    app.set_version_flag("--version", version_string());
    app.require_subcommand(1);

    RunFlags f;
    auto* run = app.add_subcommand("run", "run a named experiment");
    run->footer(experiments_help());
    run->add_option("experiment", f.experiment, "experiment name")->required();
    run->add_option("--config", f.config, "JSON config file; flags override its keys");
    run->add_option("--n", f.n, "dimensions, comma separated");
    run->add_option("--bodies", f.bodies, "cube, ball, crosspoly, simplex (comma separated)");
    run->add_option("--pair", f.pairs, "body pairs K1:K2, comma separated");
    run->add_option("--samples", f.samples);
    run->add_option("--paths", f.paths);
    run->add_option("--inner", f.inner, "inner samples per localized measure");
    run->add_option("--rotations", f.rotations);
    run->add_option("--trials", f.trials);
    run->add_option("--horizon", f.horizon);
    run->add_option("--dt", f.dt);
    run->add_option("--beta", f.beta);
    run->add_option("--p", f.p, "moment orders, comma separated");
    run->add_option("--qv-caps", f.qv_caps);
    run->add_option("--levels", f.levels);
    run->add_option("--driver", f.driver, "exact or sde");
    run->add_option("--seed", f.seed, "falls back to ISOLOC_SEED");
    run->add_option("--outdir", f.outdir);
    run->add_option("--kappa", f.kappa);
    run->add_option("--slack", f.slack);

    std::string record_path, plot_outdir;
    auto* plot = app.add_subcommand("plot", "write SVG charts for a record");
    plot->add_option("record", record_path, "record.jsonl")->required();
    plot->add_option("--outdir", plot_outdir, "defaults to the record's directory");

    std::string verify_path;
    auto* verify = app.add_subcommand("verify", "recompute certificates and property flags of a record");
    verify->add_option("record", verify_path, "record.jsonl")->required();

    auto* bodies = app.add_subcommand("bodies", "named bodies");
    bodies->add_subcommand("list", "list named bodies");
    bodies->require_subcommand(1);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) {
            const auto cfg = build_config(f);
            const auto rec = run_experiment(cfg);
            write_outputs(cfg.outdir, rec);
            const std::size_t bad = rec.violations();
            std::cout << cfg.experiment << ": " << rec.rows.size() << " rows, " << rec.certificates.size()
                      << " certificates, " << bad << " violations -> " << (cfg.outdir / "record.jsonl").string()
                      << "\n";
            return bad == 0 ? kExitOk : kExitViolation;
        }
        if (*plot) {
            const auto rec = read_record(record_path);
            const std::filesystem::path out =
                plot_outdir.empty() ? std::filesystem::path(record_path).parent_path() : std::filesystem::path(plot_outdir);
            for (const auto& file : plot_record(rec, out)) std::cout << file.string() << "\n";
            return kExitOk;
        }
        if (*verify) {
            const auto rep = verify_record(read_record(verify_path));
            for (const auto& c : rep.checks)
                std::cout << (c.ok ? "PASS " : "FAIL ") << c.what << ": " << c.detail << "\n";
            return rep.passed() ? kExitOk : kExitViolation;
        }
        for (const auto& name : named_body_list()) std::cout << name << "\n";
        return kExitOk;
    } catch (const std::exception& e) {
        std::cerr << "isoloc: " << e.what() << "\n";
        return kExitError;
    }
}
