#include "isoloc/localization/trace.hpp"

#include <cmath>
#include <fstream>

#include "isoloc/numkit/eig.hpp"

namespace isoloc {

namespace {

constexpr double kWindowLow = 0.5;
constexpr double kWindowHigh = 2.0;

}  // namespace

double proxy_beta(std::size_t n) { return 2.0 * std::log(double(std::max<std::size_t>(n, 2))); }

CovarianceTrace covariance_trace(const Body& body, const LocalizationPath& path, std::size_t inner, RngStream& rng,
                                 const SamplerConfig& sampler) {
    CovarianceTrace trace;
    trace.n = body.dim();
    trace.beta = proxy_beta(trace.n);
    trace.beta_sharp = 4.0 * trace.beta;
    for (std::size_t k = 0; k < path.times.size(); ++k) {
        MeasureState state = k < path.states.size()
                                 ? path.states[k]
                                 : measure_state(body, path.times[k], path.theta[k], inner, rng, sampler);
        Vector ev = sym_eig(state.cov()).values;
        for (double& v : ev) v = std::max(v, 0.0);
        TraceStep s;
        s.t = path.times[k];
        s.lambda_max = ev.front();
        s.lambda_min = ev.back();
        s.f_beta = eig_proxy_max(ev, trace.beta);
        s.g_beta = eig_proxy_min(ev, trace.beta);
        s.f_beta_sharp = eig_proxy_max(ev, trace.beta_sharp);
        s.g_beta_sharp = eig_proxy_min(ev, trace.beta_sharp);
        s.third_moment_op = state.third_moment_op;
        s.se_scale = state.moments.cov_se_max();
        s.exited_window = s.lambda_min < kWindowLow - 3 * s.se_scale || s.lambda_max > kWindowHigh + 3 * s.se_scale;
        if (s.exited_window && !trace.first_exit) trace.first_exit = k;
        trace.steps.push_back(s);
        trace.states.push_back(std::move(state));
    }
    return trace;
}

void write_trace_csv(const std::filesystem::path& path, const CovarianceTrace& trace) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path.string());
    out << "t,lambda_min,lambda_max,f_beta,g_beta,se_scale,exited_window\n";
    out.precision(12);
    for (const auto& s : trace.steps)
        out << s.t << "," << s.lambda_min << "," << s.lambda_max << "," << s.f_beta << "," << s.g_beta << ","
            << s.se_scale << "," << (s.exited_window ? 1 : 0) << "\n";
}

std::vector<Vector> innovations(const LocalizationPath& path, const CovarianceTrace& trace) {
    if (path.driver == Driver::sde) return path.increments;
    if (trace.states.size() < path.steps()) throw DimensionError("innovations: trace shorter than path");
    std::vector<Vector> out;
    out.reserve(path.steps());
    for (std::size_t k = 0; k < path.steps(); ++k) {
        const double h = path.times[k + 1] - path.times[k];
        out.push_back(path.theta[k + 1] - path.theta[k] - h * trace.states[k].mean());
    }
    return out;
}

}  // namespace isoloc
