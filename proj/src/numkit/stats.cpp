#include "isoloc/numkit/stats.hpp"

#include <algorithm>
#include <cmath>

#include "isoloc/numkit/special.hpp"

namespace isoloc {

MeanSe mean_se(std::span<const double> xs) {
    MeanSe r;
    r.count = xs.size();
    if (xs.empty()) return r;
    double s = 0.0;
    for (double x : xs) s += x;
    r.mean = s / xs.size();
    if (xs.size() > 1) r.se = std::sqrt(sample_variance(xs) / xs.size());
    return r;
}

MeanSe batch_mean_se(std::span<const double> xs, std::size_t batches) {
    if (xs.size() < 2 * batches) return mean_se(xs);
    const std::size_t per = xs.size() / batches;
    std::vector<double> means(batches);
    for (std::size_t b = 0; b < batches; ++b) {
        double s = 0.0;
        for (std::size_t i = b * per; i < (b + 1) * per; ++i) s += xs[i];
        means[b] = s / per;
    }
    MeanSe r = mean_se(xs);
    r.se = std::sqrt(sample_variance(means) / batches);
    return r;
}

double sample_variance(std::span<const double> xs) {
    if (xs.size() < 2) return 0.0;
    double m = 0.0;
    for (double x : xs) m += x;
    m /= xs.size();
    double s = 0.0;
    for (double x : xs) s += (x - m) * (x - m);
    return s / (xs.size() - 1);
}

MomentBattery moment_battery(std::span<const double> xs) {
    MomentBattery b;
    const double n = static_cast<double>(xs.size());
    if (xs.size() < 4) throw NumericError("moment_battery: need at least 4 samples");
    double m = 0.0;
    for (double x : xs) m += x;
    m /= n;
    double m2 = 0.0, m3 = 0.0, m4 = 0.0;
    for (double x : xs) {
        const double d = x - m;
        m2 += d * d;
        m3 += d * d * d;
        m4 += d * d * d * d;
    }
    m2 /= n;
    m3 /= n;
    m4 /= n;
    const double sd = std::sqrt(m2);
    b.mean = m;
    b.mean_se = sd / std::sqrt(n);
    b.var = m2;
    b.kurtosis = m4 / (m2 * m2);
    // Influence functions of the variance and the kurtosis.
    const double skew = m3 / (sd * sd * sd);
    double var_if = 0.0, kurt_if = 0.0;
    for (double x : xs) {
        const double z = (x - m) / sd;
        const double iv = (x - m) * (x - m) - m2;
        const double ik = (z * z * z * z - b.kurtosis) - 2.0 * b.kurtosis * (z * z - 1.0) - 4.0 * skew * z;
        var_if += iv * iv;
        kurt_if += ik * ik;
    }
    b.var_se = std::sqrt(var_if / n / n);
    b.kurtosis_se = std::sqrt(kurt_if / n / n);
    return b;
}

double kolmogorov_sf(double lambda) {
    if (lambda <= 0.0) return 1.0;
    if (lambda < 0.2) return 1.0;
    double sum = 0.0;
    double sign = 1.0;
    for (int k = 1; k <= 200; ++k) {
        const double term = sign * std::exp(-2.0 * k * k * lambda * lambda);
        sum += term;
        if (std::abs(term) < 1e-17) break;
        sign = -sign;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

KsResult ks_two_sample(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw NumericError("ks_two_sample: empty sample");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = a.size(), nb = b.size();
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x) ++i;
        while (j < b.size() && b[j] <= x) ++j;
        d = std::max(d, std::abs(i / na - j / nb));
    }
    const double ne = std::sqrt(na * nb / (na + nb));
    return {d, kolmogorov_sf((ne + 0.12 + 0.11 / ne) * d)};
}

KsResult ks_one_sample(std::vector<double> xs, const std::function<double(double)>& cdf) {
    if (xs.empty()) throw NumericError("ks_one_sample: empty sample");
    std::sort(xs.begin(), xs.end());
    const double n = xs.size();
    double d = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double f = cdf(xs[i]);
        d = std::max({d, (i + 1) / n - f, f - i / n});
    }
    const double ne = std::sqrt(n);
    return {d, kolmogorov_sf((ne + 0.12 + 0.11 / ne) * d)};
}

double chi_square_sf(double x, double dof) { return incomplete_gamma_upper(0.5 * dof, 0.5 * x); }

double chi_square_uniform_p(std::span<const std::size_t> counts) {
    if (counts.size() < 2) throw NumericError("chi_square_uniform_p: need at least two bins");
    double total = 0.0;
    for (auto c : counts) total += static_cast<double>(c);
    const double expected = total / counts.size();
    double chi2 = 0.0;
    for (auto c : counts) chi2 += (c - expected) * (c - expected) / expected;
    return chi_square_sf(chi2, static_cast<double>(counts.size() - 1));
}

double empirical_quantile(std::vector<double> xs, double beta) {
    if (xs.empty()) throw NumericError("empirical_quantile: empty sample");
    if (!(beta > 0.0 && beta < 1.0)) throw NumericError("empirical_quantile: beta must lie in (0,1)");
    const auto k = static_cast<std::size_t>(std::ceil(beta * xs.size()));
    const std::size_t idx = std::clamp<std::size_t>(k, 1, xs.size()) - 1;
    std::nth_element(xs.begin(), xs.begin() + idx, xs.end());
    return xs[idx];
}

QuantileCi quantile_with_ci(std::vector<double> xs, double beta, double level) {
    if (xs.empty()) throw NumericError("quantile_with_ci: empty sample");
    std::sort(xs.begin(), xs.end());
    const std::size_t n = xs.size();
    const double alpha = 1.0 - level;
    QuantileCi ci;
    const auto k = std::clamp<std::size_t>(static_cast<std::size_t>(std::ceil(beta * n)), 1, n);
    ci.estimate = xs[k - 1];
    // B ~ Bin(n, β) counts samples below the true quantile;
    // P(X_(l) <= q <= X_(u)) = P(l <= B <= u − 1).
    std::size_t lo = k, hi = k;
    while (lo > 1 && binomial_cdf(lo - 2, n, beta) > alpha / 2) --lo;
    while (hi < n && binomial_cdf(hi - 1, n, beta) < 1.0 - alpha / 2) ++hi;
    ci.lower = xs[lo - 1];
    ci.upper = xs[hi - 1];
    return ci;
}

std::pair<double, double> clopper_pearson(std::size_t k, std::size_t n, double level) {
    if (n == 0) throw NumericError("clopper_pearson: n must be positive");
    const double alpha = 1.0 - level;
    auto bisect = [](auto&& f) {
        double lo = 0.0, hi = 1.0;
        for (int it = 0; it < 100; ++it) {
            const double mid = 0.5 * (lo + hi);
            (f(mid) ? hi : lo) = mid;
        }
        return 0.5 * (lo + hi);
    };
    // Lower end: P(Bin(n,p) >= k) = α/2; upper end: P(Bin(n,p) <= k) = α/2.
    const double lower =
        k == 0 ? 0.0 : bisect([&](double p) { return 1.0 - binomial_cdf(k - 1, n, p) >= alpha / 2; });
    const double upper = k == n ? 1.0 : bisect([&](double p) { return binomial_cdf(k, n, p) <= alpha / 2; });
    return {lower, upper};
}

MeanSe regression_slope_origin(std::span<const double> x, std::span<const double> y) {
    check_same_dim(x.size(), y.size(), "regression_slope_origin");
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    if (sxx <= 0.0) throw NumericError("regression_slope_origin: degenerate regressor");
    MeanSe r;
    r.count = x.size();
    r.mean = sxy / sxx;
    double rss = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) rss += (y[i] - r.mean * x[i]) * (y[i] - r.mean * x[i]);
    if (x.size() > 1) r.se = std::sqrt(rss / (x.size() - 1) / sxx);
    return r;
}

}  // namespace isoloc
