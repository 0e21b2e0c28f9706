#include "isoloc/numkit/special.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace isoloc {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr double kTinyMass = 1e-14;
constexpr int kMaxRejections = 100000;

// Standard-normal draw restricted to [a, b] with a >= 0 deep in the tail.
// Robert (1995) exponential proposal with the optimal rate, then reject > b.
double tail_rejection(double a, double b, RngStream& rng) {
    const double rate = 0.5 * (a + std::sqrt(a * a + 4.0));
    for (int i = 0; i < kMaxRejections; ++i) {
        const double z = a - std::log(rng.uniform_open()) / rate;
        if (z > b) continue;
        const double accept = std::exp(-0.5 * (z - rate) * (z - rate));
        if (rng.uniform() <= accept) return z;
    }
    throw NumericError("sample_truncated_normal: rejection sampler did not terminate");
}

// Standard normal restricted to [a, b].
double standard_truncated(double a, double b, RngStream& rng) {
    if (a >= 0) {
        const double qa = normal_sf(a);
        const double qb = normal_sf(b);
        const double mass = qa - qb;
        if (mass < kTinyMass) return tail_rejection(a, b, rng);
        const double p = qa - rng.uniform_open() * mass;
        return std::clamp(-normal_quantile(p), a, b);
    }
    if (b <= 0) return -standard_truncated(-b, -a, rng);
    const double pa = normal_cdf(a);
    const double pb = normal_cdf(b);
    const double p = pa + rng.uniform_open() * (pb - pa);
    return std::clamp(normal_quantile(p), a, b);
}

}  // namespace

double normal_cdf(double t) { return 0.5 * std::erfc(-t * kInvSqrt2); }

double normal_sf(double t) { return 0.5 * std::erfc(t * kInvSqrt2); }

double normal_pdf(double t) { return std::exp(-0.5 * t * t) / std::sqrt(2.0 * std::numbers::pi); }

double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) throw NumericError("normal_quantile: p must lie in (0,1)");
    static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                   -2.759285104469687e+02, 1.383577518672690e+02,
                                   -3.066479806614716e+01, 2.506628277459239e+00};
    static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                   -1.556989798598866e+02, 6.680131188771972e+01,
                                   -1.328068155288572e+01};
    static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                   -2.400758277161838e+00, -2.549732539343734e+00,
                                   4.374664141464968e+00,  2.938163982698783e+00};
    static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                   2.445134137142996e+00, 3.754408661907416e+00};
    constexpr double plow = 0.02425;
    double x;
    if (p < plow) {
        const double q = std::sqrt(-2.0 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (p <= 1.0 - plow) {
        const double q = p - 0.5;
        const double r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        const double q = std::sqrt(-2.0 * std::log1p(-p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    // Halley refinement against the erfc-based CDF; in the upper tail compare
    // survival probabilities so the residual keeps relative precision.
    const double e = (p < 0.5) ? normal_cdf(x) - p : (1.0 - p) - normal_sf(x);
    const double u = e * std::sqrt(2.0 * std::numbers::pi) * std::exp(0.5 * x * x);
    return x - u / (1.0 + 0.5 * x * u);
}

double alpha_n(std::size_t n) {
    if (n == 0) throw DimensionError("alpha_n: n must be >= 1");
    const double h = 0.5 * static_cast<double>(n);
    return std::sqrt(2.0) * std::exp(std::lgamma(h + 0.5) - std::lgamma(h));
}

double sample_truncated_normal(double mean, double sd, double lo, double hi, RngStream& rng) {
    if (!(hi > lo)) throw NumericError("sample_truncated_normal: empty interval");
    if (!(sd > 0)) throw NumericError("sample_truncated_normal: sd must be positive");
    const double a = (lo - mean) / sd;
    const double b = (hi - mean) / sd;
    return std::clamp(mean + sd * standard_truncated(a, b, rng), lo, hi);
}

double sample_truncated_exponential(double rate, double lo, double hi, RngStream& rng) {
    if (!(hi > lo)) throw NumericError("sample_truncated_exponential: empty interval");
    const double width = hi - lo;
    const double u = rng.uniform_open();
    if (std::abs(rate * width) < 1e-12) return lo + u * width;
    // Invert F(s) = (e^{rate(s-lo)} - 1) / (e^{rate·width} - 1), anchored at the
    // heavier end so the exponentials never overflow.
    if (rate > 0) {
        const double s = hi + std::log(u + (1.0 - u) * std::exp(-rate * width)) / rate;
        return std::clamp(s, lo, hi);
    }
    const double s = lo + std::log((1.0 - u) + u * std::exp(rate * width)) / rate;
    return std::clamp(s, lo, hi);
}

double log_binomial_coefficient(std::size_t n, std::size_t k) {
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

namespace {

// Lentz continued fraction for I_x(a, b), valid for x < (a+1)/(a+b+2).
double beta_continued_fraction(double a, double b, double x) {
    constexpr double tiny = 1e-300;
    const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::abs(d) < tiny) d = tiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= 10000; ++m) {
        const double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-15) return h;
    }
    throw NumericError("incomplete_beta: continued fraction did not converge");
}

}  // namespace

double incomplete_beta(double a, double b, double x) {
    if (!(a > 0 && b > 0)) throw NumericError("incomplete_beta: parameters must be positive");
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                             a * std::log(x) + b * std::log1p(-x);
    const double front = std::exp(log_front);
    if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_continued_fraction(a, b, x) / a;
    return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double incomplete_gamma_upper(double a, double x) {
    if (!(a > 0)) throw NumericError("incomplete_gamma_upper: a must be positive");
    if (x <= 0.0) return 1.0;
    const double log_front = -x + a * std::log(x) - std::lgamma(a);
    if (x < a + 1.0) {
        // Series for the lower function P(a, x).
        double ap = a, sum = 1.0 / a, del = sum;
        for (int n = 0; n < 10000; ++n) {
            ap += 1.0;
            del *= x / ap;
            sum += del;
            if (std::abs(del) < std::abs(sum) * 1e-16) break;
        }
        return 1.0 - sum * std::exp(log_front);
    }
    // Continued fraction for Q(a, x).
    constexpr double tiny = 1e-300;
    double b = x + 1.0 - a, c = 1.0 / tiny, d = 1.0 / b, h = d;
    for (int i = 1; i < 10000; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16) break;
    }
    return std::exp(log_front) * h;
}

double binomial_cdf(std::size_t k, std::size_t n, double p) {
    if (k >= n) return 1.0;
    if (p <= 0.0) return 1.0;
    if (p >= 1.0) return 0.0;
    // P(Bin(n,p) <= k) = I_{1-p}(n-k, k+1)
    return incomplete_beta(static_cast<double>(n - k), static_cast<double>(k) + 1.0, 1.0 - p);
}

}  // namespace isoloc
