#include <algorithm>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "isoloc/numkit/eig.hpp"
#include "isoloc/numkit/lp.hpp"
#include "isoloc/numkit/parallel.hpp"
#include "isoloc/numkit/rng.hpp"
#include "isoloc/numkit/special.hpp"
#include "isoloc/numkit/stats.hpp"

using namespace isoloc;

namespace {

SymMatrix random_sym(std::size_t n, RngStream& rng, double scale = 1.0) {
    SymMatrix a(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) a.set(i, j, scale * rng.normal());
    return a;
}

double max_abs_diff(const Matrix& a, const Matrix& b) { return max_abs(a - b); }

// Simpson rule on [a, b] with 2k panels.
template <class F>
double simpson(F&& f, double a, double b, int k = 20000) {
    const double h = (b - a) / (2 * k);
    double s = f(a) + f(b);
    for (int i = 1; i < 2 * k; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
    return s * h / 3.0;
}

// Oracle for max c·x over {A x <= b}: every vertex is the solution of n tight
// rows; take the best feasible one.
double vertex_enumeration_max(const Vector& c, const Matrix& a, const Vector& b, bool& found) {
    const std::size_t m = a.rows(), n = a.cols();
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    double best = -std::numeric_limits<double>::infinity();
    found = false;
    while (true) {
        Matrix sub(n, n);
        Vector rhs(n);
        for (std::size_t r = 0; r < n; ++r) {
            for (std::size_t j = 0; j < n; ++j) sub(r, j) = a(idx[r], j);
            rhs[r] = b[idx[r]];
        }
        try {
            const Vector x = solve(sub, rhs);
            bool feasible = true;
            for (std::size_t i = 0; i < m && feasible; ++i) feasible = dot(a.row(i), x) <= b[i] + 1e-9;
            if (feasible) {
                found = true;
                best = std::max(best, dot(c, x));
            }
        } catch (const NumericError&) {
        }
        // Next n-subset in lexicographic order.
        std::size_t k = n;
        while (k > 0 && idx[k - 1] == m - n + k - 1) --k;
        if (k == 0) break;
        ++idx[k - 1];
        for (std::size_t j = k; j < n; ++j) idx[j] = idx[j - 1] + 1;
    }
    return best;
}

}  // namespace

TEST_CASE("sym_eig on identity and diagonal") {
    auto d = sym_eig(SymMatrix::identity(3));
    for (double v : d.values) CHECK(v == doctest::Approx(1.0).epsilon(1e-14));
    const Vector diag{1.0, 3.0, -2.0};
    d = sym_eig(SymMatrix::diagonal(diag));
    CHECK(d.values[0] == doctest::Approx(3.0));
    CHECK(d.values[1] == doctest::Approx(1.0));
    CHECK(d.values[2] == doctest::Approx(-2.0));
}

TEST_CASE("sym_eig recovers a constructed spectrum") {
    RngStream rng(11);
    for (std::size_t n : {2u, 5u, 12u}) {
        const Matrix q = haar_orthogonal(n, rng);
        Vector lam(n);
        for (std::size_t i = 0; i < n; ++i) lam[i] = 10.0 - 1.7 * i;
        const Matrix a = q * Matrix::diagonal(lam) * q.transpose();
        const auto d = sym_eig(SymMatrix::symmetrize(a));
        for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(d.values[i] - lam[i]) < 1e-8);
    }
}

TEST_CASE("sym_eig reconstruction and orthogonality on random matrices") {
    RngStream rng(12);
    double worst_orth = 0.0, worst_rec = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t n = 1 + rng.below(32);
        const SymMatrix a = random_sym(n, rng, 1.0 + 10.0 * rng.uniform());
        const auto d = sym_eig(a);
        CHECK(std::is_sorted(d.values.rbegin(), d.values.rend()));
        const Matrix qtq = d.vectors.transpose() * d.vectors;
        worst_orth = std::max(worst_orth, max_abs_diff(qtq, Matrix::identity(n)));
        const Matrix rec = d.vectors * Matrix::diagonal(d.values) * d.vectors.transpose();
        worst_rec = std::max(worst_rec, max_abs_diff(rec, a.matrix()) / (1.0 + max_abs(a.matrix())));
    }
    CHECK(worst_orth <= 1e-10);
    CHECK(worst_rec <= 1e-8);
}

TEST_CASE("sym_eig rejects non-finite input") {
    SymMatrix a(2);
    a.set(0, 1, std::nan(""));
    CHECK_THROWS_AS(sym_eig(a), NumericError);
}

TEST_CASE("matrix_function examples") {
    const SymMatrix e = matrix_exp(SymMatrix(2));
    CHECK(max_abs_diff(e.matrix(), Matrix::identity(2)) < 1e-14);

    const SymMatrix clipped =
        matrix_function(SymMatrix::diagonal(Vector{0.1, 1.0, 5.0}), [](double u) { return clip_eigenvalue(u); });
    CHECK(clipped(0, 0) == doctest::Approx(0.5));
    CHECK(clipped(1, 1) == doctest::Approx(1.0));
    CHECK(clipped(2, 2) == doctest::Approx(2.0));

    const SymMatrix r = matrix_sqrt_psd(SymMatrix::diagonal(Vector{4.0, 9.0}));
    CHECK(r(0, 0) == doctest::Approx(2.0));
    CHECK(r(1, 1) == doctest::Approx(3.0));

    CHECK_THROWS_AS(matrix_function(SymMatrix::diagonal(Vector{-1.0, 1.0}), [](double u) { return std::sqrt(u); }),
                    NumericError);
}

TEST_CASE("matrix_function composes on commuting maps") {
    RngStream rng(13);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 2 + rng.below(6);
        const Matrix g = gaussian_matrix(n, rng);
        SymMatrix pd = SymMatrix::symmetrize(g * g.transpose());
        pd += SymMatrix::identity(n) * 0.5;
        const SymMatrix lg = matrix_function(pd, [](double u) { return std::log(u); });
        const SymMatrix back = matrix_exp(lg);
        CHECK(max_abs_diff(back.matrix(), pd.matrix()) <= 1e-8 * (1.0 + max_abs(pd.matrix())));
        // f(A) commutes with A.
        const Matrix ab = pd.matrix() * lg.matrix();
        const Matrix ba = lg.matrix() * pd.matrix();
        CHECK(max_abs_diff(ab, ba) <= 1e-8 * (1.0 + max_abs(ab)));
    }
}

TEST_CASE("eigenvalue proxies") {
    CHECK(eig_proxy_max(SymMatrix(3), 1.0) == doctest::Approx(std::log(3.0)).epsilon(1e-14));
    const double f = eig_proxy_max(SymMatrix::diagonal(Vector{1.0, 0.0}), 100.0);
    CHECK(f >= 1.0);
    CHECK(f <= 1.0 + std::log(2.0) / 100.0);
    for (double beta : {0.3, 1.0, 17.0}) {
        CHECK(eig_proxy_max(SymMatrix::diagonal(Vector{2.0, 2.0}), beta) ==
              doctest::Approx(2.0 + std::log(2.0) / beta).epsilon(1e-14));
    }
    // Shifted form survives large β·λ.
    CHECK(std::isfinite(eig_proxy_max(SymMatrix::diagonal(Vector{800.0, -800.0}), 8.0 * std::log(2.0))));
}

TEST_CASE("proxy sandwich on random matrices") {
    RngStream rng(14);
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t n = 2 + rng.below(15);
        const SymMatrix a = random_sym(n, rng, 2.0);
        const auto d = sym_eig(a);
        const double beta = 0.1 + 20.0 * rng.uniform();
        const double fb = eig_proxy_max(a, beta);
        const double gb = eig_proxy_min(a, beta);
        const double slack = 1e-10 * (1.0 + std::abs(d.lambda_max()) + std::abs(d.lambda_min()));
        CHECK(d.lambda_max() <= fb + slack);
        CHECK(fb <= d.lambda_max() + std::log(double(n)) / beta + slack);
        CHECK(gb <= d.lambda_min() + slack);
        CHECK(gb >= d.lambda_min() - std::log(double(n)) / beta - slack);
        CHECK(gb == doctest::Approx(-eig_proxy_max(a * -1.0, beta)).epsilon(1e-12));
    }
}

TEST_CASE("phi gradient and hessian at zero") {
    const SymMatrix g = phi_gradient(SymMatrix(3));
    CHECK(max_abs_diff(g.matrix(), Matrix::identity(3)) < 1e-14);
    RngStream rng(15);
    const SymMatrix h = random_sym(3, rng);
    CHECK(phi_hessian_qform(SymMatrix(3), h) == doctest::Approx(frobenius_dot(h, h)).epsilon(1e-12));
}

TEST_CASE("phi hessian closed form for diag(1,-1)") {
    SymMatrix h(2);
    h.set(0, 1, 1.0);
    // Off-diagonal pair contributes 2 H₁₂² (e^a − e^b)/(a − b) with a=1, b=−1.
    const double oracle = 2.0 * (std::exp(1.0) - std::exp(-1.0)) / 2.0;
    CHECK(phi_hessian_qform(SymMatrix::diagonal(Vector{1.0, -1.0}), h) == doctest::Approx(oracle).epsilon(1e-12));
}

TEST_CASE("phi gradient matches finite differences") {
    RngStream rng(16);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 2 + rng.below(7);
        const SymMatrix a = random_sym(n, rng);
        const SymMatrix g = phi_gradient(a);
        const SymMatrix dir = random_sym(n, rng);
        const double eps = 1e-5;
        const double fd = (trace(matrix_exp(a + dir * eps)) - trace(matrix_exp(a - dir * eps))) / (2 * eps);
        const double exact = frobenius_dot(g, dir);
        CHECK(std::abs(fd - exact) <= 1e-6 * std::max(1.0, std::abs(exact)));
    }
}

TEST_CASE("phi hessian bounded by tr(e^A H^2)") {
    RngStream rng(17);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 1 + rng.below(8);
        const SymMatrix a = random_sym(n, rng);
        const SymMatrix h = random_sym(n, rng);
        const SymMatrix h2 = SymMatrix::symmetrize(h.matrix() * h.matrix());
        const double bound = frobenius_dot(matrix_exp(a), h2);
        CHECK(phi_hessian_qform(a, h) <= bound + 1e-8 * std::max(1.0, bound));
    }
}

TEST_CASE("gauss legendre rule integrates polynomials exactly") {
    const auto rule = gauss_legendre_unit(32);
    double s = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) s += rule.weights[i] * std::pow(rule.nodes[i], 40);
    CHECK(s == doctest::Approx(1.0 / 41.0).epsilon(1e-13));
}

TEST_CASE("lp_solve trivial instances") {
    {
        const Matrix a{{1.0}, {-1.0}};
        const Vector b{1.0, 1.0}, c{1.0};
        const auto r = lp_solve(c, a, b);
        CHECK(r.value == doctest::Approx(1.0));
        CHECK(r.x[0] == doctest::Approx(1.0));
    }
    {
        const Matrix a{{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
        const Vector b{1, 0, 1, 0}, c{1, 1};
        CHECK(lp_solve(c, a, b).value == doctest::Approx(2.0));
    }
}

TEST_CASE("lp_solve verdicts") {
    const Matrix a{{1.0}, {-1.0}};
    CHECK_THROWS_AS(lp_solve(Vector{1.0}, a, Vector{-1.0, -1.0}), InfeasibleError);
    const Matrix half{{-1.0}};
    CHECK_THROWS_AS(lp_solve(Vector{1.0}, half, Vector{1.0}), UnboundedError);
    CHECK(lp_solve_status(Vector{1.0}, half, Vector{1.0}).status == LpStatus::unbounded);
    // Feasible only through negative right-hand sides: 2 <= x <= 3.
    const auto r = lp_solve(Vector{-1.0}, a, Vector{3.0, -2.0});
    CHECK(r.value == doctest::Approx(-2.0));
}

TEST_CASE("lp_solve agrees with vertex enumeration") {
    RngStream rng(18);
    int compared = 0;
    for (int trial = 0; trial < 400; ++trial) {
        const std::size_t n = 1 + rng.below(5);
        const std::size_t m = n + 1 + rng.below(10 - n);
        Matrix a(m, n);
        Vector b(m), c(n);
        for (double& v : a.data()) v = rng.normal();
        for (double& v : b) v = rng.normal() + 0.5;
        for (double& v : c) v = rng.normal();
        const auto r = lp_solve_status(c, a, b);
        bool found = false;
        const double oracle = vertex_enumeration_max(c, a, b, found);
        if (r.status == LpStatus::infeasible) {
            CHECK_FALSE(found);
            continue;
        }
        if (r.status == LpStatus::unbounded) continue;
        REQUIRE(found);
        CHECK(std::abs(r.value - oracle) <= 1e-8 * (1.0 + std::abs(oracle)));
        for (std::size_t i = 0; i < m; ++i) CHECK(dot(a.row(i), r.x) <= b[i] + 1e-9);
        ++compared;
    }
    CHECK(compared > 100);
    // A fixed 6-constraint instance in three variables.
    const Matrix a{{1, 2, 0}, {0, 1, 1}, {1, 0, 1}, {-1, 0, 0}, {0, -1, 0}, {0, 0, -1}};
    const Vector b{4, 3, 5, 0, 0, 0}, c{1, 1, 1};
    bool found = false;
    CHECK(lp_solve(c, a, b).value == doctest::Approx(vertex_enumeration_max(c, a, b, found)).epsilon(1e-12));
}

TEST_CASE("rng streams are reproducible and distinct") {
    RngStream a(42, 3), b(42, 3), c(42, 4);
    bool differs = false;
    for (int i = 0; i < 100; ++i) {
        const auto x = a.next_u64();
        CHECK(x == b.next_u64());
        differs |= x != c.next_u64();
    }
    CHECK(differs);
    RngStream p(9);
    auto s1 = p.spawn(1), s1b = p.spawn(1), s2 = p.spawn(2);
    CHECK(s1.normal() == s1b.normal());
    CHECK(s1.next_u64() != s2.next_u64());
}

TEST_CASE("gaussian, sphere and brownian draws") {
    RngStream rng(19);
    const int n_draws = 1000000;
    double m0 = 0, m1 = 0, c00 = 0, c11 = 0, c01 = 0;
    for (int i = 0; i < n_draws; ++i) {
        const Vector g = gaussian_vector(2, rng);
        m0 += g[0];
        m1 += g[1];
        c00 += g[0] * g[0];
        c11 += g[1] * g[1];
        c01 += g[0] * g[1];
    }
    CHECK(std::abs(m0 / n_draws) < 0.01);
    CHECK(std::abs(m1 / n_draws) < 0.01);
    CHECK(std::abs(c00 / n_draws - 1) < 0.01);
    CHECK(std::abs(c11 / n_draws - 1) < 0.01);
    CHECK(std::abs(c01 / n_draws) < 0.01);

    for (int i = 0; i < 100; ++i) CHECK(std::abs(norm(uniform_sphere(5, rng)) - 1.0) < 1e-12);

    std::vector<double> summed, single;
    for (int i = 0; i < 5000; ++i) {
        double s = 0.0;
        for (int k = 0; k < 4; ++k) s += brownian_increment(1, 0.05, rng)[0];
        summed.push_back(s);
        single.push_back(brownian_increment(1, 0.2, rng)[0]);
    }
    CHECK(ks_two_sample(summed, single).p_value > 0.01);
}

TEST_CASE("haar orthogonal matrices") {
    RngStream rng(20);
    for (std::size_t n : {1u, 2u, 7u, 16u}) {
        const Matrix u = haar_orthogonal(n, rng);
        CHECK(max_abs_diff(u.transpose() * u, Matrix::identity(n)) <= 1e-12);
    }
    int plus = 0;
    for (int i = 0; i < 10000; ++i) {
        const double u = haar_orthogonal(1, rng)(0, 0);
        CHECK(std::abs(std::abs(u) - 1.0) < 1e-15);
        plus += u > 0;
    }
    CHECK(std::abs(plus / 10000.0 - 0.5) <= 0.05);

    const std::size_t n = 4;
    const int draws = 100000;
    std::vector<double> first, rotated;
    const Matrix v = haar_orthogonal(n, rng);
    double mean = 0, var = 0, fourth = 0;
    for (int i = 0; i < draws; ++i) {
        const Matrix u = haar_orthogonal(n, rng);
        const double x = u(0, 0);
        mean += x;
        var += x * x;
        fourth += x * x * x * x;
        if (i < 5000) {
            first.push_back(x);
            rotated.push_back((v * u)(0, 0));
        }
    }
    mean /= draws;
    var /= draws;
    fourth /= draws;
    const double se_mean = std::sqrt(var / draws);
    const double se_var = std::sqrt((fourth - var * var) / draws);
    CHECK(std::abs(mean) <= 3 * se_mean);
    CHECK(std::abs(var - 1.0 / n) <= 3 * se_var);
    CHECK(ks_two_sample(first, rotated).p_value > 0.01);
}

TEST_CASE("normal distribution function") {
    CHECK(normal_cdf(0.0) == 0.5);
    CHECK(1.0 - normal_cdf(1.0) > 0.1);
    const double oracle =
        0.5 + simpson([](double x) { return std::exp(-0.5 * x * x) / std::sqrt(2 * std::numbers::pi); }, 0.0, 2.0);
    CHECK(std::abs(normal_cdf(2.0) - oracle) <= 1e-12);
    CHECK(std::abs(normal_cdf(2.0) - 0.9772498680518208) <= 1e-12);
    for (double t = 0.01; t < 30.0; t += 0.01) {
        const double sf = normal_sf(t);
        CHECK(std::exp(-0.5 * t * t) / (std::sqrt(2 * std::numbers::pi) * (t + 1)) <= sf);
        CHECK(sf <= normal_pdf(t) / t);
    }
    for (double p : {1e-300, 1e-12, 0.01, 0.3, 0.5, 0.77, 0.999, 1 - 1e-12}) {
        const double x = normal_quantile(p);
        const double back = p < 0.5 ? normal_cdf(x) : 1.0 - normal_sf(x);
        CHECK(back == doctest::Approx(p).epsilon(1e-10));
    }
}

TEST_CASE("alpha_n") {
    CHECK(alpha_n(1) == doctest::Approx(std::sqrt(2.0 / std::numbers::pi)).epsilon(1e-14));
    const double oracle =
        2.0 * simpson([](double x) { return x * std::exp(-0.5 * x * x) / std::sqrt(2 * std::numbers::pi); }, 0.0, 40.0);
    CHECK(alpha_n(1) == doctest::Approx(oracle).epsilon(1e-10));
    double prev = 0.0;
    for (std::size_t n = 1; n <= 64; ++n) {
        const double a = alpha_n(n);
        const double ratio = a / std::sqrt(double(n));
        CHECK(a <= std::sqrt(double(n)));
        CHECK(a >= std::sqrt(n / 2.0));
        CHECK(ratio >= 0.79);
        CHECK(ratio <= 1.0);
        CHECK(ratio > prev);
        prev = ratio;
    }
    // Direct Γ-ratio recurrence α_{n+2} = α_n (n+1)/α_{n+1}·... checked through α_n α_{n+1} = n.
    for (std::size_t n = 1; n < 64; ++n) CHECK(alpha_n(n) * alpha_n(n + 1) == doctest::Approx(double(n)).epsilon(1e-12));
}

TEST_CASE("truncated samplers") {
    RngStream rng(21);
    std::vector<double> xs;
    for (int i = 0; i < 20000; ++i) xs.push_back(sample_truncated_normal(0.0, 0.5, -1.0, 1.0, rng));
    const double z = normal_cdf(2.0) - normal_cdf(-2.0);
    const auto ks = ks_one_sample(xs, [&](double x) { return (normal_cdf(2.0 * x) - normal_cdf(-2.0)) / z; });
    CHECK(ks.p_value > 0.01);
    for (int i = 0; i < 1000; ++i) {
        const double v = sample_truncated_normal(0.0, 1.0, 40.0, 41.0, rng);
        CHECK(v >= 40.0);
        CHECK(v <= 41.0);
    }
    std::vector<double> ys;
    for (int i = 0; i < 20000; ++i) ys.push_back(sample_truncated_exponential(-2.0, 0.0, 3.0, rng));
    const double norm_c = 1.0 - std::exp(-6.0);
    CHECK(ks_one_sample(ys, [&](double x) { return (1.0 - std::exp(-2.0 * x)) / norm_c; }).p_value > 0.01);
}

TEST_CASE("special functions against known values") {
    CHECK(incomplete_beta(2.0, 3.0, 0.4) == doctest::Approx(0.5248).epsilon(1e-12));
    CHECK(chi_square_sf(3.841458820694124, 1.0) == doctest::Approx(0.05).epsilon(1e-10));
    CHECK(chi_square_sf(18.307038053275146, 10.0) == doctest::Approx(0.05).epsilon(1e-10));
    // P(Bin(10, 0.3) <= 3) by direct summation.
    double direct = 0.0;
    for (int k = 0; k <= 3; ++k)
        direct += std::exp(log_binomial_coefficient(10, k)) * std::pow(0.3, k) * std::pow(0.7, 10 - k);
    CHECK(binomial_cdf(3, 10, 0.3) == doctest::Approx(direct).epsilon(1e-12));
}

TEST_CASE("quantiles and intervals") {
    std::vector<double> xs;
    for (int i = 1; i <= 100; ++i) xs.push_back(i);
    CHECK(empirical_quantile(xs, 0.9) == 90.0);
    CHECK(empirical_quantile(xs, 0.905) == 91.0);
    const auto ci = quantile_with_ci(xs, 0.5);
    CHECK(ci.estimate == 50.0);
    CHECK(ci.lower < 50.0);
    CHECK(ci.upper > 50.0);
    // Exact coverage of [X_(l), X_(u)] is at least the nominal level.
    const double coverage = binomial_cdf(std::size_t(ci.upper) - 1, 100, 0.5) - binomial_cdf(std::size_t(ci.lower) - 1, 100, 0.5);
    CHECK(coverage >= 0.95);
    const auto [lo, hi] = clopper_pearson(5, 50);
    CHECK(lo == doctest::Approx(0.033275).epsilon(1e-4));
    CHECK(hi == doctest::Approx(0.218135).epsilon(1e-4));
}

TEST_CASE("moment battery on gaussian data") {
    RngStream rng(22);
    std::vector<double> xs(200000);
    for (double& x : xs) x = rng.normal();
    const auto b = moment_battery(xs);
    CHECK(std::abs(b.mean) <= 3 * b.mean_se);
    CHECK(std::abs(b.var - 1.0) <= 3 * b.var_se);
    CHECK(std::abs(b.kurtosis - 3.0) <= 5 * b.kurtosis_se);
    CHECK(b.kurtosis_se == doctest::Approx(std::sqrt(24.0 / xs.size())).epsilon(0.1));
}

TEST_CASE("chi-square uniformity and batch means") {
    RngStream rng(23);
    std::vector<std::size_t> counts(16, 0);
    for (int i = 0; i < 100000; ++i) ++counts[rng.below(16)];
    CHECK(chi_square_uniform_p(counts) > 0.001);
    std::vector<double> ar(64000);
    double x = 0.0;
    for (double& v : ar) v = x = 0.9 * x + rng.normal();
    const auto iid = mean_se(ar);
    const auto bm = batch_mean_se(ar);
    CHECK(bm.se > 2.0 * iid.se);
}

TEST_CASE("parallel_for visits every index once") {
    std::vector<int> hits(1000, 0);
    parallel_for(hits.size(), [&](std::size_t i) { hits[i] += 1; });
    CHECK(std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; }));
    CHECK_THROWS_AS(parallel_for(10, [](std::size_t i) {
                        if (i == 7) throw NumericError("boom");
                    }),
                    NumericError);
}

TEST_CASE("regression through the origin") {
    const Vector x{1, 2, 3, 4}, y{2, 4, 6, 8};
    const auto r = regression_slope_origin(x, y);
    CHECK(r.mean == doctest::Approx(2.0));
    CHECK(r.se == doctest::Approx(0.0));
}
