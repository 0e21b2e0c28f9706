#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <utility>

#include "isoloc/numkit/linalg.hpp"

namespace isoloc {

struct MeanSe {
    double mean = 0.0;
    double se = 0.0;
    std::size_t count = 0;
};

/// Sample mean and iid standard error sd/√N.
MeanSe mean_se(std::span<const double> xs);
/// Sample mean with a batch-means standard error (for correlated chains).
MeanSe batch_mean_se(std::span<const double> xs, std::size_t batches = 32);

double sample_variance(std::span<const double> xs);

struct MomentBattery {
    double mean = 0.0, mean_se = 0.0;
    double var = 0.0, var_se = 0.0;
    double kurtosis = 0.0, kurtosis_se = 0.0;
};
/// Mean, variance and kurtosis with their iid standard errors. Standard
/// errors of the variance and kurtosis use the plug-in higher moments.
MomentBattery moment_battery(std::span<const double> xs);

struct KsResult {
    double statistic = 0.0;
    double p_value = 0.0;
};
/// Two-sample Kolmogorov-Smirnov test with the Stephens small-sample correction.
KsResult ks_two_sample(std::vector<double> a, std::vector<double> b);
/// One-sample test against a continuous CDF.
KsResult ks_one_sample(std::vector<double> xs, const std::function<double(double)>& cdf);
/// Q_KS(λ) = 2 Σ (−1)^{k−1} exp(−2k²λ²)
double kolmogorov_sf(double lambda);

/// Pearson χ² test of equal-probability bins.
double chi_square_uniform_p(std::span<const std::size_t> counts);
double chi_square_sf(double x, double dof);

/// Empirical β-quantile: order statistic ⌈βN⌉ (1-based).
double empirical_quantile(std::vector<double> xs, double beta);

struct QuantileCi {
    double estimate = 0.0;
    double lower = 0.0;
    double upper = 0.0;
};
/// Distribution-free confidence interval for the β-quantile from order
/// statistics, using exact binomial tail probabilities (Clopper-Pearson).
QuantileCi quantile_with_ci(std::vector<double> xs, double beta, double level = 0.95);

/// Clopper-Pearson interval for a binomial proportion k/n.
std::pair<double, double> clopper_pearson(std::size_t k, std::size_t n, double level = 0.95);

/// Least-squares slope through the origin of y on x with its standard error.
MeanSe regression_slope_origin(std::span<const double> x, std::span<const double> y);

}  // namespace isoloc
