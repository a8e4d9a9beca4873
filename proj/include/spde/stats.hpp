#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace spde::stats {

double mean(const std::vector<double>& x);
double variance(const std::vector<double>& x); // unbiased, n-1
double covariance(const std::vector<double>& x, const std::vector<double>& y);
double correlation(const std::vector<double>& x, const std::vector<double>& y);

/// Least-squares line y = a + b x; returns {intercept a, slope b}.
std::pair<double, double> linear_fit(const std::vector<double>& x,
                                     const std::vector<double>& y);

/// Exact 1-Wasserstein distance between two scalar empirical measures,
/// computed as the area between the empirical CDFs (quantile matching).
double wasserstein1(std::vector<double> a, std::vector<double> b);

/// Total-variation distance between two mass vectors on a common bin set.
double tv_distance(const std::vector<double>& p, const std::vector<double>& q);

/// Wilson score lower bound for a binomial proportion at confidence z
/// (z = 1.96 for ~95%).
double wilson_lower(std::int64_t successes, std::int64_t trials, double z);

/// Jarque-Bera normality statistic (asymptotically chi^2 with 2 dof).
double jarque_bera(const std::vector<double>& x);

/// Integrated autocorrelation time of a stationary series, in samples,
/// with a self-consistent window (Sokal's c = 5 rule).
double integrated_autocorr_time(const std::vector<double>& x);

/// Moving-block bootstrap resample of a time series. Deterministic in
/// (seed, replicate): blocks are chosen by a counter-based generator.
std::vector<double> block_bootstrap_resample(const std::vector<double>& x,
                                             int block_len,
                                             std::uint64_t seed,
                                             std::uint32_t replicate);

double percentile(std::vector<double> x, double p); // p in [0,100]

} // namespace spde::stats
