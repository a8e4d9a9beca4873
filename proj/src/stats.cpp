#include "spde/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "spde/rng.hpp"

namespace spde::stats {

double mean(const std::vector<double>& x) {
    if (x.empty()) throw std::invalid_argument("mean: empty sample");
    double acc = 0.0;
    for (double v : x) acc += v;
    return acc / static_cast<double>(x.size());
}

double variance(const std::vector<double>& x) {
    if (x.size() < 2) throw std::invalid_argument("variance: need at least 2 samples");
    const double m = mean(x);
    double acc = 0.0;
    for (double v : x) acc += (v - m) * (v - m);
    return acc / static_cast<double>(x.size() - 1);
}

double covariance(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) {
        throw std::invalid_argument("covariance: size mismatch or too few samples");
    }
    const double mx = mean(x), my = mean(y);
    double acc = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) acc += (x[i] - mx) * (y[i] - my);
    return acc / static_cast<double>(x.size() - 1);
}

double correlation(const std::vector<double>& x, const std::vector<double>& y) {
    return covariance(x, y) / std::sqrt(variance(x) * variance(y));
}

std::pair<double, double> linear_fit(const std::vector<double>& x,
                                     const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) {
        throw std::invalid_argument("linear_fit: size mismatch or too few points");
    }
    const double mx = mean(x), my = mean(y);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    const double slope = sxy / sxx;
    return {my - slope * mx, slope};
}

double wasserstein1(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("wasserstein1: empty sample");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    // Integrate |F_a - F_b| over the merged support by sweeping both samples.
    const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
    std::size_t ia = 0, ib = 0;
    double dist = 0.0;
    double prev = std::min(a[0], b[0]);
    while (ia < a.size() || ib < b.size()) {
        const double xa = ia < a.size() ? a[ia] : std::numeric_limits<double>::infinity();
        const double xb = ib < b.size() ? b[ib] : std::numeric_limits<double>::infinity();
        const double x = std::min(xa, xb);
        const double fa = static_cast<double>(ia) / na;
        const double fb = static_cast<double>(ib) / nb;
        dist += std::abs(fa - fb) * (x - prev);
        prev = x;
        if (xa <= xb) ++ia; else ++ib;
    }
    return dist;
}

double tv_distance(const std::vector<double>& p, const std::vector<double>& q) {
    if (p.size() != q.size()) throw std::invalid_argument("tv_distance: bin count mismatch");
    double acc = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) acc += std::abs(p[i] - q[i]);
    return 0.5 * acc;
}

double wilson_lower(std::int64_t successes, std::int64_t trials, double z) {
    if (trials <= 0) throw std::invalid_argument("wilson_lower: no trials");
    const double n = static_cast<double>(trials);
    const double phat = static_cast<double>(successes) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double centre = phat + z2 / (2.0 * n);
    const double rad = z * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n));
    return std::max(0.0, (centre - rad) / denom);
}

double jarque_bera(const std::vector<double>& x) {
    const double n = static_cast<double>(x.size());
    if (x.size() < 8) throw std::invalid_argument("jarque_bera: sample too small");
    const double m = mean(x);
    double m2 = 0.0, m3 = 0.0, m4 = 0.0;
    for (double v : x) {
        const double d = v - m;
        m2 += d * d;
        m3 += d * d * d;
        m4 += d * d * d * d;
    }
    m2 /= n;
    m3 /= n;
    m4 /= n;
    const double skew = m3 / std::pow(m2, 1.5);
    const double kurt = m4 / (m2 * m2) - 3.0;
    return n / 6.0 * (skew * skew + 0.25 * kurt * kurt);
}

double integrated_autocorr_time(const std::vector<double>& x) {
    const std::size_t n = x.size();
    if (n < 16) return 1.0;
    const double m = mean(x);
    double c0 = 0.0;
    for (double v : x) c0 += (v - m) * (v - m);
    c0 /= static_cast<double>(n);
    if (c0 <= 0.0) return 1.0;
    double tau = 1.0;
    const std::size_t max_lag = n / 4;
    for (std::size_t k = 1; k < max_lag; ++k) {
        double ck = 0.0;
        for (std::size_t i = 0; i + k < n; ++i) ck += (x[i] - m) * (x[i + k] - m);
        ck /= static_cast<double>(n - k);
        tau += 2.0 * ck / c0;
        // Sokal window: stop once the window exceeds c * tau.
        if (static_cast<double>(k) >= 5.0 * tau) break;
    }
    return std::max(tau, 1.0);
}

std::vector<double> block_bootstrap_resample(const std::vector<double>& x,
                                             int block_len,
                                             std::uint64_t seed,
                                             std::uint32_t replicate) {
    if (x.empty()) throw std::invalid_argument("block_bootstrap_resample: empty series");
    block_len = std::max(1, std::min<int>(block_len, static_cast<int>(x.size())));
    const std::size_t n = x.size();
    std::vector<double> out;
    out.reserve(n);
    std::uint64_t draw = 0;
    while (out.size() < n) {
        // Uniform block start from a counter-based draw; erf maps the Gaussian
        // back to a uniform so one primitive serves both needs.
        const double g = rng::gaussian(seed, replicate, draw++, 0x600Du);
        const double u = 0.5 * (1.0 + std::erf(g / std::numbers::sqrt2));
        std::size_t start = static_cast<std::size_t>(u * static_cast<double>(n - static_cast<std::size_t>(block_len) + 1));
        start = std::min(start, n - static_cast<std::size_t>(block_len));
        for (int j = 0; j < block_len && out.size() < n; ++j) {
            out.push_back(x[start + static_cast<std::size_t>(j)]);
        }
    }
    return out;
}

double percentile(std::vector<double> x, double p) {
    if (x.empty()) throw std::invalid_argument("percentile: empty sample");
    std::sort(x.begin(), x.end());
    const double rank = p / 100.0 * static_cast<double>(x.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(rank);
    const std::size_t hi = std::min(lo + 1, x.size() - 1);
    const double w = rank - static_cast<double>(lo);
    return (1.0 - w) * x[lo] + w * x[hi];
}

} // namespace spde::stats
