#include "spde/rng.hpp"

#include <cmath>
#include <numbers>

namespace spde {
namespace rng {

namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
    const std::uint64_t p = static_cast<std::uint64_t>(a) * static_cast<std::uint64_t>(b);
    hi = static_cast<std::uint32_t>(p >> 32);
    lo = static_cast<std::uint32_t>(p);
}

inline void philox_round(std::uint32_t ctr[4], const std::uint32_t key[2]) {
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kPhiloxM0, ctr[0], hi0, lo0);
    mulhilo(kPhiloxM1, ctr[2], hi1, lo1);
    const std::uint32_t c1 = ctr[1];
    const std::uint32_t c3 = ctr[3];
    ctr[0] = hi1 ^ c1 ^ key[0];
    ctr[1] = lo1;
    ctr[2] = hi0 ^ c3 ^ key[1];
    ctr[3] = lo0;
}

// Uniform in (0,1], 53-bit resolution; safe under log().
inline double uniform_open(std::uint32_t hi, std::uint32_t lo) {
    const std::uint64_t bits = (static_cast<std::uint64_t>(hi) << 32) | lo;
    return (static_cast<double>(bits >> 11) + 1.0) * 0x1.0p-53;
}

} // namespace

void philox4x32(const std::uint32_t ctr_in[4], const std::uint32_t key_in[2],
                std::uint32_t out[4]) {
    std::uint32_t ctr[4] = {ctr_in[0], ctr_in[1], ctr_in[2], ctr_in[3]};
    std::uint32_t key[2] = {key_in[0], key_in[1]};
    for (int r = 0; r < 10; ++r) {
        philox_round(ctr, key);
        key[0] += kWeyl0;
        key[1] += kWeyl1;
    }
    out[0] = ctr[0];
    out[1] = ctr[1];
    out[2] = ctr[2];
    out[3] = ctr[3];
}

double gaussian(std::uint64_t seed, std::uint32_t stream_id,
                std::uint64_t step_index, std::uint32_t cell_index) {
    const std::uint32_t ctr[4] = {
        static_cast<std::uint32_t>(step_index),
        static_cast<std::uint32_t>(step_index >> 32),
        cell_index,
        stream_id,
    };
    const std::uint32_t key[2] = {
        static_cast<std::uint32_t>(seed),
        static_cast<std::uint32_t>(seed >> 32),
    };
    std::uint32_t out[4];
    philox4x32(ctr, key, out);
    const double u1 = uniform_open(out[0], out[1]);
    const double u2 = uniform_open(out[2], out[3]);
    // Box-Muller, cosine branch only: one variate per counter keeps the
    // (step, cell) -> draw map trivial.
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

} // namespace rng

void fill_noise(const SpatialGrid& grid, double dt,
                std::uint64_t seed, std::uint32_t stream_id,
                std::uint64_t step_index, std::vector<double>& out) {
    if (!(dt > 0.0)) {
        throw std::invalid_argument("sample_noise: dt must be positive");
    }
    const int n = grid.interior();
    out.resize(static_cast<std::size_t>(n));
    const double sd = std::sqrt(dt * grid.dx());
    for (int i = 0; i < n; ++i) {
        out[static_cast<std::size_t>(i)] =
            sd * rng::gaussian(seed, stream_id, step_index, static_cast<std::uint32_t>(i));
    }
}

NoiseIncrement noise_at_step(const SpatialGrid& grid, double dt,
                             std::uint64_t seed, std::uint32_t stream_id,
                             std::uint64_t step_index) {
    NoiseIncrement inc;
    inc.grid = grid;
    inc.dt = dt;
    fill_noise(grid, dt, seed, stream_id, step_index, inc.dW);
    return inc;
}

NoiseIncrement sample_noise(const SpatialGrid& grid, double dt, RngStream& stream) {
    return noise_at_step(grid, dt, stream.seed(), stream.stream_id(), stream.advance());
}

double project_mode(const NoiseIncrement& dW, int n) {
    const int m = dW.grid.n_cells;
    if (n < 1 || n > m - 1) {
        throw std::out_of_range("project_mode: mode index out of range");
    }
    const double w = std::numbers::pi * static_cast<double>(n);
    double acc = 0.0;
    for (int i = 1; i < m; ++i) {
        acc += std::sqrt(2.0) * std::sin(w * dW.grid.x(i)) * dW.dW[static_cast<std::size_t>(i - 1)];
    }
    return acc;
}

} // namespace spde
