#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "spde/grid.hpp"

namespace spde {

/// Counter-based Gaussian generator (Philox4x32-10 under the hood).
///
/// Every draw is a pure function of (seed, stream_id, step_index, cell_index),
/// so a noise history can be replayed exactly without storing panels, and two
/// solutions driven by the same stream see bit-identical increments. Distinct
/// stream ids give statistically independent streams.
namespace rng {

/// One standard-normal variate for the given counter coordinates.
double gaussian(std::uint64_t seed, std::uint32_t stream_id,
                std::uint64_t step_index, std::uint32_t cell_index);

/// Raw Philox block, exposed for tests.
void philox4x32(const std::uint32_t ctr_in[4], const std::uint32_t key_in[2],
                std::uint32_t out[4]);

} // namespace rng

/// Identity plus replay cursor for one noise stream.
///
/// The cursor only exists for convenience; the stream is stateless underneath.
/// reset() rewinds to step 0 and reproduces the exact same panels.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint32_t stream_id)
        : seed_(seed), stream_id_(stream_id) {}

    std::uint64_t seed() const { return seed_; }
    std::uint32_t stream_id() const { return stream_id_; }
    std::uint64_t cursor() const { return cursor_; }

    void reset() { cursor_ = 0; }
    void seek(std::uint64_t step) { cursor_ = step; }
    std::uint64_t advance() { return cursor_++; }

private:
    std::uint64_t seed_;
    std::uint32_t stream_id_;
    std::uint64_t cursor_ = 0;
};

/// One panel of Brownian-sheet increments over a time step: dW[i] is the
/// increment over cell i x [t, t+dt], i.i.d. N(0, dt*dx) across cells.
struct NoiseIncrement {
    SpatialGrid grid;
    double dt = 0.0;
    std::vector<double> dW; // interior() entries
};

/// Sample the next increment panel from the stream (advances the cursor).
NoiseIncrement sample_noise(const SpatialGrid& grid, double dt, RngStream& stream);

/// Panel at an explicit step index, without touching any cursor.
NoiseIncrement noise_at_step(const SpatialGrid& grid, double dt,
                             std::uint64_t seed, std::uint32_t stream_id,
                             std::uint64_t step_index);

/// Fill a preallocated buffer (interior() entries) with the panel for one step.
/// This is the allocation-free path used by the time steppers.
void fill_noise(const SpatialGrid& grid, double dt,
                std::uint64_t seed, std::uint32_t stream_id,
                std::uint64_t step_index, std::vector<double>& out);

/// Discrete pairing of an increment panel with the sine mode e_n(x) = sqrt(2) sin(n pi x):
/// sum_i e_n(x_i) dW_i, the increment of the n-th cylindrical Brownian motion.
double project_mode(const NoiseIncrement& dW, int n);

} // namespace spde
