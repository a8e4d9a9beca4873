#pragma once

#include <stdexcept>

namespace spde {

/// Uniform partition of [0,1] into n_cells cells with homogeneous Dirichlet
/// boundaries. Unknowns live on the interior nodes x_i = i/n_cells,
/// i = 1..n_cells-1; the boundary values are identically zero and never stored.
struct SpatialGrid {
    int n_cells = 0;

    SpatialGrid() = default;
    explicit SpatialGrid(int cells) : n_cells(cells) {
        if (cells < 4) {
            throw std::invalid_argument("SpatialGrid: n_cells must be >= 4");
        }
    }

    // dx is always derived from n_cells so that dx * n_cells == 1 holds exactly
    // in the only sense that matters: both are views of the same integer.
    double dx() const { return 1.0 / static_cast<double>(n_cells); }
    double x(int i) const { return static_cast<double>(i) / static_cast<double>(n_cells); }
    int interior() const { return n_cells - 1; }

    bool operator==(const SpatialGrid& o) const { return n_cells == o.n_cells; }
    bool operator!=(const SpatialGrid& o) const { return n_cells != o.n_cells; }
};

} // namespace spde
