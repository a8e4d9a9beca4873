#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "spde/grid.hpp"

namespace spde {

/// Spatial profile on the interior nodes of a grid at a fixed time.
/// Boundary values are identically zero (Dirichlet) and implicit.
struct Field {
    SpatialGrid grid;
    double t = 0.0;
    std::vector<double> v;

    Field() = default;
    explicit Field(const SpatialGrid& g, double time = 0.0)
        : grid(g), t(time), v(static_cast<std::size_t>(g.interior()), 0.0) {}

    int size() const { return static_cast<int>(v.size()); }
    double& operator[](int i) { return v[static_cast<std::size_t>(i)]; }
    double operator[](int i) const { return v[static_cast<std::size_t>(i)]; }
};

/// A field tagged with its sample time inside a trajectory.
struct TimedField {
    double t = 0.0;
    Field u;
};

/// Discrete L2([0,1]) inner product: dx * sum_i a_i b_i.
double h_inner(const Field& a, const Field& b);
/// Squared discrete H-norm |u|_H^2 = dx * sum_i u_i^2.
double h_norm_sq(const Field& u);
double h_norm(const Field& u);
/// max_i |u_i|.
double sup_abs(const Field& u);
bool has_nonfinite(const Field& u);

Field operator+(const Field& a, const Field& b);
Field operator-(const Field& a, const Field& b);
Field operator*(double s, const Field& a);
double h_distance(const Field& a, const Field& b);

/// e_n(x) = sqrt(2) sin(n pi x), the Dirichlet Laplacian eigenfunctions.
double sine_mode(int n, double x);
/// Field with values e_n(x_i); an exact eigenvector of the discrete Laplacian.
Field sine_mode_field(const SpatialGrid& grid, int n, double amplitude = 1.0);
/// <u, e_n>_H via the discrete inner product (exact for n <= n_cells - 1).
double mode_coefficient(const Field& u, int n);
/// Synthesize sum_n c[n-1] e_n on the grid.
Field field_from_modes(const SpatialGrid& grid, const std::vector<double>& coeffs);

} // namespace spde
