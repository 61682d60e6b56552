#pragma once

#include <cstdint>
#include <string_view>

#include "skacz/matrix.hpp"
#include "skacz/rng.hpp"

namespace skacz {

enum class InstanceKind { Gaussian, Tomography };

std::string_view instance_kind_name(InstanceKind k);
InstanceKind parse_instance_kind(std::string_view name);

struct InstanceSpec {
    InstanceKind kind = InstanceKind::Gaussian;
    std::size_t m = 0; // rows (rays for tomography)
    std::size_t n = 0; // columns (grid_side^2 for tomography)
    std::size_t s = 1; // nonzeros of the planted solution
    double noise_rel = 0.0;
    std::uint64_t seed = 0;

    void validate() const;
};

struct Instance {
    RowMatrix a;
    Vector x_hat;   // planted sparse solution
    Vector b;       // A x_hat
    Vector b_delta; // b + e with ||e|| = noise_rel ||b||
};

// Standard-normal matrix, s-sparse standard-normal solution.
Instance gen_gaussian_instance(const InstanceSpec& spec);

// Parallel-beam style rays over a grid_side x grid_side lattice of unit
// pixels covering [0, grid_side]^2. Rows are emitted sorted by (angle, offset),
// the order a scanner would acquire them in. Noiseless: b_delta = b.
Instance gen_tomography_instance(std::size_t grid_side, std::size_t n_rays, std::size_t s, std::uint64_t seed);

// Dispatches on spec.kind; tomography uses grid_side = sqrt(spec.n), n_rays = spec.m
// and applies noise_rel like the Gaussian generator.
Instance make_instance(const InstanceSpec& spec);

// Intersection lengths of the line {c + offset * nu + s d} (d = (cos angle, sin angle),
// nu = (-sin angle, cos angle), c the domain center) with every pixel, pixel
// (ix, iy) at index iy * grid_side + ix. All zero when the line misses the domain.
Vector ray_row(std::size_t grid_side, double angle, double offset);

// Length of the same line inside the square domain.
double ray_chord_length(std::size_t grid_side, double angle, double offset);

// b_delta = b + e, e Gaussian rescaled to ||e|| = noise_rel ||b||.
Vector add_relative_noise(std::span<const double> b, double noise_rel, Rng& rng);

} // namespace skacz
