#include "skacz/instances.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <tuple>

namespace skacz {

std::string_view instance_kind_name(InstanceKind k)
{
    return k == InstanceKind::Gaussian ? "gaussian" : "tomography";
}

InstanceKind parse_instance_kind(std::string_view name)
{
    if (name == "gaussian")
        return InstanceKind::Gaussian;
    if (name == "tomography")
        return InstanceKind::Tomography;
    throw std::invalid_argument("unknown instance kind '" + std::string(name) + "'");
}

void InstanceSpec::validate() const
{
    if (m < 1 || n < 1)
        throw std::invalid_argument("instance: m and n must be >= 1");
    if (s < 1 || s > n)
        throw std::invalid_argument("instance: sparsity must satisfy 1 <= s <= n");
    if (!(noise_rel >= 0.0) || !std::isfinite(noise_rel))
        throw std::invalid_argument("instance: noise_rel must be >= 0");
}

namespace {

// s distinct positions out of n, by a partial Fisher-Yates shuffle.
std::vector<std::size_t> choose_support(std::size_t n, std::size_t s, Rng& rng)
{
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    for (std::size_t i = 0; i < s; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(rng.below(n - i));
        std::swap(idx[i], idx[j]);
    }
    idx.resize(s);
    return idx;
}

// Parameter interval [s_in, s_out] of p + s d inside [0, side]^2; empty if s_in >= s_out.
std::pair<double, double> clip_to_square(double px, double py, double dx, double dy, double side)
{
    double s_in = -std::numeric_limits<double>::infinity();
    double s_out = std::numeric_limits<double>::infinity();
    auto slab = [&](double p, double d) {
        if (std::abs(d) < 1e-15) {
            if (p < 0.0 || p > side) {
                s_in = 1.0;
                s_out = 0.0;
            }
            return;
        }
        double t0 = (0.0 - p) / d;
        double t1 = (side - p) / d;
        if (t0 > t1)
            std::swap(t0, t1);
        s_in = std::max(s_in, t0);
        s_out = std::min(s_out, t1);
    };
    slab(px, dx);
    slab(py, dy);
    return {s_in, s_out};
}

struct Ray {
    double angle;
    double offset;
};

} // namespace

Instance gen_gaussian_instance(const InstanceSpec& spec)
{
    spec.validate();
    Rng rng(spec.seed);

    std::vector<double> data(spec.m * spec.n);
    for (auto& v : data)
        v = rng.normal();
    Instance inst{RowMatrix(spec.m, spec.n, std::move(data)), {}, {}, {}};

    inst.x_hat.assign(spec.n, 0.0);
    for (std::size_t j : choose_support(spec.n, spec.s, rng)) {
        double v = rng.normal();
        while (v == 0.0)
            v = rng.normal();
        inst.x_hat[j] = v;
    }
    inst.b = matvec(inst.a, inst.x_hat);
    inst.b_delta = add_relative_noise(inst.b, spec.noise_rel, rng);
    return inst;
}

Vector add_relative_noise(std::span<const double> b, double noise_rel, Rng& rng)
{
    Vector out(b.begin(), b.end());
    if (noise_rel == 0.0)
        return out;
    Vector e(b.size());
    for (auto& v : e)
        v = rng.normal();
    const double scale = noise_rel * norm(b) / norm(e);
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] += scale * e[i];
    return out;
}

double ray_chord_length(std::size_t grid_side, double angle, double offset)
{
    const double side = static_cast<double>(grid_side);
    const double dx = std::cos(angle), dy = std::sin(angle);
    const double px = 0.5 * side - offset * dy;
    const double py = 0.5 * side + offset * dx;
    const auto [s_in, s_out] = clip_to_square(px, py, dx, dy, side);
    return s_out > s_in ? s_out - s_in : 0.0;
}

Vector ray_row(std::size_t grid_side, double angle, double offset)
{
    if (grid_side < 1)
        throw std::invalid_argument("ray_row: grid_side must be >= 1");
    const double side = static_cast<double>(grid_side);
    Vector row(grid_side * grid_side, 0.0);

    const double dx = std::cos(angle), dy = std::sin(angle);
    const double px = 0.5 * side - offset * dy;
    const double py = 0.5 * side + offset * dx;
    const auto [s_in, s_out] = clip_to_square(px, py, dx, dy, side);
    if (!(s_out > s_in))
        return row;

    // Parameters where the line crosses a grid line, walked in order.
    std::vector<double> cuts{s_in, s_out};
    for (std::size_t j = 0; j <= grid_side; ++j) {
        const double g = static_cast<double>(j);
        if (std::abs(dx) >= 1e-15) {
            const double t = (g - px) / dx;
            if (t > s_in && t < s_out)
                cuts.push_back(t);
        }
        if (std::abs(dy) >= 1e-15) {
            const double t = (g - py) / dy;
            if (t > s_in && t < s_out)
                cuts.push_back(t);
        }
    }
    std::sort(cuts.begin(), cuts.end());

    const auto last = static_cast<long>(grid_side) - 1;
    for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
        const double len = cuts[c + 1] - cuts[c];
        if (!(len > 0.0))
            continue;
        const double mid = 0.5 * (cuts[c] + cuts[c + 1]);
        const long ix = std::clamp(static_cast<long>(std::floor(px + mid * dx)), 0L, last);
        const long iy = std::clamp(static_cast<long>(std::floor(py + mid * dy)), 0L, last);
        row[static_cast<std::size_t>(iy) * grid_side + static_cast<std::size_t>(ix)] += len;
    }
    return row;
}

Instance gen_tomography_instance(std::size_t grid_side, std::size_t n_rays, std::size_t s, std::uint64_t seed)
{
    if (grid_side < 2 || n_rays < 1)
        throw std::invalid_argument("tomography: need grid_side >= 2 and n_rays >= 1");
    const std::size_t n = grid_side * grid_side;
    if (s < 1 || s > n)
        throw std::invalid_argument("tomography: sparsity must satisfy 1 <= s <= grid_side^2");

    Rng rng(seed);
    const double side = static_cast<double>(grid_side);
    const double half_diag = 0.5 * std::numbers::sqrt2 * side;

    std::vector<Ray> rays;
    rays.reserve(n_rays);
    while (rays.size() < n_rays) {
        const double angle = std::numbers::pi * rng.uniform();
        const double offset = half_diag * (2.0 * rng.uniform() - 1.0);
        // Misses and corner grazes are redrawn; every emitted row is nonzero.
        if (ray_chord_length(grid_side, angle, offset) > 1e-9 * side)
            rays.push_back({angle, offset});
    }
    std::sort(rays.begin(), rays.end(),
              [](const Ray& l, const Ray& r) { return std::tie(l.angle, l.offset) < std::tie(r.angle, r.offset); });

    std::vector<double> data;
    data.reserve(n_rays * n);
    for (const Ray& r : rays) {
        const Vector row = ray_row(grid_side, r.angle, r.offset);
        data.insert(data.end(), row.begin(), row.end());
    }
    Instance inst{RowMatrix(n_rays, n, std::move(data)), {}, {}, {}};

    inst.x_hat.assign(n, 0.0);
    for (std::size_t j : choose_support(n, s, rng))
        inst.x_hat[j] = 0.5 + rng.uniform();
    inst.b = matvec(inst.a, inst.x_hat);
    inst.b_delta = inst.b;
    return inst;
}

Instance make_instance(const InstanceSpec& spec)
{
    spec.validate();
    if (spec.kind == InstanceKind::Gaussian)
        return gen_gaussian_instance(spec);

    const auto side = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(spec.n))));
    if (side * side != spec.n)
        throw std::invalid_argument("tomography: n must be a perfect square (grid_side^2)");
    Instance inst = gen_tomography_instance(side, spec.m, spec.s, spec.seed);
    if (spec.noise_rel > 0.0) {
        // Separate stream so the noiseless instance is unchanged by the noise level.
        Rng noise_rng(spec.seed ^ 0x6e6f697365ULL);
        inst.b_delta = add_relative_noise(inst.b, spec.noise_rel, noise_rng);
    }
    return inst;
}

} // namespace skacz
