#include "skacz/potentials.hpp"

#include <stdexcept>

namespace skacz {

Potential Potential::elastic_net(double lambda)
{
    if (!(lambda > 0.0) || !std::isfinite(lambda))
        throw std::invalid_argument("elastic_net: lambda must be positive and finite");
    return Potential(PotentialKind::ElasticNet, lambda, 0.0);
}

Potential Potential::smoothed_elastic_net(double lambda, double epsilon)
{
    if (!(lambda > 0.0) || !std::isfinite(lambda))
        throw std::invalid_argument("smoothed_elastic_net: lambda must be positive and finite");
    if (!(epsilon > 0.0) || !std::isfinite(epsilon))
        throw std::invalid_argument("smoothed_elastic_net: epsilon must be positive and finite");
    return Potential(PotentialKind::SmoothedElasticNet, lambda, epsilon);
}

double value(const Potential& f, std::span<const double> x)
{
    double s = 0.0;
    for (double v : x)
        s += f.value_coord(v);
    return s;
}

double conjugate_value(const Potential& f, std::span<const double> xstar)
{
    double s = 0.0;
    for (double v : xstar)
        s += f.conjugate_value_coord(v);
    return s;
}

Vector conjugate_gradient(const Potential& f, std::span<const double> xstar)
{
    Vector out(xstar.size());
    conjugate_gradient_into(f, xstar, out);
    return out;
}

void conjugate_gradient_into(const Potential& f, std::span<const double> xstar, std::span<double> out)
{
    if (out.size() != xstar.size())
        throw std::invalid_argument("conjugate_gradient: dimension mismatch");
    for (std::size_t i = 0; i < xstar.size(); ++i)
        out[i] = f.conjugate_gradient_coord(xstar[i]);
}

Vector subgradient(const Potential& f, std::span<const double> x)
{
    Vector out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        out[i] = f.subgradient_coord(x[i]);
    return out;
}

bool is_subgradient(const Potential& f, std::span<const double> x, std::span<const double> xstar)
{
    const double fx = value(f, x);
    const double gap = fx + conjugate_value(f, xstar) - dot(xstar, x);
    return std::abs(gap) <= 1e-8 * (1.0 + std::abs(fx));
}

double bregman_distance_unchecked(const Potential& f, std::span<const double> x,
                                  std::span<const double> xstar, std::span<const double> y)
{
    if (x.size() != y.size() || x.size() != xstar.size())
        throw std::invalid_argument("bregman_distance: dimension mismatch");
    double d = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
        d += f.value_coord(y[i]) - f.value_coord(x[i]) - xstar[i] * (y[i] - x[i]);
    return d;
}

double bregman_distance(const Potential& f, std::span<const double> x, std::span<const double> xstar,
                        std::span<const double> y)
{
    if (x.size() != y.size() || x.size() != xstar.size())
        throw std::invalid_argument("bregman_distance: dimension mismatch");
    if (!is_subgradient(f, x, xstar))
        throw std::invalid_argument("bregman_distance: x* is not a subgradient of f at x");
    return bregman_distance_unchecked(f, x, xstar, y);
}

const char* to_string(PotentialKind kind)
{
    switch (kind) {
    case PotentialKind::SquaredNorm:
        return "squared-norm";
    case PotentialKind::ElasticNet:
        return "elastic-net";
    case PotentialKind::SmoothedElasticNet:
        return "smoothed-elastic-net";
    }
    return "unknown";
}

} // namespace skacz
