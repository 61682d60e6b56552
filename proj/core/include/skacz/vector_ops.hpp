#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace skacz {

using Vector = std::vector<double>;

inline double dot(std::span<const double> u, std::span<const double> v)
{
    if (u.size() != v.size())
        throw std::invalid_argument("dot: dimension mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i)
        s += u[i] * v[i];
    return s;
}

inline double norm_sq(std::span<const double> u)
{
    double s = 0.0;
    for (double v : u)
        s += v * v;
    return s;
}

inline double norm(std::span<const double> u) { return std::sqrt(norm_sq(u)); }

inline double distance(std::span<const double> u, std::span<const double> v)
{
    if (u.size() != v.size())
        throw std::invalid_argument("distance: dimension mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double d = u[i] - v[i];
        s += d * d;
    }
    return std::sqrt(s);
}

inline double sign(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

} // namespace skacz
