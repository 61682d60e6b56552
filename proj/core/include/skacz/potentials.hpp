#pragma once

#include <cmath>
#include <span>

#include "skacz/vector_ops.hpp"

namespace skacz {

enum class PotentialKind {
    SquaredNorm,        // 1/2 ||x||^2
    ElasticNet,         // lambda ||x||_1 + 1/2 ||x||^2
    SmoothedElasticNet, // lambda r_eps(x) + 1/2 ||x||^2, r_eps the Huber envelope of ||.||_1
};

//
// Separable, 1-strongly convex objective. All operations act coordinate-wise,
// so the scalar kernels below are the whole story; the vector functions are
// sums / maps over them.
//
class Potential {
public:
    static Potential squared_norm() { return Potential(PotentialKind::SquaredNorm, 0.0, 0.0); }
    static Potential elastic_net(double lambda);
    static Potential smoothed_elastic_net(double lambda, double epsilon);

    PotentialKind kind() const noexcept { return kind_; }
    double lambda() const noexcept { return lambda_; }
    double epsilon() const noexcept { return epsilon_; }

    // Strong convexity modulus; 1 for every variant.
    static constexpr double alpha = 1.0;

    double value_coord(double x) const noexcept
    {
        const double q = 0.5 * x * x;
        switch (kind_) {
        case PotentialKind::SquaredNorm:
            return q;
        case PotentialKind::ElasticNet:
            return lambda_ * std::abs(x) + q;
        case PotentialKind::SmoothedElasticNet: {
            const double ax = std::abs(x);
            const double r = ax > epsilon_ ? ax - 0.5 * epsilon_ : x * x / (2.0 * epsilon_);
            return lambda_ * r + q;
        }
        }
        return q;
    }

    // d/dx* f*(x*), i.e. the unique x with x* in the subdifferential of f at x.
    double conjugate_gradient_coord(double xs) const noexcept
    {
        switch (kind_) {
        case PotentialKind::SquaredNorm:
            return xs;
        case PotentialKind::ElasticNet: {
            const double ax = std::abs(xs);
            return ax > lambda_ ? (ax - lambda_) * sign(xs) : 0.0;
        }
        case PotentialKind::SmoothedElasticNet:
            if (std::abs(xs) <= epsilon_ + lambda_)
                return xs * epsilon_ / (epsilon_ + lambda_);
            return xs - lambda_ * sign(xs);
        }
        return xs;
    }

    // Canonical (minimum-norm) subgradient; sign(0) = 0 for the elastic net.
    double subgradient_coord(double x) const noexcept
    {
        switch (kind_) {
        case PotentialKind::SquaredNorm:
            return x;
        case PotentialKind::ElasticNet:
            return x + lambda_ * sign(x);
        case PotentialKind::SmoothedElasticNet:
            return x + lambda_ * (std::abs(x) > epsilon_ ? sign(x) : x / epsilon_);
        }
        return x;
    }

    double conjugate_value_coord(double xs) const noexcept
    {
        switch (kind_) {
        case PotentialKind::SquaredNorm:
            return 0.5 * xs * xs;
        case PotentialKind::ElasticNet: {
            const double s = conjugate_gradient_coord(xs);
            return 0.5 * s * s;
        }
        case PotentialKind::SmoothedElasticNet: {
            const double g = conjugate_gradient_coord(xs);
            return xs * g - value_coord(g);
        }
        }
        return 0.5 * xs * xs;
    }

    // |x*| beyond which the conjugate gradient becomes the shifted identity;
    // zero for the squared norm (no kink).
    double conjugate_kink() const noexcept
    {
        switch (kind_) {
        case PotentialKind::SquaredNorm:
            return 0.0;
        case PotentialKind::ElasticNet:
            return lambda_;
        case PotentialKind::SmoothedElasticNet:
            return lambda_ + epsilon_;
        }
        return 0.0;
    }

private:
    Potential(PotentialKind kind, double lambda, double epsilon)
        : kind_(kind), lambda_(lambda), epsilon_(epsilon)
    {
    }

    PotentialKind kind_;
    double lambda_;
    double epsilon_;
};

double value(const Potential& f, std::span<const double> x);
double conjugate_value(const Potential& f, std::span<const double> xstar);
Vector conjugate_gradient(const Potential& f, std::span<const double> xstar);
void conjugate_gradient_into(const Potential& f, std::span<const double> xstar, std::span<double> out);
Vector subgradient(const Potential& f, std::span<const double> x);

// |f(x) + f*(x*) - <x*, x>| <= 1e-8 (1 + |f(x)|)
bool is_subgradient(const Potential& f, std::span<const double> x, std::span<const double> xstar);

// D_f^{x*}(x, y) = f(y) - f(x) - <x*, y - x>. Throws std::invalid_argument if
// x* fails the Fenchel check for membership in the subdifferential at x.
double bregman_distance(const Potential& f, std::span<const double> x, std::span<const double> xstar,
                        std::span<const double> y);

// Same formula without the subgradient check; for callers that maintain the
// pairing x = grad f*(x*) by construction.
double bregman_distance_unchecked(const Potential& f, std::span<const double> x,
                                  std::span<const double> xstar, std::span<const double> y);

const char* to_string(PotentialKind kind);

} // namespace skacz
