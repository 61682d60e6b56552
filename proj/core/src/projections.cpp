#include "skacz/projections.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace skacz {

DualState DualState::from_dual(const Potential& f, Vector xstar)
{
    DualState s;
    s.x = conjugate_gradient(f, xstar);
    s.xstar = std::move(xstar);
    return s;
}

std::span<const double> constraint_row(const Constraint& c)
{
    return std::visit(
        [](const auto& v) -> std::span<const double> {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, HalfSpace>)
                return v.u;
            else
                return v.a;
        },
        c);
}

ValueRange constraint_range(const Constraint& c)
{
    return std::visit(
        [](const auto& v) -> ValueRange {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Hyperplane>)
                return ValueRange::point(v.b);
            else if constexpr (std::is_same_v<T, HalfSpace>)
                return {-std::numeric_limits<double>::infinity(), v.beta};
            else
                return {v.b - v.delta, v.b + v.delta};
        },
        c);
}

double constraint_violation(const Constraint& c, std::span<const double> x)
{
    const double v = dot(constraint_row(c), x);
    return std::abs(v - constraint_range(c).project(v));
}

void validate(const Constraint& c)
{
    if (!(norm_sq(constraint_row(c)) > 0.0))
        throw std::invalid_argument("constraint: zero row");
    if (const auto* iv = std::get_if<IntervalConstraint>(&c); iv && !(iv->delta >= 0.0))
        throw std::invalid_argument("constraint: negative interval half-width");
}

namespace {

void require_nonzero(std::span<const double> a, double a_norm_sq, const char* who)
{
    if (!(a_norm_sq > 0.0))
        throw std::invalid_argument(std::string(who) + ": zero row");
    (void)a;
}

// g'(t) = beta - <a, grad f*(x* - t a)>, restricted to the support of a.
double linesearch_slope(const Potential& f, std::span<const double> xstar, std::span<const double> a,
                        const std::vector<std::size_t>& support, double beta, double t)
{
    double h = 0.0;
    for (std::size_t i : support)
        h += a[i] * f.conjugate_gradient_coord(xstar[i] - t * a[i]);
    return beta - h;
}

// g' is piecewise linear and nondecreasing with kinks where |x*_i - t a_i| = lambda.
double elastic_net_linesearch(const Potential& f, std::span<const double> xstar, std::span<const double> a,
                              const std::vector<std::size_t>& support, double a_norm_sq, double beta)
{
    const double lambda = f.conjugate_kink();
    thread_local std::vector<double> breaks, as, xs;
    breaks.clear();
    as.clear();
    xs.clear();
    for (std::size_t i : support) {
        const double inv = 1.0 / a[i];
        breaks.push_back((xstar[i] - lambda) * inv);
        breaks.push_back((xstar[i] + lambda) * inv);
        as.push_back(a[i]);
        xs.push_back(xstar[i]);
    }

    // Branch-free soft shrinkage: S(z) = z - clamp(z, -lambda, lambda).
    auto slope = [&](double t) {
        double h = 0.0;
        for (std::size_t k = 0; k < as.size(); ++k) {
            const double z = xs[k] - t * as[k];
            h += as[k] * (z - std::clamp(z, -lambda, lambda));
        }
        return beta - h;
    };

    // Bisection over the breakpoints in sorted order, using selection instead
    // of a full sort: afterwards `left` is the largest breakpoint with g' < 0
    // and `right` the smallest with g' >= 0.
    bool have_left = false, have_right = false;
    double t_left = 0.0, s_left = 0.0, t_right = 0.0, s_right = 0.0;
    auto lo = breaks.begin();
    auto hi = breaks.end();
    while (lo < hi) {
        const auto mid = lo + (hi - lo) / 2;
        std::nth_element(lo, mid, hi);
        const double t = *mid;
        const double s = slope(t);
        if (s >= 0.0) {
            have_right = true;
            t_right = t;
            s_right = s;
            hi = mid;
        } else {
            have_left = true;
            t_left = t;
            s_left = s;
            lo = mid + 1;
        }
    }

    // Outside all breakpoints every supported coordinate is on the shifted
    // identity branch, so g' has slope ||a||^2 there.
    if (!have_left)
        return t_right - s_right / a_norm_sq;
    if (!have_right)
        return t_left - s_left / a_norm_sq;
    if (s_right == 0.0 || t_right == t_left)
        return t_right;
    // s_left < 0 <= s_right; g' is linear between adjacent breakpoints.
    const double t = t_left - s_left * (t_right - t_left) / (s_right - s_left);
    return std::clamp(t, t_left, t_right);
}

// g' continuous, strictly increasing with slope >= ||a||^2 eps / (eps + lambda).
double smoothed_linesearch(const Potential& f, std::span<const double> xstar, std::span<const double> a,
                           const std::vector<std::size_t>& support, double a_norm_sq, double beta)
{
    auto slope = [&](double t) { return linesearch_slope(f, xstar, a, support, beta, t); };
    const double tol = 1e-12 * (1.0 + std::abs(beta));

    const double s0 = slope(0.0);
    if (std::abs(s0) <= tol)
        return 0.0;
    const double min_curv = a_norm_sq * f.epsilon() / (f.epsilon() + f.lambda());
    const double reach = std::abs(s0) / min_curv;
    // The root lies between 0 and -s0 / min_curv.
    double lo = s0 < 0.0 ? 0.0 : -reach;
    double hi = s0 < 0.0 ? reach : 0.0;
    double slo = s0 < 0.0 ? s0 : slope(lo);
    double shi = s0 < 0.0 ? slope(hi) : s0;

    for (int it = 0; it < 200; ++it) {
        if (std::abs(slo) <= tol)
            return lo;
        if (std::abs(shi) <= tol)
            return hi;
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi)
            break;
        const double sm = slope(mid);
        if (std::abs(sm) <= tol)
            return mid;
        if (sm < 0.0) {
            lo = mid;
            slo = sm;
        } else {
            hi = mid;
            shi = sm;
        }
    }
    if (shi == slo)
        return lo;
    return std::clamp(lo - slo * (hi - lo) / (shi - slo), lo, hi);
}

} // namespace

double hyperplane_linesearch(const Potential& f, std::span<const double> xstar, std::span<const double> a,
                             double beta)
{
    if (xstar.size() != a.size())
        throw std::invalid_argument("hyperplane_linesearch: dimension mismatch");
    const double a_norm_sq = norm_sq(a);
    require_nonzero(a, a_norm_sq, "hyperplane_linesearch");

    if (f.kind() == PotentialKind::SquaredNorm)
        return (dot(a, xstar) - beta) / a_norm_sq;

    thread_local std::vector<std::size_t> support;
    support.clear();
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != 0.0)
            support.push_back(i);

    if (f.kind() == PotentialKind::ElasticNet)
        return elastic_net_linesearch(f, xstar, a, support, a_norm_sq, beta);
    return smoothed_linesearch(f, xstar, a, support, a_norm_sq, beta);
}

double apply_hyperplane_step(const Potential& f, DualState& s, std::span<const double> a, double a_norm_sq,
                             double rhs, StepMode mode)
{
    require_nonzero(a, a_norm_sq, "hyperplane step");
    double t = 0.0;
    if (mode == StepMode::Inexact || f.kind() == PotentialKind::SquaredNorm)
        t = (dot(a, s.x) - rhs) / a_norm_sq;
    else
        t = hyperplane_linesearch(f, s.xstar, a, rhs);
    if (t == 0.0)
        return t;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0.0)
            continue;
        s.xstar[i] -= t * a[i];
        s.x[i] = f.conjugate_gradient_coord(s.xstar[i]);
    }
    return t;
}

DualState inexact_hyperplane_step(const Potential& f, const DualState& s, std::span<const double> a, double b)
{
    if (a.size() != s.x.size())
        throw std::invalid_argument("inexact_hyperplane_step: dimension mismatch");
    DualState out = s;
    apply_hyperplane_step(f, out, a, norm_sq(a), b, StepMode::Inexact);
    return out;
}

StepResult exact_hyperplane_linesearch(const Potential& f, const DualState& s, std::span<const double> a,
                                       double beta)
{
    if (a.size() != s.x.size())
        throw std::invalid_argument("exact_hyperplane_linesearch: dimension mismatch");
    StepResult r{0.0, s};
    r.t = hyperplane_linesearch(f, s.xstar, a, beta);
    if (r.t != 0.0) {
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i] == 0.0)
                continue;
            r.state.xstar[i] -= r.t * a[i];
            r.state.x[i] = f.conjugate_gradient_coord(r.state.xstar[i]);
        }
    }
    return r;
}

HalfSpaceCut enclosing_halfspace(std::span<const double> a, const ValueRange& q, std::span<const double> x)
{
    if (a.size() != x.size())
        throw std::invalid_argument("enclosing_halfspace: dimension mismatch");
    if (!(norm_sq(a) > 0.0))
        throw std::invalid_argument("enclosing_halfspace: zero row");
    const double ax = dot(a, x);
    const double w = ax - q.project(ax);
    if (w == 0.0)
        throw std::invalid_argument("enclosing_halfspace: point already satisfies the constraint");
    HalfSpaceCut cut;
    cut.u.resize(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        cut.u[i] = w * a[i];
    cut.beta = w * ax - w * w;
    return cut;
}

StepResult halfspace_bregman_step(const Potential& f, const DualState& s, std::span<const double> u,
                                  double beta, StepMode mode)
{
    if (u.size() != s.x.size())
        throw std::invalid_argument("halfspace_bregman_step: dimension mismatch");
    const double u_norm_sq = norm_sq(u);
    require_nonzero(u, u_norm_sq, "halfspace_bregman_step");
    StepResult r{0.0, s};
    if (dot(u, s.x) <= beta)
        return r;
    r.t = apply_hyperplane_step(f, r.state, u, u_norm_sq, beta, mode);
    return r;
}

} // namespace skacz
