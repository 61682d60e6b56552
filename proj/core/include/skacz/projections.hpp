#pragma once

#include <limits>
#include <span>
#include <variant>

#include "skacz/potentials.hpp"
#include "skacz/vector_ops.hpp"

namespace skacz {

// Primal/dual iterate pair, coupled by x = grad f*(x*).
struct DualState {
    Vector x;
    Vector xstar;

    static DualState zero(std::size_t n) { return {Vector(n, 0.0), Vector(n, 0.0)}; }
    static DualState from_dual(const Potential& f, Vector xstar);
};

enum class StepMode { Exact, Inexact };

struct StepResult {
    double t = 0.0; // dual step: x*' = x* - t * a
    DualState state;
};

// Closed interval [lo, hi]; either end may be infinite.
struct ValueRange {
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();

    static ValueRange point(double b) { return {b, b}; }
    double project(double v) const { return v < lo ? lo : (v > hi ? hi : v); }
    bool contains(double v) const { return lo <= v && v <= hi; }
};

// <a, x> = b
struct Hyperplane {
    Vector a;
    double b = 0.0;
};

// <u, x> <= beta
struct HalfSpace {
    Vector u;
    double beta = 0.0;
};

// |<a, x> - b| <= delta
struct IntervalConstraint {
    Vector a;
    double b = 0.0;
    double delta = 0.0;
};

using Constraint = std::variant<Hyperplane, HalfSpace, IntervalConstraint>;

std::span<const double> constraint_row(const Constraint& c);
ValueRange constraint_range(const Constraint& c);
// Distance of <row, x> to the admissible range (0 when satisfied).
double constraint_violation(const Constraint& c, std::span<const double> x);
// Throws std::invalid_argument on a zero row or a negative delta.
void validate(const Constraint& c);

// x*' = x* - ((<a,x> - b) / ||a||^2) a, x' = grad f*(x*').
DualState inexact_hyperplane_step(const Potential& f, const DualState& s, std::span<const double> a, double b);

// Minimizer of g(t) = f*(x* - t a) + t beta; the smallest one if the minimizer set is an interval.
double hyperplane_linesearch(const Potential& f, std::span<const double> xstar, std::span<const double> a,
                             double beta);

// Exact Bregman projection onto {<a, x> = beta}.
StepResult exact_hyperplane_linesearch(const Potential& f, const DualState& s, std::span<const double> a,
                                       double beta);

struct HalfSpaceCut {
    Vector u;
    double beta = 0.0;
};

// Half-space containing {y : <a, y> in q} and excluding x, built from
// w = <a,x> - P_q(<a,x>): u = w a, beta = w <a,x> - w^2. Throws if <a,x> is in q.
HalfSpaceCut enclosing_halfspace(std::span<const double> a, const ValueRange& q, std::span<const double> x);

// Bregman projection (or inexact step) onto {<u, x> <= beta}; identity if already satisfied.
StepResult halfspace_bregman_step(const Potential& f, const DualState& s, std::span<const double> u,
                                  double beta, StepMode mode);

// In-place step onto the hyperplane {<a,x> = rhs}. Only coordinates where
// a is nonzero are touched. Returns the dual step length t.
double apply_hyperplane_step(const Potential& f, DualState& s, std::span<const double> a, double a_norm_sq,
                             double rhs, StepMode mode);

} // namespace skacz
