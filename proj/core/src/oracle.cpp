#include "skacz/oracle.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "skacz/error.hpp"

namespace skacz {

OracleResult solve_dual(const RowMatrix& a, std::span<const double> b, const Potential& f, double tol,
                        const OracleOptions& options)
{
    if (b.size() != a.rows())
        throw std::invalid_argument("solve_dual: rhs dimension mismatch");
    if (!(tol > 0.0))
        throw std::invalid_argument("solve_dual: tol must be positive");

    // Slightly inflated so that an under-converged power iteration still gives a valid bound.
    const double lipschitz = options.spectral_step ? std::min(spectral_norm_sq(a) * (1.0 + 1e-6), a.frobenius_sq())
                                                   : a.frobenius_sq();
    const double step = Potential::alpha / lipschitz;

    OracleResult r;
    r.y_hat.assign(a.rows(), 0.0);
    Vector xstar(a.cols(), 0.0);
    r.x_hat = conjugate_gradient(f, xstar);
    Vector grad(a.rows());

    for (std::size_t it = 0;; ++it) {
        const Vector ax = matvec(a, r.x_hat);
        for (std::size_t i = 0; i < grad.size(); ++i)
            grad[i] = ax[i] - b[i];
        r.residual = norm(grad);
        if (options.record_objective)
            r.objective.push_back(conjugate_value(f, xstar) - dot(b, r.y_hat));
        r.iterations = it;
        if (r.residual <= tol)
            return r;
        if (it >= options.max_iters || !std::isfinite(r.residual)) {
            std::ostringstream msg;
            msg << "dual oracle stopped after " << it << " iterations with ||Ax-b|| = " << r.residual
                << " (target " << tol << ")";
            throw NumericalFailure(msg.str());
        }
        for (std::size_t i = 0; i < grad.size(); ++i)
            r.y_hat[i] -= step * grad[i];
        xstar = matvec_transposed(a, r.y_hat);
        conjugate_gradient_into(f, xstar, r.x_hat);
    }
}

double grid_linesearch(const Potential& f, std::span<const double> xstar, std::span<const double> a, double beta,
                       double lo, double hi, double step)
{
    if (!(step > 0.0) || !std::isfinite(lo) || !std::isfinite(hi) || hi < lo)
        throw std::invalid_argument("grid_linesearch: need finite range and positive step");
    if (xstar.size() != a.size())
        throw std::invalid_argument("grid_linesearch: dimension mismatch");

    const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
    Vector z(a.size());
    double best_t = lo;
    double best_g = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < count; ++j) {
        const double t = lo + static_cast<double>(j) * step;
        for (std::size_t i = 0; i < a.size(); ++i)
            z[i] = xstar[i] - t * a[i];
        const double g = conjugate_value(f, z) + t * beta;
        if (g < best_g) {
            best_g = g;
            best_t = t;
        }
    }
    return best_t;
}

} // namespace skacz
