#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "skacz/matrix.hpp"
#include "skacz/potentials.hpp"

namespace skacz {

struct OracleOptions {
    std::size_t max_iters = 10'000'000;
    // Use power iteration for ||A||_2^2; otherwise the Frobenius bound.
    bool spectral_step = true;
    // Record g(y_k) = f*(A^T y_k) - <b, y_k> at every iteration.
    bool record_objective = false;
};

struct OracleResult {
    Vector y_hat;          // dual point
    Vector x_hat;          // grad f*(A^T y_hat)
    double residual = 0.0; // ||A x_hat - b|| = ||grad g(y_hat)||
    std::size_t iterations = 0;
    std::vector<double> objective; // filled when record_objective is set
};

// Minimizes f over {Ax = b} by gradient descent on the smooth dual
// g(y) = f*(A^T y) - <b, y> with step 1/L, L = ||A||_2^2. Throws
// NumericalFailure if ||A x - b|| <= tol is not reached within the cap.
OracleResult solve_dual(const RowMatrix& a, std::span<const double> b, const Potential& f, double tol,
                        const OracleOptions& options = {});

// Brute-force minimizer of g(t) = f*(x* - t a) + t beta over the grid
// lo, lo + step, ... <= hi; the smallest grid point wins ties.
double grid_linesearch(const Potential& f, std::span<const double> xstar, std::span<const double> a, double beta,
                       double lo, double hi, double step);

} // namespace skacz
