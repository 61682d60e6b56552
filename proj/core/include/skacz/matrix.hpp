#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "skacz/vector_ops.hpp"

namespace skacz {

//
// Dense row-major matrix with cached squared row norms.
//
// Immutable after construction. Every row must be nonzero; the sampling
// distributions used by the row-action solvers would give a zero row no mass,
// so such rows are reported as input errors instead of being carried along.
//
class RowMatrix {
public:
    RowMatrix() = default;

    // `data` holds rows * cols entries in row-major order.
    RowMatrix(std::size_t rows, std::size_t cols, std::vector<double> data);

    static RowMatrix from_rows(const std::vector<std::vector<double>>& rows);
    static RowMatrix identity(std::size_t n);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    std::span<const double> row(std::size_t i) const
    {
        return {data_.data() + i * cols_, cols_};
    }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    double row_norm_sq(std::size_t i) const { return row_norm_sq_[i]; }
    std::span<const double> row_norms_sq() const noexcept { return row_norm_sq_; }
    double frobenius_sq() const noexcept { return frob_sq_; }

    std::span<const double> data() const noexcept { return data_; }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
    std::vector<double> row_norm_sq_;
    double frob_sq_ = 0.0;
};

Vector matvec(const RowMatrix& a, std::span<const double> x);

// y = A^T w
Vector matvec_transposed(const RowMatrix& a, std::span<const double> w);

// ||Ax - b|| / ||b||; throws when b is zero.
double residual_norm_rel(const RowMatrix& a, std::span<const double> x, std::span<const double> b);

// All singular values in descending order, computed by one-sided Jacobi on
// the smaller of A and A^T.
Vector singular_values(const RowMatrix& a);

// Smallest singular value above 1e-10 * sigma_max.
double smallest_positive_singular_value(const RowMatrix& a);

// ||A||_2^2 by power iteration on A^T A, to relative accuracy `rel_tol`.
double spectral_norm_sq(const RowMatrix& a, double rel_tol = 1e-12, std::size_t max_iter = 10000);

// Plain-text matrix format: "m n" header followed by m lines of n numbers.
RowMatrix read_matrix(std::istream& in);
RowMatrix read_matrix_file(const std::string& path);
void write_matrix(std::ostream& out, const RowMatrix& a);

// One number per line.
Vector read_vector(std::istream& in);
Vector read_vector_file(const std::string& path);
void write_vector(std::ostream& out, std::span<const double> v);
void write_vector_file(const std::string& path, std::span<const double> v);

} // namespace skacz
