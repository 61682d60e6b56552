#include "skacz/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace skacz {

RowMatrix::RowMatrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data))
{
    if (rows == 0 || cols == 0)
        throw std::invalid_argument("RowMatrix: empty dimensions");
    if (data_.size() != rows * cols)
        throw std::invalid_argument("RowMatrix: data size does not match dimensions");
    row_norm_sq_.resize(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        const double r = norm_sq(row(i));
        if (!(r > 0.0))
            throw std::invalid_argument("RowMatrix: row " + std::to_string(i) + " is zero");
        row_norm_sq_[i] = r;
        frob_sq_ += r;
    }
}

RowMatrix RowMatrix::from_rows(const std::vector<std::vector<double>>& rows)
{
    if (rows.empty())
        throw std::invalid_argument("RowMatrix: no rows");
    const std::size_t n = rows.front().size();
    std::vector<double> data;
    data.reserve(rows.size() * n);
    for (const auto& r : rows) {
        if (r.size() != n)
            throw std::invalid_argument("RowMatrix: ragged rows");
        data.insert(data.end(), r.begin(), r.end());
    }
    return RowMatrix(rows.size(), n, std::move(data));
}

RowMatrix RowMatrix::identity(std::size_t n)
{
    std::vector<double> data(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        data[i * n + i] = 1.0;
    return RowMatrix(n, n, std::move(data));
}

Vector matvec(const RowMatrix& a, std::span<const double> x)
{
    if (x.size() != a.cols())
        throw std::invalid_argument("matvec: dimension mismatch");
    Vector y(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        y[i] = dot(a.row(i), x);
    return y;
}

Vector matvec_transposed(const RowMatrix& a, std::span<const double> w)
{
    if (w.size() != a.rows())
        throw std::invalid_argument("matvec_transposed: dimension mismatch");
    Vector y(a.cols(), 0.0);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        const auto r = a.row(i);
        const double wi = w[i];
        if (wi == 0.0)
            continue;
        for (std::size_t j = 0; j < r.size(); ++j)
            y[j] += wi * r[j];
    }
    return y;
}

double residual_norm_rel(const RowMatrix& a, std::span<const double> x, std::span<const double> b)
{
    if (b.size() != a.rows())
        throw std::invalid_argument("residual_norm_rel: rhs dimension mismatch");
    const double bn = norm(b);
    if (!(bn > 0.0))
        throw std::invalid_argument("residual_norm_rel: zero right-hand side");
    const Vector ax = matvec(a, x);
    return distance(ax, b) / bn;
}

Vector singular_values(const RowMatrix& a)
{
    // Columns of the working matrix: columns of A when n <= m, rows of A otherwise.
    const bool use_columns = a.cols() <= a.rows();
    const std::size_t q = use_columns ? a.cols() : a.rows();
    const std::size_t p = use_columns ? a.rows() : a.cols();

    std::vector<Vector> c(q, Vector(p));
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (use_columns)
                c[j][i] = a(i, j);
            else
                c[i][j] = a(i, j);
        }

    constexpr double eps = 1e-15;
    constexpr int max_sweeps = 100;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        bool rotated = false;
        for (std::size_t i = 0; i + 1 < q; ++i) {
            for (std::size_t j = i + 1; j < q; ++j) {
                const double alpha = norm_sq(c[i]);
                const double beta = norm_sq(c[j]);
                const double gamma = dot(c[i], c[j]);
                if (gamma == 0.0 || std::abs(gamma) <= eps * std::sqrt(alpha * beta))
                    continue;
                rotated = true;
                const double zeta = (beta - alpha) / (2.0 * gamma);
                const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double cs = 1.0 / std::sqrt(1.0 + t * t);
                const double sn = cs * t;
                for (std::size_t k = 0; k < p; ++k) {
                    const double ci = c[i][k];
                    const double cj = c[j][k];
                    c[i][k] = cs * ci - sn * cj;
                    c[j][k] = sn * ci + cs * cj;
                }
            }
        }
        if (!rotated)
            break;
    }

    Vector sv(q);
    for (std::size_t i = 0; i < q; ++i)
        sv[i] = norm(c[i]);
    std::sort(sv.begin(), sv.end(), std::greater<>());
    return sv;
}

double smallest_positive_singular_value(const RowMatrix& a)
{
    const Vector sv = singular_values(a);
    if (sv.empty() || !(sv.front() > 0.0))
        throw std::invalid_argument("smallest_positive_singular_value: zero matrix");
    const double cutoff = 1e-10 * sv.front();
    double smallest = sv.front();
    for (double s : sv)
        if (s > cutoff)
            smallest = s;
    return smallest;
}

double spectral_norm_sq(const RowMatrix& a, double rel_tol, std::size_t max_iter)
{
    Vector v(a.cols());
    // Deterministic, generically non-orthogonal start.
    for (std::size_t j = 0; j < v.size(); ++j)
        v[j] = 1.0 + 0.001 * static_cast<double>(j % 97);
    double nv = norm(v);
    for (double& e : v)
        e /= nv;

    double lambda = 0.0;
    for (std::size_t it = 0; it < max_iter; ++it) {
        Vector w = matvec_transposed(a, matvec(a, v));
        const double next = dot(v, w);
        nv = norm(w);
        if (!(nv > 0.0))
            return 0.0;
        for (std::size_t j = 0; j < v.size(); ++j)
            v[j] = w[j] / nv;
        if (std::abs(next - lambda) <= rel_tol * next) {
            lambda = next;
            break;
        }
        lambda = next;
    }
    return lambda;
}

RowMatrix read_matrix(std::istream& in)
{
    std::size_t m = 0, n = 0;
    if (!(in >> m >> n))
        throw std::invalid_argument("read_matrix: missing 'm n' header");
    std::vector<double> data(m * n);
    for (auto& v : data)
        if (!(in >> v))
            throw std::invalid_argument("read_matrix: expected " + std::to_string(m * n) + " entries");
    return RowMatrix(m, n, std::move(data));
}

RowMatrix read_matrix_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open matrix file '" + path + "'");
    return read_matrix(in);
}

void write_matrix(std::ostream& out, const RowMatrix& a)
{
    out << a.rows() << ' ' << a.cols() << '\n';
    out.precision(17);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        const auto r = a.row(i);
        for (std::size_t j = 0; j < r.size(); ++j)
            out << (j ? " " : "") << r[j];
        out << '\n';
    }
}

Vector read_vector(std::istream& in)
{
    Vector v;
    std::string token;
    while (in >> token) {
        std::size_t pos = 0;
        double value = 0.0;
        try {
            value = std::stod(token, &pos);
        } catch (const std::exception&) {
            pos = 0;
        }
        if (pos != token.size())
            throw std::invalid_argument("read_vector: bad number '" + token + "'");
        v.push_back(value);
    }
    return v;
}

Vector read_vector_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open vector file '" + path + "'");
    return read_vector(in);
}

void write_vector(std::ostream& out, std::span<const double> v)
{
    out.precision(17);
    for (double e : v)
        out << e << '\n';
}

void write_vector_file(const std::string& path, std::span<const double> v)
{
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write vector file '" + path + "'");
    write_vector(out, v);
    if (!out)
        throw std::runtime_error("write failed for '" + path + "'");
}

} // namespace skacz
