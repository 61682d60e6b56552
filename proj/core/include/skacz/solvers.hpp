#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "skacz/matrix.hpp"
#include "skacz/potentials.hpp"
#include "skacz/projections.hpp"
#include "skacz/rng.hpp"

namespace skacz {

enum class Method {
    RK,          // randomized Kaczmarz: squared norm, orthogonal projections
    SkCyclic,    // sparse Kaczmarz with cyclic row order
    RSK,         // randomized sparse Kaczmarz: elastic net, inexact step
    ERSK,        // exact-step randomized sparse Kaczmarz: elastic net, exact linesearch
    RskSmoothed, // randomized sparse Kaczmarz on the smoothed elastic net
    RBPSFP,      // generic randomized Bregman projections over a constraint list
};

enum class SamplerKind { Uniform, RowNormSquared, Custom };

struct SolverConfig {
    Method method = Method::RSK;
    double lambda = 1.0;
    double epsilon = 0.0; // smoothed method only; 0 selects 0.1 * lambda
    SamplerKind sampler = SamplerKind::RowNormSquared;
    std::vector<double> custom_weights;
    std::size_t max_iters = 1000;
    double tol_residual = 0.0;
    std::uint64_t seed = 0;
    std::size_t log_every = 1;
    StepMode step_mode = StepMode::Exact; // RBPSFP only

    double effective_epsilon() const { return epsilon > 0.0 ? epsilon : 0.1 * lambda; }
    void validate() const;
};

// The objective each method minimizes over {Ax = b}.
Potential potential_for(const SolverConfig& cfg);

std::string_view method_name(Method m);
Method parse_method(std::string_view name);
std::string_view sampler_name(SamplerKind s);
SamplerKind parse_sampler(std::string_view name);

struct LogEntry {
    std::size_t k = 0;
    std::optional<double> residual;      // ||Ax - b|| / ||b||
    std::optional<double> error;         // ||x - ref|| / ||ref||
    std::optional<double> bregman;       // D_f^{x*_k}(x_k, ref)
    std::optional<double> max_violation; // constraint-list runs
};

struct IterateLog {
    std::vector<LogEntry> entries;
};

struct SolveResult {
    DualState state;
    IterateLog log;
    std::size_t iterations = 0;
};

// Called after every iteration with the number of completed iterations, the
// new state and the row (or constraint) index that was used.
using StepObserver = std::function<void(std::size_t, const DualState&, std::size_t)>;

// Row-action iteration for Ax = b from x_0 = x*_0 = 0. Stops after
// cfg.max_iters single-row steps, or at a logged iteration whose relative
// residual is <= cfg.tol_residual.
SolveResult run(const RowMatrix& a, std::span<const double> b, const SolverConfig& cfg,
                std::optional<std::span<const double>> reference = std::nullopt,
                const StepObserver& observer = {});

// Randomized Bregman projections for a list of row constraints. Hyperplanes
// get a direct projection; half-spaces and intervals, when violated, are
// replaced by an enclosing half-space and projected onto that.
SolveResult rbpsfp_run(const Potential& f, const std::vector<Constraint>& constraints, const SolverConfig& cfg,
                       std::optional<std::span<const double>> reference = std::nullopt,
                       const StepObserver& observer = {});

// Sampling weights (unnormalized) for the configured sampler.
std::vector<double> sampling_weights(std::span<const double> row_norms_sq, const SolverConfig& cfg);

// exp of the least-squares slope of ln(errors[k]) against k.
double fit_linear_rate(std::span<const double> errors);
// Same with explicit abscissae; the rate is per unit of `ks`.
double fit_linear_rate(std::span<const double> ks, std::span<const double> errors);

} // namespace skacz
