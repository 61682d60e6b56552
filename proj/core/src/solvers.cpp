#include "skacz/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace skacz {

void SolverConfig::validate() const
{
    if (max_iters < 1)
        throw std::invalid_argument("solver config: max_iters must be >= 1");
    if (log_every < 1)
        throw std::invalid_argument("solver config: log_every must be >= 1");
    if (!(tol_residual >= 0.0))
        throw std::invalid_argument("solver config: tol_residual must be >= 0");
    if (!(lambda >= 0.0) || !std::isfinite(lambda))
        throw std::invalid_argument("solver config: lambda must be >= 0");
    if (!(epsilon >= 0.0) || !std::isfinite(epsilon))
        throw std::invalid_argument("solver config: epsilon must be >= 0");
    if (sampler == SamplerKind::Custom) {
        if (custom_weights.empty())
            throw std::invalid_argument("solver config: custom sampler without weights");
        for (double w : custom_weights)
            if (!(w > 0.0) || !std::isfinite(w))
                throw std::invalid_argument("solver config: custom weights must be positive and finite");
    }
}

Potential potential_for(const SolverConfig& cfg)
{
    switch (cfg.method) {
    case Method::RK:
        return Potential::squared_norm();
    case Method::SkCyclic:
    case Method::RSK:
    case Method::ERSK:
    case Method::RBPSFP:
        return Potential::elastic_net(cfg.lambda);
    case Method::RskSmoothed:
        return Potential::smoothed_elastic_net(cfg.lambda, cfg.effective_epsilon());
    }
    throw std::invalid_argument("unknown method");
}

std::string_view method_name(Method m)
{
    switch (m) {
    case Method::RK:
        return "rk";
    case Method::SkCyclic:
        return "sk";
    case Method::RSK:
        return "rsk";
    case Method::ERSK:
        return "ersk";
    case Method::RskSmoothed:
        return "rsk-smoothed";
    case Method::RBPSFP:
        return "rbpsfp";
    }
    return "unknown";
}

Method parse_method(std::string_view name)
{
    for (Method m : {Method::RK, Method::SkCyclic, Method::RSK, Method::ERSK, Method::RskSmoothed, Method::RBPSFP})
        if (method_name(m) == name)
            return m;
    throw std::invalid_argument("unknown method '" + std::string(name) + "'");
}

std::string_view sampler_name(SamplerKind s)
{
    switch (s) {
    case SamplerKind::Uniform:
        return "uniform";
    case SamplerKind::RowNormSquared:
        return "rownorm";
    case SamplerKind::Custom:
        return "custom";
    }
    return "unknown";
}

SamplerKind parse_sampler(std::string_view name)
{
    if (name == "uniform")
        return SamplerKind::Uniform;
    if (name == "rownorm")
        return SamplerKind::RowNormSquared;
    if (name == "custom")
        return SamplerKind::Custom;
    throw std::invalid_argument("unknown sampler '" + std::string(name) + "'");
}

std::vector<double> sampling_weights(std::span<const double> row_norms_sq, const SolverConfig& cfg)
{
    switch (cfg.sampler) {
    case SamplerKind::Uniform:
        return std::vector<double>(row_norms_sq.size(), 1.0);
    case SamplerKind::RowNormSquared:
        return {row_norms_sq.begin(), row_norms_sq.end()};
    case SamplerKind::Custom:
        if (cfg.custom_weights.size() != row_norms_sq.size())
            throw std::invalid_argument("custom sampler: weight count does not match row count");
        return cfg.custom_weights;
    }
    throw std::invalid_argument("unknown sampler");
}

namespace {

struct Tracker {
    const Potential& f;
    std::optional<std::span<const double>> reference;
    double ref_norm = 1.0;

    Tracker(const Potential& pot, std::optional<std::span<const double>> ref) : f(pot), reference(ref)
    {
        if (reference) {
            const double nr = norm(*reference);
            ref_norm = nr > 0.0 ? nr : 1.0;
        }
    }

    void fill(LogEntry& e, const DualState& s) const
    {
        if (!reference)
            return;
        e.error = distance(s.x, *reference) / ref_norm;
        e.bregman = bregman_distance_unchecked(f, s.x, s.xstar, *reference);
    }
};

} // namespace

SolveResult run(const RowMatrix& a, std::span<const double> b, const SolverConfig& cfg,
                std::optional<std::span<const double>> reference, const StepObserver& observer)
{
    cfg.validate();
    if (cfg.method == Method::RBPSFP)
        throw std::invalid_argument("run: use rbpsfp_run for constraint-list problems");
    if (b.size() != a.rows())
        throw std::invalid_argument("run: rhs dimension mismatch");
    if (!(norm(b) > 0.0))
        throw std::invalid_argument("run: zero right-hand side");
    if (reference && reference->size() != a.cols())
        throw std::invalid_argument("run: reference dimension mismatch");

    const Potential f = potential_for(cfg);
    const StepMode mode = cfg.method == Method::ERSK ? StepMode::Exact : StepMode::Inexact;
    const bool cyclic = cfg.method == Method::SkCyclic;
    const std::vector<double> weights = sampling_weights(a.row_norms_sq(), cfg);
    const DiscreteSampler sampler(weights);
    Rng rng(cfg.seed);
    const Tracker tracker(f, reference);

    SolveResult result;
    result.state = DualState::zero(a.cols());
    auto& s = result.state;

    auto log_now = [&](std::size_t k) {
        LogEntry e;
        e.k = k;
        e.residual = residual_norm_rel(a, s.x, b);
        tracker.fill(e, s);
        result.log.entries.push_back(e);
        return *e.residual;
    };

    std::size_t k = 0;
    bool converged = false;
    for (; k < cfg.max_iters; ++k) {
        if (k % cfg.log_every == 0 && log_now(k) <= cfg.tol_residual) {
            converged = true;
            break;
        }
        const std::size_t i = cyclic ? k % a.rows() : sampler(rng);
        apply_hyperplane_step(f, s, a.row(i), a.row_norm_sq(i), b[i], mode);
        if (observer)
            observer(k + 1, s, i);
    }
    if (!converged && (result.log.entries.empty() || result.log.entries.back().k != k))
        log_now(k);
    result.iterations = k;
    return result;
}

SolveResult rbpsfp_run(const Potential& f, const std::vector<Constraint>& constraints, const SolverConfig& cfg,
                       std::optional<std::span<const double>> reference, const StepObserver& observer)
{
    cfg.validate();
    if (constraints.empty())
        throw std::invalid_argument("rbpsfp_run: empty constraint list");
    const std::size_t n = constraint_row(constraints.front()).size();
    std::vector<double> row_norms_sq;
    row_norms_sq.reserve(constraints.size());
    for (const auto& c : constraints) {
        validate(c);
        if (constraint_row(c).size() != n)
            throw std::invalid_argument("rbpsfp_run: constraint rows of different lengths");
        row_norms_sq.push_back(norm_sq(constraint_row(c)));
    }
    if (reference && reference->size() != n)
        throw std::invalid_argument("rbpsfp_run: reference dimension mismatch");

    const std::vector<double> weights = sampling_weights(row_norms_sq, cfg);
    const DiscreteSampler sampler(weights);
    Rng rng(cfg.seed);
    const Tracker tracker(f, reference);

    SolveResult result;
    result.state = DualState::zero(n);
    auto& s = result.state;

    auto log_now = [&](std::size_t k) {
        LogEntry e;
        e.k = k;
        double worst = 0.0;
        for (const auto& c : constraints)
            worst = std::max(worst, constraint_violation(c, s.x));
        e.max_violation = worst;
        tracker.fill(e, s);
        result.log.entries.push_back(e);
        return worst;
    };

    std::size_t k = 0;
    bool converged = false;
    for (; k < cfg.max_iters; ++k) {
        if (k % cfg.log_every == 0 && log_now(k) <= cfg.tol_residual) {
            converged = true;
            break;
        }
        const std::size_t i = sampler(rng);
        const Constraint& c = constraints[i];
        const auto row = constraint_row(c);
        if (const auto* h = std::get_if<Hyperplane>(&c)) {
            apply_hyperplane_step(f, s, row, row_norms_sq[i], h->b, cfg.step_mode);
        } else {
            const ValueRange q = constraint_range(c);
            const double ax = dot(row, s.x);
            if (!q.contains(ax)) {
                const HalfSpaceCut cut = enclosing_halfspace(row, q, s.x);
                apply_hyperplane_step(f, s, cut.u, norm_sq(cut.u), cut.beta, cfg.step_mode);
            }
        }
        if (observer)
            observer(k + 1, s, i);
    }
    if (!converged && (result.log.entries.empty() || result.log.entries.back().k != k))
        log_now(k);
    result.iterations = k;
    return result;
}

double fit_linear_rate(std::span<const double> ks, std::span<const double> errors)
{
    if (ks.size() != errors.size())
        throw std::invalid_argument("fit_linear_rate: size mismatch");
    if (errors.size() < 3)
        throw std::invalid_argument("fit_linear_rate: need at least 3 points");
    double mk = 0.0, my = 0.0;
    for (std::size_t i = 0; i < errors.size(); ++i) {
        if (!(errors[i] > 0.0))
            throw std::invalid_argument("fit_linear_rate: errors must be positive");
        mk += ks[i];
        my += std::log(errors[i]);
    }
    const double cnt = static_cast<double>(errors.size());
    mk /= cnt;
    my /= cnt;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < errors.size(); ++i) {
        const double dk = ks[i] - mk;
        sxy += dk * (std::log(errors[i]) - my);
        sxx += dk * dk;
    }
    if (!(sxx > 0.0))
        throw std::invalid_argument("fit_linear_rate: abscissae are all equal");
    return std::exp(sxy / sxx);
}

double fit_linear_rate(std::span<const double> errors)
{
    std::vector<double> ks(errors.size());
    for (std::size_t i = 0; i < ks.size(); ++i)
        ks[i] = static_cast<double>(i);
    return fit_linear_rate(ks, errors);
}

} // namespace skacz
