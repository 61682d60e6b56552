#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "skacz/instances.hpp"
#include "skacz/solvers.hpp"

namespace skacz {

// Linear-interpolation quantile of an ascending sequence, q in [0, 1].
double quantile(std::span<const double> sorted, double q);

// Cross-trial summary of one metric, per logged iteration.
struct SeriesStats {
    std::vector<std::size_t> k;
    std::vector<double> min, q25, median, q75, max;

    // min <= q25 <= median <= q75 <= max everywhere.
    bool ordered() const;
};

struct TrialStats {
    SeriesStats residual; // ||A x - b_delta|| / ||b_delta||
    SeriesStats error;    // ||x - x_hat|| / ||x_hat||, x_hat the planted solution
};

// values[t][j] is trial t at iteration ks[j].
SeriesStats summarize(const std::vector<std::size_t>& ks, const std::vector<std::vector<double>>& values);

// Trial t builds the instance and seeds the solver with spec.seed + t; every
// method sees the same instance within a trial. Trials that stop early hold
// their last logged value for the remaining iterations.
std::map<Method, TrialStats> run_trials(const InstanceSpec& spec, const std::vector<Method>& methods,
                                        const SolverConfig& solver_cfg, std::size_t n_trials);

// max(1, max_iters / 500)
std::size_t default_log_every(std::size_t max_iters);

using DatSeries = std::vector<std::pair<std::size_t, double>>;

// "1.0000000000000000e0": 17 significant digits, exponent without sign padding.
std::string format_dat_value(double v);

// Writes "k value" lines. Throws std::runtime_error naming the path on I/O failure.
void emit_dat(const std::string& path, const DatSeries& series);
DatSeries parse_dat(const std::string& path);

// {stat}{metric}_{method}_n{n}_m{m}_s{s}_noise{noise}.dat
std::string dat_filename(std::string_view stat, std::string_view metric, Method method, const InstanceSpec& spec);

// Writes the 10 files (5 statistics x {res, err}) of one method; returns their paths.
std::vector<std::string> write_trial_stats(const std::string& outdir, const InstanceSpec& spec, Method method,
                                           const TrialStats& stats);

} // namespace skacz
