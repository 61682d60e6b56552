// skacz: command line front end for the row-action solvers.
//
//   skacz solve      --matrix A.txt --rhs b.txt --method rsk --lambda 1 --out x.txt
//   skacz experiment --kind gaussian --m 1000 --n 200 --s 25 --trials 20 --outdir data
//   skacz oracle     --matrix A.txt --rhs b.txt --lambda 1 --tol 1e-10 --out x.txt
//
// Every subcommand accepts --config FILE with a JSON object whose keys are the
// long flag names ("max-iters" or "max_iters"); flags given on the command
// line take precedence. Exit codes: 0 ok, 1 usage error, 2 numerical failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "skacz/error.hpp"
#include "skacz/matrix.hpp"
#include "skacz/oracle.hpp"
#include "skacz/solvers.hpp"
#include "skacz/trials.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNumerical = 2;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Registers CLI options and remembers how to fill the same fields from a JSON config.
class Options {
public:
    explicit Options(CLI::App* app) : app_(app)
    {
        app_->add_option("--config", config_path_, "JSON file with default values for the flags");
    }

    template <typename T>
    CLI::Option* add(const std::string& name, T& field, const std::string& help)
    {
        CLI::Option* opt = app_->add_option("--" + name, field, help);
        setters_[name] = [opt, &field](const json& j) {
            if (opt->count() == 0)
                field = j.get<T>();
        };
        return opt;
    }

    void apply_config() const
    {
        if (config_path_.empty())
            return;
        std::ifstream in(config_path_);
        if (!in)
            throw UsageError("cannot open config file '" + config_path_ + "'");
        json j;
        try {
            in >> j;
        } catch (const json::exception& e) {
            throw UsageError("config file '" + config_path_ + "': " + e.what());
        }
        if (!j.is_object())
            throw UsageError("config file must contain a JSON object");
        for (const auto& [key, value] : j.items()) {
            std::string name = key;
            for (char& c : name)
                if (c == '_')
                    c = '-';
            const auto it = setters_.find(name);
            if (it == setters_.end())
                throw UsageError("config file: unknown key '" + key + "'");
            try {
                it->second(value);
            } catch (const json::exception& e) {
                throw UsageError("config file: bad value for '" + key + "': " + e.what());
            }
        }
    }

private:
    CLI::App* app_;
    std::string config_path_;
    std::map<std::string, std::function<void(const json&)>> setters_;
};

void require(bool ok, const std::string& what)
{
    if (!ok)
        throw UsageError(what);
}

// ----------------------------------------------------------------------------

struct SolveArgs {
    std::string matrix, rhs, method = "rsk", sampler = "rownorm", out, log, reference;
    double lambda = 1.0;
    double epsilon = 0.0;
    double tol = 0.0;
    std::size_t max_iters = 10000;
    std::size_t log_every = 0;
    std::uint64_t seed = 0;
};

void write_log(const std::string& path, const skacz::IterateLog& log)
{
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write log file '" + path + "'");
    out << "# k residual error bregman\n";
    for (const auto& e : log.entries) {
        out << e.k << ' ' << skacz::format_dat_value(e.residual.value_or(NAN));
        if (e.error)
            out << ' ' << skacz::format_dat_value(*e.error) << ' ' << skacz::format_dat_value(*e.bregman);
        out << '\n';
    }
}

int run_solve(const SolveArgs& args)
{
    require(!args.matrix.empty() && !args.rhs.empty() && !args.out.empty(), "solve: --matrix, --rhs and --out are required");
    skacz::SolverConfig cfg;
    cfg.method = skacz::parse_method(args.method);
    require(cfg.method != skacz::Method::RBPSFP, "solve: method must be one of rk|sk|rsk|ersk|rsk-smoothed");
    cfg.sampler = skacz::parse_sampler(args.sampler);
    require(cfg.sampler != skacz::SamplerKind::Custom, "solve: sampler must be uniform or rownorm");
    cfg.lambda = args.lambda;
    cfg.epsilon = args.epsilon;
    cfg.max_iters = args.max_iters;
    cfg.tol_residual = args.tol;
    cfg.seed = args.seed;
    cfg.log_every = args.log_every ? args.log_every : skacz::default_log_every(args.max_iters);
    if (cfg.method != skacz::Method::RK)
        require(cfg.lambda > 0.0, "solve: --lambda must be positive for sparse methods");

    const skacz::RowMatrix a = skacz::read_matrix_file(args.matrix);
    const skacz::Vector b = skacz::read_vector_file(args.rhs);
    require(b.size() == a.rows(), "solve: rhs length does not match matrix rows");
    skacz::Vector ref;
    std::optional<std::span<const double>> ref_view;
    if (!args.reference.empty()) {
        ref = skacz::read_vector_file(args.reference);
        require(ref.size() == a.cols(), "solve: reference length does not match matrix columns");
        ref_view = ref;
    }

    const skacz::SolveResult r = skacz::run(a, b, cfg, ref_view);
    skacz::write_vector_file(args.out, r.state.x);
    write_log(args.log.empty() ? args.out + ".log" : args.log, r.log);

    const double final_res = *r.log.entries.back().residual;
    std::cout << "iterations " << r.iterations << " residual " << final_res << '\n';
    if (!std::isfinite(final_res))
        throw skacz::NumericalFailure("solve: iteration diverged");
    return kExitOk;
}

// ----------------------------------------------------------------------------

struct ExperimentArgs {
    std::string kind = "gaussian", methods = "rk,rsk,ersk", sampler = "rownorm", outdir = ".";
    std::size_t m = 0, n = 0, s = 1, trials = 1, max_iters = 10000, log_every = 0;
    double noise = 0.0, lambda = 1.0, epsilon = 0.0;
    std::uint64_t seed = 0;
};

std::vector<skacz::Method> parse_method_list(const std::string& list)
{
    std::vector<skacz::Method> out;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty())
            out.push_back(skacz::parse_method(item));
    require(!out.empty(), "experiment: --methods is empty");
    for (auto m : out)
        require(m != skacz::Method::RBPSFP, "experiment: rbpsfp is not a linear-system method");
    return out;
}

int run_experiment(const ExperimentArgs& args)
{
    skacz::InstanceSpec spec;
    spec.kind = skacz::parse_instance_kind(args.kind);
    spec.m = args.m;
    spec.n = args.n;
    spec.s = args.s;
    spec.noise_rel = args.noise;
    spec.seed = args.seed;
    spec.validate();
    require(args.trials >= 1, "experiment: --trials must be >= 1");
    require(args.lambda > 0.0, "experiment: --lambda must be positive");

    skacz::SolverConfig cfg;
    cfg.lambda = args.lambda;
    cfg.epsilon = args.epsilon;
    cfg.sampler = skacz::parse_sampler(args.sampler);
    require(cfg.sampler != skacz::SamplerKind::Custom, "experiment: sampler must be uniform or rownorm");
    cfg.max_iters = args.max_iters;
    cfg.seed = args.seed;
    cfg.log_every = args.log_every ? args.log_every : skacz::default_log_every(args.max_iters);

    const auto methods = parse_method_list(args.methods);
    const auto stats = skacz::run_trials(spec, methods, cfg, args.trials);
    for (const auto& [method, st] : stats)
        for (const auto& path : skacz::write_trial_stats(args.outdir, spec, method, st))
            std::cout << path << '\n';
    return kExitOk;
}

// ----------------------------------------------------------------------------

struct OracleArgs {
    std::string matrix, rhs, out;
    double lambda = 1.0;
    double tol = 1e-10;
    std::size_t max_iters = 10'000'000;
};

int run_oracle(const OracleArgs& args)
{
    require(!args.matrix.empty() && !args.rhs.empty() && !args.out.empty(), "oracle: --matrix, --rhs and --out are required");
    require(args.tol > 0.0, "oracle: --tol must be positive");
    require(args.lambda >= 0.0, "oracle: --lambda must be >= 0");
    const skacz::RowMatrix a = skacz::read_matrix_file(args.matrix);
    const skacz::Vector b = skacz::read_vector_file(args.rhs);
    require(b.size() == a.rows(), "oracle: rhs length does not match matrix rows");

    const skacz::Potential f =
        args.lambda > 0.0 ? skacz::Potential::elastic_net(args.lambda) : skacz::Potential::squared_norm();
    skacz::OracleOptions opts;
    opts.max_iters = args.max_iters;
    const skacz::OracleResult r = skacz::solve_dual(a, b, f, args.tol, opts);
    skacz::write_vector_file(args.out, r.x_hat);
    std::cout << "iterations " << r.iterations << " residual " << r.residual << '\n';
    return kExitOk;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Randomized (sparse) Kaczmarz solvers and experiment harness"};
    app.require_subcommand(1);

    SolveArgs solve_args;
    auto* solve = app.add_subcommand("solve", "Run one solver on a system read from files");
    Options solve_opts(solve);
    solve_opts.add("matrix", solve_args.matrix, "Matrix file ('m n' header, then rows)");
    solve_opts.add("rhs", solve_args.rhs, "Right-hand side, one value per line");
    solve_opts.add("method", solve_args.method, "rk|sk|rsk|ersk|rsk-smoothed");
    solve_opts.add("lambda", solve_args.lambda, "l1 weight of the elastic-net objective");
    solve_opts.add("epsilon", solve_args.epsilon, "Smoothing width for rsk-smoothed (default 0.1*lambda)");
    solve_opts.add("sampler", solve_args.sampler, "uniform|rownorm");
    solve_opts.add("max-iters", solve_args.max_iters, "Number of single-row steps");
    solve_opts.add("tol", solve_args.tol, "Stop once the relative residual is below this");
    solve_opts.add("seed", solve_args.seed, "RNG seed");
    solve_opts.add("log-every", solve_args.log_every, "Logging cadence (default max_iters/500)");
    solve_opts.add("reference", solve_args.reference, "Known solution for error logging");
    solve_opts.add("out", solve_args.out, "Output file for the final iterate");
    solve_opts.add("log", solve_args.log, "Iterate log file (default OUT.log)");

    ExperimentArgs exp_args;
    auto* experiment = app.add_subcommand("experiment", "Multi-trial convergence experiment, writes .dat files");
    Options exp_opts(experiment);
    exp_opts.add("kind", exp_args.kind, "gaussian|tomography");
    exp_opts.add("m", exp_args.m, "Rows (rays for tomography)");
    exp_opts.add("n", exp_args.n, "Columns (grid_side^2 for tomography)");
    exp_opts.add("s", exp_args.s, "Sparsity of the planted solution");
    exp_opts.add("noise", exp_args.noise, "Relative noise level");
    exp_opts.add("trials", exp_args.trials, "Number of trials");
    exp_opts.add("methods", exp_args.methods, "Comma-separated method list");
    exp_opts.add("lambda", exp_args.lambda, "l1 weight for sparse methods");
    exp_opts.add("epsilon", exp_args.epsilon, "Smoothing width for rsk-smoothed");
    exp_opts.add("sampler", exp_args.sampler, "uniform|rownorm");
    exp_opts.add("max-iters", exp_args.max_iters, "Iterations per run");
    exp_opts.add("log-every", exp_args.log_every, "Logging cadence (default max_iters/500)");
    exp_opts.add("seed", exp_args.seed, "Base seed; trial t uses seed + t");
    exp_opts.add("outdir", exp_args.outdir, "Output directory");

    OracleArgs oracle_args;
    auto* oracle = app.add_subcommand("oracle", "Solve the regularized basis pursuit problem through its dual");
    Options oracle_opts(oracle);
    oracle_opts.add("matrix", oracle_args.matrix, "Matrix file");
    oracle_opts.add("rhs", oracle_args.rhs, "Right-hand side file");
    oracle_opts.add("lambda", oracle_args.lambda, "l1 weight (0 gives the minimum-norm solution)");
    oracle_opts.add("tol", oracle_args.tol, "Target ||Ax - b||");
    oracle_opts.add("max-iters", oracle_args.max_iters, "Iteration cap");
    oracle_opts.add("out", oracle_args.out, "Output file for the solution");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (solve->parsed()) {
            solve_opts.apply_config();
            return run_solve(solve_args);
        }
        if (experiment->parsed()) {
            exp_opts.apply_config();
            return run_experiment(exp_args);
        }
        oracle_opts.apply_config();
        return run_oracle(oracle_args);
    } catch (const skacz::NumericalFailure& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}
