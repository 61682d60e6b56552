#include "skacz/trials.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace skacz {

double quantile(std::span<const double> sorted, double q)
{
    if (sorted.empty())
        throw std::invalid_argument("quantile: empty input");
    if (!(q >= 0.0 && q <= 1.0))
        throw std::invalid_argument("quantile: q must lie in [0, 1]");
    const double p = q * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(p));
    if (lo + 1 >= sorted.size())
        return sorted.back();
    const double frac = p - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

bool SeriesStats::ordered() const
{
    for (std::size_t j = 0; j < k.size(); ++j)
        if (!(min[j] <= q25[j] && q25[j] <= median[j] && median[j] <= q75[j] && q75[j] <= max[j]))
            return false;
    return true;
}

SeriesStats summarize(const std::vector<std::size_t>& ks, const std::vector<std::vector<double>>& values)
{
    if (values.empty())
        throw std::invalid_argument("summarize: no trials");
    SeriesStats st;
    st.k = ks;
    std::vector<double> col(values.size());
    for (std::size_t j = 0; j < ks.size(); ++j) {
        for (std::size_t t = 0; t < values.size(); ++t) {
            if (values[t].size() != ks.size())
                throw std::invalid_argument("summarize: ragged trial series");
            col[t] = values[t][j];
        }
        std::sort(col.begin(), col.end());
        st.min.push_back(col.front());
        st.q25.push_back(quantile(col, 0.25));
        st.median.push_back(quantile(col, 0.5));
        st.q75.push_back(quantile(col, 0.75));
        st.max.push_back(col.back());
    }
    return st;
}

std::size_t default_log_every(std::size_t max_iters) { return std::max<std::size_t>(1, max_iters / 500); }

namespace {

// Value of the log at iteration k: the last entry logged at or before k.
template <typename Get>
std::vector<double> resample(const IterateLog& log, const std::vector<std::size_t>& ks, Get get)
{
    std::vector<double> out;
    out.reserve(ks.size());
    std::size_t e = 0;
    for (std::size_t k : ks) {
        while (e + 1 < log.entries.size() && log.entries[e + 1].k <= k)
            ++e;
        out.push_back(get(log.entries[e]));
    }
    return out;
}

} // namespace

std::map<Method, TrialStats> run_trials(const InstanceSpec& spec, const std::vector<Method>& methods,
                                        const SolverConfig& solver_cfg, std::size_t n_trials)
{
    if (n_trials < 1)
        throw std::invalid_argument("run_trials: n_trials must be >= 1");
    if (methods.empty())
        throw std::invalid_argument("run_trials: no methods");
    spec.validate();
    solver_cfg.validate();

    std::vector<std::size_t> ks;
    for (std::size_t k = 0; k < solver_cfg.max_iters; k += solver_cfg.log_every)
        ks.push_back(k);
    ks.push_back(solver_cfg.max_iters);

    std::map<Method, std::vector<std::vector<double>>> res, err;
    for (std::size_t t = 0; t < n_trials; ++t) {
        InstanceSpec trial_spec = spec;
        trial_spec.seed = spec.seed + t;
        const Instance inst = make_instance(trial_spec);
        for (Method m : methods) {
            SolverConfig cfg = solver_cfg;
            cfg.method = m;
            cfg.seed = solver_cfg.seed + t;
            const SolveResult r = run(inst.a, inst.b_delta, cfg, std::span<const double>(inst.x_hat));
            res[m].push_back(resample(r.log, ks, [](const LogEntry& e) { return *e.residual; }));
            err[m].push_back(resample(r.log, ks, [](const LogEntry& e) { return *e.error; }));
        }
    }

    std::map<Method, TrialStats> out;
    for (Method m : methods)
        out[m] = TrialStats{summarize(ks, res[m]), summarize(ks, err[m])};
    return out;
}

std::string format_dat_value(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.16e", v);
    std::string s(buf);
    const auto e = s.find('e');
    if (e == std::string::npos)
        return s; // inf / nan
    const int exponent = std::stoi(s.substr(e + 1));
    return s.substr(0, e + 1) + std::to_string(exponent);
}

void emit_dat(const std::string& path, const DatSeries& series)
{
    if (series.empty())
        throw std::invalid_argument("emit_dat: empty series for '" + path + "'");
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("emit_dat: cannot open '" + path + "'");
    for (const auto& [k, v] : series)
        out << k << ' ' << format_dat_value(v) << '\n';
    out.flush();
    if (!out)
        throw std::runtime_error("emit_dat: write failed for '" + path + "'");
}

DatSeries parse_dat(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("parse_dat: cannot open '" + path + "'");
    DatSeries out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        const auto sp = line.find(' ');
        if (sp == std::string::npos)
            throw std::runtime_error("parse_dat: malformed line in '" + path + "'");
        std::size_t k = 0;
        double v = 0.0;
        const char* first = line.data();
        const char* mid = first + sp;
        const char* last = first + line.size();
        if (std::from_chars(first, mid, k).ec != std::errc{} || std::from_chars(mid + 1, last, v).ec != std::errc{})
            throw std::runtime_error("parse_dat: malformed line in '" + path + "'");
        out.emplace_back(k, v);
    }
    return out;
}

std::string dat_filename(std::string_view stat, std::string_view metric, Method method, const InstanceSpec& spec)
{
    char noise[32];
    const auto r = std::to_chars(noise, noise + sizeof noise, spec.noise_rel);
    std::ostringstream os;
    os << stat << metric << '_' << method_name(method) << "_n" << spec.n << "_m" << spec.m << "_s" << spec.s
       << "_noise" << std::string_view(noise, static_cast<std::size_t>(r.ptr - noise)) << ".dat";
    return os.str();
}

std::vector<std::string> write_trial_stats(const std::string& outdir, const InstanceSpec& spec, Method method,
                                           const TrialStats& stats)
{
    std::filesystem::create_directories(outdir);
    std::vector<std::string> paths;
    auto emit_all = [&](std::string_view metric, const SeriesStats& s) {
        const std::pair<std::string_view, const std::vector<double>*> columns[] = {
            {"median", &s.median}, {"q25", &s.q25}, {"q75", &s.q75}, {"min", &s.min}, {"max", &s.max}};
        for (const auto& [stat, values] : columns) {
            DatSeries series;
            for (std::size_t j = 0; j < s.k.size(); ++j)
                series.emplace_back(s.k[j], (*values)[j]);
            const std::string path = (std::filesystem::path(outdir) / dat_filename(stat, metric, method, spec)).string();
            emit_dat(path, series);
            paths.push_back(path);
        }
    };
    emit_all("res", stats.residual);
    emit_all("err", stats.error);
    return paths;
}

} // namespace skacz
