#include "skacz/rng.hpp"

#include <algorithm>
#include <stdexcept>

namespace skacz {

DiscreteSampler::DiscreteSampler(std::span<const double> weights)
{
    if (weights.empty())
        throw std::invalid_argument("DiscreteSampler: no weights");
    cumulative_.reserve(weights.size());
    double total = 0.0;
    for (double w : weights) {
        if (!(w > 0.0) || !std::isfinite(w))
            throw std::invalid_argument("DiscreteSampler: weights must be positive and finite");
        total += w;
        cumulative_.push_back(total);
    }
    for (double& c : cumulative_)
        c /= total;
    cumulative_.back() = 1.0;
}

double DiscreteSampler::probability(std::size_t i) const
{
    return i == 0 ? cumulative_[0] : cumulative_[i] - cumulative_[i - 1];
}

std::size_t DiscreteSampler::operator()(Rng& rng) const
{
    if (cumulative_.size() == 1)
        return 0;
    const double u = rng.uniform();
    const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
    return std::min<std::size_t>(static_cast<std::size_t>(it - cumulative_.begin()), cumulative_.size() - 1);
}

std::size_t sample_row(std::span<const double> probs, Rng& rng)
{
    double total = 0.0;
    for (double p : probs) {
        if (!(p > 0.0) || !std::isfinite(p))
            throw std::invalid_argument("sample_row: probabilities must be positive");
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-12)
        throw std::invalid_argument("sample_row: probabilities do not sum to 1");
    return DiscreteSampler(probs)(rng);
}

} // namespace skacz
