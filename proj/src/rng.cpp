#include "riverside/rng.hpp"

#include <stdexcept>

namespace riverside {

std::uint64_t Rng::below(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("Rng::below: empty range");
    unsigned __int128 m = static_cast<unsigned __int128>(next()) * n;
    auto low = static_cast<std::uint64_t>(m);
    if (low < n) {
        const std::uint64_t threshold = (0 - n) % n;
        while (low < threshold) {
            m = static_cast<unsigned __int128>(next()) * n;
            low = static_cast<std::uint64_t>(m);
        }
    }
    return static_cast<std::uint64_t>(m >> 64);
}

int Rng::geometric(double p) {
    if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("Rng::geometric: p must be in (0, 1]");
    int trials = 1;
    while (!bernoulli(p)) ++trials;
    return trials;
}

std::size_t Rng::weighted(std::span<const double> weights) {
    double total = 0.0;
    for (double w : weights) total += w;
    if (weights.empty() || !(total > 0.0)) throw std::invalid_argument("Rng::weighted: no positive weight");
    const double target = uniform() * total;
    double acc = 0.0;
    std::size_t last_positive = 0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (weights[i] <= 0.0) continue;
        acc += weights[i];
        last_positive = i;
        if (target < acc) return i;
    }
    // Rounding can leave target == acc at the top end.
    return last_positive;
}

} // namespace riverside
