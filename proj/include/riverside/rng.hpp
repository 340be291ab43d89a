#pragma once

#include <cstdint>
#include <random>
#include <span>

namespace riverside {

/// Seeded random source with platform-independent derived draws.
///
/// The raw engine is std::mt19937_64, whose output sequence is fixed by the
/// standard. The std::*_distribution adaptors are not, so every derived draw
/// used by the model is implemented here on top of raw 64-bit outputs.
class Rng {
public:
    explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform in [0, 1) with 53 bits of resolution. One raw draw.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, n). Lemire's multiply-shift with rejection;
    /// almost always a single raw draw. n must be > 0.
    std::uint64_t below(std::uint64_t n);

    /// True with probability p. One raw draw. p <= 0 is never true, p >= 1 always.
    bool bernoulli(double p) { return uniform() < p; }

    /// Number of Bernoulli(p) trials up to and including the first success
    /// (support 1, 2, ...). p must be in (0, 1].
    int geometric(double p);

    /// Index sampled with probability proportional to weights. Weights must be
    /// non-negative with a positive sum. One raw draw.
    std::size_t weighted(std::span<const double> weights);

    template <class T>
    void shuffle(std::span<T> items) {
        for (std::size_t i = items.size(); i > 1; --i) {
            const auto j = static_cast<std::size_t>(below(i));
            std::swap(items[i - 1], items[j]);
        }
    }

    friend bool operator==(const Rng&, const Rng&) = default;

private:
    std::mt19937_64 engine_;
};

} // namespace riverside
