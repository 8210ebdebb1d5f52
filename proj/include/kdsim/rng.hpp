#pragma once

#include <cstdint>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

#include "kdsim/errors.hpp"

namespace kdsim {

// Deterministic random source. All sampling goes through hand-rolled helpers
// instead of std::*_distribution so identical seeds give identical streams on
// every platform and standard library.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    // Uniform in [0, 1) with 53 random bits.
    double next_unit() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * next_unit(); }

    bool bernoulli(double p) { return next_unit() < p; }

    // Unbiased integer in [0, n), rejection sampled.
    std::uint64_t below(std::uint64_t n) {
        if (n == 0)
            throw InvalidParameter("Rng::below: n must be positive");
        const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
        const std::uint64_t limit = max - max % n;
        std::uint64_t x = gen_();
        while (x >= limit)
            x = gen_();
        return x % n;
    }

    std::size_t index(std::size_t n) { return static_cast<std::size_t>(below(n)); }

    // First `take` entries of a uniform random permutation of 0..n-1.
    std::vector<std::size_t> sample_indices(std::size_t n, std::size_t take) {
        if (take > n)
            throw InvalidParameter("Rng::sample_indices: take exceeds population");
        std::vector<std::size_t> pool(n);
        std::iota(pool.begin(), pool.end(), std::size_t{0});
        for (std::size_t i = 0; i < take; ++i) {
            std::size_t j = i + index(n - i);
            std::swap(pool[i], pool[j]);
        }
        pool.resize(take);
        return pool;
    }

    template <typename It>
    void shuffle(It first, It last) {
        auto n = static_cast<std::size_t>(last - first);
        for (std::size_t i = n; i > 1; --i)
            std::swap(first[i - 1], first[index(i)]);
    }

private:
    std::mt19937_64 gen_;
};

} // namespace kdsim
