#ifndef DTASA_RNG_HPP
#define DTASA_RNG_HPP

#include <cstdint>

#include "dtasa/stats.hpp"

namespace dtasa {

// Counter-based 64-bit generator (SplitMix64 finalizer over key + counter).
// Streams are derived by hashing (seed, stream ids), so replications can run
// in parallel while staying bit-reproducible across platforms.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t key) : key_(key) {}

    static std::uint64_t mix64(std::uint64_t z) {
        z += 0x9E3779B97F4A7C15ULL;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    static CounterRng stream(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0,
                             std::uint64_t c = 0) {
        std::uint64_t k = mix64(seed);
        k = mix64(k ^ a);
        k = mix64(k ^ b);
        k = mix64(k ^ c);
        return CounterRng(k);
    }

    std::uint64_t next() { return mix64(key_ + 0x9E3779B97F4A7C15ULL * ++counter_); }

    // uniform in (0, 1), never exactly 0 or 1
    double uniform01() { return (static_cast<double>(next() >> 11) + 0.5) * 0x1p-53; }

    double normal(double mean = 0.0, double sd = 1.0) {
        return mean + sd * norm_quantile(uniform01());
    }

    bool bernoulli(double p) { return uniform01() < p; }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

} // namespace dtasa

#endif
