// random.hpp
// Seeded randomness handle. Operations in this library never own a
// generator; callers pass a RandomSource (or a raw uniform sample) so that
// every transcript is bit-reproducible from its seed.

#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <random>

namespace ctsim {

// splitmix64 finalizer. Used to derive independent per-trial seeds from a
// run seed and a trial index; fixed across platforms.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    return splitmix64(seed ^ splitmix64(index + 1));
}

class RandomSource {
public:
    explicit RandomSource(std::uint64_t seed) : seed_(seed), engine_(seed) {}

    std::uint64_t seed() const { return seed_; }

    // Uniform double in [0, 1). mt19937_64 is bit-identical everywhere.
    double uniform() {
        // 53 random bits -> the usual dyadic rational in [0,1)
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    // Uniform integer in [0, n).
    std::size_t uniform_index(std::size_t n) {
        auto i = static_cast<std::size_t>(uniform() * static_cast<double>(n));
        return i < n ? i : n - 1;
    }

    // Queue a deterministic outcome index for the next sampled measurement.
    // Test instrumentation: lets a caller walk every measurement branch
    // without statistical flakiness. The forced branch still reports its
    // true Born probability.
    void force_next_outcome(int outcome) { forced_.push_back(outcome); }

    std::optional<int> pop_forced_outcome() {
        if (forced_.empty()) return std::nullopt;
        int o = forced_.front();
        forced_.pop_front();
        return o;
    }

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
    std::deque<int> forced_;
};

} // namespace ctsim
