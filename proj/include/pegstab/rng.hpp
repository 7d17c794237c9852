#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace pegstab {

// Counter-based substreams in the splitmix64 family: the key (seed, trial,
// day, channel) is folded through the avalanche finalizer to seed a Weyl
// stream, so any draw is a pure function of (key, draw index). Trials can
// therefore run in any order, on any number of workers, and reproduce the
// same numbers.
namespace rng {

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

// splitmix64 finalizer (Vigna / Steele-Lea-Flood).
constexpr std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

class SubStream {
public:
    SubStream(std::uint64_t seed, std::uint64_t trial, std::uint64_t day, std::uint64_t channel) {
        std::uint64_t h = seed;
        h = mix64(h + kGolden * (trial + 1));
        h = mix64(h + kGolden * (day + 1));
        h = mix64(h + kGolden * (channel + 1));
        state_ = h;
    }

    std::uint64_t next_u64() {
        state_ += kGolden;
        return mix64(state_);
    }

    // Uniform on [0, 1), 53-bit resolution.
    double uniform01() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Uniform on (0, 1]; safe under log().
    double uniform01_open_low() {
        return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    }

    bool bernoulli(double p) { return uniform01() < p; }

    // Box-Muller; consumes exactly two words per call.
    double normal() {
        const double u1 = uniform01_open_low();
        const double u2 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

    double normal(double mean, double stddev) { return mean + stddev * normal(); }

    double lognormal(double mu, double sigma) { return std::exp(mu + sigma * normal()); }

private:
    std::uint64_t state_;
};

}  // namespace rng
}  // namespace pegstab
