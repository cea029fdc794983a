#pragma once

#include <cstdint>
#include <random>

namespace netmimo {

// Counter-based substream derivation: every (seed, stream ids...) tuple maps
// to an independent generator state, so parallel workers can draw from
// disjoint streams without coordination.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(splitmix64(seed)) {}

    // Derive a substream from up to three counters.
    static Rng substream(std::uint64_t seed, std::uint64_t a,
                         std::uint64_t b = 0, std::uint64_t c = 0) {
        std::uint64_t s = splitmix64(seed ^ 0x243f6a8885a308d3ULL);
        s = splitmix64(s ^ a);
        s = splitmix64(s ^ (b + 0x13198a2e03707344ULL));
        s = splitmix64(s ^ (c + 0xa4093822299f31d0ULL));
        return Rng(s);
    }

    double uniform() { return unif_(gen_); }
    double uniform(double lo, double hi) { return lo + (hi - lo) * unif_(gen_); }
    double normal() { return norm_(gen_); }

    int poisson(double mean) {
        std::poisson_distribution<int> d(mean);
        return d(gen_);
    }

    double gamma(double shape, double scale) {
        std::gamma_distribution<double> d(shape, scale);
        return d(gen_);
    }

    std::mt19937_64& engine() { return gen_; }

  private:
    std::mt19937_64 gen_;
    std::uniform_real_distribution<double> unif_{0.0, 1.0};
    std::normal_distribution<double> norm_{0.0, 1.0};
};

}  // namespace netmimo
