#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace oqsim {

// Seeded random stream with portable output. mt19937_64 is fully specified
// by the standard; the distributions below avoid std::*_distribution, whose
// sequences are implementation-defined. Identical seeds replay identical
// draws on any platform.
class RandomStream {
  public:
    explicit RandomStream(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t raw() { return gen_(); }

    // Uniform in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Standard normal via Box-Muller; consumes exactly two uniforms.
    double gaussian() {
        double u1 = uniform();
        double u2 = uniform();
        double r = std::sqrt(-2.0 * std::log1p(-u1));
        return r * std::cos(6.283185307179586476925286766559 * u2);
    }

    bool bernoulli(double p) { return uniform() < p; }

    // Draws an index from a (not necessarily normalized) weight vector.
    std::size_t pick(const std::vector<double>& weights) {
        double total = 0.0;
        for (double w : weights) total += w;
        double u = uniform() * total;
        double acc = 0.0;
        for (std::size_t i = 0; i < weights.size(); ++i) {
            acc += weights[i];
            if (u < acc) return i;
        }
        return weights.empty() ? 0 : weights.size() - 1;
    }

    // Independent per-trial substream seed (splitmix64 over master ^ index).
    static std::uint64_t derive(std::uint64_t master, std::uint64_t index) {
        std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (index + 1);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

  private:
    std::mt19937_64 gen_;
};

}  // namespace oqsim
