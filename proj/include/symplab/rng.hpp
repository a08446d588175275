// Deterministic random number generation.
//
// All randomness in the library flows through Rng so that a run is fully
// reproducible from a single 64-bit seed.  Per-task generators are derived
// by counter hashing, which keeps parallel runs independent of the worker
// count.  We do not use <random> distributions: their output is
// implementation-defined, and we want bit-identical streams everywhere.

#pragma once

#include <cmath>
#include <cstdint>

namespace symplab {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {
        // warm up so that small seeds do not produce correlated streams
        for (int i = 0; i < 4; ++i) splitmix64(state_);
    }

    std::uint64_t next_u64() { return splitmix64(state_); }

    // uniform in [0, 1)
    double uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // standard normal via Box-Muller (explicit formula, reproducible)
    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        double u2 = uniform();
        if (u1 < 1e-300) u1 = 1e-300;
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double t = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(t);
        have_spare_ = true;
        return r * std::cos(t);
    }

    // integer in [0, n)
    std::uint64_t below(std::uint64_t n) { return n ? next_u64() % n : 0; }

  private:
    std::uint64_t state_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

// Derive an independent stream for task `index` of a run seeded with `seed`.
inline Rng task_rng(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t s = seed ^ (0xd6e8feb86659fd93ULL * (index + 1));
    splitmix64(s);
    return Rng(s);
}

// FNV-1a, used for output checksums in run records.
inline std::uint64_t fnv1a(const void* data, std::size_t len,
                           std::uint64_t h = 0xcbf29ce484222325ULL) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace symplab
