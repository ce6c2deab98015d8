#pragma once

#include <cstdint>

namespace insitu {

// Counter-free splittable generator (splitmix64 finalizer). Every Monte
// Carlo consumer derives an independent stream from a small tuple of keys
// (seed, trial index, ...), so results do not depend on scheduling.
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64()
    {
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform on [0,1) with 53 random bits.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Unbiased integer on {0,...,bound-1} (Lemire multiply-shift with the
    // exactness rejection branch; the loop body almost never repeats).
    std::uint64_t next_bounded(std::uint64_t bound)
    {
        std::uint64_t x = next_u64();
        __uint128_t m = static_cast<__uint128_t>(x) * bound;
        std::uint64_t low = static_cast<std::uint64_t>(m);
        if (low < bound) {
            std::uint64_t threshold = -bound % bound;
            while (low < threshold) {
                x = next_u64();
                m = static_cast<__uint128_t>(x) * bound;
                low = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

  private:
    std::uint64_t state_;
};

// Key mixing for derived streams: hash-fold the parts so that nearby
// (seed, index) tuples give statistically unrelated states.
inline std::uint64_t mix_keys(std::uint64_t a, std::uint64_t b)
{
    SplitMix64 g(a ^ (0x632be59bd9b4e019ULL + b));
    std::uint64_t h = g.next_u64();
    return h ^ b;
}

inline std::uint64_t mix_keys(std::uint64_t a, std::uint64_t b, std::uint64_t c)
{
    return mix_keys(mix_keys(a, b), c);
}

} // namespace insitu
