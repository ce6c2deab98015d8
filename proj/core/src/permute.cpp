#include "insitu/permute.hpp"

#include <algorithm>
#include <numeric>

namespace insitu {

void Permutation::validate() const
{
    const int n = size();
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    for (std::int32_t v : mapping) {
        if (v < 1 || v > n)
            throw std::invalid_argument("Permutation: entry " + std::to_string(v) +
                                        " outside [1, " + std::to_string(n) + "]");
        if (seen[static_cast<std::size_t>(v - 1)])
            throw std::invalid_argument("Permutation: entry " + std::to_string(v) + " repeated");
        seen[static_cast<std::size_t>(v - 1)] = true;
    }
}

Permutation Permutation::identity(int n)
{
    Permutation p;
    p.mapping.resize(static_cast<std::size_t>(n));
    std::iota(p.mapping.begin(), p.mapping.end(), 1);
    return p;
}

Permutation Permutation::cyclic_shift(int n)
{
    Permutation p;
    p.mapping.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        p.mapping[static_cast<std::size_t>(i)] = static_cast<std::int32_t>(i + 2);
    if (n >= 1)
        p.mapping[static_cast<std::size_t>(n - 1)] = 1;
    return p;
}

Permutation Permutation::random(int n, SplitMix64& rng)
{
    Permutation p = identity(n);
    for (int i = n - 1; i > 0; --i) {
        const auto j = static_cast<std::size_t>(rng.next_bounded(static_cast<std::uint64_t>(i) + 1));
        std::swap(p.mapping[static_cast<std::size_t>(i)], p.mapping[j]);
    }
    return p;
}

int Permutation::cycle_count() const
{
    const int n = size();
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    int cycles = 0;
    for (int i = 0; i < n; ++i) {
        if (seen[static_cast<std::size_t>(i)])
            continue;
        ++cycles;
        int j = i;
        while (!seen[static_cast<std::size_t>(j)]) {
            seen[static_cast<std::size_t>(j)] = true;
            j = mapping[static_cast<std::size_t>(j)] - 1;
        }
    }
    return cycles;
}

ExactDistribution cost_distribution_bruteforce(int n)
{
    if (n < 1 || n > 8)
        throw std::invalid_argument(
            "cost_distribution_bruteforce: n must be in [1, 8] (n! enumeration); "
            "use cost_sample for larger n");

    Permutation p = Permutation::identity(n);
    std::vector<int> values(static_cast<std::size_t>(n));
    std::map<std::int64_t, BigInt> counts;
    BigInt total(0);
    do {
        std::iota(values.begin(), values.end(), 0);
        const CostRecord cost = permute_in_place(std::span<int>(values), p);
        counts[cost.search_steps] += 1;
        total += 1;
    } while (std::next_permutation(p.mapping.begin(), p.mapping.end()));

    return distribution_from_counts(n, counts, total);
}

std::vector<std::int64_t> cost_sample(int n, std::int64_t trials, std::uint64_t seed)
{
    if (n < 1)
        throw std::invalid_argument("cost_sample: n must be positive");
    if (trials < 1)
        throw std::invalid_argument("cost_sample: trials must be positive");

    std::vector<std::int64_t> out(static_cast<std::size_t>(trials));
    std::vector<int> values(static_cast<std::size_t>(n));
    for (std::int64_t t = 0; t < trials; ++t) {
        SplitMix64 rng(mix_keys(seed, static_cast<std::uint64_t>(t)));
        Permutation p = Permutation::random(n, rng);
        std::iota(values.begin(), values.end(), 0);
        out[static_cast<std::size_t>(t)] = permute_in_place(std::span<int>(values), p).search_steps;
    }
    return out;
}

} // namespace insitu
