#pragma once

#include "insitu/recurrence.hpp"
#include "insitu/rng.hpp"

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace insitu {

// A bijection on {1..n}, stored 1-based as given.
struct Permutation {
    std::vector<std::int32_t> mapping;

    int size() const { return static_cast<int>(mapping.size()); }

    // Throws if any entry is out of range or repeated.
    void validate() const;

    static Permutation identity(int n);
    static Permutation cyclic_shift(int n); // (2,3,...,n,1), the worst case
    static Permutation random(int n, SplitMix64& rng);

    int cycle_count() const;
};

struct CostRecord {
    std::int64_t search_steps = 0;  // the major cost: leader-search loop bodies
    std::int64_t value_writes = 0;  // always n
    std::int64_t cycle_leaders = 0; // number of cycles
};

// Cycle-leader in-situ permutation: x[i] <- old x[p(i)], O(1) extra space.
// For each index the leader search walks j <- p(j) while j > i; the
// rotation pulls values backward along the cycle once i is its leader.
template <class T>
CostRecord permute_in_place(std::span<T> x, const Permutation& p)
{
    if (static_cast<int>(x.size()) != p.size())
        throw std::invalid_argument("permute_in_place: sequence and permutation sizes differ");
    p.validate();

    CostRecord cost;
    const auto& map = p.mapping;
    const int n = p.size();
    for (int i = 1; i <= n; ++i) {
        std::int32_t j = map[static_cast<std::size_t>(i - 1)];
        while (j > i) {
            j = map[static_cast<std::size_t>(j - 1)];
            ++cost.search_steps;
        }
        if (j == i) {
            ++cost.cycle_leaders;
            T held = std::move(x[static_cast<std::size_t>(i - 1)]);
            j = i;
            while (map[static_cast<std::size_t>(j - 1)] != i) {
                x[static_cast<std::size_t>(j - 1)] =
                    std::move(x[static_cast<std::size_t>(map[static_cast<std::size_t>(j - 1)]) - 1]);
                ++cost.value_writes;
                j = map[static_cast<std::size_t>(j - 1)];
            }
            x[static_cast<std::size_t>(j - 1)] = std::move(held);
            ++cost.value_writes;
        }
    }
    return cost;
}

// Enumerates all n! permutations (n <= 8) and tallies search_steps; the
// independent check that the instrumented cost obeys the split recurrence.
ExactDistribution cost_distribution_bruteforce(int n);

// search_steps of `trials` uniform random permutations; stream derived
// per trial from (seed, trial), so the result is scheduling-independent.
std::vector<std::int64_t> cost_sample(int n, std::int64_t trials, std::uint64_t seed);

} // namespace insitu
