#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "insitu/permute.hpp"

#include <cmath>
#include <numeric>
#include <string>
#include <vector>

using namespace insitu;

TEST_CASE("hand-traced examples")
{
    {
        std::vector<char> x{'a', 'b', 'c'};
        auto cost = permute_in_place(std::span<char>(x), Permutation::identity(3));
        CHECK(x == std::vector<char>{'a', 'b', 'c'});
        CHECK(cost.search_steps == 0);
        CHECK(cost.value_writes == 3);
        CHECK(cost.cycle_leaders == 3);
    }
    {
        std::vector<char> x{'a', 'b'};
        Permutation p{{2, 1}};
        auto cost = permute_in_place(std::span<char>(x), p);
        CHECK(x == std::vector<char>{'b', 'a'});
        CHECK(cost.search_steps == 1);
    }
    {
        std::vector<char> x{'a', 'b', 'c'};
        Permutation p{{2, 3, 1}};
        auto cost = permute_in_place(std::span<char>(x), p);
        CHECK(x == std::vector<char>{'b', 'c', 'a'});
        CHECK(cost.search_steps == 3);
    }
}

TEST_CASE("validation rejects bad input before mutation")
{
    std::vector<int> x{1, 2, 3};
    Permutation short_p{{2, 1}};
    CHECK_THROWS_AS(permute_in_place(std::span<int>(x), short_p), std::invalid_argument);

    Permutation repeated{{1, 1, 3}};
    CHECK_THROWS_AS(permute_in_place(std::span<int>(x), repeated), std::invalid_argument);
    CHECK(x == std::vector<int>{1, 2, 3});

    Permutation out_of_range{{0, 2, 3}};
    CHECK_THROWS_AS(out_of_range.validate(), std::invalid_argument);
}

TEST_CASE("worst and best cases")
{
    for (int n : {1, 2, 5, 100, 3000}) {
        std::vector<int> x(static_cast<std::size_t>(n));
        std::iota(x.begin(), x.end(), 0);
        auto worst = permute_in_place(std::span<int>(x), Permutation::cyclic_shift(n));
        CHECK(worst.search_steps == static_cast<std::int64_t>(n) * (n - 1) / 2);

        auto best = permute_in_place(std::span<int>(x), Permutation::identity(n));
        CHECK(best.search_steps == 0);
    }
}

TEST_CASE("random instances: output, writes, cycle counts")
{
    SplitMix64 rng(12345);
    for (int n : {1, 2, 3, 7, 64, 1000, 100000}) {
        auto p = Permutation::random(n, rng);
        std::vector<int> x(static_cast<std::size_t>(n));
        std::iota(x.begin(), x.end(), 1);

        std::vector<int> expected(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
            expected[static_cast<std::size_t>(i)] = p.mapping[static_cast<std::size_t>(i)];

        auto cost = permute_in_place(std::span<int>(x), p);
        CHECK(x == expected);
        CHECK(cost.value_writes == n);
        CHECK(cost.cycle_leaders == p.cycle_count());
        CHECK(cost.search_steps >= 0);
        CHECK(cost.search_steps <= static_cast<std::int64_t>(n) * (n - 1) / 2);
    }
}

TEST_CASE("brute force equals recurrence law (keystone), n <= 6")
{
    for (int n = 1; n <= 6; ++n) {
        auto brute = cost_distribution_bruteforce(n);
        auto exact = exact_distribution(n);
        CHECK(brute.probabilities == exact.probabilities);
    }
    CHECK_THROWS_AS(cost_distribution_bruteforce(9), std::invalid_argument);
    CHECK_THROWS_AS(cost_distribution_bruteforce(0), std::invalid_argument);
}

TEST_CASE("cost_sample basics")
{
    auto zeros = cost_sample(1, 100, 99);
    for (auto c : zeros)
        CHECK(c == 0);

    CHECK(cost_sample(5, 1000, 7) == cost_sample(5, 1000, 7));
    CHECK(cost_sample(5, 1000, 7) != cost_sample(5, 1000, 8));

    CHECK_THROWS_AS(cost_sample(0, 10, 1), std::invalid_argument);
    CHECK_THROWS_AS(cost_sample(5, 0, 1), std::invalid_argument);
}

TEST_CASE("cost_sample mean matches the moment recurrence")
{
    {
        // m_2 = 1/2, per-trial sd = 1/2
        const std::int64_t trials = 100000;
        auto costs = cost_sample(2, trials, 21);
        double mean = 0;
        for (auto c : costs)
            mean += static_cast<double>(c);
        mean /= static_cast<double>(trials);
        const double se = 0.5 / std::sqrt(static_cast<double>(trials));
        CHECK(std::abs(mean - 0.5) < 3 * se);
    }
    {
        auto table = moments_exact(100, MomentMode::rational);
        const double m100 = table.mean[100];
        const double sd = std::sqrt(table.variance(100));
        const std::int64_t trials = 20000;
        auto costs = cost_sample(100, trials, 22);
        double mean = 0;
        for (auto c : costs)
            mean += static_cast<double>(c);
        mean /= static_cast<double>(trials);
        CHECK(std::abs(mean - m100) < 3 * sd / std::sqrt(static_cast<double>(trials)));
    }
}
