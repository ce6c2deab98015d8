#include "insitu/limit_law.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace insitu {

double toll_C(double u)
{
    if (!(u >= 0.0 && u <= 1.0))
        throw std::domain_error("toll_C: u must lie in [0, 1]");
    const double a = (u > 0.0) ? u * std::log(u) : 0.0;
    const double v = 1.0 - u;
    const double b = (v > 0.0) ? v * std::log(v) : 0.0;
    return a + b + u;
}

LimitConstants limit_constants(double quadrature_tolerance)
{
    if (!(quadrature_tolerance > 0.0 && quadrature_tolerance <= 1e-6))
        throw std::invalid_argument("limit_constants: tolerance must be in (0, 1e-6]");

    boost::math::quadrature::tanh_sinh<double> quad;
    auto integrate = [&](auto&& f, const char* name) {
        double err = 0;
        const double value = quad.integrate(f, 0.0, 1.0, quadrature_tolerance, &err);
        if (err > quadrature_tolerance)
            throw std::runtime_error(std::string("limit_constants: quadrature for ") + name +
                                     " reached error " + std::to_string(err) +
                                     " > tolerance; estimate " + std::to_string(value));
        return value;
    };

    LimitConstants c;
    c.gamma = std::numbers::egamma_v<double>;
    c.sigma2 = 2.0 - std::numbers::pi_v<double> * std::numbers::pi_v<double> / 6.0;
    c.A = integrate([](double u) { return toll_C(u) * (u * u + (1.0 - u) * (1.0 - u)); }, "A");
    c.B = integrate([](double u) { const double t = toll_C(u); return t * t * t; }, "B");
    c.M3 = 2.0 * (3.0 * c.sigma2 * c.A + c.B);
    c.integral_C = integrate([](double u) { return toll_C(u); }, "integral_C");
    c.three_integral_C2 =
        3.0 * integrate([](double u) { const double t = toll_C(u); return t * t; }, "integral_C2");
    return c;
}

std::string to_json(const LimitConstants& c)
{
    char buf[512];
    std::snprintf(buf, sizeof(buf),
                  "{\"gamma\": %.17g, \"sigma2\": %.17g, \"A\": %.17g, \"B\": %.17g, "
                  "\"M3\": %.17g}",
                  c.gamma, c.sigma2, c.A, c.B, c.M3);
    return buf;
}

namespace {

void run_chunked(std::int64_t count, int threads, auto&& body)
{
    if (threads <= 1) {
        body(std::int64_t{0}, count);
        return;
    }
    std::vector<std::thread> workers;
    const std::int64_t chunk = (count + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
        const std::int64_t lo = static_cast<std::int64_t>(t) * chunk;
        const std::int64_t hi = std::min(count, lo + chunk);
        if (lo >= hi)
            break;
        workers.emplace_back([&body, lo, hi] { body(lo, hi); });
    }
    for (auto& w : workers)
        w.join();
}

} // namespace

LimitPool simulate_limit(std::int64_t pool_size, std::int64_t generations, std::uint64_t seed,
                         int threads)
{
    if (pool_size < 1)
        throw std::invalid_argument("simulate_limit: pool_size must be positive");
    if (generations < 0)
        throw std::invalid_argument("simulate_limit: generations must be nonnegative");

    std::vector<double> prev(static_cast<std::size_t>(pool_size), 0.0);
    std::vector<double> next(static_cast<std::size_t>(pool_size), 0.0);
    const auto bound = static_cast<std::uint64_t>(pool_size);

    for (std::int64_t g = 1; g <= generations; ++g) {
        run_chunked(pool_size, threads, [&](std::int64_t lo, std::int64_t hi) {
            for (std::int64_t i = lo; i < hi; ++i) {
                SplitMix64 rng(mix_keys(seed, static_cast<std::uint64_t>(g),
                                        static_cast<std::uint64_t>(i)));
                const double u = rng.next_double();
                const double y1 = prev[static_cast<std::size_t>(rng.next_bounded(bound))];
                const double y2 = prev[static_cast<std::size_t>(rng.next_bounded(bound))];
                next[static_cast<std::size_t>(i)] = u * y1 + (1.0 - u) * y2 + toll_C(u);
            }
        });
        prev.swap(next);
    }

    LimitPool pool;
    pool.values = std::move(prev);
    pool.generation = generations;
    return pool;
}

std::vector<double> simulate_Yn(int n, std::int64_t trials, const MomentTable& table,
                                std::uint64_t seed, int threads)
{
    if (n < 1)
        throw std::invalid_argument("simulate_Yn: n must be positive");
    if (trials < 1)
        throw std::invalid_argument("simulate_Yn: trials must be positive");
    if (table.n_max < n)
        throw std::invalid_argument("simulate_Yn: moment table covers n_max = " +
                                    std::to_string(table.n_max) + " < n = " + std::to_string(n));

    const double mean_n = table.mean[static_cast<std::size_t>(n)];
    std::vector<double> out(static_cast<std::size_t>(trials));

    run_chunked(trials, threads, [&](std::int64_t lo, std::int64_t hi) {
        std::vector<int> stack;
        for (std::int64_t t = lo; t < hi; ++t) {
            SplitMix64 rng(mix_keys(seed, static_cast<std::uint64_t>(t)));
            std::int64_t cost = 0;
            stack.clear();
            stack.push_back(n);
            while (!stack.empty()) {
                const int k = stack.back();
                stack.pop_back();
                if (k <= 1)
                    continue;
                const int j = static_cast<int>(rng.next_bounded(static_cast<std::uint64_t>(k)));
                cost += j;
                stack.push_back(j);
                stack.push_back(k - 1 - j);
            }
            out[static_cast<std::size_t>(t)] = (static_cast<double>(cost) - mean_n) / n;
        }
    });
    return out;
}

Rational finite_toll_q(const MomentTable& table, int n, int k)
{
    if (table.mode != MomentMode::rational)
        throw std::invalid_argument("finite_toll_q: rational-mode table required");
    if (n < 1 || n > table.n_max || k < 0 || k > n - 1)
        throw std::invalid_argument("finite_toll_q: need 0 <= k < n <= n_max");
    Rational num = table.mean_q[static_cast<std::size_t>(k)] +
                   table.mean_q[static_cast<std::size_t>(n - 1 - k)] -
                   table.mean_q[static_cast<std::size_t>(n)] + Rational(k);
    return num / Rational(n);
}

double finite_toll(const MomentTable& table, int n, int k)
{
    if (n < 1 || n > table.n_max || k < 0 || k > n - 1)
        throw std::invalid_argument("finite_toll: need 0 <= k < n <= n_max");
    return (table.mean[static_cast<std::size_t>(k)] + table.mean[static_cast<std::size_t>(n - 1 - k)] -
            table.mean[static_cast<std::size_t>(n)] + k) /
           n;
}

} // namespace insitu
