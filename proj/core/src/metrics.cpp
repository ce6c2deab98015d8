#include "insitu/metrics.hpp"

#include "insitu/kahan.hpp"
#include "insitu/rng.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace insitu {

double lp_distance_empirical(std::span<const double> a, std::span<const double> b, double p)
{
    if (a.empty() || b.empty())
        throw std::domain_error("lp_distance_empirical: empty sample set");
    if (a.size() != b.size())
        throw std::domain_error("lp_distance_empirical: sample sets must have equal size");
    if (!(p >= 1.0))
        throw std::domain_error("lp_distance_empirical: p must be >= 1");

    std::vector<double> sa(a.begin(), a.end());
    std::vector<double> sb(b.begin(), b.end());
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());

    KahanSum<double> acc;
    for (std::size_t i = 0; i < sa.size(); ++i)
        acc += std::pow(std::abs(sa[i] - sb[i]), p);
    return std::pow(acc.get() / static_cast<double>(sa.size()), 1.0 / p);
}

double zeta3_lower_bound(double third_moment_v, double third_moment_w)
{
    return std::abs(third_moment_v - third_moment_w) / 6.0;
}

double zeta3_upper_bound(double norm3_v, double norm3_w, double l3)
{
    if (norm3_v < 0 || norm3_w < 0 || l3 < 0)
        throw std::domain_error("zeta3_upper_bound: norms and l3 must be nonnegative");
    return (norm3_v * norm3_v + norm3_v * norm3_w + norm3_w * norm3_w) * l3 / 6.0;
}

namespace {

double norm3(std::span<const double> v)
{
    KahanSum<double> acc;
    for (double x : v) {
        const double ax = std::abs(x);
        acc += ax * ax * ax;
    }
    return std::cbrt(acc.get() / static_cast<double>(v.size()));
}

} // namespace

std::vector<RatePoint> rate_series(std::span<const int> n_values, const MomentTable& table,
                                   const LimitConstants& constants,
                                   const std::optional<McConfig>& mc)
{
    const double sigma2 = constants.sigma2;
    const double sigma = std::sqrt(sigma2);
    const double sigma5 = sigma2 * sigma2 * sigma;
    const double sigma3 = sigma2 * sigma;
    const double rate_constant = constants.M3 / (4.0 * sigma5);
    const double nan = std::numeric_limits<double>::quiet_NaN();

    // One limit pool serves every n; X = Y / sigma samples are resampled
    // from it at the configured trial count.
    std::vector<double> x_samples;
    if (mc) {
        if (mc->trials < mc->batches || mc->batches < 2)
            throw std::invalid_argument("rate_series: need trials >= batches >= 2");
        LimitPool pool = simulate_limit(mc->pool_size, mc->generations, mc->seed, mc->threads);
        x_samples.resize(static_cast<std::size_t>(mc->trials));
        SplitMix64 rng(mix_keys(mc->seed, 0xba5e11));
        const auto bound = static_cast<std::uint64_t>(pool.values.size());
        for (auto& x : x_samples)
            x = pool.values[static_cast<std::size_t>(rng.next_bounded(bound))] / sigma;
    }

    std::vector<RatePoint> out;
    out.reserve(n_values.size());
    for (int n : n_values) {
        if (n < 2)
            continue; // sigma(n) = 0, standardization undefined
        if (n > table.n_max)
            throw std::out_of_range("rate_series: n = " + std::to_string(n) + " not in table");

        RatePoint pt;
        pt.n = n;
        pt.sigma2_n = table.sigma2_n(n);
        const double nd = n;
        const double std3 = pt.sigma2_n * std::sqrt(pt.sigma2_n); // sigma^3(n)
        pt.lower_bound = zeta3_lower_bound(table.kappa3(n) / (nd * nd * nd * std3),
                                           constants.M3 / sigma3);
        pt.predicted = rate_constant * std::log(nd) / nd;
        pt.upper_bound_estimate = nan;
        pt.upper_se = nan;

        if (mc) {
            std::vector<double> yn = simulate_Yn(n, mc->trials, table,
                                                 mix_keys(mc->seed, static_cast<std::uint64_t>(n)),
                                                 mc->threads);
            const double scale = 1.0 / std::sqrt(pt.sigma2_n);
            for (double& v : yn)
                v *= scale;

            pt.upper_bound_estimate =
                zeta3_upper_bound(norm3(yn), norm3(x_samples),
                                  lp_distance_empirical(yn, x_samples, 3.0));

            // Batch s.e.: the estimator recomputed on disjoint blocks.
            const int b = mc->batches;
            const std::size_t block = yn.size() / static_cast<std::size_t>(b);
            KahanSum<double> sum, sumsq;
            for (int i = 0; i < b; ++i) {
                const std::size_t lo = static_cast<std::size_t>(i) * block;
                std::span<const double> ys(yn.data() + lo, block);
                std::span<const double> xs(x_samples.data() + lo, block);
                const double est =
                    zeta3_upper_bound(norm3(ys), norm3(xs), lp_distance_empirical(ys, xs, 3.0));
                sum += est;
                sumsq += est * est;
            }
            const double mean = sum.get() / b;
            const double var = std::max(0.0, sumsq.get() / b - mean * mean) * b / (b - 1);
            pt.upper_se = std::sqrt(var / b);
        }
        out.push_back(pt);
    }
    return out;
}

RateFit fit_rate_constant(std::span<const RatePoint> points)
{
    if (points.size() < 2)
        throw std::invalid_argument("fit_rate_constant: need at least two points");
    KahanSum<double> sx, sy, sxx, sxy;
    for (const RatePoint& pt : points) {
        const double logn = std::log(static_cast<double>(pt.n));
        const double x = 1.0 / logn;
        const double y = pt.lower_bound * pt.n / logn;
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double m = static_cast<double>(points.size());
    const double denom = m * sxx.get() - sx.get() * sx.get();
    RateFit fit;
    fit.slope = (m * sxy.get() - sx.get() * sy.get()) / denom;
    fit.intercept = (sy.get() - fit.slope * sx.get()) / m;
    return fit;
}

std::string to_csv(std::span<const RatePoint> points)
{
    std::string out = "n,sigma2_n,lower_bound,predicted,upper_bound_estimate,upper_se\n";
    char buf[192];
    for (const RatePoint& pt : points) {
        if (std::isnan(pt.upper_bound_estimate))
            std::snprintf(buf, sizeof(buf), "%d,%.17g,%.17g,%.17g,,\n", pt.n, pt.sigma2_n,
                          pt.lower_bound, pt.predicted);
        else
            std::snprintf(buf, sizeof(buf), "%d,%.17g,%.17g,%.17g,%.17g,%.17g\n", pt.n,
                          pt.sigma2_n, pt.lower_bound, pt.predicted, pt.upper_bound_estimate,
                          pt.upper_se);
        out += buf;
    }
    return out;
}

} // namespace insitu
