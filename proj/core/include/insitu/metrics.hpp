#pragma once

#include "insitu/limit_law.hpp"
#include "insitu/recurrence.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace insitu {

// Empirical minimal l_p distance between two equal-size sample sets via
// the quantile coupling (sort both, average |a_(i) - b_(i)|^p).
double lp_distance_empirical(std::span<const double> a, std::span<const double> b, double p);

// Moment sandwich for the order-3 Zolotarev metric, valid for variables
// with identical first and second moments.
double zeta3_lower_bound(double third_moment_v, double third_moment_w);
double zeta3_upper_bound(double norm3_v, double norm3_w, double l3);

struct RatePoint {
    int n = 0;
    double sigma2_n = 0;
    double lower_bound = 0;            // deterministic, from exact moments
    double predicted = 0;              // (M3 / (4 sigma^5)) ln n / n
    double upper_bound_estimate = 0;   // NaN when Monte Carlo disabled
    double upper_se = 0;               // NaN when Monte Carlo disabled
};

struct McConfig {
    std::int64_t pool_size = 100000;
    std::int64_t generations = 50;
    std::int64_t trials = 20000;
    int batches = 10;
    std::uint64_t seed = 1;
    int threads = 1;
};

// One point per n >= 2 (zero-variance n are excluded). With mc set, the
// upper bound comes from sampled L3 norms and the empirical l3 between
// standardized Y_n and X = Y/sigma; its s.e. is estimated by batching.
std::vector<RatePoint> rate_series(std::span<const int> n_values, const MomentTable& table,
                                   const LimitConstants& constants,
                                   const std::optional<McConfig>& mc = std::nullopt);

struct RateFit {
    double intercept = 0; // estimate of the rate constant M3 / (4 sigma^5)
    double slope = 0;
};

// OLS of L_n * n / ln n against 1/ln n; the intercept extrapolates the
// leading rate constant past the O(1/ln n) finite-size correction.
RateFit fit_rate_constant(std::span<const RatePoint> points);

std::string to_csv(std::span<const RatePoint> points);

} // namespace insitu
