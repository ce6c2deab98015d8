#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "insitu/metrics.hpp"
#include "insitu/rng.hpp"

#include <cmath>
#include <vector>

using namespace insitu;

namespace {

std::vector<double> random_samples(SplitMix64& rng, std::size_t count, double scale)
{
    std::vector<double> v(count);
    for (double& x : v)
        x = scale * (rng.next_double() - 0.5) + rng.next_double() * rng.next_double();
    return v;
}

} // namespace

TEST_CASE("lp distance on degenerate inputs")
{
    std::vector<double> a{3.0, -1.0, 2.5, 0.0};
    CHECK(lp_distance_empirical(a, a, 1.0) == 0.0);
    CHECK(lp_distance_empirical(a, a, 3.0) == 0.0);

    std::vector<double> zeros(10, 0.0);
    std::vector<double> cs(10, -2.5);
    CHECK(lp_distance_empirical(zeros, cs, 2.0) == doctest::Approx(2.5).epsilon(1e-15));

    // Translation shifts every quantile by c.
    std::vector<double> shifted = a;
    for (double& x : shifted)
        x += 1.75;
    for (double p : {1.0, 2.0, 3.0, 7.5})
        CHECK(lp_distance_empirical(a, shifted, p) == doctest::Approx(1.75).epsilon(1e-12));
}

TEST_CASE("lp distance argument validation")
{
    std::vector<double> a{1.0, 2.0};
    std::vector<double> b{1.0};
    std::vector<double> empty;
    CHECK_THROWS_AS(lp_distance_empirical(a, b, 2.0), std::domain_error);
    CHECK_THROWS_AS(lp_distance_empirical(empty, empty, 2.0), std::domain_error);
    CHECK_THROWS_AS(lp_distance_empirical(a, a, 0.5), std::domain_error);
}

TEST_CASE("lp distance triangle inequality (property)")
{
    SplitMix64 rng(404);
    for (int rep = 0; rep < 50; ++rep) {
        auto a = random_samples(rng, 64, 2.0);
        auto b = random_samples(rng, 64, 0.5);
        auto c = random_samples(rng, 64, 3.0);
        for (double p : {1.0, 2.0, 3.0}) {
            const double ab = lp_distance_empirical(a, b, p);
            const double bc = lp_distance_empirical(b, c, p);
            const double ac = lp_distance_empirical(a, c, p);
            CHECK(ac <= ab + bc + 1e-12);
        }
    }
}

TEST_CASE("lp distance nondecreasing in p (property)")
{
    SplitMix64 rng(505);
    for (int rep = 0; rep < 30; ++rep) {
        auto a = random_samples(rng, 128, 1.0);
        auto b = random_samples(rng, 128, 2.0);
        double prev = 0;
        for (double p : {1.0, 1.5, 2.0, 3.0, 5.0}) {
            const double d = lp_distance_empirical(a, b, p);
            CHECK(d >= prev - 1e-12);
            prev = d;
        }
    }
}

TEST_CASE("zeta3 bound formulas")
{
    CHECK(zeta3_lower_bound(0.7, 0.7) == 0.0);
    CHECK(zeta3_lower_bound(1.0, 0.0) == doctest::Approx(1.0 / 6.0).epsilon(1e-15));

    CHECK(zeta3_upper_bound(2.0, 3.0, 0.0) == 0.0);
    CHECK(zeta3_upper_bound(1.0, 1.0, 1.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK_THROWS_AS(zeta3_upper_bound(-1.0, 1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(zeta3_upper_bound(1.0, 1.0, -1.0), std::domain_error);
}

TEST_CASE("zeta3 bounds scale as |c|^3 (order-3 ideality)")
{
    SplitMix64 rng(606);
    for (int rep = 0; rep < 20; ++rep) {
        const double a = 4.0 * (rng.next_double() - 0.5);
        const double b = 4.0 * (rng.next_double() - 0.5);
        const double c = 3.0 * (rng.next_double() - 0.5);
        const double c3 = std::abs(c) * c * c * (c < 0 ? -1.0 : 1.0);
        CHECK(zeta3_lower_bound(c3 * a, c3 * b) ==
              doctest::Approx(std::abs(c * c * c) * zeta3_lower_bound(a, b)).epsilon(1e-12));

        const double nv = rng.next_double(), nw = rng.next_double(), l3 = rng.next_double();
        const double ac = std::abs(c);
        CHECK(zeta3_upper_bound(ac * nv, ac * nw, ac * l3) ==
              doctest::Approx(ac * ac * ac * zeta3_upper_bound(nv, nw, l3)).epsilon(1e-12));
    }
}

TEST_CASE("lower bound at n = 3 from exact moments")
{
    auto table = moments_exact(3, MomentMode::rational);
    auto constants = limit_constants(1e-10);
    const double sigma3 = std::pow(constants.sigma2, 1.5);

    // kappa3(3)/(n^3 sigma^3(n)) with kappa3 = 11/27 and sigma2(3) = 8/81.
    const double std_third = (11.0 / 27.0) / (27.0 * std::pow(8.0 / 81.0, 1.5));
    const double expected = std::abs(std_third - constants.M3 / sigma3) / 6.0;

    auto pts = rate_series(std::vector<int>{3}, table, constants);
    REQUIRE(pts.size() == 1);
    CHECK(pts[0].sigma2_n == doctest::Approx(8.0 / 81.0).epsilon(1e-14));
    CHECK(pts[0].lower_bound == doctest::Approx(expected).epsilon(1e-12));
    CHECK(std::isnan(pts[0].upper_bound_estimate));
}

TEST_CASE("rate series excludes n < 2 and validates table coverage")
{
    auto table = moments_exact(100, MomentMode::floating);
    auto constants = limit_constants(1e-10);
    auto pts = rate_series(std::vector<int>{1, 2, 50}, table, constants);
    CHECK(pts.size() == 2);
    CHECK(pts[0].n == 2);
    CHECK_THROWS_AS(rate_series(std::vector<int>{101}, table, constants), std::out_of_range);
}

TEST_CASE("rate fit recovers a synthetic affine law")
{
    // lower = (c + d / ln n) ln n / n  =>  y = c + d x exactly.
    const double c = 0.51, d = -1.3;
    std::vector<RatePoint> pts;
    for (int n : {500, 1000, 3000, 9000, 27000}) {
        RatePoint pt;
        pt.n = n;
        const double logn = std::log(static_cast<double>(n));
        pt.lower_bound = (c + d / logn) * logn / n;
        pts.push_back(pt);
    }
    auto fit = fit_rate_constant(pts);
    CHECK(fit.intercept == doctest::Approx(c).epsilon(1e-9));
    CHECK(fit.slope == doctest::Approx(d).epsilon(1e-9));
    CHECK_THROWS_AS(fit_rate_constant(std::vector<RatePoint>{pts[0]}), std::invalid_argument);
}

TEST_CASE("sandwich holds at a Monte Carlo rate point")
{
    auto table = moments_exact(300, MomentMode::floating);
    auto constants = limit_constants(1e-10);
    McConfig mc;
    mc.pool_size = 20000;
    mc.generations = 40;
    mc.trials = 5000;
    mc.batches = 10;
    mc.seed = 71;
    auto pts = rate_series(std::vector<int>{100, 300}, table, constants, mc);
    for (const auto& pt : pts) {
        CHECK(std::isfinite(pt.upper_bound_estimate));
        CHECK(pt.upper_se > 0);
        CHECK(pt.upper_bound_estimate + 3 * pt.upper_se >= pt.lower_bound);
    }

    auto csv = to_csv(pts);
    CHECK(csv.substr(0, csv.find('\n')) ==
          "n,sigma2_n,lower_bound,predicted,upper_bound_estimate,upper_se");
}

TEST_CASE("rate series csv leaves MC fields empty when disabled")
{
    auto table = moments_exact(50, MomentMode::floating);
    auto constants = limit_constants(1e-10);
    auto pts = rate_series(std::vector<int>{50}, table, constants);
    auto csv = to_csv(pts);
    CHECK(csv.find(",,\n") != std::string::npos);
}
