#include "insitu/recurrence.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

namespace insitu {

Rational ExactDistribution::probability_sum() const
{
    Rational total(0);
    for (const auto& [cost, p] : probabilities)
        total += p;
    return total;
}

Rational ExactDistribution::raw_moment(int order) const
{
    Rational total(0);
    for (const auto& [cost, p] : probabilities) {
        Rational term = p;
        for (int r = 0; r < order; ++r)
            term *= Rational(static_cast<long>(cost));
        total += term;
    }
    return total;
}

std::int64_t ExactDistribution::max_cost() const
{
    return probabilities.empty() ? 0 : probabilities.rbegin()->first;
}

ExactDistribution exact_distribution(int n, int cap)
{
    if (n < 1 || n > cap)
        throw std::invalid_argument("exact_distribution: n must be in [1, " +
                                    std::to_string(cap) + "], got " + std::to_string(n));

    // weights[k][c] = k! * P(X_k = c); integer throughout because
    // (n-1)!/(j!(n-1-j)!) is the binomial coefficient.
    std::vector<std::vector<BigInt>> weights(static_cast<std::size_t>(n) + 1);
    weights[0] = {BigInt(1)};
    if (n >= 1)
        weights[1] = {BigInt(1)};

    for (int k = 2; k <= n; ++k) {
        std::vector<BigInt> row(static_cast<std::size_t>(k) * (k - 1) / 2 + 1, BigInt(0));
        BigInt binom(1); // C(k-1, j)
        for (int j = 0; j < k; ++j) {
            const auto& left = weights[static_cast<std::size_t>(j)];
            const auto& right = weights[static_cast<std::size_t>(k - 1 - j)];
            for (std::size_t a = 0; a < left.size(); ++a) {
                if (left[a] == 0)
                    continue;
                BigInt scaled = binom * left[a];
                for (std::size_t b = 0; b < right.size(); ++b) {
                    if (right[b] != 0)
                        row[static_cast<std::size_t>(j) + a + b] += scaled * right[b];
                }
            }
            binom = binom * (k - 1 - j) / (j + 1);
        }
        weights[static_cast<std::size_t>(k)] = std::move(row);
    }

    BigInt factorial(1);
    for (int k = 2; k <= n; ++k)
        factorial *= k;

    ExactDistribution dist;
    dist.n = n;
    const auto& row = weights[static_cast<std::size_t>(n)];
    for (std::size_t c = 0; c < row.size(); ++c) {
        if (row[c] != 0) {
            Rational p(row[c], factorial);
            p.canonicalize();
            dist.probabilities.emplace(static_cast<std::int64_t>(c), std::move(p));
        }
    }
    return dist;
}

ExactDistribution distribution_from_counts(int n, const std::map<std::int64_t, BigInt>& counts,
                                           const BigInt& total)
{
    if (total <= 0)
        throw std::invalid_argument("distribution_from_counts: total must be positive");
    ExactDistribution dist;
    dist.n = n;
    for (const auto& [cost, count] : counts) {
        if (count != 0) {
            Rational p(count, total);
            p.canonicalize();
            dist.probabilities.emplace(cost, std::move(p));
        }
    }
    return dist;
}

std::string to_json(const ExactDistribution& dist)
{
    std::string out = "{\"n\": " + std::to_string(dist.n) + ", \"probabilities\": {";
    bool first = true;
    for (const auto& [cost, p] : dist.probabilities) {
        if (!first)
            out += ", ";
        first = false;
        out += "\"" + std::to_string(cost) + "\": \"" + rational_to_string(p) + "\"";
    }
    out += "}}";
    return out;
}

Rational MomentTable::variance_q(int n) const
{
    return second_q.at(static_cast<std::size_t>(n)) -
           mean_q.at(static_cast<std::size_t>(n)) * mean_q.at(static_cast<std::size_t>(n));
}

Rational MomentTable::kappa3_q(int n) const
{
    const Rational& m = mean_q.at(static_cast<std::size_t>(n));
    return third_q.at(static_cast<std::size_t>(n)) -
           Rational(3) * m * second_q.at(static_cast<std::size_t>(n)) + Rational(2) * m * m * m;
}

namespace {

void fill_rational(MomentTable& table, int n_max)
{
    auto& mean = table.mean_q;
    auto& second = table.second_q;
    auto& third = table.third_q;
    mean.assign(static_cast<std::size_t>(n_max) + 1, Rational(0));
    second.assign(static_cast<std::size_t>(n_max) + 1, Rational(0));
    third.assign(static_cast<std::size_t>(n_max) + 1, Rational(0));

    Rational sum_m(0), sum_s(0), sum_t(0), sum_jm(0), sum_j2m(0);

    for (int n = 1; n <= n_max; ++n) {
        const Rational nn(n);
        const Rational q = Rational(n - 1) * Rational(n) * Rational(2 * n - 1) / 6;
        const Rational half = Rational(n - 1) * Rational(n) / 2;
        const Rational cube = half * half;

        Rational cmm(0), csm(0);
        for (int j = 0; j < n; ++j) {
            const Rational& mr = mean[static_cast<std::size_t>(n - 1 - j)];
            cmm += mean[static_cast<std::size_t>(j)] * mr;
            csm += second[static_cast<std::size_t>(j)] * mr;
        }

        const Rational m_n = Rational(n - 1) / 2 + Rational(2) * sum_m / nn;
        const Rational s_n =
            (Rational(2) * sum_s + q + Rational(2) * cmm + Rational(2 * (n - 1)) * sum_m) / nn;
        const Rational cross3 = Rational(2) * csm + Rational(n - 1) * sum_s +
                                Rational(2) * sum_j2m +
                                Rational(n - 1) * Rational(n - 1) * sum_m -
                                Rational(2 * (n - 1)) * sum_jm;
        const Rational t_n = (Rational(2) * sum_t + cube + Rational(3) * cross3 +
                              Rational(3 * (n - 1)) * cmm) /
                             nn;

        mean[static_cast<std::size_t>(n)] = m_n;
        second[static_cast<std::size_t>(n)] = s_n;
        third[static_cast<std::size_t>(n)] = t_n;

        sum_m += m_n;
        sum_s += s_n;
        sum_t += t_n;
        sum_jm += Rational(n) * m_n;
        sum_j2m += Rational(n) * Rational(n) * m_n;
    }
}

} // namespace

MomentTable moments_exact(int n_max, MomentMode mode)
{
    if (n_max < 1)
        throw std::invalid_argument("moments_exact: n_max must be positive");
    if (mode == MomentMode::rational && n_max > kRationalMomentCap)
        throw std::invalid_argument("moments_exact: rational mode capped at n_max = " +
                                    std::to_string(kRationalMomentCap));
    if (mode == MomentMode::floating && n_max > kFloatMomentCap)
        throw std::invalid_argument("moments_exact: float mode capped at n_max = " +
                                    std::to_string(kFloatMomentCap));

    MomentTable table;
    table.mode = mode;
    table.n_max = n_max;

    if (mode == MomentMode::rational) {
        fill_rational(table, n_max);
        table.mean.resize(static_cast<std::size_t>(n_max) + 1);
        table.second_raw.resize(static_cast<std::size_t>(n_max) + 1);
        table.third_raw.resize(static_cast<std::size_t>(n_max) + 1);
        for (int n = 0; n <= n_max; ++n) {
            table.mean[static_cast<std::size_t>(n)] = table.mean_q[static_cast<std::size_t>(n)].get_d();
            table.second_raw[static_cast<std::size_t>(n)] =
                table.second_q[static_cast<std::size_t>(n)].get_d();
            table.third_raw[static_cast<std::size_t>(n)] =
                table.third_q[static_cast<std::size_t>(n)].get_d();
        }
    } else {
        auto raw = detail::compute_float_moments<double>(n_max);
        table.mean = std::move(raw.mean);
        table.second_raw = std::move(raw.second);
        table.third_raw = std::move(raw.third);
    }
    return table;
}

std::string to_csv(const MomentTable& table)
{
    std::string out = "n,mean,variance,kappa3,sigma2_n\n";
    char buf[128];
    for (int n = 0; n <= table.n_max; ++n) {
        if (n == 0) {
            out += "0,0,0,0,\n";
            continue;
        }
        std::snprintf(buf, sizeof(buf), "%d,%.17g,%.17g,%.17g,%.17g\n", n, table.mean[static_cast<std::size_t>(n)],
                      table.variance(n), table.kappa3(n), table.sigma2_n(n));
        out += buf;
    }
    return out;
}

std::vector<Residual> asymptotic_residuals(const MomentTable& table,
                                           std::span<const int> n_values, double m3)
{
    constexpr double gamma = std::numbers::egamma_v<double>;
    const double sigma2 = 2.0 - std::numbers::pi_v<double> * std::numbers::pi_v<double> / 6.0;

    std::vector<Residual> out;
    out.reserve(n_values.size());
    for (int n : n_values) {
        if (n < 1 || n > table.n_max)
            throw std::out_of_range("asymptotic_residuals: n = " + std::to_string(n) +
                                    " not in table");
        const double nd = n;
        const double logn = std::log(nd);
        Residual r;
        r.n = n;
        r.mean_residual = table.mean[static_cast<std::size_t>(n)] - nd * logn - (gamma - 2.0) * nd;
        r.variance_residual = nd * (sigma2 - logn / nd - table.sigma2_n(n));
        r.cumulant_residual = table.kappa3(n) / (nd * nd * nd) - m3;
        out.push_back(r);
    }
    return out;
}

} // namespace insitu
