#pragma once

#include "insitu/kahan.hpp"
#include "insitu/rational.hpp"

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace insitu {

inline constexpr int kDefaultDistributionCap = 40;
inline constexpr int kRationalMomentCap = 200;
inline constexpr int kFloatMomentCap = 30000;

// Exact law of the major cost X_n. Only strictly positive probabilities
// are stored; keys are costs in [0, n(n-1)/2].
struct ExactDistribution {
    int n = 0;
    std::map<std::int64_t, Rational> probabilities;

    Rational probability_sum() const;
    Rational raw_moment(int order) const; // sum k^order * p(k)
    std::int64_t max_cost() const;
};

// Bottom-up dynamic program for the split recurrence
//   X_n = X_J + X'_{n-1-J} + J,  J uniform on {0,...,n-1}.
// Internally works on integer weights n! * P(X_n = k).
ExactDistribution exact_distribution(int n, int cap = kDefaultDistributionCap);

// Assemble a distribution from integer tallies (used by the brute-force
// enumeration); probabilities become count/total in lowest terms.
ExactDistribution distribution_from_counts(int n,
                                           const std::map<std::int64_t, BigInt>& counts,
                                           const BigInt& total);

std::string to_json(const ExactDistribution& dist);

enum class MomentMode { rational, floating };

// First three raw moments of X_n for n in [0, n_max], plus derived
// variance, third cumulant and normalized variance sigma2(n) = Var/n^2.
// Rational mode keeps exact values alongside the double view.
struct MomentTable {
    MomentMode mode = MomentMode::floating;
    int n_max = 0;

    std::vector<double> mean;       // m_n
    std::vector<double> second_raw; // s_n = E X_n^2
    std::vector<double> third_raw;  // t_n = E X_n^3

    std::vector<Rational> mean_q, second_q, third_q; // rational mode only

    double variance(int n) const { return second_raw[n] - mean[n] * mean[n]; }
    double kappa3(int n) const
    {
        const double m = mean[n];
        return third_raw[n] - 3.0 * m * second_raw[n] + 2.0 * m * m * m;
    }
    double sigma2_n(int n) const { return variance(n) / (static_cast<double>(n) * n); }

    Rational variance_q(int n) const;
    Rational kappa3_q(int n) const;
};

MomentTable moments_exact(int n_max, MomentMode mode);

std::string to_csv(const MomentTable& table);

struct Residual {
    int n = 0;
    double mean_residual = 0;     // m_n - n ln n - (gamma-2) n
    double variance_residual = 0; // n * (sigma^2 - ln n / n - v_n/n^2)
    double cumulant_residual = 0; // kappa3(n)/n^3 - M3
};

std::vector<Residual> asymptotic_residuals(const MomentTable& table,
                                           std::span<const int> n_values, double m3);

namespace detail {

// Float-mode moment recurrences, templated on the accumulator type so a
// long-double pass can cross-check the binary64 one. Per-row cost is one
// O(n) convolution loop; everything else comes from running prefix sums.
template <class Real>
struct RawMoments {
    std::vector<Real> mean, second, third;
};

template <class Real>
RawMoments<Real> compute_float_moments(int n_max)
{
    RawMoments<Real> r;
    r.mean.assign(static_cast<std::size_t>(n_max) + 1, Real(0));
    r.second.assign(static_cast<std::size_t>(n_max) + 1, Real(0));
    r.third.assign(static_cast<std::size_t>(n_max) + 1, Real(0));

    KahanSum<Real> sum_m, sum_s, sum_t;   // prefix sums over j < n
    KahanSum<Real> sum_jm, sum_j2m;       // sums of j*m_j and j^2*m_j

    for (int n = 1; n <= n_max; ++n) {
        const Real nn(n);
        const Real q = Real(n - 1) * Real(n) * Real(2 * n - 1) / Real(6); // sum j^2
        const Real half_n1n = Real(n - 1) * Real(n) / Real(2);
        const Real cube = half_n1n * half_n1n;                            // sum j^3

        KahanSum<Real> conv_mm;  // sum_j m_j * m_{n-1-j}
        KahanSum<Real> conv_sm;  // sum_j s_j * m_{n-1-j}
        for (int j = 0; j < n; ++j) {
            const Real mr = r.mean[static_cast<std::size_t>(n - 1 - j)];
            conv_mm += r.mean[static_cast<std::size_t>(j)] * mr;
            conv_sm += r.second[static_cast<std::size_t>(j)] * mr;
        }
        const Real cmm = conv_mm.get();
        const Real csm = conv_sm.get();

        const Real sm = sum_m.get();
        const Real m_n = Real(n - 1) / Real(2) + Real(2) * sm / nn;

        const Real s_n =
            (Real(2) * sum_s.get() + q + Real(2) * cmm + Real(2) * Real(n - 1) * sm) / nn;

        // Symmetry of the convolution gives sum_j j*m_j*m_{n-1-j} = (n-1)/2 * cmm.
        const Real cross3 = Real(2) * csm + Real(n - 1) * sum_s.get() +
                            Real(2) * sum_j2m.get() + Real(n - 1) * Real(n - 1) * sm -
                            Real(2) * Real(n - 1) * sum_jm.get();
        const Real t_n =
            (Real(2) * sum_t.get() + cube + Real(3) * cross3 + Real(3) * Real(n - 1) * cmm) / nn;

        r.mean[static_cast<std::size_t>(n)] = m_n;
        r.second[static_cast<std::size_t>(n)] = s_n;
        r.third[static_cast<std::size_t>(n)] = t_n;

        sum_m += m_n;
        sum_s += s_n;
        sum_t += t_n;
        sum_jm += Real(n) * m_n;
        sum_j2m += Real(n) * Real(n) * m_n;
    }
    return r;
}

} // namespace detail

} // namespace insitu
