#pragma once

#include "insitu/recurrence.hpp"
#include "insitu/rng.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace insitu {

// Toll of the limit fixed-point equation Y = U Y + (1-U) Y* + C(U):
// C(u) = (1-u) ln(1-u) + u ln u + u, with 0 ln 0 := 0 at the endpoints.
double toll_C(double u);

struct LimitConstants {
    double gamma = 0;  // Euler's constant
    double sigma2 = 0; // 2 - pi^2/6, the limit variance
    double A = 0;      // integral of C(u) (u^2 + (1-u)^2)
    double B = 0;      // integral of C^3(u)
    double M3 = 0;     // E Y^3 = 2 (3 sigma2 A + B)
    // Consistency integrals: E Y = 0 forces integral_C = 0 and the
    // second-moment identity forces three_integral_C2 = sigma2.
    double integral_C = 0;
    double three_integral_C2 = 0;
};

LimitConstants limit_constants(double quadrature_tolerance = 1e-10);

std::string to_json(const LimitConstants& c);

// Samples approximating the law of Y after `generation` steps of the
// population iteration (all zeros at generation 0).
struct LimitPool {
    std::vector<double> values;
    std::int64_t generation = 0;
};

// Population iteration for the fixed point: each generation resamples two
// parents from the previous pool and applies the map. Per-sample streams
// derive from (seed, generation, index); `threads` does not affect output.
LimitPool simulate_limit(std::int64_t pool_size, std::int64_t generations, std::uint64_t seed,
                         int threads = 1);

// Draws of Y_n = (X_n - m_n)/n via the integer-exact split recursion for
// X_n. Needs table.mean up to n. Deterministic given (n, trials, seed).
std::vector<double> simulate_Yn(int n, std::int64_t trials, const MomentTable& table,
                                std::uint64_t seed, int threads = 1);

// Finite-n toll C_n(k) = (mu(k) + mu(n-1-k) - mu(n) + k)/n of the
// normalized recurrence; rational form averages to exactly zero over k.
Rational finite_toll_q(const MomentTable& table, int n, int k);
double finite_toll(const MomentTable& table, int n, int k);

} // namespace insitu
