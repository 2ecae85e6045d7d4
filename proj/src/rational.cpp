#include "frevival/rational.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <numeric>

namespace frevival {

namespace {

double frac_residual(long double x, std::int64_t num, std::int64_t den) {
    return static_cast<double>(std::fabs(x - static_cast<long double>(num) / den));
}

}  // namespace

Reconstruction reconstruct_rational(double x, std::int64_t max_den) {
    if (max_den < 1) max_den = 1;
    const bool negative = x < 0.0;
    const long double ax = std::fabs(static_cast<long double>(x));

    // Convergent recurrences p_k = a_k p_{k-1} + p_{k-2}, seeded with
    // p_{-2}/q_{-2} = 0/1 and p_{-1}/q_{-1} = 1/0.
    std::int64_t pm2 = 0, qm2 = 1;
    std::int64_t pm1 = 1, qm1 = 0;
    std::int64_t best_p = 0, best_q = 1;
    bool have = false;
    long double y = ax;

    for (int iter = 0; iter < 64; ++iter) {
        const long double fterm = std::floor(y);
        if (fterm > 4e18L) break;  // expansion has effectively terminated
        const std::int64_t term = static_cast<std::int64_t>(fterm);

        const __int128 p128 = static_cast<__int128>(term) * pm1 + pm2;
        const __int128 q128 = static_cast<__int128>(term) * qm1 + qm2;
        if (q128 > max_den) {
            // Largest semiconvergent under the cap may beat the last convergent.
            const std::int64_t t = qm1 > 0 ? (max_den - qm2) / qm1 : 0;
            if (t > 0) {
                const std::int64_t ps = pm2 + t * pm1;
                const std::int64_t qs = qm2 + t * qm1;
                if (qs >= 1 &&
                    (!have || frac_residual(ax, ps, qs) < frac_residual(ax, best_p, best_q))) {
                    best_p = ps;
                    best_q = qs;
                    have = true;
                }
            }
            break;
        }
        if (p128 > std::numeric_limits<std::int64_t>::max()) break;

        pm2 = pm1;
        qm2 = qm1;
        pm1 = static_cast<std::int64_t>(p128);
        qm1 = static_cast<std::int64_t>(q128);
        best_p = pm1;
        best_q = qm1;
        have = true;

        const long double rem = y - fterm;
        if (rem <= 0.0L) break;
        y = 1.0L / rem;
    }

    if (!have) {
        best_p = static_cast<std::int64_t>(std::min<long double>(ax, 4e18L));
        best_q = 1;
    }
    const std::int64_t g = gcd64(best_p, best_q);
    if (g > 1) {
        best_p /= g;
        best_q /= g;
    }
    Reconstruction out;
    out.value.num = negative ? -best_p : best_p;
    out.value.den = best_q;
    out.residual = frac_residual(ax, best_p, best_q);
    return out;
}

std::int64_t gcd64(std::int64_t a, std::int64_t b) {
    return std::gcd(std::llabs(a), std::llabs(b));
}

std::optional<std::int64_t> checked_lcm(std::int64_t a, std::int64_t b) {
    if (a <= 0 || b <= 0) return std::nullopt;
    const std::int64_t g = gcd64(a, b);
    const __int128 l = static_cast<__int128>(a / g) * b;
    if (l > std::numeric_limits<std::int64_t>::max()) return std::nullopt;
    return static_cast<std::int64_t>(l);
}

}  // namespace frevival
