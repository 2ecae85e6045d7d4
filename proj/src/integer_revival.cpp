#include "frevival/integer_revival.hpp"

#include <algorithm>
#include <cmath>

#include "frevival/errors.hpp"
#include "frevival/rational.hpp"

namespace frevival {

std::int64_t squarefree_part(std::int64_t m) {
    if (m <= 0) fail("integer-revival/BadParameter", "squarefree_part needs a positive integer");
    std::int64_t rest = m, out = 1;
    for (std::int64_t f = 2; f <= rest / f; ++f) {
        int count = 0;
        while (rest % f == 0) {
            rest /= f;
            ++count;
        }
        if (count % 2 == 1) out *= f;
    }
    return out * rest;
}

namespace {

bool near_integer(double x, double tol, std::int64_t* rounded = nullptr) {
    const double r = std::nearbyint(x);
    if (rounded) *rounded = static_cast<std::int64_t>(r);
    return std::abs(x - r) <= tol;
}

// Quadratic-conjugate fallback: look for an eigenvalue pair with near-integer
// sum and product whose discriminant explains the differences.
std::optional<std::int64_t> delta_from_conjugate_pairs(const std::vector<double>& thetas,
                                                       const std::vector<double>& diffs) {
    for (std::size_t i = 0; i < thetas.size(); ++i) {
        for (std::size_t j = i + 1; j < thetas.size(); ++j) {
            const double sum = thetas[i] + thetas[j];
            const double prod = thetas[i] * thetas[j];
            std::int64_t u, v;
            if (!near_integer(sum, 1e-6, &u) || !near_integer(prod, 1e-6, &v)) continue;
            const std::int64_t disc = u * u - 4 * v;
            if (disc <= 0) continue;
            const std::int64_t cand = squarefree_part(disc);
            const double root = std::sqrt(static_cast<double>(cand));
            bool fits = true;
            for (double d : diffs)
                if (!near_integer(d / root, 1e-9 * (1.0 + std::abs(d)))) {
                    fits = false;
                    break;
                }
            if (fits) return cand;
        }
    }
    return std::nullopt;
}

}  // namespace

QuadraticExtraction extract_quadratic_data(const WeightedGraph& g, const SpectralDecomposition& s,
                                           const std::vector<int>& c1, const std::vector<int>& c2,
                                           const QuadraticExtractionOptions& opt) {
    if (opt.require_integer_weights && !g.integer_weighted)
        fail("integer-revival/NotIntegerWeighted",
             "quadratic spectrum extraction assumes integer weights");
    if (c1.empty() || c2.empty())
        fail("integer-revival/BadParameter", "both eigenvalue classes must be nonempty");

    QuadraticExtraction out;
    out.denominator_cap = opt.max_denominator;
    out.data.c1 = c1;
    out.data.c2 = c2;

    std::vector<double> diffs;
    for (const auto* cls : {&c1, &c2})
        for (std::size_t i = 0; i < cls->size(); ++i)
            for (std::size_t j = i + 1; j < cls->size(); ++j)
                diffs.push_back(std::abs(s.eigenvalues((*cls)[i]) - s.eigenvalues((*cls)[j])));

    double sqrt_delta = 1.0;
    std::int64_t delta = 1;

    if (diffs.empty()) {
        out.data.gcd_defaulted = true;  // no within-class gcd exists; g defaults to 1
    } else {
        // Reconstruct every difference as a rational multiple of the smallest,
        // giving the common base delta = d_min / lcm(denominators).
        const double d_min = *std::min_element(diffs.begin(), diffs.end());
        std::int64_t lcm = 1;
        for (double d : diffs) {
            const double x = d / d_min;
            const Reconstruction rec = reconstruct_rational(x, opt.max_denominator);
            if (rec.residual > 1e-13 * (1.0 + std::abs(x))) {
                out.failure = "NoCommonBase: difference ratio " + std::to_string(x) +
                              " admits no rational below the denominator cap";
                return out;
            }
            const auto next = checked_lcm(lcm, rec.value.den);
            if (!next) {
                out.failure = "NoCommonBase: denominator lcm overflow";
                return out;
            }
            lcm = *next;
        }
        const double base = d_min / static_cast<double>(lcm);

        std::int64_t base_sq;
        if (near_integer(base * base, 1e-6, &base_sq) && base_sq >= 1) {
            delta = squarefree_part(base_sq);
        } else {
            std::vector<double> thetas;
            for (const auto* cls : {&c1, &c2})
                for (int r : *cls) thetas.push_back(s.eigenvalues(r));
            const auto cand = delta_from_conjugate_pairs(thetas, diffs);
            if (!cand) {
                out.failure = "NoCommonBase: base^2 = " + std::to_string(base * base) +
                              " is not an integer and no quadratic-conjugate pair explains it";
                return out;
            }
            delta = *cand;
        }
        sqrt_delta = std::sqrt(static_cast<double>(delta));

        for (double d : diffs) {
            if (!near_integer(d / sqrt_delta, 1e-9 * (1.0 + std::abs(d / sqrt_delta)))) {
                out.failure = "NoCommonBase: difference " + std::to_string(d) +
                              " is not an integer multiple of sqrt(" + std::to_string(delta) + ")";
                return out;
            }
        }
    }

    out.data.delta = delta;
    out.data.sqrt_delta = sqrt_delta;

    auto anchor = [&](const std::vector<int>& cls, double& rho, std::vector<std::int64_t>& mult) {
        rho = s.eigenvalues(cls[0]);
        for (int r : cls) rho = std::min(rho, s.eigenvalues(r));
        for (int r : cls) {
            const double m = (s.eigenvalues(r) - rho) / sqrt_delta;
            std::int64_t mi;
            if (!near_integer(m, 1e-9 * (1.0 + std::abs(m)), &mi)) {
                out.failure = "NoCommonBase: class offset " + std::to_string(m) +
                              " is not an integer multiple of sqrt(Delta)";
                return false;
            }
            mult.push_back(mi);
        }
        return true;
    };
    if (!anchor(c1, out.data.rho1, out.data.sigma)) return out;
    if (!anchor(c2, out.data.rho2, out.data.omega)) return out;

    std::int64_t g_val = 0;
    for (const auto* mult : {&out.data.sigma, &out.data.omega}) {
        for (std::size_t i = 0; i < mult->size(); ++i)
            for (std::size_t j = i + 1; j < mult->size(); ++j)
                g_val = gcd64(g_val, (*mult)[i] - (*mult)[j]);
    }
    out.data.g = g_val == 0 ? 1 : g_val;
    out.ok = true;
    return out;
}

bool proper_fr_at(const QuadraticSpectrumData& data, std::int64_t k, double tol) {
    const double gs = static_cast<double>(data.g) * data.sqrt_delta;
    for (std::size_t h = 0; h < data.sigma.size(); ++h) {
        for (std::size_t j = 0; j < data.omega.size(); ++j) {
            const double x = static_cast<double>(k) *
                             (data.rho2 - data.rho1 +
                              static_cast<double>(data.omega[j] - data.sigma[h]) * data.sqrt_delta) /
                             gs;
            if (!std::isfinite(x)) continue;
            if (std::abs(x - std::nearbyint(x)) > tol) return true;
        }
    }
    return false;
}

std::optional<MinimalProperTime> minimal_proper_time(const QuadraticSpectrumData& data,
                                                     double tol) {
    // The theorem horizon is g * Delta * 2^20; in practice the answer is k = 1
    // or no k at all (the phase tests scale linearly in k), so the scan is
    // clamped, and the tolerance grows with k so that floating-point noise in
    // the k = 1 phases cannot masquerade as a first revival at a giant k.
    const std::int64_t clamp = std::int64_t(1) << 22;
    std::int64_t cap = clamp;
    if (data.g < clamp && data.delta < clamp) {
        const __int128 stated =
            static_cast<__int128>(data.g) * data.delta * (std::int64_t(1) << 20);
        cap = static_cast<std::int64_t>(std::min<__int128>(stated, clamp));
    }
    if (cap < 1) fail("integer-revival/HorizonExceeded", "empty scan horizon");

    for (std::int64_t k = 1; k <= cap; ++k) {
        if (proper_fr_at(data, k, tol * static_cast<double>(k))) {
            MinimalProperTime out;
            out.k = k;
            out.tau = 2.0 * M_PI * static_cast<double>(k) /
                      (static_cast<double>(data.g) * data.sqrt_delta);
            out.warned_k_gt_1 = k > 1;
            return out;
        }
    }
    return std::nullopt;
}

}  // namespace frevival
