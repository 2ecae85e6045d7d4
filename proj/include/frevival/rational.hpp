#pragma once

#include <cstdint>
#include <optional>

namespace frevival {

// Reduced fraction num/den with den > 0.
struct Fraction {
    std::int64_t num = 0;
    std::int64_t den = 1;
};

struct Reconstruction {
    Fraction value;
    double residual = 0.0;  // |x - num/den|
};

// Best rational approximation to x among all fractions with denominator
// <= max_den, via the continued-fraction expansion (convergents plus the
// closing semiconvergent). Deterministic; never fails.
Reconstruction reconstruct_rational(double x, std::int64_t max_den);

std::int64_t gcd64(std::int64_t a, std::int64_t b);

// lcm(a, b) for positive arguments, or nullopt if it would exceed int64.
std::optional<std::int64_t> checked_lcm(std::int64_t a, std::int64_t b);

}  // namespace frevival
