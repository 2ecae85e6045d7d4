#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "frevival/bigint.hpp"
#include "frevival/graph.hpp"

namespace frevival {

// Integer polynomial, coefficient of y^k at index k. Kept trimmed (no
// leading zero coefficients); the zero polynomial has an empty vector.
struct IntPoly {
    std::vector<BigInt> coeffs;

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
    bool is_zero() const { return coeffs.empty(); }
    void trim();
    const BigInt& leading() const { return coeffs.back(); }
};

IntPoly poly_from_int64(std::vector<std::int64_t> coeffs);
IntPoly poly_add(const IntPoly& a, const IntPoly& b);
IntPoly poly_sub(const IntPoly& a, const IntPoly& b);
IntPoly poly_mul(const IntPoly& a, const IntPoly& b);
IntPoly poly_scale(const IntPoly& a, const BigInt& c);
IntPoly poly_derivative(const IntPoly& a);
BigInt poly_content(const IntPoly& a);          // gcd of coefficients, >= 0
IntPoly poly_primitive_part(const IntPoly& a);  // sign normalized to positive leading coeff

// Pseudo-division: lc(b)^k * a = q*b + r with deg r < deg b. Returns q, r.
void poly_pseudo_divmod(const IntPoly& a, const IntPoly& b, IntPoly& q, IntPoly& r);

// Primitive gcd over Q[y] (defined up to a rational scalar).
IntPoly poly_gcd(IntPoly a, IntPoly b);

// Exact division a / b when b divides a up to the pseudo-division scalar;
// returns the primitive part of the quotient.
IntPoly poly_quotient_primitive(const IntPoly& a, const IntPoly& b);

// Exact square root, or nullopt if a is not the square of an integer
// polynomial. Result normalized to positive leading coefficient.
std::optional<IntPoly> poly_sqrt(const IntPoly& a);

// True iff gcd(a, a') is constant.
bool poly_squarefree(const IntPoly& a);

std::vector<double> poly_to_double(const IntPoly& a);

// Characteristic polynomial det(yI - A) via the division-free
// Samuelson-Berkowitz scheme. Requires integer weights.
IntPoly char_poly_exact(const WeightedGraph& g);
IntPoly char_poly_exact_deleted(const WeightedGraph& g, const std::vector<int>& removed);

// Numeric characteristic polynomial (ascending coefficients) from the
// eigenvalues, for real-weighted graphs.
std::vector<double> char_poly_numeric(const Eigen::MatrixXd& a);

}  // namespace frevival
