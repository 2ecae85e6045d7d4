#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "frevival/graph.hpp"
#include "frevival/spectral.hpp"

namespace frevival {

// Quadratic-integer structure of the eigenvalues on the classes C_1, C_2 of a
// strongly fractionally cospectral pair: theta = rho + (integer) * sqrt(Delta)
// with Delta square-free (Delta = 1 encodes the all-rational case), anchored
// so that min sigma = min omega = 0.
struct QuadraticSpectrumData {
    std::int64_t delta = 1;
    double sqrt_delta = 1.0;
    double rho1 = 0.0, rho2 = 0.0;
    std::vector<std::int64_t> sigma;  // parallel to c1
    std::vector<std::int64_t> omega;  // parallel to c2
    std::int64_t g = 1;               // gcd of within-class multiples of sqrt(Delta)
    bool gcd_defaulted = false;       // both classes singletons; g fell back to 1
    std::vector<int> c1, c2;          // eigenvalue indices
};

struct QuadraticExtractionOptions {
    std::int64_t max_denominator = 1000000;
    // The theorem hypothesis; the extraction itself only needs the spectrum,
    // so callers with integer spectra on rational-weighted graphs may relax it.
    bool require_integer_weights = true;
};

struct QuadraticExtraction {
    bool ok = false;
    QuadraticSpectrumData data;
    std::string failure;  // "NoCommonBase" with detail when !ok
    std::int64_t denominator_cap = 0;
};

QuadraticExtraction extract_quadratic_data(const WeightedGraph& g, const SpectralDecomposition& s,
                                           const std::vector<int>& c1, const std::vector<int>& c2,
                                           const QuadraticExtractionOptions& opt = {});

// Proper fractional revival occurs at tau = 2 pi k / (g sqrt(Delta)) iff some
// cross-class phase test (k/(g sqrt(Delta))) (rho2 - rho1 + (omega-sigma) sqrt(Delta))
// is not an integer.
bool proper_fr_at(const QuadraticSpectrumData& data, std::int64_t k, double tol = 1e-9);

struct MinimalProperTime {
    double tau = 0.0;
    std::int64_t k = 0;
    bool warned_k_gt_1 = false;
};

// Least k >= 1 with proper_fr_at(k); nullopt when the phase lattice admits no
// proper time (e.g. both classes singletons with integer phase offsets).
std::optional<MinimalProperTime> minimal_proper_time(const QuadraticSpectrumData& data,
                                                     double tol = 1e-9);

std::int64_t squarefree_part(std::int64_t m);

}  // namespace frevival
