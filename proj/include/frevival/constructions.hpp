#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "frevival/graph.hpp"
#include "frevival/partition.hpp"

namespace frevival {

// Ground-truth prediction attached to a built graph: verify_k_fr at tau on
// the subset is expected to report the stated kind.
struct Prediction {
    std::vector<int> subset;
    double tau = 0.0;
    RevivalKind expected = RevivalKind::none;
    std::string note;
};

// Base families. Cocktail party vertices come in adjacent antipodal pairs
// (2i, 2i+1); the subdivided star orders center 0, middles 1..m, leaves
// m+1..2m; the rook graph is the line graph of K_{n,n} on vertex grid (i,j).
WeightedGraph cocktail_party(int pairs);
WeightedGraph subdivided_star(int m);
WeightedGraph hypercube(int d);
WeightedGraph rook_graph(int n);
WeightedGraph complete_graph(int n);
WeightedGraph complement_graph(const WeightedGraph& g);

std::vector<Prediction> base_predictions(const std::string& kind, const WeightedGraph& g,
                                         int parameter);

// Products with lexicographic vertex order (x, y) -> x*|Y| + y.
WeightedGraph cartesian_product(const WeightedGraph& x, const WeightedGraph& y);
WeightedGraph direct_product(const WeightedGraph& x, const WeightedGraph& y);

// [[A_X, A_Y], [A_Y, A_X]] on vertex set V x {0, 1}.
WeightedGraph double_cover(const WeightedGraph& x, const WeightedGraph& y);
WeightedGraph switching_graph(const WeightedGraph& y);  // pairs J - I - A_Y with A_Y

// U(t) of the double cover via the 2x2 block formula when A_X and A_Y
// commute, otherwise by direct spectral exponentiation of the full matrix.
Eigen::MatrixXcd double_cover_transition(const WeightedGraph& x, const WeightedGraph& y, double t);

struct JoinResult {
    WeightedGraph graph;
    double tau_pred = 0.0;
    double alpha1 = 0.0, alpha2 = 0.0;  // roots of n x^2 - (k-h) x - m
    double theta1 = 0.0, theta2 = 0.0;  // n alpha_j + h
    double degree_x = 0.0, degree_y = 0.0;
};

// Join of regular graphs with the predicted V(X)-revival time
// tau = 2 pi / (theta_2 - theta_1).
JoinResult join_graphs(const WeightedGraph& x, const WeightedGraph& y);

struct CoverPrediction {
    std::int64_t n = 0, r = 0, c = 0;
    std::int64_t delta = 0;  // n - 2 - r c
    double eigenvalues[4] = {0, 0, 0, 0};
    std::optional<double> tau;  // present iff delta = +-2 and n = 4 m^2
    int m = 0;
};

// Parameter-level prediction for antipodal distance-regular r-fold covers of
// K_n; feasibility of the cover itself is not checked.
CoverPrediction cover_fr_prediction(std::int64_t n, std::int64_t r, std::int64_t c);

// Largest deviation of U(tau) from I_n (x) (e^{-i theta_3 tau} I_r +
// (e^{-i theta_1 tau} - e^{-i theta_3 tau})/r J_r) on a user-supplied cover,
// with the fibre structure given as a partition of the vertices.
double cover_fibre_residual(const WeightedGraph& g, const std::vector<std::vector<int>>& fibres,
                            const CoverPrediction& prediction);

struct PolygamyResult {
    WeightedGraph graph;  // L = (1/n) H D H^T as a weighted matrix
    std::vector<std::int64_t> lambda;
    std::vector<std::int64_t> primes;
    std::vector<Prediction> predictions;
};

// Hadamard/CRT family with fractional revival between every vertex pair.
// The first overload uses the Sylvester Hadamard matrix of order 2^m; the
// second accepts any normalized Hadamard matrix (pair predictions only
// involve vertex 0 then, since vertex transitivity is Sylvester-specific).
PolygamyResult hadamard_polygamy(int m, std::vector<std::int64_t> primes);
PolygamyResult hadamard_polygamy(const Eigen::MatrixXd& hadamard, std::vector<std::int64_t> primes);

struct PrescribedResult {
    WeightedGraph graph;
    double tau = 0.0;
    double theta[4] = {0, 0, 0, 0};
    double filler = 0.0;
    double p = 0.0, q = 0.0;
    std::complex<double> lambda1, lambda2;
    int block_m = 0;
    std::int64_t sigma = 1, omega = 1;
};

// Weighted graph on n >= 4 vertices with U(tau) block diagonal and
// U(tau)|_{0,1} equal to the prescribed 2x2 symmetric unitary H.
PrescribedResult prescribed_fr(const Eigen::Matrix2cd& h, double tau, int n,
                               std::optional<int> m = std::nullopt, std::int64_t sigma = 1,
                               std::int64_t omega = 1);

struct DirectProductCheck {
    bool constant = false;       // U_Y(theta_r t) agrees across the spectrum of X
    Eigen::MatrixXcd block;      // the common factor when constant
    double max_deviation = 0.0;
};

// Checker for the direct-product revival pattern: fibre revival occurs at t
// when U_Y(theta_r t) is one fixed non-diagonal matrix for every theta_r.
DirectProductCheck direct_product_fr_check(const WeightedGraph& x, const WeightedGraph& y,
                                           double t, double tol);

}  // namespace frevival
