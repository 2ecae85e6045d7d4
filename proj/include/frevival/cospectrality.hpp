#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "frevival/partition.hpp"
#include "frevival/polynomial.hpp"
#include "frevival/spectral.hpp"

namespace frevival {

// Verdicts for one vertex pair. (p, q) follow the sign convention p > 0,
// q > 0 with p^2 + q^2 = 1: of the two shared eigenvectors (p,q) and (-q,p)
// of the restricted idempotents, the class-1 direction is the one with both
// components of equal sign. (p,q) and (-p,-q) are identified.
struct PairCospectralityReport {
    int a = 0, b = 0;
    std::optional<double> p, q;
    std::optional<double> ratio_plus;   // p/q
    std::optional<double> ratio_minus;  // -q/p
    bool fractionally_cospectral = false;
    bool cospectral = false;
    bool parallel = false;
    bool strongly_fractionally_cospectral = false;
    std::vector<int> class_plus;   // C_1: E_r e_a =  (p/q)  E_r e_b
    std::vector<int> class_minus;  // C_2: E_r e_a = (-q/p) E_r e_b
    std::vector<int> class_zero;   // E_r e_a = E_r e_b = 0
    std::map<std::string, bool> per_condition;  // "i","iii","iv","vi","vii","viii"
    bool no_nondiagonal_restriction = false;
    std::vector<std::string> notes;
};

// 2x2 restrictions E~_r of every principal idempotent to rows/columns {a, b}.
std::vector<Eigen::Matrix2d> restricted_idempotents(const SpectralDecomposition& s, int a, int b);

// Decides fractional cospectrality via pairwise commutation of the E~_r
// (condition i), recovers (p, q) by simultaneous diagonalization, and checks
// the diagonal-difference identity (condition iii) and module orthogonality
// (condition viii).
PairCospectralityReport fractional_cospectral(const SpectralDecomposition& s, int a, int b,
                                              double tol);

struct WalkConditionResult {
    bool power_identity = false;       // condition iv, k = 0..k_max
    bool walk_matrix_identity = false; // condition vi
    bool holds() const { return power_identity && walk_matrix_identity; }
};

// (A^k)_aa - (A^k)_bb = (p/q - q/p) (A^k)_ab for k = 0..k_max, plus the walk
// matrix Gram form. Uses exact integer arithmetic when the graph is integer
// weighted and p/q reconstructs as a rational number.
WalkConditionResult walk_condition(const WeightedGraph& g, int a, int b, double p, double q,
                                   int k_max = -1);

// phi(X\a) - phi(X\b) = (p/q - q/p) sqrt(phi(X\a)phi(X\b) - phi(X)phi(X\ab))
// as a polynomial identity; the radicand must be a perfect square.
bool charpoly_condition(const WeightedGraph& g, int a, int b, double p, double q,
                        double tol = 1e-9);

// E_r e_a parallel to E_r e_b for every r. When exactly one of the two
// vanishes the pair is not parallel for that r.
bool parallel_vertices(const SpectralDecomposition& s, int a, int b, double tol);

// Fractional cospectrality plus parallelism, with the class split of the
// eigenvalue indices cross-validated against P_min^{{a,b}}.
PairCospectralityReport strongly_fractionally_cospectral(const SpectralDecomposition& s, int a,
                                                         int b, double tol);

// All poles of phi(X\{a,b}, y) / phi(X, y) are simple.
bool simple_poles_check(const WeightedGraph& g, int a, int b);

// Solve-mode deciders: each returns the ratio c = p/q - q/p when the
// corresponding characterization admits one, nullopt otherwise.
std::optional<double> solve_ratio_from_idempotents(const SpectralDecomposition& s, int a, int b,
                                                   double tol);
std::optional<double> solve_ratio_from_walks(const WeightedGraph& g, int a, int b, int k_max,
                                             double tol);
std::optional<double> solve_ratio_from_charpoly(const WeightedGraph& g, int a, int b, double tol);

// (p, q) with p,q > 0, p^2 + q^2 = 1 and p/q - q/p = c.
std::pair<double, double> pq_from_ratio(double c);

// Full per-pair orchestration: connectivity check, conditions i/iii/iv/vi/
// vii/viii, parallelism, strong fractional cospectrality and class split.
PairCospectralityReport pair_report(const WeightedGraph& g, const SpectralDecomposition& s,
                                    int a, int b, double tol);

}  // namespace frevival
