#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "frevival/spectral.hpp"

namespace frevival {

// Phi_K: index pairs (r, s) with E_r D_K E_s != 0, stored symmetrically.
struct EigenvalueSupport {
    std::set<std::pair<int, int>> pairs;
    std::map<std::pair<int, int>, double> norms;  // max-abs entry of E_r D_K E_s

    bool contains(int r, int s) const { return pairs.count({r, s}) > 0; }
};

// Default zero tolerance for deciding E_r D_K E_s != 0: 1e-8 scaled by n.
double default_zero_tol(int n);

EigenvalueSupport eigenvalue_support(const SpectralDecomposition& s,
                                     const SubsetProjector& k, double zero_tol);

// Partition of the eigenvalue indices {0..d} in canonical form:
// members sorted within classes, classes ordered by smallest member.
struct IndexPartition {
    std::vector<std::vector<int>> classes;

    int class_of(int r) const;
    bool operator==(const IndexPartition& other) const { return classes == other.classes; }
};

IndexPartition canonical_partition(std::vector<std::vector<int>> classes);
IndexPartition partition_meet(const IndexPartition& p, const IndexPartition& q);
bool is_refinement(const IndexPartition& p, const IndexPartition& q);  // p <= q

// Class sums F_j = sum_{r in C_j} E_r together with their K-restrictions.
struct ClassIdempotents {
    IndexPartition partition;
    SubsetProjector subset;
    std::vector<Eigen::MatrixXd> class_sums;   // F_j, n x n
    std::vector<Eigen::MatrixXd> restricted;   // F~_j, |K| x |K|
    std::vector<bool> nonzero_restriction;
    double zero_tol = 0.0;
};

// Class idempotents for an arbitrary partition (no minimality claim).
ClassIdempotents class_idempotents(const SpectralDecomposition& s, const SubsetProjector& k,
                                   const IndexPartition& p, double zero_tol);

// P_min^K: connected components of the off-diagonal support relation
// r ~ s <=> (r, s) in Phi_K. The result commutes with D_K within 10*zero_tol.
ClassIdempotents min_commuting_partition(const SpectralDecomposition& s,
                                         const SubsetProjector& k, double zero_tol);

struct SupportBound {
    int count = 0;               // |{j : F~_j != 0}|
    bool bound_met = false;      // count <= |K|
    bool parallel_columns = false;  // evaluated only when count == |K|
};

SupportBound check_support_bound(const ClassIdempotents& ci, const SpectralDecomposition& s,
                                 double tol);

// True iff P_min^K has >= 2 classes and >= 2 nonzero restrictions; requires a
// connected graph and sanity-checks that the nonzero restrictions are
// non-diagonal in that case.
bool is_properly_decomposable(const WeightedGraph& g, const ClassIdempotents& ci);

struct RatioEntry {
    int r = 0, s = 0;            // within-class pair, theta_r - theta_s is the difference
    std::int64_t num = 0, den = 1;
    double residual = 0.0;
};

struct RatioCertificate {
    bool holds = false;
    bool degenerate = false;     // no class has two members; vacuously true
    int base_r = -1, base_s = -1;
    double base_difference = 0.0;
    std::vector<RatioEntry> entries;
};

// Ratio condition with respect to the partition in ci: every within-class
// eigenvalue difference must be a rational multiple of the base difference
// (the largest in magnitude), reconstructed by bounded continued fractions.
RatioCertificate ratio_condition(const SpectralDecomposition& s, const ClassIdempotents& ci,
                                 std::int64_t max_denominator, double tol);

enum class RevivalKind { proper, periodic, none };
const char* to_string(RevivalKind k);

struct RevivalCertificate {
    std::vector<int> subset;
    double tau = 0.0;
    IndexPartition partition_used;
    Eigen::MatrixXcd block;            // H = U(tau) restricted to K
    double off_block_residual = 0.0;   // max |U(tau)_{v,w}|, v in K, w not in K
    double commutator_residual = 0.0;  // max-abs entry of U(tau) D_K - D_K U(tau)
    RevivalKind kind = RevivalKind::none;
    std::vector<std::complex<double>> phases;  // lambda_C per class of partition_used
    RatioCertificate ratio;
    std::vector<std::string> notes;
};

struct RevivalOptions {
    double zero_tol = -1.0;  // <= 0 selects default_zero_tol(n)
    std::int64_t max_denominator = 1000000;
    double ratio_tol = 1e-13;
    double classify_tol = 1e-7;
};

// Computes P_min^K, tests the ratio condition and, when it holds, evaluates
// U(tau) at the minimal aligning time tau = 2*pi*lcm(b_i)/|d_0|.
RevivalCertificate find_revival_time(const SpectralDecomposition& s, const SubsetProjector& k,
                                     const RevivalOptions& opt = {});

// Direct check at a given time: evaluates U(tau) and classifies the block
// structure without any partition computation. Independent oracle for
// find_revival_time.
RevivalCertificate verify_k_fr(const SpectralDecomposition& s, const SubsetProjector& k,
                               double tau, double tol = 1e-7);

}  // namespace frevival
