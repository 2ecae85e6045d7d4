#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "frevival/graph.hpp"

namespace frevival {

// A = sum_r theta_r E_r with strictly decreasing distinct eigenvalues theta_r
// and principal idempotents E_r (orthogonal projectors onto the eigenspaces).
//
// Numerically equal eigenvalues are merged by single-linkage clustering with
// absolute gap threshold cluster_tol; gaps falling in (cluster_tol,
// 10*cluster_tol] are recorded in ambiguous_gaps as a warning, not a failure.
struct SpectralDecomposition {
    int n = 0;
    Eigen::VectorXd eigenvalues;              // strictly decreasing
    std::vector<Eigen::MatrixXd> idempotents; // E_0..E_d, symmetric
    std::vector<int> multiplicities;          // rank of each E_r, sums to n
    double cluster_tol = 0.0;
    std::vector<double> ambiguous_gaps;

    int d() const { return static_cast<int>(eigenvalues.size()) - 1; }
};

// Default clustering tolerance: 1e-9 scaled by (1 + ||A||_inf), an upper
// estimate of the spectral radius.
double default_cluster_tol(const Eigen::MatrixXd& a);

SpectralDecomposition spectral_decomposition(const WeightedGraph& g);
SpectralDecomposition spectral_decomposition(const WeightedGraph& g, double cluster_tol);

// U(t) = sum_r exp(-i t theta_r) E_r.
Eigen::MatrixXcd transition_matrix(const SpectralDecomposition& s, double t);

// Column a of U(t), i.e. the walk state started at vertex a.
Eigen::VectorXcd evolve_vertex(const SpectralDecomposition& s, int a, double t);

// D_K: 0/1 diagonal projector onto a vertex subset.
struct SubsetProjector {
    std::vector<int> subset;  // sorted, distinct, in range
    int n = 0;

    Eigen::MatrixXd matrix() const;
    bool contains(int v) const;
    int size() const { return static_cast<int>(subset.size()); }
};

SubsetProjector subset_projector(std::vector<int> subset, int n);

}  // namespace frevival
