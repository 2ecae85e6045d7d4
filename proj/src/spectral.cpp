#include "frevival/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "frevival/errors.hpp"

namespace frevival {

double default_cluster_tol(const Eigen::MatrixXd& a) {
    const double scale = a.size() ? a.cwiseAbs().rowwise().sum().maxCoeff() : 0.0;
    return 1e-9 * (1.0 + scale);
}

SpectralDecomposition spectral_decomposition(const WeightedGraph& g) {
    return spectral_decomposition(g, default_cluster_tol(g.weights));
}

SpectralDecomposition spectral_decomposition(const WeightedGraph& g, double cluster_tol) {
    if (!(cluster_tol > 0.0))
        fail("spectral-core/BadTolerance", "cluster_tol must be positive");

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(g.weights);
    if (solver.info() != Eigen::Success)
        fail("spectral-core/EigensolverFailure", "self-adjoint eigensolver did not converge");

    // Eigen returns ascending order; flip to strictly decreasing.
    const int n = g.n;
    Eigen::VectorXd vals(n);
    Eigen::MatrixXd vecs(n, n);
    for (int i = 0; i < n; ++i) {
        vals(i) = solver.eigenvalues()(n - 1 - i);
        vecs.col(i) = solver.eigenvectors().col(n - 1 - i);
    }

    SpectralDecomposition s;
    s.n = n;
    s.cluster_tol = cluster_tol;

    // Single-linkage clustering on the sorted eigenvalue list.
    std::vector<std::pair<int, int>> blocks;  // [begin, end)
    int begin = 0;
    for (int i = 1; i <= n; ++i) {
        if (i == n) {
            blocks.emplace_back(begin, i);
            break;
        }
        const double gap = vals(i - 1) - vals(i);
        if (gap > cluster_tol) {
            if (gap <= 10.0 * cluster_tol) s.ambiguous_gaps.push_back(gap);
            blocks.emplace_back(begin, i);
            begin = i;
        }
    }

    const int d1 = static_cast<int>(blocks.size());
    s.eigenvalues.resize(d1);
    s.idempotents.reserve(d1);
    s.multiplicities.reserve(d1);
    for (int r = 0; r < d1; ++r) {
        const auto [lo, hi] = blocks[r];
        s.eigenvalues(r) = vals.segment(lo, hi - lo).mean();
        const auto block = vecs.middleCols(lo, hi - lo);
        Eigen::MatrixXd e = block * block.transpose();
        s.idempotents.push_back(0.5 * (e + e.transpose()));
        s.multiplicities.push_back(hi - lo);
    }
    return s;
}

Eigen::MatrixXcd transition_matrix(const SpectralDecomposition& s, double t) {
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(s.n, s.n);
    for (int r = 0; r <= s.d(); ++r)
        u += std::exp(std::complex<double>(0.0, -t * s.eigenvalues(r))) * s.idempotents[r];
    return u;
}

Eigen::VectorXcd evolve_vertex(const SpectralDecomposition& s, int a, double t) {
    if (a < 0 || a >= s.n)
        fail("spectral-core/VertexOutOfRange", "vertex " + std::to_string(a));
    Eigen::VectorXcd state = Eigen::VectorXcd::Zero(s.n);
    for (int r = 0; r <= s.d(); ++r)
        state += std::exp(std::complex<double>(0.0, -t * s.eigenvalues(r))) * s.idempotents[r].col(a);
    return state;
}

Eigen::MatrixXd SubsetProjector::matrix() const {
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
    for (int v : subset) d(v, v) = 1.0;
    return d;
}

bool SubsetProjector::contains(int v) const {
    return std::binary_search(subset.begin(), subset.end(), v);
}

SubsetProjector subset_projector(std::vector<int> subset, int n) {
    if (subset.empty()) fail("spectral-core/EmptySubset", "subset K must be nonempty");
    std::sort(subset.begin(), subset.end());
    for (std::size_t i = 0; i < subset.size(); ++i) {
        if (subset[i] < 0 || subset[i] >= n)
            fail("spectral-core/VertexOutOfRange", "vertex " + std::to_string(subset[i]));
        if (i > 0 && subset[i] == subset[i - 1])
            fail("spectral-core/DuplicateVertex", "vertex " + std::to_string(subset[i]));
    }
    return SubsetProjector{std::move(subset), n};
}

}  // namespace frevival
