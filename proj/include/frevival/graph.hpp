#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace frevival {

// Weighted undirected graph stored as a dense real symmetric matrix.
// Off-diagonal nonzero entries are edge weights; diagonal entries are loop
// weights (the magnetic-field term of the walk Hamiltonian).
struct WeightedGraph {
    int n = 0;
    Eigen::MatrixXd weights;
    std::vector<std::string> labels;
    bool integer_weighted = false;
};

// Validates a raw matrix into a WeightedGraph: square, finite, symmetric to
// 1e-12 (then symmetrized exactly). integer_weighted is set iff every entry
// equals its nearest integer exactly.
WeightedGraph validate_graph(const Eigen::MatrixXd& raw,
                             std::vector<std::string> labels = {});

// Connectivity over the off-diagonal support of the weight matrix.
bool is_connected(const WeightedGraph& g, double edge_tol = 1e-12);

// Copy of g with the listed vertices (and their rows/columns) removed.
WeightedGraph delete_vertices(const WeightedGraph& g, std::vector<int> removed);

}  // namespace frevival
