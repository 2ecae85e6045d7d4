#include "frevival/graph.hpp"

#include <cmath>
#include <queue>

#include "frevival/errors.hpp"

namespace frevival {

WeightedGraph validate_graph(const Eigen::MatrixXd& raw, std::vector<std::string> labels) {
    if (raw.rows() != raw.cols())
        fail("spectral-core/NonSquare",
             "matrix is " + std::to_string(raw.rows()) + "x" + std::to_string(raw.cols()));
    const int n = static_cast<int>(raw.rows());

    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (!std::isfinite(raw(i, j)))
                fail("spectral-core/NonFiniteEntry",
                     "entry (" + std::to_string(i) + "," + std::to_string(j) + ") is not finite");

    const double asym = n ? (raw - raw.transpose()).cwiseAbs().maxCoeff() : 0.0;
    if (asym > 1e-12)
        fail("spectral-core/AsymmetricBeyondTolerance",
             "max |A_ij - A_ji| = " + std::to_string(asym));

    WeightedGraph g;
    g.n = n;
    g.weights = 0.5 * (raw + raw.transpose());

    if (labels.empty()) {
        g.labels.reserve(n);
        for (int i = 0; i < n; ++i) g.labels.push_back(std::to_string(i));
    } else {
        if (static_cast<int>(labels.size()) != n)
            fail("spectral-core/BadLabels", "expected " + std::to_string(n) + " labels");
        g.labels = std::move(labels);
    }

    g.integer_weighted = true;
    for (int i = 0; i < n && g.integer_weighted; ++i)
        for (int j = 0; j < n; ++j)
            if (g.weights(i, j) != std::nearbyint(g.weights(i, j))) {
                g.integer_weighted = false;
                break;
            }
    return g;
}

bool is_connected(const WeightedGraph& g, double edge_tol) {
    if (g.n <= 1) return true;
    std::vector<char> seen(g.n, 0);
    std::queue<int> next;
    next.push(0);
    seen[0] = 1;
    int count = 1;
    while (!next.empty()) {
        const int v = next.front();
        next.pop();
        for (int w = 0; w < g.n; ++w) {
            if (w == v || seen[w] || std::abs(g.weights(v, w)) <= edge_tol) continue;
            seen[w] = 1;
            ++count;
            next.push(w);
        }
    }
    return count == g.n;
}

WeightedGraph delete_vertices(const WeightedGraph& g, std::vector<int> removed) {
    std::vector<char> drop(g.n, 0);
    for (int v : removed) {
        if (v < 0 || v >= g.n)
            fail("spectral-core/VertexOutOfRange", "vertex " + std::to_string(v));
        drop[v] = 1;
    }
    std::vector<int> keep;
    for (int v = 0; v < g.n; ++v)
        if (!drop[v]) keep.push_back(v);

    const int m = static_cast<int>(keep.size());
    Eigen::MatrixXd w(m, m);
    std::vector<std::string> labels(m);
    for (int i = 0; i < m; ++i) {
        labels[i] = g.labels[keep[i]];
        for (int j = 0; j < m; ++j) w(i, j) = g.weights(keep[i], keep[j]);
    }
    return validate_graph(w, std::move(labels));
}

}  // namespace frevival
