#include "frevival/partition.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "frevival/errors.hpp"
#include "frevival/rational.hpp"

namespace frevival {

double default_zero_tol(int n) { return 1e-8 * std::max(1, n); }

EigenvalueSupport eigenvalue_support(const SpectralDecomposition& s, const SubsetProjector& k,
                                     double zero_tol) {
    const int d1 = s.d() + 1;
    const int m = k.size();

    // E_r D_K E_s = E_r(:,K) * E_s(K,:); only the K-columns matter.
    std::vector<Eigen::MatrixXd> cols(d1);
    for (int r = 0; r < d1; ++r) {
        cols[r].resize(s.n, m);
        for (int j = 0; j < m; ++j) cols[r].col(j) = s.idempotents[r].col(k.subset[j]);
    }

    EigenvalueSupport out;
    for (int r = 0; r < d1; ++r) {
        for (int t = r; t < d1; ++t) {
            const double norm = (cols[r] * cols[t].transpose()).cwiseAbs().maxCoeff();
            if (norm > zero_tol) {
                out.pairs.insert({r, t});
                out.pairs.insert({t, r});
                out.norms[{r, t}] = norm;
                out.norms[{t, r}] = norm;
            }
        }
    }
    return out;
}

int IndexPartition::class_of(int r) const {
    for (std::size_t j = 0; j < classes.size(); ++j)
        for (int member : classes[j])
            if (member == r) return static_cast<int>(j);
    return -1;
}

IndexPartition canonical_partition(std::vector<std::vector<int>> classes) {
    for (auto& c : classes) std::sort(c.begin(), c.end());
    classes.erase(std::remove_if(classes.begin(), classes.end(),
                                 [](const std::vector<int>& c) { return c.empty(); }),
                  classes.end());
    std::sort(classes.begin(), classes.end(),
              [](const std::vector<int>& a, const std::vector<int>& b) { return a[0] < b[0]; });
    return IndexPartition{std::move(classes)};
}

IndexPartition partition_meet(const IndexPartition& p, const IndexPartition& q) {
    std::map<std::pair<int, int>, std::vector<int>> cells;
    for (std::size_t i = 0; i < p.classes.size(); ++i)
        for (int r : p.classes[i]) cells[{static_cast<int>(i), q.class_of(r)}].push_back(r);
    std::vector<std::vector<int>> classes;
    for (auto& [key, cell] : cells) classes.push_back(std::move(cell));
    return canonical_partition(std::move(classes));
}

bool is_refinement(const IndexPartition& p, const IndexPartition& q) {
    for (const auto& c : p.classes) {
        const int target = q.class_of(c[0]);
        for (int r : c)
            if (q.class_of(r) != target) return false;
    }
    return true;
}

ClassIdempotents class_idempotents(const SpectralDecomposition& s, const SubsetProjector& k,
                                   const IndexPartition& p, double zero_tol) {
    ClassIdempotents ci;
    ci.partition = p;
    ci.subset = k;
    ci.zero_tol = zero_tol;
    const int m = k.size();
    for (const auto& c : p.classes) {
        Eigen::MatrixXd f = Eigen::MatrixXd::Zero(s.n, s.n);
        for (int r : c) f += s.idempotents[r];
        Eigen::MatrixXd rest(m, m);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) rest(i, j) = f(k.subset[i], k.subset[j]);
        ci.nonzero_restriction.push_back(rest.size() > 0 && rest.cwiseAbs().maxCoeff() > zero_tol);
        ci.class_sums.push_back(std::move(f));
        ci.restricted.push_back(std::move(rest));
    }
    return ci;
}

namespace {

// Max-abs entry of F D_K - D_K F; for symmetric F this is the largest
// off-block entry between K and its complement.
double commutator_residual(const Eigen::MatrixXd& f, const SubsetProjector& k) {
    double worst = 0.0;
    for (int v : k.subset)
        for (int w = 0; w < k.n; ++w)
            if (!k.contains(w)) worst = std::max(worst, std::abs(f(v, w)));
    return worst;
}

struct DisjointSet {
    std::vector<int> parent;
    explicit DisjointSet(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

ClassIdempotents min_commuting_partition(const SpectralDecomposition& s, const SubsetProjector& k,
                                         double zero_tol) {
    const int d1 = s.d() + 1;
    const EigenvalueSupport support = eigenvalue_support(s, k, zero_tol);

    DisjointSet dsu(d1);
    for (const auto& [r, t] : support.pairs)
        if (r != t) dsu.unite(r, t);

    std::map<int, std::vector<int>> groups;
    for (int r = 0; r < d1; ++r) groups[dsu.find(r)].push_back(r);
    std::vector<std::vector<int>> classes;
    for (auto& [root, members] : groups) classes.push_back(std::move(members));

    ClassIdempotents ci =
        class_idempotents(s, k, canonical_partition(std::move(classes)), zero_tol);

    for (const auto& f : ci.class_sums)
        if (commutator_residual(f, k) >= 10.0 * zero_tol)
            fail("partition-engine/InternalInconsistency",
                 "component partition does not commute with D_K; eigenvalue clustering is "
                 "likely too coarse or too fine for this graph");
    return ci;
}

SupportBound check_support_bound(const ClassIdempotents& ci, const SpectralDecomposition& s,
                                 double tol) {
    SupportBound out;
    for (bool flag : ci.nonzero_restriction) out.count += flag ? 1 : 0;
    const int ksize = ci.subset.size();
    out.bound_met = out.count <= ksize;
    if (!out.bound_met)
        fail("partition-engine/InternalInconsistency",
             "support count " + std::to_string(out.count) + " exceeds |K| = " +
                 std::to_string(ksize) + "; upstream clustering failure");

    if (out.count == ksize) {
        out.parallel_columns = true;
        for (int r = 0; r <= s.d() && out.parallel_columns; ++r) {
            for (int i = 0; i < ksize && out.parallel_columns; ++i) {
                for (int j = i + 1; j < ksize; ++j) {
                    const auto u = s.idempotents[r].col(ci.subset.subset[i]);
                    const auto v = s.idempotents[r].col(ci.subset.subset[j]);
                    const double gram =
                        u.squaredNorm() * v.squaredNorm() - u.dot(v) * u.dot(v);
                    if (gram >= tol) {
                        out.parallel_columns = false;
                        break;
                    }
                }
            }
        }
    }
    return out;
}

bool is_properly_decomposable(const WeightedGraph& g, const ClassIdempotents& ci) {
    if (!is_connected(g)) fail("partition-engine/DisconnectedGraph", "graph is not connected");

    int nonzero = 0;
    for (bool flag : ci.nonzero_restriction) nonzero += flag ? 1 : 0;
    const bool decomposable = ci.partition.classes.size() >= 2 && nonzero >= 2;

    if (decomposable) {
        // Connected graphs with two or more nonzero restrictions must have all
        // of them non-diagonal; a diagonal one signals clustering trouble.
        for (std::size_t j = 0; j < ci.restricted.size(); ++j) {
            if (!ci.nonzero_restriction[j]) continue;
            const auto& rest = ci.restricted[j];
            double off = 0.0;
            for (int a = 0; a < rest.rows(); ++a)
                for (int b = 0; b < rest.cols(); ++b)
                    if (a != b) off = std::max(off, std::abs(rest(a, b)));
            if (off <= ci.zero_tol)
                fail("partition-engine/InternalInconsistency",
                     "nonzero class restriction is diagonal on a connected graph");
        }
    }
    return decomposable;
}

RatioCertificate ratio_condition(const SpectralDecomposition& s, const ClassIdempotents& ci,
                                 std::int64_t max_denominator, double tol) {
    if (max_denominator < 1)
        fail("partition-engine/BadParameter", "max_denominator must be >= 1");

    struct Diff {
        int r, s;
        double value;
    };
    std::vector<Diff> diffs;
    for (const auto& c : ci.partition.classes)
        for (std::size_t i = 0; i < c.size(); ++i)
            for (std::size_t j = i + 1; j < c.size(); ++j)
                diffs.push_back({c[i], c[j], s.eigenvalues(c[i]) - s.eigenvalues(c[j])});

    RatioCertificate cert;
    if (diffs.empty()) {
        cert.holds = true;
        cert.degenerate = true;
        return cert;
    }

    const auto base = std::max_element(diffs.begin(), diffs.end(), [](const Diff& a, const Diff& b) {
        return std::abs(a.value) < std::abs(b.value);
    });
    cert.base_r = base->r;
    cert.base_s = base->s;
    cert.base_difference = base->value;

    cert.holds = true;
    for (const Diff& d : diffs) {
        const double x = d.value / cert.base_difference;
        const Reconstruction rec = reconstruct_rational(x, max_denominator);
        cert.entries.push_back({d.r, d.s, rec.value.num, rec.value.den, rec.residual});
        if (rec.residual >= tol) cert.holds = false;
    }
    return cert;
}

const char* to_string(RevivalKind k) {
    switch (k) {
        case RevivalKind::proper: return "proper";
        case RevivalKind::periodic: return "periodic";
        case RevivalKind::none: return "none";
    }
    return "none";
}

namespace {

void classify_block(RevivalCertificate& cert, const Eigen::MatrixXcd& u,
                    const SubsetProjector& k, double tol) {
    const int m = k.size();
    cert.block.resize(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) cert.block(i, j) = u(k.subset[i], k.subset[j]);

    double off_block = 0.0;
    for (int v : k.subset)
        for (int w = 0; w < k.n; ++w)
            if (!k.contains(w)) off_block = std::max(off_block, std::abs(u(v, w)));
    cert.off_block_residual = off_block;
    cert.commutator_residual = off_block;  // |[U, D_K]|_max coincides for symmetric U

    if (off_block > tol) {
        cert.kind = RevivalKind::none;
        return;
    }
    double off_diag = 0.0;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            if (i != j) off_diag = std::max(off_diag, std::abs(cert.block(i, j)));
    cert.kind = off_diag > tol ? RevivalKind::proper : RevivalKind::periodic;
}

// Minimal tau > 0 with tau * d_i in 2*pi*Z for every listed difference, given
// the reduced fractions d_i/base = num/den: tau = 2*pi*lcm(den_i)/|base|.
double minimal_aligning_time(const RatioCertificate& ratio, std::int64_t& lcm_out) {
    std::int64_t l = 1;
    for (const RatioEntry& e : ratio.entries) {
        const auto next = checked_lcm(l, e.den);
        if (!next)
            fail("partition-engine/ReconstructionOverflow",
                 "lcm of reconstructed denominators exceeds int64");
        l = *next;
    }
    lcm_out = l;
    return 2.0 * M_PI * static_cast<double>(l) / std::abs(ratio.base_difference);
}

// Forward phase-error estimate at tau: reconstruction residuals are blown up
// by 2*pi*lcm, eigenvalue noise by tau itself. A certificate is only issued
// when the predicted error clears the classification threshold.
double predicted_phase_error(const SpectralDecomposition& s, const RatioCertificate& ratio,
                             std::int64_t lcm, double tau) {
    double worst_residual = 0.0;
    for (const RatioEntry& e : ratio.entries)
        worst_residual = std::max(worst_residual, e.residual);
    const double scale = 1.0 + s.eigenvalues.cwiseAbs().maxCoeff();
    return 2.0 * M_PI * static_cast<double>(lcm) * worst_residual +
           2.0 * tau * 1e-15 * scale;
}

}  // namespace

RevivalCertificate find_revival_time(const SpectralDecomposition& s, const SubsetProjector& k,
                                     const RevivalOptions& opt) {
    const double zero_tol = opt.zero_tol > 0.0 ? opt.zero_tol : default_zero_tol(s.n);
    const ClassIdempotents ci = min_commuting_partition(s, k, zero_tol);

    RevivalCertificate cert;
    cert.subset = k.subset;
    cert.partition_used = ci.partition;

    bool all_singletons = true;
    for (const auto& c : ci.partition.classes)
        if (c.size() > 1) all_singletons = false;

    if (all_singletons) {
        // Every E_r commutes with D_K individually, so U(t) is block diagonal
        // at every time; report periodicity of the whole spectrum when the
        // pairwise differences admit a common period, else none.
        cert.notes.push_back("all classes are singletons; falling back to whole-spectrum periodicity");
        const int d1 = s.d() + 1;
        if (d1 == 1) {
            cert.tau = 2.0 * M_PI;
            classify_block(cert, transition_matrix(s, cert.tau), k, opt.classify_tol);
            for (const auto& c : ci.partition.classes)
                cert.phases.push_back(std::exp(std::complex<double>(0, -cert.tau * s.eigenvalues(c[0]))));
            return cert;
        }
        IndexPartition whole;
        std::vector<int> everything(d1);
        std::iota(everything.begin(), everything.end(), 0);
        whole.classes.push_back(everything);
        const ClassIdempotents whole_ci = class_idempotents(s, k, whole, zero_tol);
        cert.ratio = ratio_condition(s, whole_ci, opt.max_denominator, opt.ratio_tol);
    } else {
        cert.ratio = ratio_condition(s, ci, opt.max_denominator, opt.ratio_tol);
    }

    if (!cert.ratio.holds) {
        cert.kind = RevivalKind::none;
        return cert;
    }
    std::int64_t lcm = 1;
    cert.tau = minimal_aligning_time(cert.ratio, lcm);
    if (predicted_phase_error(s, cert.ratio, lcm, cert.tau) > 0.1 * opt.classify_tol) {
        cert.kind = RevivalKind::none;
        cert.tau = 0.0;
        cert.notes.push_back(
            "reconstructed rationals cannot be certified at the classification tolerance; "
            "treating the ratio condition as failed");
        cert.ratio.holds = false;
        return cert;
    }

    classify_block(cert, transition_matrix(s, cert.tau), k, opt.classify_tol);
    for (const auto& c : cert.partition_used.classes)
        cert.phases.push_back(std::exp(std::complex<double>(0, -cert.tau * s.eigenvalues(c[0]))));
    return cert;
}

RevivalCertificate verify_k_fr(const SpectralDecomposition& s, const SubsetProjector& k,
                               double tau, double tol) {
    RevivalCertificate cert;
    cert.subset = k.subset;
    cert.tau = tau;
    classify_block(cert, transition_matrix(s, tau), k, tol);
    return cert;
}

}  // namespace frevival
