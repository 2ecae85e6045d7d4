#include "frevival/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <unsupported/Eigen/KroneckerProduct>

#include "frevival/errors.hpp"
#include "frevival/spectral.hpp"

namespace frevival {

namespace {

WeightedGraph from_matrix(Eigen::MatrixXd m) { return validate_graph(m); }

}  // namespace

WeightedGraph cocktail_party(int pairs) {
    if (pairs < 2) fail("constructions/BadParameter", "cocktail_party needs n >= 2 pairs");
    const int n = 2 * pairs;
    Eigen::MatrixXd a = Eigen::MatrixXd::Ones(n, n) - Eigen::MatrixXd::Identity(n, n);
    for (int i = 0; i < pairs; ++i) {
        a(2 * i, 2 * i + 1) = 0.0;
        a(2 * i + 1, 2 * i) = 0.0;
    }
    return from_matrix(std::move(a));
}

WeightedGraph subdivided_star(int m) {
    if (m < 2) fail("constructions/BadParameter", "subdivided_star needs m >= 2");
    const int n = 2 * m + 1;
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    for (int i = 1; i <= m; ++i) {
        a(0, i) = a(i, 0) = 1.0;          // center - middle
        a(i, m + i) = a(m + i, i) = 1.0;  // middle - leaf
    }
    return from_matrix(std::move(a));
}

WeightedGraph hypercube(int d) {
    if (d < 1) fail("constructions/BadParameter", "hypercube needs d >= 1");
    const int n = 1 << d;
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    for (int v = 0; v < n; ++v)
        for (int bit = 0; bit < d; ++bit) a(v, v ^ (1 << bit)) = 1.0;
    return from_matrix(std::move(a));
}

WeightedGraph rook_graph(int n) {
    if (n < 2) fail("constructions/BadParameter", "rook_graph needs n >= 2");
    const int nn = n * n;
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(nn, nn);
    for (int i = 0; i < nn; ++i)
        for (int j = 0; j < nn; ++j) {
            if (i == j) continue;
            const bool same_row = i / n == j / n;
            const bool same_col = i % n == j % n;
            if (same_row != same_col) a(i, j) = 1.0;
        }
    return from_matrix(std::move(a));
}

WeightedGraph complete_graph(int n) {
    if (n < 1) fail("constructions/BadParameter", "complete_graph needs n >= 1");
    return from_matrix(Eigen::MatrixXd::Ones(n, n) - Eigen::MatrixXd::Identity(n, n));
}

WeightedGraph complement_graph(const WeightedGraph& g) {
    Eigen::MatrixXd a =
        Eigen::MatrixXd::Ones(g.n, g.n) - Eigen::MatrixXd::Identity(g.n, g.n) - g.weights;
    return from_matrix(std::move(a));
}

std::vector<Prediction> base_predictions(const std::string& kind, const WeightedGraph& g,
                                         int parameter) {
    std::vector<Prediction> preds;
    if (kind == "cocktail_party") {
        for (int i = 0; i + 1 < g.n; i += 2)
            preds.push_back({{i, i + 1}, M_PI / parameter, RevivalKind::proper,
                             "antipodal pair revival"});
    } else if (kind == "subdivided_star") {
        std::vector<int> k{0};
        for (int leaf = parameter + 1; leaf <= 2 * parameter; ++leaf) k.push_back(leaf);
        preds.push_back({k, M_PI / std::sqrt(parameter + 1.0), RevivalKind::none,
                         "center-and-leaves support without block structure"});
    } else if (kind == "hypercube") {
        const int n = g.n;
        preds.push_back({{0, n - 1}, M_PI / 2.0, RevivalKind::proper,
                         "antipodal perfect state transfer"});
    } else if (kind == "complete") {
        preds.push_back({{0}, 2.0 * M_PI / parameter, RevivalKind::periodic,
                         "whole-graph periodicity"});
    }
    return preds;
}

WeightedGraph cartesian_product(const WeightedGraph& x, const WeightedGraph& y) {
    Eigen::MatrixXd a =
        Eigen::kroneckerProduct(x.weights, Eigen::MatrixXd::Identity(y.n, y.n)).eval() +
        Eigen::kroneckerProduct(Eigen::MatrixXd::Identity(x.n, x.n), y.weights).eval();
    return from_matrix(std::move(a));
}

WeightedGraph direct_product(const WeightedGraph& x, const WeightedGraph& y) {
    return from_matrix(Eigen::kroneckerProduct(x.weights, y.weights).eval());
}

WeightedGraph double_cover(const WeightedGraph& x, const WeightedGraph& y) {
    if (x.n != y.n) fail("constructions/SizeMismatch", "double_cover needs |V(X)| = |V(Y)|");
    Eigen::MatrixXd a(2 * x.n, 2 * x.n);
    a << x.weights, y.weights, y.weights, x.weights;
    return from_matrix(std::move(a));
}

WeightedGraph switching_graph(const WeightedGraph& y) { return complement_graph(y); }

Eigen::MatrixXcd double_cover_transition(const WeightedGraph& x, const WeightedGraph& y,
                                         double t) {
    if (x.n != y.n) fail("constructions/SizeMismatch", "double_cover needs |V(X)| = |V(Y)|");
    const double commute =
        (x.weights * y.weights - y.weights * x.weights).cwiseAbs().maxCoeff();
    if (commute < 1e-12) {
        const auto ux = transition_matrix(spectral_decomposition(x), t);
        const auto uy_plus = transition_matrix(spectral_decomposition(y), t);
        const auto uy_minus = transition_matrix(spectral_decomposition(y), -t);
        Eigen::MatrixXcd diag = 0.5 * ux * (uy_plus + uy_minus);
        Eigen::MatrixXcd off = 0.5 * ux * (uy_plus - uy_minus);
        Eigen::MatrixXcd u(2 * x.n, 2 * x.n);
        u << diag, off, off, diag;
        return u;
    }
    return transition_matrix(spectral_decomposition(double_cover(x, y)), t);
}

namespace {

double regular_degree(const WeightedGraph& g, const char* which) {
    const Eigen::VectorXd sums = g.weights.rowwise().sum();
    const double k = g.n ? sums(0) : 0.0;
    if (g.n && (sums.array() - k).abs().maxCoeff() > 1e-9)
        fail("constructions/NotRegular", std::string(which) + " is not regular");
    return k;
}

}  // namespace

JoinResult join_graphs(const WeightedGraph& x, const WeightedGraph& y) {
    JoinResult out;
    out.degree_x = regular_degree(x, "X");
    out.degree_y = regular_degree(y, "Y");
    if (!is_connected(x)) fail("constructions/Disconnected", "X is not connected");
    if (!is_connected(y)) fail("constructions/Disconnected", "Y is not connected");

    const int n = x.n, m = y.n;
    Eigen::MatrixXd a(n + m, n + m);
    a << x.weights, Eigen::MatrixXd::Ones(n, m), Eigen::MatrixXd::Ones(m, n), y.weights;
    out.graph = from_matrix(std::move(a));

    // Roots of n t^2 - (k - h) t - m = 0 determine the two join eigenvalues.
    const double k = out.degree_x, h = out.degree_y;
    const double disc = std::sqrt((k - h) * (k - h) + 4.0 * n * m);
    out.alpha1 = ((k - h) - disc) / (2.0 * n);
    out.alpha2 = ((k - h) + disc) / (2.0 * n);
    out.theta1 = n * out.alpha1 + h;
    out.theta2 = n * out.alpha2 + h;
    out.tau_pred = 2.0 * M_PI / (out.theta2 - out.theta1);
    return out;
}

CoverPrediction cover_fr_prediction(std::int64_t n, std::int64_t r, std::int64_t c) {
    if (n < 2 || r < 1 || c < 1)
        fail("constructions/BadParameter", "cover parameters must be positive");
    CoverPrediction out;
    out.n = n;
    out.r = r;
    out.c = c;
    out.delta = n - 2 - r * c;
    const double delta = static_cast<double>(out.delta);
    const double disc = std::sqrt(delta * delta + 4.0 * (n - 1.0));
    out.eigenvalues[0] = static_cast<double>(n - 1);
    out.eigenvalues[1] = -1.0;
    out.eigenvalues[2] = (delta + disc) / 2.0;
    out.eigenvalues[3] = (delta - disc) / 2.0;

    if (out.delta == 2 || out.delta == -2) {
        const std::int64_t quarter = n / 4;
        const std::int64_t m = static_cast<std::int64_t>(std::llround(std::sqrt(
            static_cast<double>(quarter))));
        if (4 * m * m == n && m >= 1) {
            out.m = static_cast<int>(m);
            out.tau = M_PI / (2.0 * static_cast<double>(m));
        }
    }
    return out;
}

double cover_fibre_residual(const WeightedGraph& g, const std::vector<std::vector<int>>& fibres,
                            const CoverPrediction& prediction) {
    if (!prediction.tau)
        fail("constructions/BadParameter", "prediction carries no revival time");
    const std::int64_t n = prediction.n, r = prediction.r;
    if (static_cast<std::int64_t>(fibres.size()) != n)
        fail("constructions/BadParameter", "expected one fibre per base vertex");
    std::vector<int> order;
    for (const auto& fibre : fibres) {
        if (static_cast<std::int64_t>(fibre.size()) != r)
            fail("constructions/BadParameter", "every fibre must have r vertices");
        for (int v : fibre) order.push_back(v);
    }
    if (static_cast<int>(order.size()) != g.n)
        fail("constructions/BadParameter", "fibres must partition the vertices");

    const double tau = *prediction.tau;
    const auto u = transition_matrix(spectral_decomposition(g), tau);
    const std::complex<double> ph1 = std::exp(std::complex<double>(0, -prediction.eigenvalues[0] * tau));
    const std::complex<double> ph3 = std::exp(std::complex<double>(0, -prediction.eigenvalues[2] * tau));

    double worst = 0.0;
    for (std::int64_t f1 = 0; f1 < n; ++f1)
        for (std::int64_t f2 = 0; f2 < n; ++f2)
            for (std::int64_t i = 0; i < r; ++i)
                for (std::int64_t j = 0; j < r; ++j) {
                    std::complex<double> expected(0.0, 0.0);
                    if (f1 == f2) {
                        expected = (ph1 - ph3) / static_cast<double>(r);
                        if (i == j) expected += ph3;
                    }
                    const int v = fibres[f1][i], w = fibres[f2][j];
                    worst = std::max(worst, std::abs(u(v, w) - expected));
                }
    return worst;
}

namespace {

bool is_odd_prime(std::int64_t p) {
    if (p < 3 || p % 2 == 0) return false;
    for (std::int64_t f = 3; f * f <= p; f += 2)
        if (p % f == 0) return false;
    return true;
}

std::int64_t mod_inverse(std::int64_t a, std::int64_t mod) {
    std::int64_t t = 0, new_t = 1, r = mod, new_r = a % mod;
    while (new_r != 0) {
        const std::int64_t quot = r / new_r;
        std::swap(t -= quot * new_t, new_t);
        std::swap(r -= quot * new_r, new_r);
    }
    return ((t % mod) + mod) % mod;
}

Eigen::MatrixXd sylvester_hadamard(int m) {
    Eigen::MatrixXd h(1, 1);
    h(0, 0) = 1.0;
    for (int i = 0; i < m; ++i) {
        Eigen::MatrixXd next(2 * h.rows(), 2 * h.cols());
        next << h, h, h, -h;
        h = std::move(next);
    }
    return h;
}

PolygamyResult polygamy_from_hadamard(const Eigen::MatrixXd& h, std::vector<std::int64_t> primes,
                                      bool vertex_transitive) {
    const int n = static_cast<int>(h.rows());
    if (static_cast<int>(primes.size()) != n - 1)
        fail("constructions/BadPrimeList",
             "expected " + std::to_string(n - 1) + " odd primes, got " + std::to_string(primes.size()));
    std::vector<std::int64_t> sorted = primes;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (!is_odd_prime(sorted[i]))
            fail("constructions/BadPrimeList", std::to_string(sorted[i]) + " is not an odd prime");
        if (i > 0 && sorted[i] == sorted[i - 1])
            fail("constructions/BadPrimeList", "repeated prime " + std::to_string(sorted[i]));
    }

    // lambda_r solves x = (1 - H_{j,r})/2 mod p_j for j = 1..n-1, by the
    // incremental Chinese remainder construction.
    std::vector<std::int64_t> lambda(n, 0);
    for (int r = 1; r < n; ++r) {
        std::int64_t x = 0, modulus = 1;
        for (int j = 1; j < n; ++j) {
            const std::int64_t p = primes[j - 1];
            const std::int64_t target = h(j, r) > 0 ? 0 : 1;
            const std::int64_t diff = ((target - x) % p + p) % p;
            const std::int64_t step = (diff * mod_inverse(modulus % p, p)) % p;
            const __int128 bumped = static_cast<__int128>(x) + static_cast<__int128>(step) * modulus;
            const __int128 next_mod = static_cast<__int128>(modulus) * p;
            if (next_mod > (static_cast<__int128>(1) << 62))
                fail("constructions/BadPrimeList", "prime product overflows the integer range");
            x = static_cast<std::int64_t>(bumped);
            modulus = static_cast<std::int64_t>(next_mod);
        }
        lambda[r] = x;
    }

    // L = (1/n) H D H^T, assembled exactly in integers then divided by the
    // power-of-two order (dyadic entries stay exact in doubles).
    Eigen::MatrixXd l(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            std::int64_t acc = 0;
            for (int r = 0; r < n; ++r)
                acc += lambda[r] * static_cast<std::int64_t>(h(i, r)) *
                       static_cast<std::int64_t>(h(j, r));
            l(i, j) = static_cast<double>(acc) / n;
        }

    PolygamyResult out;
    out.graph = validate_graph(l);
    out.lambda = std::move(lambda);
    out.primes = std::move(primes);
    for (int k = 1; k < n; ++k) {
        const double tau = 2.0 * M_PI / static_cast<double>(out.primes[k - 1]);
        if (vertex_transitive) {
            for (int i = 0; i < n; ++i)
                if (i < (i ^ k))
                    out.predictions.push_back({{i, i ^ k}, tau, RevivalKind::proper,
                                               "pair revival at 2*pi/p_" + std::to_string(k)});
        } else {
            out.predictions.push_back({{0, k}, tau, RevivalKind::proper,
                                       "pair revival at 2*pi/p_" + std::to_string(k)});
        }
    }
    return out;
}

}  // namespace

PolygamyResult hadamard_polygamy(int m, std::vector<std::int64_t> primes) {
    if (m < 2) fail("constructions/BadParameter", "hadamard_polygamy needs m >= 2");
    return polygamy_from_hadamard(sylvester_hadamard(m), std::move(primes), true);
}

PolygamyResult hadamard_polygamy(const Eigen::MatrixXd& hadamard,
                                 std::vector<std::int64_t> primes) {
    const int n = static_cast<int>(hadamard.rows());
    if (n < 4 || hadamard.cols() != n)
        fail("constructions/BadParameter", "Hadamard matrix must be square of order >= 4");
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (std::abs(std::abs(hadamard(i, j)) - 1.0) > 1e-12)
                fail("constructions/BadParameter", "Hadamard entries must be +-1");
    for (int i = 0; i < n; ++i)
        if (hadamard(0, i) != 1.0 || hadamard(i, 0) != 1.0)
            fail("constructions/BadParameter", "Hadamard matrix must be normalized");
    const Eigen::MatrixXd gram = hadamard * hadamard.transpose();
    if ((gram - n * Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff() > 1e-9)
        fail("constructions/BadParameter", "matrix is not Hadamard");
    return polygamy_from_hadamard(hadamard, std::move(primes), false);
}

PrescribedResult prescribed_fr(const Eigen::Matrix2cd& h, double tau, int n,
                               std::optional<int> m, std::int64_t sigma, std::int64_t omega) {
    if (n < 4) fail("constructions/BadParameter", "prescribed_fr needs n >= 4");
    if (!(tau > 0.0)) fail("constructions/BadParameter", "tau must be positive");
    if (sigma == 0 || omega == 0)
        fail("constructions/BadParameter", "sigma and omega must be nonzero integers");
    if ((h - h.transpose()).cwiseAbs().maxCoeff() > 1e-10 ||
        (h * h.adjoint() - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() > 1e-10)
        fail("constructions/NotSymmetricUnitary", "H must be symmetric and unitary");
    if (std::abs(h(0, 1)) <= 1e-10)
        fail("constructions/DiagonalH", "H must have a nonzero off-diagonal entry");

    const int block_m = m.value_or(std::max(1, (n - 2) / 2));
    if (block_m < 1 || block_m > n - 3)
        fail("constructions/BadBlockSize", "need 1 <= m <= n - 3");

    // Real eigenvectors shared by Re(H) and Im(H); pick the part with the
    // stronger non-scalar signature.
    const Eigen::Matrix2d re = h.real(), im = h.imag();
    auto signature = [](const Eigen::Matrix2d& x) {
        return std::abs(x(0, 1)) + 0.5 * std::abs(x(0, 0) - x(1, 1));
    };
    const Eigen::Matrix2d& basis = signature(re) >= signature(im) ? re : im;
    const double angle = 0.5 * std::atan2(2.0 * basis(0, 1), basis(0, 0) - basis(1, 1));
    double p = std::cos(angle), q = std::sin(angle);
    if (p * q < 0) {
        const double tmp = p;
        p = -q;
        q = tmp;
    }
    if (q < 0) {
        p = -p;
        q = -q;
    }
    p = std::abs(p);
    q = std::abs(q);

    const Eigen::Vector2cd v1(p, q), v2(-q, p);
    const std::complex<double> lambda1 = v1.transpose() * h * v1;
    const std::complex<double> lambda2 = v2.transpose() * h * v2;
    if (std::abs(lambda1 - lambda2) < 1e-10)
        fail("constructions/DiagonalH", "H has equal eigenvalues and is a scalar matrix");

    const double xi = tau / (2.0 * M_PI);
    PrescribedResult out;
    out.tau = tau;
    out.p = p;
    out.q = q;
    out.lambda1 = lambda1;
    out.lambda2 = lambda2;
    out.block_m = block_m;
    out.sigma = sigma;
    out.omega = omega;

    double theta1 = -std::arg(lambda1) / tau;
    double theta3 = -std::arg(lambda2) / tau;
    double theta2 = theta1 + static_cast<double>(sigma) / xi;
    double theta4 = theta3 + static_cast<double>(omega) / xi;
    const double sep = 1e-9 * (1.0 + std::abs(theta1) + std::abs(theta3) + 1.0 / xi);
    for (int guard = 0; guard < 64; ++guard) {
        const bool clash = std::abs(theta2 - theta3) < sep || std::abs(theta2 - theta4) < sep ||
                           std::abs(theta4 - theta1) < sep || std::abs(theta2 - theta1) < sep ||
                           std::abs(theta4 - theta3) < sep;
        if (!clash) break;
        if (std::abs(theta2 - theta3) < sep || std::abs(theta2 - theta1) < sep) {
            if (++out.sigma == 0) ++out.sigma;
            theta2 = theta1 + static_cast<double>(out.sigma) / xi;
        } else {
            if (++out.omega == 0) ++out.omega;
            theta4 = theta3 + static_cast<double>(out.omega) / xi;
        }
    }
    out.theta[0] = theta1;
    out.theta[1] = theta2;
    out.theta[2] = theta3;
    out.theta[3] = theta4;

    double filler = 0.0;
    auto collides = [&](double value) {
        for (double t : out.theta)
            if (std::abs(value - t) < sep) return true;
        return false;
    };
    for (std::int64_t j = 0; collides(filler); ++j)
        filler = static_cast<double>(j + 1) / (2.0 * xi);
    out.filler = filler;

    // Orthonormal frame: the (p, q) plane split across the first two columns
    // and uniform block vectors u_1, u_2 extended to a basis below them.
    const int inner = n - 2;
    Eigen::VectorXd u1 = Eigen::VectorXd::Zero(inner), u2 = Eigen::VectorXd::Zero(inner);
    for (int i = 0; i < block_m; ++i) u1(i) = 1.0 / std::sqrt(static_cast<double>(block_m));
    for (int i = block_m; i < inner; ++i)
        u2(i) = 1.0 / std::sqrt(static_cast<double>(inner - block_m));

    Eigen::MatrixXd frame(inner, 2);
    frame.col(0) = u1;
    frame.col(1) = u2;
    const Eigen::MatrixXd full_q =
        Eigen::HouseholderQR<Eigen::MatrixXd>(frame).householderQ() * Eigen::MatrixXd::Identity(inner, inner);

    const double rt2 = std::sqrt(2.0);
    Eigen::MatrixXd pmat = Eigen::MatrixXd::Zero(n, n);
    pmat(0, 0) = p / rt2;
    pmat(0, 1) = -p / rt2;
    pmat(0, 2) = -q / rt2;
    pmat(0, 3) = q / rt2;
    pmat(1, 0) = q / rt2;
    pmat(1, 1) = -q / rt2;
    pmat(1, 2) = p / rt2;
    pmat(1, 3) = -p / rt2;
    pmat.block(2, 0, inner, 1) = u1 / rt2;
    pmat.block(2, 1, inner, 1) = u1 / rt2;
    pmat.block(2, 2, inner, 1) = u2 / rt2;
    pmat.block(2, 3, inner, 1) = u2 / rt2;
    for (int j = 2; j < inner; ++j) pmat.block(2, j + 2, inner, 1) = full_q.col(j);

    Eigen::VectorXd theta_diag(n);
    theta_diag << theta1, theta2, theta3, theta4, Eigen::VectorXd::Constant(n - 4, filler);
    Eigen::MatrixXd a = pmat * theta_diag.asDiagonal() * pmat.transpose();
    out.graph = validate_graph(0.5 * (a + a.transpose()));
    return out;
}

DirectProductCheck direct_product_fr_check(const WeightedGraph& x, const WeightedGraph& y,
                                           double t, double tol) {
    const auto sx = spectral_decomposition(x);
    const auto sy = spectral_decomposition(y);
    DirectProductCheck out;
    out.block = transition_matrix(sy, sx.eigenvalues(0) * t);
    for (int r = 1; r <= sx.d(); ++r) {
        const auto u = transition_matrix(sy, sx.eigenvalues(r) * t);
        out.max_deviation = std::max(out.max_deviation, (u - out.block).cwiseAbs().maxCoeff());
    }
    out.constant = out.max_deviation < tol;
    return out;
}

}  // namespace frevival
