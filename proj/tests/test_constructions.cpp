#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "frevival/constructions.hpp"
#include "frevival/cospectrality.hpp"
#include "frevival/errors.hpp"
#include "test_support.hpp"

using namespace frevival;

namespace {

const std::complex<double> I_UNIT(0.0, 1.0);

WeightedGraph k2_graph() {
    Eigen::MatrixXd a(2, 2);
    a << 0, 1, 1, 0;
    return validate_graph(a);
}

Eigen::MatrixXcd kron_c(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

}  // namespace

TEST_CASE("base families have the stated shapes") {
    const auto c4 = cocktail_party(2);
    CHECK(c4.n == 4);
    CHECK(c4.weights.rowwise().sum().isConstant(2.0, 1e-12));  // C_4

    const auto spider = subdivided_star(3);
    CHECK(spider.n == 7);
    std::vector<double> degrees;
    for (int v = 0; v < 7; ++v) degrees.push_back(spider.weights.row(v).sum());
    std::sort(degrees.begin(), degrees.end(), std::greater<>());
    CHECK(degrees == std::vector<double>{3, 2, 2, 2, 1, 1, 1});

    const auto rook = rook_graph(3);
    CHECK(rook.n == 9);
    CHECK(rook.weights.rowwise().sum().isConstant(4.0, 1e-12));

    const auto cube = hypercube(3);
    CHECK(cube.n == 8);
    CHECK(cube.weights.rowwise().sum().isConstant(3.0, 1e-12));

    CHECK(complete_graph(4).weights.sum() == doctest::Approx(12.0));
    CHECK_THROWS_AS(cocktail_party(1), Error);
    CHECK_THROWS_AS(subdivided_star(1), Error);
}

TEST_CASE("cartesian product of two edges is the 4-cycle") {
    const auto c4 = cartesian_product(k2_graph(), k2_graph());
    CHECK(c4.n == 4);
    CHECK(c4.weights.sum() == doctest::Approx(8.0));
    CHECK(c4.weights.diagonal().cwiseAbs().maxCoeff() == 0.0);
    CHECK(c4.weights.rowwise().sum().isConstant(2.0, 1e-12));
}

TEST_CASE("product transition laws at random times") {
    std::mt19937 rng(2025);
    std::uniform_real_distribution<double> time(0.0, 6.0);
    for (int trial = 0; trial < 6; ++trial) {
        const auto x = testsupport::random_connected_weighted_graph(4, rng);
        const auto y = testsupport::random_connected_weighted_graph(3, rng);
        const auto sx = spectral_decomposition(x);
        const auto sy = spectral_decomposition(y);
        const auto s_cart = spectral_decomposition(cartesian_product(x, y));
        const auto s_dir = spectral_decomposition(direct_product(x, y));
        for (int tick = 0; tick < 4; ++tick) {
            const double t = time(rng);
            const auto u_cart = transition_matrix(s_cart, t);
            const auto expected_cart =
                kron_c(transition_matrix(sx, t), transition_matrix(sy, t));
            CHECK((u_cart - expected_cart).cwiseAbs().maxCoeff() < 1e-7);

            const auto u_dir = transition_matrix(s_dir, t);
            Eigen::MatrixXcd expected_dir = Eigen::MatrixXcd::Zero(x.n * y.n, x.n * y.n);
            for (int r = 0; r <= sx.d(); ++r)
                expected_dir += kron_c(sx.idempotents[r].cast<std::complex<double>>(),
                                       transition_matrix(sy, sx.eigenvalues(r) * t));
            CHECK((u_dir - expected_dir).cwiseAbs().maxCoeff() < 1e-7);
        }
    }
}

TEST_CASE("rook(16) x K_2 revives every fibre at pi/8") {
    const auto x = rook_graph(4);  // spectrum {6, 2, -2}: small stand-in sanity first
    CHECK(spectral_decomposition(x).d() == 2);

    const auto checker = direct_product_fr_check(rook_graph(16), k2_graph(), M_PI / 8.0, 1e-7);
    REQUIRE(checker.constant);
    Eigen::Matrix2cd h;
    h << 1.0 / std::sqrt(2.0), I_UNIT / std::sqrt(2.0), I_UNIT / std::sqrt(2.0),
        1.0 / std::sqrt(2.0);
    CHECK((checker.block - h).cwiseAbs().maxCoeff() < 1e-7);

    // direct verification on the full 512-vertex product for one fibre
    const auto product = direct_product(rook_graph(16), k2_graph());
    const auto sp = spectral_decomposition(product);
    const auto cert = verify_k_fr(sp, subset_projector({0, 1}, product.n), M_PI / 8.0);
    CHECK(cert.kind == RevivalKind::proper);
    CHECK(cert.off_block_residual < 1e-7);
    CHECK((cert.block - h).cwiseAbs().maxCoeff() < 1e-7);
}

TEST_CASE("double cover block formula matches dense exponentiation") {
    std::mt19937 rng(31415);
    // commuting case: rook(3) and its complement
    const auto y = rook_graph(3);
    const auto x = switching_graph(y);
    const auto dense = transition_matrix(spectral_decomposition(double_cover(x, y)), 0.9);
    const auto block = double_cover_transition(x, y, 0.9);
    CHECK((dense - block).cwiseAbs().maxCoeff() < 1e-7);

    // non-commuting case falls back to the dense path and must still be U(t)
    const auto a = testsupport::random_connected_weighted_graph(4, rng);
    const auto b = testsupport::random_connected_weighted_graph(4, rng);
    const auto u1 = double_cover_transition(a, b, 1.3);
    const auto u2 = transition_matrix(spectral_decomposition(double_cover(a, b)), 1.3);
    CHECK((u1 - u2).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("double cover of an edge with itself is the 4-cycle up to reordering") {
    const auto cover = double_cover(k2_graph(), k2_graph());
    CHECK(cover.n == 4);
    CHECK(cover.weights.rowwise().sum().isConstant(2.0, 1e-12));
    const auto s = spectral_decomposition(cover);  // C_4 spectrum {2, 0, -2}
    REQUIRE(s.d() == 2);
    CHECK(s.eigenvalues(0) == doctest::Approx(2.0));
    CHECK(s.eigenvalues(1) == doctest::Approx(0.0));
    CHECK(s.eigenvalues(2) == doctest::Approx(-2.0));
    CHECK(s.multiplicities[1] == 2);
    CHECK_THROWS_AS(double_cover(k2_graph(), complete_graph(3)), Error);
}

TEST_CASE("switched rook double cover revives the top sheet at pi") {
    const auto y = rook_graph(3);
    const auto x = switching_graph(y);
    const auto cover = double_cover(x, y);
    const auto s = spectral_decomposition(cover);
    std::vector<int> top(9);
    std::iota(top.begin(), top.end(), 0);
    const auto cert = verify_k_fr(s, subset_projector(top, 18), M_PI);
    CHECK(cert.kind != RevivalKind::none);
    CHECK(cert.off_block_residual < 1e-8);
}

TEST_CASE("join of C_4 and K_2 matches the quadratic-root prediction") {
    const auto c4 = cocktail_party(2);
    const auto join = join_graphs(c4, k2_graph());
    CHECK(join.degree_x == doctest::Approx(2.0));
    CHECK(join.degree_y == doctest::Approx(1.0));
    // roots of 4x^2 - x - 2: theta = (3 +- sqrt(33))/2
    CHECK(join.theta2 == doctest::Approx((3.0 + std::sqrt(33.0)) / 2.0).epsilon(1e-12));
    CHECK(join.theta1 == doctest::Approx((3.0 - std::sqrt(33.0)) / 2.0).epsilon(1e-12));
    CHECK(join.tau_pred == doctest::Approx(2.0 * M_PI / std::sqrt(33.0)).epsilon(1e-12));

    // the cancellation identity at tau_pred
    const std::complex<double> lhs =
        std::exp(-I_UNIT * join.tau_pred * join.theta1) * join.alpha1 /
            (join.alpha1 * join.alpha1 * 4.0 + 2.0) +
        std::exp(-I_UNIT * join.tau_pred * join.theta2) * join.alpha2 /
            (join.alpha2 * join.alpha2 * 4.0 + 2.0);
    CHECK(std::abs(lhs) < 1e-9);

    const auto s = spectral_decomposition(join.graph);
    const auto cert = verify_k_fr(s, subset_projector({0, 1, 2, 3}, 6), join.tau_pred);
    CHECK(cert.kind != RevivalKind::none);

    CHECK_THROWS_AS(join_graphs(subdivided_star(2), k2_graph()), Error);
}

TEST_CASE("join of two isolated vertices is K_2") {
    const auto join = join_graphs(complete_graph(1), complete_graph(1));
    CHECK(join.graph.n == 2);
    CHECK(join.graph.weights(0, 1) == doctest::Approx(1.0));
    CHECK(join.tau_pred == doctest::Approx(M_PI).epsilon(1e-12));
}

TEST_CASE("cover parameter predictions") {
    const auto klin = cover_fr_prediction(36, 3, 12);
    CHECK(klin.delta == -2);
    REQUIRE(klin.tau.has_value());
    CHECK(*klin.tau == doctest::Approx(M_PI / 6.0).epsilon(1e-12));

    const auto degenerate = cover_fr_prediction(4, 2, 1);
    CHECK(degenerate.delta == 0);
    CHECK_FALSE(degenerate.tau.has_value());

    // delta = 2 branch phase: e^{-i theta_3 tau} = e^{(2m-1) pi i / 2m}
    const auto plus = cover_fr_prediction(16, 3, 4);
    CHECK(plus.delta == 2);
    REQUIRE(plus.tau.has_value());
    const int m = plus.m;
    const std::complex<double> phase =
        std::exp(-I_UNIT * plus.eigenvalues[2] * *plus.tau);
    const std::complex<double> expected =
        std::exp(I_UNIT * ((2.0 * m - 1.0) * M_PI / (2.0 * m)));
    CHECK(std::abs(phase - expected) < 1e-12);
}

TEST_CASE("the cube is the (4,2,2) antipodal cover and revives its fibres") {
    const auto pred = cover_fr_prediction(4, 2, 2);
    CHECK(pred.delta == -2);
    REQUIRE(pred.tau.has_value());
    CHECK(*pred.tau == doctest::Approx(M_PI / 2.0));

    const auto cube = hypercube(3);
    std::vector<std::vector<int>> fibres{{0, 7}, {1, 6}, {2, 5}, {3, 4}};
    CHECK(cover_fibre_residual(cube, fibres, pred) < 1e-9);

    const auto s = spectral_decomposition(cube);
    for (const auto& fibre : fibres) {
        const auto cert = verify_k_fr(s, subset_projector(fibre, 8), *pred.tau);
        CHECK(cert.kind == RevivalKind::proper);
    }
}

TEST_CASE("polygamy golden values for the order-4 Hadamard") {
    const auto poly = hadamard_polygamy(2, {3, 5, 7});
    CHECK(poly.lambda == std::vector<std::int64_t>{0, 85, 36, 91});
    Eigen::MatrixXd expected(4, 4);
    expected << 53, -35, -10.5, -7.5,
        -35, 53, -7.5, -10.5,
        -10.5, -7.5, 53, -35,
        -7.5, -10.5, -35, 53;
    CHECK((poly.graph.weights - expected).cwiseAbs().maxCoeff() == 0.0);

    // U(2 pi / p_k) e_0 = (1 + w)/2 e_0 + (1 - w)/2 e_k with w = e^{-2 pi i / p_k}
    const auto s = spectral_decomposition(poly.graph);
    for (int k = 1; k <= 3; ++k) {
        const double p = static_cast<double>(poly.primes[k - 1]);
        const std::complex<double> w = std::exp(-2.0 * M_PI * I_UNIT / p);
        const auto state = evolve_vertex(s, 0, 2.0 * M_PI / p);
        Eigen::VectorXcd expect = Eigen::VectorXcd::Zero(4);
        expect(0) = 0.5 * (1.0 + w);
        expect(k) = 0.5 * (1.0 - w);
        CHECK((state - expect).cwiseAbs().maxCoeff() < 1e-8);
    }

    // every pair is predicted, and every prediction verifies
    CHECK(poly.predictions.size() == 6);
    for (const auto& pred : poly.predictions) {
        const auto cert = verify_k_fr(s, subset_projector(pred.subset, 4), pred.tau);
        CHECK(cert.kind == pred.expected);
        CHECK(cert.off_block_residual < 1e-7);
    }
}

TEST_CASE("polygamy order-8 family verifies all antipodal-difference pairs") {
    const auto poly = hadamard_polygamy(3, {3, 5, 7, 11, 13, 17, 19});
    const auto s = spectral_decomposition(poly.graph);
    for (int k = 1; k <= 7; ++k) {
        const double tau = 2.0 * M_PI / static_cast<double>(poly.primes[k - 1]);
        const auto cert = verify_k_fr(s, subset_projector({0, k}, 8), tau);
        CHECK(cert.kind == RevivalKind::proper);
        CHECK(cert.off_block_residual < 5e-8);
        const std::complex<double> w =
            std::exp(-2.0 * M_PI * I_UNIT / static_cast<double>(poly.primes[k - 1]));
        CHECK(std::abs(cert.block(0, 0) - 0.5 * (1.0 + w)) < 5e-8);
        CHECK(std::abs(cert.block(0, 1) - 0.5 * (1.0 - w)) < 5e-8);
    }
}

TEST_CASE("polygamy rejects bad prime lists") {
    CHECK_THROWS_AS(hadamard_polygamy(2, {3, 5}), Error);
    CHECK_THROWS_AS(hadamard_polygamy(2, {3, 5, 9}), Error);
    CHECK_THROWS_AS(hadamard_polygamy(2, {3, 5, 5}), Error);
    CHECK_THROWS_AS(hadamard_polygamy(2, {2, 5, 7}), Error);
}

TEST_CASE("raw normalized Hadamard input reproduces the Sylvester result") {
    Eigen::MatrixXd h(4, 4);
    h << 1, 1, 1, 1, 1, -1, 1, -1, 1, 1, -1, -1, 1, -1, -1, 1;
    const auto poly = hadamard_polygamy(h, {3, 5, 7});
    CHECK(poly.lambda == std::vector<std::int64_t>{0, 85, 36, 91});
    CHECK(poly.predictions.size() == 3);  // vertex transitivity not assumed
}

TEST_CASE("prescribed revival hits the requested block exactly") {
    Eigen::Matrix2cd h;
    h << 1.0 / std::sqrt(2.0), I_UNIT / std::sqrt(2.0), I_UNIT / std::sqrt(2.0),
        1.0 / std::sqrt(2.0);
    const double tau = M_PI / 8.0;
    const auto built = prescribed_fr(h, tau, 6);
    const auto s = spectral_decomposition(built.graph);
    const auto cert = verify_k_fr(s, subset_projector({0, 1}, 6), tau);
    REQUIRE(cert.kind == RevivalKind::proper);
    CHECK(cert.off_block_residual < 1e-8);
    CHECK((cert.block - h).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("prescribed adjacency matches the closed form") {
    Eigen::Matrix2cd h;
    const double p = 0.6, q = 0.8;
    const Eigen::Vector2d u(p, q), v(-q, p);
    const std::complex<double> l1 = std::exp(std::complex<double>(0, 0.4));
    const std::complex<double> l2 = std::exp(std::complex<double>(0, -1.3));
    h = l1 * (u * u.transpose()).cast<std::complex<double>>() +
        l2 * (v * v.transpose()).cast<std::complex<double>>();
    const double tau = 1.1;
    const int n = 7, m = 2;
    const auto built = prescribed_fr(h, tau, n, m);
    REQUIRE(built.block_m == m);
    const double t1 = built.theta[0], t2 = built.theta[1], t3 = built.theta[2],
                 t4 = built.theta[3];
    const auto& a = built.graph.weights;
    CHECK(a(0, 0) == doctest::Approx(((t1 + t2) * p * p + (t3 + t4) * q * q) / 2.0).epsilon(1e-10));
    CHECK(a(1, 1) == doctest::Approx(((t1 + t2) * q * q + (t3 + t4) * p * p) / 2.0).epsilon(1e-10));
    CHECK(a(0, 1) == doctest::Approx((t1 + t2 - t3 - t4) * p * q / 2.0).epsilon(1e-10));
    CHECK(a(0, 2) == doctest::Approx(p * (t1 - t2) / (2.0 * std::sqrt(m))).epsilon(1e-10));
    CHECK(a(1, 2) == doctest::Approx(q * (t1 - t2) / (2.0 * std::sqrt(m))).epsilon(1e-10));
    CHECK(a(0, 2 + m) ==
          doctest::Approx(-q * (t3 - t4) / (2.0 * std::sqrt(n - 2 - m))).epsilon(1e-10));
    CHECK(a(2, 2 + m) == doctest::Approx(0.0).epsilon(1e-12));

    // recovered class split must be {theta1, theta2} vs {theta3, theta4}
    const auto s = spectral_decomposition(built.graph);
    const auto rep = strongly_fractionally_cospectral(s, 0, 1, 1e-7);
    REQUIRE(rep.strongly_fractionally_cospectral);
    CHECK(*rep.p == doctest::Approx(p).epsilon(1e-7));
    CHECK(*rep.q == doctest::Approx(q).epsilon(1e-7));
    std::vector<double> plus_eigs, minus_eigs;
    for (int r : rep.class_plus) plus_eigs.push_back(s.eigenvalues(r));
    for (int r : rep.class_minus) minus_eigs.push_back(s.eigenvalues(r));
    std::sort(plus_eigs.begin(), plus_eigs.end());
    std::sort(minus_eigs.begin(), minus_eigs.end());
    std::vector<double> c1{std::min(t1, t2), std::max(t1, t2)};
    std::vector<double> c2{std::min(t3, t4), std::max(t3, t4)};
    REQUIRE(plus_eigs.size() == 2);
    REQUIRE(minus_eigs.size() == 2);
    for (int i = 0; i < 2; ++i) {
        CHECK(plus_eigs[i] == doctest::Approx(c1[i]).epsilon(1e-7));
        CHECK(minus_eigs[i] == doctest::Approx(c2[i]).epsilon(1e-7));
    }
}

TEST_CASE("prescribed validation errors") {
    Eigen::Matrix2cd good;
    good << 1.0 / std::sqrt(2.0), I_UNIT / std::sqrt(2.0), I_UNIT / std::sqrt(2.0),
        1.0 / std::sqrt(2.0);
    CHECK_THROWS_AS(prescribed_fr(good, 1.0, 3), Error);
    CHECK_THROWS_AS(prescribed_fr(good, 1.0, 8, 7), Error);
    CHECK_THROWS_AS(prescribed_fr(good, 1.0, 8, std::nullopt, 0), Error);
    Eigen::Matrix2cd diag = Eigen::Matrix2cd::Identity();
    CHECK_THROWS_AS(prescribed_fr(diag, 1.0, 6), Error);
    Eigen::Matrix2cd skew;
    skew << 0.0, 1.0, -1.0, 0.0;
    CHECK_THROWS_AS(prescribed_fr(skew, 1.0, 6), Error);
}

TEST_CASE("prescribed round trip over random blocks") {
    std::mt19937 rng(112);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
    std::uniform_real_distribution<double> tau_dist(0.2, 2.0 * M_PI);
    std::uniform_int_distribution<int> n_dist(4, 9);
    for (int trial = 0; trial < 15; ++trial) {
        const double mix = 0.15 + 0.7 * std::uniform_real_distribution<double>(0, 1)(rng);
        const double p = std::sin(0.5 * M_PI * mix), q = std::cos(0.5 * M_PI * mix);
        double a1 = angle(rng), a2 = angle(rng);
        if (std::abs(std::exp(std::complex<double>(0, a1)) -
                     std::exp(std::complex<double>(0, a2))) < 0.1)
            a2 += 0.5;
        const Eigen::Vector2d u(p, q), v(-q, p);
        const Eigen::Matrix2cd h =
            std::exp(std::complex<double>(0, a1)) *
                (u * u.transpose()).cast<std::complex<double>>() +
            std::exp(std::complex<double>(0, a2)) *
                (v * v.transpose()).cast<std::complex<double>>();
        const double tau = tau_dist(rng);
        const auto built = prescribed_fr(h, tau, n_dist(rng));
        const auto s = spectral_decomposition(built.graph);
        const auto cert = verify_k_fr(s, subset_projector({0, 1}, built.graph.n), tau);
        REQUIRE(cert.kind == RevivalKind::proper);
        CHECK((cert.block - h).cwiseAbs().maxCoeff() < 1e-8);
        const auto rep = strongly_fractionally_cospectral(s, 0, 1, 1e-7);
        REQUIRE(rep.strongly_fractionally_cospectral);
        CHECK(std::abs(*rep.p - p) < 1e-7);
        CHECK(std::abs(*rep.q - q) < 1e-7);
    }
}

TEST_CASE("builder predictions all verify") {
    struct Case {
        std::string kind;
        WeightedGraph graph;
        int parameter;
    };
    std::vector<Case> cases;
    cases.push_back({"cocktail_party", cocktail_party(3), 3});
    cases.push_back({"cocktail_party", cocktail_party(5), 5});
    cases.push_back({"subdivided_star", subdivided_star(2), 2});
    cases.push_back({"subdivided_star", subdivided_star(4), 4});
    cases.push_back({"hypercube", hypercube(2), 2});
    cases.push_back({"hypercube", hypercube(3), 3});
    cases.push_back({"complete", complete_graph(5), 5});
    for (const auto& c : cases) {
        const auto s = spectral_decomposition(c.graph);
        for (const auto& pred : base_predictions(c.kind, c.graph, c.parameter)) {
            const auto cert = verify_k_fr(s, subset_projector(pred.subset, c.graph.n), pred.tau);
            CHECK(cert.kind == pred.expected);
            if (pred.expected != RevivalKind::none) CHECK(cert.off_block_residual < 1e-7);
        }
    }
}
