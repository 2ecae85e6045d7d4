#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>
#include <tuple>

#include "frevival/constructions.hpp"
#include "frevival/errors.hpp"
#include "frevival/json_io.hpp"
#include "test_support.hpp"

using namespace frevival;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

struct RunResult {
    int exit_code = -1;
    std::string stdout_text;
};

RunResult run_cli(const std::string& args) {
    const std::string out_path = "/tmp/frevival_cli_out.txt";
    const std::string command =
        std::string(FREVIVAL_CLI_PATH) + " " + args + " > " + out_path + " 2>/dev/null";
    const int status = std::system(command.c_str());
    RunResult result;
    result.exit_code = WEXITSTATUS(status);
    result.stdout_text = slurp(out_path);
    return result;
}

}  // namespace

TEST_CASE("graph json round trip is value-exact through matrix form") {
    std::mt19937 rng(77);
    const auto g = testsupport::random_weighted_graph(6, rng);
    const json j1 = graph_to_json(g);
    const auto g2 = graph_from_json(j1);
    const json j2 = graph_to_json(g2);
    CHECK(j1.dump() == j2.dump());
    CHECK((g.weights - g2.weights).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("graph json accepts the edge and loop form") {
    const json j = {{"n", 3},
                    {"edges", json::array({json::array({0, 1, 1.5}), json::array({1, 2, -2.0})})},
                    {"loops", json::array({json::array({2, 0.25})})}};
    const auto g = graph_from_json(j);
    CHECK(g.weights(0, 1) == 1.5);
    CHECK(g.weights(2, 1) == -2.0);
    CHECK(g.weights(2, 2) == 0.25);
    CHECK_FALSE(g.integer_weighted);

    const json bad = {{"n", 2}, {"edges", json::array({json::array({0, 5, 1.0})})}};
    CHECK_THROWS_AS(graph_from_json(bad), Error);
}

TEST_CASE("matrix wins over edges when both are present") {
    const json j = {{"n", 2},
                    {"matrix", json::array({json::array({0.0, 3.0}), json::array({3.0, 0.0})})},
                    {"edges", json::array({json::array({0, 1, 1.0})})}};
    CHECK(graph_from_json(j).weights(0, 1) == 3.0);
}

TEST_CASE("recipe building covers every kind") {
    CHECK(build_recipe(json::parse(R"({"kind":"cocktail_party","params":{"n":3}})")).graph->n == 6);
    CHECK(build_recipe(json::parse(R"({"kind":"subdivided_star","params":{"m":3}})")).graph->n == 7);
    CHECK(build_recipe(json::parse(R"({"kind":"hypercube","params":{"d":3}})")).graph->n == 8);
    CHECK(build_recipe(json::parse(R"({"kind":"rook","params":{"n":3}})")).graph->n == 9);
    CHECK(build_recipe(json::parse(R"({"kind":"complete","params":{"n":4}})")).graph->n == 4);

    const auto cart = build_recipe(json::parse(
        R"({"kind":"cartesian","params":{"x":{"kind":"complete","params":{"n":2}},
            "y":{"kind":"complete","params":{"n":2}}}})"));
    CHECK(cart.graph->n == 4);

    const auto cover = build_recipe(json::parse(
        R"({"kind":"double_cover","params":{"y":{"kind":"rook","params":{"n":3}},"switching":true}})"));
    CHECK(cover.graph->n == 18);

    const auto join = build_recipe(json::parse(
        R"({"kind":"join","params":{"x":{"kind":"cocktail_party","params":{"n":2}},
            "y":{"kind":"complete","params":{"n":2}}}})"));
    CHECK(join.graph->n == 6);
    CHECK(join.meta.contains("tau_pred"));

    const auto cover_params =
        build_recipe(json::parse(R"({"kind":"cover_params","params":{"n":36,"r":3,"c":12}})"));
    CHECK_FALSE(cover_params.graph.has_value());
    CHECK(cover_params.meta.at("tau").get<double>() == doctest::Approx(M_PI / 6.0));

    const auto poly = build_recipe(json::parse(
        R"({"kind":"hadamard_polygamy","params":{"m":2,"primes":[3,5,7]}})"));
    CHECK(poly.graph->n == 4);
    CHECK(poly.meta.at("lambda").get<std::vector<std::int64_t>>() ==
          std::vector<std::int64_t>{0, 85, 36, 91});

    const auto prescribed = build_recipe(json::parse(
        R"({"kind":"prescribed","params":{"n":6,"tau":0.3926990816987241,
            "H":[[{"re":0.7071067811865476,"im":0},{"re":0,"im":0.7071067811865476}],
                 [{"re":0,"im":0.7071067811865476},{"re":0.7071067811865476,"im":0}]]}})"));
    CHECK(prescribed.graph->n == 6);

    CHECK_THROWS_AS(build_recipe(json::parse(R"({"kind":"mystery"})")), Error);
}

TEST_CASE("certificate json carries the schema fields") {
    const auto s = spectral_decomposition(cocktail_party(2));
    const auto cert = find_revival_time(s, subset_projector({0, 1}, 4));
    const json j = certificate_to_json(cert);
    CHECK(j.at("kind") == "proper");
    CHECK(j.at("K") == json::array({0, 1}));
    CHECK(j.contains("tau"));
    CHECK(j.contains("H"));
    CHECK(j.contains("off_block_residual"));
    CHECK(j.contains("partition"));
    CHECK(j.contains("phases"));
    CHECK(j.at("H")[0][1].contains("re"));
    CHECK(j.at("H")[0][1].contains("im"));
}

TEST_CASE("cli analyze exit codes distinguish found and none") {
    const auto found = run_cli(
        "analyze --recipe '{\"kind\":\"cocktail_party\",\"params\":{\"n\":4}}' --subset 0,1");
    CHECK(found.exit_code == 0);
    CHECK(found.stdout_text.find("kind=proper") != std::string::npos);

    const auto none = run_cli(
        "analyze --recipe '{\"kind\":\"subdivided_star\",\"params\":{\"m\":2}}' --subset 0,3,4");
    CHECK(none.exit_code == 3);

    const auto error = run_cli("analyze --graph /nonexistent.json --subset 0");
    CHECK(error.exit_code == 1);
}

TEST_CASE("cli json output is deterministic across runs") {
    const std::string args =
        "pair --recipe '{\"kind\":\"hadamard_polygamy\",\"params\":{\"m\":2,\"primes\":[3,5,7]}}' "
        "--pair 0,1 --format json";
    const auto first = run_cli(args);
    const auto second = run_cli(args);
    CHECK(first.exit_code == 0);
    CHECK(first.stdout_text == second.stdout_text);
    CHECK_FALSE(first.stdout_text.empty());
    const json parsed = json::parse(first.stdout_text);
    CHECK(parsed.at("report").at("strongly_fractionally_cospectral") == true);
}

TEST_CASE("cli evolve prints the spider column with silent middles") {
    const auto run = run_cli(
        "evolve --recipe '{\"kind\":\"subdivided_star\",\"params\":{\"m\":3}}' --subset 0 "
        "--time 1.5707963267948966 --format json");
    REQUIRE(run.exit_code == 0);
    const json state = json::parse(run.stdout_text).at("state");
    for (int middle : {1, 2, 3}) {
        const double re = state[middle].at("re").get<double>();
        const double im = state[middle].at("im").get<double>();
        CHECK(std::abs(std::complex<double>(re, im)) < 1e-8);
    }
}

TEST_CASE("cli sweep finds the K_2 transfer peak") {
    const auto run = run_cli(
        "sweep --recipe '{\"kind\":\"complete\",\"params\":{\"n\":2}}' --subset 0 "
        "--grid 0:3.2:65 --format json");
    REQUIRE(run.exit_code == 0);
    const json peak = json::parse(run.stdout_text).at("peak");
    CHECK(peak.at("fidelity").get<double>() == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(peak.at("t").get<double>() == doctest::Approx(M_PI / 2.0).epsilon(0.05));
    CHECK(peak.at("partner").get<int>() == 1);
}

TEST_CASE("cli construct writes a graph file that loads back") {
    const std::string path = "/tmp/frevival_construct_test.json";
    const auto run = run_cli(
        "construct --recipe '{\"kind\":\"hadamard_polygamy\",\"params\":{\"m\":2,"
        "\"primes\":[3,5,7]}}' --out " + path + " --format json");
    REQUIRE(run.exit_code == 0);
    const auto g = load_graph(path);
    CHECK(g.n == 4);
    CHECK(g.weights(0, 0) == 53.0);
    CHECK(g.weights(0, 2) == -10.5);
    std::remove(path.c_str());
}

TEST_CASE("sweep rows at the polygamy revival times show the predicted partners") {
    // Grid from 2 pi/7 to 2 pi/3 in 11 steps: indices 0, 3 and 10 land exactly
    // on the three revival times (the spacing fraction of 2 pi/5 is 3/10).
    std::ostringstream grid_arg;
    grid_arg.precision(16);
    grid_arg << 2.0 * M_PI / 7.0 << ":" << 2.0 * M_PI / 3.0 << ":11";
    const auto run = run_cli(
        "sweep --recipe '{\"kind\":\"hadamard_polygamy\",\"params\":{\"m\":2,\"primes\":[3,5,7]}}' "
        "--subset 0 --grid " + grid_arg.str() + " --format json");
    REQUIRE(run.exit_code == 0);
    const json grid = json::parse(run.stdout_text).at("grid");
    REQUIRE(grid.size() == 11);
    // |beta| = |1 - e^{-2 pi i/p}| / 2 = sin(pi/p), partner k at time 2 pi/p_k
    const std::vector<std::tuple<int, int, double>> expectations{
        {0, 3, std::sin(M_PI / 7.0)}, {3, 2, std::sin(M_PI / 5.0)}, {10, 1, std::sin(M_PI / 3.0)}};
    for (const auto& [index, partner, fidelity] : expectations) {
        CHECK(grid[index].at("partner").get<int>() == partner);
        CHECK(grid[index].at("fidelity").get<double>() ==
              doctest::Approx(fidelity).epsilon(1e-6));
    }
}

TEST_CASE("FREVIVAL_TOL environment override") {
    const std::string base =
        "analyze --recipe '{\"kind\":\"complete\",\"params\":{\"n\":3}}' --subset 0";
    const std::string out = "/tmp/frevival_env_out.txt";
    int status = std::system(("FREVIVAL_TOL=1e-9 " + std::string(FREVIVAL_CLI_PATH) + " " + base +
                              " > " + out + " 2>/dev/null")
                                 .c_str());
    CHECK(WEXITSTATUS(status) == 0);
    status = std::system(("FREVIVAL_TOL=not_a_number " + std::string(FREVIVAL_CLI_PATH) + " " +
                          base + " > " + out + " 2>/dev/null")
                             .c_str());
    CHECK(WEXITSTATUS(status) == 1);
}

TEST_CASE("saved graphs reload bit-identically") {
    std::mt19937 rng(9);
    const auto g = testsupport::random_weighted_graph(5, rng);
    const std::string path = "/tmp/frevival_roundtrip_test.json";
    save_graph(g, path);
    const auto reloaded = load_graph(path);
    const std::string again_path = "/tmp/frevival_roundtrip_test2.json";
    save_graph(reloaded, again_path);
    CHECK(slurp(path) == slurp(again_path));
    std::remove(path.c_str());
    std::remove(again_path.c_str());
}
