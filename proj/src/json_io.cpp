#include "frevival/json_io.hpp"

#include <fstream>

#include "frevival/errors.hpp"

namespace frevival {

json graph_to_json(const WeightedGraph& g) {
    json j;
    j["n"] = g.n;
    j["labels"] = g.labels;
    json rows = json::array();
    for (int i = 0; i < g.n; ++i) {
        json row = json::array();
        for (int k = 0; k < g.n; ++k) row.push_back(g.weights(i, k));
        rows.push_back(std::move(row));
    }
    j["matrix"] = std::move(rows);
    return j;
}

WeightedGraph graph_from_json(const json& j) {
    if (!j.contains("n")) fail("cli-reporter/BadGraphJson", "missing field \"n\"");
    const int n = j.at("n").get<int>();
    if (n < 0) fail("cli-reporter/BadGraphJson", "negative vertex count");

    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
    if (j.contains("matrix")) {
        const auto& rows = j.at("matrix");
        if (static_cast<int>(rows.size()) != n)
            fail("cli-reporter/BadGraphJson", "matrix row count does not match n");
        for (int i = 0; i < n; ++i) {
            if (static_cast<int>(rows[i].size()) != n)
                fail("cli-reporter/BadGraphJson", "matrix is not square");
            for (int k = 0; k < n; ++k) w(i, k) = rows[i][k].get<double>();
        }
    } else {
        if (j.contains("edges"))
            for (const auto& e : j.at("edges")) {
                if (e.size() != 3) fail("cli-reporter/BadGraphJson", "edge entries are [i, j, w]");
                const int a = e[0].get<int>(), b = e[1].get<int>();
                if (a < 0 || a >= n || b < 0 || b >= n)
                    fail("cli-reporter/BadGraphJson", "edge endpoint out of range");
                w(a, b) = w(b, a) = e[2].get<double>();
            }
        if (j.contains("loops"))
            for (const auto& l : j.at("loops")) {
                if (l.size() != 2) fail("cli-reporter/BadGraphJson", "loop entries are [i, w]");
                const int a = l[0].get<int>();
                if (a < 0 || a >= n) fail("cli-reporter/BadGraphJson", "loop vertex out of range");
                w(a, a) = l[1].get<double>();
            }
    }

    std::vector<std::string> labels;
    if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::string>>();
    return validate_graph(w, std::move(labels));
}

WeightedGraph load_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("cli-reporter/FileNotFound", path);
    json j;
    in >> j;
    return graph_from_json(j);
}

void save_graph(const WeightedGraph& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) fail("cli-reporter/FileNotWritable", path);
    out << graph_to_json(g).dump(2) << "\n";
}

namespace {

json complex_to_json(const std::complex<double>& z) {
    return json{{"re", z.real()}, {"im", z.imag()}};
}

json complex_matrix_to_json(const Eigen::MatrixXcd& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int k = 0; k < m.cols(); ++k) row.push_back(complex_to_json(m(i, k)));
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace

json ratio_to_json(const RatioCertificate& ratio) {
    json j;
    j["holds"] = ratio.holds;
    j["degenerate"] = ratio.degenerate;
    if (!ratio.degenerate) {
        j["base_pair"] = json::array({ratio.base_r, ratio.base_s});
        j["base_difference"] = ratio.base_difference;
        json entries = json::array();
        for (const auto& e : ratio.entries)
            entries.push_back(json{{"pair", json::array({e.r, e.s})},
                                   {"num", e.num},
                                   {"den", e.den},
                                   {"residual", e.residual}});
        j["entries"] = std::move(entries);
    }
    return j;
}

json certificate_to_json(const RevivalCertificate& cert) {
    json j;
    j["K"] = cert.subset;
    j["tau"] = cert.tau;
    j["kind"] = to_string(cert.kind);
    j["H"] = complex_matrix_to_json(cert.block);
    j["off_block_residual"] = cert.off_block_residual;
    j["commutator_residual"] = cert.commutator_residual;
    j["partition"] = cert.partition_used.classes;
    json phases = json::array();
    for (const auto& ph : cert.phases) phases.push_back(complex_to_json(ph));
    j["phases"] = std::move(phases);
    j["ratio_condition"] = ratio_to_json(cert.ratio);
    if (!cert.notes.empty()) j["notes"] = cert.notes;
    return j;
}

json report_to_json(const PairCospectralityReport& rep) {
    json j;
    j["a"] = rep.a;
    j["b"] = rep.b;
    if (rep.p) {
        j["p"] = *rep.p;
        j["q"] = *rep.q;
        j["ratio_plus"] = *rep.ratio_plus;
        j["ratio_minus"] = *rep.ratio_minus;
    }
    j["fractionally_cospectral"] = rep.fractionally_cospectral;
    j["cospectral"] = rep.cospectral;
    j["parallel"] = rep.parallel;
    j["strongly_fractionally_cospectral"] = rep.strongly_fractionally_cospectral;
    j["class_split"] = json{{"C1", rep.class_plus}, {"C2", rep.class_minus}, {"rest", rep.class_zero}};
    j["per_condition"] = rep.per_condition;
    j["no_nondiagonal_restriction"] = rep.no_nondiagonal_restriction;
    if (!rep.notes.empty()) j["notes"] = rep.notes;
    return j;
}

json quadratic_to_json(const QuadraticExtraction& extraction) {
    json j;
    j["ok"] = extraction.ok;
    j["denominator_cap"] = extraction.denominator_cap;
    if (!extraction.ok) {
        j["failure"] = extraction.failure;
        return j;
    }
    const auto& d = extraction.data;
    j["delta"] = d.delta;
    j["sqrt_delta"] = d.sqrt_delta;
    j["rho1"] = d.rho1;
    j["rho2"] = d.rho2;
    j["sigma"] = d.sigma;
    j["omega"] = d.omega;
    j["g"] = d.g;
    j["gcd_defaulted"] = d.gcd_defaulted;
    j["C1"] = d.c1;
    j["C2"] = d.c2;
    return j;
}

json intpoly_to_json(const IntPoly& poly) {
    json out = json::array();
    for (const auto& c : poly.coeffs) out.push_back(c.to_string());
    return out;
}

json prediction_to_json(const Prediction& pred) {
    json j;
    j["K"] = pred.subset;
    j["tau"] = pred.tau;
    j["expected_kind"] = to_string(pred.expected);
    if (!pred.note.empty()) j["note"] = pred.note;
    return j;
}

namespace {

WeightedGraph graph_argument(const json& params, const char* key) {
    if (!params.contains(key))
        fail("cli-reporter/BadRecipe", std::string("missing sub-recipe \"") + key + "\"");
    const json& sub = params.at(key);
    if (sub.contains("kind")) {
        RecipeResult nested = build_recipe(sub);
        if (!nested.graph)
            fail("cli-reporter/BadRecipe", std::string(key) + " recipe builds no graph");
        return *nested.graph;
    }
    return graph_from_json(sub);
}

}  // namespace

RecipeResult build_recipe(const json& recipe) {
    if (!recipe.contains("kind")) fail("cli-reporter/BadRecipe", "missing \"kind\"");
    const std::string kind = recipe.at("kind").get<std::string>();
    const json params = recipe.value("params", json::object());

    RecipeResult out;
    if (kind == "cocktail_party") {
        const int n = params.value("n", 0);
        out.graph = cocktail_party(n);
        out.predictions = base_predictions(kind, *out.graph, n);
    } else if (kind == "subdivided_star") {
        const int m = params.value("m", 0);
        out.graph = subdivided_star(m);
        out.predictions = base_predictions(kind, *out.graph, m);
    } else if (kind == "hypercube") {
        const int d = params.value("d", 0);
        out.graph = hypercube(d);
        out.predictions = base_predictions(kind, *out.graph, d);
    } else if (kind == "rook") {
        out.graph = rook_graph(params.value("n", 0));
    } else if (kind == "complete") {
        const int n = params.value("n", 0);
        out.graph = complete_graph(n);
        out.predictions = base_predictions(kind, *out.graph, n);
    } else if (kind == "cartesian") {
        out.graph = cartesian_product(graph_argument(params, "x"), graph_argument(params, "y"));
    } else if (kind == "direct") {
        out.graph = direct_product(graph_argument(params, "x"), graph_argument(params, "y"));
    } else if (kind == "double_cover") {
        const WeightedGraph y = graph_argument(params, "y");
        const WeightedGraph x =
            params.value("switching", false) ? switching_graph(y) : graph_argument(params, "x");
        out.graph = double_cover(x, y);
    } else if (kind == "join") {
        const WeightedGraph x = graph_argument(params, "x");
        const JoinResult join = join_graphs(x, graph_argument(params, "y"));
        out.graph = join.graph;
        std::vector<int> left(x.n);
        for (std::size_t i = 0; i < left.size(); ++i) left[i] = static_cast<int>(i);
        out.predictions.push_back({left, join.tau_pred, RevivalKind::proper,
                                   "V(X) revival at 2*pi/(theta2-theta1)"});
        out.meta["tau_pred"] = join.tau_pred;
        out.meta["theta1"] = join.theta1;
        out.meta["theta2"] = join.theta2;
    } else if (kind == "cover_params") {
        const CoverPrediction pred = cover_fr_prediction(
            params.value("n", 0), params.value("r", 0), params.value("c", 0));
        out.meta["delta"] = pred.delta;
        out.meta["eigenvalues"] = json::array({pred.eigenvalues[0], pred.eigenvalues[1],
                                               pred.eigenvalues[2], pred.eigenvalues[3]});
        if (pred.tau) {
            out.meta["tau"] = *pred.tau;
            out.meta["m"] = pred.m;
        }
    } else if (kind == "hadamard_polygamy") {
        std::vector<std::int64_t> primes = params.value("primes", std::vector<std::int64_t>{});
        PolygamyResult poly =
            params.contains("hadamard")
                ? hadamard_polygamy(graph_from_json(json{{"n", params.at("hadamard").size()},
                                                         {"matrix", params.at("hadamard")}})
                                        .weights,
                                    std::move(primes))
                : hadamard_polygamy(params.value("m", 0), std::move(primes));
        out.graph = poly.graph;
        out.predictions = poly.predictions;
        out.meta["lambda"] = poly.lambda;
        out.meta["primes"] = poly.primes;
    } else if (kind == "prescribed") {
        if (!params.contains("H") || !params.contains("tau") || !params.contains("n"))
            fail("cli-reporter/BadRecipe", "prescribed needs H, tau, n");
        Eigen::Matrix2cd h;
        const auto& hj = params.at("H");
        for (int i = 0; i < 2; ++i)
            for (int k = 0; k < 2; ++k)
                h(i, k) = std::complex<double>(hj[i][k].at("re").get<double>(),
                                               hj[i][k].at("im").get<double>());
        std::optional<int> m;
        if (params.contains("m")) m = params.at("m").get<int>();
        const PrescribedResult built =
            prescribed_fr(h, params.at("tau").get<double>(), params.at("n").get<int>(), m,
                          params.value("sigma", 1), params.value("omega", 1));
        out.graph = built.graph;
        out.predictions.push_back({{0, 1}, built.tau, RevivalKind::proper, "prescribed block"});
        out.meta["theta"] = json::array({built.theta[0], built.theta[1], built.theta[2], built.theta[3]});
        out.meta["p"] = built.p;
        out.meta["q"] = built.q;
    } else {
        fail("cli-reporter/BadRecipe", "unknown kind \"" + kind + "\"");
    }
    return out;
}

}  // namespace frevival
