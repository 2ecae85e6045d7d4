#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "frevival/constructions.hpp"
#include "frevival/cospectrality.hpp"
#include "frevival/graph.hpp"
#include "frevival/integer_revival.hpp"
#include "frevival/partition.hpp"

namespace frevival {

using json = nlohmann::ordered_json;

// Graph schema: {"n": int, "labels": [str]?, "edges": [[i,j,w]],
// "loops": [[i,w]]?, "matrix": [[...]]?}; "matrix" wins when present.
json graph_to_json(const WeightedGraph& g);
WeightedGraph graph_from_json(const json& j);
WeightedGraph load_graph(const std::string& path);
void save_graph(const WeightedGraph& g, const std::string& path);

json certificate_to_json(const RevivalCertificate& cert);
json ratio_to_json(const RatioCertificate& ratio);
json report_to_json(const PairCospectralityReport& rep);
json quadratic_to_json(const QuadraticExtraction& extraction);
json prediction_to_json(const Prediction& pred);

// Exact integer polynomial as decimal-string coefficients, lowest degree first.
json intpoly_to_json(const IntPoly& poly);

struct RecipeResult {
    std::optional<WeightedGraph> graph;  // absent for parameter-only kinds
    std::vector<Prediction> predictions;
    json meta;  // kind-specific extras (lambda list, predicted times, ...)
};

// {"kind": "...", "params": {...}}; product kinds nest recipes under
// params.x / params.y (either a recipe object or an inline graph object).
RecipeResult build_recipe(const json& recipe);

}  // namespace frevival
