// frevival: decide, certify and construct K-fractional revival in
// continuous-time quantum walks on weighted graphs.
//
// Subcommands:
//   analyze    eigenvalue support, minimal commuting partition, ratio
//              condition and revival certificate for a subset K
//   pair       cospectrality report for a vertex pair, plus the exact
//              quadratic-integer revival analysis on integer-weighted graphs
//   evolve     print U(t) e_a
//   sweep      fidelity sweep max_b |U(t)_{a,b}| over a time grid
//   construct  build a graph family from a recipe, with its predictions
//
// Exit codes: 0 success (analyze: revival found), 3 analyze found kind=none,
// 1 error.

#include <CLI11.hpp>

#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include "frevival/constructions.hpp"
#include "frevival/cospectrality.hpp"
#include "frevival/errors.hpp"
#include "frevival/graph.hpp"
#include "frevival/integer_revival.hpp"
#include "frevival/json_io.hpp"
#include "frevival/partition.hpp"
#include "frevival/spectral.hpp"

namespace {

using namespace frevival;

struct CommonOptions {
    std::string graph_path;
    std::string recipe_text;
    std::string subset_text;
    std::string pair_text;
    std::string format = "text";
    double tol = 1e-8;
    bool tol_overridden = false;  // via flag or FREVIVAL_TOL
    double cluster_tol = -1.0;    // <= 0: scaled default
    std::int64_t max_denominator = 1000000;
    double ratio_tol = 1e-13;
    std::optional<double> time;
    std::string grid_text;
    std::string out_path;

    RevivalOptions revival_options() const {
        RevivalOptions rev;
        rev.max_denominator = max_denominator;
        rev.ratio_tol = ratio_tol;
        // the proper/periodic threshold stays at its 1e-7 default unless the
        // user overrides the tolerance explicitly
        if (tol_overridden && tol > 0) rev.classify_tol = tol;
        return rev;
    }
};

std::vector<int> parse_int_list(const std::string& text, const char* what) {
    std::vector<int> out;
    std::stringstream stream(text);
    std::string item;
    while (std::getline(stream, item, ',')) {
        try {
            out.push_back(std::stoi(item));
        } catch (const std::exception&) {
            fail("cli-reporter/BadArgument", std::string("cannot parse ") + what + ": " + item);
        }
    }
    if (out.empty()) fail("cli-reporter/BadArgument", std::string(what) + " is empty");
    return out;
}

WeightedGraph resolve_graph(const CommonOptions& opt, json* recipe_meta = nullptr) {
    const bool has_file = !opt.graph_path.empty();
    const bool has_recipe = !opt.recipe_text.empty();
    if (has_file == has_recipe)
        fail("cli-reporter/BadArgument", "provide exactly one of --graph and --recipe");
    if (has_file) return load_graph(opt.graph_path);
    const RecipeResult built = build_recipe(json::parse(opt.recipe_text));
    if (recipe_meta) *recipe_meta = built.meta;
    if (!built.graph)
        fail("cli-reporter/BadArgument", "recipe kind produces parameters, not a graph");
    return *built.graph;
}

SpectralDecomposition decompose(const WeightedGraph& g, const CommonOptions& opt) {
    return opt.cluster_tol > 0.0 ? spectral_decomposition(g, opt.cluster_tol)
                                 : spectral_decomposition(g);
}

std::string format_sig(double value, int digits = 12) {
    std::ostringstream out;
    out << std::setprecision(digits) << value;
    return out.str();
}

std::string eigenvalue_class_text(const SpectralDecomposition& s, const std::vector<int>& cls) {
    std::string out = "{";
    for (std::size_t i = 0; i < cls.size(); ++i) {
        if (i) out += ", ";
        out += format_sig(s.eigenvalues(cls[i]));
    }
    return out + "}";
}

void emit(const json& payload, const CommonOptions& opt, std::ostream& text_fallback_stream,
          const std::string& text_report) {
    if (opt.format == "json")
        std::cout << payload.dump(2) << "\n";
    else
        text_fallback_stream << text_report;
}

int cmd_analyze(const CommonOptions& opt) {
    const WeightedGraph g = resolve_graph(opt);
    const SpectralDecomposition s = decompose(g, opt);
    const auto k = subset_projector(parse_int_list(opt.subset_text, "--subset"), g.n);

    const double zero_tol = default_zero_tol(g.n);
    const auto support = eigenvalue_support(s, k, zero_tol);
    const auto ci = min_commuting_partition(s, k, zero_tol);
    const bool decomposable = is_properly_decomposable(g, ci);
    const auto cert = find_revival_time(s, k, opt.revival_options());

    json payload;
    payload["graph"] = {{"n", g.n}, {"integer_weighted", g.integer_weighted}};
    json eigs = json::array();
    for (int r = 0; r <= s.d(); ++r) eigs.push_back(s.eigenvalues(r));
    payload["eigenvalues"] = std::move(eigs);
    payload["subset"] = k.subset;
    json support_pairs = json::array();
    for (const auto& [r, t] : support.pairs)
        if (r <= t) support_pairs.push_back(json::array({r, t}));
    payload["eigenvalue_support"] = std::move(support_pairs);
    payload["partition"] = ci.partition.classes;
    json restrictions = json::array();
    for (std::size_t j = 0; j < ci.restricted.size(); ++j)
        restrictions.push_back(
            {{"nonzero", static_cast<bool>(ci.nonzero_restriction[j])},
             {"max_abs", ci.restricted[j].size() ? ci.restricted[j].cwiseAbs().maxCoeff() : 0.0}});
    payload["restrictions"] = std::move(restrictions);
    payload["properly_decomposable"] = decomposable;
    payload["certificate"] = certificate_to_json(cert);

    std::ostringstream text;
    text << "graph: n=" << g.n << " integer_weighted=" << (g.integer_weighted ? "true" : "false")
         << "\n";
    text << "eigenvalues:";
    for (int r = 0; r <= s.d(); ++r) text << " " << format_sig(s.eigenvalues(r));
    text << "\nsubset K:";
    for (int v : k.subset) text << " " << v;
    text << "\neigenvalue support pairs:";
    bool any_pair = false;
    for (const auto& [r, t] : support.pairs)
        if (r <= t) {
            text << " (" << format_sig(s.eigenvalues(r), 6) << ", "
                 << format_sig(s.eigenvalues(t), 6) << ")";
            any_pair = true;
        }
    if (!any_pair) text << " none";
    text << "\nminimal commuting partition (as eigenvalue classes):\n";
    for (std::size_t j = 0; j < ci.partition.classes.size(); ++j)
        text << "  class " << j << ": " << eigenvalue_class_text(s, ci.partition.classes[j])
             << (ci.nonzero_restriction[j] ? "  [restriction nonzero]" : "  [restriction zero]")
             << "\n";
    text << "properly decomposable: " << (decomposable ? "true" : "false") << "\n";
    text << "ratio condition: "
         << (cert.ratio.degenerate ? "degenerate (vacuously true)"
                                   : (cert.ratio.holds ? "holds" : "fails"))
         << "\n";
    text << "certificate: kind=" << to_string(cert.kind);
    if (cert.kind != RevivalKind::none)
        text << " tau=" << format_sig(cert.tau)
             << " off_block_residual=" << format_sig(cert.off_block_residual, 3);
    text << "\n";

    emit(payload, opt, std::cout, text.str());
    return cert.kind == RevivalKind::none ? 3 : 0;
}

int cmd_pair(const CommonOptions& opt) {
    const WeightedGraph g = resolve_graph(opt);
    const SpectralDecomposition s = decompose(g, opt);
    const auto pair = parse_int_list(opt.pair_text, "--pair");
    if (pair.size() != 2) fail("cli-reporter/BadArgument", "--pair needs exactly two vertices");
    const int a = pair[0], b = pair[1];

    const PairCospectralityReport rep = pair_report(g, s, a, b, opt.tol);
    json payload;
    payload["report"] = report_to_json(rep);
    if (g.integer_weighted) {
        payload["char_polys"] = {{"phi", intpoly_to_json(char_poly_exact(g))},
                                 {"phi_minus_a", intpoly_to_json(char_poly_exact_deleted(g, {a}))},
                                 {"phi_minus_b", intpoly_to_json(char_poly_exact_deleted(g, {b}))},
                                 {"phi_minus_ab", intpoly_to_json(char_poly_exact_deleted(g, {a, b}))}};
    }

    std::optional<QuadraticExtraction> quad;
    std::optional<MinimalProperTime> minimal;
    if (rep.strongly_fractionally_cospectral && g.integer_weighted) {
        quad = extract_quadratic_data(g, s, rep.class_plus, rep.class_minus,
                                      {opt.max_denominator, true});
        payload["quadratic"] = quadratic_to_json(*quad);
        if (quad->ok) {
            minimal = minimal_proper_time(quad->data);
            if (minimal) {
                payload["minimal_proper_time"] = {{"tau", minimal->tau},
                                                  {"k", minimal->k},
                                                  {"warned_k_gt_1", minimal->warned_k_gt_1}};
                const auto check = verify_k_fr(s, subset_projector({a, b}, g.n), minimal->tau);
                payload["minimal_proper_time"]["verified_kind"] = to_string(check.kind);
            } else {
                payload["minimal_proper_time"] = nullptr;
            }
        }
    }
    const auto cert = find_revival_time(s, subset_projector({a, b}, g.n), opt.revival_options());
    payload["certificate"] = certificate_to_json(cert);

    std::ostringstream text;
    text << "pair (" << a << ", " << b << ")\n";
    text << "fractionally cospectral: " << (rep.fractionally_cospectral ? "true" : "false") << "\n";
    if (rep.p)
        text << "p, q: " << format_sig(*rep.p) << ", " << format_sig(*rep.q) << "\n";
    text << "cospectral: " << (rep.cospectral ? "true" : "false") << "\n";
    text << "parallel: " << (rep.parallel ? "true" : "false") << "\n";
    text << "strongly fractionally cospectral: "
         << (rep.strongly_fractionally_cospectral ? "true" : "false") << "\n";
    if (rep.strongly_fractionally_cospectral) {
        text << "C1 eigenvalues: " << eigenvalue_class_text(s, rep.class_plus) << "\n";
        text << "C2 eigenvalues: " << eigenvalue_class_text(s, rep.class_minus) << "\n";
    }
    if (quad && quad->ok) {
        text << "quadratic data: Delta=" << quad->data.delta << " g=" << quad->data.g
             << (quad->data.gcd_defaulted ? " (gcd defaulted; singleton classes)" : "") << "\n";
        if (minimal)
            text << "minimal proper time: " << format_sig(minimal->tau) << " (k=" << minimal->k
                 << ")\n";
        else
            text << "minimal proper time: none on the 2*pi*k/(g*sqrt(Delta)) lattice\n";
    }
    text << "revival certificate: kind=" << to_string(cert.kind);
    if (cert.kind != RevivalKind::none) text << " tau=" << format_sig(cert.tau);
    text << "\n";

    emit(payload, opt, std::cout, text.str());
    return 0;
}

int cmd_evolve(const CommonOptions& opt) {
    const WeightedGraph g = resolve_graph(opt);
    const SpectralDecomposition s = decompose(g, opt);
    if (!opt.time) fail("cli-reporter/BadArgument", "evolve needs --time");
    const auto subset = parse_int_list(opt.subset_text, "--subset");
    const int a = subset.front();
    const auto state = evolve_vertex(s, a, *opt.time);

    json payload;
    payload["vertex"] = a;
    payload["time"] = *opt.time;
    json entries = json::array();
    for (int v = 0; v < g.n; ++v)
        entries.push_back({{"re", state(v).real()}, {"im", state(v).imag()}});
    payload["state"] = std::move(entries);

    std::ostringstream text;
    text << "U(" << format_sig(*opt.time) << ") e_" << a << ":\n";
    for (int v = 0; v < g.n; ++v)
        text << "  " << v << ": " << format_sig(state(v).real()) << " + "
             << format_sig(state(v).imag()) << "i  (|.| = " << format_sig(std::abs(state(v)), 6)
             << ")\n";
    emit(payload, opt, std::cout, text.str());
    return 0;
}

int cmd_sweep(const CommonOptions& opt) {
    const WeightedGraph g = resolve_graph(opt);
    const SpectralDecomposition s = decompose(g, opt);
    const auto subset = parse_int_list(opt.subset_text, "--subset");
    const int a = subset.front();
    if (opt.grid_text.empty()) fail("cli-reporter/BadArgument", "sweep needs --grid start:stop:steps");

    double start = 0.0, stop = 0.0;
    int steps = 0;
    {
        std::stringstream stream(opt.grid_text);
        std::string part;
        std::vector<std::string> parts;
        while (std::getline(stream, part, ':')) parts.push_back(part);
        if (parts.size() != 3) fail("cli-reporter/BadArgument", "--grid must be start:stop:steps");
        start = std::stod(parts[0]);
        stop = std::stod(parts[1]);
        steps = std::stoi(parts[2]);
        if (steps < 2 || stop <= start)
            fail("cli-reporter/BadArgument", "--grid must advance with at least 2 steps");
    }

    json rows = json::array();
    double best_value = -1.0, best_time = start;
    int best_partner = -1;
    std::ostringstream text;
    text << "t, best partner, max_b |U(t)_{a,b}|\n";
    for (int i = 0; i < steps; ++i) {
        const double t = start + (stop - start) * i / (steps - 1);
        const auto state = evolve_vertex(s, a, t);
        double best = -1.0;
        int partner = -1;
        for (int v = 0; v < g.n; ++v) {
            if (v == a) continue;
            if (std::abs(state(v)) > best) {
                best = std::abs(state(v));
                partner = v;
            }
        }
        rows.push_back({{"t", t}, {"partner", partner}, {"fidelity", best}});
        if (best > best_value) {
            best_value = best;
            best_time = t;
            best_partner = partner;
        }
        text << format_sig(t, 8) << ", " << partner << ", " << format_sig(best, 8) << "\n";
    }

    json payload;
    payload["vertex"] = a;
    payload["grid"] = std::move(rows);
    payload["peak"] = {{"t", best_time}, {"partner", best_partner}, {"fidelity", best_value}};
    text << "peak: |U(" << format_sig(best_time, 8) << ")_{" << a << "," << best_partner
         << "}| = " << format_sig(best_value, 8) << "\n";
    emit(payload, opt, std::cout, text.str());
    return 0;
}

int cmd_construct(const CommonOptions& opt) {
    if (opt.recipe_text.empty()) fail("cli-reporter/BadArgument", "construct needs --recipe");
    const RecipeResult built = build_recipe(json::parse(opt.recipe_text));

    json payload;
    if (built.graph) payload["graph"] = graph_to_json(*built.graph);
    json preds = json::array();
    for (const auto& p : built.predictions) preds.push_back(prediction_to_json(p));
    payload["predictions"] = std::move(preds);
    if (!built.meta.empty()) payload["meta"] = built.meta;

    if (!opt.out_path.empty() && built.graph) save_graph(*built.graph, opt.out_path);

    std::ostringstream text;
    if (built.graph)
        text << "built graph with n=" << built.graph->n << " vertices\n";
    for (const auto& p : built.predictions) {
        text << "prediction: K={";
        for (std::size_t i = 0; i < p.subset.size(); ++i)
            text << (i ? "," : "") << p.subset[i];
        text << "} tau=" << format_sig(p.tau) << " expected=" << to_string(p.expected) << "\n";
    }
    if (!built.meta.empty()) text << "meta: " << built.meta.dump() << "\n";
    emit(payload, opt, std::cout, text.str());
    return 0;
}

void add_common(CLI::App* cmd, CommonOptions& opt, bool graph_input) {
    if (graph_input) {
        cmd->add_option("--graph", opt.graph_path, "path to a graph JSON file");
        cmd->add_option("--recipe", opt.recipe_text, "inline construction recipe JSON");
    }
    cmd->add_option_function<double>(
           "--tol",
           [&opt](double value) {
               opt.tol = value;
               opt.tol_overridden = true;
           },
           "numerical tolerance (default 1e-8)");
    cmd->add_option("--cluster-tol", opt.cluster_tol,
                    "eigenvalue clustering tolerance (default 1e-9 scaled)");
    cmd->add_option("--max-denominator", opt.max_denominator,
                    "rational reconstruction denominator cap (default 10^6)");
    cmd->add_option("--ratio-tol", opt.ratio_tol,
                    "residual cut for accepting a reconstructed rational (default 1e-13)");
    cmd->add_option("--format", opt.format, "output format: text | json")
        ->check(CLI::IsMember({"text", "json"}));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fractional revival analysis for continuous-time quantum walks"};
    app.require_subcommand(1);

    CommonOptions opt;
    if (const char* env_tol = std::getenv("FREVIVAL_TOL")) {
        try {
            opt.tol = std::stod(env_tol);
            opt.tol_overridden = true;  // the --tol flag still wins over this
        } catch (const std::exception&) {
            std::cerr << "cli-reporter/BadArgument: FREVIVAL_TOL is not a number\n";
            return 1;
        }
    }

    auto* analyze = app.add_subcommand("analyze", "subset revival analysis");
    add_common(analyze, opt, true);
    analyze->add_option("--subset", opt.subset_text, "comma-separated vertex subset K")
        ->required();

    auto* pair = app.add_subcommand("pair", "vertex-pair cospectrality and revival");
    add_common(pair, opt, true);
    pair->add_option("--pair", opt.pair_text, "two comma-separated vertices")->required();

    auto* evolve = app.add_subcommand("evolve", "print U(t) e_a");
    add_common(evolve, opt, true);
    evolve->add_option("--subset", opt.subset_text, "source vertex (first entry is used)")
        ->required();
    double time_value = 0.0;
    evolve->add_option("--time", time_value, "evolution time")->required();

    auto* sweep = app.add_subcommand("sweep", "fidelity sweep over a time grid");
    add_common(sweep, opt, true);
    sweep->add_option("--subset", opt.subset_text, "source vertex (first entry is used)")
        ->required();
    sweep->add_option("--grid", opt.grid_text, "start:stop:steps")->required();

    auto* construct = app.add_subcommand("construct", "build a graph family from a recipe");
    add_common(construct, opt, false);
    construct->add_option("--recipe", opt.recipe_text, "construction recipe JSON")->required();
    construct->add_option("--out", opt.out_path, "write the built graph JSON to this path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(evolve)) opt.time = time_value;
        if (app.got_subcommand(analyze)) return cmd_analyze(opt);
        if (app.got_subcommand(pair)) return cmd_pair(opt);
        if (app.got_subcommand(evolve)) return cmd_evolve(opt);
        if (app.got_subcommand(sweep)) return cmd_sweep(opt);
        if (app.got_subcommand(construct)) return cmd_construct(opt);
    } catch (const frevival::Error& err) {
        std::cerr << err.what() << "\n";
        return 1;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 1;
    }
    return 1;
}
