#include "forge/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace forge::io {

using nlohmann::ordered_json;

ordered_json graph_to_json(const ff::FieldCtx& k, const cayley::CayleyHypergraph& g) {
    ordered_json j;
    j["params"] = {{"p", g.params.p}, {"e", g.params.e}, {"d", g.params.d},
                   {"n", g.params.n}, {"q", g.params.q}, {"f", g.params.f}};
    j["complete"] = g.complete;
    j["radius"] = g.radius;
    j["expected_order"] = g.expected_order;

    ordered_json verts = ordered_json::array();
    for (const auto& v : g.vertices) verts.push_back(rep::matrix_to_string(k, v));
    j["vertices"] = std::move(verts);

    ordered_json edges = ordered_json::array();
    for (const auto& e : g.edges) edges.push_back({e.src, e.dst, e.color});
    j["edges"] = std::move(edges);

    ordered_json gens_arr = ordered_json::array();
    for (size_t i = 0; i < g.gen_polys.size(); ++i)
        gens_arr.push_back({{"type", g.gen_types[i]},
                            {"subspace", g.gen_subspace_rows[i]},
                            {"poly", g.gen_polys[i]},
                            {"complement", g.gen_complements[i]}});
    j["generators"] = std::move(gens_arr);

    j["det_labels"] = g.labels;
    j["label_group"] = g.label_group;
    j["color_shift"] = g.color_shift;
    j["depth"] = g.depth;
    return j;
}

std::string graph_to_dot(const cayley::CayleyHypergraph& g) {
    static const char* palette[] = {"black", "red",    "blue",   "green",
                                    "orange", "purple", "brown", "cyan"};
    std::ostringstream os;
    os << "digraph cayley {\n";
    for (uint32_t v = 0; v < g.order(); ++v) os << "  v" << v << ";\n";
    for (const auto& e : g.edges)
        os << "  v" << e.src << " -> v" << e.dst << " [label=\"" << e.color << "\", color=\""
           << palette[e.color % 8] << "\"];\n";
    os << "}\n";
    return os.str();
}

std::string graph_to_edges(const cayley::CayleyHypergraph& g) {
    std::ostringstream os;
    for (const auto& e : g.edges) os << e.src << " " << e.dst << " " << e.color << "\n";
    return os.str();
}

LoadedGraph graph_from_json(const ordered_json& j) {
    const auto& p = j.at("params");
    LoadedGraph lg{ff::FieldCtx::make(p.at("p"), p.at("e"), p.at("d"), p.at("n")), {}};
    auto& g = lg.graph;
    const ff::FieldCtx& k = lg.ctx;

    g.params = cayley::GraphParams{p.at("p"), p.at("e"), p.at("d"),
                                   p.at("n"), p.at("q"), p.at("f")};
    if (g.params.q != k.q()) throw ConfigError("graph file parameters are inconsistent");
    g.dim = g.params.d;
    g.complete = j.at("complete");
    g.radius = j.at("radius");
    g.expected_order = j.at("expected_order");

    for (const auto& vs : j.at("vertices")) {
        auto m = rep::matrix_from_string(k, g.dim, vs.get<std::string>());
        bool canonical = false;
        for (const auto& x : m.m) {
            if (k.is_zero(x)) continue;
            canonical = (k.index(x) == 1);
            break;
        }
        if (!canonical) throw ConfigError("vertex matrix is not in projective canonical form");
        g.index_of.emplace(cayley::matrix_key(k, m), g.order());
        g.vertices.push_back(std::move(m));
    }

    for (const auto& ej : j.at("edges"))
        g.edges.push_back(cayley::ColoredEdge{ej.at(0).get<uint32_t>(), ej.at(1).get<uint32_t>(),
                                              ej.at(2).get<uint16_t>()});
    std::stable_sort(g.edges.begin(), g.edges.end(),
                     [](const cayley::ColoredEdge& a, const cayley::ColoredEdge& b) { return a.src < b.src; });
    g.out_begin.assign(g.order() + 1, 0);
    for (const auto& e : g.edges) {
        if (e.src >= g.order() || e.dst >= g.order()) throw ConfigError("edge endpoint out of range");
        g.out_begin[e.src + 1]++;
    }
    for (size_t i = 1; i < g.out_begin.size(); ++i) g.out_begin[i] += g.out_begin[i - 1];

    for (const auto& gj : j.at("generators")) {
        g.gen_types.push_back(gj.at("type"));
        g.gen_subspace_rows.push_back(gj.at("subspace").get<std::vector<ff::u64>>());
        g.gen_polys.push_back(gj.at("poly"));
        g.gen_complements.push_back(gj.at("complement"));
    }
    g.labels = j.at("det_labels").get<std::vector<int>>();
    g.label_group = j.at("label_group");
    g.color_shift = j.at("color_shift").get<std::vector<int>>();
    g.depth = j.at("depth").get<std::vector<int>>();
    if (g.labels.size() != g.vertices.size() || g.depth.size() != g.vertices.size())
        throw ConfigError("graph file arrays have inconsistent lengths");
    return lg;
}

LoadedGraph read_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open graph file: " + path);
    ordered_json j;
    try {
        in >> j;
        return graph_from_json(j);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("malformed graph file: " + std::string(e.what()));
    }
}

ordered_json spectral_report_to_json(const spectra::SpectralReport& rep, bool include_timing) {
    ordered_json j;
    j["vertices"] = rep.vertices;
    j["label_group"] = rep.label_group;
    j["character_verified"] = rep.character_verified;
    j["pass"] = rep.pass;
    j["bound_exponent"] = rep.bound_exponent;
    j["bound_exponent_variant"] = rep.bound_exponent_variant;
    j["variant_agrees"] = rep.variant_agrees;
    j["bound_tolerance"] = spectra::kBoundTol;
    j["trivial_match_tolerance"] = spectra::kTrivialMatchTol;
    ordered_json colors = ordered_json::array();
    for (const auto& c : rep.colors) {
        ordered_json cj;
        cj["color"] = c.color;
        cj["degree"] = c.degree;
        cj["bound"] = c.bound;
        cj["method"] = c.method;
        if (include_timing) cj["seconds"] = c.seconds;
        cj["character_matched"] = c.character_matched;
        cj["trivial_indices"] = c.trivial_indices;
        cj["max_nontrivial"] = c.max_nontrivial;
        cj["margin"] = c.margin;
        cj["pass"] = c.pass;
        cj["strict_pass"] = c.strict_pass;
        ordered_json evs = ordered_json::array();
        for (const auto& z : c.eigenvalues) evs.push_back({z.real(), z.imag()});
        cj["eigenvalues"] = std::move(evs);
        colors.push_back(std::move(cj));
    }
    j["colors"] = std::move(colors);
    return j;
}

std::string eigenvalues_to_csv(const spectra::SpectralReport& rep) {
    std::ostringstream os;
    os << "color,index,re,im,modulus,class\n";
    os.precision(17);
    for (const auto& c : rep.colors) {
        std::vector<bool> trivial(c.eigenvalues.size(), false);
        for (int i : c.trivial_indices) trivial[i] = true;
        for (size_t i = 0; i < c.eigenvalues.size(); ++i) {
            const auto& z = c.eigenvalues[i];
            os << c.color << "," << i << "," << z.real() << "," << z.imag() << "," << std::abs(z) << ","
               << (trivial[i] ? "trivial" : "nontrivial") << "\n";
        }
    }
    return os.str();
}

std::string gens_to_text(const ff::FieldCtx& k, const std::vector<gens::Generator>& gs) {
    std::ostringstream os;
    for (size_t i = 0; i < gs.size(); ++i) {
        const auto& g = gs[i];
        os << i << " " << g.type << " [";
        bool first = true;
        for (const auto& row : g.subspace.rows)
            for (const auto& x : row) {
                if (!first) os << ",";
                first = false;
                os << k.index(x);
            }
        os << "] " << skew::to_string(k, g.poly) << " " << g.complement << "\n";
    }
    return os.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open output file: " + path);
    out << content;
}

}  // namespace forge::io
