#pragma once

#include <string>

// vendored single-header nlohmann/json
#include <json.hpp>

#include "forge/cayley.hpp"
#include "forge/spectra.hpp"

namespace forge::io {

nlohmann::ordered_json graph_to_json(const ff::FieldCtx& k, const cayley::CayleyHypergraph& g);
std::string graph_to_dot(const cayley::CayleyHypergraph& g);
std::string graph_to_edges(const cayley::CayleyHypergraph& g);

struct LoadedGraph {
    ff::FieldCtx ctx;
    cayley::CayleyHypergraph graph;
};

LoadedGraph graph_from_json(const nlohmann::ordered_json& j);
LoadedGraph read_graph_file(const std::string& path);

// timing fields are omitted by default so identical runs produce identical files
nlohmann::ordered_json spectral_report_to_json(const spectra::SpectralReport& rep, bool include_timing = false);
// "color,index,re,im,modulus,class" rows
std::string eigenvalues_to_csv(const spectra::SpectralReport& rep);

// one line per generator: id, type, subspace rows, polynomial, complement id
std::string gens_to_text(const ff::FieldCtx& k, const std::vector<gens::Generator>& gs);

void write_file(const std::string& path, const std::string& content);

}  // namespace forge::io
