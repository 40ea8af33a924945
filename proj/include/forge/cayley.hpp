#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "forge/gens.hpp"
#include "forge/rep.hpp"

namespace forge::cayley {

using ff::FieldCtx;
using std::uint16_t;
using std::uint32_t;

struct ColoredEdge {
    uint32_t src = 0;
    uint32_t dst = 0;
    uint16_t color = 0;
    bool operator==(const ColoredEdge&) const = default;
};

struct GraphParams {
    int p = 0, e = 0, d = 0, n = 0;
    ff::u64 q = 0;
    std::string f;  // modulus encoding
};

// The colored Cayley graph of the generator images, vertices in deterministic
// BFS discovery order (children explored in generator-list order).
struct CayleyHypergraph {
    GraphParams params;
    int dim = 0;  // d
    std::vector<rep::ProjMatrix> vertices;
    std::vector<ColoredEdge> edges;        // grouped by source, generator order
    std::vector<uint32_t> out_begin;       // size N+1, CSR offsets into edges
    std::vector<int> depth;                // BFS depth per vertex
    int radius = -1;                       // >= 0 for a truncated ball
    bool complete = false;                 // every vertex fully expanded
    ff::u64 expected_order = 0;            // 0 when not predicted

    // det-class labels, reduced to the subgroup actually generated
    int label_group = 1;                       // g'
    std::vector<int> labels;                   // per vertex, in Z_{g'}
    std::vector<int> color_shift;              // per color 1..d-1 (index k-1), in Z_{g'}

    // generator snapshot (aligned with the gens::generator_set order)
    std::vector<int> gen_types;
    std::vector<int> gen_complements;
    std::vector<std::string> gen_polys;
    std::vector<std::vector<ff::u64>> gen_subspace_rows;  // row-major element indices

    std::unordered_map<std::string, uint32_t> index_of;  // canonical key -> vertex

    uint32_t order() const { return static_cast<uint32_t>(vertices.size()); }
    bool interior(uint32_t v) const { return radius < 0 || depth[v] < radius; }
    std::optional<uint32_t> find_vertex(const FieldCtx& k, const rep::ProjMatrix& m) const;
    // out-edge scan; returns true iff a color-c edge v -> w exists
    bool has_edge(uint32_t v, uint32_t w, int color) const;
};

std::string matrix_key(const FieldCtx& k, const rep::ProjMatrix& m);

struct ClosureOptions {
    ff::u64 cap = 2'000'000;   // vertex cap
    int radius = -1;           // -1 = full closure
    int threads = 1;           // proposal workers; result is thread-count independent
    ff::u64 expected = 0;      // asserted when nonzero and the closure completes
};

// Deterministic BFS closure of the generator images. Throws CapError when the
// cap is exceeded and InternalError on a same-type generator collision.
CayleyHypergraph bfs_closure(const FieldCtx& k, const rep::ModulusF& m,
                             const std::vector<gens::Generator>& gs, const ClosureOptions& opts);

// Plain queue-based reference implementation; must produce an identical graph.
CayleyHypergraph bfs_closure_reference(const FieldCtx& k, const rep::ModulusF& m,
                                       const std::vector<gens::Generator>& gs, const ClosureOptions& opts);

struct RegularityReport {
    bool ok = false;
    ff::u64 vertices_checked = 0;
    std::vector<std::string> violations;  // truncated
};

// Every interior vertex must have exactly [d choose k]_q distinct color-k
// out-neighbors.
RegularityReport regularity_check(const FieldCtx& k, const CayleyHypergraph& g);

struct LinkReport {
    bool ok = false;
    ff::u64 vertices_checked = 0;
    ff::u64 pairs_checked = 0;
    ff::u64 incidences = 0;
    std::vector<std::string> counterexamples;
    // containment degree histogram for the (type 1, type 2) pair, when present:
    // for each type-2 neighbor, how many type-1 neighbors are adjacent to it
    std::vector<ff::u64> line_in_plane_counts;
};

// Flag-incidence structure of vertex links: for neighbors y = x*img(gamma),
// y' = x*img(gamma') with types t < t', the color-(t'-t) edge y -> y' exists
// iff the neighbors' residual subspaces are nested. The subspace attached to a
// neighbor is the phi-image of its generator (the complement's kernel).
LinkReport link_check(const FieldCtx& k, const CayleyHypergraph& g,
                      const std::vector<gens::Generator>& gs, ff::u64 sample);

struct AdjacencyMatrix {
    int color = 0;
    uint32_t n = 0;
    std::vector<uint32_t> offsets;  // size n+1
    std::vector<uint32_t> targets;  // sorted within each row
};

AdjacencyMatrix adjacency_matrix(const CayleyHypergraph& g, int color);
AdjacencyMatrix transpose(const AdjacencyMatrix& a);
bool matrices_equal(const AdjacencyMatrix& a, const AdjacencyMatrix& b);
// exact integer check of A*B == B*A; row-parallel
bool commute_check(const AdjacencyMatrix& a, const AdjacencyMatrix& b, int threads);

struct GraphStats {
    int girth = 0;  // 0 when no cycle was found
    int diameter = 0;
    double diameter_lower_bound = 0;
    bool bipartite = false;
    bool label_shifts_ok = false;
    std::vector<ff::u64> class_sizes;
};

// Girth, diameter, det-class partition; requires a complete closure.
GraphStats graph_stats(const CayleyHypergraph& g, int threads);

// Serial reference sweeps kept for testing the parallel kernels.
std::pair<int, int> girth_diameter_reference(const CayleyHypergraph& g);

}  // namespace forge::cayley
