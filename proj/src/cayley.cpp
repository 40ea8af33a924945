#include "forge/cayley.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <cstring>
#include <deque>
#include <numeric>
#include <sstream>

#include "forge/parallel.hpp"

namespace forge::cayley {

using rep::ProjMatrix;

std::string matrix_key(const FieldCtx& k, const ProjMatrix& m) {
    std::string key(m.m.size() * 4, '\0');
    for (size_t i = 0; i < m.m.size(); ++i) {
        uint32_t idx = static_cast<uint32_t>(k.index(m.m[i]));
        std::memcpy(key.data() + i * 4, &idx, 4);
    }
    return key;
}

std::optional<uint32_t> CayleyHypergraph::find_vertex(const FieldCtx& k, const ProjMatrix& m) const {
    auto it = index_of.find(matrix_key(k, m));
    if (it == index_of.end()) return std::nullopt;
    return it->second;
}

bool CayleyHypergraph::has_edge(uint32_t v, uint32_t w, int color) const {
    for (uint32_t e = out_begin[v]; e < out_begin[v + 1]; ++e)
        if (edges[e].dst == w && edges[e].color == color) return true;
    return false;
}

namespace {

struct ImageSet {
    std::vector<ProjMatrix> mats;
    std::vector<int> types;
};

ImageSet make_images(const FieldCtx& k, const rep::ModulusF& m, const std::vector<gens::Generator>& gs) {
    ImageSet im;
    ProjMatrix id = rep::pm_identity(k);
    for (const auto& g : gs) {
        ProjMatrix pm = rep::rep_matrix(k, m, g.poly);
        if (pm == id) throw Error("generator image is the identity: modulus is not admissible");
        im.mats.push_back(std::move(pm));
        im.types.push_back(g.type);
    }
    return im;
}

// det-class labels reduced to the subgroup the generators actually hit
void attach_labels(const FieldCtx& k, const rep::ModulusF& m, CayleyHypergraph& g) {
    const int d = k.d();
    ff::FFElem omth = k.sub(k.one(ff::Level::ext), m.theta);
    std::vector<int> shift_full(d - 1, 0);
    for (int c = 1; c <= d - 1; ++c) shift_full[c - 1] = rep::class_code(k, m, k.pow(omth, c));

    int step = m.class_group;
    for (int s : shift_full) step = static_cast<int>(std::gcd(step, s));
    if (step == 0) step = m.class_group;
    g.label_group = m.class_group / step;

    g.color_shift.assign(d - 1, 0);
    for (int c = 0; c < d - 1; ++c) g.color_shift[c] = (shift_full[c] % m.class_group) / step;

    g.labels.resize(g.order());
    for (uint32_t v = 0; v < g.order(); ++v) {
        int full = rep::class_code(k, m, rep::mat_det(k, rep::RawMatrix{g.dim, g.vertices[v].m}));
        internal_check(full % step == 0, "vertex det class outside the generated subgroup");
        g.labels[v] = full / step;
    }
}

void attach_generator_metadata(const FieldCtx& k, const std::vector<gens::Generator>& gs, CayleyHypergraph& g) {
    for (const auto& gen : gs) {
        g.gen_types.push_back(gen.type);
        g.gen_complements.push_back(gen.complement);
        g.gen_polys.push_back(skew::to_string(k, gen.poly));
        std::vector<ff::u64> rows;
        for (const auto& row : gen.subspace.rows)
            for (const auto& x : row) rows.push_back(k.index(x));
        g.gen_subspace_rows.push_back(std::move(rows));
    }
}

void finish(const FieldCtx& k, const rep::ModulusF& m, const std::vector<gens::Generator>& gs,
            const ClosureOptions& opts, CayleyHypergraph& g) {
    g.params = GraphParams{k.p(), k.e(), k.d(), k.n(), k.q(), skew::to_string(k, m.f)};
    // CSR offsets; edges were appended grouped by source in ascending order
    g.out_begin.assign(g.order() + 1, 0);
    for (const auto& e : g.edges) g.out_begin[e.src + 1]++;
    for (size_t i = 1; i < g.out_begin.size(); ++i) g.out_begin[i] += g.out_begin[i - 1];

    if (opts.expected && g.complete)
        internal_check(g.order() == opts.expected, "closure size does not match the predicted group order");

    attach_labels(k, m, g);
    attach_generator_metadata(k, gs, g);
}

// shared commit step: dedupe against the vertex map, detect same-type collisions
struct Committer {
    const FieldCtx& k;
    CayleyHypergraph& g;
    const ImageSet& im;
    const ClosureOptions& opts;
    std::vector<uint32_t>* next_level = nullptr;
    // per-source collision scratch: (type, target) pairs of the current source
    std::vector<std::pair<int, uint32_t>> seen;
    uint32_t cur_src = UINT32_MAX;

    void commit(uint32_t src, size_t gen_idx, const ProjMatrix& mat, const std::string& key) {
        if (src != cur_src) {
            seen.clear();
            cur_src = src;
        }
        auto [it, inserted] = g.index_of.try_emplace(key, g.order());
        uint32_t dst = it->second;
        if (inserted) {
            if (g.order() >= opts.cap) throw CapError("closure vertex cap exceeded");
            g.vertices.push_back(mat);
            g.depth.push_back(g.depth[src] + 1);
            if (next_level) next_level->push_back(dst);
        }
        int type = im.types[gen_idx];
        for (const auto& [t, w] : seen)
            if (t == type && w == dst)
                throw InternalError("two same-type generators reach vertex " + std::to_string(dst) +
                                    " from vertex " + std::to_string(src));
        seen.emplace_back(type, dst);
        g.edges.push_back(ColoredEdge{src, dst, static_cast<uint16_t>(type)});
    }
};

CayleyHypergraph closure_common(const FieldCtx& k, const rep::ModulusF& m,
                                const std::vector<gens::Generator>& gs, const ClosureOptions& opts,
                                bool parallel) {
    ImageSet im = make_images(k, m, gs);
    const size_t G = im.mats.size();

    CayleyHypergraph g;
    g.dim = k.d();
    g.radius = opts.radius;
    g.expected_order = opts.expected;
    ProjMatrix id = rep::pm_identity(k);
    g.vertices.push_back(id);
    g.depth.push_back(0);
    g.index_of.emplace(matrix_key(k, id), 0);

    std::vector<uint32_t> level{0};
    int depth = 0;
    while (!level.empty() && G > 0) {
        if (opts.radius >= 0 && depth >= opts.radius) break;
        std::vector<uint32_t> next;
        Committer committer{k, g, im, opts, &next, {}, UINT32_MAX};

        if (parallel) {
            const size_t slots = level.size() * G;
            std::vector<ProjMatrix> mats(slots);
            std::vector<std::string> keys(slots);
            par::for_n(static_cast<std::int64_t>(slots), opts.threads, [&](std::int64_t i) {
                uint32_t v = level[static_cast<size_t>(i) / G];
                size_t gi = static_cast<size_t>(i) % G;
                mats[i] = rep::pm_mul(k, g.vertices[v], im.mats[gi]);
                keys[i] = matrix_key(k, mats[i]);
            });
            for (size_t i = 0; i < slots; ++i)
                committer.commit(level[i / G], i % G, mats[i], keys[i]);
        } else {
            for (uint32_t v : level)
                for (size_t gi = 0; gi < G; ++gi) {
                    ProjMatrix mat = rep::pm_mul(k, g.vertices[v], im.mats[gi]);
                    committer.commit(v, gi, mat, matrix_key(k, mat));
                }
        }
        level = std::move(next);
        ++depth;
    }
    g.complete = level.empty() || G == 0;
    finish(k, m, gs, opts, g);
    return g;
}

}  // namespace

CayleyHypergraph bfs_closure(const FieldCtx& k, const rep::ModulusF& m,
                             const std::vector<gens::Generator>& gs, const ClosureOptions& opts) {
    return closure_common(k, m, gs, opts, par::resolve_threads(opts.threads) > 1);
}

CayleyHypergraph bfs_closure_reference(const FieldCtx& k, const rep::ModulusF& m,
                                       const std::vector<gens::Generator>& gs, const ClosureOptions& opts) {
    return closure_common(k, m, gs, opts, false);
}

RegularityReport regularity_check(const FieldCtx& k, const CayleyHypergraph& g) {
    RegularityReport rep;
    rep.ok = true;
    const int d = g.dim;
    std::vector<ff::u64> want(d, 0);
    for (int c = 1; c <= d - 1; ++c) want[c - 1] = gens::gaussian_binomial(d, c, k.q());

    std::vector<uint32_t> targets;
    for (uint32_t v = 0; v < g.order(); ++v) {
        if (!g.interior(v)) continue;
        ++rep.vertices_checked;
        for (int c = 1; c <= d - 1; ++c) {
            targets.clear();
            for (uint32_t e = g.out_begin[v]; e < g.out_begin[v + 1]; ++e)
                if (g.edges[e].color == c) targets.push_back(g.edges[e].dst);
            std::sort(targets.begin(), targets.end());
            bool distinct = std::adjacent_find(targets.begin(), targets.end()) == targets.end();
            if (!distinct || targets.size() != want[c - 1]) {
                rep.ok = false;
                if (rep.violations.size() < 10) {
                    std::ostringstream os;
                    os << "vertex " << v << " color " << c << ": " << targets.size() << " neighbors, want "
                       << want[c - 1] << (distinct ? "" : " (with repeats)");
                    rep.violations.push_back(os.str());
                }
            }
        }
    }
    return rep;
}

LinkReport link_check(const FieldCtx& k, const CayleyHypergraph& g, const std::vector<gens::Generator>& gs,
                      ff::u64 sample) {
    LinkReport rep;
    rep.ok = true;
    const size_t G = gs.size();

    // the subspace a neighbor contributes to the link is its generator's
    // phi-image, i.e. the complement generator's kernel
    std::vector<const skew::Subspace*> residual(G);
    for (size_t i = 0; i < G; ++i) residual[i] = &gs[gs[i].complement].subspace;

    for (uint32_t x = 0; x < g.order() && rep.vertices_checked < sample; ++x) {
        // the neighbors themselves must be expanded
        if (!g.interior(x)) continue;
        if (g.radius >= 0 && g.depth[x] + 1 >= g.radius) continue;
        ++rep.vertices_checked;

        std::vector<uint32_t> nbr(G);
        for (size_t i = 0; i < G; ++i) nbr[i] = g.edges[g.out_begin[x] + i].dst;

        for (size_t j = 0; j < G; ++j) {
            ff::u64 adjacent_count = 0;
            for (size_t i = 0; i < G; ++i) {
                if (gs[i].type >= gs[j].type) continue;
                ++rep.pairs_checked;
                bool expect = skew::subspace_contains(k, *residual[i], *residual[j]);
                bool got = g.has_edge(nbr[i], nbr[j], gs[j].type - gs[i].type);
                if (expect) ++rep.incidences;
                if (gs[i].type == 1 && gs[j].type == 2 && got) ++adjacent_count;
                if (expect != got) {
                    rep.ok = false;
                    if (rep.counterexamples.size() < 10) {
                        std::ostringstream os;
                        os << "vertex " << x << ", neighbors via generators " << i << " (type " << gs[i].type
                           << ") and " << j << " (type " << gs[j].type << "): containment "
                           << (expect ? "holds" : "fails") << " but edge " << (got ? "exists" : "missing");
                        rep.counterexamples.push_back(os.str());
                    }
                }
            }
            if (gs[j].type == 2 && g.dim >= 3) rep.line_in_plane_counts.push_back(adjacent_count);
        }
    }
    return rep;
}

AdjacencyMatrix adjacency_matrix(const CayleyHypergraph& g, int color) {
    if (!g.complete) throw Error("adjacency matrix of a partial ball");
    AdjacencyMatrix a;
    a.color = color;
    a.n = g.order();
    std::vector<std::vector<uint32_t>> rows(a.n);
    for (const auto& e : g.edges)
        if (e.color == color) rows[e.src].push_back(e.dst);
    a.offsets.assign(a.n + 1, 0);
    for (uint32_t v = 0; v < a.n; ++v) {
        std::sort(rows[v].begin(), rows[v].end());
        a.offsets[v + 1] = a.offsets[v] + static_cast<uint32_t>(rows[v].size());
    }
    a.targets.reserve(a.offsets[a.n]);
    for (auto& r : rows) a.targets.insert(a.targets.end(), r.begin(), r.end());
    return a;
}

AdjacencyMatrix transpose(const AdjacencyMatrix& a) {
    AdjacencyMatrix t;
    t.color = a.color;
    t.n = a.n;
    std::vector<std::vector<uint32_t>> rows(t.n);
    for (uint32_t v = 0; v < a.n; ++v)
        for (uint32_t e = a.offsets[v]; e < a.offsets[v + 1]; ++e) rows[a.targets[e]].push_back(v);
    t.offsets.assign(t.n + 1, 0);
    for (uint32_t v = 0; v < t.n; ++v) {
        std::sort(rows[v].begin(), rows[v].end());
        t.offsets[v + 1] = t.offsets[v] + static_cast<uint32_t>(rows[v].size());
    }
    t.targets.reserve(t.offsets[t.n]);
    for (auto& r : rows) t.targets.insert(t.targets.end(), r.begin(), r.end());
    return t;
}

bool matrices_equal(const AdjacencyMatrix& a, const AdjacencyMatrix& b) {
    return a.n == b.n && a.offsets == b.offsets && a.targets == b.targets;
}

bool commute_check(const AdjacencyMatrix& a, const AdjacencyMatrix& b, int threads) {
    if (a.n != b.n) return false;
    std::vector<char> row_ok(a.n, 0);
    par::for_n(a.n, threads, [&](std::int64_t v) {
        std::vector<uint32_t> ab, ba;
        for (uint32_t e = a.offsets[v]; e < a.offsets[v + 1]; ++e) {
            uint32_t mid = a.targets[e];
            ab.insert(ab.end(), b.targets.begin() + b.offsets[mid], b.targets.begin() + b.offsets[mid + 1]);
        }
        for (uint32_t e = b.offsets[v]; e < b.offsets[v + 1]; ++e) {
            uint32_t mid = b.targets[e];
            ba.insert(ba.end(), a.targets.begin() + a.offsets[mid], a.targets.begin() + a.offsets[mid + 1]);
        }
        std::sort(ab.begin(), ab.end());
        std::sort(ba.begin(), ba.end());
        row_ok[v] = (ab == ba) ? 1 : 0;
    });
    return std::all_of(row_ok.begin(), row_ok.end(), [](char c) { return c == 1; });
}

namespace {

// undirected simple neighbor structure
struct UGraph {
    std::vector<uint32_t> offsets, nbrs;
};

UGraph undirected(const CayleyHypergraph& g) {
    UGraph u;
    std::vector<std::vector<uint32_t>> rows(g.order());
    for (const auto& e : g.edges) {
        rows[e.src].push_back(e.dst);
        rows[e.dst].push_back(e.src);
    }
    u.offsets.assign(g.order() + 1, 0);
    for (uint32_t v = 0; v < g.order(); ++v) {
        auto& r = rows[v];
        std::sort(r.begin(), r.end());
        r.erase(std::unique(r.begin(), r.end()), r.end());
        u.offsets[v + 1] = u.offsets[v] + static_cast<uint32_t>(r.size());
    }
    for (auto& r : rows) u.nbrs.insert(u.nbrs.end(), r.begin(), r.end());
    return u;
}

// eccentricity of one source, -1 if the graph is disconnected from it
int eccentricity(const UGraph& u, uint32_t n, uint32_t s, std::vector<int>& dist) {
    dist.assign(n, -1);
    std::deque<uint32_t> q{s};
    dist[s] = 0;
    int ecc = 0;
    uint32_t seen = 1;
    while (!q.empty()) {
        uint32_t v = q.front();
        q.pop_front();
        ecc = std::max(ecc, dist[v]);
        for (uint32_t e = u.offsets[v]; e < u.offsets[v + 1]; ++e) {
            uint32_t w = u.nbrs[e];
            if (dist[w] < 0) {
                dist[w] = dist[v] + 1;
                ++seen;
                q.push_back(w);
            }
        }
    }
    return seen == n ? ecc : -1;
}

// shortest cycle through s (classic BFS cross-edge bound), pruned at `bound`
int girth_from(const UGraph& u, uint32_t n, uint32_t s, int bound, std::vector<int>& dist,
               std::vector<int>& parent) {
    dist.assign(n, -1);
    parent.assign(n, -1);
    std::deque<uint32_t> q{s};
    dist[s] = 0;
    int best = bound;
    while (!q.empty()) {
        uint32_t v = q.front();
        q.pop_front();
        if (2 * dist[v] >= best) break;
        for (uint32_t e = u.offsets[v]; e < u.offsets[v + 1]; ++e) {
            uint32_t w = u.nbrs[e];
            if (static_cast<int>(w) == parent[v]) continue;
            if (dist[w] < 0) {
                dist[w] = dist[v] + 1;
                parent[w] = static_cast<int>(v);
                q.push_back(w);
            } else {
                best = std::min(best, dist[v] + dist[w] + 1);
            }
        }
    }
    return best;
}

}  // namespace

GraphStats graph_stats(const CayleyHypergraph& g, int threads) {
    if (!g.complete) throw Error("graph statistics require a complete closure");
    GraphStats st;
    const uint32_t n = g.order();
    UGraph u = undirected(g);

    // diameter by all-sources BFS
    std::vector<int> ecc(n, 0);
    par::for_n(n, threads, [&](std::int64_t s) {
        thread_local std::vector<int> dist;
        ecc[s] = eccentricity(u, n, static_cast<uint32_t>(s), dist);
    });
    internal_check(std::find(ecc.begin(), ecc.end(), -1) == ecc.end(), "closure is not connected");
    st.diameter = *std::max_element(ecc.begin(), ecc.end());

    // girth by all-sources pruned BFS
    std::vector<int> local(n, INT32_MAX);
    par::for_n(n, threads, [&](std::int64_t s) {
        thread_local std::vector<int> dist, parent;
        local[s] = girth_from(u, n, static_cast<uint32_t>(s), INT32_MAX, dist, parent);
    });
    int best = *std::min_element(local.begin(), local.end());
    st.girth = best == INT32_MAX ? 0 : best;

    // counting lower bound on the diameter: log_{n_1}(N)
    ff::u64 n1 = static_cast<ff::u64>(std::count(g.gen_types.begin(), g.gen_types.end(), 1));
    st.diameter_lower_bound = n1 >= 2 ? std::log(static_cast<double>(n)) / std::log(static_cast<double>(n1)) : 0;

    // bipartiteness by 2-coloring
    std::vector<int> side(n, -1);
    std::deque<uint32_t> q{0};
    side[0] = 0;
    st.bipartite = true;
    while (!q.empty()) {
        uint32_t v = q.front();
        q.pop_front();
        for (uint32_t e = u.offsets[v]; e < u.offsets[v + 1]; ++e) {
            uint32_t w = u.nbrs[e];
            if (side[w] < 0) {
                side[w] = 1 - side[v];
                q.push_back(w);
            } else if (side[w] == side[v]) {
                st.bipartite = false;
            }
        }
    }

    // det-class partition and label shifts
    st.class_sizes.assign(g.label_group, 0);
    for (uint32_t v = 0; v < n; ++v) st.class_sizes[g.labels[v]]++;
    st.label_shifts_ok = true;
    for (const auto& e : g.edges)
        if (g.labels[e.dst] != (g.labels[e.src] + g.color_shift[e.color - 1]) % g.label_group)
            st.label_shifts_ok = false;

    return st;
}

std::pair<int, int> girth_diameter_reference(const CayleyHypergraph& g) {
    if (!g.complete) throw Error("graph statistics require a complete closure");
    const uint32_t n = g.order();
    UGraph u = undirected(g);
    std::vector<int> dist, parent;
    int diameter = 0, girth = INT32_MAX;
    for (uint32_t s = 0; s < n; ++s) {
        diameter = std::max(diameter, eccentricity(u, n, s, dist));
        girth = std::min(girth, girth_from(u, n, s, girth, dist, parent));
    }
    return {girth == INT32_MAX ? 0 : girth, diameter};
}

}  // namespace forge::cayley
