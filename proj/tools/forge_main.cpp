#include <CLI11.hpp>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>

#include "forge/io.hpp"
#include "forge/parallel.hpp"

using namespace forge;

namespace {

constexpr ff::u64 kClosureCap = 2'000'000;

struct Options {
    int p = 3;
    int e = 1;
    int d = 2;
    std::string f = "auto:1";
    std::string out;
    std::string csv;
    std::string format = "json";
    int ball = -1;
    ff::u64 dense_cutoff = 5000;
    ff::u64 seed = 12345;
    int threads = 0;
};

void add_common(CLI::App* cmd, Options& o) {
    cmd->add_option("--p", o.p, "prime characteristic");
    cmd->add_option("--e", o.e, "exponent with q = p^e");
    cmd->add_option("--d", o.d, "skew degree (d >= 2)");
    cmd->add_option("--f", o.f, "modulus over F_q (\"c*t^k+...\") or auto:n");
    cmd->add_option("--out", o.out, "output file");
    cmd->add_option("--seed", o.seed, "seed for randomized property checks");
    cmd->add_option("--threads", o.threads, "worker threads (0 = all)");
}

// degree of the modulus string without a field context
int scan_poly_degree(const std::string& text) {
    int deg = 0;
    size_t pos = 0;
    while ((pos = text.find('^', pos)) != std::string::npos) {
        ++pos;
        deg = std::max(deg, std::atoi(text.c_str() + pos));
    }
    return deg;
}

struct Pipeline {
    ff::FieldCtx ctx;
    rep::ModulusF modulus;
    bool has_modulus = false;
};

Pipeline make_pipeline(const Options& o, bool need_modulus) {
    int n = 1;
    bool auto_f = o.f.rfind("auto:", 0) == 0;
    if (auto_f) {
        n = std::atoi(o.f.c_str() + 5);
        if (n < 1) throw ConfigError("auto:n needs n >= 1");
    } else if (need_modulus) {
        int deg = scan_poly_degree(o.f);
        if (deg == 0 || deg % o.d != 0)
            throw ConfigError("modulus degree must be a positive multiple of d");
        n = deg / o.d;
    }
    Pipeline pl{ff::FieldCtx::make(o.p, o.e, o.d, n), {}, false};
    if (need_modulus) {
        pl.modulus = auto_f ? rep::auto_modulus(pl.ctx)
                            : rep::make_modulus(pl.ctx, skew::parse_center(pl.ctx, o.f));
        pl.has_modulus = true;
    }
    return pl;
}

int cmd_factor(const Options& o) {
    auto pl = make_pipeline(o, false);
    const auto& k = pl.ctx;
    auto lf = skew::linear_factorization(k);

    std::string pretty;
    for (const auto& f : lf.factors) pretty += "(" + skew::pretty(k, f) + ")";
    std::cout << "factorization of 1 - t over F_" << k.size(ff::Level::skew) << "{T}:\n";
    std::cout << "  " << pretty << "\n";
    for (size_t i = 0; i < lf.xs.size(); ++i)
        std::cout << "  x_" << (k.d() - i) << " = element index " << k.index(lf.xs[i]) << "\n";
    for (const auto& f : lf.factors)
        std::cout << "  factor " << skew::to_string(k, f) << "  norm "
                  << skew::to_string(k, skew::reduced_norm(k, f)) << "\n";
    std::cout << "  product check: exact\n";

    if (!o.out.empty()) {
        nlohmann::ordered_json j;
        j["p"] = o.p;
        j["e"] = o.e;
        j["d"] = o.d;
        std::vector<ff::u64> xs;
        for (const auto& x : lf.xs) xs.push_back(k.index(x));
        j["x_indices"] = xs;
        std::vector<std::string> fs;
        for (const auto& f : lf.factors) fs.push_back(skew::to_string(k, f));
        j["factors"] = fs;
        j["pretty"] = pretty;
        io::write_file(o.out, j.dump(2) + "\n");
    }
    return 0;
}

int cmd_gens(const Options& o) {
    auto pl = make_pipeline(o, false);
    auto gs = gens::generator_set(pl.ctx);
    std::string text = io::gens_to_text(pl.ctx, gs);
    if (o.out.empty())
        std::cout << text;
    else {
        io::write_file(o.out, text);
        std::cout << gs.size() << " generators written to " << o.out << "\n";
    }
    return 0;
}

cayley::CayleyHypergraph build_graph(const Options& o, const Pipeline& pl, bool allow_auto_ball,
                                     std::string* note) {
    auto gs = gens::generator_set(pl.ctx);
    auto cls = rep::classify_image(pl.ctx, pl.modulus);
    cayley::ClosureOptions opts;
    opts.threads = o.threads;
    opts.radius = o.ball;
    if (o.ball < 0) {
        if (!cls.order_exact || cls.order > kClosureCap) {
            if (!allow_auto_ball)
                throw CapError("full closure would exceed the vertex cap; pass --ball R for a partial ball");
            opts.radius = 2;
            if (note)
                *note = "full closure infeasible (predicted order ~" +
                        std::to_string(static_cast<double>(cls.order_approx)) +
                        "); degraded to a radius-2 ball";
        } else {
            opts.expected = cls.order;
        }
    }
    return cayley::bfs_closure(pl.ctx, pl.modulus, gs, opts);
}

int cmd_build(const Options& o) {
    auto pl = make_pipeline(o, true);
    std::string note;
    auto g = build_graph(o, pl, false, &note);

    std::string content;
    if (o.format == "json")
        content = io::graph_to_json(pl.ctx, g).dump(2) + "\n";
    else if (o.format == "dot")
        content = io::graph_to_dot(g);
    else if (o.format == "edges")
        content = io::graph_to_edges(g);
    else
        throw ConfigError("unknown format: " + o.format);

    if (o.out.empty()) {
        std::cout << content;
    } else {
        io::write_file(o.out, content);
        std::cout << g.order() << " vertices, " << g.edges.size() << " edges ("
                  << (g.complete ? "complete" : "partial ball") << ") written to " << o.out << "\n";
    }
    return 0;
}

int cmd_spectra(const Options& o, const std::string& input) {
    auto lg = io::read_graph_file(input);
    if (!lg.graph.complete)
        throw ConfigError("graph file is a partial ball; spectra needs a complete closure");
    spectra::CheckOptions co;
    co.dense_cutoff = o.dense_cutoff;
    co.threads = o.threads;
    auto rep = spectra::ramanujan_check(lg.graph, co);

    auto j = io::spectral_report_to_json(rep);
    if (o.out.empty()) {
        std::cout << j.dump(2) << "\n";
    } else {
        io::write_file(o.out, j.dump(2) + "\n");
        for (const auto& c : rep.colors)
            std::cout << "color " << c.color << ": max nontrivial " << c.max_nontrivial << ", bound "
                      << c.bound << ", margin " << c.margin << (c.pass ? " PASS" : " FAIL") << "\n";
        std::cout << "report written to " << o.out << "\n";
    }
    if (!o.csv.empty()) io::write_file(o.csv, io::eigenvalues_to_csv(rep));
    return rep.pass ? 0 : 2;
}

struct CheckLine {
    std::string name;
    int state;  // 0 fail, 1 pass, 2 skip
    std::string detail;
};

int cmd_verify(const Options& o) {
    std::vector<CheckLine> lines;
    auto add = [&](const std::string& name, bool ok, const std::string& detail) {
        lines.push_back(CheckLine{name, ok ? 1 : 0, detail});
    };
    auto skip = [&](const std::string& name, const std::string& why) {
        lines.push_back(CheckLine{name, 2, why});
    };

    auto pl = make_pipeline(o, true);
    const auto& k = pl.ctx;

    // tau-linear factorization; the constructor enforces its own exactness
    {
        auto lf = skew::linear_factorization(k);
        bool norms = true;
        for (const auto& f : lf.factors)
            norms = norms && skew::reduced_norm(k, f) == skew::center_one_minus_t(k);
        add("factorization", norms,
            std::to_string(lf.factors.size()) + " unit-constant linear factors, product 1 - T^" +
                std::to_string(k.d()) + " exact");
    }

    auto gs = gens::generator_set(k);
    {
        bool ok = true;
        std::string detail = "counts";
        for (int t = 1; t <= k.d() - 1; ++t) {
            ff::u64 want = gens::gaussian_binomial(k.d(), t, k.q());
            ff::u64 got = 0;
            for (const auto& g : gs)
                if (g.type == t) ++got;
            ok = ok && got == want;
            detail += " type" + std::to_string(t) + "=" + std::to_string(got);
        }
        for (size_t i = 0; i < gs.size(); ++i)
            ok = ok && gs[gs[i].complement].complement == static_cast<int>(i);
        add("generator-set", ok, detail + ", complement involution exact");
    }
    if (k.size(ff::Level::skew) <= 729) {
        auto census = gens::divisor_census(k, gs);
        add("divisor-census", census.ok,
            std::to_string(census.divisors_found) + " unit-constant divisors of 1 - t, bijective");
    } else {
        skip("divisor-census", "q^d too large for exhaustive divisor scan");
    }

    auto cls = rep::classify_image(k, pl.modulus);
    {
        std::string detail = std::string(cls.kind == rep::GroupKind::PSL ? "PSL" : "PGL") + "(d=" +
                             std::to_string(k.d()) + ", F_" + std::to_string(k.size(ff::Level::ext)) +
                             "), residue symbol " + (cls.symbol > 0 ? "+1" : "-1");
        if (cls.order_exact) detail += ", order " + std::to_string(cls.order);
        if (!cls.verified) detail += " (odd-q hypothesis violated: classification unverified)";
        add("classification", true, detail);
    }

    std::string note;
    auto g = build_graph(o, pl, true, &note);
    if (!note.empty()) skip("closure-full", note);
    {
        std::string detail = std::to_string(g.order()) + " vertices, " + std::to_string(g.edges.size()) +
                             " edges, " + (g.complete ? "complete closure" : "partial ball");
        bool ok = !g.complete || !cls.order_exact || g.order() == cls.order;
        if (g.complete && cls.order_exact) detail += ", matches predicted order";
        add("closure", ok, detail);
    }

    {
        auto reg = cayley::regularity_check(k, g);
        add("regularity", reg.ok,
            std::to_string(reg.vertices_checked) + " interior vertices with exact colored degrees");
    }
    {
        auto lr = cayley::link_check(k, g, gs, 50);
        if (lr.pairs_checked == 0 && k.d() == 2)
            add("link-incidence", lr.ok, "no type pairs at d=2: flags are trivial");
        else
            add("link-incidence", lr.ok,
                std::to_string(lr.pairs_checked) + " neighbor pairs at " +
                    std::to_string(lr.vertices_checked) + " vertices, " + std::to_string(lr.incidences) +
                    " incidences, flag structure exact");
    }

    if (g.complete) {
        bool ok = true;
        for (int c1 = 1; c1 <= k.d() - 1; ++c1) {
            auto a1 = cayley::adjacency_matrix(g, c1);
            ok = ok && cayley::matrices_equal(cayley::transpose(a1),
                                              cayley::adjacency_matrix(g, k.d() - c1));
            for (int c2 = c1; c2 <= k.d() - 1; ++c2)
                ok = ok && cayley::commute_check(a1, cayley::adjacency_matrix(g, c2), o.threads);
        }
        add("adjacency-structure", ok, "transpose pairing and exact integer commutation");
    } else {
        skip("adjacency-structure", "partial ball: adjacency matrices undefined");
    }

    {
        std::mt19937_64 rng(o.seed);
        bool ok = true;
        auto random_unit = [&]() {
            for (;;) {
                int deg = static_cast<int>(rng() % (2 * k.d()));
                std::vector<ff::FFElem> c;
                for (int i = 0; i <= deg; ++i)
                    c.push_back(k.from_index(ff::Level::skew, rng() % k.size(ff::Level::skew)));
                skew::SkewPoly a = skew::make_skew(k, std::move(c));
                if (a.is_zero()) continue;
                if (!k.is_zero(rep::mat_det(k, rep::rep_matrix_raw(k, pl.modulus, a)))) return a;
            }
        };
        for (int t = 0; t < 1000 && ok; ++t) {
            auto a = random_unit(), b = random_unit();
            ok = rep::rep_matrix(k, pl.modulus, skew::mul(k, a, b)) ==
                 rep::pm_mul(k, rep::rep_matrix(k, pl.modulus, a), rep::rep_matrix(k, pl.modulus, b));
        }
        for (int t = 0; t < 1000 && ok; ++t) {
            try {
                rep::lift_determinant(k, pl.modulus, random_unit());
            } catch (const Error&) {
                ok = false;
            }
        }
        add("representation", ok, "1000 homomorphism pairs and 1000 determinant/norm identities, exact");
    }

    if (!g.complete) {
        skip("spectra", "partial ball: spectrum undefined");
        skip("stats", "partial ball");
    } else if (g.order() > o.dense_cutoff) {
        spectra::CheckOptions co;
        co.dense_cutoff = o.dense_cutoff;
        co.threads = o.threads;
        auto rep_s = spectra::ramanujan_check(g, co);
        std::string detail;
        for (const auto& c : rep_s.colors)
            detail += "color " + std::to_string(c.color) + " max|nontrivial| " +
                      std::to_string(c.max_nontrivial) + " vs bound " + std::to_string(c.bound) + "; ";
        add("spectra", rep_s.pass, detail + "extremal bound check only (dense cutoff exceeded)");
        auto st = cayley::graph_stats(g, o.threads);
        add("stats", st.label_shifts_ok,
            "girth " + std::to_string(st.girth) + ", diameter " + std::to_string(st.diameter) +
                (st.bipartite ? ", bipartite" : ", non-bipartite") + ", det-class shifts exact");
    } else {
        spectra::CheckOptions co;
        co.dense_cutoff = o.dense_cutoff;
        co.threads = o.threads;
        auto rep_s = spectra::ramanujan_check(g, co);
        std::string detail;
        for (const auto& c : rep_s.colors) {
            char buf[160];
            std::snprintf(buf, sizeof buf, "color %d: %zu trivial removed, max|nontrivial| %.6f <= %.6f, margin %.2e; ",
                          c.color, c.trivial_indices.size(), c.max_nontrivial, c.bound + spectra::kBoundTol,
                          c.margin);
            detail += buf;
        }
        add("spectra", rep_s.pass, detail + (rep_s.character_verified ? "characters exact" : "character check FAILED"));
        if (!o.out.empty()) io::write_file(o.out, io::spectral_report_to_json(rep_s).dump(2) + "\n");

        auto st = cayley::graph_stats(g, o.threads);
        add("stats", st.label_shifts_ok,
            "girth " + std::to_string(st.girth) + ", diameter " + std::to_string(st.diameter) +
                " (lower bound " + std::to_string(st.diameter_lower_bound) + ")" +
                (st.bipartite ? ", bipartite" : ", non-bipartite") + ", det-class shifts exact");
    }

    bool all_ok = true;
    int skipped = 0;
    for (const auto& l : lines) {
        const char* tag = l.state == 1 ? "PASS" : l.state == 0 ? "FAIL" : "SKIP";
        if (l.state == 0) all_ok = false;
        if (l.state == 2) ++skipped;
        std::cout << tag << " " << l.name << ": " << l.detail << "\n";
    }
    std::cout << (all_ok ? "VERIFY PASS" : "VERIFY FAIL") << " (" << lines.size() << " checks, " << skipped
              << " skipped)\n";
    return all_ok ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"explicit Ramanujan hypergraphs from skew polynomial rings"};
    app.require_subcommand(1);

    Options o;
    std::string spectra_input;
    std::function<int()> task;

    auto* factor = app.add_subcommand("factor", "tau-linear factorization of 1 - t");
    add_common(factor, o);
    factor->callback([&] { task = [&] { return cmd_factor(o); }; });

    auto* gens_cmd = app.add_subcommand("gens", "list the generator set");
    add_common(gens_cmd, o);
    gens_cmd->callback([&] { task = [&] { return cmd_gens(o); }; });

    auto* build = app.add_subcommand("build", "build the Cayley graph and write it out");
    add_common(build, o);
    build->add_option("--format", o.format, "json|dot|edges")
        ->check(CLI::IsMember({"json", "dot", "edges"}));
    build->add_option("--ball", o.ball, "truncate at this BFS radius");
    build->callback([&] { task = [&] { return cmd_build(o); }; });

    auto* spectra_cmd = app.add_subcommand("spectra", "eigenvalues and Ramanujan bounds of a graph file");
    add_common(spectra_cmd, o);
    spectra_cmd->add_option("graph", spectra_input, "graph JSON produced by build")->required();
    spectra_cmd->add_option("--dense-cutoff", o.dense_cutoff, "max dimension for the dense eigensolver");
    spectra_cmd->add_option("--csv", o.csv, "also dump eigenvalues as CSV");
    spectra_cmd->callback([&] { task = [&] { return cmd_spectra(o, spectra_input); }; });

    auto* verify = app.add_subcommand("verify", "run the whole pipeline and check every property");
    add_common(verify, o);
    verify->add_option("--ball", o.ball, "truncate at this BFS radius");
    verify->add_option("--dense-cutoff", o.dense_cutoff, "max dimension for the dense eigensolver");
    verify->callback([&] { task = [&] { return cmd_verify(o); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 3;
    }

    try {
        return task();
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const CapError& e) {
        std::cerr << "resource cap: " << e.what() << "\n";
        return 4;
    } catch (const Error& e) {
        std::cerr << "check failed: " << e.what() << "\n";
        return 2;
    }
}
