// Serial-vs-parallel timing for the heavy kernels: BFS closure, sparse
// commutation products, eccentricity/girth sweeps, and the power-iteration
// matvec. Every parallel result is checked against the serial reference.

#include <chrono>
#include <cstdio>
#include <string>

#include "forge/io.hpp"
#include "forge/parallel.hpp"

using namespace forge;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Row {
    std::string kernel;
    double serial = 0;
    double parallel = 0;
    bool match = true;
};

void print_rows(const std::vector<Row>& rows, int threads) {
    std::printf("\n%-34s %12s %12s %9s %7s\n", "kernel", "serial [s]", "parallel [s]", "speedup", "match");
    for (const auto& r : rows)
        std::printf("%-34s %12.4f %12.4f %8.2fx %7s\n", r.kernel.c_str(), r.serial, r.parallel,
                    r.parallel > 0 ? r.serial / r.parallel : 0.0, r.match ? "yes" : "NO");
    std::printf("(parallel = %d threads)\n", threads);
}

void bench_case(const char* name, int p, const char* fstr, int threads, std::vector<Row>& rows) {
    auto k = ff::FieldCtx::make(p, 1, 2, 1);
    auto m = fstr ? rep::make_modulus(k, skew::parse_center(k, fstr)) : rep::auto_modulus(k);
    auto gs = gens::generator_set(k);
    auto cls = rep::classify_image(k, m);
    std::printf("\n== %s: %s, predicted order %llu ==\n", name,
                cls.kind == rep::GroupKind::PSL ? "PSL" : "PGL",
                static_cast<unsigned long long>(cls.order));

    Row closure{"closure " + std::string(name), 0, 0, true};
    cayley::ClosureOptions serial_opts;
    serial_opts.expected = cls.order;
    auto t0 = Clock::now();
    auto ref = cayley::bfs_closure_reference(k, m, gs, serial_opts);
    closure.serial = seconds_since(t0);

    cayley::ClosureOptions par_opts = serial_opts;
    par_opts.threads = threads;
    t0 = Clock::now();
    auto g = cayley::bfs_closure(k, m, gs, par_opts);
    closure.parallel = seconds_since(t0);
    closure.match = g.edges == ref.edges && g.order() == ref.order();
    rows.push_back(closure);

    auto a = cayley::adjacency_matrix(g, 1);

    Row commute{"commutation " + std::string(name), 0, 0, true};
    t0 = Clock::now();
    bool c1 = cayley::commute_check(a, a, 1);
    commute.serial = seconds_since(t0);
    t0 = Clock::now();
    bool c2 = cayley::commute_check(a, a, threads);
    commute.parallel = seconds_since(t0);
    commute.match = c1 == c2 && c1;
    rows.push_back(commute);

    Row sweep{"girth+diameter " + std::string(name), 0, 0, true};
    t0 = Clock::now();
    auto [gir, dia] = cayley::girth_diameter_reference(g);
    sweep.serial = seconds_since(t0);
    t0 = Clock::now();
    auto st = cayley::graph_stats(g, threads);
    sweep.parallel = seconds_since(t0);
    sweep.match = st.girth == gir && st.diameter == dia;
    rows.push_back(sweep);
    std::printf("girth %d, diameter %d, %s\n", st.girth, st.diameter,
                st.bipartite ? "bipartite" : "non-bipartite");

    Row mv{"matvec x512 " + std::string(name), 0, 0, true};
    std::vector<double> x(a.n), y1, y2;
    for (uint32_t i = 0; i < a.n; ++i) x[i] = std::sin(0.37 * i);
    t0 = Clock::now();
    for (int it = 0; it < 512; ++it) spectra::matvec(a, x, y1, 1);
    mv.serial = seconds_since(t0);
    t0 = Clock::now();
    for (int it = 0; it < 512; ++it) spectra::matvec(a, x, y2, threads);
    mv.parallel = seconds_since(t0);
    mv.match = y1 == y2;
    rows.push_back(mv);
}

}  // namespace

int main(int argc, char** argv) {
    int threads = par::resolve_threads(0);
    bool small_only = false;
    for (int i = 1; i < argc; ++i) {
        std::string arg = argv[i];
        if (arg == "--threads" && i + 1 < argc)
            threads = std::atoi(argv[++i]);
        else if (arg == "--small")
            small_only = true;
        else {
            std::fprintf(stderr, "usage: %s [--threads N] [--small]\n", argv[0]);
            return 3;
        }
    }

    std::vector<Row> rows;
    bench_case("PGL(2,9) 720", 3, "1*t^2+1", threads, rows);
    if (!small_only) bench_case("(5,2) auto", 5, nullptr, threads, rows);

    // dense eigensolve timing on the 720-vertex graph (single implementation)
    {
        auto k = ff::FieldCtx::make(3, 1, 2, 1);
        auto m = rep::make_modulus(k, skew::parse_center(k, "1*t^2+1"));
        auto g = cayley::bfs_closure(k, m, gens::generator_set(k), cayley::ClosureOptions{});
        auto a = cayley::adjacency_matrix(g, 1);
        auto t0 = Clock::now();
        auto er = spectra::eigen_dense(a, 5000);
        std::printf("\ndense symmetric eigensolve, n=720: %.4f s (%s)\n", seconds_since(t0),
                    er.method.c_str());
    }

    print_rows(rows, threads);
    for (const auto& r : rows)
        if (!r.match) return 2;
    return 0;
}
