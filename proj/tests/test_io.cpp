#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "forge/io.hpp"

using namespace forge;

namespace {

cayley::CayleyHypergraph build_psl(ff::FieldCtx& k) {
    auto m = rep::make_modulus(k, skew::parse_center(k, "1*t^2+1*t^1+2"));
    return cayley::bfs_closure(k, m, gens::generator_set(k), cayley::ClosureOptions{});
}

std::filesystem::path scratch_dir() {
    auto dir = std::filesystem::temp_directory_path() / ("forge_io_" + std::to_string(getpid()));
    std::filesystem::create_directories(dir);
    return dir;
}

int run(const std::string& cmd) {
    int rc = std::system((cmd + " > /dev/null 2>&1").c_str());
    return WEXITSTATUS(rc);
}

}  // namespace

TEST_CASE("graph JSON round trip") {
    auto k = ff::FieldCtx::make(3, 1, 2, 1);
    auto g = build_psl(k);
    auto j = io::graph_to_json(k, g);
    auto lg = io::graph_from_json(j);

    CHECK(lg.graph.order() == g.order());
    CHECK(lg.graph.edges == g.edges);
    CHECK(lg.graph.labels == g.labels);
    CHECK(lg.graph.label_group == g.label_group);
    CHECK(lg.graph.color_shift == g.color_shift);
    CHECK(lg.graph.out_begin == g.out_begin);
    CHECK(lg.graph.complete == g.complete);
    bool vertices_equal = true;
    for (uint32_t v = 0; v < g.order(); ++v)
        if (!(lg.graph.vertices[v] == g.vertices[v])) vertices_equal = false;
    CHECK(vertices_equal);

    // a spectral check on the loaded graph gives the same verdicts
    auto r1 = spectra::ramanujan_check(g, spectra::CheckOptions{});
    auto r2 = spectra::ramanujan_check(lg.graph, spectra::CheckOptions{});
    CHECK(r1.pass == r2.pass);
    CHECK(r1.colors[0].margin == doctest::Approx(r2.colors[0].margin).epsilon(1e-12));

    // serialization is deterministic
    CHECK(io::graph_to_json(lg.ctx, lg.graph).dump(2) == j.dump(2));
}

TEST_CASE("corrupt graph files are rejected") {
    auto k = ff::FieldCtx::make(3, 1, 2, 1);
    auto g = build_psl(k);
    auto j = io::graph_to_json(k, g);
    j["det_labels"].erase(0);
    CHECK_THROWS_AS(io::graph_from_json(j), ConfigError);
}

TEST_CASE("dot and edge list exports") {
    auto k = ff::FieldCtx::make(3, 1, 2, 1);
    auto g = build_psl(k);
    auto dot = io::graph_to_dot(g);
    CHECK(dot.find("digraph") == 0);
    CHECK(dot.find("label=\"1\"") != std::string::npos);

    std::istringstream edges(io::graph_to_edges(g));
    std::string line;
    size_t count = 0;
    while (std::getline(edges, line)) ++count;
    CHECK(count == g.edges.size());
}

TEST_CASE("generator listing") {
    auto k = ff::FieldCtx::make(3, 1, 2, 1);
    auto gs = gens::generator_set(k);
    std::istringstream text(io::gens_to_text(k, gs));
    std::string first;
    std::getline(text, first);
    CHECK(first == "0 1 [0,1] 1*T^1+1 1");
}

TEST_CASE("spectral report serialization") {
    auto k = ff::FieldCtx::make(3, 1, 2, 1);
    auto g = build_psl(k);
    auto rep = spectra::ramanujan_check(g, spectra::CheckOptions{});
    auto j = io::spectral_report_to_json(rep);
    CHECK(j["pass"] == true);
    CHECK(j["colors"][0]["degree"] == 4);
    CHECK(j["colors"][0].contains("seconds") == false);
    CHECK(io::spectral_report_to_json(rep, true)["colors"][0].contains("seconds"));

    auto csv = io::eigenvalues_to_csv(rep);
    std::istringstream is(csv);
    std::string line;
    std::getline(is, line);
    CHECK(line == "color,index,re,im,modulus,class");
    size_t rows = 0, trivial = 0;
    while (std::getline(is, line)) {
        ++rows;
        if (line.find(",trivial") != std::string::npos) ++trivial;
    }
    CHECK(rows == 360);
    CHECK(trivial == 1);
}

#ifdef FORGE_BIN
TEST_CASE("command line surface") {
    const std::string bin = FORGE_BIN;
    auto dir = scratch_dir();

    CHECK(run(bin + " factor --p 3 --e 1 --d 2") == 0);
    CHECK(run(bin + " factor --p 3 --e 1 --d 1") == 3);  // d >= 2
    CHECK(run(bin + " gens --p 3 --e 1 --d 3") == 0);
    CHECK(run(bin + " build --p 3 --e 1 --d 2 --f bogus --out " + (dir / "x.json").string()) == 3);
    CHECK(run(bin + " build --p 3 --e 1 --d 2 --f 1*t^2+1 --format nope") == 3);
    CHECK(run(bin + " spectra " + (dir / "missing.json").string()) == 3);
    CHECK(run(bin + " verify --p 3 --e 1 --d 2 --f 1*t^2+1 --seed 7") == 0);

    // build -> spectra pipeline and byte-identical reruns
    auto g1 = dir / "g1.json", g2 = dir / "g2.json";
    CHECK(run(bin + " build --p 3 --e 1 --d 2 --f 1*t^2+1*t^1+2 --out " + g1.string()) == 0);
    CHECK(run(bin + " build --p 3 --e 1 --d 2 --f 1*t^2+1*t^1+2 --out " + g2.string()) == 0);
    std::ifstream f1(g1), f2(g2);
    std::stringstream s1, s2;
    s1 << f1.rdbuf();
    s2 << f2.rdbuf();
    CHECK(s1.str() == s2.str());
    CHECK(!s1.str().empty());
    CHECK(run(bin + " spectra " + g1.string() + " --out " + (dir / "rep.json").string()) == 0);

    // partial balls are rejected by the spectra command
    auto ball = dir / "ball.json";
    CHECK(run(bin + " build --p 3 --e 1 --d 3 --f auto:1 --ball 1 --out " + ball.string()) == 0);
    CHECK(run(bin + " spectra " + ball.string()) == 3);

    // a full d=3 closure blows the vertex cap: resource-cap exit code
    CHECK(run(bin + " build --p 3 --e 1 --d 3 --f auto:1 --out " + (dir / "huge.json").string()) == 4);

    std::filesystem::remove_all(dir);
}
#endif
