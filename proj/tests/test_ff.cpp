#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "forge/ff.hpp"

using namespace forge;
using ff::FFElem;
using ff::FieldCtx;
using ff::Level;

// F_9 = F_3[u]/(u^2+1) with d=2, n=1 is the workhorse desk-scale tower.
static FieldCtx f9() { return FieldCtx::make(3, 1, 2, 1); }

TEST_CASE("find_irreducible picks the lexicographically smallest monic irreducible") {
    CHECK(ff::find_irreducible(3, 1) == ff::PrimePoly{0, 1});      // t
    CHECK(ff::find_irreducible(3, 2) == ff::PrimePoly{1, 0, 1});   // t^2+1
    // oracle: trial division finds no factor of degree <= deg/2
    for (int deg : {2, 3, 4, 6}) {
        auto f = ff::find_irreducible(3, deg);
        CHECK(ff::poly_degree(f) == deg);
        CHECK(f[deg] == 1);
        CHECK(ff::is_irreducible(3, f));
        // no roots in F_3
        for (int r = 0; r < 3; ++r) {
            int acc = 0;
            for (int i = deg; i >= 0; --i) acc = (acc * r + f[i]) % 3;
            CHECK(acc != 0);
        }
    }
}

TEST_CASE("basic arithmetic in F_9") {
    auto k = f9();
    FFElem u = k.gen(Level::skew);
    CHECK(k.index(u) == 3);
    // u*u = -1 = 2, the defining relation
    CHECK(k.index(k.mul(u, u)) == 2);
    // inverse axiom, exhaustively
    for (ff::u64 i = 1; i < 9; ++i) {
        FFElem x = k.from_index(Level::skew, i);
        CHECK(k.mul(x, k.inv(x)) == k.one(Level::skew));
    }
    // u^8 = 1: exhaustive order check over F_9^x
    CHECK(k.pow(u, 8) == k.one(Level::skew));
    CHECK_THROWS_AS(k.inv(k.zero(Level::skew)), Error);
    // mismatched tags rejected
    CHECK_THROWS_AS(k.add(k.one(Level::base), k.one(Level::skew)), Error);
}

TEST_CASE("associativity and distributivity on random triples") {
    auto k = f9();
    std::mt19937_64 rng(12345);
    for (int trial = 0; trial < 10000; ++trial) {
        FFElem a = k.from_index(Level::skew, rng() % 9);
        FFElem b = k.from_index(Level::skew, rng() % 9);
        FFElem c = k.from_index(Level::skew, rng() % 9);
        CHECK(k.mul(k.mul(a, b), c) == k.mul(a, k.mul(b, c)));
        CHECK(k.mul(a, k.add(b, c)) == k.add(k.mul(a, b), k.mul(a, c)));
    }
}

TEST_CASE("q-power Frobenius") {
    auto k = f9();
    FFElem u = k.gen(Level::skew);
    // u^3 = u * u^2 = -u = 2u
    FFElem expect = k.mul(k.from_int(Level::skew, 2), u);
    CHECK(k.frobenius_q(u, 1) == expect);
    // F_{q^d} is the fixed field of sigma^d; F_q of sigma
    for (ff::u64 i = 0; i < 9; ++i) {
        FFElem x = k.from_index(Level::skew, i);
        CHECK(k.frobenius_q(x, 2) == x);
    }
    for (ff::u64 i = 0; i < 3; ++i) {
        FFElem c = k.from_index(Level::base, i);
        CHECK(k.frobenius_q(c, 1) == c);
    }
}

TEST_CASE("trace to the base field") {
    auto k = f9();
    FFElem u = k.gen(Level::skew);
    // u + u^3 = u - u = 0
    CHECK(k.is_zero(k.trace_to_base(u)));
    // trace(1) = d = 2
    CHECK(k.trace_to_base(k.one(Level::skew)) == k.from_int(Level::base, 2));
    // F_q-linearity, exhaustively over all (a, b, x, y)
    for (ff::u64 ai = 0; ai < 3; ++ai)
        for (ff::u64 bi = 0; bi < 3; ++bi)
            for (ff::u64 xi = 0; xi < 9; ++xi)
                for (ff::u64 yi = 0; yi < 9; ++yi) {
                    FFElem a = k.from_index(Level::base, ai), b = k.from_index(Level::base, bi);
                    FFElem x = k.from_index(Level::skew, xi), y = k.from_index(Level::skew, yi);
                    FFElem lhs = k.trace_to_base(
                        k.add(k.mul(k.embed(a, Level::skew), x), k.mul(k.embed(b, Level::skew), y)));
                    FFElem rhs = k.add(k.mul(a, k.trace_to_base(x)), k.mul(b, k.trace_to_base(y)));
                    CHECK(lhs == rhs);
                }
    // trace is onto F_q and its kernel has exactly q^{d-1} elements
    std::vector<int> hit(3, 0);
    int kernel = 0;
    for (ff::u64 i = 0; i < 9; ++i) {
        FFElem t = k.trace_to_base(k.from_index(Level::skew, i));
        hit[k.index(t)]++;
        if (k.is_zero(t)) ++kernel;
    }
    CHECK(kernel == 3);
    for (int h : hit) CHECK(h > 0);
}

TEST_CASE("Hilbert 90 witnesses") {
    auto k = f9();
    CHECK(k.hilbert90_solve(k.zero(Level::skew)) == k.zero(Level::skew));

    FFElem u = k.gen(Level::skew);
    // brute-force oracle over the 9 candidates: smallest theta with theta - theta^3 = u
    FFElem expect = k.zero(Level::skew);
    bool found = false;
    for (ff::u64 i = 0; i < 9 && !found; ++i) {
        FFElem t = k.from_index(Level::skew, i);
        if (k.sub(t, k.frobenius_q(t, 1)) == u) {
            expect = t;
            found = true;
        }
    }
    REQUIRE(found);
    CHECK(k.hilbert90_solve(u) == expect);
    CHECK(k.index(expect) == 6);  // 2u

    // every trace-zero beta has a verified witness
    for (ff::u64 i = 0; i < 9; ++i) {
        FFElem beta = k.from_index(Level::skew, i);
        if (!k.is_zero(k.trace_to_base(beta))) {
            CHECK_THROWS_AS(k.hilbert90_solve(beta), Error);
            continue;
        }
        FFElem theta = k.hilbert90_solve(beta);
        CHECK(k.sub(theta, k.frobenius_q(theta, 1)) == beta);
    }
}

TEST_CASE("subfield embedding F_9 -> F_81") {
    auto k = FieldCtx::make(3, 1, 2, 2);  // ext = F_81
    CHECK(k.embed(k.one(Level::skew), Level::ext) == k.one(Level::ext));
    CHECK(k.embed(k.zero(Level::skew), Level::ext) == k.zero(Level::ext));
    // multiplicative and injective, exhaustively
    std::vector<ff::u64> seen;
    for (ff::u64 xi = 0; xi < 9; ++xi) {
        FFElem im = k.embed(k.from_index(Level::skew, xi), Level::ext);
        seen.push_back(k.index(im));
        for (ff::u64 yi = 0; yi < 9; ++yi) {
            FFElem x = k.from_index(Level::skew, xi), y = k.from_index(Level::skew, yi);
            CHECK(k.embed(k.mul(x, y), Level::ext) == k.mul(k.embed(x, Level::ext), k.embed(y, Level::ext)));
        }
        // image lies in the fixed field of x -> x^(q^d)
        CHECK(k.frobenius_q(im, 2) == im);
    }
    std::sort(seen.begin(), seen.end());
    CHECK(std::unique(seen.begin(), seen.end()) == seen.end());
}

TEST_CASE("root finding by exhaustive scan") {
    auto k = f9();
    // roots of t^2+1 over F_9 are u and 2u
    std::vector<FFElem> g = {k.one(Level::skew), k.zero(Level::skew), k.one(Level::skew)};
    auto roots = k.poly_roots(g, Level::skew);
    REQUIRE(roots.size() == 2);
    CHECK(k.index(roots[0]) == 3);
    CHECK(k.index(roots[1]) == 6);
    // roots of t - c is {c}
    for (ff::u64 i = 0; i < 9; ++i) {
        FFElem c = k.from_index(Level::skew, i);
        std::vector<FFElem> lin = {k.neg(c), k.one(Level::skew)};
        auto r = k.poly_roots(lin, Level::skew);
        REQUIRE(r.size() == 1);
        CHECK(r[0] == c);
    }
    CHECK_THROWS_AS(k.poly_roots({k.zero(Level::skew)}, Level::skew), Error);
}

TEST_CASE("coordinates over the F_q basis") {
    auto k = f9();
    for (ff::u64 i = 0; i < 9; ++i) {
        FFElem y = k.from_index(Level::skew, i);
        auto coords = k.to_coords(y);
        REQUIRE(coords.size() == 2);
        CHECK(k.from_coords(coords) == y);
    }
}

TEST_CASE("tower with non-prime q") {
    // q = 9 = 3^2, d = 2: F_9 < F_81
    auto k = FieldCtx::make(3, 2, 2, 1);
    CHECK(k.q() == 9);
    CHECK(k.size(Level::skew) == 81);
    // trace and Hilbert 90 still work
    int kernel = 0;
    for (ff::u64 i = 0; i < 81; ++i) {
        FFElem y = k.from_index(Level::skew, i);
        FFElem t = k.trace_to_base(y);
        if (k.is_zero(t)) {
            ++kernel;
            FFElem theta = k.hilbert90_solve(y);
            CHECK(k.sub(theta, k.frobenius_q(theta, 1)) == y);
        }
    }
    CHECK(kernel == 9);  // q^{d-1}
    // embedding of F_9 into F_81 is multiplicative
    for (ff::u64 xi = 0; xi < 9; ++xi)
        for (ff::u64 yi = 0; yi < 9; ++yi) {
            FFElem x = k.from_index(Level::base, xi), y = k.from_index(Level::base, yi);
            CHECK(k.embed(k.mul(x, y), Level::skew) ==
                  k.mul(k.embed(x, Level::skew), k.embed(y, Level::skew)));
        }
}

TEST_CASE("context construction rejects bad parameters") {
    CHECK_THROWS_AS(FieldCtx::make(4, 1, 2, 1), ConfigError);
    CHECK_THROWS_AS(FieldCtx::make(3, 1, 1, 1), ConfigError);
    CHECK_THROWS_AS(FieldCtx::make(3, 1, 2, 0), ConfigError);
    CHECK_THROWS_AS(FieldCtx::make(3, 5, 5, 5), CapError);
}
