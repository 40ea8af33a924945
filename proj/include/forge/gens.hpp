#pragma once

#include <string>
#include <vector>

#include "forge/skew.hpp"

namespace forge::gens {

using ff::FFElem;
using ff::FieldCtx;

// One generator per proper nonzero F_q-subspace of F_{q^d}: the unique
// constant-term-one divisor of 1 - t whose phi-kernel is that subspace.
struct Generator {
    skew::Subspace subspace;  // phi-kernel of poly, dim == type
    int type = 0;             // 1 .. d-1
    skew::SkewPoly poly;      // constant coefficient 1, tau-degree == type
    int complement = -1;      // index of the partner with partner * this == 1 - t
};

// Gaussian binomial [d choose k]_q, the number of k-dimensional subspaces.
ff::u64 gaussian_binomial(int d, int k, ff::u64 q);

// All k-dimensional subspaces in canonical echelon form, sorted
// lexicographically by their basis matrix.
std::vector<skew::Subspace> enumerate_subspaces(const FieldCtx& k, int dim);

Generator generator_for_subspace(const FieldCtx& k, const skew::Subspace& w);

// The full generator set, types 1..d-1, subspaces in enumeration order within
// each type, complements resolved and verified.
std::vector<Generator> generator_set(const FieldCtx& k);

struct CensusReport {
    bool ok = false;
    ff::u64 divisors_found = 0;
    std::string detail;
};

// Exhaustively enumerates the constant-term-one right divisors of 1 - t of
// tau-degree < d and checks that they are exactly the generator polynomials.
CensusReport divisor_census(const FieldCtx& k, const std::vector<Generator>& gens);

}  // namespace forge::gens
