#include "forge/gens.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace forge::gens {

using skew::SkewPoly;
using skew::Subspace;

ff::u64 gaussian_binomial(int d, int k, ff::u64 q) {
    if (k < 0 || k > d) return 0;
    // Pascal-type recurrence [i j] = [i-1 j-1] + q^j [i-1 j] keeps everything in integers
    std::vector<std::vector<ff::u64>> gb(d + 1, std::vector<ff::u64>(d + 1, 0));
    for (int i = 0; i <= d; ++i) gb[i][0] = 1;
    for (int i = 1; i <= d; ++i) {
        ff::u64 qj = 1;
        for (int j = 1; j <= i; ++j) {
            qj *= q;
            gb[i][j] = gb[i - 1][j - 1] + qj * gb[i - 1][j];
        }
    }
    return gb[d][k];
}

std::vector<Subspace> enumerate_subspaces(const FieldCtx& k, int dim) {
    const int d = k.d();
    if (dim < 1 || dim > d - 1) throw Error("subspace dimension out of range");

    std::vector<Subspace> out;
    // choose pivot columns p_0 < ... < p_{dim-1}, then fill the free entries
    std::vector<int> pivots(dim);
    for (int i = 0; i < dim; ++i) pivots[i] = i;
    auto next_combination = [&]() {
        int i = dim - 1;
        while (i >= 0 && pivots[i] == d - dim + i) --i;
        if (i < 0) return false;
        ++pivots[i];
        for (int j = i + 1; j < dim; ++j) pivots[j] = pivots[j - 1] + 1;
        return true;
    };

    do {
        // free positions: (row, col) with col > pivot(row) and col not a pivot
        std::vector<std::pair<int, int>> free_pos;
        for (int r = 0; r < dim; ++r)
            for (int c = pivots[r] + 1; c < d; ++c)
                if (std::find(pivots.begin(), pivots.end(), c) == pivots.end()) free_pos.emplace_back(r, c);

        ff::u64 total = 1;
        for (size_t i = 0; i < free_pos.size(); ++i) total *= k.q();
        for (ff::u64 idx = 0; idx < total; ++idx) {
            std::vector<std::vector<FFElem>> rows(dim, std::vector<FFElem>(d, k.zero(ff::Level::base)));
            for (int r = 0; r < dim; ++r) rows[r][pivots[r]] = k.one(ff::Level::base);
            ff::u64 t = idx;
            for (const auto& [r, c] : free_pos) {
                rows[r][c] = k.from_index(ff::Level::base, t % k.q());
                t /= k.q();
            }
            Subspace w;
            w.dim = dim;
            w.rows = std::move(rows);
            out.push_back(std::move(w));
        }
    } while (next_combination());

    std::sort(out.begin(), out.end(),
              [&](const Subspace& a, const Subspace& b) { return skew::subspace_lex_less(k, a, b); });
    internal_check(out.size() == gaussian_binomial(d, dim, k.q()),
                   "subspace enumeration does not match the Gaussian binomial");
    return out;
}

Generator generator_for_subspace(const FieldCtx& k, const Subspace& w) {
    if (w.dim < 1 || w.dim > k.d() - 1) throw Error("generator subspace must be proper and nonzero");
    Generator g;
    g.subspace = w;
    g.type = w.dim;
    g.poly = skew::divisor_for_subspace(k, w);
    return g;
}

std::vector<Generator> generator_set(const FieldCtx& k) {
    std::vector<Generator> out;
    std::map<std::string, int> by_poly;
    for (int type = 1; type <= k.d() - 1; ++type) {
        for (const auto& w : enumerate_subspaces(k, type)) {
            Generator g = generator_for_subspace(k, w);
            by_poly.emplace(skew::to_string(k, g.poly), static_cast<int>(out.size()));
            out.push_back(std::move(g));
        }
    }
    // complement: the left cofactor of 1 - t
    const SkewPoly omt = skew::one_minus_t(k);
    for (size_t i = 0; i < out.size(); ++i) {
        auto [quot, rem] = skew::right_divmod(k, omt, out[i].poly);
        internal_check(rem.is_zero(), "generator does not divide 1 - t");
        auto it = by_poly.find(skew::to_string(k, quot));
        internal_check(it != by_poly.end(), "complement cofactor is not a generator");
        out[i].complement = it->second;
        internal_check(out[it->second].type == k.d() - out[i].type, "complement has the wrong type");
        internal_check(skew::mul(k, quot, out[i].poly) == omt, "complement product is not 1 - t");
    }
    return out;
}

CensusReport divisor_census(const FieldCtx& k, const std::vector<Generator>& gens) {
    CensusReport rep;
    const SkewPoly omt = skew::one_minus_t(k);
    std::map<std::string, bool> expected;  // poly -> seen
    for (const auto& g : gens) expected.emplace(skew::to_string(k, g.poly), false);

    std::ostringstream diff;
    ff::u64 qd = k.size(ff::Level::skew);
    for (int deg = 1; deg <= k.d() - 1; ++deg) {
        // constant term 1, arbitrary middle coefficients, nonzero lead
        ff::u64 total = 1;
        for (int i = 1; i < deg; ++i) total *= qd;
        for (ff::u64 mid = 0; mid < total; ++mid)
            for (ff::u64 lead = 1; lead < qd; ++lead) {
                std::vector<FFElem> c(deg + 1, k.zero(ff::Level::skew));
                c[0] = k.one(ff::Level::skew);
                ff::u64 t = mid;
                for (int i = 1; i < deg; ++i) {
                    c[i] = k.from_index(ff::Level::skew, t % qd);
                    t /= qd;
                }
                c[deg] = k.from_index(ff::Level::skew, lead);
                SkewPoly cand{std::move(c)};
                if (!skew::right_divmod(k, omt, cand).second.is_zero()) continue;
                ++rep.divisors_found;
                auto it = expected.find(skew::to_string(k, cand));
                if (it == expected.end())
                    diff << "unexpected divisor " << skew::to_string(k, cand) << "\n";
                else
                    it->second = true;
            }
    }
    for (const auto& [poly, seen] : expected)
        if (!seen) diff << "generator not found as divisor: " << poly << "\n";
    rep.detail = diff.str();
    rep.ok = rep.detail.empty() && rep.divisors_found == gens.size();
    return rep;
}

}  // namespace forge::gens
