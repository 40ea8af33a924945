#include "forge/skew.hpp"

#include <algorithm>
#include <sstream>

namespace forge::skew {

namespace {

std::vector<FFElem> trim(const FieldCtx& k, std::vector<FFElem> c) {
    while (!c.empty() && k.is_zero(c.back())) c.pop_back();
    return c;
}

// inverse q-power Frobenius on F_{q^d}: x -> x^(q^-m)
FFElem frob_inv(const FieldCtx& k, const FFElem& x, int m) {
    int d = k.d();
    int r = ((d - (m % d)) % d + d) % d;
    return k.frobenius_q(x, r);
}

// reduced row echelon form over F_q of rows of base-level entries
std::vector<std::vector<FFElem>> rref_base(const FieldCtx& k, std::vector<std::vector<FFElem>> rows) {
    if (rows.empty()) return rows;
    const int width = static_cast<int>(rows[0].size());
    int r = 0;
    for (int col = 0; col < width && r < static_cast<int>(rows.size()); ++col) {
        int pivot = -1;
        for (int i = r; i < static_cast<int>(rows.size()); ++i)
            if (!k.is_zero(rows[i][col])) {
                pivot = i;
                break;
            }
        if (pivot < 0) continue;
        std::swap(rows[r], rows[pivot]);
        FFElem inv = k.inv(rows[r][col]);
        for (auto& x : rows[r]) x = k.mul(x, inv);
        for (int i = 0; i < static_cast<int>(rows.size()); ++i) {
            if (i == r || k.is_zero(rows[i][col])) continue;
            FFElem f = rows[i][col];
            for (int j = 0; j < width; ++j) rows[i][j] = k.sub(rows[i][j], k.mul(f, rows[r][j]));
        }
        ++r;
    }
    rows.resize(r);
    return rows;
}

int rank_of_vectors(const FieldCtx& k, const std::vector<FFElem>& vecs) {
    std::vector<std::vector<FFElem>> rows;
    for (const auto& v : vecs) rows.push_back(k.to_coords(v));
    return static_cast<int>(rref_base(k, std::move(rows)).size());
}

}  // namespace

SkewPoly make_skew(const FieldCtx& k, std::vector<FFElem> coeffs) {
    for (const auto& c : coeffs)
        if (c.level != Level::skew) throw Error("skew coefficients must live at the skew level");
    return SkewPoly{trim(k, std::move(coeffs))};
}

SkewPoly skew_zero() { return SkewPoly{}; }

SkewPoly skew_one(const FieldCtx& k) { return SkewPoly{{k.one(Level::skew)}}; }

SkewPoly tau_power(const FieldCtx& k, int m) {
    std::vector<FFElem> c(m + 1, k.zero(Level::skew));
    c[m] = k.one(Level::skew);
    return SkewPoly{std::move(c)};
}

SkewPoly one_minus_t(const FieldCtx& k) {
    std::vector<FFElem> c(k.d() + 1, k.zero(Level::skew));
    c[0] = k.one(Level::skew);
    c[k.d()] = k.neg(k.one(Level::skew));
    return SkewPoly{std::move(c)};
}

SkewPoly add(const FieldCtx& k, const SkewPoly& a, const SkewPoly& b) {
    std::vector<FFElem> c(std::max(a.c.size(), b.c.size()), k.zero(Level::skew));
    for (size_t i = 0; i < a.c.size(); ++i) c[i] = a.c[i];
    for (size_t i = 0; i < b.c.size(); ++i) c[i] = k.add(c[i], b.c[i]);
    return SkewPoly{trim(k, std::move(c))};
}

SkewPoly sub(const FieldCtx& k, const SkewPoly& a, const SkewPoly& b) { return add(k, a, neg(k, b)); }

SkewPoly neg(const FieldCtx& k, const SkewPoly& a) {
    SkewPoly r = a;
    for (auto& c : r.c) c = k.neg(c);
    return r;
}

SkewPoly mul(const FieldCtx& k, const SkewPoly& a, const SkewPoly& b) {
    if (a.is_zero() || b.is_zero()) return skew_zero();
    std::vector<FFElem> c(a.c.size() + b.c.size() - 1, k.zero(Level::skew));
    for (size_t i = 0; i < a.c.size(); ++i) {
        if (k.is_zero(a.c[i])) continue;
        for (size_t j = 0; j < b.c.size(); ++j) {
            if (k.is_zero(b.c[j])) continue;
            // (a T^i)(b T^j) = a * b^(q^i) * T^(i+j)
            c[i + j] = k.add(c[i + j], k.mul(a.c[i], k.frobenius_q(b.c[j], static_cast<int>(i))));
        }
    }
    return SkewPoly{trim(k, std::move(c))};
}

SkewPoly left_scale(const FieldCtx& k, const FFElem& c, const SkewPoly& a) {
    SkewPoly r = a;
    for (auto& x : r.c) x = k.mul(c, x);
    return SkewPoly{trim(k, std::move(r.c))};
}

std::pair<SkewPoly, SkewPoly> right_divmod(const FieldCtx& k, const SkewPoly& a, const SkewPoly& b) {
    if (b.is_zero()) throw Error("division by zero polynomial");
    SkewPoly r = a;
    std::vector<FFElem> q(a.c.size() > b.c.size() ? a.c.size() - b.c.size() + 1 : 1, k.zero(Level::skew));
    const int db = b.deg();
    const FFElem& blead = b.c[db];
    while (r.deg() >= db) {
        int shift = r.deg() - db;
        // (lam T^shift) * b has leading coefficient lam * blead^(q^shift)
        FFElem lam = k.mul(r.c[r.deg()], k.inv(k.frobenius_q(blead, shift)));
        SkewPoly term{std::vector<FFElem>(shift + 1, k.zero(Level::skew))};
        term.c[shift] = lam;
        q[shift] = k.add(q[shift], lam);
        r = sub(k, r, mul(k, term, b));
    }
    return {SkewPoly{trim(k, std::move(q))}, r};
}

std::pair<SkewPoly, SkewPoly> left_divmod(const FieldCtx& k, const SkewPoly& a, const SkewPoly& b) {
    if (b.is_zero()) throw Error("division by zero polynomial");
    SkewPoly r = a;
    std::vector<FFElem> q(a.c.size() > b.c.size() ? a.c.size() - b.c.size() + 1 : 1, k.zero(Level::skew));
    const int db = b.deg();
    const FFElem& blead = b.c[db];
    while (r.deg() >= db) {
        int shift = r.deg() - db;
        // b * (lam T^shift) has leading coefficient blead * lam^(q^db)
        FFElem lam = frob_inv(k, k.div(r.c[r.deg()], blead), db);
        SkewPoly term{std::vector<FFElem>(shift + 1, k.zero(Level::skew))};
        term.c[shift] = lam;
        q[shift] = k.add(q[shift], lam);
        r = sub(k, r, mul(k, b, term));
    }
    return {SkewPoly{trim(k, std::move(q))}, r};
}

SkewPoly left_gcd(const FieldCtx& k, const SkewPoly& a, const SkewPoly& b) {
    if (a.is_zero() && b.is_zero()) throw Error("left_gcd of two zero polynomials");
    SkewPoly x = a, y = b;
    while (!y.is_zero()) {
        SkewPoly r = right_divmod(k, x, y).second;
        x = y;
        y = r;
    }
    return monic(k, x);
}

SkewPoly monic(const FieldCtx& k, const SkewPoly& a) {
    if (a.is_zero()) return a;
    return left_scale(k, k.inv(a.c[a.deg()]), a);
}

SkewPoly normalize_const_one(const FieldCtx& k, const SkewPoly& a) {
    if (a.is_zero() || k.is_zero(a.c[0])) throw Error("polynomial has no unit constant term");
    return left_scale(k, k.inv(a.c[0]), a);
}

// --- central representation ---

TPoly tp_add(const FieldCtx& k, const TPoly& a, const TPoly& b) {
    std::vector<FFElem> c(std::max(a.c.size(), b.c.size()), k.zero(Level::skew));
    for (size_t i = 0; i < a.c.size(); ++i) c[i] = a.c[i];
    for (size_t i = 0; i < b.c.size(); ++i) c[i] = k.add(c[i], b.c[i]);
    return TPoly{trim(k, std::move(c))};
}

TPoly tp_sub(const FieldCtx& k, const TPoly& a, const TPoly& b) {
    TPoly nb = b;
    for (auto& x : nb.c) x = k.neg(x);
    return tp_add(k, a, nb);
}

TPoly tp_mul(const FieldCtx& k, const TPoly& a, const TPoly& b) {
    if (a.is_zero() || b.is_zero()) return TPoly{};
    std::vector<FFElem> c(a.c.size() + b.c.size() - 1, k.zero(Level::skew));
    for (size_t i = 0; i < a.c.size(); ++i)
        for (size_t j = 0; j < b.c.size(); ++j) c[i + j] = k.add(c[i + j], k.mul(a.c[i], b.c[j]));
    return TPoly{trim(k, std::move(c))};
}

std::vector<TPoly> regular_rep(const FieldCtx& k, const SkewPoly& a) {
    const int d = k.d();
    std::vector<TPoly> alpha(d);
    for (int m = 0; m <= a.deg(); ++m) {
        int i = m % d, j = m / d;
        if (static_cast<int>(alpha[i].c.size()) <= j) alpha[i].c.resize(j + 1, k.zero(Level::skew));
        alpha[i].c[j] = a.c[m];
    }
    for (auto& t : alpha) t.c = trim(k, std::move(t.c));

    std::vector<TPoly> mat(d * d);
    for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) {
            TPoly entry = alpha[((c - r) % d + d) % d];
            for (auto& x : entry.c) x = k.frobenius_q(x, r);
            if (c < r && !entry.is_zero()) entry.c.insert(entry.c.begin(), k.zero(Level::skew));
            mat[r * d + c] = std::move(entry);
        }
    return mat;
}

TPoly tp_det(const FieldCtx& k, const std::vector<TPoly>& mat, int dim) {
    // column-subset DP along rows; sign from inversion parity
    std::vector<TPoly> dp(static_cast<size_t>(1) << dim);
    std::vector<bool> seen(dp.size(), false);
    dp[0] = TPoly{{k.one(Level::skew)}};
    seen[0] = true;
    for (unsigned mask = 0; mask + 1 < dp.size(); ++mask) {
        if (!seen[mask] || dp[mask].is_zero()) continue;
        int row = __builtin_popcount(mask);
        for (int c = 0; c < dim; ++c) {
            if (mask & (1u << c)) continue;
            const TPoly& e = mat[row * dim + c];
            if (e.is_zero()) continue;
            TPoly term = tp_mul(k, dp[mask], e);
            if (__builtin_popcount(mask >> (c + 1)) & 1)
                for (auto& x : term.c) x = k.neg(x);
            unsigned next = mask | (1u << c);
            if (seen[next])
                dp[next] = tp_add(k, dp[next], term);
            else
                dp[next] = std::move(term);
            seen[next] = true;
        }
    }
    return seen.back() ? dp.back() : TPoly{};
}

CenterPoly reduced_norm(const FieldCtx& k, const SkewPoly& a) {
    TPoly det = tp_det(k, regular_rep(k, a), k.d());
    std::vector<FFElem> coeffs;
    for (const auto& c : det.c) {
        internal_check(k.in_base_field(c), "reduced norm has a coefficient outside F_q");
        coeffs.push_back(k.project_to_base(c));
    }
    return CenterPoly{std::move(coeffs)};
}

// --- additive polynomials ---

FFElem phi_eval(const FieldCtx& k, const SkewPoly& a, const FFElem& x) {
    if (x.level != Level::skew && x.level != Level::ext)
        throw Error("phi_eval: point must live in F_{q^d} or its extension");
    FFElem acc = k.zero(x.level);
    FFElem xp = x;
    for (int i = 0; i <= a.deg(); ++i) {
        if (!k.is_zero(a.c[i])) {
            FFElem coeff = x.level == Level::skew ? a.c[i] : k.embed(a.c[i], Level::ext);
            acc = k.add(acc, k.mul(coeff, xp));
        }
        if (i < a.deg()) xp = k.frobenius_q(xp, 1);
    }
    return acc;
}

Subspace phi_kernel(const FieldCtx& k, const SkewPoly& a) {
    if (a.is_zero()) throw Error("phi_kernel of the zero polynomial");
    const int d = k.d();
    // matrix of the F_q-linear map phi_a on the basis {1, s, ..., s^{d-1}}
    std::vector<std::vector<FFElem>> m(d, std::vector<FFElem>(d, k.zero(Level::base)));
    for (int j = 0; j < d; ++j) {
        std::vector<FFElem> e(d, k.zero(Level::base));
        e[j] = k.one(Level::base);
        auto img = k.to_coords(phi_eval(k, a, k.from_coords(e)));
        for (int r = 0; r < d; ++r) m[r][j] = img[r];
    }
    std::vector<int> pivot_col;
    int r = 0;
    for (int col = 0; col < d && r < d; ++col) {
        int pr = -1;
        for (int i = r; i < d; ++i)
            if (!k.is_zero(m[i][col])) {
                pr = i;
                break;
            }
        if (pr < 0) continue;
        std::swap(m[r], m[pr]);
        FFElem inv = k.inv(m[r][col]);
        for (auto& x : m[r]) x = k.mul(x, inv);
        for (int i = 0; i < d; ++i) {
            if (i == r || k.is_zero(m[i][col])) continue;
            FFElem f = m[i][col];
            for (int j = 0; j < d; ++j) m[i][j] = k.sub(m[i][j], k.mul(f, m[r][j]));
        }
        pivot_col.push_back(col);
        ++r;
    }
    std::vector<std::vector<FFElem>> basis;
    for (int col = 0; col < d; ++col) {
        if (std::find(pivot_col.begin(), pivot_col.end(), col) != pivot_col.end()) continue;
        std::vector<FFElem> v(d, k.zero(Level::base));
        v[col] = k.one(Level::base);
        for (size_t i = 0; i < pivot_col.size(); ++i) v[pivot_col[i]] = k.neg(m[i][col]);
        basis.push_back(std::move(v));
    }
    return subspace_from_rows(k, std::move(basis));
}

SkewPoly subspace_poly(const FieldCtx& k, const Subspace& w) {
    auto elems = subspace_elements(k, w);
    // expand prod (X - v) as a classical polynomial over F_{q^d}
    std::vector<FFElem> p{k.one(Level::skew)};
    for (const auto& v : elems) {
        std::vector<FFElem> next(p.size() + 1, k.zero(Level::skew));
        for (size_t i = 0; i < p.size(); ++i) {
            next[i + 1] = k.add(next[i + 1], p[i]);
            next[i] = k.sub(next[i], k.mul(p[i], v));
        }
        p = std::move(next);
    }
    std::vector<FFElem> skew_coeffs(w.dim + 1, k.zero(Level::skew));
    ff::u64 next_q_power = 1;
    int idx = 0;
    for (size_t m = 0; m < p.size(); ++m) {
        if (m == next_q_power) {
            skew_coeffs[idx++] = p[m];
            next_q_power *= k.q();
        } else {
            internal_check(k.is_zero(p[m]), "subspace product is not an additive polynomial");
        }
    }
    internal_check(idx == w.dim + 1, "subspace product has the wrong degree");
    return make_skew(k, std::move(skew_coeffs));
}

SkewPoly divisor_for_subspace(const FieldCtx& k, const Subspace& w) {
    return normalize_const_one(k, subspace_poly(k, w));
}

std::vector<SkewPoly> flag_factorization(const FieldCtx& k, const Flag& flag) {
    if (flag.steps.empty()) throw Error("empty flag");
    for (size_t i = 0; i < flag.steps.size(); ++i) {
        if (flag.steps[i].dim == 0) throw Error("flag members must be nonzero");
        if (i > 0 && !(flag.steps[i - 1].dim < flag.steps[i].dim &&
                       subspace_contains(k, flag.steps[i], flag.steps[i - 1])))
            throw Error("flag is not strictly increasing");
    }
    if (flag.steps.back().dim != k.d()) throw Error("flag must terminate at the full space");

    // constant-term-one divisor per flag member; quotients telescope to 1 - t
    std::vector<SkewPoly> chain;
    for (const auto& w : flag.steps) chain.push_back(divisor_for_subspace(k, w));

    std::vector<SkewPoly> factors;
    for (size_t j = chain.size(); j-- > 1;) {
        auto [quot, rem] = right_divmod(k, chain[j], chain[j - 1]);
        internal_check(rem.is_zero(), "flag member does not divide its successor");
        factors.push_back(quot);
    }
    factors.push_back(chain.front());

    SkewPoly prod = skew_one(k);
    for (const auto& f : factors) prod = mul(k, prod, f);
    internal_check(prod == one_minus_t(k), "flag factorization does not multiply back to 1 - t");
    return factors;
}

LinearFactorization linear_factorization(const FieldCtx& k) {
    const int d = k.d();
    LinearFactorization out;

    std::vector<FFElem> ys{k.one(Level::skew)};
    out.xs.push_back(k.one(Level::skew));
    out.kernel_chain.push_back(ys);

    SkewPoly factor0 = make_skew(k, {k.one(Level::skew), k.neg(k.one(Level::skew))});  // 1 - T
    out.factors.push_back(factor0);
    SkewPoly partial = factor0;

    for (int step = 1; step < d; ++step) {
        // smallest-index nonzero u with Tr(y/u) = 0 for every current kernel vector
        FFElem x = k.zero(Level::skew);
        bool found = false;
        for (ff::u64 idx = 1; idx < k.size(Level::skew) && !found; ++idx) {
            FFElem u = k.from_index(Level::skew, idx);
            bool ok = true;
            for (const auto& y : ys)
                if (!k.is_zero(k.trace_to_base(k.div(y, u)))) {
                    ok = false;
                    break;
                }
            if (ok) {
                x = u;
                found = true;
            }
        }
        internal_check(found, "trace-dual set has no nonzero element");

        // lift each kernel vector: theta - theta^q = y/x makes x*theta land in
        // the previous kernel under 1 - x^(1-q) T
        std::vector<FFElem> next_ys{x};
        for (const auto& y : ys) {
            FFElem theta = k.hilbert90_solve(k.div(y, x));
            next_ys.push_back(k.mul(x, theta));
        }
        internal_check(rank_of_vectors(k, next_ys) == static_cast<int>(next_ys.size()),
                       "lifted kernel vectors are linearly dependent");

        // append 1 - x^(1-q) T
        FFElem coef = k.neg(k.powi(x, 1 - static_cast<long long>(k.q())));
        SkewPoly factor = make_skew(k, {k.one(Level::skew), coef});
        out.factors.push_back(factor);
        out.xs.push_back(x);
        partial = mul(k, partial, factor);

        Subspace ker = phi_kernel(k, partial);
        internal_check(ker.dim == step + 1 && ker == subspace_from_vectors(k, next_ys),
                       "partial product kernel does not match the lifted vectors");

        ys = std::move(next_ys);
        out.kernel_chain.push_back(ys);
    }

    internal_check(partial == one_minus_t(k), "linear factors do not multiply back to 1 - t");
    return out;
}

// --- subspaces ---

Subspace subspace_zero(const FieldCtx&) { return Subspace{}; }

Subspace subspace_full(const FieldCtx& k) {
    Subspace w;
    w.dim = k.d();
    for (int i = 0; i < k.d(); ++i) {
        std::vector<FFElem> row(k.d(), k.zero(Level::base));
        row[i] = k.one(Level::base);
        w.rows.push_back(std::move(row));
    }
    return w;
}

Subspace subspace_from_rows(const FieldCtx& k, std::vector<std::vector<FFElem>> rows) {
    auto ech = rref_base(k, std::move(rows));
    Subspace w;
    w.dim = static_cast<int>(ech.size());
    w.rows = std::move(ech);
    return w;
}

Subspace subspace_from_vectors(const FieldCtx& k, const std::vector<FFElem>& gens_skew) {
    std::vector<std::vector<FFElem>> rows;
    for (const auto& v : gens_skew) rows.push_back(k.to_coords(v));
    return subspace_from_rows(k, std::move(rows));
}

bool subspace_contains(const FieldCtx& k, const Subspace& big, const Subspace& small) {
    const int d = k.d();
    for (const auto& srow : small.rows) {
        std::vector<FFElem> v = srow;
        for (const auto& brow : big.rows) {
            int pc = -1;
            for (int j = 0; j < d; ++j)
                if (!k.is_zero(brow[j])) {
                    pc = j;
                    break;
                }
            if (pc < 0) continue;
            FFElem f = v[pc];
            if (k.is_zero(f)) continue;
            for (int j = 0; j < d; ++j) v[j] = k.sub(v[j], k.mul(f, brow[j]));
        }
        for (const auto& x : v)
            if (!k.is_zero(x)) return false;
    }
    return true;
}

std::vector<FFElem> subspace_elements(const FieldCtx& k, const Subspace& w) {
    std::vector<FFElem> basis;
    for (const auto& row : w.rows) basis.push_back(k.from_coords(row));
    ff::u64 total = 1;
    for (int i = 0; i < w.dim; ++i) total *= k.q();
    std::vector<FFElem> out;
    out.reserve(total);
    for (ff::u64 idx = 0; idx < total; ++idx) {
        FFElem acc = k.zero(Level::skew);
        ff::u64 t = idx;
        for (int i = 0; i < w.dim; ++i) {
            ff::u64 ci = t % k.q();
            t /= k.q();
            if (ci != 0) acc = k.add(acc, k.mul(k.embed(k.from_index(Level::base, ci), Level::skew), basis[i]));
        }
        out.push_back(acc);
    }
    return out;
}

bool subspace_lex_less(const FieldCtx& k, const Subspace& a, const Subspace& b) {
    std::vector<ff::u64> ia, ib;
    for (const auto& row : a.rows)
        for (const auto& x : row) ia.push_back(k.index(x));
    for (const auto& row : b.rows)
        for (const auto& x : row) ib.push_back(k.index(x));
    return ia < ib;
}

// --- encodings ---

namespace {

std::string poly_string(const FieldCtx& k, const std::vector<FFElem>& c, char var) {
    int deg = static_cast<int>(c.size()) - 1;
    while (deg >= 0 && k.is_zero(c[deg])) --deg;
    if (deg < 0) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = deg; i >= 0; --i) {
        if (k.is_zero(c[i])) continue;
        if (!first) os << "+";
        first = false;
        if (i == 0)
            os << k.index(c[i]);
        else
            os << k.index(c[i]) << "*" << var << "^" << i;
    }
    return os.str();
}

std::vector<FFElem> parse_poly(const FieldCtx& k, const std::string& text, Level level, char var) {
    std::string s;
    for (char ch : text)
        if (!isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
    if (s.empty()) throw ConfigError("empty polynomial string");
    std::vector<FFElem> coeffs;
    auto set_term = [&](ff::u64 cidx, int expo) {
        if (cidx >= k.size(level)) throw ConfigError("coefficient index out of range");
        if (expo < 0 || expo > 4096) throw ConfigError("exponent out of range");
        if (static_cast<int>(coeffs.size()) <= expo) coeffs.resize(expo + 1, k.zero(level));
        coeffs[expo] = k.add(coeffs[expo], k.from_index(level, cidx));
    };
    size_t pos = 0;
    while (pos < s.size()) {
        size_t next = s.find('+', pos);
        std::string term = s.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
        pos = next == std::string::npos ? s.size() : next + 1;
        if (term.empty()) throw ConfigError("malformed polynomial term");
        size_t star = term.find('*');
        try {
            if (star == std::string::npos) {
                set_term(std::stoull(term), 0);
            } else {
                ff::u64 cidx = std::stoull(term.substr(0, star));
                std::string rest = term.substr(star + 1);
                char v = rest.empty() ? '?' : static_cast<char>(tolower(static_cast<unsigned char>(rest[0])));
                if (v != static_cast<char>(tolower(static_cast<unsigned char>(var))) || rest.size() < 3 ||
                    rest[1] != '^')
                    throw ConfigError("malformed polynomial term: " + term);
                set_term(cidx, std::stoi(rest.substr(2)));
            }
        } catch (const std::invalid_argument&) {
            throw ConfigError("malformed polynomial term: " + term);
        } catch (const std::out_of_range&) {
            throw ConfigError("malformed polynomial term: " + term);
        }
    }
    return coeffs;
}

}  // namespace

std::string to_string(const FieldCtx& k, const SkewPoly& a) { return poly_string(k, a.c, 'T'); }

std::string to_string(const FieldCtx& k, const CenterPoly& f) { return poly_string(k, f.c, 't'); }

SkewPoly parse_skew(const FieldCtx& k, const std::string& text) {
    return make_skew(k, parse_poly(k, text, Level::skew, 'T'));
}

CenterPoly parse_center(const FieldCtx& k, const std::string& text) {
    auto c = parse_poly(k, text, Level::base, 't');
    while (!c.empty() && k.is_zero(c.back())) c.pop_back();
    return CenterPoly{std::move(c)};
}

std::string pretty(const FieldCtx& k, const SkewPoly& a) {
    if (a.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    FFElem one = k.one(Level::skew), minus_one = k.neg(k.one(Level::skew));
    for (int i = 0; i <= a.deg(); ++i) {
        const FFElem& c = a.c[i];
        if (k.is_zero(c)) continue;
        bool negative = (c == minus_one) && i > 0;
        bool unit = (c == one || negative) && i > 0;
        if (first) {
            if (negative) os << "-";
        } else {
            os << (negative ? " - " : " + ");
        }
        first = false;
        if (i == 0)
            os << k.index(c);
        else {
            if (!unit) os << "[" << k.index(c) << "]*";
            os << "T";
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

// --- center arithmetic ---

CenterPoly make_center(const FieldCtx& k, std::vector<FFElem> coeffs) {
    for (const auto& c : coeffs)
        if (c.level != Level::base) throw Error("center coefficients must live at the base level");
    return CenterPoly{trim(k, std::move(coeffs))};
}

CenterPoly center_one_minus_t(const FieldCtx& k) {
    return CenterPoly{{k.one(Level::base), k.neg(k.one(Level::base))}};
}

CenterPoly c_add(const FieldCtx& k, const CenterPoly& a, const CenterPoly& b) {
    std::vector<FFElem> c(std::max(a.c.size(), b.c.size()), k.zero(Level::base));
    for (size_t i = 0; i < a.c.size(); ++i) c[i] = a.c[i];
    for (size_t i = 0; i < b.c.size(); ++i) c[i] = k.add(c[i], b.c[i]);
    return CenterPoly{trim(k, std::move(c))};
}

CenterPoly c_mul(const FieldCtx& k, const CenterPoly& a, const CenterPoly& b) {
    if (a.is_zero() || b.is_zero()) return CenterPoly{};
    std::vector<FFElem> c(a.c.size() + b.c.size() - 1, k.zero(Level::base));
    for (size_t i = 0; i < a.c.size(); ++i)
        for (size_t j = 0; j < b.c.size(); ++j) c[i + j] = k.add(c[i + j], k.mul(a.c[i], b.c[j]));
    return CenterPoly{trim(k, std::move(c))};
}

CenterPoly c_pow(const FieldCtx& k, const CenterPoly& a, int m) {
    CenterPoly r{{k.one(Level::base)}};
    for (int i = 0; i < m; ++i) r = c_mul(k, r, a);
    return r;
}

CenterPoly c_monic(const FieldCtx& k, const CenterPoly& a) {
    if (a.is_zero()) return a;
    FFElem inv = k.inv(a.c[a.deg()]);
    CenterPoly r = a;
    for (auto& x : r.c) x = k.mul(x, inv);
    return r;
}

std::pair<CenterPoly, CenterPoly> c_divmod(const FieldCtx& k, const CenterPoly& a, const CenterPoly& b) {
    if (b.is_zero()) throw Error("division by zero polynomial");
    CenterPoly r = a;
    std::vector<FFElem> q(a.c.size() > b.c.size() ? a.c.size() - b.c.size() + 1 : 1, k.zero(Level::base));
    FFElem lead_inv = k.inv(b.c[b.deg()]);
    while (r.deg() >= b.deg()) {
        int shift = r.deg() - b.deg();
        FFElem f = k.mul(r.c[r.deg()], lead_inv);
        q[shift] = k.add(q[shift], f);
        for (int i = 0; i <= b.deg(); ++i) r.c[shift + i] = k.sub(r.c[shift + i], k.mul(f, b.c[i]));
        r.c = trim(k, std::move(r.c));
    }
    return {CenterPoly{trim(k, std::move(q))}, r};
}

bool center_irreducible(const FieldCtx& k, const CenterPoly& f) {
    const int m = f.deg();
    if (m < 1) return false;
    CenterPoly g = c_monic(k, f);
    if (m == 1) return true;
    // trial division by every monic polynomial over F_q of degree 1..m/2
    for (int deg = 1; 2 * deg <= m; ++deg) {
        ff::u64 count = 1;
        for (int i = 0; i < deg; ++i) count *= k.q();
        for (ff::u64 idx = 0; idx < count; ++idx) {
            std::vector<FFElem> c(deg + 1, k.zero(Level::base));
            ff::u64 t = idx;
            for (int i = 0; i < deg; ++i) {
                c[i] = k.from_index(Level::base, t % k.q());
                t /= k.q();
            }
            c[deg] = k.one(Level::base);
            if (c_divmod(k, g, CenterPoly{c}).second.is_zero()) return false;
        }
    }
    return true;
}

FFElem c_eval_ext(const FieldCtx& k, const CenterPoly& f, const FFElem& theta) {
    FFElem acc = k.zero(Level::ext);
    for (int i = f.deg(); i >= 0; --i) acc = k.add(k.mul(acc, theta), k.embed(f.c[i], Level::ext));
    return acc;
}

SkewPoly center_to_skew(const FieldCtx& k, const CenterPoly& f) {
    if (f.is_zero()) return skew_zero();
    std::vector<FFElem> c(f.deg() * k.d() + 1, k.zero(Level::skew));
    for (int i = 0; i <= f.deg(); ++i) c[i * k.d()] = k.embed(f.c[i], Level::skew);
    return make_skew(k, std::move(c));
}

}  // namespace forge::skew
