#include "forge/ff.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

namespace forge::ff {

namespace {

int mod_pow_int(long long a, long long k, int p) {
    long long r = 1 % p;
    a %= p;
    if (a < 0) a += p;
    while (k > 0) {
        if (k & 1) r = r * a % p;
        a = a * a % p;
        k >>= 1;
    }
    return static_cast<int>(r);
}

int mod_inv_int(int a, int p) {
    if (a % p == 0) throw Error("division by zero in F_p");
    return mod_pow_int(a, p - 2, p);
}

bool is_prime(int p) {
    if (p < 2) return false;
    for (int i = 2; (long long)i * i <= p; ++i)
        if (p % i == 0) return false;
    return true;
}

// quotient discarded; needs g monic
PrimePoly poly_mod(PrimePoly a, const PrimePoly& g, int p) {
    const int dg = poly_degree(g);
    for (int i = static_cast<int>(a.size()) - 1; i >= dg; --i) {
        int c = a[i] % p;
        if (c == 0) continue;
        a[i] = 0;
        for (int j = 0; j < dg; ++j) a[i - dg + j] = ((a[i - dg + j] - c * g[j]) % p + p) % p;
    }
    a.resize(std::max(dg, 1), 0);
    return poly_trim(std::move(a));
}

bool poly_divides(const PrimePoly& g, const PrimePoly& f, int p) {
    return poly_mod(f, g, p).empty();
}

// solve M x = rhs over F_p (M column-major square); free variables set to 0
std::optional<std::vector<int>> solve_mod_p(std::vector<std::vector<int>> cols, std::vector<int> rhs, int p) {
    const int n = static_cast<int>(rhs.size());
    const int m = static_cast<int>(cols.size());
    std::vector<int> pivot_col_of_row(n, -1);
    int row = 0;
    for (int col = 0; col < m && row < n; ++col) {
        int pr = -1;
        for (int r = row; r < n; ++r)
            if (cols[col][r] % p != 0) {
                pr = r;
                break;
            }
        if (pr < 0) continue;
        for (int cc = 0; cc < m; ++cc) std::swap(cols[cc][pr], cols[cc][row]);
        std::swap(rhs[pr], rhs[row]);
        int inv = mod_inv_int(cols[col][row], p);
        for (int cc = 0; cc < m; ++cc) cols[cc][row] = cols[cc][row] * inv % p;
        rhs[row] = rhs[row] * inv % p;
        for (int r = 0; r < n; ++r) {
            if (r == row) continue;
            int f = cols[col][r] % p;
            if (f == 0) continue;
            for (int cc = 0; cc < m; ++cc) cols[cc][r] = ((cols[cc][r] - f * cols[cc][row]) % p + p) % p;
            rhs[r] = ((rhs[r] - f * rhs[row]) % p + p) % p;
        }
        pivot_col_of_row[row] = col;
        ++row;
    }
    for (int r = row; r < n; ++r)
        if (rhs[r] % p != 0) return std::nullopt;
    std::vector<int> x(m, 0);
    for (int r = 0; r < row; ++r) x[pivot_col_of_row[r]] = ((rhs[r] % p) + p) % p;
    return x;
}

std::vector<std::vector<int>> invert_mod_p(const std::vector<std::vector<int>>& cols, int p) {
    const int n = static_cast<int>(cols.size());
    // augmented [M | I], column-major; row-reduce
    std::vector<std::vector<int>> a(cols);
    std::vector<std::vector<int>> inv(n, std::vector<int>(n, 0));
    for (int i = 0; i < n; ++i) inv[i][i] = 1;
    for (int col = 0; col < n; ++col) {
        int pr = -1;
        for (int r = col; r < n; ++r)
            if (a[col][r] % p != 0) {
                pr = r;
                break;
            }
        if (pr < 0) throw InternalError("singular coordinate matrix");
        if (pr != col)
            for (int cc = 0; cc < n; ++cc) {
                std::swap(a[cc][pr], a[cc][col]);
                std::swap(inv[cc][pr], inv[cc][col]);
            }
        int iv = mod_inv_int(a[col][col], p);
        for (int cc = 0; cc < n; ++cc) {
            a[cc][col] = a[cc][col] * iv % p;
            inv[cc][col] = inv[cc][col] * iv % p;
        }
        for (int r = 0; r < n; ++r) {
            if (r == col) continue;
            int f = a[col][r] % p;
            if (f == 0) continue;
            for (int cc = 0; cc < n; ++cc) {
                a[cc][r] = ((a[cc][r] - f * a[cc][col]) % p + p) % p;
                inv[cc][r] = ((inv[cc][r] - f * inv[cc][col]) % p + p) % p;
            }
        }
    }
    return inv;
}

std::filesystem::path cache_file(int p, int degree) {
    const char* dir = std::getenv("FORGE_CACHE_DIR");
    if (!dir || !*dir) return {};
    return std::filesystem::path(dir) / ("irr_p" + std::to_string(p) + "_deg" + std::to_string(degree) + ".txt");
}

}  // namespace

int poly_degree(const PrimePoly& f) {
    for (int i = static_cast<int>(f.size()) - 1; i >= 0; --i)
        if (f[i] != 0) return i;
    return -1;
}

PrimePoly poly_trim(PrimePoly f) {
    f.resize(poly_degree(f) + 1);
    return f;
}

bool is_irreducible(int p, const PrimePoly& f) {
    const int m = poly_degree(f);
    if (m < 1) return false;
    if (f[m] != 1) return false;
    if (m == 1) return true;
    // trial division by every monic polynomial of degree 1..m/2
    for (int k = 1; 2 * k <= m; ++k) {
        u64 count = 1;
        for (int i = 0; i < k; ++i) count *= static_cast<u64>(p);
        for (u64 idx = 0; idx < count; ++idx) {
            PrimePoly g(k + 1, 0);
            u64 t = idx;
            for (int i = 0; i < k; ++i) {
                g[i] = static_cast<int>(t % p);
                t /= p;
            }
            g[k] = 1;
            if (poly_divides(g, f, p)) return false;
        }
    }
    return true;
}

PrimePoly find_irreducible(int p, int degree) {
    if (degree < 1) throw ConfigError("irreducible degree must be >= 1");
    auto cache = cache_file(p, degree);
    if (!cache.empty() && std::filesystem::exists(cache)) {
        std::ifstream in(cache);
        PrimePoly f;
        int c;
        while (in >> c) f.push_back(c);
        if (poly_degree(f) == degree && f[degree] == 1 && is_irreducible(p, f)) return f;
        // stale or corrupt cache entry: fall through and rebuild
    }
    u64 count = 1;
    for (int i = 0; i < degree; ++i) count *= static_cast<u64>(p);
    PrimePoly found;
    for (u64 idx = 0; idx < count; ++idx) {
        PrimePoly f(degree + 1, 0);
        u64 t = idx;
        for (int i = 0; i < degree; ++i) {
            f[i] = static_cast<int>(t % p);
            t /= p;
        }
        f[degree] = 1;
        if (is_irreducible(p, f)) {
            found = f;
            break;
        }
    }
    internal_check(!found.empty(), "no irreducible polynomial found");
    if (!cache.empty()) {
        std::error_code ec;
        std::filesystem::create_directories(cache.parent_path(), ec);
        if (!ec) {
            std::ofstream out(cache);
            for (size_t i = 0; i < found.size(); ++i) out << found[i] << (i + 1 < found.size() ? " " : "\n");
        }
    }
    return found;
}

std::string prime_poly_to_string(const PrimePoly& f, char var) {
    const int m = poly_degree(f);
    if (m < 0) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = m; i >= 0; --i) {
        if (f[i] == 0) continue;
        if (!first) os << "+";
        first = false;
        if (i == 0)
            os << f[i];
        else
            os << f[i] << "*" << var << "^" << i;
    }
    return os.str();
}

FieldCtx FieldCtx::make(int p, int e, int d, int n) {
    if (!is_prime(p)) throw ConfigError("p must be prime");
    if (e < 1 || d < 2 || n < 1) throw ConfigError("require e >= 1, d >= 2, n >= 1");
    FieldCtx ctx;
    ctx.p_ = p;
    ctx.e_ = e;
    ctx.d_ = d;
    ctx.n_ = n;
    ctx.deg_[0] = e;
    ctx.deg_[1] = e * d;
    ctx.deg_[2] = e * d * n;
    for (int l = 0; l < 3; ++l) {
        u64 s = 1;
        for (int i = 0; i < ctx.deg_[l]; ++i) {
            s *= static_cast<u64>(p);
            if (s > (1u << 20)) throw CapError("field tower too large for exhaustive-scan arithmetic");
        }
        ctx.size_[l] = s;
    }
    ctx.q_ = ctx.size_[0];
    for (int l = 0; l < 3; ++l) {
        ctx.mod_[l] = find_irreducible(p, ctx.deg_[l]);
        internal_check(poly_degree(ctx.mod_[l]) == ctx.deg_[l] && ctx.mod_[l][ctx.deg_[l]] == 1 &&
                           is_irreducible(p, ctx.mod_[l]),
                       "modulus is not a monic irreducible of the requested degree");
    }

    auto find_root = [&](const PrimePoly& m, Level target) {
        std::vector<FFElem> coeffs;
        for (int c : m) coeffs.push_back(ctx.from_int(target, c));
        auto roots = ctx.poly_roots(coeffs, target);
        internal_check(!roots.empty(), "modulus has no root in the extension");
        return roots.front();
    };
    ctx.root_base_in_skew_ = find_root(ctx.mod_[0], Level::skew);
    ctx.root_skew_in_ext_ = find_root(ctx.mod_[1], Level::ext);

    for (u64 i = 0; i < ctx.size_[0]; ++i) {
        FFElem b = ctx.from_index(Level::base, i);
        FFElem im = ctx.embed(b, Level::skew);
        ctx.fq_copy_skew_.push_back(im);
        ctx.base_from_skew_index_.emplace(ctx.index(im), b);
    }
    std::sort(ctx.fq_copy_skew_.begin(), ctx.fq_copy_skew_.end(),
              [&](const FFElem& a, const FFElem& b) { return ctx.index(a) < ctx.index(b); });

    const int ed = ctx.deg_[1];
    ctx.coord_mat_.assign(ed, std::vector<int>(ed, 0));
    FFElem s_pow = ctx.one(Level::skew);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < e; ++j) {
            FFElem unit = ctx.zero(Level::base);
            unit.c[j] = 1;
            FFElem v = ctx.mul(ctx.embed(unit, Level::skew), s_pow);
            ctx.coord_mat_[i * e + j] = v.c;
        }
        s_pow = ctx.mul(s_pow, ctx.gen(Level::skew));
    }
    ctx.coord_mat_inv_ = invert_mod_p(ctx.coord_mat_, p);

    ctx.h90_mat_.assign(ed, std::vector<int>(ed, 0));
    for (int i = 0; i < ed; ++i) {
        FFElem bvec = ctx.zero(Level::skew);
        bvec.c[i] = 1;
        FFElem img = ctx.sub(bvec, ctx.frobenius_q(bvec, 1));
        ctx.h90_mat_[i] = img.c;
    }
    return ctx;
}

void FieldCtx::check_level(const FFElem& x, Level l, const char* who) const {
    if (x.level != l || static_cast<int>(x.c.size()) != degree(l))
        throw Error(std::string(who) + ": element is not at the expected tower level");
}

void FieldCtx::check_same(const FFElem& a, const FFElem& b, const char* who) const {
    if (a.level != b.level) throw Error(std::string(who) + ": mismatched field tags");
    check_level(a, a.level, who);
    check_level(b, b.level, who);
}

FFElem FieldCtx::zero(Level l) const { return FFElem{l, std::vector<int>(degree(l), 0)}; }

FFElem FieldCtx::one(Level l) const { return from_int(l, 1); }

FFElem FieldCtx::gen(Level l) const {
    FFElem g = zero(l);
    if (degree(l) == 1) {
        // the modulus is x itself: the generator is the residue of x, i.e. 0
        return g;
    }
    g.c[1] = 1;
    return g;
}

FFElem FieldCtx::from_int(Level l, long v) const {
    FFElem r = zero(l);
    long m = v % p_;
    if (m < 0) m += p_;
    r.c[0] = static_cast<int>(m);
    return r;
}

FFElem FieldCtx::from_index(Level l, u64 idx) const {
    if (idx >= size(l)) throw Error("element index out of range");
    FFElem r = zero(l);
    for (int i = 0; i < degree(l); ++i) {
        r.c[i] = static_cast<int>(idx % p_);
        idx /= p_;
    }
    return r;
}

u64 FieldCtx::index(const FFElem& x) const {
    u64 idx = 0;
    for (int i = static_cast<int>(x.c.size()) - 1; i >= 0; --i) idx = idx * p_ + static_cast<u64>(x.c[i]);
    return idx;
}

bool FieldCtx::is_zero(const FFElem& x) const {
    for (int c : x.c)
        if (c != 0) return false;
    return true;
}

FFElem FieldCtx::reduce(Level l, std::vector<int> raw) const {
    const PrimePoly& m = mod_[static_cast<int>(l)];
    const int dg = degree(l);
    for (int i = static_cast<int>(raw.size()) - 1; i >= dg; --i) {
        int c = raw[i] % p_;
        if (c != 0)
            for (int j = 0; j < dg; ++j) raw[i - dg + j] = ((raw[i - dg + j] - c * m[j]) % p_ + p_) % p_;
        raw[i] = 0;
    }
    raw.resize(dg);
    for (int& c : raw) c = ((c % p_) + p_) % p_;
    return FFElem{l, std::move(raw)};
}

FFElem FieldCtx::add(const FFElem& a, const FFElem& b) const {
    check_same(a, b, "add");
    FFElem r = a;
    for (size_t i = 0; i < r.c.size(); ++i) r.c[i] = (r.c[i] + b.c[i]) % p_;
    return r;
}

FFElem FieldCtx::sub(const FFElem& a, const FFElem& b) const {
    check_same(a, b, "sub");
    FFElem r = a;
    for (size_t i = 0; i < r.c.size(); ++i) r.c[i] = ((r.c[i] - b.c[i]) % p_ + p_) % p_;
    return r;
}

FFElem FieldCtx::neg(const FFElem& a) const {
    FFElem r = a;
    for (int& c : r.c) c = (p_ - c) % p_;
    return r;
}

FFElem FieldCtx::mul(const FFElem& a, const FFElem& b) const {
    check_same(a, b, "mul");
    std::vector<int> raw(a.c.size() + b.c.size(), 0);
    for (size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i] == 0) continue;
        for (size_t j = 0; j < b.c.size(); ++j) raw[i + j] = (raw[i + j] + a.c[i] * b.c[j]) % p_;
    }
    return reduce(a.level, std::move(raw));
}

FFElem FieldCtx::pow(const FFElem& a, u64 k) const {
    FFElem r = one(a.level);
    FFElem base = a;
    while (k > 0) {
        if (k & 1) r = mul(r, base);
        base = mul(base, base);
        k >>= 1;
    }
    return r;
}

FFElem FieldCtx::powi(const FFElem& a, long long k) const {
    if (k >= 0) return pow(a, static_cast<u64>(k));
    return pow(inv(a), static_cast<u64>(-k));
}

FFElem FieldCtx::inv(const FFElem& a) const {
    if (is_zero(a)) throw Error("division by zero");
    return pow(a, size(a.level) - 2);
}

FFElem FieldCtx::div(const FFElem& a, const FFElem& b) const {
    check_same(a, b, "div");
    return mul(a, inv(b));
}

FFElem FieldCtx::frobenius_q(const FFElem& x, int k) const {
    FFElem r = x;
    for (int i = 0; i < e_ * k; ++i) r = pow(r, static_cast<u64>(p_));
    return r;
}

FFElem FieldCtx::trace_to_base(const FFElem& y) const {
    check_level(y, Level::skew, "trace_to_base");
    FFElem acc = y, t = y;
    for (int i = 1; i < d_; ++i) {
        t = frobenius_q(t, 1);
        acc = add(acc, t);
    }
    internal_check(in_base_field(acc), "trace landed outside F_q");
    return project_to_base(acc);
}

FFElem FieldCtx::hilbert90_solve(const FFElem& beta) const {
    check_level(beta, Level::skew, "hilbert90_solve");
    if (!is_zero(trace_to_base(beta))) throw Error("no Hilbert-90 witness: trace is nonzero");
    auto sol = solve_mod_p(h90_mat_, beta.c, p_);
    internal_check(sol.has_value(), "trace-zero element with no Hilbert-90 solution");
    FFElem theta{Level::skew, *sol};
    // the solution set is theta + F_q; pick the smallest index
    FFElem best = theta;
    u64 best_idx = index(best);
    for (const FFElem& c : fq_copy_skew_) {
        FFElem cand = add(theta, c);
        u64 ci = index(cand);
        if (ci < best_idx) {
            best_idx = ci;
            best = cand;
        }
    }
    internal_check(sub(best, frobenius_q(best, 1)) == beta, "Hilbert-90 witness check failed");
    return best;
}

FFElem FieldCtx::embed(const FFElem& x, Level target) const {
    if (x.level == target) {
        check_level(x, target, "embed");
        return x;
    }
    if (x.level == Level::base && target == Level::ext)
        return embed(embed(x, Level::skew), Level::ext);
    const FFElem* root = nullptr;
    if (x.level == Level::base && target == Level::skew)
        root = &root_base_in_skew_;
    else if (x.level == Level::skew && target == Level::ext)
        root = &root_skew_in_ext_;
    else
        throw Error("embed: incompatible levels");
    check_level(x, x.level, "embed");
    FFElem acc = zero(target);
    for (int i = static_cast<int>(x.c.size()) - 1; i >= 0; --i) {
        acc = mul(acc, *root);
        acc = add(acc, from_int(target, x.c[i]));
    }
    return acc;
}

bool FieldCtx::in_base_field(const FFElem& x) const { return frobenius_q(x, 1) == x; }

FFElem FieldCtx::project_to_base(const FFElem& x) const {
    check_level(x, Level::skew, "project_to_base");
    auto it = base_from_skew_index_.find(index(x));
    if (it == base_from_skew_index_.end()) throw Error("element is not in the F_q copy");
    return it->second;
}

std::vector<FFElem> FieldCtx::to_coords(const FFElem& y) const {
    check_level(y, Level::skew, "to_coords");
    const int ed = deg_[1];
    std::vector<int> w(ed, 0);
    for (int r = 0; r < ed; ++r) {
        long long acc = 0;
        for (int cidx = 0; cidx < ed; ++cidx) acc += static_cast<long long>(coord_mat_inv_[cidx][r]) * y.c[cidx];
        w[r] = static_cast<int>(acc % p_);
    }
    std::vector<FFElem> coords(d_);
    for (int i = 0; i < d_; ++i) {
        FFElem b = zero(Level::base);
        for (int j = 0; j < e_; ++j) b.c[j] = w[i * e_ + j];
        coords[i] = b;
    }
    return coords;
}

FFElem FieldCtx::from_coords(const std::vector<FFElem>& coords) const {
    if (static_cast<int>(coords.size()) != d_) throw Error("from_coords: expected d coordinates");
    FFElem acc = zero(Level::skew);
    FFElem s_pow = one(Level::skew);
    for (int i = 0; i < d_; ++i) {
        check_level(coords[i], Level::base, "from_coords");
        acc = add(acc, mul(embed(coords[i], Level::skew), s_pow));
        if (i + 1 < d_) s_pow = mul(s_pow, gen(Level::skew));
    }
    return acc;
}

std::vector<FFElem> FieldCtx::poly_roots(const std::vector<FFElem>& g, Level l) const {
    bool all_zero = true;
    for (const auto& c : g) {
        check_level(c, l, "poly_roots");
        if (!is_zero(c)) all_zero = false;
    }
    if (g.empty() || all_zero) throw Error("poly_roots: zero polynomial");
    std::vector<FFElem> roots;
    for (u64 idx = 0; idx < size(l); ++idx) {
        FFElem x = from_index(l, idx);
        FFElem acc = zero(l);
        for (int i = static_cast<int>(g.size()) - 1; i >= 0; --i) acc = add(mul(acc, x), g[i]);
        if (is_zero(acc)) roots.push_back(x);
    }
    return roots;
}

}  // namespace forge::ff
