#include "forge/rep.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace forge::rep {

using ff::Level;
using skew::CenterPoly;
using skew::SkewPoly;

namespace {

FFElem tp_eval_ext(const FieldCtx& k, const skew::TPoly& tp, const FFElem& theta) {
    FFElem acc = k.zero(Level::ext);
    for (int i = static_cast<int>(tp.c.size()) - 1; i >= 0; --i)
        acc = k.add(k.mul(acc, theta), k.embed(tp.c[i], Level::ext));
    return acc;
}

std::vector<ff::u64> prime_factors(ff::u64 n) {
    std::vector<ff::u64> out;
    for (ff::u64 p = 2; p * p <= n; ++p)
        if (n % p == 0) {
            out.push_back(p);
            while (n % p == 0) n /= p;
        }
    if (n > 1) out.push_back(n);
    return out;
}

// smallest-index generator of the cyclic group F_{q^{dn}}^x
FFElem find_primitive(const FieldCtx& k) {
    const ff::u64 order = k.size(Level::ext) - 1;
    auto primes = prime_factors(order);
    for (ff::u64 idx = 1; idx < k.size(Level::ext); ++idx) {
        FFElem cand = k.from_index(Level::ext, idx);
        bool ok = true;
        for (ff::u64 r : primes)
            if (k.pow(cand, order / r) == k.one(Level::ext)) {
                ok = false;
                break;
            }
        if (ok) return cand;
    }
    throw InternalError("no primitive element found");
}

}  // namespace

ModulusF make_modulus(const FieldCtx& k, const CenterPoly& f_in) {
    if (f_in.is_zero() || f_in.deg() < 1) throw ConfigError("modulus must be a nonconstant polynomial");
    CenterPoly f = skew::c_monic(k, f_in);
    if (f.deg() != k.d() * k.n())
        throw ConfigError("modulus degree must be d*n for the configured tower (got degree " +
                          std::to_string(f.deg()) + ")");
    if (!skew::center_irreducible(k, f)) throw ConfigError("modulus is not irreducible over F_q");
    // exclude t and every associate of 1 - t
    if (f.deg() == 1) {
        if (k.is_zero(f.c[0])) throw ConfigError("modulus t is not admissible");
        if (f == skew::c_monic(k, skew::center_one_minus_t(k)))
            throw ConfigError("modulus 1 - t is not admissible");
    }

    ModulusF m;
    m.f = f;
    std::vector<FFElem> coeffs;
    for (const auto& c : f.c) coeffs.push_back(k.embed(c, Level::ext));
    auto roots = k.poly_roots(coeffs, Level::ext);
    internal_check(static_cast<int>(roots.size()) == f.deg(), "irreducible modulus must split in F_{q^{dn}}");
    m.theta = roots.front();
    internal_check(k.is_zero(skew::c_eval_ext(k, f, m.theta)), "designated root does not annihilate f");

    m.unit_order = k.size(Level::ext) - 1;
    m.class_group = static_cast<int>(std::gcd<ff::u64>(k.d(), m.unit_order));
    FFElem omega = find_primitive(k);
    FFElem step = k.pow(omega, m.unit_order / m.class_group);
    FFElem acc = k.one(Level::ext);
    for (int j = 0; j < m.class_group; ++j) {
        m.class_reps.push_back(acc);
        acc = k.mul(acc, step);
    }
    return m;
}

ModulusF auto_modulus(const FieldCtx& k) {
    const int deg = k.d() * k.n();
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
        CenterPoly f{c};
        if (!skew::center_irreducible(k, f)) continue;
        if (deg == 1) {
            if (k.is_zero(f.c[0])) continue;
            if (f == skew::c_monic(k, skew::center_one_minus_t(k))) continue;
        }
        return make_modulus(k, f);
    }
    throw ConfigError("no admissible modulus of degree d*n exists");
}

RawMatrix mat_mul(const FieldCtx& k, const RawMatrix& a, const RawMatrix& b) {
    const int d = a.dim;
    RawMatrix r{d, std::vector<FFElem>(d * d, k.zero(Level::ext))};
    for (int i = 0; i < d; ++i)
        for (int l = 0; l < d; ++l) {
            const FFElem& ail = a.m[i * d + l];
            if (k.is_zero(ail)) continue;
            for (int j = 0; j < d; ++j)
                r.m[i * d + j] = k.add(r.m[i * d + j], k.mul(ail, b.m[l * d + j]));
        }
    return r;
}

FFElem mat_det(const FieldCtx& k, const RawMatrix& a) {
    const int d = a.dim;
    std::vector<FFElem> m = a.m;
    FFElem det = k.one(Level::ext);
    for (int col = 0; col < d; ++col) {
        int pivot = -1;
        for (int r = col; r < d; ++r)
            if (!k.is_zero(m[r * d + col])) {
                pivot = r;
                break;
            }
        if (pivot < 0) return k.zero(Level::ext);
        if (pivot != col) {
            for (int j = 0; j < d; ++j) std::swap(m[pivot * d + j], m[col * d + j]);
            det = k.neg(det);
        }
        det = k.mul(det, m[col * d + col]);
        FFElem inv = k.inv(m[col * d + col]);
        for (int r = col + 1; r < d; ++r) {
            FFElem f = k.mul(m[r * d + col], inv);
            if (k.is_zero(f)) continue;
            for (int j = col; j < d; ++j) m[r * d + j] = k.sub(m[r * d + j], k.mul(f, m[col * d + j]));
        }
    }
    return det;
}

ProjMatrix proj_canonicalize(const FieldCtx& k, const RawMatrix& a) {
    if (k.is_zero(mat_det(k, a))) throw Error("projective canonicalization of a singular matrix");
    int first = -1;
    for (size_t i = 0; i < a.m.size(); ++i)
        if (!k.is_zero(a.m[i])) {
            first = static_cast<int>(i);
            break;
        }
    FFElem scale = k.inv(a.m[first]);
    ProjMatrix r{a.dim, a.m};
    for (auto& x : r.m) x = k.mul(scale, x);
    return r;
}

ProjMatrix pm_identity(const FieldCtx& k) {
    const int d = k.d();
    ProjMatrix r{d, std::vector<FFElem>(d * d, k.zero(Level::ext))};
    for (int i = 0; i < d; ++i) r.m[i * d + i] = k.one(Level::ext);
    return r;
}

ProjMatrix pm_mul(const FieldCtx& k, const ProjMatrix& a, const ProjMatrix& b) {
    RawMatrix ra{a.dim, a.m}, rb{b.dim, b.m};
    return proj_canonicalize(k, mat_mul(k, ra, rb));
}

RawMatrix rep_matrix_raw(const FieldCtx& k, const ModulusF& m, const SkewPoly& a) {
    const int d = k.d();
    auto tmat = skew::regular_rep(k, a);
    RawMatrix r{d, std::vector<FFElem>(d * d, k.zero(Level::ext))};
    for (int i = 0; i < d * d; ++i) r.m[i] = tp_eval_ext(k, tmat[i], m.theta);
    return r;
}

ProjMatrix rep_matrix(const FieldCtx& k, const ModulusF& m, const SkewPoly& a) {
    RawMatrix raw = rep_matrix_raw(k, m, a);
    if (k.is_zero(mat_det(k, raw))) throw Error("not a unit modulo f");
    return proj_canonicalize(k, raw);
}

FFElem lift_determinant(const FieldCtx& k, const ModulusF& m, const SkewPoly& a) {
    FFElem det = mat_det(k, rep_matrix_raw(k, m, a));
    FFElem via_norm = skew::c_eval_ext(k, skew::reduced_norm(k, a), m.theta);
    internal_check(det == via_norm, "lift determinant disagrees with the reduced norm at theta");
    return det;
}

int class_code(const FieldCtx& k, const ModulusF& m, const FFElem& a) {
    if (a.level != Level::ext) throw Error("class_code expects an ext-level element");
    if (k.is_zero(a)) throw Error("class_code of zero");
    FFElem marker = k.pow(a, m.unit_order / m.class_group);
    for (int j = 0; j < m.class_group; ++j)
        if (m.class_reps[j] == marker) return j;
    throw InternalError("marker not a power of the class step");
}

int residue_symbol(const FieldCtx& k, const ModulusF& m, const FFElem& a) {
    return class_code(k, m, a) == 0 ? 1 : -1;
}

Classification classify_image(const FieldCtx& k, const ModulusF& m) {
    Classification c;
    FFElem one_minus_theta = k.sub(k.one(Level::ext), m.theta);
    internal_check(!k.is_zero(one_minus_theta), "theta = 1 slipped past admissibility checks");
    c.symbol = residue_symbol(k, m, one_minus_theta);
    c.kind = c.symbol == 1 ? GroupKind::PSL : GroupKind::PGL;
    c.verified = (k.q() % 2) == 1;

    // |GL(d,Q)| = prod (Q^d - Q^i); PGL divides by Q-1, PSL further by gcd(d,Q-1)
    const int d = k.d();
    const long double Q = static_cast<long double>(k.size(Level::ext));
    long double qd = 1;
    for (int i = 0; i < d; ++i) qd *= Q;
    long double approx = 1;
    {
        long double qi = 1;
        for (int i = 0; i < d; ++i) {
            approx *= (qd - qi);
            qi *= Q;
        }
    }
    approx /= (Q - 1);
    if (c.kind == GroupKind::PSL) approx /= m.class_group;
    c.order_approx = approx;

    // exact order when it fits
    unsigned __int128 acc = 1;
    bool exact = true;
    unsigned __int128 Qi = 1, Qd = 1;
    for (int i = 0; i < d; ++i) {
        Qd *= k.size(Level::ext);
        if (Qd > (unsigned __int128)1 << 100) {
            exact = false;
            break;
        }
    }
    if (exact) {
        for (int i = 0; i < d && exact; ++i) {
            unsigned __int128 term = Qd - Qi;
            if (acc > ~(unsigned __int128)0 / term)
                exact = false;
            else
                acc *= term;
            Qi *= k.size(Level::ext);
        }
    }
    if (exact) {
        acc /= (k.size(Level::ext) - 1);
        if (c.kind == GroupKind::PSL) acc /= m.class_group;
        if (acc <= (unsigned __int128)UINT64_MAX) {
            c.order_exact = true;
            c.order = static_cast<ff::u64>(acc);
        }
    }
    return c;
}

std::string matrix_to_string(const FieldCtx& k, const ProjMatrix& a) {
    std::ostringstream os;
    for (int r = 0; r < a.dim; ++r) {
        if (r) os << ";";
        for (int c = 0; c < a.dim; ++c) {
            if (c) os << ",";
            os << k.index(a.m[r * a.dim + c]);
        }
    }
    return os.str();
}

ProjMatrix matrix_from_string(const FieldCtx& k, int dim, const std::string& text) {
    ProjMatrix r{dim, {}};
    std::stringstream rows(text);
    std::string row;
    while (std::getline(rows, row, ';')) {
        std::stringstream entries(row);
        std::string e;
        while (std::getline(entries, e, ',')) r.m.push_back(k.from_index(Level::ext, std::stoull(e)));
    }
    if (static_cast<int>(r.m.size()) != dim * dim) throw ConfigError("matrix string has the wrong shape");
    return r;
}

}  // namespace forge::rep
