#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "forge/error.hpp"

namespace forge::ff {

using u64 = std::uint64_t;

// Dense polynomial over the prime field F_p; c[i] is the coefficient of x^i.
using PrimePoly = std::vector<int>;

int poly_degree(const PrimePoly& f);
PrimePoly poly_trim(PrimePoly f);
bool is_irreducible(int p, const PrimePoly& f);

// Lexicographically smallest monic irreducible of the given degree over F_p,
// scanning the non-leading coefficient tuples (c_0, ..., c_{deg-1}) in index
// order (index = sum c_i p^i). Results are memoized under FORGE_CACHE_DIR when
// that variable is set.
PrimePoly find_irreducible(int p, int degree);

std::string prime_poly_to_string(const PrimePoly& f, char var = 't');

// Tower levels: F_q (deg e over F_p), F_{q^d} (deg e*d), F_{q^{dn}} (deg e*d*n).
enum class Level : int { base = 0, skew = 1, ext = 2 };

struct FFElem {
    Level level{Level::base};
    std::vector<int> c;  // length = field degree over F_p, entries in [0, p)

    bool operator==(const FFElem&) const = default;
};

// Exact arithmetic in a fixed tower F_p < F_q < F_{q^d} < F_{q^{dn}}.
//
// Every level is represented directly over F_p by the lexicographically
// smallest monic irreducible modulus of its degree, so two contexts with the
// same (p, e, d, n) are bit-identical. F_q membership at a higher level is
// decided by the x^q == x test; Base is the structural home of F_q values.
// All member functions are const and the context is safe to share across
// threads.
class FieldCtx {
  public:
    static FieldCtx make(int p, int e, int d, int n);

    int p() const { return p_; }
    int e() const { return e_; }
    int d() const { return d_; }
    int n() const { return n_; }
    u64 q() const { return q_; }

    int degree(Level l) const { return deg_[static_cast<int>(l)]; }
    u64 size(Level l) const { return size_[static_cast<int>(l)]; }
    const PrimePoly& modulus(Level l) const { return mod_[static_cast<int>(l)]; }

    FFElem zero(Level l) const;
    FFElem one(Level l) const;
    // Residue class of x, the canonical generator of the level over F_p.
    FFElem gen(Level l) const;
    FFElem from_int(Level l, long v) const;  // image of an integer (prime subfield)
    FFElem from_index(Level l, u64 idx) const;
    u64 index(const FFElem& x) const;

    bool is_zero(const FFElem& x) const;

    FFElem add(const FFElem& a, const FFElem& b) const;
    FFElem sub(const FFElem& a, const FFElem& b) const;
    FFElem neg(const FFElem& a) const;
    FFElem mul(const FFElem& a, const FFElem& b) const;
    FFElem inv(const FFElem& a) const;
    FFElem div(const FFElem& a, const FFElem& b) const;
    FFElem pow(const FFElem& a, u64 k) const;
    // a^k for possibly negative k (a must be nonzero when k < 0)
    FFElem powi(const FFElem& a, long long k) const;

    // x^(q^k), the k-fold q-power Frobenius.
    FFElem frobenius_q(const FFElem& x, int k) const;

    // Trace of F_{q^d} over F_q: sum of y^(q^i), i = 0..d-1; returned at Base.
    FFElem trace_to_base(const FFElem& y) const;

    // Smallest-index theta with theta - theta^q = beta (beta in F_{q^d} of
    // trace zero). Throws Error("no Hilbert-90 witness") on nonzero trace.
    FFElem hilbert90_solve(const FFElem& beta) const;

    // Fixed tower embedding: the generator of the source level maps to the
    // smallest-index root of the source modulus in the target level
    // (base->ext goes through skew). Ring homomorphism fixing F_p.
    FFElem embed(const FFElem& x, Level target) const;

    // x^q == x at the element's own level.
    bool in_base_field(const FFElem& x) const;

    // Inverse of embed on the F_q copy inside the skew level.
    FFElem project_to_base(const FFElem& x) const;

    // Coordinates of y (skew level) w.r.t. the F_q-basis {1, s, ..., s^{d-1}},
    // s = gen(skew); entries live at Base. from_coords is the inverse.
    std::vector<FFElem> to_coords(const FFElem& y) const;
    FFElem from_coords(const std::vector<FFElem>& coords) const;

    // All roots in the given level of the polynomial sum g[i]*X^i (g at the
    // same level), sorted by index. Exhaustive scan.
    std::vector<FFElem> poly_roots(const std::vector<FFElem>& g, Level l) const;

    // Elements of the F_q copy inside the skew level, sorted by index.
    const std::vector<FFElem>& base_copy_in_skew() const { return fq_copy_skew_; }

  private:
    FieldCtx() = default;

    void check_level(const FFElem& x, Level l, const char* who) const;
    void check_same(const FFElem& a, const FFElem& b, const char* who) const;
    FFElem reduce(Level l, std::vector<int> raw) const;

    int p_ = 0, e_ = 0, d_ = 0, n_ = 0;
    u64 q_ = 0;
    int deg_[3] = {0, 0, 0};
    u64 size_[3] = {0, 0, 0};
    PrimePoly mod_[3];

    // tower plumbing built once in make()
    FFElem root_base_in_skew_;  // image of gen(base) in skew
    FFElem root_skew_in_ext_;   // image of gen(skew) in ext
    std::vector<FFElem> fq_copy_skew_;
    std::unordered_map<u64, FFElem> base_from_skew_index_;
    // column-major matrix over F_p of (coords over F_q basis) -> skew coords,
    // and its inverse; both (e*d) x (e*d)
    std::vector<std::vector<int>> coord_mat_, coord_mat_inv_;
    // matrix of (id - Frobenius_q) on the skew level, for Hilbert 90
    std::vector<std::vector<int>> h90_mat_;
};

}  // namespace forge::ff
