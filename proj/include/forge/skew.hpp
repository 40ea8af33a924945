#pragma once

#include <string>
#include <utility>
#include <vector>

#include "forge/ff.hpp"

namespace forge::skew {

using ff::FFElem;
using ff::FieldCtx;
using ff::Level;

// Skew polynomial over F_{q^d}: c[i] is the coefficient of T^i, where
// T * lambda = lambda^q * T. Trailing zeros are trimmed; zero is the empty list.
struct SkewPoly {
    std::vector<FFElem> c;

    int deg() const { return static_cast<int>(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }
    bool operator==(const SkewPoly&) const = default;
};

// Polynomial over F_q in the central variable t = T^d.
struct CenterPoly {
    std::vector<FFElem> c;  // base-level coefficients

    int deg() const { return static_cast<int>(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }
    bool operator==(const CenterPoly&) const = default;
};

// F_q-subspace of F_{q^d}, held as a reduced row echelon basis with respect to
// the fixed F_q-basis {1, s, ..., s^{d-1}} of F_{q^d}. The echelon form is the
// canonical representative.
struct Subspace {
    int dim = 0;
    std::vector<std::vector<FFElem>> rows;  // dim rows of d base-level entries

    bool operator==(const Subspace&) const = default;
};

struct Flag {
    std::vector<Subspace> steps;  // strictly increasing
};

SkewPoly make_skew(const FieldCtx& k, std::vector<FFElem> coeffs);
SkewPoly skew_zero();
SkewPoly skew_one(const FieldCtx& k);
SkewPoly tau_power(const FieldCtx& k, int m);
SkewPoly one_minus_t(const FieldCtx& k);  // 1 - T^d

SkewPoly add(const FieldCtx& k, const SkewPoly& a, const SkewPoly& b);
SkewPoly sub(const FieldCtx& k, const SkewPoly& a, const SkewPoly& b);
SkewPoly neg(const FieldCtx& k, const SkewPoly& a);
SkewPoly mul(const FieldCtx& k, const SkewPoly& a, const SkewPoly& b);
SkewPoly left_scale(const FieldCtx& k, const FFElem& c, const SkewPoly& a);

// a = quotient * b + remainder, deg remainder < deg b
std::pair<SkewPoly, SkewPoly> right_divmod(const FieldCtx& k, const SkewPoly& a, const SkewPoly& b);
// a = b * quotient + remainder
std::pair<SkewPoly, SkewPoly> left_divmod(const FieldCtx& k, const SkewPoly& a, const SkewPoly& b);

// monic generator of the left ideal R*a + R*b
SkewPoly left_gcd(const FieldCtx& k, const SkewPoly& a, const SkewPoly& b);

SkewPoly monic(const FieldCtx& k, const SkewPoly& a);
SkewPoly normalize_const_one(const FieldCtx& k, const SkewPoly& a);

// --- the central representation shared with the matrix image ---

// Polynomial in t with F_{q^d} coefficients.
struct TPoly {
    std::vector<FFElem> c;
    bool is_zero() const { return c.empty(); }
};

// Right-regular representation of a on the basis {1, T, ..., T^{d-1}} over
// F_{q^d}[t]: entry (r, c) = t^{[c<r]} * sigma^r(alpha_{(c-r) mod d}) where
// a = sum alpha_i(t) T^i. Row-major d x d.
std::vector<TPoly> regular_rep(const FieldCtx& k, const SkewPoly& a);

TPoly tp_mul(const FieldCtx& k, const TPoly& a, const TPoly& b);
TPoly tp_add(const FieldCtx& k, const TPoly& a, const TPoly& b);
TPoly tp_sub(const FieldCtx& k, const TPoly& a, const TPoly& b);
TPoly tp_det(const FieldCtx& k, const std::vector<TPoly>& mat, int dim);

// Determinant of the regular representation; coefficients are asserted to lie
// in F_q. rn(0) = 0, rn(a*b) = rn(a)*rn(b).
CenterPoly reduced_norm(const FieldCtx& k, const SkewPoly& a);

// --- additive polynomial machinery ---

// phi_a(x) = sum a_i x^(q^i); x may live at the skew or ext level.
FFElem phi_eval(const FieldCtx& k, const SkewPoly& a, const FFElem& x);

// {x in F_{q^d} : phi_a(x) = 0} as an echelon subspace.
Subspace phi_kernel(const FieldCtx& k, const SkewPoly& a);

// Unique monic skew polynomial of degree dim(W) with phi-kernel W, computed by
// expanding prod_{v in W} (X - v) and reading off the q-power coefficients.
SkewPoly subspace_poly(const FieldCtx& k, const Subspace& w);

// Constant-term-one divisor of 1 - t with phi-kernel W (subspace_poly rescaled).
SkewPoly divisor_for_subspace(const FieldCtx& k, const Subspace& w);

// Factors of 1 - t along a flag ending at the full space: the product of the
// returned constant-term-one factors equals 1 - t exactly, and the kernel of
// the trailing j factors is the j-th flag member.
std::vector<SkewPoly> flag_factorization(const FieldCtx& k, const Flag& flag);

struct LinearFactorization {
    // x_d = 1 first, then x_{d-1}, ..., x_1
    std::vector<FFElem> xs;
    // (1 - T), (1 - x_{d-1}^{1-q} T), ..., (1 - x_1^{1-q} T); product in this
    // order equals 1 - T^d exactly
    std::vector<SkewPoly> factors;
    // kernel bases of the partial products, level d down to 1
    std::vector<std::vector<FFElem>> kernel_chain;
};

// Inductive tau-linear factorization of 1 - t with unit constant terms. Ties
// are broken by smallest element index.
LinearFactorization linear_factorization(const FieldCtx& k);

// --- subspace linear algebra over F_q ---

Subspace subspace_zero(const FieldCtx& k);
Subspace subspace_full(const FieldCtx& k);
Subspace subspace_from_vectors(const FieldCtx& k, const std::vector<FFElem>& gens_skew);
Subspace subspace_from_rows(const FieldCtx& k, std::vector<std::vector<FFElem>> rows);
bool subspace_contains(const FieldCtx& k, const Subspace& big, const Subspace& small);
std::vector<FFElem> subspace_elements(const FieldCtx& k, const Subspace& w);  // all q^dim members
bool subspace_lex_less(const FieldCtx& k, const Subspace& a, const Subspace& b);

// --- text encodings ---

// "a_k*T^k+...+a_0" with coefficients as element indices; zero is "0"
std::string to_string(const FieldCtx& k, const SkewPoly& a);
std::string to_string(const FieldCtx& k, const CenterPoly& f);
SkewPoly parse_skew(const FieldCtx& k, const std::string& text);
CenterPoly parse_center(const FieldCtx& k, const std::string& text);
// display form with +-1 coefficients folded into signs, e.g. "(1 - T)"
std::string pretty(const FieldCtx& k, const SkewPoly& a);

// --- center polynomial arithmetic (over F_q, base level) ---

CenterPoly make_center(const FieldCtx& k, std::vector<FFElem> coeffs);
CenterPoly center_one_minus_t(const FieldCtx& k);
CenterPoly c_add(const FieldCtx& k, const CenterPoly& a, const CenterPoly& b);
CenterPoly c_mul(const FieldCtx& k, const CenterPoly& a, const CenterPoly& b);
CenterPoly c_pow(const FieldCtx& k, const CenterPoly& a, int m);
CenterPoly c_monic(const FieldCtx& k, const CenterPoly& a);
std::pair<CenterPoly, CenterPoly> c_divmod(const FieldCtx& k, const CenterPoly& a, const CenterPoly& b);
bool center_irreducible(const FieldCtx& k, const CenterPoly& f);
// evaluate at a point of the ext level (coefficients embedded)
FFElem c_eval_ext(const FieldCtx& k, const CenterPoly& f, const FFElem& theta);
// embed into the skew ring via t = T^d
SkewPoly center_to_skew(const FieldCtx& k, const CenterPoly& f);

}  // namespace forge::skew
