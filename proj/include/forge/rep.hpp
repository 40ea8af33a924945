#pragma once

#include <string>
#include <vector>

#include "forge/skew.hpp"

namespace forge::rep {

using ff::FFElem;
using ff::FieldCtx;

// Admissible modulus: monic irreducible f over F_q of degree d*n, different
// from t and from every associate of 1 - t, together with its designated root
// and the d-th power class structure of F_{q^{dn}}^x.
struct ModulusF {
    skew::CenterPoly f;
    FFElem theta;                  // smallest-index root of f at the ext level
    ff::u64 unit_order = 0;        // q^{dn} - 1
    int class_group = 1;           // g = gcd(d, q^{dn} - 1)
    std::vector<FFElem> class_reps;  // the g cosets' markers A^{(Q-1)/g}, indexed by code
};

ModulusF make_modulus(const FieldCtx& k, const skew::CenterPoly& f);
// smallest admissible monic irreducible of degree d*n, scanning in index order
ModulusF auto_modulus(const FieldCtx& k);

struct RawMatrix {
    int dim = 0;
    std::vector<FFElem> m;  // row-major, ext level
};

// Projective canonical form: first nonzero entry in row-major order is 1.
struct ProjMatrix {
    int dim = 0;
    std::vector<FFElem> m;
    bool operator==(const ProjMatrix&) const = default;
};

RawMatrix mat_mul(const FieldCtx& k, const RawMatrix& a, const RawMatrix& b);
FFElem mat_det(const FieldCtx& k, const RawMatrix& a);
ProjMatrix proj_canonicalize(const FieldCtx& k, const RawMatrix& a);
ProjMatrix pm_identity(const FieldCtx& k);
ProjMatrix pm_mul(const FieldCtx& k, const ProjMatrix& a, const ProjMatrix& b);

// The matrix image of a skew polynomial: the regular-representation lift with
// t evaluated at theta. rep_matrix canonicalizes; both throw
// Error("not a unit modulo f") when the lift is singular.
RawMatrix rep_matrix_raw(const FieldCtx& k, const ModulusF& m, const skew::SkewPoly& a);
ProjMatrix rep_matrix(const FieldCtx& k, const ModulusF& m, const skew::SkewPoly& a);

// Determinant of the uncanonicalized lift; asserted equal to the reduced norm
// evaluated at theta.
FFElem lift_determinant(const FieldCtx& k, const ModulusF& m, const skew::SkewPoly& a);

// Discrete logarithm of A modulo d-th powers: 0..g-1; 0 means "is a d-th power".
int class_code(const FieldCtx& k, const ModulusF& m, const FFElem& a);
// +1 iff A is a d-th power in F_{q^{dn}}^x, else -1.
int residue_symbol(const FieldCtx& k, const ModulusF& m, const FFElem& a);

enum class GroupKind { PSL, PGL };

struct Classification {
    GroupKind kind = GroupKind::PSL;
    int symbol = 0;      // residue symbol of 1 - theta
    bool verified = true;  // false when q is even (odd-q hypothesis violated)
    bool order_exact = false;
    ff::u64 order = 0;       // valid when order_exact
    long double order_approx = 0;
};

Classification classify_image(const FieldCtx& k, const ModulusF& m);

// rows separated by ';', entries as element indices separated by ','
std::string matrix_to_string(const FieldCtx& k, const ProjMatrix& a);
ProjMatrix matrix_from_string(const FieldCtx& k, int dim, const std::string& text);

}  // namespace forge::rep
