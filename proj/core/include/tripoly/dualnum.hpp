#pragma once

#include "tripoly/trimonoid.hpp"

namespace tripoly {

/// A one-variable polynomial over the dual-number extension R[a1..an],
/// a_i a_j = 0, held componentwise: the polynomial is g0 + sum g_i a_i with
/// each component a one-variable polynomial over the base ring. The
/// representation is unique.
struct DualPoly {
    RingPtr base;
    int n = 0;
    std::vector<MultiPoly> comps;  // g0, g1, ..., gn

    static DualPoly make(RingPtr base, int n, std::vector<MultiPoly> comps);
    const MultiPoly& g0() const { return comps[0]; }

    bool operator==(const DualPoly& o) const { return n == o.n && comps == o.comps; }
    bool operator!=(const DualPoly& o) const { return !(*this == o); }

    std::string str() const;
    std::string to_json() const;
    static DualPoly from_json(const std::string& text);
};

/// The dual-number extension as a first-class ring of size |R|^{n+1}.
RingPtr dual_ring(const RingPtr& base, int n);

/// f(g) by the closed evaluation identity
///   f(g) = f0(g0) + sum_i (g_i f0'(g0) + f_i(g0)) a_i.
DualPoly dual_eval(const DualPoly& f, const DualPoly& g);

/// The same polynomial as a plain one-variable polynomial over dual_ring.
MultiPoly to_ring_poly(const DualPoly& f, const RingPtr& dual);
DualPoly from_ring_poly(const MultiPoly& p, const RingPtr& base, int n);

/// Induced function on the dual ring, evaluated with generic ring arithmetic.
/// Serves as the independent oracle for the componentwise criteria.
FuncTable induced_on_dual(const DualPoly& f);

/// f permutes the dual ring iff g0 permutes R and g0' is unit-valued on R.
bool is_perm_dual(const DualPoly& f);
bool is_perm_dual_bruteforce(const DualPoly& f);

/// f and g induce the same function on the dual ring iff all components agree
/// as functions on R and the derivatives of the scalar parts agree as well.
bool equiv_dual(const DualPoly& f, const DualPoly& g);
bool equiv_dual_bruteforce(const DualPoly& f, const DualPoly& g);

/// The triangular element (f0(x1), f1(x1)+x2 f0'(x1), ..., fn(x1)+x_{n+1} f0'(x1)).
/// Requires is_perm_dual(f); composition carries over exactly.
TriElem embed_psi(const DualPoly& f);

/// Induced permutation of R^{n+1} of the embedded element. Well-defined on
/// the permutation it represents and injective on permutations.
std::vector<int> embed_phi(const DualPoly& f);

}  // namespace tripoly
