#pragma once

#include <random>
#include <utility>

#include "tripoly/multipoly.hpp"

namespace tripoly {

/// An n-tuple of polynomials in n variables, composed componentwise.
struct VecPoly {
    RingPtr ring;
    int n = 0;
    std::vector<MultiPoly> comps;

    std::vector<int> apply(const std::vector<int>& point) const;
    bool operator==(const VecPoly& o) const { return n == o.n && comps == o.comps; }

    /// "(p1, p2, ..., pn)"
    static VecPoly parse(RingPtr ring, int n, const std::string& text);
    std::string str() const;
    std::string to_json() const;
    static VecPoly from_json(const std::string& text);
};

/// A triangular vector-permutation polynomial in factored form
///   (1:f1) (2:u2;f2) ... (n:un;fn)
/// i.e. the map (f1(x1), f2(x1)+x2*u2(x1), ..., fn(...)+xn*un(...)) with f1 a
/// permutation polynomial and every u_i unit-valued. These form a monoid under
/// composition; composition and inversion operate on the factors directly.
class TriElem {
public:
    using Levels = std::vector<std::pair<MultiPoly, MultiPoly>>;  // (f_i, u_i), i = 2..n

    /// Validates the membership criteria; throws MembershipViolation.
    static TriElem make(RingPtr ring, MultiPoly f1, Levels levels);
    /// Skips validation. For bulk construction of elements already known to
    /// satisfy the criteria (e.g. compose results).
    static TriElem make_trusted(RingPtr ring, MultiPoly f1, Levels levels);
    static TriElem identity(const RingPtr& ring, int n);
    /// (1:f) with identity components elsewhere.
    static TriElem one_level(const RingPtr& ring, int n, MultiPoly f);
    /// (i:u;f) with identity components elsewhere, 2 <= i <= n.
    static TriElem level(const RingPtr& ring, int n, int i, MultiPoly u, MultiPoly f);

    const RingPtr& ring() const { return ring_; }
    int n() const { return n_; }
    const MultiPoly& f1() const { return f1_; }
    /// f_i and u_i for i = 2..n, each in i-1 variables.
    const MultiPoly& f(int i) const { return levels_[static_cast<std::size_t>(i - 2)].first; }
    const MultiPoly& u(int i) const { return levels_[static_cast<std::size_t>(i - 2)].second; }

    VecPoly to_vecpoly() const;
    /// Inverse of to_vecpoly. Throws NotTriangular on shape violations,
    /// MembershipViolation if the shape holds but the criteria fail.
    static TriElem from_vecpoly(const VecPoly& v);

    /// (*this) after `inner`: composition of maps, computed factor-wise.
    TriElem compose(const TriElem& inner) const;
    bool is_unit() const;
    /// Exact compositional inverse of a unit; throws NotAUnit.
    TriElem inverse() const;

    std::vector<int> apply(const std::vector<int>& point) const;
    /// The unique preimage of `target`, found by back-substitution. Works for
    /// every element of the monoid, invertible or not.
    std::vector<int> solve_preimage(const std::vector<int>& target) const;

    /// Componentwise function equivalence on R.
    bool equiv(const TriElem& o) const;
    /// Appends identity levels up to k variables, k > n.
    TriElem embed(int k) const;

    /// The induced permutation of R^n as a flat table over the canonical
    /// point ordering.
    std::vector<int> perm_table(std::size_t cap_points = 65536) const;

    /// Exact identity of the factored form.
    bool operator==(const TriElem& o) const {
        return n_ == o.n_ && f1_ == o.f1_ && levels_ == o.levels_;
    }
    bool operator!=(const TriElem& o) const { return !(*this == o); }

    std::string str() const;
    std::string to_json() const;
    static TriElem from_json(const std::string& text);

private:
    TriElem(RingPtr ring, int n, MultiPoly f1, Levels levels)
        : ring_(std::move(ring)), n_(n), f1_(std::move(f1)), levels_(std::move(levels)) {}

    RingPtr ring_;
    int n_ = 0;
    MultiPoly f1_;
    Levels levels_;
};

/// Uniformly random monoid element with components of total degree <= max_deg
/// (permutation and unit-valued parts found by rejection).
TriElem random_mt_element(const RingPtr& ring, int n, int max_deg, std::mt19937_64& rng);
/// Uniformly random unit: automorphism f1 and unit-polynomial u_i built
/// directly from unit and nilpotent coefficients.
TriElem random_tr_element(const RingPtr& ring, int n, int max_deg, std::mt19937_64& rng);
MultiPoly random_poly_of_degree(const RingPtr& ring, int arity, int max_deg, std::mt19937_64& rng);

}  // namespace tripoly
