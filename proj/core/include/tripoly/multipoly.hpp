#pragma once

#include <map>
#include <string>
#include <vector>

#include "tripoly/ring.hpp"

namespace tripoly {

/// Row-major indexing of R^k: the first coordinate is the most significant,
/// the last varies fastest. Serialized tables depend on this ordering.
struct PointDomain {
    std::size_t ring_size = 0;
    int arity = 0;
    std::size_t total = 0;

    PointDomain(std::size_t ring_size, int arity, std::size_t cap = SIZE_MAX);
    std::vector<int> decode(std::size_t flat) const;
    std::size_t encode(const std::vector<int>& point) const;
    /// Odometer step; returns false after the last point wraps to the first.
    static bool next_point(std::vector<int>& point, std::size_t ring_size);
};

/// An induced function R^k -> R stored as the value sequence over the
/// canonical point ordering. Two tables are equal iff the sequences are.
struct FuncTable {
    RingPtr ring;
    int arity = 0;
    std::vector<int> values;

    bool is_bijection() const;
    bool all_units() const;
    friend bool operator==(const FuncTable& a, const FuncTable& b) {
        return a.arity == b.arity && a.values == b.values;
    }
};

/// Exact sparse multivariate polynomial over a finite ring. Coefficients are
/// canonical element indices; zero coefficients are never stored, and the
/// zero polynomial has no terms. Polynomial identity is distinct from
/// induced-function equality (see func_equiv).
class MultiPoly {
public:
    using Exponents = std::vector<int>;
    using TermMap = std::map<Exponents, int>;

    MultiPoly() = default;
    MultiPoly(RingPtr ring, int arity);

    static MultiPoly zero(RingPtr ring, int arity) { return {std::move(ring), arity}; }
    static MultiPoly constant(RingPtr ring, int arity, int value);
    /// x_{var+1} as a polynomial (variables are 0-indexed in code, 1-indexed in text).
    static MultiPoly variable(RingPtr ring, int arity, int var);
    static MultiPoly monomial(RingPtr ring, int arity, Exponents exps, int coeff);

    /// Grammar: terms joined by '+'/'-'; a term is "<coeff>", "<coeff>*<factors>"
    /// or bare factors; each factor is "x<i>" or "x<i>^<e>"; parenthesized
    /// subexpressions are accepted. Coefficients are canonical element literals.
    static MultiPoly parse(RingPtr ring, int arity, const std::string& text);
    std::string str() const;

    const RingPtr& ring() const { return ring_; }
    int arity() const { return arity_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    int coefficient(const Exponents& exps) const;
    int constant_term() const;
    int total_degree() const;  // -1 for the zero polynomial

    MultiPoly operator+(const MultiPoly& o) const;
    MultiPoly operator-(const MultiPoly& o) const;
    MultiPoly operator*(const MultiPoly& o) const;
    MultiPoly operator-() const;
    bool operator==(const MultiPoly& o) const;
    bool operator!=(const MultiPoly& o) const { return !(*this == o); }

    MultiPoly scaled(int c) const;
    MultiPoly pow(int e) const;

    int evaluate(const std::vector<int>& point) const;
    /// f(args...): one argument per variable, all of one common arity.
    MultiPoly substitute(const std::vector<MultiPoly>& args) const;
    MultiPoly derivative(int var) const;
    /// Same polynomial viewed in more variables.
    MultiPoly extend_arity(int new_arity) const;
    /// Drops unused trailing variables; throws if any of them occurs.
    MultiPoly restrict_arity(int new_arity) const;

    FuncTable func_of(std::size_t cap_points = 65536) const;

private:
    void put(const Exponents& exps, int coeff);  // accumulating insert
    void check_compatible(const MultiPoly& o) const;

    RingPtr ring_;
    int arity_ = 0;
    TermMap terms_;
};

bool func_equiv(const MultiPoly& f, const MultiPoly& g);

/// Invertibility in the polynomial ring: unit constant term and nilpotent
/// higher coefficients, coefficient-wise in any number of variables.
bool is_unit_poly(const MultiPoly& f);
MultiPoly unit_poly_inverse(const MultiPoly& f);

/// Every value over R^k is a unit of R. Weaker than is_unit_poly.
bool is_unit_valued(const MultiPoly& f);

/// One-variable polynomial inducing a bijection of R. Uses the local-ring
/// residue/derivative criterion as a fast path and CRT factor splitting for
/// product rings; falls back to exhaustive bijectivity.
bool is_permutation_poly(const MultiPoly& f);
bool is_permutation_poly_bruteforce(const MultiPoly& f);
/// The two-condition local test on its own (ring must be local, not a field).
bool local_ring_permutation_test(const MultiPoly& f);

/// Composition-invertible one-variable polynomial: unit coefficient at x and
/// nilpotent coefficients from degree 2 up.
bool is_automorphism(const MultiPoly& f);
/// Exact compositional inverse of an automorphism, lifted by Newton steps
/// through the nilradical.
MultiPoly automorphism_inverse(const MultiPoly& f);

/// Degree < q interpolant over a finite field (one variable).
MultiPoly lagrange_interpolate(const FuncTable& table);

}  // namespace tripoly
