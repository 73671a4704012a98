#pragma once

#include "tripoly/multipoly.hpp"
#include "tripoly/permgroup.hpp"

namespace tripoly {

using Table = std::vector<std::uint16_t>;

Table to_table(const FuncTable& t);

/// A set of induced functions R^k -> R, deduplicated and canonically sorted.
struct FuncSpace {
    RingPtr ring;
    int k = 0;
    std::vector<Table> tables;

    std::size_t size() const { return tables.size(); }
    bool contains(const Table& t) const;
};

/// All polynomial functions on R^k: the closure of the constants and the
/// coordinate projections under pointwise sum and product, computed as the
/// additive span of the ring-scaled monomial functions. The shuffle seed
/// permutes the worklist order; the result is independent of it.
FuncSpace enumerate_poly_functions(const RingPtr& ring, int k, std::size_t cap_points = 256,
                                   u64 shuffle_seed = 0);

/// Subset whose every value is a unit.
FuncSpace enumerate_unit_valued(const FuncSpace& space);

/// Bijective members of the one-variable function space.
FuncSpace enumerate_poly_permutations(const RingPtr& ring, std::size_t cap_points = 256);

/// Functions induced by units of the polynomial ring: a unit constant plus the
/// additive span of nilpotent multiples of non-constant monomial functions.
FuncSpace enumerate_unit_induced(const RingPtr& ring, int k, std::size_t cap_points = 256);

/// Functions induced by composition-invertible one-variable polynomials:
/// affine parts with unit slope plus the nilpotent span from degree 2 up.
FuncSpace enumerate_automorphism_induced(const RingPtr& ring, std::size_t cap_points = 256);

/// True iff no unit of the polynomial ring induces the same function as
/// (x^q - x) + 1. Requires a local ring that is not a field.
bool nounitrep_check(const RingPtr& ring);

bool p_group_check(u64 count, int p);

/// One-variable function classes, each with a witness polynomial.
struct FuncRep {
    Table table;
    MultiPoly poly;
};
std::vector<FuncRep> poly_function_representatives(const RingPtr& ring);

/// Classes of the pair (induced function, induced derivative function), each
/// with a witness polynomial. Two polynomials in one class induce the same
/// function on every dual-number extension of the ring.
struct PairRep {
    Table fn;
    Table deriv;
    MultiPoly poly;
};
std::vector<PairRep> poly_pair_representatives(const RingPtr& ring);

/// The permutation group of R^n induced by the triangular monoid (or by its
/// unit group), built from component function tuples.
struct InducedGroup {
    RingPtr ring;
    int n = 0;
    u64 order = 0;  // product over the component spaces
    bool materialized = false;
    PermGroup perms;
};

/// |P(R)| * prod_{i=1}^{n-1} |F(R^i)| |FU(R^i)|.
u64 mt_order_formula(const RingPtr& ring, int n);

InducedGroup induced_group_mt(const RingPtr& ring, int n, std::size_t max_elements = 100000);
InducedGroup induced_group_tr(const RingPtr& ring, int n, std::size_t max_elements = 100000);

struct OrderReport {
    std::string ring;
    int n = 0;
    u64 perm_count = 0;                  // |P(R)|
    std::vector<u64> func_counts;        // |F(R^i)|, i = 1..n-1
    std::vector<u64> unit_func_counts;   // |FU(R^i)|
    u64 formula = 0;
    u64 materialized = 0;                // 0 when skipped
    bool closure_checked = false;
    bool match = false;
    std::string to_json() const;
};
OrderReport verify_order_formula(const RingPtr& ring, int n, bool materialize = true,
                                 bool check_closure = false, int jobs = 1);

struct RatioReport {
    std::string ring;
    int k = 0;
    int q = 0;
    u64 func_count = 0;
    u64 unit_func_count = 0;
    bool unit_ratio_exact = false;       // |FU|/|F| = (q-1)^{q^k} / q^{q^k}
    // one-variable permutation ratio, both orientations of the printed formula
    u64 perm_count = 0;
    bool printed_orientation_matches = false;   // |F|/|P| = q!(q-1)^q / q^{2q}
    bool reversed_orientation_matches = false;  // |P|/|F| = q!(q-1)^q / q^{2q}
    std::string to_json() const;
};
RatioReport verify_counting_ratios(const RingPtr& ring, int k);

}  // namespace tripoly
