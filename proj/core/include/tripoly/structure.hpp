#pragma once

#include <functional>

#include "tripoly/funcspace.hpp"
#include "tripoly/trimonoid.hpp"

namespace tripoly {

/// A finite monoid with elements 0..size-1 and a total binary operation.
/// The operation may be table-backed or computed; associativity is checked
/// exhaustively up to 512 elements and by sampling beyond that.
struct FiniteMonoid {
    std::size_t size = 0;
    int identity = 0;
    std::function<int(int, int)> op;

    int at(int a, int b) const { return op(a, b); }
    bool check_identity() const;
    bool check_associativity(std::size_t exhaustive_limit = 512, u64 sample_seed = 1,
                             std::size_t samples = 200000) const;
};

struct FiniteGroup {
    FiniteMonoid monoid;
    std::vector<int> inverse;
};

enum class ActionSide { Left, Right };

/// The monoid on pairs (a, b) with (a,b)(c,d) = (ac, b phi_a(d)) for a left
/// action, or (ac, phi_c(b) d) for a right action. Pairs are encoded
/// a * |B| + b. Construction validates that every phi_a is an endomorphism of
/// B and that phi respects the A operation; violations throw.
struct SemidirectProduct {
    FiniteMonoid monoid;
    std::size_t a_size = 0, b_size = 0;
    ActionSide side = ActionSide::Left;

    int encode(int a, int b) const { return static_cast<int>(a * static_cast<int>(b_size) + b); }
    std::pair<int, int> decode(int pair) const {
        return {pair / static_cast<int>(b_size), pair % static_cast<int>(b_size)};
    }
};

SemidirectProduct semidirect(const FiniteMonoid& b, const FiniteMonoid& a,
                             std::function<int(int, int)> action, ActionSide side = ActionSide::Left);

/// Two-sided invertible elements with the induced operation.
struct UnitGroup {
    FiniteGroup group;
    std::vector<int> element_of;  // unit index -> monoid element
    std::vector<int> unit_index;  // monoid element -> unit index, -1 for non-units
};
UnitGroup units_of(const FiniteMonoid& m);

/// Monoid views of a function space under pointwise operations.
FiniteMonoid additive_monoid(FuncSpace space);
FiniteMonoid multiplicative_monoid(FuncSpace space);
/// action(a, b): index in b_space of (a_space[a] * b_space[b]) pointwise.
std::function<int(int, int)> pointwise_mul_action(FuncSpace a_space, FuncSpace b_space);

/// Checks that the units of B x| A are exactly B^x x| A^x with the inherited
/// operation, and that every unit of A acts bijectively on B^x.
struct UnitsSemidirectReport {
    u64 semidirect_size = 0;
    u64 unit_count = 0;
    u64 expected_unit_count = 0;  // |B^x| * |A^x|
    bool sets_match = false;
    bool ops_match = false;
    bool unit_actions_bijective = false;
    bool pass = false;
};
UnitsSemidirectReport verify_units_semidirect(const FiniteMonoid& b, const FiniteMonoid& a,
                                              const std::function<int(int, int)>& action,
                                              ActionSide side = ActionSide::Left);

enum class DecompositionLevel { Monoid, Group, Induced };

/// Verifies the one-step splitting of the triangular structures at level n:
/// pairs (head in the (n-1)-variable structure, top level (u, f)) mapped by
///   (h, (u, f)) -> (h_1, ..., h_{n-1}, f + u x_n)
/// against composition on both sides. The induced level materializes the
/// permutation groups and checks the map exhaustively, the split extension
/// p j = id, and normality of the kernel; the monoid and group levels check
/// the map as exact polynomial identities on sampled elements.
struct DecompositionReport {
    std::string claim;
    std::string instance;
    u64 lhs_order = 0;  // pair structure
    u64 rhs_order = 0;  // target structure
    bool map_bijective = false;
    bool map_homomorphic = false;
    bool kernel_is_normal = false;
    bool section_splits = false;
    std::vector<std::string> witnesses;
    bool pass = false;
    std::string to_json() const;
};
DecompositionReport verify_decomposition(const RingPtr& ring, int n, DecompositionLevel level,
                                         int jobs = 1, u64 seed = 1, int samples = 40);

/// Solvability, nilpotency, and commutativity of the induced group of the
/// triangular monoid, with the series orders.
struct GroupPropsReport {
    std::string ring;
    int n = 0;
    u64 order = 0;
    bool solvable = false;
    bool nilpotent = false;
    bool abelian = false;
    std::vector<u64> derived_orders;
    std::vector<u64> lower_central_orders;
    std::string to_json() const;
};
GroupPropsReport group_props(const RingPtr& ring, int n, std::size_t max_elements = 100000);

/// The subgroup of permutations induced by single-level elements (k: u; f)
/// inside the induced group on R^n.
PermGroup induced_level_subgroup(const RingPtr& ring, int n, int k);

}  // namespace tripoly
