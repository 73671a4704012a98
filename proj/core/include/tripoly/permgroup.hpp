#pragma once

#include <optional>
#include <unordered_map>

#include "tripoly/common.hpp"

namespace tripoly {

/// A permutation of {0..points-1} stored as its image table.
using Perm = std::vector<std::uint16_t>;

Perm perm_identity(std::size_t points);
/// outer(inner(p)) pointwise.
Perm perm_compose(const Perm& outer, const Perm& inner);
Perm perm_inverse(const Perm& p);
bool perm_is_bijection(const Perm& p);

/// A finite permutation group held as its full element set, with the
/// operation given by table composition. Elements are kept sorted so that
/// equal groups have equal element vectors.
class PermGroup {
public:
    PermGroup() = default;

    /// Takes the elements as given (deduplicated and sorted); closure is the
    /// caller's claim and can be audited with closed_under_composition().
    static PermGroup from_elements(std::size_t points, std::vector<Perm> elems);
    /// Closure of the generators under composition.
    static PermGroup generate(std::size_t points, const std::vector<Perm>& gens);

    std::size_t size() const { return elems_.size(); }
    std::size_t points() const { return points_; }
    const std::vector<Perm>& elements() const { return elems_; }
    const Perm& element(std::size_t i) const { return elems_[i]; }
    bool contains(const Perm& p) const { return index_.count(p) != 0; }

    bool closed_under_composition(int jobs = 1) const;
    bool contains_identity_and_inverses() const;
    bool is_abelian() const;
    bool is_subgroup_of(const PermGroup& g) const;
    bool is_p_group(int p) const;

    /// Greedy generating set; small but not necessarily minimal.
    std::vector<Perm> small_generating_set() const;

    friend bool operator==(const PermGroup& a, const PermGroup& b) {
        return a.points_ == b.points_ && a.elems_ == b.elems_;
    }

private:
    std::size_t points_ = 0;
    std::vector<Perm> elems_;
    std::unordered_map<Perm, int, VecHash> index_;
};

/// Subgroup generated by `seeds` and closed under conjugation by the group
/// generated by `ambient_gens`.
PermGroup normal_closure(std::size_t points, const std::vector<Perm>& seeds,
                         const std::vector<Perm>& ambient_gens);

/// a^-1 b^-1 a b.
Perm commutator(const Perm& a, const Perm& b);

/// [A, B] as a normal subgroup of the group generated by ambient_gens; A and B
/// are given by generating sets.
PermGroup commutator_subgroup(std::size_t points, const std::vector<Perm>& a_gens,
                              const std::vector<Perm>& b_gens,
                              const std::vector<Perm>& ambient_gens);

/// G = G^(0) >= G' >= G'' >= ... until stabilization.
std::vector<PermGroup> derived_series(const PermGroup& g);
bool is_solvable(const PermGroup& g);

/// G = gamma_1 >= gamma_2 = [G, gamma_1] >= ... until stabilization.
std::vector<PermGroup> lower_central_series(const PermGroup& g);
bool is_nilpotent(const PermGroup& g);

struct ConjugationWitness {
    Perm conjugator;
    Perm element;
    Perm conjugate;  // conjugator^-1 * element * conjugator lies outside the subgroup
};

/// Tests g H g^-1 = H for all g; returns a witness triple on failure.
/// H must be a subgroup of G.
std::optional<ConjugationWitness> normality_witness(const PermGroup& h, const PermGroup& g);
bool is_normal(const PermGroup& h, const PermGroup& g);

}  // namespace tripoly
