#include "tripoly/permgroup.hpp"

#include <algorithm>
#include <atomic>

namespace tripoly {

Perm perm_identity(std::size_t points) {
    Perm p(points);
    for (std::size_t i = 0; i < points; ++i) p[i] = static_cast<std::uint16_t>(i);
    return p;
}

Perm perm_compose(const Perm& outer, const Perm& inner) {
    Perm out(inner.size());
    for (std::size_t i = 0; i < inner.size(); ++i) out[i] = outer[inner[i]];
    return out;
}

Perm perm_inverse(const Perm& p) {
    Perm out(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) out[p[i]] = static_cast<std::uint16_t>(i);
    return out;
}

bool perm_is_bijection(const Perm& p) {
    std::vector<char> seen(p.size(), 0);
    for (auto v : p) {
        if (v >= p.size() || seen[v]) return false;
        seen[v] = 1;
    }
    return true;
}

PermGroup PermGroup::from_elements(std::size_t points, std::vector<Perm> elems) {
    PermGroup g;
    g.points_ = points;
    std::sort(elems.begin(), elems.end());
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    g.elems_ = std::move(elems);
    g.index_.reserve(g.elems_.size() * 2);
    for (std::size_t i = 0; i < g.elems_.size(); ++i)
        g.index_.emplace(g.elems_[i], static_cast<int>(i));
    return g;
}

PermGroup PermGroup::generate(std::size_t points, const std::vector<Perm>& gens) {
    std::unordered_map<Perm, int, VecHash> seen;
    std::vector<Perm> frontier{perm_identity(points)};
    seen.emplace(frontier[0], 0);
    std::vector<Perm> all = frontier;
    while (!frontier.empty()) {
        std::vector<Perm> next;
        for (const auto& e : frontier)
            for (const auto& g : gens) {
                Perm c = perm_compose(e, g);
                if (seen.emplace(c, 0).second) {
                    all.push_back(c);
                    next.push_back(std::move(c));
                }
            }
        frontier = std::move(next);
    }
    return from_elements(points, std::move(all));
}

bool PermGroup::closed_under_composition(int jobs) const {
    std::atomic<bool> ok{true};
    parallel_chunks(elems_.size(), jobs, [&](std::size_t lo, std::size_t hi, int) {
        Perm scratch(points_);
        for (std::size_t i = lo; i < hi && ok.load(std::memory_order_relaxed); ++i)
            for (std::size_t j = 0; j < elems_.size(); ++j) {
                const Perm& a = elems_[i];
                const Perm& b = elems_[j];
                for (std::size_t p = 0; p < points_; ++p) scratch[p] = a[b[p]];
                if (!index_.count(scratch)) {
                    ok.store(false, std::memory_order_relaxed);
                    break;
                }
            }
    });
    return ok.load();
}

bool PermGroup::contains_identity_and_inverses() const {
    if (!contains(perm_identity(points_))) return false;
    for (const auto& e : elems_)
        if (!contains(perm_inverse(e))) return false;
    return true;
}

bool PermGroup::is_abelian() const {
    // generators commuting pairwise carries to the whole group
    std::vector<Perm> gens = small_generating_set();
    for (std::size_t i = 0; i < gens.size(); ++i)
        for (std::size_t j = i + 1; j < gens.size(); ++j)
            if (perm_compose(gens[i], gens[j]) != perm_compose(gens[j], gens[i])) return false;
    return true;
}

bool PermGroup::is_subgroup_of(const PermGroup& g) const {
    if (points_ != g.points_) return false;
    for (const auto& e : elems_)
        if (!g.contains(e)) return false;
    return true;
}

bool PermGroup::is_p_group(int p) const {
    return is_power_of(static_cast<u64>(size()), static_cast<u64>(p));
}

std::vector<Perm> PermGroup::small_generating_set() const {
    std::vector<Perm> gens;
    PermGroup span = generate(points_, gens);
    for (const auto& e : elems_) {
        if (span.contains(e)) continue;
        gens.push_back(e);
        span = generate(points_, gens);
        if (span.size() == size()) break;
    }
    return gens;
}

PermGroup normal_closure(std::size_t points, const std::vector<Perm>& seeds,
                         const std::vector<Perm>& ambient_gens) {
    std::vector<Perm> gens = seeds;
    PermGroup n = PermGroup::generate(points, gens);
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<Perm> fresh;
        for (const auto& x : gens)
            for (const auto& s : ambient_gens) {
                Perm c = perm_compose(perm_compose(s, x), perm_inverse(s));
                if (!n.contains(c)) fresh.push_back(std::move(c));
            }
        if (!fresh.empty()) {
            grew = true;
            for (auto& c : fresh) gens.push_back(std::move(c));
            n = PermGroup::generate(points, gens);
        }
    }
    return n;
}

Perm commutator(const Perm& a, const Perm& b) {
    return perm_compose(perm_compose(perm_inverse(a), perm_inverse(b)), perm_compose(a, b));
}

PermGroup commutator_subgroup(std::size_t points, const std::vector<Perm>& a_gens,
                              const std::vector<Perm>& b_gens,
                              const std::vector<Perm>& ambient_gens) {
    Perm id = perm_identity(points);
    std::vector<Perm> seeds;
    for (const auto& a : a_gens)
        for (const auto& b : b_gens) {
            Perm c = commutator(a, b);
            if (c != id) seeds.push_back(std::move(c));
        }
    return normal_closure(points, seeds, ambient_gens);
}

std::vector<PermGroup> derived_series(const PermGroup& g) {
    std::vector<PermGroup> series{g};
    std::vector<Perm> gens = g.small_generating_set();
    while (true) {
        PermGroup next = commutator_subgroup(g.points(), gens, gens, gens);
        if (next.size() == series.back().size()) break;
        series.push_back(next);
        gens = series.back().small_generating_set();
        if (series.back().size() == 1) break;
    }
    return series;
}

bool is_solvable(const PermGroup& g) { return derived_series(g).back().size() == 1; }

std::vector<PermGroup> lower_central_series(const PermGroup& g) {
    std::vector<PermGroup> series{g};
    std::vector<Perm> g_gens = g.small_generating_set();
    std::vector<Perm> prev_gens = g_gens;
    while (true) {
        PermGroup next = commutator_subgroup(g.points(), g_gens, prev_gens, g_gens);
        if (next.size() == series.back().size()) break;
        series.push_back(next);
        prev_gens = series.back().small_generating_set();
        if (series.back().size() == 1) break;
    }
    return series;
}

bool is_nilpotent(const PermGroup& g) { return lower_central_series(g).back().size() == 1; }

std::optional<ConjugationWitness> normality_witness(const PermGroup& h, const PermGroup& g) {
    if (!h.is_subgroup_of(g)) throw std::invalid_argument("normality test requires a subgroup");
    std::vector<Perm> h_gens = h.small_generating_set();
    for (const auto& conj : g.elements())
        for (const auto& x : h_gens) {
            Perm c = perm_compose(perm_compose(conj, x), perm_inverse(conj));
            if (!h.contains(c)) return ConjugationWitness{conj, x, c};
        }
    return std::nullopt;
}

bool is_normal(const PermGroup& h, const PermGroup& g) { return !normality_witness(h, g).has_value(); }

}  // namespace tripoly
