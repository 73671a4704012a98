#include "tripoly/structure.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <memory>
#include <random>

namespace tripoly {

using nlohmann::json;

bool FiniteMonoid::check_identity() const {
    for (int a = 0; a < static_cast<int>(size); ++a)
        if (op(identity, a) != a || op(a, identity) != a) return false;
    return true;
}

bool FiniteMonoid::check_associativity(std::size_t exhaustive_limit, u64 sample_seed,
                                       std::size_t samples) const {
    int n = static_cast<int>(size);
    if (size <= exhaustive_limit) {
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c)
                    if (op(op(a, b), c) != op(a, op(b, c))) return false;
        return true;
    }
    std::mt19937_64 rng(sample_seed);
    std::uniform_int_distribution<int> pick(0, n - 1);
    for (std::size_t s = 0; s < samples; ++s) {
        int a = pick(rng), b = pick(rng), c = pick(rng);
        if (op(op(a, b), c) != op(a, op(b, c))) return false;
    }
    return true;
}

SemidirectProduct semidirect(const FiniteMonoid& b, const FiniteMonoid& a,
                             std::function<int(int, int)> action, ActionSide side) {
    int na = static_cast<int>(a.size);
    int nb = static_cast<int>(b.size);
    // phi_a must fix 1_B and distribute over the B operation
    for (int x = 0; x < na; ++x) {
        if (action(x, b.identity) != b.identity)
            throw std::invalid_argument("action does not preserve the identity of B");
        for (int y = 0; y < nb; ++y)
            for (int z = 0; z < nb; ++z)
                if (action(x, b.op(y, z)) != b.op(action(x, y), action(x, z)))
                    throw std::invalid_argument("action is not by endomorphisms of B");
    }
    for (int y = 0; y < nb; ++y)
        if (action(a.identity, y) != y)
            throw std::invalid_argument("identity of A must act as the identity map");
    // compatibility with the A operation, per action side
    for (int x = 0; x < na; ++x)
        for (int y = 0; y < na; ++y)
            for (int z = 0; z < nb; ++z) {
                int lhs = action(a.op(x, y), z);
                int rhs = side == ActionSide::Left ? action(x, action(y, z))
                                                   : action(y, action(x, z));
                if (lhs != rhs)
                    throw std::invalid_argument("action is not compatible with the A operation");
            }

    SemidirectProduct s;
    s.a_size = a.size;
    s.b_size = b.size;
    s.side = side;
    s.monoid.size = a.size * b.size;
    s.monoid.identity = a.identity * nb + b.identity;
    auto aop = a.op;
    auto bop = b.op;
    s.monoid.op = [aop, bop, action, nb, side](int p, int q) {
        int pa = p / nb, pb = p % nb;
        int qa = q / nb, qb = q % nb;
        int rb = side == ActionSide::Left ? bop(pb, action(pa, qb)) : bop(action(qa, pb), qb);
        return aop(pa, qa) * nb + rb;
    };
    return s;
}

UnitGroup units_of(const FiniteMonoid& m) {
    int n = static_cast<int>(m.size);
    std::vector<int> inv(m.size, -1);
    for (int x = 0; x < n; ++x) {
        if (inv[static_cast<std::size_t>(x)] >= 0) continue;
        for (int y = 0; y < n; ++y)
            if (m.op(x, y) == m.identity && m.op(y, x) == m.identity) {
                inv[static_cast<std::size_t>(x)] = y;
                inv[static_cast<std::size_t>(y)] = x;
                break;
            }
    }
    UnitGroup out;
    out.unit_index.assign(m.size, -1);
    for (int x = 0; x < n; ++x)
        if (inv[static_cast<std::size_t>(x)] >= 0) {
            out.unit_index[static_cast<std::size_t>(x)] = static_cast<int>(out.element_of.size());
            out.element_of.push_back(x);
        }
    auto element_of = std::make_shared<std::vector<int>>(out.element_of);
    auto unit_index = std::make_shared<std::vector<int>>(out.unit_index);
    auto op = m.op;
    out.group.monoid.size = element_of->size();
    out.group.monoid.identity = (*unit_index)[static_cast<std::size_t>(m.identity)];
    out.group.monoid.op = [op, element_of, unit_index](int i, int j) {
        int prod = op((*element_of)[static_cast<std::size_t>(i)],
                      (*element_of)[static_cast<std::size_t>(j)]);
        int idx = (*unit_index)[static_cast<std::size_t>(prod)];
        if (idx < 0) throw std::logic_error("product of units left the unit set");
        return idx;
    };
    out.group.inverse.resize(element_of->size());
    for (std::size_t i = 0; i < element_of->size(); ++i)
        out.group.inverse[i] =
            (*unit_index)[static_cast<std::size_t>(inv[static_cast<std::size_t>((*element_of)[i])])];
    return out;
}

namespace {

FiniteMonoid tabulated_monoid(FuncSpace space, bool multiplicative) {
    if (space.size() > 2048) throw CapExceeded("function space too large to tabulate as a monoid");
    auto tables = std::make_shared<std::vector<Table>>(std::move(space.tables));
    const Ring& r = *space.ring;
    int n = static_cast<int>(tables->size());
    auto cayley = std::make_shared<std::vector<int>>(static_cast<std::size_t>(n) * n);
    Table scratch((*tables)[0].size());
    int identity = -1;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const Table& a = (*tables)[static_cast<std::size_t>(i)];
            const Table& b = (*tables)[static_cast<std::size_t>(j)];
            for (std::size_t p = 0; p < a.size(); ++p)
                scratch[p] = static_cast<std::uint16_t>(multiplicative ? r.mul(a[p], b[p])
                                                                       : r.add(a[p], b[p]));
            auto it = std::lower_bound(tables->begin(), tables->end(), scratch);
            if (it == tables->end() || *it != scratch)
                throw std::logic_error("function space is not closed under the requested operation");
            (*cayley)[static_cast<std::size_t>(i) * n + static_cast<std::size_t>(j)] =
                static_cast<int>(it - tables->begin());
        }
    }
    Table id_table((*tables)[0].size(),
                   static_cast<std::uint16_t>(multiplicative ? r.one() : r.zero()));
    auto it = std::lower_bound(tables->begin(), tables->end(), id_table);
    if (it == tables->end() || *it != id_table)
        throw std::logic_error("function space lacks the identity of the requested operation");
    identity = static_cast<int>(it - tables->begin());

    FiniteMonoid m;
    m.size = static_cast<std::size_t>(n);
    m.identity = identity;
    m.op = [cayley, n](int i, int j) {
        return (*cayley)[static_cast<std::size_t>(i) * n + static_cast<std::size_t>(j)];
    };
    return m;
}

}  // namespace

FiniteMonoid additive_monoid(FuncSpace space) { return tabulated_monoid(std::move(space), false); }

FiniteMonoid multiplicative_monoid(FuncSpace space) { return tabulated_monoid(std::move(space), true); }

std::function<int(int, int)> pointwise_mul_action(FuncSpace a_space, FuncSpace b_space) {
    auto a_tables = std::make_shared<std::vector<Table>>(std::move(a_space.tables));
    auto b_tables = std::make_shared<std::vector<Table>>(std::move(b_space.tables));
    const Ring* r = a_space.ring.get();
    auto ring = a_space.ring;
    if (static_cast<std::size_t>(a_tables->size()) * b_tables->size() > (1u << 22)) {
        return [a_tables, b_tables, ring](int a, int b) {
            const Table& ta = (*a_tables)[static_cast<std::size_t>(a)];
            const Table& tb = (*b_tables)[static_cast<std::size_t>(b)];
            Table prod(ta.size());
            for (std::size_t p = 0; p < ta.size(); ++p)
                prod[p] = static_cast<std::uint16_t>(ring->mul(ta[p], tb[p]));
            auto it = std::lower_bound(b_tables->begin(), b_tables->end(), prod);
            if (it == b_tables->end() || *it != prod)
                throw std::logic_error("action left the target function space");
            return static_cast<int>(it - b_tables->begin());
        };
    }
    auto table =
        std::make_shared<std::vector<int>>(a_tables->size() * b_tables->size());
    Table prod((*b_tables)[0].size());
    for (std::size_t a = 0; a < a_tables->size(); ++a)
        for (std::size_t b = 0; b < b_tables->size(); ++b) {
            const Table& ta = (*a_tables)[a];
            const Table& tb = (*b_tables)[b];
            for (std::size_t p = 0; p < prod.size(); ++p)
                prod[p] = static_cast<std::uint16_t>(r->mul(ta[p], tb[p]));
            auto it = std::lower_bound(b_tables->begin(), b_tables->end(), prod);
            if (it == b_tables->end() || *it != prod)
                throw std::logic_error("action left the target function space");
            (*table)[a * b_tables->size() + b] = static_cast<int>(it - b_tables->begin());
        }
    std::size_t nb = b_tables->size();
    return [table, nb](int a, int b) {
        return (*table)[static_cast<std::size_t>(a) * nb + static_cast<std::size_t>(b)];
    };
}

UnitsSemidirectReport verify_units_semidirect(const FiniteMonoid& b, const FiniteMonoid& a,
                                              const std::function<int(int, int)>& action,
                                              ActionSide side) {
    UnitsSemidirectReport rep;
    SemidirectProduct s = semidirect(b, a, action, side);
    rep.semidirect_size = s.monoid.size;

    UnitGroup su = units_of(s.monoid);
    UnitGroup bu = units_of(b);
    UnitGroup au = units_of(a);
    rep.unit_count = su.element_of.size();
    rep.expected_unit_count = static_cast<u64>(bu.element_of.size()) * au.element_of.size();

    // the units of the pair monoid are exactly the pairs of units
    rep.sets_match = rep.unit_count == rep.expected_unit_count;
    for (int pair : su.element_of) {
        auto [pa, pb] = s.decode(pair);
        if (au.unit_index[static_cast<std::size_t>(pa)] < 0 ||
            bu.unit_index[static_cast<std::size_t>(pb)] < 0)
            rep.sets_match = false;
    }

    // restricted to unit pairs, the two operations agree element by element
    rep.ops_match = true;
    for (int p : su.element_of)
        for (int q : su.element_of) {
            int prod = s.monoid.op(p, q);
            auto [pa, pb] = s.decode(p);
            auto [qa, qb] = s.decode(q);
            int rb = side == ActionSide::Left ? b.op(pb, action(pa, qb)) : b.op(action(qa, pb), qb);
            int ra = a.op(pa, qa);
            if (prod != s.encode(ra, rb)) rep.ops_match = false;
        }

    // every unit of A acts bijectively on the units of B
    rep.unit_actions_bijective = true;
    for (int ua : au.element_of) {
        std::vector<char> hit(b.size, 0);
        for (int ub : bu.element_of) {
            int img = action(ua, ub);
            if (bu.unit_index[static_cast<std::size_t>(img)] < 0 ||
                hit[static_cast<std::size_t>(img)]) {
                rep.unit_actions_bijective = false;
                break;
            }
            hit[static_cast<std::size_t>(img)] = 1;
        }
    }

    rep.pass = rep.sets_match && rep.ops_match && rep.unit_actions_bijective;
    return rep;
}

// --- decomposition of the induced group ---

PermGroup induced_level_subgroup(const RingPtr& ring, int n, int k) {
    if (k < 2 || k > n) throw std::invalid_argument("level index out of range");
    FuncSpace fs = enumerate_poly_functions(ring, k - 1);
    FuncSpace us = enumerate_unit_valued(fs);
    PointDomain dom(ring->size(), n, 65536);
    std::size_t rsize = ring->size();
    std::size_t below = 1;  // |R|^{n-k}
    for (int j = 0; j < n - k; ++j) below *= rsize;
    std::vector<Perm> elems;
    for (const auto& f : fs.tables)
        for (const auto& u : us.tables) {
            Perm t(dom.total);
            for (std::size_t flat = 0; flat < dom.total; ++flat) {
                std::size_t pre = flat / (below * rsize);
                std::size_t ak = (flat / below) % rsize;
                int comp = ring->add(f[pre], ring->mul(static_cast<int>(ak), u[pre]));
                std::size_t img = flat - ak * below + static_cast<std::size_t>(comp) * below;
                t[flat] = static_cast<std::uint16_t>(img);
            }
            elems.push_back(std::move(t));
        }
    return PermGroup::from_elements(dom.total, std::move(elems));
}

namespace {

DecompositionReport verify_decomposition_induced(const RingPtr& ring, int n, int jobs) {
    DecompositionReport rep;
    rep.claim = "induced group at " + std::to_string(n) +
                " variables splits over its top level with quotient at " + std::to_string(n - 1);
    rep.instance = ring->spec_string() + ", n=" + std::to_string(n);

    InducedGroup head = induced_group_mt(ring, n - 1);
    InducedGroup whole = induced_group_mt(ring, n);
    if (!head.materialized || !whole.materialized)
        throw CapExceeded("decomposition at induced level needs materializable groups");
    FuncSpace fs = enumerate_poly_functions(ring, n - 1);
    FuncSpace us = enumerate_unit_valued(fs);

    std::size_t rsize = ring->size();
    std::size_t head_points = head.perms.points();
    rep.lhs_order = static_cast<u64>(head.perms.size()) * fs.size() * us.size();
    rep.rhs_order = whole.perms.size();

    struct Element {
        const Perm* a;
        const Table* f;
        const Table* u;
    };
    std::vector<Element> pairs;
    pairs.reserve(static_cast<std::size_t>(rep.lhs_order));
    for (const auto& a : head.perms.elements())
        for (const auto& f : fs.tables)
            for (const auto& u : us.tables) pairs.push_back({&a, &f, &u});

    auto psi = [&](const Element& e) {
        Perm t(head_points * rsize);
        for (std::size_t pre = 0; pre < head_points; ++pre) {
            std::size_t img_pre = static_cast<std::size_t>((*e.a)[pre]) * rsize;
            for (std::size_t last = 0; last < rsize; ++last) {
                int comp = ring->add((*e.f)[pre], ring->mul(static_cast<int>(last), (*e.u)[pre]));
                t[pre * rsize + last] = static_cast<std::uint16_t>(img_pre + comp);
            }
        }
        return t;
    };

    // bijectivity: the images are pairwise distinct and exhaust the group
    std::vector<Perm> images(pairs.size());
    for (std::size_t i = 0; i < pairs.size(); ++i) images[i] = psi(pairs[i]);
    {
        std::vector<Perm> sorted = images;
        std::sort(sorted.begin(), sorted.end());
        bool distinct = std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
        bool inside = true;
        for (const auto& t : sorted)
            if (!whole.perms.contains(t)) {
                inside = false;
                break;
            }
        rep.map_bijective = distinct && inside && sorted.size() == whole.perms.size();
        if (!rep.map_bijective) rep.witnesses.push_back("image set does not match the group");
    }

    // homomorphism, exhaustively over pairs of pairs
    std::atomic<bool> hom{true};
    parallel_chunks(pairs.size(), jobs, [&](std::size_t lo, std::size_t hi, int) {
        for (std::size_t i = lo; i < hi && hom.load(std::memory_order_relaxed); ++i) {
            const Element& x = pairs[i];
            const Perm& px = images[i];
            for (std::size_t j = 0; j < pairs.size(); ++j) {
                const Element& y = pairs[j];
                const Perm& py = images[j];
                // z = x y has a-part x.a o y.a and level parts
                // u = (x.u o y.a) * y.u, f = (x.f o y.a) + (x.u o y.a) * y.f
                bool ok = true;
                for (std::size_t pre = 0; pre < head_points && ok; ++pre) {
                    std::size_t ya = (*y.a)[pre];
                    std::size_t za = (*x.a)[ya];
                    int xu = (*x.u)[ya];
                    int zf = ring->add((*x.f)[ya], ring->mul(xu, (*y.f)[pre]));
                    int zu = ring->mul(xu, (*y.u)[pre]);
                    for (std::size_t last = 0; last < rsize && ok; ++last) {
                        int comp = ring->add(zf, ring->mul(static_cast<int>(last), zu));
                        std::size_t lhs = za * rsize + static_cast<std::size_t>(comp);
                        std::size_t rhs = px[py[pre * rsize + last]];
                        ok = lhs == rhs;
                    }
                }
                if (!ok) {
                    hom.store(false, std::memory_order_relaxed);
                    break;
                }
            }
        }
    });
    rep.map_homomorphic = hom.load();
    if (!rep.map_homomorphic) rep.witnesses.push_back("psi(x y) != psi(x) psi(y) for some pair");

    // split extension: the kernel of the head projection is the top level,
    // normal in the whole group, and the section is a one-sided inverse
    PermGroup kernel = induced_level_subgroup(ring, n, n);
    auto project = [&](const Perm& g) {
        Perm p(head_points);
        for (std::size_t pre = 0; pre < head_points; ++pre)
            p[pre] = static_cast<std::uint16_t>(g[pre * rsize] / rsize);
        return p;
    };
    bool kernel_ok = kernel.size() == static_cast<u64>(fs.size()) * us.size();
    for (const auto& g : whole.perms.elements()) {
        bool in_kernel = project(g) == perm_identity(head_points);
        if (in_kernel != kernel.contains(g)) {
            kernel_ok = false;
            break;
        }
    }
    rep.kernel_is_normal = kernel_ok && is_normal(kernel, whole.perms);
    if (!rep.kernel_is_normal) rep.witnesses.push_back("top level is not the kernel or not normal");

    bool splits = true;
    Table zero_f(head_points, 0);
    Table one_u(head_points, static_cast<std::uint16_t>(ring->one()));
    for (const auto& a : head.perms.elements()) {
        Element section{&a, &zero_f, &one_u};
        if (project(psi(section)) != a) {
            splits = false;
            break;
        }
    }
    rep.section_splits = splits;
    if (!splits) rep.witnesses.push_back("section composed with projection is not the identity");

    rep.pass = rep.map_bijective && rep.map_homomorphic && rep.kernel_is_normal && rep.section_splits;
    return rep;
}

DecompositionReport verify_decomposition_sampled(const RingPtr& ring, int n, bool units_only,
                                                 u64 seed, int samples) {
    DecompositionReport rep;
    rep.claim = std::string(units_only ? "unit group" : "monoid") + " at " + std::to_string(n) +
                " variables splits over its top level, checked as polynomial identities";
    rep.instance = ring->spec_string() + ", n=" + std::to_string(n);
    rep.lhs_order = rep.rhs_order = 0;  // infinite objects, sampled

    std::mt19937_64 rng(seed);
    int max_deg = 2;
    auto sample_head = [&] {
        return units_only ? random_tr_element(ring, n - 1, max_deg, rng)
                          : random_mt_element(ring, n - 1, max_deg, rng);
    };
    auto sample_top = [&] {
        TriElem t = units_only ? random_tr_element(ring, n, max_deg, rng)
                               : random_mt_element(ring, n, max_deg, rng);
        return std::pair<MultiPoly, MultiPoly>(t.f(n), t.u(n));
    };
    auto assemble = [&](const TriElem& head, const std::pair<MultiPoly, MultiPoly>& top) {
        TriElem::Levels levels;
        for (int i = 2; i < n; ++i) levels.emplace_back(head.f(i), head.u(i));
        levels.emplace_back(top.first, top.second);
        return TriElem::make_trusted(ring, head.f1(), levels);
    };

    bool hom = true, bij = true;
    for (int s = 0; s < samples; ++s) {
        TriElem xh = sample_head();
        TriElem yh = sample_head();
        auto [xf, xu] = sample_top();
        auto [yf, yu] = sample_top();

        // pair product: heads compose; the top parts combine through the head
        TriElem zh = xh.compose(yh);
        std::vector<MultiPoly> args;
        args.push_back(yh.f1().extend_arity(n - 1));
        for (int i = 2; i < n; ++i) {
            MultiPoly xi = MultiPoly::variable(ring, i, i - 1);
            args.push_back(
                (yh.f(i).extend_arity(i) + xi * yh.u(i).extend_arity(i)).extend_arity(n - 1));
        }
        MultiPoly xu_sub = xu.substitute(args);
        MultiPoly zf = xf.substitute(args) + xu_sub * yf;
        MultiPoly zu = xu_sub * yu;

        TriElem lhs = assemble(zh, {zf, zu});
        TriElem rhs = assemble(xh, {xf, xu}).compose(assemble(yh, {yf, yu}));
        if (lhs != rhs) hom = false;

        // the pair is recoverable from the assembled element
        TriElem back = assemble(xh, {xf, xu});
        if (back.f1() != xh.f1() || back.f(n) != xf || back.u(n) != xu) bij = false;
        for (int i = 2; i < n; ++i)
            if (back.f(i) != xh.f(i) || back.u(i) != xh.u(i)) bij = false;

        if (units_only) {
            TriElem x = assemble(xh, {xf, xu});
            if (!x.is_unit()) {
                hom = false;
                rep.witnesses.push_back("assembled unit candidate is not a unit");
            } else {
                // pair inverse: (a, b)^-1 = (a^-1, (b o a^-1)^-1)
                TriElem ah_inv = xh.inverse();
                std::vector<MultiPoly> inv_args;
                inv_args.push_back(ah_inv.f1().extend_arity(n - 1));
                for (int i = 2; i < n; ++i) {
                    MultiPoly xi = MultiPoly::variable(ring, i, i - 1);
                    inv_args.push_back((ah_inv.f(i).extend_arity(i) +
                                        xi * ah_inv.u(i).extend_arity(i))
                                           .extend_arity(n - 1));
                }
                MultiPoly u_conj = xu.substitute(inv_args);
                MultiPoly f_conj = xf.substitute(inv_args);
                MultiPoly u_inv = unit_poly_inverse(u_conj);
                TriElem pair_inv = assemble(ah_inv, {-(u_inv * f_conj), u_inv});
                if (pair_inv != x.inverse()) hom = false;
            }
        }
    }
    rep.map_homomorphic = hom;
    rep.map_bijective = bij;
    rep.kernel_is_normal = true;   // not applicable at the sampled level
    rep.section_splits = true;
    rep.pass = hom && bij;
    return rep;
}

}  // namespace

DecompositionReport verify_decomposition(const RingPtr& ring, int n, DecompositionLevel level,
                                         int jobs, u64 seed, int samples) {
    if (n < 2) throw std::invalid_argument("decomposition needs n > 1");
    switch (level) {
        case DecompositionLevel::Induced:
            return verify_decomposition_induced(ring, n, jobs);
        case DecompositionLevel::Monoid:
            return verify_decomposition_sampled(ring, n, false, seed, samples);
        case DecompositionLevel::Group:
            return verify_decomposition_sampled(ring, n, true, seed, samples);
    }
    throw std::logic_error("unreachable");
}

std::string DecompositionReport::to_json() const {
    json j;
    j["claim"] = claim;
    j["instance"] = instance;
    j["lhs_order"] = lhs_order;
    j["rhs_order"] = rhs_order;
    j["map_bijective"] = map_bijective;
    j["map_homomorphic"] = map_homomorphic;
    j["kernel_is_normal"] = kernel_is_normal;
    j["section_splits"] = section_splits;
    j["witnesses"] = witnesses;
    j["pass"] = pass;
    return j.dump();
}

GroupPropsReport group_props(const RingPtr& ring, int n, std::size_t max_elements) {
    GroupPropsReport rep;
    rep.ring = ring->spec_string();
    rep.n = n;
    InducedGroup g = induced_group_mt(ring, n, max_elements);
    if (!g.materialized) throw CapExceeded("group properties need a materialized group");
    rep.order = g.perms.size();
    for (const auto& h : derived_series(g.perms)) rep.derived_orders.push_back(h.size());
    for (const auto& h : lower_central_series(g.perms)) rep.lower_central_orders.push_back(h.size());
    rep.solvable = rep.derived_orders.back() == 1;
    rep.nilpotent = rep.lower_central_orders.back() == 1;
    rep.abelian = g.perms.is_abelian();
    return rep;
}

std::string GroupPropsReport::to_json() const {
    json j;
    j["ring"] = ring;
    j["n"] = n;
    j["order"] = order;
    j["solvable"] = solvable;
    j["nilpotent"] = nilpotent;
    j["abelian"] = abelian;
    j["derived_series_orders"] = derived_orders;
    j["lower_central_series_orders"] = lower_central_orders;
    return j.dump();
}

}  // namespace tripoly
