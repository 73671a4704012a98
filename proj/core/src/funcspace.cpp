#include "tripoly/funcspace.hpp"

#include <json.hpp>

#include <algorithm>
#include <set>
#include <tuple>
#include <random>
#include <unordered_set>

namespace tripoly {

using nlohmann::json;
using TableSet = std::unordered_set<Table, VecHash>;

Table to_table(const FuncTable& t) {
    Table out(t.values.size());
    for (std::size_t i = 0; i < t.values.size(); ++i) out[i] = static_cast<std::uint16_t>(t.values[i]);
    return out;
}

bool FuncSpace::contains(const Table& t) const {
    return std::binary_search(tables.begin(), tables.end(), t);
}

namespace {

FuncSpace finalize(RingPtr ring, int k, TableSet&& set) {
    FuncSpace space{std::move(ring), k, {set.begin(), set.end()}};
    std::sort(space.tables.begin(), space.tables.end());
    return space;
}

Table pointwise_mul(const Ring& r, const Table& a, const Table& b) {
    Table out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = static_cast<std::uint16_t>(r.mul(a[i], b[i]));
    return out;
}

Table pointwise_add(const Ring& r, const Table& a, const Table& b) {
    Table out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = static_cast<std::uint16_t>(r.add(a[i], b[i]));
    return out;
}

Table scaled(const Ring& r, int c, const Table& a) {
    Table out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = static_cast<std::uint16_t>(r.mul(c, a[i]));
    return out;
}

/// All distinct monomial functions x^e on R^k: closure of the constant one and
/// the projections under pointwise product.
std::vector<Table> monomial_functions(const RingPtr& ring, int k, std::size_t cap_points) {
    PointDomain dom(ring->size(), k, cap_points);
    std::vector<Table> seeds;
    seeds.push_back(Table(dom.total, static_cast<std::uint16_t>(ring->one())));
    for (int v = 0; v < k; ++v) {
        Table proj(dom.total);
        for (std::size_t p = 0; p < dom.total; ++p)
            proj[p] = static_cast<std::uint16_t>(dom.decode(p)[static_cast<std::size_t>(v)]);
        seeds.push_back(std::move(proj));
    }
    TableSet seen(seeds.begin(), seeds.end());
    std::vector<Table> all(seen.begin(), seen.end());
    std::vector<Table> frontier = all;
    while (!frontier.empty()) {
        std::vector<Table> next;
        for (const auto& f : frontier)
            for (const auto& g : all) {
                Table prod = pointwise_mul(*ring, f, g);
                if (seen.insert(prod).second) next.push_back(prod);
            }
        for (auto& t : next) all.push_back(std::move(t));
        frontier.clear();
        for (std::size_t i = all.size() - next.size(); i < all.size(); ++i) frontier.push_back(all[i]);
    }
    std::sort(all.begin(), all.end());
    return all;
}

// enumerated sets beyond this size exhaust memory long before they finish
constexpr std::size_t kSetCap = 1u << 20;

/// Additive closure of a generator list, starting from the zero function.
TableSet additive_span(const Ring& ring, std::size_t points, std::vector<Table> gens,
                       u64 shuffle_seed) {
    std::sort(gens.begin(), gens.end());
    gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
    if (shuffle_seed) {
        std::mt19937_64 rng(shuffle_seed);
        std::shuffle(gens.begin(), gens.end(), rng);
    }
    TableSet span;
    span.insert(Table(points, 0));
    std::vector<Table> frontier(span.begin(), span.end());
    while (!frontier.empty()) {
        std::vector<Table> next;
        for (const auto& f : frontier)
            for (const auto& g : gens) {
                Table sum = pointwise_add(ring, f, g);
                if (span.insert(sum).second) {
                    if (span.size() > kSetCap)
                        throw CapExceeded("function space exceeds " + std::to_string(kSetCap) +
                                          " elements");
                    next.push_back(std::move(sum));
                }
            }
        frontier = std::move(next);
    }
    return span;
}

}  // namespace

FuncSpace enumerate_poly_functions(const RingPtr& ring, int k, std::size_t cap_points,
                                   u64 shuffle_seed) {
    PointDomain dom(ring->size(), k, cap_points);
    std::vector<Table> monos = monomial_functions(ring, k, cap_points);
    std::vector<Table> gens;
    for (const auto& m : monos)
        for (std::size_t c = 1; c < ring->size(); ++c) gens.push_back(scaled(*ring, static_cast<int>(c), m));
    return finalize(ring, k, additive_span(*ring, dom.total, std::move(gens), shuffle_seed));
}

FuncSpace enumerate_unit_valued(const FuncSpace& space) {
    FuncSpace out{space.ring, space.k, {}};
    const Ring& r = *space.ring;
    for (const auto& t : space.tables) {
        bool ok = true;
        for (auto v : t)
            if (!r.is_unit(v)) {
                ok = false;
                break;
            }
        if (ok) out.tables.push_back(t);
    }
    return out;
}

FuncSpace enumerate_poly_permutations(const RingPtr& ring, std::size_t cap_points) {
    FuncSpace all = enumerate_poly_functions(ring, 1, cap_points);
    FuncSpace out{ring, 1, {}};
    for (const auto& t : all.tables) {
        std::vector<char> seen(ring->size(), 0);
        bool bij = true;
        for (auto v : t) {
            if (seen[v]) {
                bij = false;
                break;
            }
            seen[v] = 1;
        }
        if (bij) out.tables.push_back(t);
    }
    return out;
}

FuncSpace enumerate_unit_induced(const RingPtr& ring, int k, std::size_t cap_points) {
    PointDomain dom(ring->size(), k, cap_points);
    std::vector<Table> monos = monomial_functions(ring, k, cap_points);
    Table ones(dom.total, static_cast<std::uint16_t>(ring->one()));
    std::vector<Table> gens;
    for (const auto& m : monos) {
        if (m == ones) continue;  // the constant-one monomial is the x^0 case
        for (int nil : ring->nilpotents())
            if (nil != ring->zero()) gens.push_back(scaled(*ring, nil, m));
    }
    TableSet span = additive_span(*ring, dom.total, std::move(gens), 0);
    TableSet out;
    for (int c : ring->units())
        for (const auto& s : span) {
            Table t(dom.total);
            for (std::size_t p = 0; p < dom.total; ++p)
                t[p] = static_cast<std::uint16_t>(ring->add(c, s[p]));
            out.insert(std::move(t));
        }
    return finalize(ring, k, std::move(out));
}

namespace {

/// Distinct one-variable monomial function tables x^e for e >= from_exp.
/// The sequence of tables is eventually periodic; iteration stops when the
/// table of x^e repeats a previously seen state.
std::vector<Table> monomial_tables_from(const RingPtr& ring, int from_exp) {
    std::size_t n = ring->size();
    Table x(n);
    for (std::size_t a = 0; a < n; ++a) x[a] = static_cast<std::uint16_t>(a);
    Table cur(n, static_cast<std::uint16_t>(ring->one()));  // x^0
    TableSet seen_states;
    std::vector<Table> out;
    int e = 0;
    while (seen_states.insert(cur).second) {
        if (e >= from_exp) out.push_back(cur);
        cur = pointwise_mul(*ring, cur, x);
        ++e;
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace

FuncSpace enumerate_automorphism_induced(const RingPtr& ring, std::size_t cap_points) {
    PointDomain dom(ring->size(), 1, cap_points);
    std::vector<Table> gens;
    for (const auto& m : monomial_tables_from(ring, 2))
        for (int nil : ring->nilpotents())
            if (nil != ring->zero()) gens.push_back(scaled(*ring, nil, m));
    TableSet span = additive_span(*ring, dom.total, std::move(gens), 0);
    TableSet out;
    for (std::size_t a0 = 0; a0 < ring->size(); ++a0)
        for (int a1 : ring->units())
            for (const auto& s : span) {
                Table t(dom.total);
                for (std::size_t p = 0; p < dom.total; ++p)
                    t[p] = static_cast<std::uint16_t>(ring->add(
                        static_cast<int>(a0), ring->add(ring->mul(a1, static_cast<int>(p)), s[p])));
                out.insert(std::move(t));
            }
    return finalize(ring, 1, std::move(out));
}

bool nounitrep_check(const RingPtr& ring) {
    if (!ring->is_local() || ring->is_field())
        throw std::invalid_argument("check requires a local ring that is not a field");
    int q = ring->residue_field_size();
    MultiPoly x = MultiPoly::variable(ring, 1, 0);
    MultiPoly g = x.pow(q) - x + MultiPoly::constant(ring, 1, ring->one());
    Table t = to_table(g.func_of());
    return !enumerate_unit_induced(ring, 1).contains(t);
}

bool p_group_check(u64 count, int p) { return is_power_of(count, static_cast<u64>(p)); }

// --- witness-carrying one-variable representatives ---

std::vector<FuncRep> poly_function_representatives(const RingPtr& ring) {
    std::size_t n = ring->size();
    MultiPoly x = MultiPoly::variable(ring, 1, 0);
    // monomial tables with exponent witnesses, up to the first repeated state
    std::vector<std::pair<Table, int>> monos;
    Table xt(n);
    for (std::size_t a = 0; a < n; ++a) xt[a] = static_cast<std::uint16_t>(a);
    Table cur(n, static_cast<std::uint16_t>(ring->one()));
    TableSet seen_states;
    int e = 0;
    while (seen_states.insert(cur).second) {
        monos.emplace_back(cur, e);
        cur = pointwise_mul(*ring, cur, xt);
        ++e;
    }
    std::unordered_map<Table, MultiPoly, VecHash> span;
    span.emplace(Table(n, 0), MultiPoly::zero(ring, 1));
    std::vector<Table> frontier{Table(n, 0)};
    while (!frontier.empty()) {
        std::vector<Table> next;
        for (const auto& f : frontier)
            for (const auto& [m, exp] : monos)
                for (std::size_t c = 1; c < n; ++c) {
                    Table sum = pointwise_add(*ring, f, scaled(*ring, static_cast<int>(c), m));
                    if (span.count(sum)) continue;
                    span.emplace(sum, span.at(f) + MultiPoly::monomial(ring, 1, {exp},
                                                                       static_cast<int>(c)));
                    next.push_back(std::move(sum));
                }
        frontier = std::move(next);
    }
    std::vector<FuncRep> out;
    out.reserve(span.size());
    for (auto& [t, p] : span) out.push_back({t, p});
    std::sort(out.begin(), out.end(), [](const FuncRep& a, const FuncRep& b) { return a.table < b.table; });
    return out;
}

std::vector<PairRep> poly_pair_representatives(const RingPtr& ring) {
    std::size_t n = ring->size();
    int chr = ring->characteristic();
    Table xt(n);
    for (std::size_t a = 0; a < n; ++a) xt[a] = static_cast<std::uint16_t>(a);

    // states (x^{e-1} table, x^e table, e mod char) walk a rho shape; the pair
    // generator of x^e is (x^e, e * x^{e-1})
    struct Gen {
        Table fn, deriv;
        int exp;
    };
    std::vector<Gen> gens;
    std::set<std::tuple<Table, Table, int>> seen_states;
    Table prev(n, 0);  // unused at e = 0
    Table cur(n, static_cast<std::uint16_t>(ring->one()));
    int e = 0;
    while (seen_states.emplace(prev, cur, e % chr).second) {
        Table deriv(n, 0);
        if (e > 0) deriv = scaled(*ring, ring->from_int(e), prev);
        gens.push_back({cur, deriv, e});
        prev = cur;
        cur = pointwise_mul(*ring, cur, xt);
        ++e;
    }

    using Key = std::pair<Table, Table>;
    std::map<Key, MultiPoly> span;
    span.emplace(Key{Table(n, 0), Table(n, 0)}, MultiPoly::zero(ring, 1));
    std::vector<Key> frontier{{Table(n, 0), Table(n, 0)}};
    while (!frontier.empty()) {
        std::vector<Key> next;
        for (const auto& f : frontier)
            for (const auto& g : gens)
                for (std::size_t c = 1; c < n; ++c) {
                    Key sum{pointwise_add(*ring, f.first, scaled(*ring, static_cast<int>(c), g.fn)),
                            pointwise_add(*ring, f.second, scaled(*ring, static_cast<int>(c), g.deriv))};
                    if (span.count(sum)) continue;
                    span.emplace(sum, span.at(f) + MultiPoly::monomial(ring, 1, {g.exp},
                                                                       static_cast<int>(c)));
                    next.push_back(std::move(sum));
                }
        frontier = std::move(next);
    }
    std::vector<PairRep> out;
    out.reserve(span.size());
    for (auto& [k, p] : span) out.push_back({k.first, k.second, p});
    return out;
}

// --- induced permutation groups ---

u64 mt_order_formula(const RingPtr& ring, int n) {
    u64 order = enumerate_poly_permutations(ring).size();
    for (int i = 1; i < n; ++i) {
        FuncSpace f = enumerate_poly_functions(ring, i);
        FuncSpace fu = enumerate_unit_valued(f);
        order = checked_mul(order, checked_mul(f.size(), fu.size()));
    }
    return order;
}

namespace {

/// Expands component tuples (F1; (F_i, U_i)) into permutations of R^n.
/// first[j], second[j] index into the level spaces for level j+2.
InducedGroup build_induced(const RingPtr& ring, int n, const FuncSpace& level1,
                           const std::vector<FuncSpace>& fs, const std::vector<FuncSpace>& us,
                           std::size_t max_elements) {
    InducedGroup out{ring, n, 0, false, {}};
    u64 order = level1.size();
    for (int i = 0; i + 2 <= n; ++i)
        order = checked_mul(order, checked_mul(fs[static_cast<std::size_t>(i)].size(),
                                               us[static_cast<std::size_t>(i)].size()));
    out.order = order;
    if (order > max_elements) return out;

    PointDomain dom(ring->size(), n, 65536);
    std::size_t rsize = ring->size();
    // strides for prefix flats: prefix of length L at point flat is flat / rsize^{n-L}
    std::vector<std::size_t> prefix_div(static_cast<std::size_t>(n) + 1, 1);
    for (int len = n - 1; len >= 0; --len)
        prefix_div[static_cast<std::size_t>(len)] =
            prefix_div[static_cast<std::size_t>(len) + 1] * rsize;

    // tuple slots: (F1, F_2, U_2, F_3, U_3, ...)
    std::vector<std::size_t> limits{level1.size()};
    for (int i = 2; i <= n; ++i) {
        limits.push_back(fs[static_cast<std::size_t>(i - 2)].size());
        limits.push_back(us[static_cast<std::size_t>(i - 2)].size());
    }
    std::vector<std::size_t> pick(limits.size(), 0);
    std::vector<Perm> elems;
    elems.reserve(static_cast<std::size_t>(order));
    while (true) {
        const Table& f1 = level1.tables[pick[0]];
        Perm table(dom.total);
        for (std::size_t flat = 0; flat < dom.total; ++flat) {
            std::size_t img = f1[flat / prefix_div[1]];
            for (int i = 2; i <= n; ++i) {
                const Table& fi =
                    fs[static_cast<std::size_t>(i - 2)].tables[pick[static_cast<std::size_t>(2 * i - 3)]];
                const Table& ui =
                    us[static_cast<std::size_t>(i - 2)].tables[pick[static_cast<std::size_t>(2 * i - 2)]];
                std::size_t pre = flat / prefix_div[static_cast<std::size_t>(i)];
                std::size_t ai = pre % rsize;
                std::size_t pre_prev = pre / rsize;
                int comp = ring->add(fi[pre_prev], ring->mul(static_cast<int>(ai), ui[pre_prev]));
                img = img * rsize + static_cast<std::size_t>(comp);
            }
            table[flat] = static_cast<std::uint16_t>(img);
        }
        elems.push_back(std::move(table));

        std::size_t slot = 0;
        for (; slot < pick.size(); ++slot) {
            if (++pick[slot] < limits[slot]) break;
            pick[slot] = 0;
        }
        if (slot == pick.size()) break;
    }
    if (elems.size() != order) throw std::logic_error("component tuples did not expand bijectively");
    for (const auto& t : elems)
        if (!perm_is_bijection(t))
            throw std::logic_error("a component tuple induced a non-bijective map");
    out.perms = PermGroup::from_elements(dom.total, std::move(elems));
    if (out.perms.size() != order)
        throw std::logic_error("distinct component tuples induced equal permutations");
    out.materialized = true;
    return out;
}

}  // namespace

InducedGroup induced_group_mt(const RingPtr& ring, int n, std::size_t max_elements) {
    FuncSpace level1 = enumerate_poly_permutations(ring);
    std::vector<FuncSpace> fs, us;
    for (int i = 1; i < n; ++i) {
        fs.push_back(enumerate_poly_functions(ring, i));
        us.push_back(enumerate_unit_valued(fs.back()));
    }
    return build_induced(ring, n, level1, fs, us, max_elements);
}

InducedGroup induced_group_tr(const RingPtr& ring, int n, std::size_t max_elements) {
    FuncSpace level1 = enumerate_automorphism_induced(ring);
    std::vector<FuncSpace> fs, us;
    for (int i = 1; i < n; ++i) {
        fs.push_back(enumerate_poly_functions(ring, i));
        us.push_back(enumerate_unit_induced(ring, i));
    }
    return build_induced(ring, n, level1, fs, us, max_elements);
}

// --- reports ---

OrderReport verify_order_formula(const RingPtr& ring, int n, bool materialize, bool check_closure,
                                 int jobs) {
    OrderReport rep;
    rep.ring = ring->spec_string();
    rep.n = n;
    rep.perm_count = enumerate_poly_permutations(ring).size();
    u64 formula = rep.perm_count;
    for (int i = 1; i < n; ++i) {
        FuncSpace f = enumerate_poly_functions(ring, i);
        FuncSpace fu = enumerate_unit_valued(f);
        rep.func_counts.push_back(f.size());
        rep.unit_func_counts.push_back(fu.size());
        formula = checked_mul(formula, checked_mul(f.size(), fu.size()));
    }
    rep.formula = formula;
    if (materialize) {
        InducedGroup g = induced_group_mt(ring, n);
        if (g.materialized) {
            rep.materialized = g.perms.size();
            if (check_closure) {
                if (!g.perms.closed_under_composition(jobs))
                    throw std::logic_error("materialized group is not closed under composition");
                rep.closure_checked = true;
            }
            rep.match = rep.materialized == rep.formula;
            return rep;
        }
    }
    rep.match = true;  // formula-only mode has nothing to compare
    return rep;
}

std::string OrderReport::to_json() const {
    json j;
    j["ring"] = ring;
    j["n_or_k"] = n;
    j["counts"] = {{"perm", perm_count},
                   {"func", func_counts},
                   {"unit_func", unit_func_counts},
                   {"materialized", materialized}};
    j["formula"] = {{"order", formula}};
    j["closure_checked"] = closure_checked;
    j["match"] = match;
    return j.dump();
}

RatioReport verify_counting_ratios(const RingPtr& ring, int k) {
    if (!ring->is_local()) throw std::invalid_argument("counting ratios require a local ring");
    RatioReport rep;
    rep.ring = ring->spec_string();
    rep.k = k;
    rep.q = ring->residue_field_size();
    FuncSpace f = enumerate_poly_functions(ring, k);
    FuncSpace fu = enumerate_unit_valued(f);
    rep.func_count = f.size();
    rep.unit_func_count = fu.size();
    u64 q = static_cast<u64>(rep.q);
    u64 qk = checked_pow(q, static_cast<u64>(k));
    rep.unit_ratio_exact = checked_mul(rep.unit_func_count, checked_pow(q, qk)) ==
                           checked_mul(rep.func_count, checked_pow(q - 1, qk));
    if (k == 1) {
        rep.perm_count = enumerate_poly_permutations(ring).size();
        u64 qfact = 1;
        for (u64 i = 2; i <= q; ++i) qfact = checked_mul(qfact, i);
        u64 rhs = checked_mul(qfact, checked_pow(q - 1, q));
        u64 q2q = checked_pow(q, 2 * q);
        rep.printed_orientation_matches =
            checked_mul(rep.func_count, q2q) == checked_mul(rep.perm_count, rhs);
        rep.reversed_orientation_matches =
            checked_mul(rep.perm_count, q2q) == checked_mul(rep.func_count, rhs);
    }
    return rep;
}

std::string RatioReport::to_json() const {
    json j;
    j["ring"] = ring;
    j["n_or_k"] = k;
    j["counts"] = {{"func", func_count}, {"unit_func", unit_func_count}, {"perm", perm_count}};
    j["formula"] = {{"q", q},
                    {"unit_ratio", "(q-1)^(q^k) / q^(q^k)"},
                    {"perm_ratio", "q!(q-1)^q / q^(2q)"}};
    j["match"] = unit_ratio_exact;
    j["unit_ratio_exact"] = unit_ratio_exact;
    if (k == 1) {
        j["perm_ratio"] = {{"printed_orientation_func_over_perm", printed_orientation_matches},
                           {"reversed_orientation_perm_over_func", reversed_orientation_matches},
                           {"printed_orientation_flagged",
                            printed_orientation_matches != reversed_orientation_matches}};
    }
    return j.dump();
}

}  // namespace tripoly
