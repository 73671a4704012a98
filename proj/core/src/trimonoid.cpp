#include "tripoly/trimonoid.hpp"

#include <json.hpp>

namespace tripoly {

using nlohmann::json;

// --- VecPoly ---

std::vector<int> VecPoly::apply(const std::vector<int>& point) const {
    std::vector<int> out(comps.size());
    for (std::size_t i = 0; i < comps.size(); ++i) out[i] = comps[i].evaluate(point);
    return out;
}

VecPoly VecPoly::parse(RingPtr ring, int n, const std::string& text) {
    std::size_t lo = text.find_first_not_of(" \t");
    std::size_t hi = text.find_last_not_of(" \t");
    if (lo == std::string::npos || text[lo] != '(' || text[hi] != ')')
        throw ParseError("vector polynomial must be parenthesized: " + text);
    std::string body = text.substr(lo + 1, hi - lo - 1);
    std::vector<std::string> pieces;
    int depth = 0;
    std::string cur;
    for (char c : body) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == ',' && depth == 0) {
            pieces.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    pieces.push_back(cur);
    if (static_cast<int>(pieces.size()) != n)
        throw ParseError("expected " + std::to_string(n) + " components, got " +
                         std::to_string(pieces.size()));
    VecPoly v{ring, n, {}};
    for (const auto& p : pieces) v.comps.push_back(MultiPoly::parse(ring, n, p));
    return v;
}

std::string VecPoly::str() const {
    std::string out = "(";
    for (std::size_t i = 0; i < comps.size(); ++i) {
        if (i) out += ", ";
        out += comps[i].str();
    }
    return out + ")";
}

std::string VecPoly::to_json() const {
    json j;
    j["ring"] = ring->spec_string();
    j["n"] = n;
    j["components"] = json::array();
    for (const auto& c : comps) j["components"].push_back(c.str());
    return j.dump();
}

VecPoly VecPoly::from_json(const std::string& text) {
    json j = json::parse(text);
    RingPtr ring = Ring::make(j.at("ring").get<std::string>());
    int n = j.at("n").get<int>();
    VecPoly v{ring, n, {}};
    for (const auto& c : j.at("components"))
        v.comps.push_back(MultiPoly::parse(ring, n, c.get<std::string>()));
    if (static_cast<int>(v.comps.size()) != n) throw ParseError("component count mismatch");
    return v;
}

// --- TriElem ---

TriElem TriElem::make_trusted(RingPtr ring, MultiPoly f1, Levels levels) {
    int n = static_cast<int>(levels.size()) + 1;
    if (f1.arity() != 1) throw std::invalid_argument("f1 must have one variable");
    for (int i = 2; i <= n; ++i) {
        const auto& [fi, ui] = levels[static_cast<std::size_t>(i - 2)];
        if (fi.arity() != i - 1 || ui.arity() != i - 1)
            throw std::invalid_argument("level " + std::to_string(i) + " components must have " +
                                        std::to_string(i - 1) + " variables");
        if (fi.ring().get() != ring.get() || ui.ring().get() != ring.get())
            throw RingMismatch("level components over a different ring");
    }
    if (f1.ring().get() != ring.get()) throw RingMismatch("f1 over a different ring");
    return TriElem(std::move(ring), n, std::move(f1), std::move(levels));
}

TriElem TriElem::make(RingPtr ring, MultiPoly f1, Levels levels) {
    TriElem t = make_trusted(std::move(ring), std::move(f1), std::move(levels));
    if (!is_permutation_poly(t.f1_))
        throw MembershipViolation(1, "f1 = " + t.f1_.str() + " is not a permutation polynomial");
    for (int i = 2; i <= t.n_; ++i)
        if (!is_unit_valued(t.u(i)))
            throw MembershipViolation(i, "u" + std::to_string(i) + " = " + t.u(i).str() +
                                             " is not unit-valued");
    return t;
}

TriElem TriElem::identity(const RingPtr& ring, int n) {
    Levels levels;
    for (int i = 2; i <= n; ++i)
        levels.emplace_back(MultiPoly::zero(ring, i - 1), MultiPoly::constant(ring, i - 1, ring->one()));
    return make_trusted(ring, MultiPoly::variable(ring, 1, 0), std::move(levels));
}

TriElem TriElem::one_level(const RingPtr& ring, int n, MultiPoly f) {
    TriElem t = identity(ring, n);
    if (!is_permutation_poly(f))
        throw MembershipViolation(1, "f1 = " + f.str() + " is not a permutation polynomial");
    t.f1_ = std::move(f);
    return t;
}

TriElem TriElem::level(const RingPtr& ring, int n, int i, MultiPoly u, MultiPoly f) {
    if (i < 2 || i > n) throw std::invalid_argument("level index out of range");
    TriElem t = identity(ring, n);
    if (!is_unit_valued(u))
        throw MembershipViolation(i, "u" + std::to_string(i) + " = " + u.str() + " is not unit-valued");
    t.levels_[static_cast<std::size_t>(i - 2)] = {std::move(f), std::move(u)};
    return t;
}

VecPoly TriElem::to_vecpoly() const {
    VecPoly v{ring_, n_, {}};
    v.comps.push_back(f1_.extend_arity(n_));
    for (int i = 2; i <= n_; ++i) {
        MultiPoly xi = MultiPoly::variable(ring_, n_, i - 1);
        v.comps.push_back(f(i).extend_arity(n_) + xi * u(i).extend_arity(n_));
    }
    return v;
}

TriElem TriElem::from_vecpoly(const VecPoly& v) {
    if (static_cast<int>(v.comps.size()) != v.n) throw NotTriangular("component count mismatch");
    for (const auto& c : v.comps)
        if (c.arity() != v.n) throw NotTriangular("component arity mismatch");

    MultiPoly f1 = MultiPoly::zero(v.ring, 1);
    Levels levels;
    for (int i = 1; i <= v.n; ++i) {
        const MultiPoly& comp = v.comps[static_cast<std::size_t>(i - 1)];
        MultiPoly fi = MultiPoly::zero(v.ring, v.n);
        MultiPoly ui = MultiPoly::zero(v.ring, v.n);
        for (const auto& [e, c] : comp.terms()) {
            for (int j = i; j < v.n; ++j)
                if (e[static_cast<std::size_t>(j)] != 0)
                    throw NotTriangular("component " + std::to_string(i) + " uses x" +
                                        std::to_string(j + 1));
            int self = i == 1 ? 0 : e[static_cast<std::size_t>(i - 1)];
            if (i > 1 && self > 1)
                throw NotTriangular("component " + std::to_string(i) + " is nonlinear in x" +
                                    std::to_string(i));
            if (self == 1) {
                auto reduced = e;
                reduced[static_cast<std::size_t>(i - 1)] = 0;
                ui = ui + MultiPoly::monomial(v.ring, v.n, reduced, c);
            } else {
                fi = fi + MultiPoly::monomial(v.ring, v.n, e, c);
            }
        }
        if (i == 1) {
            f1 = comp.restrict_arity(1);
        } else {
            levels.emplace_back(fi.restrict_arity(i - 1), ui.restrict_arity(i - 1));
        }
    }
    return make(v.ring, std::move(f1), std::move(levels));
}

TriElem TriElem::compose(const TriElem& inner) const {
    if (ring_.get() != inner.ring_.get() || n_ != inner.n_)
        throw RingMismatch("composition of incompatible triangular elements");

    MultiPoly new_f1 = f1_.substitute({inner.f1_});
    Levels new_levels;

    // components of the inner map below the current level, accumulated once
    std::vector<MultiPoly> inner_comps;
    inner_comps.push_back(inner.f1_);
    for (int i = 2; i <= n_; ++i) {
        int arity = i - 1;
        std::vector<MultiPoly> args;
        args.reserve(static_cast<std::size_t>(arity));
        for (int j = 0; j < arity; ++j)
            args.push_back(inner_comps[static_cast<std::size_t>(j)].extend_arity(arity));
        MultiPoly gi_sub = f(i).substitute(args);
        MultiPoly wi_sub = u(i).substitute(args);
        new_levels.emplace_back(gi_sub + wi_sub * inner.f(i), inner.u(i) * wi_sub);
        if (i < n_) {
            MultiPoly xi = MultiPoly::variable(ring_, i, i - 1);
            inner_comps.push_back(inner.f(i).extend_arity(i) + xi * inner.u(i).extend_arity(i));
        }
    }
    return make_trusted(ring_, std::move(new_f1), std::move(new_levels));
}

bool TriElem::is_unit() const {
    if (!is_automorphism(f1_)) return false;
    for (int i = 2; i <= n_; ++i)
        if (!is_unit_poly(u(i))) return false;
    return true;
}

TriElem TriElem::inverse() const {
    if (!is_unit()) throw NotAUnit("triangular element is not invertible");
    // (prod_{i=n..2} (i: u_i^{-1}; -u_i^{-1} f_i)) (1: f1^{-1})
    TriElem acc = identity(ring_, n_);
    for (int i = n_; i >= 2; --i) {
        MultiPoly uinv = unit_poly_inverse(u(i));
        acc = acc.compose(level(ring_, n_, i, uinv, -(uinv * f(i))));
    }
    return acc.compose(one_level(ring_, n_, automorphism_inverse(f1_)));
}

std::vector<int> TriElem::apply(const std::vector<int>& point) const {
    if (static_cast<int>(point.size()) != n_) throw std::invalid_argument("point arity mismatch");
    std::vector<int> out(static_cast<std::size_t>(n_));
    out[0] = f1_.evaluate({point[0]});
    std::vector<int> prefix;
    for (int i = 2; i <= n_; ++i) {
        prefix.assign(point.begin(), point.begin() + (i - 1));
        int base = f(i).evaluate(prefix);
        int scale = u(i).evaluate(prefix);
        out[static_cast<std::size_t>(i - 1)] =
            ring_->add(base, ring_->mul(point[static_cast<std::size_t>(i - 1)], scale));
    }
    return out;
}

std::vector<int> TriElem::solve_preimage(const std::vector<int>& target) const {
    if (static_cast<int>(target.size()) != n_) throw std::invalid_argument("target arity mismatch");
    std::vector<int> pre(static_cast<std::size_t>(n_));
    int a1 = -1;
    for (std::size_t a = 0; a < ring_->size(); ++a)
        if (f1_.evaluate({static_cast<int>(a)}) == target[0]) {
            a1 = static_cast<int>(a);
            break;
        }
    if (a1 < 0) throw std::logic_error("f1 is not surjective; invalid triangular element");
    pre[0] = a1;
    std::vector<int> prefix;
    for (int i = 2; i <= n_; ++i) {
        prefix.assign(pre.begin(), pre.begin() + (i - 1));
        int rhs = ring_->sub(target[static_cast<std::size_t>(i - 1)], f(i).evaluate(prefix));
        int scale = ring_->unit_inverse(u(i).evaluate(prefix));
        pre[static_cast<std::size_t>(i - 1)] = ring_->mul(rhs, scale);
    }
    return pre;
}

bool TriElem::equiv(const TriElem& o) const {
    if (ring_.get() != o.ring_.get() || n_ != o.n_)
        throw RingMismatch("equivalence of incompatible triangular elements");
    if (!func_equiv(f1_, o.f1_)) return false;
    for (int i = 2; i <= n_; ++i)
        if (!func_equiv(f(i), o.f(i)) || !func_equiv(u(i), o.u(i))) return false;
    return true;
}

TriElem TriElem::embed(int k) const {
    if (k <= n_) throw std::invalid_argument("embedding target must exceed current size");
    Levels levels = levels_;
    for (int i = n_ + 1; i <= k; ++i)
        levels.emplace_back(MultiPoly::zero(ring_, i - 1),
                            MultiPoly::constant(ring_, i - 1, ring_->one()));
    return make_trusted(ring_, f1_, std::move(levels));
}

std::vector<int> TriElem::perm_table(std::size_t cap_points) const {
    PointDomain dom(ring_->size(), n_, cap_points);
    std::vector<int> table(dom.total);
    std::vector<int> pt(static_cast<std::size_t>(n_), 0);
    std::size_t flat = 0;
    do {
        table[flat++] = static_cast<int>(dom.encode(apply(pt)));
    } while (PointDomain::next_point(pt, ring_->size()));
    return table;
}

std::string TriElem::str() const {
    std::string out = "(1: " + f1_.str() + ")";
    for (int i = 2; i <= n_; ++i)
        out += " (" + std::to_string(i) + ": " + u(i).str() + "; " + f(i).str() + ")";
    return out;
}

std::string TriElem::to_json() const {
    json j;
    j["ring"] = ring_->spec_string();
    j["n"] = n_;
    j["f1"] = f1_.str();
    j["levels"] = json::array();
    for (int i = 2; i <= n_; ++i) j["levels"].push_back({{"f", f(i).str()}, {"u", u(i).str()}});
    return j.dump();
}

TriElem TriElem::from_json(const std::string& text) {
    json j = json::parse(text);
    RingPtr ring = Ring::make(j.at("ring").get<std::string>());
    int n = j.at("n").get<int>();
    MultiPoly f1 = MultiPoly::parse(ring, 1, j.at("f1").get<std::string>());
    Levels levels;
    int i = 2;
    for (const auto& level : j.at("levels")) {
        levels.emplace_back(MultiPoly::parse(ring, i - 1, level.at("f").get<std::string>()),
                            MultiPoly::parse(ring, i - 1, level.at("u").get<std::string>()));
        ++i;
    }
    if (static_cast<int>(levels.size()) != n - 1) throw ParseError("level count mismatch");
    return make(std::move(ring), std::move(f1), std::move(levels));
}

// --- random elements ---

MultiPoly random_poly_of_degree(const RingPtr& ring, int arity, int max_deg, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> coeff(0, static_cast<int>(ring->size()) - 1);
    MultiPoly p = MultiPoly::zero(ring, arity);
    MultiPoly::Exponents e(static_cast<std::size_t>(arity), 0);
    while (true) {
        int d = 0;
        for (int x : e) d += x;
        if (d <= max_deg) p = p + MultiPoly::monomial(ring, arity, e, coeff(rng));
        std::size_t i = 0;
        for (; i < e.size(); ++i) {
            if (++e[i] <= max_deg) break;
            e[i] = 0;
        }
        if (i == e.size()) break;
    }
    return p;
}

TriElem random_mt_element(const RingPtr& ring, int n, int max_deg, std::mt19937_64& rng) {
    MultiPoly f1 = MultiPoly::zero(ring, 1);
    do {
        f1 = random_poly_of_degree(ring, 1, max_deg, rng);
    } while (!is_permutation_poly(f1));
    TriElem::Levels levels;
    for (int i = 2; i <= n; ++i) {
        MultiPoly ui = MultiPoly::zero(ring, i - 1);
        do {
            ui = random_poly_of_degree(ring, i - 1, max_deg, rng);
        } while (!is_unit_valued(ui));
        levels.emplace_back(random_poly_of_degree(ring, i - 1, max_deg, rng), std::move(ui));
    }
    return TriElem::make_trusted(ring, std::move(f1), std::move(levels));
}

namespace {

int random_of(const std::vector<int>& pool, std::mt19937_64& rng) {
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    return pool[pick(rng)];
}

MultiPoly random_unit_poly(const RingPtr& ring, int arity, int max_deg, std::mt19937_64& rng) {
    MultiPoly p = MultiPoly::constant(ring, arity, random_of(ring->units(), rng));
    MultiPoly::Exponents e(static_cast<std::size_t>(arity), 0);
    while (true) {
        std::size_t i = 0;
        for (; i < e.size(); ++i) {
            if (++e[i] <= max_deg) break;
            e[i] = 0;
        }
        if (i == e.size()) break;
        int d = 0;
        for (int x : e) d += x;
        if (d == 0 || d > max_deg) continue;
        p = p + MultiPoly::monomial(ring, arity, e, random_of(ring->nilpotents(), rng));
    }
    return p;
}

}  // namespace

TriElem random_tr_element(const RingPtr& ring, int n, int max_deg, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> any(0, static_cast<int>(ring->size()) - 1);
    MultiPoly f1 = MultiPoly::constant(ring, 1, any(rng)) +
                   MultiPoly::monomial(ring, 1, {1}, random_of(ring->units(), rng));
    for (int d = 2; d <= max_deg; ++d)
        f1 = f1 + MultiPoly::monomial(ring, 1, {d}, random_of(ring->nilpotents(), rng));
    TriElem::Levels levels;
    for (int i = 2; i <= n; ++i)
        levels.emplace_back(random_poly_of_degree(ring, i - 1, max_deg, rng),
                            random_unit_poly(ring, i - 1, max_deg, rng));
    return TriElem::make_trusted(ring, std::move(f1), std::move(levels));
}

}  // namespace tripoly
