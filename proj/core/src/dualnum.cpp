#include "tripoly/dualnum.hpp"

#include <json.hpp>

namespace tripoly {

using nlohmann::json;

DualPoly DualPoly::make(RingPtr base, int n, std::vector<MultiPoly> comps) {
    if (n < 1) throw std::invalid_argument("need at least one dual generator");
    if (static_cast<int>(comps.size()) != n + 1)
        throw std::invalid_argument("expected " + std::to_string(n + 1) + " components");
    for (const auto& c : comps) {
        if (c.ring().get() != base.get()) throw RingMismatch("component over a different ring");
        if (c.arity() != 1) throw std::invalid_argument("components must have one variable");
    }
    return DualPoly{std::move(base), n, std::move(comps)};
}

std::string DualPoly::str() const {
    std::string out = comps[0].str();
    for (int i = 1; i <= n; ++i) {
        out += " + (" + comps[static_cast<std::size_t>(i)].str() + ")*a" + std::to_string(i);
    }
    return out;
}

std::string DualPoly::to_json() const {
    json j;
    j["base_ring"] = base->spec_string();
    j["n"] = n;
    j["components"] = json::array();
    for (const auto& c : comps) j["components"].push_back(c.str());
    return j.dump();
}

DualPoly DualPoly::from_json(const std::string& text) {
    json j = json::parse(text);
    RingPtr base = Ring::make(j.at("base_ring").get<std::string>());
    int n = j.at("n").get<int>();
    std::vector<MultiPoly> comps;
    for (const auto& c : j.at("components"))
        comps.push_back(MultiPoly::parse(base, 1, c.get<std::string>()));
    return make(std::move(base), n, std::move(comps));
}

RingPtr dual_ring(const RingPtr& base, int n) {
    RingSpec spec;
    spec.kind = RingSpec::Kind::Dual;
    spec.degree = n;
    spec.parts.push_back(base->spec());
    return Ring::make(spec);
}

DualPoly dual_eval(const DualPoly& f, const DualPoly& g) {
    if (f.base.get() != g.base.get() || f.n != g.n)
        throw RingMismatch("dual polynomials over different extensions");
    MultiPoly comp0 = f.comps[0].substitute({g.comps[0]});
    MultiPoly deriv_at = f.comps[0].derivative(0).substitute({g.comps[0]});
    std::vector<MultiPoly> comps{comp0};
    for (int i = 1; i <= f.n; ++i)
        comps.push_back(g.comps[static_cast<std::size_t>(i)] * deriv_at +
                        f.comps[static_cast<std::size_t>(i)].substitute({g.comps[0]}));
    return DualPoly::make(f.base, f.n, std::move(comps));
}

MultiPoly to_ring_poly(const DualPoly& f, const RingPtr& dual) {
    if (dual->base_ring().get() != f.base.get())
        throw RingMismatch("dual ring does not extend the base of the polynomial");
    MultiPoly out = MultiPoly::zero(dual, 1);
    int max_deg = 0;
    for (const auto& c : f.comps) max_deg = std::max(max_deg, c.total_degree());
    for (int d = 0; d <= max_deg; ++d) {
        std::vector<int> digits(static_cast<std::size_t>(f.n) + 1);
        for (int i = 0; i <= f.n; ++i)
            digits[static_cast<std::size_t>(i)] = f.comps[static_cast<std::size_t>(i)].coefficient({d});
        int coeff = dual->from_components(digits);
        out = out + MultiPoly::monomial(dual, 1, {d}, coeff);
    }
    return out;
}

DualPoly from_ring_poly(const MultiPoly& p, const RingPtr& base, int n) {
    RingPtr dual = p.ring();
    if (dual->base_ring().get() != base.get() || dual->spec().kind != RingSpec::Kind::Dual)
        throw RingMismatch("polynomial is not over a dual extension of the base");
    std::vector<MultiPoly> comps(static_cast<std::size_t>(n) + 1, MultiPoly::zero(base, 1));
    for (const auto& [e, c] : p.terms()) {
        std::vector<int> digits = dual->components(c);
        for (int i = 0; i <= n; ++i)
            comps[static_cast<std::size_t>(i)] =
                comps[static_cast<std::size_t>(i)] +
                MultiPoly::monomial(base, 1, e, digits[static_cast<std::size_t>(i)]);
    }
    return DualPoly::make(base, n, std::move(comps));
}

FuncTable induced_on_dual(const DualPoly& f) {
    RingPtr dual = dual_ring(f.base, f.n);
    return to_ring_poly(f, dual).func_of();
}

bool is_perm_dual(const DualPoly& f) {
    return is_permutation_poly(f.comps[0]) && is_unit_valued(f.comps[0].derivative(0));
}

bool is_perm_dual_bruteforce(const DualPoly& f) { return induced_on_dual(f).is_bijection(); }

bool equiv_dual(const DualPoly& f, const DualPoly& g) {
    if (f.base.get() != g.base.get() || f.n != g.n)
        throw RingMismatch("dual polynomials over different extensions");
    for (int i = 0; i <= f.n; ++i)
        if (!func_equiv(f.comps[static_cast<std::size_t>(i)], g.comps[static_cast<std::size_t>(i)]))
            return false;
    return func_equiv(f.comps[0].derivative(0), g.comps[0].derivative(0));
}

bool equiv_dual_bruteforce(const DualPoly& f, const DualPoly& g) {
    return induced_on_dual(f) == induced_on_dual(g);
}

TriElem embed_psi(const DualPoly& f) {
    if (!is_perm_dual(f))
        throw MembershipViolation(1, "dual polynomial does not permute the dual ring");
    MultiPoly deriv = f.comps[0].derivative(0);
    TriElem::Levels levels;
    for (int i = 2; i <= f.n + 1; ++i)
        levels.emplace_back(f.comps[static_cast<std::size_t>(i - 1)].extend_arity(i - 1),
                            deriv.extend_arity(i - 1));
    return TriElem::make(f.base, f.comps[0], std::move(levels));
}

std::vector<int> embed_phi(const DualPoly& f) { return embed_psi(f).perm_table(); }

}  // namespace tripoly
