#include "tripoly/multipoly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace tripoly {

PointDomain::PointDomain(std::size_t ring_size, int arity, std::size_t cap)
    : ring_size(ring_size), arity(arity) {
    u64 t = 1;
    for (int i = 0; i < arity; ++i) {
        t = checked_mul(t, ring_size);
        if (t > cap)
            throw CapExceeded("domain of " + std::to_string(ring_size) + "^" + std::to_string(arity) +
                              " points exceeds cap " + std::to_string(cap));
    }
    total = static_cast<std::size_t>(t);
}

std::vector<int> PointDomain::decode(std::size_t flat) const {
    std::vector<int> pt(static_cast<std::size_t>(arity));
    for (int i = arity - 1; i >= 0; --i) {
        pt[static_cast<std::size_t>(i)] = static_cast<int>(flat % ring_size);
        flat /= ring_size;
    }
    return pt;
}

std::size_t PointDomain::encode(const std::vector<int>& point) const {
    std::size_t flat = 0;
    for (int c : point) flat = flat * ring_size + static_cast<std::size_t>(c);
    return flat;
}

bool PointDomain::next_point(std::vector<int>& point, std::size_t ring_size) {
    for (std::size_t i = point.size(); i-- > 0;) {
        if (static_cast<std::size_t>(++point[i]) < ring_size) return true;
        point[i] = 0;
    }
    return false;
}

bool FuncTable::is_bijection() const {
    if (arity != 1 || values.size() != ring->size()) return false;
    std::vector<char> seen(values.size(), 0);
    for (int v : values) {
        if (seen[static_cast<std::size_t>(v)]) return false;
        seen[static_cast<std::size_t>(v)] = 1;
    }
    return true;
}

bool FuncTable::all_units() const {
    for (int v : values)
        if (!ring->is_unit(v)) return false;
    return true;
}

// --- construction ---

MultiPoly::MultiPoly(RingPtr ring, int arity) : ring_(std::move(ring)), arity_(arity) {
    if (arity_ < 0) throw std::invalid_argument("negative arity");
}

MultiPoly MultiPoly::constant(RingPtr ring, int arity, int value) {
    MultiPoly p(std::move(ring), arity);
    p.put(Exponents(static_cast<std::size_t>(arity), 0), value);
    return p;
}

MultiPoly MultiPoly::variable(RingPtr ring, int arity, int var) {
    if (var < 0 || var >= arity) throw std::invalid_argument("variable index out of range");
    MultiPoly p(std::move(ring), arity);
    Exponents e(static_cast<std::size_t>(arity), 0);
    e[static_cast<std::size_t>(var)] = 1;
    p.put(e, p.ring_->one());
    return p;
}

MultiPoly MultiPoly::monomial(RingPtr ring, int arity, Exponents exps, int coeff) {
    if (static_cast<int>(exps.size()) != arity) throw std::invalid_argument("exponent arity mismatch");
    MultiPoly p(std::move(ring), arity);
    p.put(exps, coeff);
    return p;
}

void MultiPoly::put(const Exponents& exps, int coeff) {
    auto it = terms_.find(exps);
    if (it == terms_.end()) {
        if (coeff != ring_->zero()) terms_.emplace(exps, coeff);
        return;
    }
    int c = ring_->add(it->second, coeff);
    if (c == ring_->zero())
        terms_.erase(it);
    else
        it->second = c;
}

void MultiPoly::check_compatible(const MultiPoly& o) const {
    if (ring_.get() != o.ring_.get())
        throw RingMismatch("polynomials over " + ring_->spec_string() + " and " + o.ring_->spec_string());
    if (arity_ != o.arity_)
        throw RingMismatch("polynomial arities " + std::to_string(arity_) + " and " +
                           std::to_string(o.arity_) + " differ");
}

int MultiPoly::coefficient(const Exponents& exps) const {
    auto it = terms_.find(exps);
    return it == terms_.end() ? ring_->zero() : it->second;
}

int MultiPoly::constant_term() const {
    return coefficient(Exponents(static_cast<std::size_t>(arity_), 0));
}

int MultiPoly::total_degree() const {
    int deg = -1;
    for (const auto& [e, c] : terms_) {
        int d = 0;
        for (int x : e) d += x;
        deg = std::max(deg, d);
    }
    return deg;
}

// --- arithmetic ---

MultiPoly MultiPoly::operator+(const MultiPoly& o) const {
    check_compatible(o);
    MultiPoly r = *this;
    for (const auto& [e, c] : o.terms_) r.put(e, c);
    return r;
}

MultiPoly MultiPoly::operator-() const {
    MultiPoly r(ring_, arity_);
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, ring_->neg(c));
    return r;
}

MultiPoly MultiPoly::operator-(const MultiPoly& o) const { return *this + (-o); }

MultiPoly MultiPoly::operator*(const MultiPoly& o) const {
    check_compatible(o);
    MultiPoly r(ring_, arity_);
    Exponents e(static_cast<std::size_t>(arity_));
    for (const auto& [ea, ca] : terms_)
        for (const auto& [eb, cb] : o.terms_) {
            int c = ring_->mul(ca, cb);
            if (c == ring_->zero()) continue;
            for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            r.put(e, c);
        }
    return r;
}

bool MultiPoly::operator==(const MultiPoly& o) const {
    return ring_.get() == o.ring_.get() && arity_ == o.arity_ && terms_ == o.terms_;
}

MultiPoly MultiPoly::scaled(int c) const {
    MultiPoly r(ring_, arity_);
    for (const auto& [e, v] : terms_) r.put(e, ring_->mul(c, v));
    return r;
}

MultiPoly MultiPoly::pow(int e) const {
    if (e < 0) throw std::invalid_argument("negative polynomial power");
    MultiPoly acc = constant(ring_, arity_, ring_->one());
    MultiPoly base = *this;
    while (e) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

int MultiPoly::evaluate(const std::vector<int>& point) const {
    if (static_cast<int>(point.size()) != arity_)
        throw std::invalid_argument("evaluation point arity mismatch");
    int acc = ring_->zero();
    for (const auto& [e, c] : terms_) {
        int v = c;
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i]) v = ring_->mul(v, ring_->pow(point[i], static_cast<u64>(e[i])));
        acc = ring_->add(acc, v);
    }
    return acc;
}

MultiPoly MultiPoly::substitute(const std::vector<MultiPoly>& args) const {
    if (static_cast<int>(args.size()) != arity_)
        throw std::invalid_argument("substitution needs one argument per variable");
    int target = arity_ == 0 ? 0 : args[0].arity_;
    for (const auto& a : args) {
        if (a.ring_.get() != ring_.get()) throw RingMismatch("substitution argument over a different ring");
        if (a.arity_ != target) throw RingMismatch("substitution arguments have mixed arities");
    }
    // memoized powers of each argument
    std::vector<std::vector<MultiPoly>> pows(args.size());
    auto arg_pow = [&](std::size_t i, int e) -> const MultiPoly& {
        auto& cache = pows[i];
        if (cache.empty()) cache.push_back(constant(ring_, target, ring_->one()));
        while (static_cast<int>(cache.size()) <= e) cache.push_back(cache.back() * args[i]);
        return cache[static_cast<std::size_t>(e)];
    };
    MultiPoly r(ring_, target);
    for (const auto& [e, c] : terms_) {
        MultiPoly term = constant(ring_, target, c);
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i]) term = term * arg_pow(i, e[i]);
        r = r + term;
    }
    return r;
}

MultiPoly MultiPoly::derivative(int var) const {
    if (var < 0 || var >= arity_) throw std::invalid_argument("derivative variable out of range");
    MultiPoly r(ring_, arity_);
    for (const auto& [e, c] : terms_) {
        int k = e[static_cast<std::size_t>(var)];
        if (k == 0) continue;
        int coeff = ring_->mul(c, ring_->from_int(k));
        if (coeff == ring_->zero()) continue;
        Exponents d = e;
        d[static_cast<std::size_t>(var)] = k - 1;
        r.put(d, coeff);
    }
    return r;
}

MultiPoly MultiPoly::extend_arity(int new_arity) const {
    if (new_arity < arity_) throw std::invalid_argument("extend_arity cannot shrink");
    MultiPoly r(ring_, new_arity);
    for (const auto& [e, c] : terms_) {
        Exponents ext = e;
        ext.resize(static_cast<std::size_t>(new_arity), 0);
        r.terms_.emplace(std::move(ext), c);
    }
    return r;
}

MultiPoly MultiPoly::restrict_arity(int new_arity) const {
    if (new_arity > arity_) throw std::invalid_argument("restrict_arity cannot grow");
    MultiPoly r(ring_, new_arity);
    for (const auto& [e, c] : terms_) {
        for (std::size_t i = static_cast<std::size_t>(new_arity); i < e.size(); ++i)
            if (e[i] != 0)
                throw std::invalid_argument("polynomial uses x" + std::to_string(i + 1) +
                                            ", cannot restrict to arity " + std::to_string(new_arity));
        Exponents cut(e.begin(), e.begin() + new_arity);
        r.terms_.emplace(std::move(cut), c);
    }
    return r;
}

FuncTable MultiPoly::func_of(std::size_t cap_points) const {
    PointDomain dom(ring_->size(), arity_, cap_points);
    // per-variable power tables up to the maximum exponent
    int max_exp = 0;
    for (const auto& [e, c] : terms_)
        for (int x : e) max_exp = std::max(max_exp, x);
    std::size_t n = ring_->size();
    std::vector<int> pow_table(n * static_cast<std::size_t>(max_exp + 1));
    for (std::size_t a = 0; a < n; ++a) {
        pow_table[a * static_cast<std::size_t>(max_exp + 1)] = ring_->one();
        for (int e = 1; e <= max_exp; ++e)
            pow_table[a * static_cast<std::size_t>(max_exp + 1) + static_cast<std::size_t>(e)] =
                ring_->mul(pow_table[a * static_cast<std::size_t>(max_exp + 1) + static_cast<std::size_t>(e - 1)],
                           static_cast<int>(a));
    }

    FuncTable out{ring_, arity_, std::vector<int>(dom.total)};
    std::vector<int> pt(static_cast<std::size_t>(arity_), 0);
    std::size_t flat = 0;
    do {
        int acc = ring_->zero();
        for (const auto& [e, c] : terms_) {
            int v = c;
            for (std::size_t i = 0; i < e.size(); ++i)
                if (e[i])
                    v = ring_->mul(v, pow_table[static_cast<std::size_t>(pt[i]) *
                                                    static_cast<std::size_t>(max_exp + 1) +
                                                static_cast<std::size_t>(e[i])]);
            acc = ring_->add(acc, v);
        }
        out.values[flat++] = acc;
    } while (PointDomain::next_point(pt, n));
    return out;
}

// --- text form ---

namespace {

struct PolyParser {
    const std::string& s;
    std::size_t pos = 0;
    const RingPtr& ring;
    int arity;

    [[noreturn]] void fail(const std::string& why) const {
        throw ParseError("polynomial \"" + s + "\": " + why + " at position " + std::to_string(pos));
    }

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }
    bool eat(char c) {
        if (peek() == c) {
            ++pos;
            return true;
        }
        return false;
    }

    long integer() {
        skip_ws();
        if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos]))) fail("expected integer");
        long v = 0;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
            v = v * 10 + (s[pos] - '0');
            if (v > 1000000000L) fail("integer too large");
            ++pos;
        }
        return v;
    }

    int literal_elem(long v) const {
        auto kind = ring->spec().kind;
        if (kind == RingSpec::Kind::Zmod || kind == RingSpec::Kind::PrimeField) return ring->from_int(v);
        if (v >= static_cast<long>(ring->size()))
            throw ParseError("element literal " + std::to_string(v) + " out of range for " +
                             ring->spec_string());
        return static_cast<int>(v);
    }

    MultiPoly primary() {
        if (eat('(')) {
            MultiPoly e = expr();
            if (!eat(')')) fail("expected ')'");
            return e;
        }
        if (eat('x')) {
            long v = integer();
            if (v < 1 || v > arity) fail("variable x" + std::to_string(v) + " out of range");
            return MultiPoly::variable(ring, arity, static_cast<int>(v - 1));
        }
        if (std::isdigit(static_cast<unsigned char>(peek()))) {
            return MultiPoly::constant(ring, arity, literal_elem(integer()));
        }
        fail("expected coefficient, variable, or '('");
    }

    MultiPoly factor() {
        MultiPoly base = primary();
        if (eat('^')) {
            long e = integer();
            if (e < 0 || e > 64) fail("exponent out of range");
            return base.pow(static_cast<int>(e));
        }
        return base;
    }

    MultiPoly term() {
        MultiPoly r = factor();
        while (true) {
            char c = peek();
            if (c == '*') {
                ++pos;
                r = r * factor();
            } else if (c == 'x' || c == '(') {
                r = r * factor();  // implicit product
            } else {
                break;
            }
        }
        return r;
    }

    MultiPoly expr() {
        bool negate = eat('-');
        MultiPoly r = term();
        if (negate) r = -r;
        while (true) {
            if (eat('+'))
                r = r + term();
            else if (eat('-'))
                r = r - term();
            else
                break;
        }
        return r;
    }
};

}  // namespace

MultiPoly MultiPoly::parse(RingPtr ring, int arity, const std::string& text) {
    PolyParser p{text, 0, ring, arity};
    MultiPoly r = p.expr();
    p.skip_ws();
    if (p.pos != text.size()) p.fail("trailing characters");
    return r;
}

std::string MultiPoly::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    // descending exponent order reads naturally
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [e, c] = *it;
        if (!out.empty()) out += " + ";
        std::string vars;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (!vars.empty()) vars += "*";
            vars += "x" + std::to_string(i + 1);
            if (e[i] > 1) vars += "^" + std::to_string(e[i]);
        }
        if (vars.empty())
            out += std::to_string(c);
        else if (c == ring_->one())
            out += vars;
        else
            out += std::to_string(c) + "*" + vars;
    }
    return out;
}

// --- predicates ---

bool func_equiv(const MultiPoly& f, const MultiPoly& g) {
    if (f.ring().get() != g.ring().get() || f.arity() != g.arity())
        throw RingMismatch("func_equiv operands incompatible");
    return f.func_of() == g.func_of();
}

bool is_unit_poly(const MultiPoly& f) {
    const auto& R = f.ring();
    MultiPoly::Exponents zero_exp(static_cast<std::size_t>(f.arity()), 0);
    if (!R->is_unit(f.constant_term())) return false;
    for (const auto& [e, c] : f.terms())
        if (e != zero_exp && !R->is_nilpotent(c)) return false;
    return true;
}

MultiPoly unit_poly_inverse(const MultiPoly& f) {
    if (!is_unit_poly(f))
        throw NotAUnit("polynomial " + f.str() + " is not a unit of the polynomial ring");
    const auto& R = f.ring();
    int a0 = f.constant_term();
    int a0inv = R->unit_inverse(a0);
    MultiPoly nil = f - MultiPoly::constant(R, f.arity(), a0);
    // geometric series in the nilpotent part; terminates once the power vanishes
    MultiPoly t = nil.scaled(R->neg(a0inv));
    MultiPoly acc = MultiPoly::constant(R, f.arity(), R->one());
    MultiPoly power = t;
    std::size_t guard = 2 * R->size() + 4;
    while (!power.is_zero()) {
        acc = acc + power;
        power = power * t;
        if (guard-- == 0) throw std::logic_error("unit_poly_inverse failed to terminate");
    }
    MultiPoly inv = acc.scaled(a0inv);
    if (f * inv != MultiPoly::constant(R, f.arity(), R->one()))
        throw std::logic_error("unit_poly_inverse verification failed");
    return inv;
}

bool is_unit_valued(const MultiPoly& f) { return f.func_of().all_units(); }

bool is_permutation_poly_bruteforce(const MultiPoly& f) {
    if (f.arity() != 1) throw std::invalid_argument("permutation test needs one variable");
    return f.func_of().is_bijection();
}

bool local_ring_permutation_test(const MultiPoly& f) {
    if (f.arity() != 1) throw std::invalid_argument("permutation test needs one variable");
    const auto& R = f.ring();
    if (!R->is_local() || R->is_field())
        throw std::invalid_argument("local-ring permutation test needs a local non-field ring");
    int q = R->residue_field_size();
    // (1) the induced map on residue classes is a bijection
    std::vector<char> hit(static_cast<std::size_t>(q), 0);
    std::vector<char> seen(static_cast<std::size_t>(q), 0);
    for (std::size_t a = 0; a < R->size(); ++a) {
        int cls = R->residue(static_cast<int>(a));
        if (seen[static_cast<std::size_t>(cls)]) continue;
        seen[static_cast<std::size_t>(cls)] = 1;
        int img = R->residue(f.evaluate({static_cast<int>(a)}));
        if (hit[static_cast<std::size_t>(img)]) return false;
        hit[static_cast<std::size_t>(img)] = 1;
    }
    // (2) the derivative avoids the maximal ideal everywhere
    MultiPoly d = f.derivative(0);
    for (std::size_t a = 0; a < R->size(); ++a)
        if (R->residue(d.evaluate({static_cast<int>(a)})) == 0) return false;
    return true;
}

bool is_permutation_poly(const MultiPoly& f) {
    if (f.arity() != 1) throw std::invalid_argument("permutation test needs one variable");
    const auto& R = f.ring();
    if (R->is_field()) return is_permutation_poly_bruteforce(f);
    if (R->is_local()) return local_ring_permutation_test(f);
    CrtSplit split;
    try {
        split = crt_split(R);
    } catch (const std::runtime_error&) {
        return is_permutation_poly_bruteforce(f);
    }
    for (std::size_t j = 0; j < split.factors.size(); ++j) {
        MultiPoly proj = MultiPoly::zero(split.factors[j], 1);
        for (const auto& [e, c] : f.terms()) {
            int cj = split.to_factors(c)[j];
            proj = proj + MultiPoly::monomial(split.factors[j], 1, e, cj);
        }
        if (!is_permutation_poly(proj)) return false;
    }
    return true;
}

bool is_automorphism(const MultiPoly& f) {
    if (f.arity() != 1) throw std::invalid_argument("automorphism test needs one variable");
    const auto& R = f.ring();
    if (!R->is_unit(f.coefficient({1}))) return false;
    for (const auto& [e, c] : f.terms())
        if (e[0] >= 2 && !R->is_nilpotent(c)) return false;
    return true;
}

MultiPoly automorphism_inverse(const MultiPoly& f) {
    if (!is_automorphism(f)) throw NotAUnit("polynomial " + f.str() + " is not an automorphism");
    const auto& R = f.ring();
    MultiPoly x = MultiPoly::variable(R, 1, 0);
    int a0 = f.coefficient({0});
    int a1inv = R->unit_inverse(f.coefficient({1}));
    MultiPoly g = (x - MultiPoly::constant(R, 1, a0)).scaled(a1inv);
    MultiPoly fprime = f.derivative(0);
    // each step squares the nilradical power carrying the error
    for (int step = 0; step < 64; ++step) {
        MultiPoly err = f.substitute({g}) - x;
        if (err.is_zero()) return g;
        g = g - err * unit_poly_inverse(fprime.substitute({g}));
    }
    throw std::logic_error("automorphism_inverse failed to converge");
}

MultiPoly lagrange_interpolate(const FuncTable& table) {
    const auto& R = table.ring;
    if (!R->is_field()) throw std::invalid_argument("interpolation needs a field");
    if (table.arity != 1 || table.values.size() != R->size())
        throw std::invalid_argument("interpolation needs a one-variable table over the whole field");
    std::size_t q = R->size();
    MultiPoly x = MultiPoly::variable(R, 1, 0);
    MultiPoly out = MultiPoly::zero(R, 1);
    for (std::size_t b = 0; b < q; ++b) {
        int fb = table.values[b];
        if (fb == R->zero()) continue;
        MultiPoly basis = MultiPoly::constant(R, 1, fb);
        for (std::size_t c = 0; c < q; ++c) {
            if (c == b) continue;
            int denom = R->unit_inverse(R->sub(static_cast<int>(b), static_cast<int>(c)));
            basis = basis * (x - MultiPoly::constant(R, 1, static_cast<int>(c))).scaled(denom);
        }
        out = out + basis;
    }
    return out;
}

}  // namespace tripoly
