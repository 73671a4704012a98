#include "tripoly/ring.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

namespace tripoly {

namespace {

bool is_prime(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// --- dense univariate arithmetic over F_p, used only to vet extension moduli ---

using FpPoly = std::vector<int>;  // coefficients c0..cd, no trailing zeros

void fp_trim(FpPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

FpPoly fp_rem(FpPoly a, const FpPoly& b, long p) {
    // b monic
    while (a.size() >= b.size() && !a.empty()) {
        long c = a.back();
        std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i) {
            long v = a[shift + i] - c * b[i];
            a[shift + i] = static_cast<int>(((v % p) + p) % p);
        }
        fp_trim(a);
    }
    return a;
}

bool fp_is_irreducible(const FpPoly& f, long p) {
    int deg = static_cast<int>(f.size()) - 1;
    if (deg < 1) return false;
    if (deg == 1) return true;
    // trial division by every monic polynomial of degree 1..deg/2
    for (int d = 1; 2 * d <= deg; ++d) {
        long count = 1;
        for (int i = 0; i < d; ++i) count *= p;
        for (long code = 0; code < count; ++code) {
            FpPoly g(static_cast<std::size_t>(d) + 1, 0);
            long c = code;
            for (int i = 0; i < d; ++i) {
                g[static_cast<std::size_t>(i)] = static_cast<int>(c % p);
                c /= p;
            }
            g[static_cast<std::size_t>(d)] = 1;
            if (fp_rem(f, g, p).empty()) return false;
        }
    }
    return true;
}

// --- ring spec parser ---

struct SpecParser {
    const std::string& s;
    std::size_t pos = 0;

    explicit SpecParser(const std::string& text) : s(text) {}

    [[noreturn]] void fail(const std::string& why) const {
        throw ParseError("ring spec \"" + s + "\": " + why + " at position " + std::to_string(pos));
    }

    char peek() const { return pos < s.size() ? s[pos] : '\0'; }
    bool eat(char c) {
        if (peek() == c) {
            ++pos;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!eat(c)) fail(std::string("expected '") + c + "'");
    }
    bool eat_word(const char* w) {
        std::size_t n = std::string(w).size();
        if (s.compare(pos, n, w) == 0) {
            pos += n;
            return true;
        }
        return false;
    }

    long integer() {
        if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected integer");
        long v = 0;
        while (std::isdigit(static_cast<unsigned char>(peek()))) {
            v = v * 10 + (s[pos] - '0');
            if (v > 100000000L) fail("integer too large");
            ++pos;
        }
        return v;
    }

    // modulus polynomial in t over F_p, e.g. "t^2+t+1"
    std::vector<int> tpoly(long p) {
        std::vector<int> coeffs;
        auto put = [&](int deg, long c) {
            if (deg >= static_cast<int>(coeffs.size())) coeffs.resize(static_cast<std::size_t>(deg) + 1, 0);
            long v = (coeffs[static_cast<std::size_t>(deg)] + c) % p;
            coeffs[static_cast<std::size_t>(deg)] = static_cast<int>((v + p) % p);
        };
        int sign = 1;
        if (eat('-')) sign = -1;
        while (true) {
            long c = 1;
            bool have_coeff = false;
            if (std::isdigit(static_cast<unsigned char>(peek()))) {
                c = integer();
                have_coeff = true;
                eat('*');
            }
            int deg = 0;
            if (eat('t')) {
                deg = 1;
                if (eat('^')) deg = static_cast<int>(integer());
            } else if (!have_coeff) {
                fail("expected term in modulus polynomial");
            }
            put(deg, sign * c);
            if (eat('+'))
                sign = 1;
            else if (eat('-'))
                sign = -1;
            else
                break;
        }
        fp_trim(coeffs);
        return coeffs;
    }

    RingSpec atom() {
        if (eat('(')) {
            RingSpec r = product();
            expect(')');
            return r;
        }
        if (eat('Z')) {
            RingSpec r;
            r.kind = RingSpec::Kind::Zmod;
            r.m = integer();
            if (r.m < 2) fail("modulus must be at least 2");
            return r;
        }
        if (eat('F')) {
            RingSpec r;
            r.m = integer();
            if (!is_prime(r.m)) fail("field characteristic must be prime");
            if (eat('^')) {
                r.kind = RingSpec::Kind::ExtField;
                r.degree = static_cast<int>(integer());
                if (r.degree < 2) fail("extension degree must be at least 2");
                expect(':');
                r.modulus = tpoly(r.m);
                if (static_cast<int>(r.modulus.size()) - 1 != r.degree)
                    fail("modulus degree does not match extension degree");
                if (r.modulus.back() != 1) fail("modulus must be monic");
                if (!fp_is_irreducible(r.modulus, r.m)) fail("modulus is reducible");
            } else {
                r.kind = RingSpec::Kind::PrimeField;
            }
            return r;
        }
        fail("expected ring atom");
    }

    RingSpec with_suffixes() {
        RingSpec r = atom();
        while (peek() == '[') {
            std::size_t save = pos;
            ++pos;
            if (eat('t')) {
                expect(']');
                expect('/');
                if (!eat_word("t^")) fail("expected t^<e>");
                RingSpec ext;
                ext.kind = RingSpec::Kind::Trunc;
                ext.degree = static_cast<int>(integer());
                if (ext.degree < 2) fail("truncation exponent must be at least 2");
                ext.parts.push_back(std::move(r));
                r = std::move(ext);
            } else if (eat_word("a1..a")) {
                RingSpec ext;
                ext.kind = RingSpec::Kind::Dual;
                ext.degree = static_cast<int>(integer());
                if (ext.degree < 1) fail("need at least one dual generator");
                expect(']');
                if (!eat_word("dual")) fail("expected 'dual'");
                ext.parts.push_back(std::move(r));
                r = std::move(ext);
            } else {
                pos = save;
                fail("unrecognized ring suffix");
            }
        }
        return r;
    }

    RingSpec product() {
        RingSpec first = with_suffixes();
        if (peek() != 'x') return first;
        RingSpec r;
        r.kind = RingSpec::Kind::Product;
        r.parts.push_back(std::move(first));
        while (eat('x')) r.parts.push_back(with_suffixes());
        return r;
    }
};

std::string tpoly_str(const std::vector<int>& coeffs) {
    std::string out;
    for (int d = static_cast<int>(coeffs.size()) - 1; d >= 0; --d) {
        int c = coeffs[static_cast<std::size_t>(d)];
        if (c == 0) continue;
        if (!out.empty()) out += "+";
        if (d == 0) {
            out += std::to_string(c);
        } else {
            if (c != 1) out += std::to_string(c) + "*";
            out += d == 1 ? "t" : "t^" + std::to_string(d);
        }
    }
    return out.empty() ? "0" : out;
}

}  // namespace

RingSpec RingSpec::parse(const std::string& text) {
    std::string cleaned;
    cleaned.reserve(text.size());
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) cleaned += c;
    SpecParser p(cleaned);
    RingSpec r = p.product();
    if (p.pos != cleaned.size()) p.fail("trailing characters");
    return r;
}

std::string RingSpec::str() const {
    switch (kind) {
        case Kind::Zmod:
            return "Z" + std::to_string(m);
        case Kind::PrimeField:
            return "F" + std::to_string(m);
        case Kind::ExtField:
            return "F" + std::to_string(m) + "^" + std::to_string(degree) + ":" + tpoly_str(modulus);
        case Kind::Trunc: {
            std::string base = parts[0].str();
            if (parts[0].kind == Kind::Product) base = "(" + base + ")";
            return base + "[t]/t^" + std::to_string(degree);
        }
        case Kind::Dual: {
            std::string base = parts[0].str();
            if (parts[0].kind == Kind::Product) base = "(" + base + ")";
            return base + "[a1..a" + std::to_string(degree) + "]dual";
        }
        case Kind::Product: {
            std::string out;
            for (std::size_t i = 0; i < parts.size(); ++i) {
                if (i) out += "x";
                std::string piece = parts[i].str();
                if (parts[i].kind == Kind::Product) piece = "(" + piece + ")";
                out += piece;
            }
            return out;
        }
    }
    return "?";
}

// --- construction ---

RingPtr Ring::make(const std::string& spec, std::size_t cap) { return make(RingSpec::parse(spec), cap); }

namespace {
// one canonical instance per spec string, so ring identity is spec identity
std::mutex registry_mutex;
std::map<std::string, RingPtr>& registry() {
    static std::map<std::string, RingPtr> r;
    return r;
}
}  // namespace

RingPtr Ring::make(const RingSpec& spec, std::size_t cap) {
    std::string key = spec.str();
    {
        std::scoped_lock lock(registry_mutex);
        auto it = registry().find(key);
        if (it != registry().end()) {
            if (it->second->size() > cap)
                throw CapExceeded("ring cardinality " + std::to_string(it->second->size()) +
                                  " exceeds cap");
            return it->second;
        }
    }
    auto ring = std::shared_ptr<Ring>(new Ring());
    ring->spec_ = spec;

    u64 n = 0;
    switch (spec.kind) {
        case RingSpec::Kind::Zmod:
        case RingSpec::Kind::PrimeField:
            if (spec.m < 2) throw ParseError("ring modulus must be at least 2");
            n = static_cast<u64>(spec.m);
            ring->radices_ = {static_cast<int>(spec.m)};
            break;
        case RingSpec::Kind::ExtField: {
            n = checked_pow(static_cast<u64>(spec.m), static_cast<u64>(spec.degree));
            if (n > cap) throw CapExceeded("ring cardinality " + std::to_string(n) + " exceeds cap");
            ring->radices_.assign(static_cast<std::size_t>(spec.degree), static_cast<int>(spec.m));
            ring->modulus_ = spec.modulus;
            break;
        }
        case RingSpec::Kind::Trunc:
        case RingSpec::Kind::Dual: {
            RingPtr base = make(spec.parts[0], cap);
            int digits = spec.kind == RingSpec::Kind::Trunc ? spec.degree : spec.degree + 1;
            n = checked_pow(static_cast<u64>(base->size()), static_cast<u64>(digits));
            if (n > cap) throw CapExceeded("ring cardinality " + std::to_string(n) + " exceeds cap");
            ring->children_.push_back(std::move(base));
            ring->radices_.assign(static_cast<std::size_t>(digits),
                                  static_cast<int>(ring->children_[0]->size()));
            break;
        }
        case RingSpec::Kind::Product: {
            if (spec.parts.size() < 2) throw ParseError("product spec needs at least two factors");
            n = 1;
            for (const auto& part : spec.parts) {
                RingPtr child = make(part, cap);
                n = checked_mul(n, child->size());
                if (n > cap) throw CapExceeded("ring cardinality exceeds cap");
                ring->radices_.push_back(static_cast<int>(child->size()));
                ring->children_.push_back(std::move(child));
            }
            break;
        }
    }
    if (n > cap) throw CapExceeded("ring cardinality " + std::to_string(n) + " exceeds cap");
    ring->size_ = static_cast<std::size_t>(n);

    ring->strides_.resize(ring->radices_.size());
    long stride = 1;
    for (std::size_t i = 0; i < ring->radices_.size(); ++i) {
        ring->strides_[i] = stride;
        stride *= ring->radices_[i];
    }

    // the identity element must sit at index 1
    long one_code = 1;
    if (spec.kind == RingSpec::Kind::Product) {
        one_code = 0;
        for (std::size_t i = 0; i < ring->children_.size(); ++i)
            one_code += ring->children_[i]->one() * ring->strides_[i];
    }
    if (one_code != 1) {
        ring->index_permuted_ = true;
        ring->idx2code_.resize(ring->size_);
        ring->code2idx_.resize(ring->size_);
        for (std::size_t i = 0; i < ring->size_; ++i) ring->idx2code_[i] = static_cast<long>(i);
        std::swap(ring->idx2code_[1], ring->idx2code_[static_cast<std::size_t>(one_code)]);
        for (std::size_t i = 0; i < ring->size_; ++i)
            ring->code2idx_[static_cast<std::size_t>(ring->idx2code_[i])] = static_cast<int>(i);
    }

    ring->classify();
    {
        std::scoped_lock lock(registry_mutex);
        auto [it, fresh] = registry().emplace(std::move(key), ring);
        if (!fresh) return it->second;
    }
    return ring;
}

long Ring::code_of_index(int idx) const {
    return index_permuted_ ? idx2code_[static_cast<std::size_t>(idx)] : idx;
}

int Ring::index_of_code(long code) const {
    return index_permuted_ ? code2idx_[static_cast<std::size_t>(code)] : static_cast<int>(code);
}

long Ring::code_add(long a, long b) const {
    switch (spec_.kind) {
        case RingSpec::Kind::Zmod:
        case RingSpec::Kind::PrimeField:
            return (a + b) % spec_.m;
        case RingSpec::Kind::ExtField: {
            long r = 0;
            long p = spec_.m;
            for (std::size_t i = 0; i < strides_.size(); ++i) {
                long da = (a / strides_[i]) % p;
                long db = (b / strides_[i]) % p;
                r += ((da + db) % p) * strides_[i];
            }
            return r;
        }
        default: {
            long r = 0;
            for (std::size_t i = 0; i < strides_.size(); ++i) {
                const Ring& child = spec_.kind == RingSpec::Kind::Product ? *children_[i] : *children_[0];
                long da = (a / strides_[i]) % radices_[i];
                long db = (b / strides_[i]) % radices_[i];
                r += child.add(static_cast<int>(da), static_cast<int>(db)) * strides_[i];
            }
            return r;
        }
    }
}

long Ring::code_neg(long a) const {
    switch (spec_.kind) {
        case RingSpec::Kind::Zmod:
        case RingSpec::Kind::PrimeField:
            return (spec_.m - a) % spec_.m;
        case RingSpec::Kind::ExtField: {
            long r = 0;
            long p = spec_.m;
            for (std::size_t i = 0; i < strides_.size(); ++i) {
                long da = (a / strides_[i]) % p;
                r += ((p - da) % p) * strides_[i];
            }
            return r;
        }
        default: {
            long r = 0;
            for (std::size_t i = 0; i < strides_.size(); ++i) {
                const Ring& child = spec_.kind == RingSpec::Kind::Product ? *children_[i] : *children_[0];
                long da = (a / strides_[i]) % radices_[i];
                r += child.neg(static_cast<int>(da)) * strides_[i];
            }
            return r;
        }
    }
}

long Ring::code_mul(long a, long b) const {
    switch (spec_.kind) {
        case RingSpec::Kind::Zmod:
        case RingSpec::Kind::PrimeField:
            return (a * b) % spec_.m;
        case RingSpec::Kind::ExtField: {
            long p = spec_.m;
            std::size_t r = strides_.size();
            std::vector<long> prod(2 * r - 1, 0);
            for (std::size_t i = 0; i < r; ++i) {
                long da = (a / strides_[i]) % p;
                if (da == 0) continue;
                for (std::size_t j = 0; j < r; ++j) {
                    long db = (b / strides_[j]) % p;
                    prod[i + j] = (prod[i + j] + da * db) % p;
                }
            }
            // reduce modulo the monic modulus
            for (std::size_t d = prod.size(); d-- > r;) {
                long c = prod[d];
                if (c == 0) continue;
                prod[d] = 0;
                std::size_t shift = d - r;
                for (std::size_t i = 0; i < r; ++i) {
                    long v = prod[shift + i] - c * modulus_[i];
                    prod[shift + i] = ((v % p) + p) % p;
                }
            }
            long out = 0;
            for (std::size_t i = 0; i < r; ++i) out += prod[i] * strides_[i];
            return out;
        }
        case RingSpec::Kind::Trunc: {
            const Ring& base = *children_[0];
            std::size_t e = strides_.size();
            std::vector<int> out(e, 0);
            for (std::size_t i = 0; i < e; ++i) {
                int da = static_cast<int>((a / strides_[i]) % radices_[i]);
                if (da == 0) continue;
                for (std::size_t j = 0; i + j < e; ++j) {
                    int db = static_cast<int>((b / strides_[j]) % radices_[j]);
                    out[i + j] = base.add(out[i + j], base.mul(da, db));
                }
            }
            long r = 0;
            for (std::size_t i = 0; i < e; ++i) r += out[i] * strides_[i];
            return r;
        }
        case RingSpec::Kind::Dual: {
            // generators square to zero pairwise, so only the scalar parts mix
            const Ring& base = *children_[0];
            int a0 = static_cast<int>(a % radices_[0]);
            int b0 = static_cast<int>(b % radices_[0]);
            long r = base.mul(a0, b0);
            for (std::size_t i = 1; i < strides_.size(); ++i) {
                int ai = static_cast<int>((a / strides_[i]) % radices_[i]);
                int bi = static_cast<int>((b / strides_[i]) % radices_[i]);
                r += base.add(base.mul(a0, bi), base.mul(ai, b0)) * strides_[i];
            }
            return r;
        }
        case RingSpec::Kind::Product: {
            long r = 0;
            for (std::size_t i = 0; i < strides_.size(); ++i) {
                long da = (a / strides_[i]) % radices_[i];
                long db = (b / strides_[i]) % radices_[i];
                r += children_[i]->mul(static_cast<int>(da), static_cast<int>(db)) * strides_[i];
            }
            return r;
        }
    }
    return 0;
}

int Ring::add(int a, int b) const {
    if (!add_table_.empty())
        return add_table_[static_cast<std::size_t>(a) * size_ + static_cast<std::size_t>(b)];
    return index_of_code(code_add(code_of_index(a), code_of_index(b)));
}

int Ring::mul(int a, int b) const {
    if (!mul_table_.empty())
        return mul_table_[static_cast<std::size_t>(a) * size_ + static_cast<std::size_t>(b)];
    return index_of_code(code_mul(code_of_index(a), code_of_index(b)));
}

int Ring::neg(int a) const {
    if (!neg_table_.empty()) return neg_table_[static_cast<std::size_t>(a)];
    return index_of_code(code_neg(code_of_index(a)));
}

int Ring::sub(int a, int b) const { return add(a, neg(b)); }

int Ring::pow(int a, u64 e) const {
    int acc = one();
    int base = a;
    while (e) {
        if (e & 1) acc = mul(acc, base);
        base = mul(base, base);
        e >>= 1;
    }
    return acc;
}

int Ring::from_int(long n) const {
    long c = characteristic_;
    long r = ((n % c) + c) % c;
    int acc = zero();
    int base = one();
    while (r) {
        if (r & 1) acc = add(acc, base);
        base = add(base, base);
        r >>= 1;
    }
    return acc;
}

int Ring::unit_inverse(int a) const {
    int inv = unit_inv_[static_cast<std::size_t>(a)];
    if (inv < 0) throw NotAUnit("element " + element_str(a) + " is not a unit of " + spec_string());
    return inv;
}

void Ring::classify() {
    std::size_t n = size_;

    if (n <= 256) {
        add_table_.resize(n * n);
        mul_table_.resize(n * n);
        neg_table_.resize(n);
        for (std::size_t a = 0; a < n; ++a) {
            long ca = code_of_index(static_cast<int>(a));
            neg_table_[a] = index_of_code(code_neg(ca));
            for (std::size_t b = 0; b < n; ++b) {
                long cb = code_of_index(static_cast<int>(b));
                add_table_[a * n + b] = static_cast<std::uint16_t>(index_of_code(code_add(ca, cb)));
                mul_table_[a * n + b] = static_cast<std::uint16_t>(index_of_code(code_mul(ca, cb)));
            }
        }
    }

    // additive order of 1
    characteristic_ = 1;
    for (int x = one(); x != zero(); x = add(x, one())) ++characteristic_;

    unit_inv_.assign(n, -1);
    unit_inv_[1] = 1;
    for (std::size_t a = 0; a < n; ++a) {
        if (unit_inv_[a] >= 0) continue;
        for (std::size_t b = a; b < n; ++b) {
            if (mul(static_cast<int>(a), static_cast<int>(b)) == one()) {
                unit_inv_[a] = static_cast<int>(b);
                unit_inv_[b] = static_cast<int>(a);
                break;
            }
        }
    }

    nilpotent_.assign(n, 0);
    for (std::size_t a = 0; a < n; ++a)
        nilpotent_[a] = pow(static_cast<int>(a), static_cast<u64>(n)) == zero() ? 1 : 0;

    units_.clear();
    nilpotents_.clear();
    std::vector<int> non_units;
    for (std::size_t a = 0; a < n; ++a) {
        if (unit_inv_[a] >= 0)
            units_.push_back(static_cast<int>(a));
        else
            non_units.push_back(static_cast<int>(a));
        if (nilpotent_[a]) nilpotents_.push_back(static_cast<int>(a));
    }

    // local iff the non-units are closed under addition
    local_ = true;
    for (std::size_t i = 0; i < non_units.size() && local_; ++i)
        for (std::size_t j = i; j < non_units.size(); ++j)
            if (unit_inv_[static_cast<std::size_t>(add(non_units[i], non_units[j]))] >= 0) {
                local_ = false;
                break;
            }

    if (local_) {
        max_ideal_ = non_units;
        residue_q_ = static_cast<int>(n / max_ideal_.size());
        residue_class_.assign(n, -1);
        int next_class = 0;
        for (std::size_t a = 0; a < n; ++a) {
            if (residue_class_[a] >= 0) continue;
            for (int m : max_ideal_)
                residue_class_[static_cast<std::size_t>(add(static_cast<int>(a), m))] = next_class;
            ++next_class;
        }
        if (next_class != residue_q_)
            throw std::logic_error("residue class count mismatch in " + spec_string());
        residue_p_ = 2;
        while (residue_q_ % residue_p_ != 0) ++residue_p_;
        if (!is_power_of(static_cast<u64>(residue_q_), static_cast<u64>(residue_p_)))
            throw std::logic_error("residue field size is not a prime power in " + spec_string());
    }
}

const std::vector<int>& Ring::maximal_ideal() const {
    if (!local_) throw std::runtime_error(spec_string() + " is not local");
    return max_ideal_;
}

int Ring::residue_field_size() const {
    if (!local_) throw std::runtime_error(spec_string() + " is not local");
    return residue_q_;
}

int Ring::residue(int a) const {
    if (!local_) throw std::runtime_error(spec_string() + " is not local");
    return residue_class_[static_cast<std::size_t>(a)];
}

int Ring::residue_characteristic() const {
    if (!local_) throw std::runtime_error(spec_string() + " is not local");
    return residue_p_;
}

std::string Ring::element_str(int a) const {
    long code = code_of_index(a);
    switch (spec_.kind) {
        case RingSpec::Kind::Zmod:
        case RingSpec::Kind::PrimeField:
            return std::to_string(code);
        case RingSpec::Kind::ExtField: {
            std::vector<int> coeffs(strides_.size());
            for (std::size_t i = 0; i < strides_.size(); ++i)
                coeffs[i] = static_cast<int>((code / strides_[i]) % spec_.m);
            return tpoly_str(coeffs);
        }
        case RingSpec::Kind::Trunc:
        case RingSpec::Kind::Dual: {
            const Ring& base = *children_[0];
            std::string out;
            for (std::size_t i = 0; i < strides_.size(); ++i) {
                int d = static_cast<int>((code / strides_[i]) % radices_[i]);
                if (d == 0) continue;
                if (!out.empty()) out += "+";
                std::string coeff = base.element_str(d);
                if (coeff.find('+') != std::string::npos) coeff = "(" + coeff + ")";
                std::string gen;
                if (spec_.kind == RingSpec::Kind::Trunc)
                    gen = i == 0 ? "" : (i == 1 ? "t" : "t^" + std::to_string(i));
                else
                    gen = i == 0 ? "" : "a" + std::to_string(i);
                if (gen.empty())
                    out += coeff;
                else
                    out += coeff == "1" ? gen : coeff + "*" + gen;
            }
            return out.empty() ? "0" : out;
        }
        case RingSpec::Kind::Product: {
            std::string out = "(";
            for (std::size_t i = 0; i < strides_.size(); ++i) {
                if (i) out += ",";
                int d = static_cast<int>((code / strides_[i]) % radices_[i]);
                out += children_[i]->element_str(d);
            }
            return out + ")";
        }
    }
    return "?";
}

std::vector<int> Ring::components(int a) const {
    long code = code_of_index(a);
    std::vector<int> out(strides_.size());
    for (std::size_t i = 0; i < strides_.size(); ++i)
        out[i] = static_cast<int>((code / strides_[i]) % radices_[i]);
    return out;
}

int Ring::from_components(const std::vector<int>& comps) const {
    if (comps.size() != strides_.size())
        throw std::invalid_argument("component count mismatch for " + spec_string());
    long code = 0;
    for (std::size_t i = 0; i < strides_.size(); ++i) {
        if (comps[i] < 0 || comps[i] >= radices_[i])
            throw std::invalid_argument("component out of range for " + spec_string());
        code += comps[i] * strides_[i];
    }
    return index_of_code(code);
}

RingPtr Ring::base_ring() const {
    if (spec_.kind == RingSpec::Kind::Trunc || spec_.kind == RingSpec::Kind::Dual) return children_[0];
    return nullptr;
}

std::vector<RingPtr> Ring::factor_rings() const {
    if (spec_.kind == RingSpec::Kind::Product) return children_;
    return {};
}

// --- CRT decomposition ---

namespace {

struct CrtBuild {
    std::vector<RingPtr> factors;
    // per source element, the tuple of factor indices
    std::vector<std::vector<int>> table;
};

CrtBuild crt_build(const RingPtr& ring) {
    CrtBuild out;
    std::size_t n = ring->size();
    if (ring->is_local()) {
        out.factors = {ring};
        out.table.resize(n);
        for (std::size_t a = 0; a < n; ++a) out.table[a] = {static_cast<int>(a)};
        return out;
    }
    const RingSpec& spec = ring->spec();
    if (spec.kind == RingSpec::Kind::Zmod) {
        long m = spec.m;
        std::vector<long> moduli;
        for (long p = 2; p <= m; ++p) {
            if (m % p) continue;
            long q = 1;
            while (m % p == 0) {
                q *= p;
                m /= p;
            }
            moduli.push_back(q);
        }
        for (long q : moduli) {
            RingSpec f;
            f.kind = RingSpec::Kind::Zmod;
            f.m = q;
            out.factors.push_back(Ring::make(f));
        }
        out.table.resize(n);
        for (std::size_t a = 0; a < n; ++a) {
            std::vector<int> comps;
            for (long q : moduli) comps.push_back(static_cast<int>(static_cast<long>(a) % q));
            out.table[a] = std::move(comps);
        }
        return out;
    }
    if (spec.kind == RingSpec::Kind::Product) {
        std::vector<RingPtr> children = ring->factor_rings();
        std::vector<CrtBuild> subs;
        for (const auto& child : children) {
            subs.push_back(crt_build(child));
            for (const auto& f : subs.back().factors) out.factors.push_back(f);
        }
        out.table.resize(n);
        for (std::size_t a = 0; a < n; ++a) {
            std::vector<int> digits = ring->components(static_cast<int>(a));
            std::vector<int> comps;
            for (std::size_t i = 0; i < children.size(); ++i) {
                const auto& sub = subs[i].table[static_cast<std::size_t>(digits[i])];
                comps.insert(comps.end(), sub.begin(), sub.end());
            }
            out.table[a] = std::move(comps);
        }
        return out;
    }
    throw std::runtime_error("factorization unavailable for " + ring->spec_string());
}

}  // namespace

std::vector<int> CrtSplit::to_factors(int a) const { return table_[static_cast<std::size_t>(a)]; }

int CrtSplit::from_factors(const std::vector<int>& comps) const {
    long code = 0;
    for (std::size_t i = 0; i < factors.size(); ++i) code += comps[i] * factor_strides_[i];
    return rev_[static_cast<std::size_t>(code)];
}

CrtSplit crt_split(const RingPtr& ring) {
    CrtBuild b = crt_build(ring);
    CrtSplit out;
    out.source = ring;
    out.factors = b.factors;
    out.table_ = std::move(b.table);
    out.factor_strides_.resize(out.factors.size());
    long stride = 1;
    for (std::size_t i = 0; i < out.factors.size(); ++i) {
        out.factor_strides_[i] = stride;
        stride *= static_cast<long>(out.factors[i]->size());
    }
    out.rev_.assign(ring->size(), -1);
    for (std::size_t a = 0; a < ring->size(); ++a) {
        long code = 0;
        for (std::size_t i = 0; i < out.factors.size(); ++i)
            code += out.table_[a][i] * out.factor_strides_[i];
        out.rev_[static_cast<std::size_t>(code)] = static_cast<int>(a);
    }
    for (int v : out.rev_)
        if (v < 0) throw std::logic_error("CRT map is not bijective for " + ring->spec_string());
    return out;
}

// --- tagged elements ---

namespace {
void check_same(const Elem& a, const Elem& b) {
    if (a.ring.get() != b.ring.get())
        throw RingMismatch("elements of " + a.ring->spec_string() + " and " + b.ring->spec_string() +
                           " cannot be combined");
}
}  // namespace

Elem operator+(const Elem& a, const Elem& b) {
    check_same(a, b);
    return {a.ring, a.ring->add(a.idx, b.idx)};
}

Elem operator-(const Elem& a, const Elem& b) {
    check_same(a, b);
    return {a.ring, a.ring->sub(a.idx, b.idx)};
}

Elem operator*(const Elem& a, const Elem& b) {
    check_same(a, b);
    return {a.ring, a.ring->mul(a.idx, b.idx)};
}

Elem operator-(const Elem& a) { return {a.ring, a.ring->neg(a.idx)}; }

bool operator==(const Elem& a, const Elem& b) { return a.ring.get() == b.ring.get() && a.idx == b.idx; }

Elem unit_inverse(const Elem& a) { return {a.ring, a.ring->unit_inverse(a.idx)}; }

}  // namespace tripoly
