#pragma once

#include <memory>
#include <string>
#include <vector>

#include "tripoly/common.hpp"

namespace tripoly {

/// Parsed ring descriptor. Grammar:
///   "Z<m>" | "F<p>" | "F<p>^<r>:<modulus-poly>" | "<base>[t]/t^<e>"
///   | "<base>[a1..a<k>]dual" | "<spec>x<spec>" | "(" <spec> ")"
/// e.g. "Z4", "F3", "F2^2:t^2+t+1", "Z4[a1..a1]dual", "Z4xF3".
struct RingSpec {
    enum class Kind { Zmod, PrimeField, ExtField, Trunc, Dual, Product };

    Kind kind = Kind::Zmod;
    long m = 0;                    // modulus for Zmod, p for the field kinds
    int degree = 0;                // r for ExtField, e for Trunc, k for Dual
    std::vector<int> modulus;      // ExtField modulus coefficients c0..cr, monic
    std::vector<RingSpec> parts;   // base ring for Trunc/Dual, factors for Product

    static RingSpec parse(const std::string& text);
    std::string str() const;
};

class Ring;
using RingPtr = std::shared_ptr<const Ring>;

/// A finite commutative ring with identity, fully enumerated and classified at
/// construction. Elements are canonical indices 0..size()-1 with 0 the zero
/// element and 1 the multiplicative identity. Immutable after construction.
class Ring : public std::enable_shared_from_this<Ring> {
public:
    static constexpr std::size_t kDefaultCap = 4096;

    static RingPtr make(const std::string& spec, std::size_t cap = kDefaultCap);
    static RingPtr make(const RingSpec& spec, std::size_t cap = kDefaultCap);

    std::size_t size() const { return size_; }
    int zero() const { return 0; }
    int one() const { return 1; }

    int add(int a, int b) const;
    int sub(int a, int b) const;
    int neg(int a) const;
    int mul(int a, int b) const;
    int pow(int a, u64 e) const;
    int from_int(long n) const;  // n * 1

    bool is_unit(int a) const { return unit_inv_[static_cast<std::size_t>(a)] >= 0; }
    bool is_nilpotent(int a) const { return nilpotent_[static_cast<std::size_t>(a)] != 0; }
    int unit_inverse(int a) const;  // throws NotAUnit
    const std::vector<int>& units() const { return units_; }
    const std::vector<int>& nilpotents() const { return nilpotents_; }

    bool is_local() const { return local_; }
    /// The unique maximal ideal. Only meaningful for local rings.
    const std::vector<int>& maximal_ideal() const;
    /// Size q of the residue field R/M.
    int residue_field_size() const;
    /// Residue class id in 0..q-1; id 0 is the class of 0, so
    /// residue(a) != 0 iff a is a unit.
    int residue(int a) const;
    /// Characteristic p of the residue field (local rings only).
    int residue_characteristic() const;

    int characteristic() const { return characteristic_; }
    bool is_field() const { return local_ && max_ideal_.size() == 1; }

    const RingSpec& spec() const { return spec_; }
    std::string spec_string() const { return spec_.str(); }
    std::string element_str(int a) const;

    /// Digit decomposition of an element: factor components for products,
    /// base-ring coefficient indices for Trunc/Dual extensions, base-p
    /// coefficients for extension fields, the value itself for Z/m.
    std::vector<int> components(int a) const;
    int from_components(const std::vector<int>& comps) const;
    /// Base ring of a Trunc/Dual extension; null otherwise.
    RingPtr base_ring() const;
    /// Factor rings of a product; empty otherwise.
    std::vector<RingPtr> factor_rings() const;

    Ring(const Ring&) = delete;
    Ring& operator=(const Ring&) = delete;

private:
    Ring() = default;

    long code_of_index(int idx) const;
    int index_of_code(long code) const;
    long code_add(long a, long b) const;
    long code_mul(long a, long b) const;
    long code_neg(long a) const;

    void classify();

    RingSpec spec_;
    std::size_t size_ = 0;
    int characteristic_ = 0;

    // kind-specific data
    std::vector<RingPtr> children_;   // Trunc/Dual base, Product factors
    std::vector<long> strides_;       // mixed-radix strides for digit kinds
    std::vector<int> radices_;        // digit radices
    std::vector<int> modulus_;        // ExtField reduction polynomial

    // index <-> natural code permutation (identity unless a swap is needed to
    // put the identity element at index 1)
    std::vector<long> idx2code_;
    std::vector<int> code2idx_;
    bool index_permuted_ = false;

    // memoized operation tables for small rings
    std::vector<std::uint16_t> add_table_, mul_table_;
    std::vector<int> neg_table_;

    std::vector<int> unit_inv_;       // -1 for non-units
    std::vector<char> nilpotent_;
    std::vector<int> units_, nilpotents_;

    bool local_ = false;
    std::vector<int> max_ideal_;
    int residue_q_ = 0;
    int residue_p_ = 0;
    std::vector<int> residue_class_;
};

/// Element-wise isomorphism between a ring and the product of its local factors.
struct CrtSplit {
    RingPtr source;
    std::vector<RingPtr> factors;
    std::vector<int> to_factors(int a) const;
    int from_factors(const std::vector<int>& comps) const;

    std::vector<std::vector<int>> table_;
    std::vector<long> factor_strides_;
    std::vector<int> rev_;
};

/// Decomposes a ring into local factors. Local rings split as themselves,
/// Z/m by the factorization of m, products factor-wise.
/// Throws CapExceeded-free ParseError-free std::runtime_error if no
/// factorization route applies.
CrtSplit crt_split(const RingPtr& ring);

/// A ring element tagged with its ring, for mismatch-checked arithmetic.
struct Elem {
    RingPtr ring;
    int idx = 0;

    friend Elem operator+(const Elem& a, const Elem& b);
    friend Elem operator-(const Elem& a, const Elem& b);
    friend Elem operator*(const Elem& a, const Elem& b);
    friend Elem operator-(const Elem& a);
    friend bool operator==(const Elem& a, const Elem& b);
};

Elem unit_inverse(const Elem& a);

}  // namespace tripoly
