#pragma once

#include <cstdint>
#include <memory>
#include <vector>

namespace fermatzeta {

/// An element of F_q, encoded as the integer sum c_0 + c_1 p + ... + c_{r-1} p^{r-1}
/// of its coordinates in the polynomial basis 1, x, ..., x^{r-1}.
using FqElem = std::uint32_t;

bool is_prime(std::uint64_t n);
/// Distinct prime divisors, increasing.
std::vector<std::uint64_t> prime_factors(std::uint64_t n);

/// F_q = F_p[x]/(modulus) with a full discrete-log table.
///
/// Immutable after construction; multiplication goes through the log tables,
/// addition is coordinatewise mod p.
class FieldDescriptor {
public:
    std::uint32_t p = 0;
    std::uint32_t r = 0;
    std::uint32_t q = 0;
    /// Monic, degree r, coefficients low to high (size r + 1).
    std::vector<std::uint32_t> modulus;
    FqElem generator = 0;

    FqElem zero() const { return 0; }
    FqElem one() const { return 1; }

    FqElem add(FqElem a, FqElem b) const;
    FqElem sub(FqElem a, FqElem b) const;
    FqElem neg(FqElem a) const;
    FqElem mul(FqElem a, FqElem b) const {
        if (a == 0 || b == 0) return 0;
        std::uint32_t e = log_[a] + log_[b];
        if (e >= q - 1) e -= q - 1;
        return exp_[e];
    }
    FqElem inv(FqElem a) const;
    FqElem pow(FqElem a, std::uint64_t e) const;
    /// Image of an integer under Z -> F_p -> F_q.
    FqElem from_int(std::int64_t v) const;

    /// Discrete log base `generator`; x must be nonzero.
    std::uint32_t dlog(FqElem x) const;
    FqElem exp(std::uint64_t e) const { return exp_[e % (q - 1)]; }

    /// Coordinates c_0..c_{r-1}.
    std::vector<std::uint32_t> coordinates(FqElem a) const;
    FqElem from_coordinates(const std::vector<std::uint32_t>& c) const;

    /// Full additive order used by the enumeration code: elements are 0..q-1.
    std::uint32_t size() const { return q; }

private:
    friend FieldDescriptor field_make(std::uint32_t, std::uint32_t, std::uint64_t);
    std::vector<std::uint32_t> log_;
    std::vector<FqElem> exp_;
};

/// Deterministic F_{p^r}: lexicographically smallest monic irreducible modulus
/// (comparing coefficient vectors from x^{r-1} down to x^0) and the smallest
/// element of multiplicative order q - 1 as generator.
FieldDescriptor field_make(std::uint32_t p, std::uint32_t r, std::uint64_t table_cap = 1u << 22);

/// d-th power residue character chi(x) = zeta_d^{e(x)}, e(x) = dlog(x) mod d.
struct CharacterDescriptor {
    std::shared_ptr<const FieldDescriptor> field;
    std::uint32_t d = 1;

    CharacterDescriptor(std::shared_ptr<const FieldDescriptor> f, std::uint32_t degree);
};

/// e(x) = dlog(x) mod d; x = 0 is rejected (the chi(0) = 0 convention is the caller's).
std::uint32_t char_exponent(const CharacterDescriptor& chi, FqElem x);

/// Embedding F_q -> F_{q^s} as a lookup table indexed by the small field's elements.
/// Sends the small modulus' root x to the smallest root of that modulus in the big field.
std::vector<FqElem> field_embedding(const FieldDescriptor& small, const FieldDescriptor& big);

/// True when `modulus` (monic, low to high) is irreducible over F_p (Rabin's test).
bool is_irreducible_mod_p(const std::vector<std::uint32_t>& modulus, std::uint32_t p);

}  // namespace fermatzeta
