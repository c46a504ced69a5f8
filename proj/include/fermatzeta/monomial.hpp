#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace fermatzeta {

/// F_lambda = sum x_i^{d_i} + lambda * prod x_i^{a_i} in P(w_0, ..., w_n), d_i = d / w_i.
struct FamilyDescriptor {
    std::vector<std::uint32_t> weights;
    std::uint32_t degree = 0;
    std::vector<std::uint32_t> deformation;

    /// Validates w_i | d, 0 <= a_i < d_i, sum w_i a_i = d and at least two nonzero a_i.
    static FamilyDescriptor make(std::vector<std::uint32_t> weights, std::uint32_t degree,
                                 std::vector<std::uint32_t> deformation);

    std::size_t num_vars() const { return weights.size(); }
    /// Dimension of the ambient projective space.
    unsigned n() const { return static_cast<unsigned>(weights.size()) - 1; }
    std::uint32_t exponent_degree(std::size_t i) const { return degree / weights[i]; }  // d_i
    /// Type vector of the deformation monomial: (w_i a_i mod d).
    std::vector<std::uint32_t> deformation_vector() const;
    /// d' = additive order of the deformation vector = lcm_i of the order of a_i mod d_i.
    std::uint32_t deformation_order() const;
    std::string label() const;
};

/// A monomial type with its canonical exponents: entries_i = w_i (k_i + 1) mod d.
struct MonomialType {
    std::vector<std::uint32_t> exponents;  // k_i
    std::vector<std::uint32_t> entries;    // type vector
    std::uint32_t degree = 0;              // t = sum w_i (k_i + 1) / d

    bool operator==(const MonomialType& o) const { return exponents == o.exponents; }
    bool operator<(const MonomialType& o) const { return exponents < o.exponents; }
};

std::string format_exponents(const MonomialType& k);
std::string format_entries(const MonomialType& k);

/// Type with the given exponents; nullopt unless 0 <= k_i <= d_i - 2 and sum w_i(k_i+1) = 0 mod d.
std::optional<MonomialType> type_from_exponents(const FamilyDescriptor& f, const std::vector<std::uint32_t>& exps);
/// Type with the given entries (reduced mod d); nullopt if not admissible.
std::optional<MonomialType> type_from_entries(const FamilyDescriptor& f, const std::vector<std::int64_t>& entries);

/// All admissible types, lexicographic in the exponents.
std::vector<MonomialType> enumerate_admissible(const FamilyDescriptor& f);

/// k + j * a in the type group (nullopt when not admissible).
std::optional<MonomialType> shift_type(const FamilyDescriptor& f, const MonomialType& k, std::int64_t j);

bool strongly_equivalent(const MonomialType& k, const MonomialType& m, const FamilyDescriptor& f);

/// Admissible automorphism types: b in prod Z/d_i with sum w_i b_i a_i = 0 mod d.
std::vector<std::vector<std::uint32_t>> admissible_automorphisms(const FamilyDescriptor& f);

/// Some admissible b fixes omega_k (sum b_i w_i (k_i+1) = 0 mod d) but not omega_m.
bool distinguishable_by_automorphisms(const MonomialType& k, const MonomialType& m, const FamilyDescriptor& f);
bool weakly_equivalent(const MonomialType& k, const MonomialType& m, const FamilyDescriptor& f);
/// Exists units s, t of Z/d and j with s k + t m = j a: the arithmetic form of weak equivalence.
bool weakly_equivalent_arithmetic(const MonomialType& k, const MonomialType& m, const FamilyDescriptor& f);

using TypeClass = std::vector<MonomialType>;

/// Equivalence classes under `related`, each sorted, ordered by smallest member.
std::vector<TypeClass> partition(const std::vector<MonomialType>& types,
                                 const std::function<bool(const MonomialType&, const MonomialType&)>& related);
/// Same results as partition() with the respective relations, computed by invariants.
std::vector<TypeClass> strong_classes(const FamilyDescriptor& f, const std::vector<MonomialType>& types);
std::vector<TypeClass> weak_classes(const FamilyDescriptor& f, const std::vector<MonomialType>& types);

/// Type q * k, re-canonicalized. Requires gcd(q, d) = 1.
MonomialType frobenius_image(const FamilyDescriptor& f, const MonomialType& k, std::uint64_t q);

/// Coordinate permutations preserving (w_i, a_i); empty when there are more than `cap`.
std::vector<std::vector<std::size_t>> family_symmetries(const FamilyDescriptor& f, std::size_t cap = 40320);

/// Weak classes grouped into orbits of the family's coordinate symmetries.
///
/// Classes in one orbit carry the same zeta factor. Inside a class, symmetries
/// that stabilize it permute its strong classes; when these orbits all have the
/// same size e, the class polynomial is an e-th power of a factor of degree
/// class_size / e.
struct FactorOrbit {
    std::size_t representative = 0;    // index into the weak class list
    std::vector<std::size_t> members;  // indices into the weak class list
    std::size_t class_size = 0;
    std::size_t power = 1;             // e
    std::size_t factor_degree = 0;     // class_size / e
    /// Strong classes of the representative, grouped by the stabilizer (indices
    /// into the strong_classes() list of the representative's members).
    std::vector<std::vector<std::size_t>> strong_orbits;
    std::size_t multiplicity() const { return members.size() * power; }
};
std::vector<FactorOrbit> symmetry_orbits(const FamilyDescriptor& f, const std::vector<TypeClass>& weak);

}  // namespace fermatzeta
