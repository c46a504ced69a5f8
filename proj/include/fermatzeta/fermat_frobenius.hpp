#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fermatzeta/finite_field.hpp"
#include "fermatzeta/monomial.hpp"
#include "fermatzeta/padic.hpp"

namespace fermatzeta {

/// Element of Z[zeta_d], stored as sum c_i zeta^i for i < d (not reduced mod Phi_d).
struct CyclotomicInt {
    std::uint32_t d = 1;
    std::vector<mpz_class> c;

    CyclotomicInt() = default;
    explicit CyclotomicInt(std::uint32_t order);
    static CyclotomicInt integer(std::uint32_t order, const mpz_class& v);
    static CyclotomicInt root(std::uint32_t order, std::uint32_t power);

    CyclotomicInt operator+(const CyclotomicInt& o) const;
    CyclotomicInt operator-(const CyclotomicInt& o) const;
    CyclotomicInt operator*(const CyclotomicInt& o) const;
    CyclotomicInt scale(const mpz_class& k) const;
    CyclotomicInt pow(std::uint64_t e) const;
    /// Complex conjugate: zeta -> zeta^{-1}.
    CyclotomicInt conjugate() const;
    /// Coefficients in the basis 1, ..., zeta^{phi(d)-1}.
    std::vector<mpz_class> reduced() const;
    bool operator==(const CyclotomicInt& o) const { return reduced() == o.reduced(); }
    std::optional<mpz_class> as_integer() const;
    /// Image under zeta_d -> zeta (zeta a primitive d-th root of unity in the ring).
    ZqElement embed(const ZqElement& zeta) const;
    std::string to_string() const;
};

/// Phi_d, coefficients low to high.
std::vector<mpz_class> cyclotomic_polynomial(std::uint32_t d);

struct JacobiValue {
    MonomialType type;
    CyclotomicInt value;
    bool degenerate = false;  // some entry is 0 mod d
};

/// (-1)^{n+1} sum over v_1 + ... + v_n = -1 of prod chi(v_i)^{entry_i}, chi(0) = 0,
/// chi(x) = zeta_d^{dlog x mod d}. Entry 0 does not appear. Requires q = 1 mod d.
JacobiValue jacobi_sum(const FamilyDescriptor& f, const MonomialType& k, const FieldDescriptor& field);

/// zeta_d = teichmueller(generator)^{(q-1)/d}, matching chi.
ZqElement teichmueller_root_of_unity(const ZqRingPtr& ring, const FieldDescriptor& field, std::uint32_t d);

/// Normalization of the Fermat Frobenius: q^n / c_k = sign * q^{n - nu} * J_{sigma(k)},
/// sigma = identity or k -> -k.
struct Calibration {
    unsigned twist = 0;  // n - nu, so the record applies to every family
    unsigned nu(unsigned n) const { return n - twist; }
    int sign = 1;
    bool negate = false;
    /// Every (nu, sign) candidate with its count residuals, and the valuation check
    /// for both orientations.
    nlohmann::json evidence;

    nlohmann::json to_json() const;
    static Calibration from_json(const nlohmann::json& j);
};

/// The type -k (entries negated mod d), admissible whenever k is.
MonomialType negate_type(const FamilyDescriptor& f, const MonomialType& k);

/// Jacobi sums of every admissible type, keyed by exponents.
using JacobiTable = std::map<std::vector<std::uint32_t>, JacobiValue>;
JacobiTable jacobi_table(const FamilyDescriptor& f, const FieldDescriptor& field);

/// #X_0(F_{q^s}) for s = 1..counts.size() predicted by sign * q^{n-nu} * J.
std::vector<mpz_class> predicted_fermat_counts(const FamilyDescriptor& f, const JacobiTable& table, std::uint64_t q,
                                               unsigned nu, int sign, std::size_t terms);

/// Selects (nu, sign) by comparing predicted and observed #X_0(F_{q^s}), s = 1, 2, ...,
/// and the orientation by requiring v_q(q^n / c_k) = t_k - 1 (Stickelberger).
/// Throws NoConventionMatches unless exactly one candidate fits.
Calibration calibrate(const FamilyDescriptor& f, const FieldDescriptor& field,
                      const std::vector<mpz_class>& fermat_counts);

/// q^n / c_k in Z[zeta_d] under the calibration.
CyclotomicInt inverse_frobenius_constant(const FamilyDescriptor& f, const JacobiTable& table, const MonomialType& k,
                                         std::uint64_t q, const Calibration& cal);

/// q^n / c_k for each member of the class, embedded in the ring.
std::vector<ZqElement> fermat_frobenius_constants(const FamilyDescriptor& f, const TypeClass& members,
                                                  const FieldDescriptor& field, const ZqRingPtr& ring,
                                                  const JacobiTable& table, const Calibration& cal);

}  // namespace fermatzeta
