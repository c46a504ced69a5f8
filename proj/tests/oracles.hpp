#pragma once

// Independent reference implementations shared by the unit tests and the
// acceptance binary. None of them call into the pipeline they check.

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "fermatzeta/finite_field.hpp"
#include "fermatzeta/monomial.hpp"

namespace oracle {

/// All valid families with the given degree bound and at most max_vars variables,
/// weights sorted nondecreasing.
std::vector<fermatzeta::FamilyDescriptor> small_families(std::uint32_t max_degree, std::size_t max_vars);

/// For every admissible k, the set {m : s k + t m = j a, s, t units} solved for m,
/// compared against the automorphism-based weak classes. Returns the number of
/// families checked, or throws std::runtime_error with the first counterexample.
std::size_t check_weak_criteria(std::uint32_t max_degree, std::size_t max_vars);

}  // namespace oracle

namespace oracle {

/// Every result of reducing x^b Omega / F^t by reduce_step in every possible
/// coordinate order until no exponent is >= d_i. Each result is (rho, c, s);
/// rho = 0 marks a form that ends with some c_i = d_i - 1.
struct StepResult {
    mpq_class rho;
    std::vector<std::uint64_t> c;
    std::uint64_t s;
    bool operator<(const StepResult& o) const;
};
std::vector<StepResult> reductions_all_orders(const fermatzeta::FamilyDescriptor& f, std::vector<std::uint64_t> b,
                                              std::uint64_t t);

/// Coefficient of lambda^e in A(lambda) omega_k, by expanding x^k Omega / (F + lambda m)^t
/// and reducing the single term x^{k + e a} / F^{t + e} with reduce_step, always in the
/// first reducible coordinate. Returns (target exponents, coefficient); coefficient 0 when
/// the form reduces to zero.
std::pair<std::vector<std::uint64_t>, mpq_class> deformation_coefficient(const fermatzeta::FamilyDescriptor& f,
                                                                        const std::vector<std::uint32_t>& k,
                                                                        std::uint64_t t, std::uint64_t e);

/// Exhaustive search for a singular point of the affine cone (other than 0) over the field.
bool has_singular_point(const fermatzeta::FamilyDescriptor& f, const fermatzeta::FieldDescriptor& field,
                        fermatzeta::FqElem lambda);

}  // namespace oracle

namespace oracle {

/// (-1)^3 sum over all q^2 pairs (v1, v2) with v1 + v2 = -1 and v1 v2 != 0 of
/// zeta_d^{e1 dlog v1 + e2 dlog v2}, as the coefficient vector over zeta_d^0..zeta_d^{d-1}.
std::vector<long> jacobi_pairs(const fermatzeta::FieldDescriptor& field, std::uint32_t d, std::uint32_t e1,
                               std::uint32_t e2);

/// #{(x, y, z) : F_lambda = 0} over the field by three nested loops and direct powering.
std::uint64_t plane_cone_count(const fermatzeta::FamilyDescriptor& f, const fermatzeta::FieldDescriptor& field,
                               fermatzeta::FqElem lambda);

}  // namespace oracle

namespace oracle {

using IntPoly = std::vector<mpz_class>;  // ascending

/// Determinant of a matrix of integer polynomials by cofactor expansion along the first row.
IntPoly det_by_cofactors(const std::vector<std::vector<IntPoly>>& m);

}  // namespace oracle
