#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <vector>

#include "fermatzeta/finite_field.hpp"
#include "fermatzeta/monomial.hpp"

namespace fermatzeta {

/// The form x^b Omega / F^t on the Fermat hypersurface F = sum x_i^{d_i}.
struct PoleForm {
    std::vector<std::uint64_t> b;
    std::uint64_t t = 1;
};

/// rho * x^c Omega / F^s, or zero.
struct ReducedForm {
    mpq_class rho;
    std::vector<std::uint32_t> c;
    std::uint64_t s = 0;
    bool zero = false;
};

/// sum w_i b_i + sum w_i = t d.
bool is_homogeneous(const FamilyDescriptor& f, const PoleForm& form);

struct ReductionStep {
    mpq_class multiplier;
    PoleForm form;
};

/// One reduction in x_i: multiplier (b_i + 1 - d_i) / ((t - 1) d_i), b_i -> b_i - d_i, t -> t - 1.
ReductionStep reduce_step(const FamilyDescriptor& f, const PoleForm& form, std::size_t i);

/// (a)_m = a (a+1) ... (a+m-1).
mpq_class pochhammer(const mpq_class& a, std::uint64_t m);

/// Closed form of the full reduction: rho = prod ((c_i+1) w_i / d)_{q_i} / (s)_{t-s}
/// with b_i = q_i d_i + c_i; zero if some c_i = d_i - 1.
ReducedForm complete_reduction(const FamilyDescriptor& f, const PoleForm& form);

/// Data of the quasi-smoothness criterion in characteristic p (p = 0 for characteristic zero):
/// the member is singular iff lambda^{d''} = value, unless always_smooth.
struct Discriminant {
    bool always_smooth = false;  // some nonzero a_i is divisible by p
    std::uint32_t g = 1;         // gcd of a_i w_i over i with a_i != 0 mod p
    std::uint32_t order = 1;     // d'' = d / g
    mpq_class value;             // (-1)^{d''} d^{d''} / prod (a_i w_i)^{a_i w_i / g}
};
Discriminant discriminant(const FamilyDescriptor& f, std::uint32_t p);

bool quasi_smooth(const FamilyDescriptor& f, const FieldDescriptor& field, FqElem lambda);
bool quasi_smooth(const FamilyDescriptor& f, const mpq_class& lambda);

}  // namespace fermatzeta
