#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fermatzeta/monomial.hpp"
#include "fermatzeta/padic.hpp"

namespace fermatzeta {

/// One entry of A(lambda): the coefficient of omega_target in A(lambda) omega_source is
///   (-1)^{j0} C rho lambda^{j0} * pFq(upper; lower; z),  z = kappa (-lambda)^{d'}.
struct HypergeometricSpec {
    MonomialType source;
    MonomialType target;
    std::uint32_t j0 = 0;
    mpz_class binomial;  // C = binom(t + j0 - 1, j0)
    mpq_class rho;       // reduction coefficient of x^{k + j0 a} / F^{t + j0}
    std::vector<mpq_class> upper;
    std::vector<mpq_class> lower;  // without the 1 that accounts for j!
    mpq_class kappa;
    std::uint32_t dprime = 1;

    /// (-1)^{j0} C rho: the coefficient of lambda^{j0} in the entry.
    mpq_class prefactor() const;
    /// kappa (-1)^{d'}: the coefficient of lambda^{d'} in z.
    mpq_class argument() const;
};

std::vector<HypergeometricSpec> deformation_block_specs(const FamilyDescriptor& f, const MonomialType& k);

/// Cancels equal upper/lower parameters (as multisets); sorts both lists.
HypergeometricSpec canonicalize_spec(HypergeometricSpec spec);

/// Coefficients of lambda^0 .. lambda^L of the entry.
std::vector<mpq_class> series_coefficients(const HypergeometricSpec& spec, std::size_t L);

nlohmann::json spec_to_json(const HypergeometricSpec& spec);
/// e.g. -\lambda\,{}_2F_1\left(\begin{matrix}\frac{2}{3},\frac{2}{3}\\\frac{4}{3}\end{matrix};-\frac{\lambda^{3}}{27}\right)
std::string spec_to_latex(const HypergeometricSpec& spec);
std::string rational_to_latex(const mpq_class& x);

/// Truncated power series in lambda with dim x dim matrix coefficients.
template <class T>
struct SeriesMatrix {
    std::size_t dim = 0;
    std::size_t order = 0;  // coefficients of lambda^0 .. lambda^order
    std::vector<T> c;

    SeriesMatrix() = default;
    SeriesMatrix(std::size_t d, std::size_t L, const T& zero) : dim(d), order(L), c((L + 1) * d * d, zero) {}
    T& at(std::size_t e, std::size_t i, std::size_t j) { return c[(e * dim + i) * dim + j]; }
    const T& at(std::size_t e, std::size_t i, std::size_t j) const { return c[(e * dim + i) * dim + j]; }
};

using RationalSeries = SeriesMatrix<mpq_class>;
using ZqSeries = SeriesMatrix<ZqElement>;

/// A(lambda) restricted to one strong class (members in the given order): entry (m, k)
/// is the coefficient of omega_m in A(lambda) omega_k.
RationalSeries deformation_matrix(const FamilyDescriptor& f, const TypeClass& members, std::size_t L);

/// A(lambda) entry-by-entry from the expansion of x^k Omega / F_lambda^t and complete reduction.
RationalSeries deformation_matrix_by_reduction(const FamilyDescriptor& f, const TypeClass& members, std::size_t L);

/// Inverse series; requires A(0) = I.
RationalSeries series_inverse(const RationalSeries& A, std::size_t L);

/// Minimal p-adic valuation over all coefficients (0 if all vanish or all are integral).
int min_valuation(const RationalSeries& s, std::uint32_t p);

/// r(lambda) = 1 - kappa (-lambda)^{d'}: vanishes exactly at the singular members.
struct PoleFactor {
    mpq_class kappa_signed;  // kappa (-1)^{d'}
    std::uint32_t degree = 1;
};
PoleFactor pole_factor(const FamilyDescriptor& f);

struct FrobeniusSeriesOptions {
    unsigned precision = 8;       // N: digits wanted in the evaluated matrix
    unsigned buffer = 2;          // extra digits required by the tail criterion
    std::size_t order = 0;        // L
    std::size_t pole_power = 0;   // K; the series is multiplied by r(lambda)^K
    std::size_t window = 0;       // W; 0 means max(10, 4 d')
};

struct FrobeniusSeries {
    ZqSeries series;            // r^K * A(lambda^q)^{-1} diag(e) A(lambda), mod p^{N + buffer}
    std::size_t pole_power = 0;
    PoleFactor pole;
    unsigned guard_digits = 0;  // p-adic digits spent on denominators of A and A^{-1}
};

/// q^n / c_k for member `index` of the class, in the given ring.
using EigenFunction = std::function<ZqElement(std::size_t index, const ZqRingPtr& ring)>;

/// Series of q^n Frob^{-1} = A(lambda^q)^{-1} diag(e) A(lambda) on one strong class,
/// multiplied by r(lambda)^K. A and A^{-1} are exact rational series; they are
/// embedded into Z_q with enough extra digits to absorb their p-adic denominators.
FrobeniusSeries frobenius_series(const FamilyDescriptor& f, const TypeClass& members, const ZqRingPtr& base,
                                 const EigenFunction& eigen, const FrobeniusSeriesOptions& opt);

struct TailReport {
    bool converged = false;
    unsigned min_tail_valuation = 0;
    std::size_t window = 0;
};

/// Horner evaluation at a Teichmueller point and division by r(lambda0)^K.
/// Throws TailNotConverged unless the last W coefficients all vanish mod p^{N + buffer}.
ZqMatrix evaluate_at_teichmueller(const FrobeniusSeries& S, const ZqElement& lambda0, const FrobeniusSeriesOptions& opt,
                                  TailReport* report = nullptr);

TailReport tail_report(const FrobeniusSeries& S, const FrobeniusSeriesOptions& opt);

}  // namespace fermatzeta
