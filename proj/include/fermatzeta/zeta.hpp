#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fermatzeta/fermat_frobenius.hpp"
#include "fermatzeta/finite_field.hpp"
#include "fermatzeta/hypergeometric.hpp"
#include "fermatzeta/monomial.hpp"
#include "fermatzeta/padic.hpp"
#include "fermatzeta/point_counter.hpp"

namespace fermatzeta {

constexpr int kReportSchemaVersion = 1;

struct ZetaOptions {
    unsigned precision = 0;      // N; raised automatically to what rounding needs
    unsigned buffer = 2;
    std::size_t order = 0;       // starting L; 0 means max(25 d', d' K + 2 W)
    std::size_t pole_power = 0;  // K; 0 means adaptive, starting at p (N + buffer)
    bool clear_poles = true;
    std::size_t max_order = 20000;
    unsigned max_attempts = 8;
    unsigned jobs = 1;
};

struct StrongTelemetry {
    std::vector<std::uint32_t> first_member;
    unsigned precision = 0;
    std::size_t order = 0;
    std::size_t pole_power = 0;
    unsigned guard_digits = 0;
    unsigned tail_valuation = 0;
    unsigned attempts = 0;
};

struct ClassResult {
    TypeClass members;
    std::vector<TypeClass> strong;
    std::vector<mpz_class> polynomial;  // det(1 - q^n Frob^{-1} t) on the class, c_0 = 1
    std::size_t orbit = 0;              // index into ZetaReport::orbits
    std::optional<std::vector<mpz_class>> factor_root;  // R with polynomial = R^e, when e > 1
    std::vector<StrongTelemetry> telemetry;
};

struct Verdict {
    std::string name;
    bool pass = false;
    nlohmann::json detail;
};

struct ZetaReport {
    FamilyDescriptor family;
    std::uint32_t p = 0, r = 0;
    std::uint64_t q = 0;
    FqElem lambda = 0;
    Calibration calibration;
    std::vector<ClassResult> classes;
    std::vector<FactorOrbit> orbits;
    std::vector<mpz_class> numerator;  // product over classes: P(t)
    std::vector<Verdict> verdicts;

    unsigned n() const { return family.n(); }
    /// sum_k (q^n / c_k) = -(coefficient of t in P)
    mpz_class trace() const;
    /// #U(F_q) predicted by the Lefschetz trace formula.
    mpz_class predicted_open_count() const;
    /// #X(F_{q^s}) predicted from P for s = 1..terms.
    std::vector<mpz_class> predicted_counts(std::size_t terms) const;
};

/// Frobenius on one strong class at the Teichmueller lift of lambda: q^n Frob^{-1}, precision N.
ZqMatrix frobenius_block(const FamilyDescriptor& f, const TypeClass& members, const FieldDescriptor& field,
                         FqElem lambda, const JacobiTable& table, const Calibration& cal, unsigned N,
                         const ZetaOptions& opt, StrongTelemetry* tel = nullptr);

/// Smallest N with p^N > 2 max_i binom(D, i) q^{i w / 2}.
unsigned rounding_precision(std::uint32_t p, std::uint64_t q, std::size_t D, unsigned w);

/// Checks the gates: q = 1 mod d, p prime to d and the weights, quasi-smoothness.
void check_pipeline_gates(const FamilyDescriptor& f, const FieldDescriptor& field, FqElem lambda);

ZetaReport compute_zeta(const FamilyDescriptor& f, const FieldDescriptor& field, FqElem lambda, const Calibration& cal,
                        const ZetaOptions& opt = {});

/// Lefschetz trace against #U(F_q), the numerator against zeta_from_counts when the
/// counts determine it, and the functional equation of every class polynomial.
void verify(ZetaReport& report, const std::vector<PointCount>& counts);

/// Polynomial R with R^e = P and R(0) = 1, if it has integer coefficients.
std::optional<std::vector<mpz_class>> integer_root(const std::vector<mpz_class>& P, std::size_t e);

/// Whether c_{D-i} = eps q^{w (D/2 - i)} c_i for all i, for eps = 1 or -1; returns eps or 0.
int functional_equation_sign(const std::vector<mpz_class>& c, std::uint64_t q, unsigned w);

std::vector<mpz_class> poly_mul(const std::vector<mpz_class>& a, const std::vector<mpz_class>& b);

/// Canonical report: no telemetry, so the bytes only depend on the mathematical content.
nlohmann::json report_to_json(const ZetaReport& r, bool telemetry = false);
std::string polynomial_to_string(const std::vector<mpz_class>& c, const std::string& var = "t");

/// Hesse at q = 7 and the quartic (2,2,0) at q = 5, λ = 0, counted over F_q and F_{q^2}.
/// Both must select the same convention.
Calibration default_calibration();

}  // namespace fermatzeta
