#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "fermatzeta/finite_field.hpp"

namespace fermatzeta {

class ZqElement;

/// Z_q = Z_p[x]/(f) modulo p^N, with f the coefficientwise lift of the F_q modulus.
///
/// The precision N is fixed per ring; arithmetic between elements of different
/// rings throws.
class ZqRing : public std::enable_shared_from_this<ZqRing> {
public:
    static std::shared_ptr<const ZqRing> make(const FieldDescriptor& field, unsigned precision);
    /// Same p, r and modulus at another precision.
    std::shared_ptr<const ZqRing> with_precision(unsigned precision) const;

    std::uint32_t p() const { return p_; }
    std::uint32_t r() const { return r_; }
    std::uint64_t q() const { return q_; }
    unsigned precision() const { return N_; }
    const mpz_class& p_power() const { return pN_; }  // p^N
    const std::vector<mpz_class>& modulus() const { return modulus_; }

    ZqElement zero() const;
    ZqElement one() const;
    ZqElement from_int(const mpz_class& v) const;
    ZqElement from_coefficients(std::vector<mpz_class> c) const;

    bool same_as(const ZqRing& other) const {
        return p_ == other.p_ && r_ == other.r_ && N_ == other.N_ && modulus_ == other.modulus_;
    }

private:
    ZqRing() = default;
    std::uint32_t p_ = 0, r_ = 0;
    std::uint64_t q_ = 0;
    unsigned N_ = 0;
    mpz_class pN_;
    std::vector<mpz_class> modulus_;
};

using ZqRingPtr = std::shared_ptr<const ZqRing>;

/// Fixed-precision element of Z_q: r coefficients in [0, p^N).
class ZqElement {
public:
    ZqElement() = default;
    ZqElement(ZqRingPtr ring, std::vector<mpz_class> coefficients);

    const ZqRing& ring() const { return *ring_; }
    const ZqRingPtr& ring_ptr() const { return ring_; }
    const std::vector<mpz_class>& coefficients() const { return c_; }

    bool is_zero() const;
    /// min_i v_p(c_i); equals the precision N for zero.
    unsigned valuation() const;
    bool is_unit() const { return valuation() == 0; }

    ZqElement operator+(const ZqElement& o) const;
    ZqElement operator-(const ZqElement& o) const;
    ZqElement operator*(const ZqElement& o) const;
    ZqElement operator-() const;
    ZqElement& operator+=(const ZqElement& o) { return *this = *this + o; }
    ZqElement& operator-=(const ZqElement& o) { return *this = *this - o; }
    ZqElement& operator*=(const ZqElement& o) { return *this = *this * o; }
    bool operator==(const ZqElement& o) const;
    bool operator!=(const ZqElement& o) const { return !(*this == o); }

    ZqElement scale(const mpz_class& k) const;
    ZqElement pow(const mpz_class& e) const;
    ZqElement pow(std::uint64_t e) const { return pow(mpz_class(static_cast<unsigned long>(e))); }
    /// Inverse of a unit (Newton iteration from the residue inverse).
    ZqElement inverse() const;
    /// this / p^k; every coefficient must be divisible by p^k. The result keeps the
    /// ring, so its top k digits are zero-filled.
    ZqElement divide_p_power(unsigned k) const;
    /// Exact quotient this / o for v(o) <= v(this). Loses v(o) digits of absolute precision.
    ZqElement divide(const ZqElement& o) const;
    /// Reduction (or zero-padded lift) into another ring with the same p, r, modulus.
    ZqElement to_ring(const ZqRingPtr& target) const;

    std::string to_string() const;

private:
    void check_same(const ZqElement& o) const;
    ZqRingPtr ring_;
    std::vector<mpz_class> c_;
};

/// Square matrix over one ZqRing, row-major.
class ZqMatrix {
public:
    ZqMatrix() = default;
    ZqMatrix(ZqRingPtr ring, std::size_t dim);
    static ZqMatrix identity(ZqRingPtr ring, std::size_t dim);

    std::size_t dim() const { return dim_; }
    const ZqRingPtr& ring_ptr() const { return ring_; }
    ZqElement& at(std::size_t i, std::size_t j) { return e_[i * dim_ + j]; }
    const ZqElement& at(std::size_t i, std::size_t j) const { return e_[i * dim_ + j]; }

    ZqMatrix operator*(const ZqMatrix& o) const;
    ZqMatrix operator+(const ZqMatrix& o) const;
    ZqMatrix scale(const ZqElement& s) const;
    bool operator==(const ZqMatrix& o) const;
    ZqElement trace() const;
    ZqMatrix to_ring(const ZqRingPtr& target) const;

private:
    ZqRingPtr ring_;
    std::size_t dim_ = 0;
    std::vector<ZqElement> e_;
};

/// Unique t with t^q = t and t = residue mod p.
ZqElement teichmueller(const ZqRingPtr& ring, const FieldDescriptor& field, FqElem residue);

/// a / b in Z_q; throws DenominatorNotInvertible when p | b.
ZqElement embed_rational(const ZqRingPtr& ring, const mpz_class& a, const mpz_class& b);
ZqElement embed_rational(const ZqRingPtr& ring, const mpq_class& x);
/// p^shift * x; requires v_p(x) >= -shift.
ZqElement embed_rational_scaled(const ZqRingPtr& ring, const mpq_class& x, unsigned shift);

/// p-adic valuation of a nonzero rational (INT32_MAX for zero).
int valuation(const mpq_class& x, std::uint32_t p);
int valuation(const mpz_class& x, std::uint32_t p);

/// Coefficients c_0..c_n (ascending, c_n = 1) of det(t I - m), division-free (Berkowitz).
std::vector<ZqElement> char_poly(const ZqMatrix& m);

/// Inverse of a matrix with unit determinant; throws NonUnitDeterminant otherwise.
ZqMatrix mat_inverse(const ZqMatrix& m);

/// Unique integer m with |m| <= bound and m = x mod p^N.
mpz_class round_to_integer(const ZqElement& x, const mpz_class& bound);

}  // namespace fermatzeta
