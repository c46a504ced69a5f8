#include "fermatzeta/padic.hpp"

#include <climits>
#include <sstream>

#include "fermatzeta/error.hpp"

namespace fermatzeta {

namespace {

mpz_class ipow(std::uint32_t p, unsigned e) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), p, e);
    return r;
}

void reduce(mpz_class& x, const mpz_class& m) { mpz_mod(x.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t()); }

// Reduce a coefficient vector modulo the monic ring modulus and p^N.
std::vector<mpz_class> normalize(std::vector<mpz_class> c, const ZqRing& R) {
    const std::size_t r = R.r();
    const auto& f = R.modulus();
    for (std::size_t k = c.size(); k-- > r;) {
        if (c[k] == 0) continue;
        const mpz_class lead = c[k];
        for (std::size_t j = 0; j < r; ++j) c[k - r + j] -= lead * f[j];
        c[k] = 0;
    }
    c.resize(r);
    for (auto& x : c) reduce(x, R.p_power());
    return c;
}

}  // namespace

std::shared_ptr<const ZqRing> ZqRing::make(const FieldDescriptor& field, unsigned precision) {
    if (precision < 1) throw Error(ErrorKind::invalid_argument, "InvalidPrecision", "precision must be >= 1");
    std::shared_ptr<ZqRing> R(new ZqRing());
    R->p_ = field.p;
    R->r_ = field.r;
    R->q_ = field.q;
    R->N_ = precision;
    R->pN_ = ipow(field.p, precision);
    for (auto c : field.modulus) R->modulus_.emplace_back(c);
    return R;
}

std::shared_ptr<const ZqRing> ZqRing::with_precision(unsigned precision) const {
    if (precision < 1) throw Error(ErrorKind::invalid_argument, "InvalidPrecision", "precision must be >= 1");
    std::shared_ptr<ZqRing> R(new ZqRing(*this));
    R->N_ = precision;
    R->pN_ = ipow(p_, precision);
    return R;
}

ZqElement ZqRing::zero() const { return from_int(0); }
ZqElement ZqRing::one() const { return from_int(1); }

ZqElement ZqRing::from_int(const mpz_class& v) const {
    std::vector<mpz_class> c(r_);
    c[0] = v;
    return ZqElement(shared_from_this(), std::move(c));
}

ZqElement ZqRing::from_coefficients(std::vector<mpz_class> c) const {
    return ZqElement(shared_from_this(), std::move(c));
}

ZqElement::ZqElement(ZqRingPtr ring, std::vector<mpz_class> coefficients) : ring_(std::move(ring)) {
    c_ = normalize(std::move(coefficients), *ring_);
}

void ZqElement::check_same(const ZqElement& o) const {
    if (!ring_ || !o.ring_ || (ring_ != o.ring_ && !ring_->same_as(*o.ring_)))
        throw Error(ErrorKind::invalid_argument, "RingMismatch", "operands live in different Z_q rings");
}

bool ZqElement::is_zero() const {
    for (const auto& x : c_)
        if (x != 0) return false;
    return true;
}

unsigned ZqElement::valuation() const {
    unsigned v = ring_->precision();
    for (const auto& x : c_) {
        if (x == 0) continue;
        const int vx = fermatzeta::valuation(x, ring_->p());
        if (static_cast<unsigned>(vx) < v) v = static_cast<unsigned>(vx);
    }
    return v;
}

ZqElement ZqElement::operator+(const ZqElement& o) const {
    check_same(o);
    ZqElement out = *this;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        out.c_[i] += o.c_[i];
        if (out.c_[i] >= ring_->p_power()) out.c_[i] -= ring_->p_power();
    }
    return out;
}

ZqElement ZqElement::operator-(const ZqElement& o) const {
    check_same(o);
    ZqElement out = *this;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        out.c_[i] -= o.c_[i];
        if (out.c_[i] < 0) out.c_[i] += ring_->p_power();
    }
    return out;
}

ZqElement ZqElement::operator-() const {
    ZqElement out = *this;
    for (auto& x : out.c_)
        if (x != 0) x = ring_->p_power() - x;
    return out;
}

ZqElement ZqElement::operator*(const ZqElement& o) const {
    check_same(o);
    const std::size_t r = c_.size();
    if (r == 1) {
        ZqElement out = *this;
        out.c_[0] *= o.c_[0];
        reduce(out.c_[0], ring_->p_power());
        return out;
    }
    std::vector<mpz_class> prod(2 * r - 1);
    for (std::size_t i = 0; i < r; ++i) {
        if (c_[i] == 0) continue;
        for (std::size_t j = 0; j < r; ++j) prod[i + j] += c_[i] * o.c_[j];
    }
    return ZqElement(ring_, std::move(prod));
}

bool ZqElement::operator==(const ZqElement& o) const {
    check_same(o);
    return c_ == o.c_;
}

ZqElement ZqElement::scale(const mpz_class& k) const {
    std::vector<mpz_class> c = c_;
    for (auto& x : c) x *= k;
    return ZqElement(ring_, std::move(c));
}

ZqElement ZqElement::pow(const mpz_class& e) const {
    if (e < 0) return inverse().pow(mpz_class(-e));
    ZqElement result = ring_->one();
    ZqElement base = *this;
    const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (std::size_t b = bits; b-- > 0;) {
        result = result * result;
        if (mpz_tstbit(e.get_mpz_t(), b)) result = result * base;
    }
    return result;
}

ZqElement ZqElement::inverse() const {
    if (!is_unit())
        throw Error(ErrorKind::invalid_argument, "NotAUnit",
                    "element of valuation " + std::to_string(valuation()) + " has no inverse");
    if (c_.size() == 1) {
        ZqElement out = *this;
        mpz_invert(out.c_[0].get_mpz_t(), c_[0].get_mpz_t(), ring_->p_power().get_mpz_t());
        return out;
    }
    // residue inverse a^{q-2} in precision 1, then Newton x <- x(2 - a x)
    const auto R1 = ring_->with_precision(1);
    const ZqElement a1 = to_ring(R1);
    ZqElement x = a1.pow(static_cast<std::uint64_t>(ring_->q() - 2)).to_ring(ring_);
    const ZqElement two = ring_->from_int(2);
    for (unsigned prec = 1; prec < ring_->precision(); prec *= 2) x = x * (two - *this * x);
    return x;
}

ZqElement ZqElement::divide_p_power(unsigned k) const {
    if (k == 0) return *this;
    const mpz_class pk = ipow(ring_->p(), k);
    ZqElement out = *this;
    for (auto& x : out.c_) {
        if (!mpz_divisible_p(x.get_mpz_t(), pk.get_mpz_t()))
            throw Error(ErrorKind::invalid_argument, "NotDivisible",
                        "element is not divisible by p^" + std::to_string(k));
        mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), pk.get_mpz_t());
    }
    return out;
}

ZqElement ZqElement::divide(const ZqElement& o) const {
    check_same(o);
    const unsigned v = o.valuation();
    if (v >= ring_->precision())
        throw Error(ErrorKind::invalid_argument, "DivisionByZero", "division by zero in Z_q");
    if (valuation() < v)
        throw Error(ErrorKind::invalid_argument, "NotDivisible", "quotient is not integral");
    return divide_p_power(v) * o.divide_p_power(v).inverse();
}

ZqElement ZqElement::to_ring(const ZqRingPtr& target) const {
    if (target->p() != ring_->p() || target->r() != ring_->r() || target->modulus() != ring_->modulus())
        throw Error(ErrorKind::invalid_argument, "RingMismatch", "incompatible Z_q rings");
    return ZqElement(target, c_);
}

std::string ZqElement::to_string() const {
    if (c_.size() == 1) return c_[0].get_str();
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < c_.size(); ++i) os << (i ? ", " : "") << c_[i].get_str();
    os << ']';
    return os.str();
}

ZqMatrix::ZqMatrix(ZqRingPtr ring, std::size_t dim) : ring_(std::move(ring)), dim_(dim) {
    if (dim_ == 0) throw Error(ErrorKind::invalid_argument, "EmptyMatrix", "matrix dimension must be >= 1");
    e_.assign(dim_ * dim_, ring_->zero());
}

ZqMatrix ZqMatrix::identity(ZqRingPtr ring, std::size_t dim) {
    ZqMatrix m(ring, dim);
    for (std::size_t i = 0; i < dim; ++i) m.at(i, i) = ring->one();
    return m;
}

ZqMatrix ZqMatrix::operator*(const ZqMatrix& o) const {
    if (dim_ != o.dim_) throw Error(ErrorKind::invalid_argument, "DimensionMismatch", "matrix sizes differ");
    ZqMatrix out(ring_, dim_);
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t k = 0; k < dim_; ++k) {
            const ZqElement& a = at(i, k);
            if (a.is_zero()) continue;
            for (std::size_t j = 0; j < dim_; ++j) out.at(i, j) += a * o.at(k, j);
        }
    return out;
}

ZqMatrix ZqMatrix::operator+(const ZqMatrix& o) const {
    if (dim_ != o.dim_) throw Error(ErrorKind::invalid_argument, "DimensionMismatch", "matrix sizes differ");
    ZqMatrix out = *this;
    for (std::size_t i = 0; i < e_.size(); ++i) out.e_[i] += o.e_[i];
    return out;
}

ZqMatrix ZqMatrix::scale(const ZqElement& s) const {
    ZqMatrix out = *this;
    for (auto& x : out.e_) x = x * s;
    return out;
}

bool ZqMatrix::operator==(const ZqMatrix& o) const { return dim_ == o.dim_ && e_ == o.e_; }

ZqElement ZqMatrix::trace() const {
    ZqElement t = ring_->zero();
    for (std::size_t i = 0; i < dim_; ++i) t += at(i, i);
    return t;
}

ZqMatrix ZqMatrix::to_ring(const ZqRingPtr& target) const {
    ZqMatrix out(target, dim_);
    for (std::size_t i = 0; i < e_.size(); ++i) out.e_[i] = e_[i].to_ring(target);
    return out;
}

ZqElement teichmueller(const ZqRingPtr& ring, const FieldDescriptor& field, FqElem residue) {
    if (field.p != ring->p() || field.r != ring->r())
        throw Error(ErrorKind::invalid_argument, "RingMismatch", "residue field does not match Z_q");
    std::vector<mpz_class> c;
    for (auto x : field.coordinates(residue)) c.emplace_back(x);
    ZqElement t(ring, std::move(c));
    if (t.is_zero()) return t;
    const mpz_class q(static_cast<unsigned long>(ring->q()));
    for (unsigned it = 0; it <= ring->precision() + 1; ++it) {
        ZqElement next = t.pow(q);
        if (next == t) return t;
        t = std::move(next);
    }
    return t;
}

int valuation(const mpz_class& x, std::uint32_t p) {
    if (x == 0) return INT_MAX;
    mpz_class tmp;
    const mpz_class pz(p);
    return static_cast<int>(mpz_remove(tmp.get_mpz_t(), x.get_mpz_t(), pz.get_mpz_t()));
}

int valuation(const mpq_class& x, std::uint32_t p) {
    if (x == 0) return INT_MAX;
    return valuation(mpz_class(x.get_num()), p) - valuation(mpz_class(x.get_den()), p);
}

ZqElement embed_rational(const ZqRingPtr& ring, const mpz_class& a, const mpz_class& b) {
    if (b == 0) throw Error(ErrorKind::invalid_argument, "DivisionByZero", "zero denominator");
    mpz_class inv;
    if (mpz_invert(inv.get_mpz_t(), b.get_mpz_t(), ring->p_power().get_mpz_t()) == 0)
        throw Error(ErrorKind::gate, "DenominatorNotInvertible",
                    "denominator " + b.get_str() + " is divisible by p = " + std::to_string(ring->p()));
    return ring->from_int(a * inv);
}

ZqElement embed_rational(const ZqRingPtr& ring, const mpq_class& x) {
    return embed_rational(ring, x.get_num(), x.get_den());
}

ZqElement embed_rational_scaled(const ZqRingPtr& ring, const mpq_class& x, unsigned shift) {
    if (x == 0) return ring->zero();
    mpz_class den = x.get_den();
    const mpz_class pz(ring->p());
    const unsigned e = static_cast<unsigned>(mpz_remove(den.get_mpz_t(), den.get_mpz_t(), pz.get_mpz_t()));
    if (e > shift)
        throw Error(ErrorKind::gate, "DenominatorNotInvertible",
                    "p^" + std::to_string(e) + " in denominator exceeds guard digits " + std::to_string(shift));
    return embed_rational(ring, x.get_num() * ipow(ring->p(), shift - e), den);
}

std::vector<ZqElement> char_poly(const ZqMatrix& m) {
    const std::size_t n = m.dim();
    const auto& R = m.ring_ptr();
    // descending coefficients of det(t I - A_r) for the leading r x r block
    std::vector<ZqElement> C{R->one(), -m.at(0, 0)};
    for (std::size_t r = 1; r < n; ++r) {
        // T = [1, -a_rr, -R S, -R M S, ..., -R M^{r-1} S]
        std::vector<ZqElement> T;
        T.reserve(r + 2);
        T.push_back(R->one());
        T.push_back(-m.at(r, r));
        std::vector<ZqElement> v(r);
        for (std::size_t i = 0; i < r; ++i) v[i] = m.at(i, r);
        for (std::size_t k = 0; k < r; ++k) {
            ZqElement dot = R->zero();
            for (std::size_t i = 0; i < r; ++i) dot += m.at(r, i) * v[i];
            T.push_back(-dot);
            if (k + 1 < r) {
                std::vector<ZqElement> w(r, R->zero());
                for (std::size_t i = 0; i < r; ++i)
                    for (std::size_t j = 0; j < r; ++j) w[i] += m.at(i, j) * v[j];
                v = std::move(w);
            }
        }
        std::vector<ZqElement> next(r + 2, R->zero());
        for (std::size_t i = 0; i < r + 2; ++i)
            for (std::size_t j = 0; j <= std::min(i, r); ++j) next[i] += T[i - j] * C[j];
        C = std::move(next);
    }
    return {C.rbegin(), C.rend()};
}

ZqMatrix mat_inverse(const ZqMatrix& m) {
    const std::size_t n = m.dim();
    ZqMatrix a = m;
    ZqMatrix inv = ZqMatrix::identity(m.ring_ptr(), n);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = n;
        for (std::size_t i = col; i < n; ++i)
            if (a.at(i, col).is_unit()) {
                piv = i;
                break;
            }
        if (piv == n) {
            const auto cp = char_poly(m);
            const unsigned v = cp[0].valuation();
            throw Error(ErrorKind::convergence, "NonUnitDeterminant",
                        "determinant has valuation " + std::to_string(v) + "; raise the precision");
        }
        if (piv != col)
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(a.at(piv, j), a.at(col, j));
                std::swap(inv.at(piv, j), inv.at(col, j));
            }
        const ZqElement pinv = a.at(col, col).inverse();
        for (std::size_t j = 0; j < n; ++j) {
            a.at(col, j) = a.at(col, j) * pinv;
            inv.at(col, j) = inv.at(col, j) * pinv;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col || a.at(i, col).is_zero()) continue;
            const ZqElement f = a.at(i, col);
            for (std::size_t j = 0; j < n; ++j) {
                a.at(i, j) -= f * a.at(col, j);
                inv.at(i, j) -= f * inv.at(col, j);
            }
        }
    }
    return inv;
}

mpz_class round_to_integer(const ZqElement& x, const mpz_class& bound) {
    const ZqRing& R = x.ring();
    if (R.p_power() <= 2 * bound)
        throw Error(ErrorKind::convergence, "PrecisionInsufficient",
                    "p^N = " + R.p_power().get_str() + " does not exceed 2*bound = " + mpz_class(2 * bound).get_str());
    const auto& c = x.coefficients();
    for (std::size_t i = 1; i < c.size(); ++i)
        if (c[i] != 0)
            throw Error(ErrorKind::convergence, "NoIntegerInRange", "element is not in Z_p: " + x.to_string());
    mpz_class m = c[0];
    if (2 * m > R.p_power()) m -= R.p_power();
    if (abs(m) > bound)
        throw Error(ErrorKind::convergence, "NoIntegerInRange",
                    "residue " + m.get_str() + " exceeds the bound " + bound.get_str());
    return m;
}

}  // namespace fermatzeta
