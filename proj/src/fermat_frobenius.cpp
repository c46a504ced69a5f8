#include "fermatzeta/fermat_frobenius.hpp"

#include <algorithm>
#include <climits>
#include <sstream>

#include "fermatzeta/error.hpp"

namespace fermatzeta {

namespace {

// exact division by a monic polynomial
std::vector<mpz_class> poly_div_exact(std::vector<mpz_class> a, const std::vector<mpz_class>& b) {
    const std::size_t db = b.size() - 1;
    std::vector<mpz_class> quo(a.size() - db, 0);
    for (std::size_t i = a.size(); i-- > db;) {
        const mpz_class c = a[i];
        quo[i - db] = c;
        for (std::size_t j = 0; j <= db; ++j) a[i - db + j] -= c * b[j];
    }
    return quo;
}

void check_same(const CyclotomicInt& a, const CyclotomicInt& b) {
    if (a.d != b.d) throw Error(ErrorKind::invalid_argument, "OrderMismatch", "cyclotomic orders differ");
}

}  // namespace

std::vector<mpz_class> cyclotomic_polynomial(std::uint32_t d) {
    // x^d - 1 = prod_{e | d} Phi_e
    std::vector<mpz_class> num(d + 1, 0);
    num[0] = -1;
    num[d] = 1;
    for (std::uint32_t e = 1; e < d; ++e)
        if (d % e == 0) num = poly_div_exact(num, cyclotomic_polynomial(e));
    return num;
}

CyclotomicInt::CyclotomicInt(std::uint32_t order) : d(order), c(order, 0) {}

CyclotomicInt CyclotomicInt::integer(std::uint32_t order, const mpz_class& v) {
    CyclotomicInt x(order);
    x.c[0] = v;
    return x;
}

CyclotomicInt CyclotomicInt::root(std::uint32_t order, std::uint32_t power) {
    CyclotomicInt x(order);
    x.c[power % order] = 1;
    return x;
}

CyclotomicInt CyclotomicInt::operator+(const CyclotomicInt& o) const {
    check_same(*this, o);
    CyclotomicInt r = *this;
    for (std::uint32_t i = 0; i < d; ++i) r.c[i] += o.c[i];
    return r;
}

CyclotomicInt CyclotomicInt::operator-(const CyclotomicInt& o) const {
    check_same(*this, o);
    CyclotomicInt r = *this;
    for (std::uint32_t i = 0; i < d; ++i) r.c[i] -= o.c[i];
    return r;
}

CyclotomicInt CyclotomicInt::operator*(const CyclotomicInt& o) const {
    check_same(*this, o);
    CyclotomicInt r(d);
    for (std::uint32_t i = 0; i < d; ++i) {
        if (c[i] == 0) continue;
        for (std::uint32_t j = 0; j < d; ++j) r.c[(i + j) % d] += c[i] * o.c[j];
    }
    return r;
}

CyclotomicInt CyclotomicInt::scale(const mpz_class& k) const {
    CyclotomicInt r = *this;
    for (auto& x : r.c) x *= k;
    return r;
}

CyclotomicInt CyclotomicInt::pow(std::uint64_t e) const {
    CyclotomicInt result = integer(d, 1), base = *this;
    while (e) {
        if (e & 1) result = result * base;
        base = base * base;
        e >>= 1;
    }
    return result;
}

CyclotomicInt CyclotomicInt::conjugate() const {
    CyclotomicInt r(d);
    for (std::uint32_t i = 0; i < d; ++i) r.c[(d - i) % d] = c[i];
    return r;
}

std::vector<mpz_class> CyclotomicInt::reduced() const {
    const auto phi = cyclotomic_polynomial(d);
    const std::size_t deg = phi.size() - 1;
    std::vector<mpz_class> a = c;
    for (std::size_t i = a.size(); i-- > deg;) {
        const mpz_class k = a[i];
        if (k == 0) continue;
        for (std::size_t j = 0; j <= deg; ++j) a[i - deg + j] -= k * phi[j];
    }
    a.resize(deg);
    return a;
}

std::optional<mpz_class> CyclotomicInt::as_integer() const {
    const auto r = reduced();
    for (std::size_t i = 1; i < r.size(); ++i)
        if (r[i] != 0) return std::nullopt;
    return r.empty() ? mpz_class(0) : r[0];
}

ZqElement CyclotomicInt::embed(const ZqElement& zeta) const {
    ZqElement acc = zeta.ring_ptr()->zero();
    for (std::uint32_t i = d; i-- > 0;) acc = acc * zeta + zeta.ring_ptr()->from_int(c[i]);
    return acc;
}

std::string CyclotomicInt::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (std::uint32_t i = 0; i < d; ++i) {
        if (c[i] == 0) continue;
        if (!first) os << (c[i] > 0 ? " + " : " - ");
        else if (c[i] < 0) os << "-";
        first = false;
        const mpz_class a = abs(c[i]);
        if (i == 0) {
            os << a;
            continue;
        }
        if (a != 1) os << a << "*";
        os << "z^" << i;
    }
    return first ? "0" : os.str();
}

JacobiValue jacobi_sum(const FamilyDescriptor& f, const MonomialType& k, const FieldDescriptor& field) {
    const std::uint32_t d = f.degree;
    if ((field.q - 1) % d != 0)
        throw Error(ErrorKind::gate, "FieldTooSmall", "Jacobi sums need q = 1 mod d");
    const std::size_t n = f.n();
    JacobiValue out;
    out.type = k;
    for (auto e : k.entries) out.degenerate |= e % d == 0;
    std::vector<std::uint32_t> chi(field.q, 0);
    for (FqElem x = 1; x < field.q; ++x) chi[x] = field.dlog(x) % d;
    std::vector<unsigned long> tally(d, 0);
    const FqElem minus_one = field.neg(field.one());
    // v_1 .. v_{n-1} free, v_n = -1 - sum
    std::vector<FqElem> v(n > 0 ? n - 1 : 0, 1);
    if (n == 0) throw Error(ErrorKind::invalid_argument, "InvalidFamily", "need at least two variables");
    while (true) {
        FqElem s = 0;
        std::uint64_t e = 0;
        for (std::size_t i = 0; i + 1 < n; ++i) {
            s = field.add(s, v[i]);
            e += std::uint64_t(k.entries[i + 1]) * chi[v[i]];
        }
        const FqElem last = field.sub(minus_one, s);
        if (last != 0) {
            e += std::uint64_t(k.entries[n]) * chi[last];
            ++tally[e % d];
        }
        std::size_t i = v.size();
        while (i-- > 0) {
            if (v[i] + 1 < field.q) {
                ++v[i];
                break;
            }
            v[i] = 1;
        }
        if (i == std::size_t(-1)) break;
    }
    out.value = CyclotomicInt(d);
    for (std::uint32_t c = 0; c < d; ++c) out.value.c[c] = mpz_class(tally[c]);
    if ((n + 1) % 2) out.value = out.value.scale(-1);
    return out;
}

ZqElement teichmueller_root_of_unity(const ZqRingPtr& ring, const FieldDescriptor& field, std::uint32_t d) {
    if ((field.q - 1) % d != 0) throw Error(ErrorKind::gate, "FieldTooSmall", "d does not divide q - 1");
    return teichmueller(ring, field, field.generator).pow(std::uint64_t((field.q - 1) / d));
}

MonomialType negate_type(const FamilyDescriptor& f, const MonomialType& k) {
    std::vector<std::uint32_t> e(k.exponents.size());
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = f.exponent_degree(i) - 2 - k.exponents[i];
    return *type_from_exponents(f, e);
}

JacobiTable jacobi_table(const FamilyDescriptor& f, const FieldDescriptor& field) {
    JacobiTable t;
    for (const auto& k : enumerate_admissible(f)) t.emplace(k.exponents, jacobi_sum(f, k, field));
    return t;
}

std::vector<mpz_class> predicted_fermat_counts(const FamilyDescriptor& f, const JacobiTable& table, std::uint64_t q,
                                               unsigned nu, int sign, std::size_t terms) {
    const unsigned n = f.n();
    std::vector<mpz_class> out;
    mpz_class qz(static_cast<unsigned long>(q));
    for (std::size_t s = 1; s <= terms; ++s) {
        CyclotomicInt ps(f.degree);
        mpz_class factor;
        mpz_pow_ui(factor.get_mpz_t(), qz.get_mpz_t(), n - nu);
        for (const auto& [exps, jv] : table) ps = ps + jv.value.scale(factor * sign).pow(s);
        const auto p = ps.as_integer();
        if (!p) throw Error(ErrorKind::verification, "NonRationalTrace", "power sum of Jacobi sums is not an integer");
        mpz_class total = 0, qs;
        mpz_pow_ui(qs.get_mpz_t(), qz.get_mpz_t(), s);
        mpz_class term = 1;
        for (unsigned i = 0; i < n; ++i) {
            total += term;
            term *= qs;
        }
        out.push_back(n % 2 ? mpz_class(total + *p) : mpz_class(total - *p));
    }
    return out;
}

nlohmann::json Calibration::to_json() const {
    return {{"nu", twist ? "n-1" : "n"}, {"sign", sign}, {"orientation", negate ? "negated" : "identity"}, {"evidence", evidence}};
}

Calibration Calibration::from_json(const nlohmann::json& j) {
    Calibration c;
    const std::string nu = j.at("nu").get<std::string>();
    if (nu != "n" && nu != "n-1") throw Error(ErrorKind::invalid_argument, "InvalidCalibration", "nu must be n or n-1");
    c.twist = nu == "n" ? 0 : 1;
    c.sign = j.at("sign").get<int>();
    c.negate = j.at("orientation").get<std::string>() == "negated";
    if (j.contains("evidence")) c.evidence = j.at("evidence");
    return c;
}

Calibration calibrate(const FamilyDescriptor& f, const FieldDescriptor& field,
                      const std::vector<mpz_class>& fermat_counts) {
    const unsigned n = f.n();
    const JacobiTable table = jacobi_table(f, field);
    Calibration cal;
    cal.evidence["candidates"] = nlohmann::json::array();
    int matches = 0;
    for (unsigned nu : {n - 1, n})
        for (int sign : {1, -1}) {
            const auto pred = predicted_fermat_counts(f, table, field.q, nu, sign, fermat_counts.size());
            std::vector<std::string> residuals;
            bool ok = true;
            for (std::size_t s = 0; s < pred.size(); ++s) {
                const mpz_class r = fermat_counts[s] - pred[s];
                ok &= r == 0;
                residuals.push_back(r.get_str());
            }
            cal.evidence["candidates"].push_back({{"nu", nu == n ? "n" : "n-1"}, {"sign", sign}, {"residuals", residuals}, {"match", ok}});
            if (ok) {
                ++matches;
                cal.twist = n - nu;
                cal.sign = sign;
            }
        }
    if (matches != 1)
        throw Error(ErrorKind::verification, "NoConventionMatches",
                    std::to_string(matches) + " normalizations reproduce the Fermat counts");

    // orientation: v_p(J_{sigma(k)}) = r (t_k - 1) for every k, up to the q^{n-nu} factor
    const ZqRingPtr ring = ZqRing::make(field, f.n() * field.r + 2);
    const ZqElement zeta = teichmueller_root_of_unity(ring, field, f.degree);
    int orientations = 0;
    for (bool negate : {false, true}) {
        bool ok = true;
        for (const auto& [exps, jv] : table) {
            const MonomialType src = negate ? negate_type(f, jv.type) : jv.type;
            const unsigned v = table.at(src.exponents).value.embed(zeta).valuation();
            ok &= v == field.r * (jv.type.degree - 1);
        }
        cal.evidence[negate ? "negated_valuation_rule" : "identity_valuation_rule"] = ok;
        if (ok) {
            ++orientations;
            cal.negate = negate;
        }
    }
    if (orientations != 1)
        throw Error(ErrorKind::verification, "NoConventionMatches",
                    std::to_string(orientations) + " orientations satisfy the valuation rule");
    return cal;
}

CyclotomicInt inverse_frobenius_constant(const FamilyDescriptor& f, const JacobiTable& table, const MonomialType& k,
                                         std::uint64_t q, const Calibration& cal) {
    const MonomialType src = cal.negate ? negate_type(f, k) : k;
    mpz_class factor;
    mpz_ui_pow_ui(factor.get_mpz_t(), q, cal.twist);
    return table.at(src.exponents).value.scale(factor * cal.sign);
}

std::vector<ZqElement> fermat_frobenius_constants(const FamilyDescriptor& f, const TypeClass& members,
                                                  const FieldDescriptor& field, const ZqRingPtr& ring,
                                                  const JacobiTable& table, const Calibration& cal) {
    const ZqElement zeta = teichmueller_root_of_unity(ring, field, f.degree);
    std::vector<ZqElement> out;
    for (const auto& k : members) out.push_back(inverse_frobenius_constant(f, table, k, field.q, cal).embed(zeta));
    return out;
}

}  // namespace fermatzeta
