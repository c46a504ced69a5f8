#include "fermatzeta/finite_field.hpp"

#include <algorithm>
#include <string>
#include <tuple>

#include "fermatzeta/error.hpp"

namespace fermatzeta {

namespace {

using Poly = std::vector<std::uint32_t>;  // over F_p, low to high, no trailing zeros

void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
    std::int64_t t = 0, new_t = 1, r = p, new_r = a % p;
    while (new_r != 0) {
        std::int64_t quot = r / new_r;
        std::tie(t, new_t) = std::make_pair(new_t, t - quot * new_t);
        std::tie(r, new_r) = std::make_pair(new_r, r - quot * new_r);
    }
    if (t < 0) t += p;
    return static_cast<std::uint32_t>(t);
}

Poly poly_mod(Poly a, const Poly& m, std::uint32_t p) {
    trim(a);
    const std::size_t dm = m.size() - 1;
    const std::uint32_t lead_inv = inv_mod(m.back(), p);
    while (a.size() > dm) {
        const std::size_t shift = a.size() - 1 - dm;
        const std::uint64_t c = std::uint64_t(a.back()) * lead_inv % p;
        for (std::size_t i = 0; i <= dm; ++i) {
            const std::uint64_t sub = c * m[i] % p;
            a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - sub) % p);
        }
        trim(a);
    }
    return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& m, std::uint32_t p) {
    if (a.empty() || b.empty()) return {};
    Poly c(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            c[i + j] = static_cast<std::uint32_t>((c[i + j] + std::uint64_t(a[i]) * b[j]) % p);
    return poly_mod(std::move(c), m, p);
}

Poly poly_powmod(Poly base, std::uint64_t e, const Poly& m, std::uint32_t p) {
    Poly result{1};
    base = poly_mod(std::move(base), m, p);
    while (e > 0) {
        if (e & 1) result = poly_mulmod(result, base, m, p);
        base = poly_mulmod(base, base, m, p);
        e >>= 1;
    }
    return result;
}

Poly poly_gcd(Poly a, Poly b, std::uint32_t p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Poly r = poly_mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

}  // namespace

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t f = 2; f * f <= n; ++f)
        if (n % f == 0) return false;
    return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t f = 2; f * f <= n; ++f) {
        if (n % f == 0) {
            out.push_back(f);
            while (n % f == 0) n /= f;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

bool is_irreducible_mod_p(const std::vector<std::uint32_t>& modulus, std::uint32_t p) {
    Poly m = modulus;
    trim(m);
    if (m.size() < 2) return false;
    const std::uint32_t r = static_cast<std::uint32_t>(m.size() - 1);
    if (r == 1) return true;
    const Poly x{0, 1};
    // x^{p^r} == x mod m
    Poly xr = x;
    for (std::uint32_t i = 0; i < r; ++i) xr = poly_powmod(xr, p, m, p);
    Poly diff = xr;
    diff.resize(std::max<std::size_t>(diff.size(), 2), 0);
    diff[1] = (diff[1] + p - 1) % p;
    trim(diff);
    if (!diff.empty()) return false;
    // gcd(x^{p^{r/l}} - x, m) = 1 for every prime l | r
    for (auto l : prime_factors(r)) {
        Poly xl = x;
        for (std::uint32_t i = 0; i < r / l; ++i) xl = poly_powmod(xl, p, m, p);
        xl.resize(std::max<std::size_t>(xl.size(), 2), 0);
        xl[1] = (xl[1] + p - 1) % p;
        trim(xl);
        Poly g = poly_gcd(m, xl, p);
        if (g.size() != 1) return false;
    }
    return true;
}

FieldDescriptor field_make(std::uint32_t p, std::uint32_t r, std::uint64_t table_cap) {
    if (!is_prime(p)) throw Error(ErrorKind::gate, "NotPrime", std::to_string(p) + " is not prime");
    if (r < 1) throw Error(ErrorKind::invalid_argument, "InvalidDegree", "extension degree must be >= 1");
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < r; ++i) {
        q *= p;
        if (q > table_cap)
            throw Error(ErrorKind::gate, "TableCapExceeded",
                        std::to_string(p) + "^" + std::to_string(r) + " exceeds the log-table cap " +
                            std::to_string(table_cap));
    }

    FieldDescriptor f;
    f.p = p;
    f.r = r;
    f.q = static_cast<std::uint32_t>(q);

    if (r == 1) {
        f.modulus = {0, 1};
    } else {
        // index i encodes the lower coefficients c_0..c_{r-1}; the integer order of i
        // is the lexicographic order on (c_{r-1}, ..., c_0).
        for (std::uint64_t i = 0; i < q; ++i) {
            Poly m(r + 1, 0);
            std::uint64_t v = i;
            for (std::uint32_t j = 0; j < r; ++j) {
                m[j] = static_cast<std::uint32_t>(v % p);
                v /= p;
            }
            m[r] = 1;
            if (is_irreducible_mod_p(m, p)) {
                f.modulus = m;
                break;
            }
        }
    }

    // Multiplication by polynomial arithmetic, used only while building the tables.
    auto to_poly = [&](std::uint64_t a) {
        Poly c(r, 0);
        for (std::uint32_t j = 0; j < r; ++j) {
            c[j] = static_cast<std::uint32_t>(a % p);
            a /= p;
        }
        trim(c);
        return c;
    };
    auto from_poly = [&](const Poly& c) {
        std::uint64_t v = 0;
        for (std::size_t j = c.size(); j-- > 0;) v = v * p + c[j];
        return static_cast<FqElem>(v);
    };
    auto slow_mul = [&](FqElem a, FqElem b) {
        if (r == 1) return static_cast<FqElem>(std::uint64_t(a) * b % p);
        return from_poly(poly_mulmod(to_poly(a), to_poly(b), f.modulus, p));
    };

    const auto factors = prime_factors(q - 1);
    auto slow_pow = [&](FqElem a, std::uint64_t e) {
        FqElem res = 1;
        while (e > 0) {
            if (e & 1) res = slow_mul(res, a);
            a = slow_mul(a, a);
            e >>= 1;
        }
        return res;
    };
    for (FqElem g = 1; g < q; ++g) {
        bool full = true;
        for (auto l : factors) {
            if (slow_pow(g, (q - 1) / l) == 1) {
                full = false;
                break;
            }
        }
        if (full) {
            f.generator = g;
            break;
        }
    }

    f.exp_.assign(q - 1, 0);
    f.log_.assign(q, 0);
    FqElem cur = 1;
    for (std::uint64_t e = 0; e < q - 1; ++e) {
        f.exp_[e] = cur;
        f.log_[cur] = static_cast<std::uint32_t>(e);
        cur = slow_mul(cur, f.generator);
    }
    return f;
}

FqElem FieldDescriptor::add(FqElem a, FqElem b) const {
    if (r == 1) {
        const std::uint32_t s = a + b;
        return s >= p ? s - p : s;
    }
    FqElem out = 0, scale = 1;
    for (std::uint32_t j = 0; j < r; ++j) {
        std::uint32_t s = a % p + b % p;
        if (s >= p) s -= p;
        out += s * scale;
        scale *= p;
        a /= p;
        b /= p;
    }
    return out;
}

FqElem FieldDescriptor::neg(FqElem a) const {
    if (r == 1) return a == 0 ? 0 : p - a;
    FqElem out = 0, scale = 1;
    for (std::uint32_t j = 0; j < r; ++j) {
        const std::uint32_t c = a % p;
        out += (c == 0 ? 0 : p - c) * scale;
        scale *= p;
        a /= p;
    }
    return out;
}

FqElem FieldDescriptor::sub(FqElem a, FqElem b) const { return add(a, neg(b)); }

FqElem FieldDescriptor::inv(FqElem a) const {
    if (a == 0) throw Error(ErrorKind::invalid_argument, "DivisionByZero", "inverse of 0 in F_q");
    const std::uint32_t l = log_[a];
    return exp_[l == 0 ? 0 : q - 1 - l];
}

FqElem FieldDescriptor::pow(FqElem a, std::uint64_t e) const {
    if (a == 0) return e == 0 ? 1 : 0;
    return exp_[(std::uint64_t(log_[a]) * (e % (q - 1))) % (q - 1)];
}

FqElem FieldDescriptor::from_int(std::int64_t v) const {
    std::int64_t m = v % static_cast<std::int64_t>(p);
    if (m < 0) m += p;
    return static_cast<FqElem>(m);
}

std::uint32_t FieldDescriptor::dlog(FqElem x) const {
    if (x == 0 || x >= q) throw Error(ErrorKind::invalid_argument, "LogOfZero", "discrete log of 0");
    return log_[x];
}

std::vector<std::uint32_t> FieldDescriptor::coordinates(FqElem a) const {
    std::vector<std::uint32_t> c(r, 0);
    for (std::uint32_t j = 0; j < r; ++j) {
        c[j] = a % p;
        a /= p;
    }
    return c;
}

FqElem FieldDescriptor::from_coordinates(const std::vector<std::uint32_t>& c) const {
    FqElem v = 0;
    for (std::size_t j = std::min<std::size_t>(c.size(), r); j-- > 0;) v = v * p + c[j] % p;
    return v;
}

CharacterDescriptor::CharacterDescriptor(std::shared_ptr<const FieldDescriptor> f, std::uint32_t degree)
    : field(std::move(f)), d(degree) {
    if (d == 0 || (field->q - 1) % d != 0)
        throw Error(ErrorKind::gate, "CharacterOrder",
                    "d = " + std::to_string(d) + " does not divide q - 1 = " + std::to_string(field->q - 1));
}

std::uint32_t char_exponent(const CharacterDescriptor& chi, FqElem x) {
    if (x == 0) throw Error(ErrorKind::invalid_argument, "CharacterAtZero", "e(0) is undefined");
    return chi.field->dlog(x) % chi.d;
}

std::vector<FqElem> field_embedding(const FieldDescriptor& small, const FieldDescriptor& big) {
    if (small.p != big.p || big.r % small.r != 0)
        throw Error(ErrorKind::invalid_argument, "NoEmbedding",
                    "F_" + std::to_string(small.q) + " does not embed in F_" + std::to_string(big.q));
    std::vector<FqElem> map(small.q, 0);
    if (small.r == 1) {
        for (FqElem a = 0; a < small.q; ++a) map[a] = a;
        return map;
    }
    // smallest root of the small modulus in the big field
    FqElem root = 0;
    bool found = false;
    for (FqElem x = 0; x < big.q && !found; ++x) {
        FqElem acc = 0;
        for (std::size_t j = small.modulus.size(); j-- > 0;)
            acc = big.add(big.mul(acc, x), big.from_int(small.modulus[j]));
        if (acc == 0) {
            root = x;
            found = true;
        }
    }
    if (!found) throw Error(ErrorKind::invalid_argument, "NoEmbedding", "modulus has no root");
    for (FqElem a = 0; a < small.q; ++a) {
        const auto c = small.coordinates(a);
        FqElem acc = 0;
        for (std::size_t j = c.size(); j-- > 0;) acc = big.add(big.mul(acc, root), big.from_int(c[j]));
        map[a] = acc;
    }
    return map;
}

}  // namespace fermatzeta
