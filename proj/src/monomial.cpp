#include "fermatzeta/monomial.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#include "fermatzeta/error.hpp"

namespace fermatzeta {

namespace {

std::int64_t mod(std::int64_t x, std::int64_t m) {
    x %= m;
    return x < 0 ? x + m : x;
}

std::string join(const std::vector<std::uint32_t>& v) {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    os << ')';
    return os.str();
}

struct UnionFind {
    std::vector<std::size_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

std::vector<TypeClass> classes_from_keys(const std::vector<MonomialType>& types,
                                         const std::function<std::vector<std::uint32_t>(const MonomialType&)>& key) {
    std::vector<MonomialType> sorted = types;
    std::sort(sorted.begin(), sorted.end());
    std::map<std::vector<std::uint32_t>, std::size_t> index;
    std::vector<TypeClass> out;
    for (const auto& k : sorted) {
        auto [it, fresh] = index.emplace(key(k), out.size());
        if (fresh) out.emplace_back();
        out[it->second].push_back(k);
    }
    return out;
}

// Bitset over the admissible automorphisms: bit b set iff b fixes omega_k.
std::vector<std::uint32_t> fixed_mask(const FamilyDescriptor& f, const std::vector<std::vector<std::uint32_t>>& autos,
                                      const MonomialType& k) {
    std::vector<std::uint32_t> mask((autos.size() + 31) / 32, 0);
    for (std::size_t b = 0; b < autos.size(); ++b) {
        std::uint64_t s = 0;
        for (std::size_t i = 0; i < f.num_vars(); ++i) s += std::uint64_t(autos[b][i]) * (k.exponents[i] + 1);
        if (s % f.degree == 0) mask[b / 32] |= 1u << (b % 32);
    }
    return mask;
}

}  // namespace

FamilyDescriptor FamilyDescriptor::make(std::vector<std::uint32_t> weights, std::uint32_t degree,
                                        std::vector<std::uint32_t> deformation) {
    auto bad = [](const std::string& msg) { return Error(ErrorKind::invalid_argument, "InvalidFamily", msg); };
    if (weights.size() < 2) throw bad("need at least two variables");
    if (weights.size() != deformation.size()) throw bad("weights and deformation exponents differ in length");
    if (degree < 2) throw bad("degree must be >= 2");
    std::uint64_t total = 0;
    std::size_t nonzero = 0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (weights[i] == 0 || degree % weights[i] != 0)
            throw bad("weight " + std::to_string(weights[i]) + " does not divide the degree");
        if (deformation[i] >= degree / weights[i])
            throw bad("deformation exponent a_" + std::to_string(i) + " must be < d_i");
        total += std::uint64_t(weights[i]) * deformation[i];
        if (deformation[i] != 0) ++nonzero;
    }
    if (total != degree) throw bad("sum w_i a_i must equal the degree");
    if (nonzero < 2) throw bad("the deformation monomial needs at least two variables");
    FamilyDescriptor f;
    f.weights = std::move(weights);
    f.degree = degree;
    f.deformation = std::move(deformation);
    return f;
}

std::vector<std::uint32_t> FamilyDescriptor::deformation_vector() const {
    std::vector<std::uint32_t> v(num_vars());
    for (std::size_t i = 0; i < num_vars(); ++i) v[i] = (weights[i] * deformation[i]) % degree;
    return v;
}

std::uint32_t FamilyDescriptor::deformation_order() const {
    std::uint32_t l = 1;
    for (std::size_t i = 0; i < num_vars(); ++i) {
        const std::uint32_t di = exponent_degree(i);
        l = std::lcm(l, di / std::gcd(deformation[i], di));
    }
    return l;
}

std::string FamilyDescriptor::label() const {
    return "w=" + join(weights) + " d=" + std::to_string(degree) + " a=" + join(deformation);
}

std::string format_exponents(const MonomialType& k) { return join(k.exponents); }
std::string format_entries(const MonomialType& k) { return join(k.entries); }

std::optional<MonomialType> type_from_exponents(const FamilyDescriptor& f, const std::vector<std::uint32_t>& exps) {
    if (exps.size() != f.num_vars()) return std::nullopt;
    MonomialType k;
    k.exponents = exps;
    k.entries.resize(exps.size());
    std::uint64_t sum = 0;
    for (std::size_t i = 0; i < exps.size(); ++i) {
        if (exps[i] + 2 > f.exponent_degree(i)) return std::nullopt;
        const std::uint64_t e = std::uint64_t(f.weights[i]) * (exps[i] + 1);
        k.entries[i] = static_cast<std::uint32_t>(e % f.degree);
        sum += e;
    }
    if (sum % f.degree != 0) return std::nullopt;
    k.degree = static_cast<std::uint32_t>(sum / f.degree);
    return k;
}

std::optional<MonomialType> type_from_entries(const FamilyDescriptor& f, const std::vector<std::int64_t>& entries) {
    if (entries.size() != f.num_vars()) return std::nullopt;
    std::vector<std::uint32_t> exps(entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const std::int64_t e = mod(entries[i], f.degree);
        if (e == 0 || e % f.weights[i] != 0) return std::nullopt;
        exps[i] = static_cast<std::uint32_t>(e / f.weights[i] - 1);
    }
    return type_from_exponents(f, exps);
}

std::vector<MonomialType> enumerate_admissible(const FamilyDescriptor& f) {
    std::vector<MonomialType> out;
    const std::size_t n = f.num_vars();
    std::vector<std::uint32_t> k(n, 0);
    for (std::size_t i = 0; i < n; ++i)
        if (f.exponent_degree(i) < 2) return out;
    while (true) {
        if (auto t = type_from_exponents(f, k)) out.push_back(*t);
        std::size_t i = n;
        while (i-- > 0) {
            if (k[i] + 2 < f.exponent_degree(i)) {
                ++k[i];
                break;
            }
            k[i] = 0;
        }
        if (i == std::size_t(-1)) break;
    }
    return out;
}

std::optional<MonomialType> shift_type(const FamilyDescriptor& f, const MonomialType& k, std::int64_t j) {
    const auto a = f.deformation_vector();
    std::vector<std::int64_t> e(k.entries.size());
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = std::int64_t(k.entries[i]) + j * a[i];
    return type_from_entries(f, e);
}

bool strongly_equivalent(const MonomialType& k, const MonomialType& m, const FamilyDescriptor& f) {
    const auto a = f.deformation_vector();
    for (std::uint32_t j = 0; j < f.degree; ++j) {
        bool ok = true;
        for (std::size_t i = 0; i < a.size() && ok; ++i)
            ok = mod(std::int64_t(k.entries[i]) - m.entries[i] - std::int64_t(j) * a[i], f.degree) == 0;
        if (ok) return true;
    }
    return false;
}

std::vector<std::vector<std::uint32_t>> admissible_automorphisms(const FamilyDescriptor& f) {
    std::vector<std::vector<std::uint32_t>> out;
    const std::size_t n = f.num_vars();
    std::vector<std::uint32_t> b(n, 0);
    while (true) {
        std::uint64_t s = 0;
        for (std::size_t i = 0; i < n; ++i) s += std::uint64_t(f.weights[i]) * b[i] * f.deformation[i];
        if (s % f.degree == 0) {
            std::vector<std::uint32_t> wb(n);
            for (std::size_t i = 0; i < n; ++i) wb[i] = f.weights[i] * b[i];
            out.push_back(std::move(wb));
        }
        std::size_t i = n;
        while (i-- > 0) {
            if (b[i] + 1 < f.exponent_degree(i)) {
                ++b[i];
                break;
            }
            b[i] = 0;
        }
        if (i == std::size_t(-1)) break;
    }
    return out;
}

bool distinguishable_by_automorphisms(const MonomialType& k, const MonomialType& m, const FamilyDescriptor& f) {
    for (const auto& wb : admissible_automorphisms(f)) {
        std::uint64_t sk = 0, sm = 0;
        for (std::size_t i = 0; i < wb.size(); ++i) {
            sk += std::uint64_t(wb[i]) * (k.exponents[i] + 1);
            sm += std::uint64_t(wb[i]) * (m.exponents[i] + 1);
        }
        if (sk % f.degree == 0 && sm % f.degree != 0) return true;
    }
    return false;
}

bool weakly_equivalent(const MonomialType& k, const MonomialType& m, const FamilyDescriptor& f) {
    return !distinguishable_by_automorphisms(k, m, f) && !distinguishable_by_automorphisms(m, k, f);
}

bool weakly_equivalent_arithmetic(const MonomialType& k, const MonomialType& m, const FamilyDescriptor& f) {
    const std::int64_t d = f.degree;
    const auto a = f.deformation_vector();
    std::vector<std::int64_t> units;
    for (std::int64_t u = 1; u < d; ++u)
        if (std::gcd(u, d) == 1) units.push_back(u);
    for (auto s : units)
        for (auto t : units)
            for (std::int64_t j = 0; j < d; ++j) {
                bool ok = true;
                for (std::size_t i = 0; i < a.size() && ok; ++i)
                    ok = mod(s * k.entries[i] + t * m.entries[i] - j * a[i], d) == 0;
                if (ok) return true;
            }
    return false;
}

std::vector<TypeClass> partition(const std::vector<MonomialType>& types,
                                 const std::function<bool(const MonomialType&, const MonomialType&)>& related) {
    std::vector<MonomialType> sorted = types;
    std::sort(sorted.begin(), sorted.end());
    UnionFind uf(sorted.size());
    for (std::size_t i = 0; i < sorted.size(); ++i)
        for (std::size_t j = i + 1; j < sorted.size(); ++j)
            if (uf.find(i) != uf.find(j) && related(sorted[i], sorted[j])) uf.unite(i, j);
    std::map<std::size_t, std::size_t> slot;
    std::vector<TypeClass> out;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        auto [it, fresh] = slot.emplace(uf.find(i), out.size());
        if (fresh) out.emplace_back();
        out[it->second].push_back(sorted[i]);
    }
    return out;
}

std::vector<TypeClass> strong_classes(const FamilyDescriptor& f, const std::vector<MonomialType>& types) {
    // key: smallest entry vector in the coset k + <a>
    const auto a = f.deformation_vector();
    const std::uint32_t order = f.deformation_order();
    return classes_from_keys(types, [&](const MonomialType& k) {
        std::vector<std::uint32_t> best;
        for (std::uint32_t j = 0; j < order; ++j) {
            std::vector<std::uint32_t> e(a.size());
            for (std::size_t i = 0; i < a.size(); ++i) e[i] = (k.entries[i] + j * a[i]) % f.degree;
            if (best.empty() || e < best) best = e;
        }
        return best;
    });
}

std::vector<TypeClass> weak_classes(const FamilyDescriptor& f, const std::vector<MonomialType>& types) {
    const auto autos = admissible_automorphisms(f);
    return classes_from_keys(types, [&](const MonomialType& k) { return fixed_mask(f, autos, k); });
}

MonomialType frobenius_image(const FamilyDescriptor& f, const MonomialType& k, std::uint64_t q) {
    if (std::gcd<std::uint64_t>(q, f.degree) != 1)
        throw Error(ErrorKind::gate, "NotCoprime", "q must be prime to the degree");
    std::vector<std::int64_t> e(k.entries.size());
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = static_cast<std::int64_t>((q % f.degree) * k.entries[i]);
    auto t = type_from_entries(f, e);
    if (!t) throw Error(ErrorKind::invalid_argument, "NotAdmissible", "Frobenius image left the admissible set");
    return *t;
}

std::vector<std::vector<std::size_t>> family_symmetries(const FamilyDescriptor& f, std::size_t cap) {
    const std::size_t n = f.num_vars();
    // size of the group = product of factorials of the (w, a) multiplicities
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::size_t> groups;
    for (std::size_t i = 0; i < n; ++i) ++groups[{f.weights[i], f.deformation[i]}];
    double order = 1;
    for (const auto& [key, c] : groups)
        for (std::size_t j = 2; j <= c; ++j) order *= double(j);
    std::vector<std::vector<std::size_t>> out;
    if (order > double(cap)) return out;
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        bool ok = true;
        for (std::size_t i = 0; i < n && ok; ++i)
            ok = f.weights[perm[i]] == f.weights[i] && f.deformation[perm[i]] == f.deformation[i];
        if (ok) out.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

std::vector<FactorOrbit> symmetry_orbits(const FamilyDescriptor& f, const std::vector<TypeClass>& weak) {
    std::map<std::vector<std::uint32_t>, std::size_t> where;
    for (std::size_t c = 0; c < weak.size(); ++c)
        for (const auto& k : weak[c]) where[k.exponents] = c;
    auto apply = [](const std::vector<std::size_t>& perm, const std::vector<std::uint32_t>& e) {
        std::vector<std::uint32_t> out(e.size());
        for (std::size_t i = 0; i < e.size(); ++i) out[i] = e[perm[i]];
        return out;
    };
    const auto syms = family_symmetries(f);
    UnionFind uf(weak.size());
    for (const auto& perm : syms)
        for (std::size_t c = 0; c < weak.size(); ++c) uf.unite(c, where.at(apply(perm, weak[c].front().exponents)));

    std::map<std::size_t, std::size_t> slot;
    std::vector<FactorOrbit> out;
    for (std::size_t c = 0; c < weak.size(); ++c) {
        auto [it, fresh] = slot.emplace(uf.find(c), out.size());
        if (fresh) {
            FactorOrbit o;
            o.representative = c;
            o.class_size = weak[c].size();
            out.push_back(o);
        }
        out[it->second].members.push_back(c);
    }

    for (auto& o : out) {
        const auto strong = strong_classes(f, weak[o.representative]);
        std::map<std::vector<std::uint32_t>, std::size_t> sidx;
        for (std::size_t s = 0; s < strong.size(); ++s)
            for (const auto& k : strong[s]) sidx[k.exponents] = s;
        UnionFind su(strong.size());
        for (const auto& perm : syms) {
            if (where.at(apply(perm, weak[o.representative].front().exponents)) != o.representative) continue;
            for (std::size_t s = 0; s < strong.size(); ++s) su.unite(s, sidx.at(apply(perm, strong[s].front().exponents)));
        }
        std::map<std::size_t, std::size_t> oslot;
        for (std::size_t s = 0; s < strong.size(); ++s) {
            auto [it, fresh] = oslot.emplace(su.find(s), o.strong_orbits.size());
            if (fresh) o.strong_orbits.emplace_back();
            o.strong_orbits[it->second].push_back(s);
        }
        // e-th power structure needs every orbit to contribute the same multiset of blocks
        std::size_t e = o.strong_orbits.front().size();
        for (const auto& orb : o.strong_orbits)
            if (orb.size() != e) e = 0;
        if (e == 0) {
            e = 1;
            o.strong_orbits.clear();
            for (std::size_t s = 0; s < strong.size(); ++s) o.strong_orbits.push_back({s});
        }
        o.power = e;
        o.factor_degree = o.class_size / e;
    }
    return out;
}

}  // namespace fermatzeta
