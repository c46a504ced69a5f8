#include "fermatzeta/point_counter.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <thread>

#include "fermatzeta/error.hpp"

namespace fermatzeta {

namespace {

constexpr int kCacheVersion = 1;

struct Kernel {
    const FieldDescriptor& K;
    const FamilyDescriptor& f;
    FqElem lambda;
    std::size_t n;                              // number of variables
    std::vector<std::size_t> order;             // variable order, eliminated one last
    std::vector<std::vector<FqElem>> pw, am;    // x^{d_i}, x^{a_i}
    std::vector<FqElem> addt;                   // addition table when small
    std::uint32_t Q;

    Kernel(const FieldDescriptor& field, const FamilyDescriptor& fam, FqElem lam)
        : K(field), f(fam), lambda(lam), n(fam.num_vars()), Q(field.q) {
        order.resize(n);
        std::iota(order.begin(), order.end(), 0);
        // a variable without deformation exponent is the cheapest to eliminate
        auto it = std::find_if(order.begin(), order.end(), [&](std::size_t i) { return f.deformation[i] == 0; });
        if (it != order.end()) std::rotate(it, it + 1, order.end());
        pw.resize(n);
        am.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            pw[i].resize(Q);
            am[i].resize(Q);
            for (FqElem x = 0; x < Q; ++x) {
                pw[i][x] = K.pow(x, f.exponent_degree(i));
                am[i][x] = f.deformation[i] ? K.pow(x, f.deformation[i]) : 1;
            }
        }
        if (K.r > 1 && std::uint64_t(Q) * Q <= (1u << 22)) {
            addt.resize(std::size_t(Q) * Q);
            for (FqElem a = 0; a < Q; ++a)
                for (FqElem b = 0; b < Q; ++b) addt[std::size_t(a) * Q + b] = K.add(a, b);
        }
    }

    FqElem add(FqElem a, FqElem b) const { return addt.empty() ? K.add(a, b) : addt[std::size_t(a) * Q + b]; }
};

// Number of x with x^{d} + c x^{a} = v for the last variable, tabulated over (c, v).
struct LastTable {
    bool pure = false;                  // a = 0: depends on v - c only
    std::vector<std::uint32_t> counts;  // pure: by value; else by c * Q + v
};

LastTable last_table(const Kernel& k) {
    const std::size_t i = k.order.back();
    LastTable t;
    const std::uint32_t Q = k.Q;
    if (k.f.deformation[i] == 0) {
        t.pure = true;
        t.counts.assign(Q, 0);
        for (FqElem x = 0; x < Q; ++x) ++t.counts[k.pw[i][x]];
        return t;
    }
    t.counts.assign(std::size_t(Q) * Q, 0);
    for (FqElem c = 0; c < Q; ++c)
        for (FqElem x = 0; x < Q; ++x) ++t.counts[std::size_t(c) * Q + k.add(k.pw[i][x], k.K.mul(c, k.am[i][x]))];
    return t;
}

// Counts cone points; also splits nonzero points by the gcd of weights on their support when
// `by_support` is set (index g -> number of points whose support has weight gcd g).
struct ConeTally {
    std::uint64_t total = 0;
    std::vector<std::uint64_t> by_gcd;
};

void tally_full(const Kernel& k, FqElem first, ConeTally& out, bool by_support) {
    const std::size_t n = k.n;
    std::vector<FqElem> x(n, 0);
    x[0] = first;
    while (true) {
        FqElem s = 0, m = k.lambda;
        for (std::size_t i = 0; i < n; ++i) {
            s = k.add(s, k.pw[i][x[i]]);
            m = k.K.mul(m, k.am[i][x[i]]);
        }
        if (k.add(s, m) == 0) {
            ++out.total;
            if (by_support) {
                std::uint32_t g = 0;
                for (std::size_t i = 0; i < n; ++i)
                    if (x[i]) g = std::gcd(g, k.f.weights[i]);
                if (g) ++out.by_gcd[g];
            }
        }
        std::size_t i = n;
        while (--i > 0) {
            if (x[i] + 1 < k.Q) {
                ++x[i];
                break;
            }
            x[i] = 0;
        }
        if (i == 0) break;
    }
}

std::uint64_t tally_eliminate(const Kernel& k, const LastTable& t, FqElem first) {
    // recursion over order[0..n-2] with running sum and monomial
    const std::size_t n = k.n;
    const std::uint32_t Q = k.Q;
    std::uint64_t total = 0;
    std::vector<FqElem> x(n - 1, 0);
    x[0] = first;
    while (true) {
        FqElem s = 0, m = k.lambda;
        for (std::size_t j = 0; j + 1 < n; ++j) {
            const std::size_t i = k.order[j];
            s = k.add(s, k.pw[i][x[j]]);
            m = k.K.mul(m, k.am[i][x[j]]);
        }
        const FqElem target = k.K.neg(s);
        if (t.pure) {
            total += t.counts[k.add(target, k.K.neg(m))];
        } else {
            total += t.counts[std::size_t(m) * Q + target];
        }
        std::size_t j = n - 1;
        while (--j > 0) {
            if (x[j] + 1 < Q) {
                ++x[j];
                break;
            }
            x[j] = 0;
        }
        if (j == 0) break;
    }
    return total;
}

template <class Fn>
void run_slices(std::uint32_t Q, unsigned jobs, Fn&& fn) {
    jobs = std::max(1u, std::min<unsigned>(jobs, Q));
    if (jobs == 1) {
        for (FqElem a = 0; a < Q; ++a) fn(a);
        return;
    }
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < jobs; ++w)
        pool.emplace_back([&, w] {
            for (FqElem a = w; a < Q; a += jobs) fn(a);
        });
    for (auto& th : pool) th.join();
}

mpz_class ipow(std::uint64_t b, std::uint64_t e) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), b, e);
    return r;
}

bool all_unit_weights(const FamilyDescriptor& f) {
    return std::all_of(f.weights.begin(), f.weights.end(), [](std::uint32_t w) { return w == 1; });
}

void check_budget(const FamilyDescriptor& f, std::uint32_t Q, const CountOptions& opt) {
    mpz_class evals = ipow(Q, f.num_vars() - (opt.strategy == CountStrategy::full_scan ? 0 : 1));
    if (evals > mpz_class(static_cast<unsigned long>(opt.max_evaluations)))
        throw Error(ErrorKind::gate, "CountTooLarge",
                    "naive counting needs " + evals.get_str() + " evaluations over F_" + std::to_string(Q));
}

}  // namespace

mpz_class count_affine_cone(const FamilyDescriptor& f, const FieldDescriptor& field, FqElem lambda,
                            const CountOptions& opt) {
    check_budget(f, field.q, opt);
    Kernel k(field, f, lambda);
    std::vector<std::uint64_t> part(field.q, 0);
    if (opt.strategy == CountStrategy::full_scan) {
        run_slices(field.q, opt.jobs, [&](FqElem a) {
            ConeTally t;
            tally_full(k, a, t, false);
            part[a] = t.total;
        });
    } else {
        const LastTable t = last_table(k);
        if (f.num_vars() == 1) throw Error(ErrorKind::invalid_argument, "InvalidFamily", "need two variables");
        run_slices(field.q, opt.jobs, [&](FqElem a) { part[a] = tally_eliminate(k, t, a); });
    }
    mpz_class total = 0;
    for (auto v : part) total += mpz_class(static_cast<unsigned long>(v));
    return total;
}

PointCount count_points(const FamilyDescriptor& f, const FieldDescriptor& field, FqElem lambda, std::uint64_t s,
                        const CountOptions& opt) {
    for (auto w : f.weights)
        if (w % field.p == 0)
            throw Error(ErrorKind::gate, "CharacteristicDividesWeight", "p divides a weight");
    if (f.degree % field.p == 0)
        throw Error(ErrorKind::gate, "CharacteristicDividesDegree", "p divides the degree");
    const FieldDescriptor big = s == 1 ? field : field_make(field.p, field.r * static_cast<std::uint32_t>(s));
    const FqElem lam = s == 1 ? lambda : field_embedding(field, big)[lambda];
    PointCount out;
    out.s = s;
    const std::uint64_t Q = big.q;
    const unsigned n = f.n();
    if (all_unit_weights(f)) {
        out.cone = count_affine_cone(f, big, lam, opt);
        out.projective = (out.cone - 1) / (Q - 1);
        out.ambient = (ipow(Q, n + 1) - 1) / (Q - 1);
    } else {
        // orbit count: a nonzero point with support gcd g has a stabilizer of order gcd(g, Q - 1)
        check_budget(f, big.q, CountOptions{CountStrategy::full_scan, opt.jobs, opt.max_evaluations});
        Kernel k(big, f, lam);
        const std::uint32_t gmax = *std::max_element(f.weights.begin(), f.weights.end());
        std::vector<ConeTally> parts(big.q);
        run_slices(big.q, opt.jobs, [&](FqElem a) {
            parts[a].by_gcd.assign(gmax + 1, 0);
            tally_full(k, a, parts[a], true);
        });
        mpz_class cone = 0, weighted = 0;
        for (const auto& t : parts) {
            cone += mpz_class(static_cast<unsigned long>(t.total));
            for (std::uint32_t g = 1; g <= gmax; ++g)
                weighted += mpz_class(static_cast<unsigned long>(t.by_gcd[g])) * std::gcd<std::uint64_t>(g, Q - 1);
        }
        out.cone = cone;
        out.projective = weighted / (Q - 1);
        // ambient: sum over nonempty supports of (Q-1)^{|S|} gcd(g_S, Q-1), divided by Q-1
        mpz_class amb = 0;
        const std::size_t nv = f.num_vars();
        for (std::uint64_t mask = 1; mask < (1ull << nv); ++mask) {
            std::uint32_t g = 0;
            unsigned size = 0;
            for (std::size_t i = 0; i < nv; ++i)
                if (mask >> i & 1) {
                    g = std::gcd(g, f.weights[i]);
                    ++size;
                }
            amb += ipow(Q - 1, size) * std::gcd<std::uint64_t>(g, Q - 1);
        }
        out.ambient = amb / (Q - 1);
        out.weighted_caveat = true;
    }
    out.open = out.ambient - out.projective;
    return out;
}

CountZeta zeta_from_counts(const std::vector<mpz_class>& counts, unsigned n, std::uint64_t q, std::size_t D) {
    CountZeta out;
    const std::size_t B = counts.size();
    const unsigned w = n - 1;
    if (2 * B < D) {
        out.reason = "need at least " + std::to_string((D + 1) / 2) + " counts";
        return out;
    }
    // power sums of the eigenvalues
    std::vector<mpz_class> ps(B + 1, 0);
    for (std::size_t s = 1; s <= B; ++s) {
        mpz_class base = 0;
        for (unsigned i = 0; i < n; ++i) base += ipow(q, i * s);
        ps[s] = n % 2 ? mpz_class(counts[s - 1] - base) : mpz_class(base - counts[s - 1]);
    }
    // Newton: i c_i = -sum_{j=1}^{i} p_j c_{i-j}
    // only c_0..c_{D/2} come from Newton; later counts are checked against the result
    const std::size_t known = std::min(B, D / 2);
    std::vector<mpz_class> c(D + 1, 0);
    c[0] = 1;
    for (std::size_t i = 1; i <= known; ++i) {
        mpz_class acc = 0;
        for (std::size_t j = 1; j <= i; ++j) acc += ps[j] * c[i - j];
        acc = -acc;
        if (acc % mpz_class(static_cast<unsigned long>(i)) != 0) {
            out.reason = "non-integral coefficient c_" + std::to_string(i);
            return out;
        }
        c[i] = acc / mpz_class(static_cast<unsigned long>(i));
    }
    auto qpow_half = [&](std::int64_t e2) { return ipow(q, static_cast<std::uint64_t>(std::llabs(e2) / 2)); };
    std::vector<std::vector<mpz_class>> good;
    for (int eps : w % 2 ? std::vector<int>{1} : std::vector<int>{1, -1}) {
        std::vector<mpz_class> cand = c;
        bool ok = true;
        // c_i = eps q^{w(2i - D)/2} c_{D-i}
        for (std::size_t i = 0; i <= D && ok; ++i) {
            const std::int64_t e2 = std::int64_t(w) * (2 * std::int64_t(i) - std::int64_t(D));
            if (e2 % 2) {
                ok = false;
                break;
            }
            if (i > known) cand[i] = eps * qpow_half(e2) * cand[D - i];
        }
        for (std::size_t i = 0; i <= D && ok; ++i) {
            const std::int64_t e2 = std::int64_t(w) * (2 * std::int64_t(i) - std::int64_t(D));
            if (e2 >= 0 && cand[i] != eps * qpow_half(e2) * cand[D - i]) ok = false;
        }
        if (!ok) continue;
        // power sums of the candidate against every count
        std::vector<mpz_class> p(B + 1, 0);
        for (std::size_t s = 1; s <= B; ++s) {
            mpz_class acc = s <= D ? mpz_class(mpz_class(static_cast<unsigned long>(s)) * cand[s]) : mpz_class(0);
            for (std::size_t j = 1; j < s; ++j)
                if (s - j <= D) acc += p[j] * cand[s - j];
            p[s] = -acc;
            if (p[s] != ps[s]) {
                ok = false;
                out.residuals.push_back("eps=" + std::to_string(eps) + " s=" + std::to_string(s) + ": " +
                                        mpz_class(ps[s] - p[s]).get_str());
            }
        }
        if (ok) good.push_back(cand);
    }
    if (good.size() == 1) {
        out.determined = true;
        out.numerator = good[0];
        out.residuals.clear();
    } else if (good.empty()) {
        out.reason = "counts are inconsistent with a numerator of degree " + std::to_string(D);
    } else {
        out.reason = "functional-equation sign not determined by the counts";
    }
    return out;
}

CountCache::CountCache(std::filesystem::path dir) {
    std::filesystem::create_directories(dir);
    file_ = dir / "counts.json";
    if (std::filesystem::exists(file_)) {
        std::ifstream in(file_);
        try {
            data_ = nlohmann::json::parse(in);
        } catch (const nlohmann::json::exception&) {
            data_ = nlohmann::json::object();
        }
        if (!data_.is_object() || data_.value("version", 0) != kCacheVersion) data_ = nlohmann::json::object();
    }
    data_["version"] = kCacheVersion;
    if (!data_.contains("counts")) data_["counts"] = nlohmann::json::object();
}

std::string CountCache::key(const FamilyDescriptor& f, std::uint64_t q, FqElem lambda, std::uint64_t s) {
    return f.label() + "|q=" + std::to_string(q) + "|lambda=" + std::to_string(lambda) + "|s=" + std::to_string(s);
}

std::optional<PointCount> CountCache::get(const FamilyDescriptor& f, std::uint64_t q, FqElem lambda,
                                          std::uint64_t s) const {
    const auto& c = data_["counts"];
    const auto it = c.find(key(f, q, lambda, s));
    if (it == c.end()) return std::nullopt;
    PointCount p;
    p.s = s;
    p.cone = mpz_class(it->at("cone").get<std::string>());
    p.projective = mpz_class(it->at("projective").get<std::string>());
    p.ambient = mpz_class(it->at("ambient").get<std::string>());
    p.open = mpz_class(it->at("open").get<std::string>());
    p.weighted_caveat = it->at("weighted_caveat").get<bool>();
    return p;
}

void CountCache::put(const FamilyDescriptor& f, std::uint64_t q, FqElem lambda, const PointCount& c) {
    data_["counts"][key(f, q, lambda, c.s)] = count_to_json(c);
    const auto tmp = file_.string() + ".tmp";
    {
        std::ofstream out(tmp);
        out << data_.dump(1) << "\n";
    }
    std::filesystem::rename(tmp, file_);
}

PointCount cached_count(CountCache* cache, const FamilyDescriptor& f, const FieldDescriptor& field, FqElem lambda,
                        std::uint64_t s, const CountOptions& opt) {
    if (cache)
        if (auto hit = cache->get(f, field.q, lambda, s)) return *hit;
    PointCount c = count_points(f, field, lambda, s, opt);
    if (cache) cache->put(f, field.q, lambda, c);
    return c;
}

nlohmann::json count_to_json(const PointCount& c) {
    return {{"s", c.s},
            {"cone", c.cone.get_str()},
            {"projective", c.projective.get_str()},
            {"ambient", c.ambient.get_str()},
            {"open", c.open.get_str()},
            {"weighted_caveat", c.weighted_caveat}};
}

}  // namespace fermatzeta
