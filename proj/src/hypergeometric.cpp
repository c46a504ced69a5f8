#include "fermatzeta/hypergeometric.hpp"

#include <algorithm>
#include <climits>
#include <map>
#include <sstream>

#include "fermatzeta/error.hpp"
#include "fermatzeta/reduction.hpp"

namespace fermatzeta {

namespace {

mpq_class frac(std::int64_t a, std::int64_t b) {
    mpq_class x(mpz_class(static_cast<long>(a)), mpz_class(static_cast<long>(b)));
    x.canonicalize();
    return x;
}

mpz_class binomial(std::uint64_t n, std::uint64_t k) {
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

std::map<std::vector<std::uint32_t>, std::size_t> index_of(const TypeClass& members) {
    std::map<std::vector<std::uint32_t>, std::size_t> idx;
    for (std::size_t i = 0; i < members.size(); ++i) idx[members[i].exponents] = i;
    return idx;
}

std::string lambda_power(std::uint64_t e) {
    if (e == 0) return "";
    if (e == 1) return "\\lambda";
    return "\\lambda^{" + std::to_string(e) + "}";
}

// c * lambda^e in the display convention of the tables: -\lambda, \frac{\lambda^{2}}{54}
std::string monomial_latex(const mpq_class& c, std::uint64_t e) {
    if (c == 0) return "0";
    std::string sign = c < 0 ? "-" : "";
    const mpz_class num = abs(c.get_num()), den = c.get_den();
    const std::string lp = lambda_power(e);
    std::string top = num == 1 && !lp.empty() ? lp : num.get_str() + lp;
    if (den == 1) return sign + top;
    return sign + "\\frac{" + top + "}{" + den.get_str() + "}";
}

}  // namespace

mpq_class HypergeometricSpec::prefactor() const {
    mpq_class x = mpq_class(binomial) * rho;
    return j0 % 2 ? mpq_class(-x) : x;
}

mpq_class HypergeometricSpec::argument() const { return dprime % 2 ? mpq_class(-kappa) : kappa; }

std::vector<HypergeometricSpec> deformation_block_specs(const FamilyDescriptor& f, const MonomialType& k) {
    const std::uint32_t dp = f.deformation_order();
    const std::size_t n = f.num_vars();
    mpq_class kappa = 1;
    std::vector<std::uint32_t> bcount(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        if (f.deformation[i] == 0) continue;
        const std::uint32_t di = f.exponent_degree(i);
        bcount[i] = f.deformation[i] * dp / di;
        for (std::uint32_t s = 0; s < bcount[i]; ++s) kappa *= frac(f.deformation[i], di);
    }
    std::vector<HypergeometricSpec> out;
    for (std::uint32_t j0 = 0; j0 < dp; ++j0) {
        PoleForm form;
        form.t = k.degree + j0;
        for (std::size_t i = 0; i < n; ++i) form.b.push_back(k.exponents[i] + std::uint64_t(j0) * f.deformation[i]);
        const ReducedForm red = complete_reduction(f, form);
        if (red.zero) continue;
        auto target = type_from_exponents(f, red.c);
        if (!target) continue;
        HypergeometricSpec s;
        s.source = k;
        s.target = *target;
        s.j0 = j0;
        s.binomial = binomial(k.degree + j0 - 1, j0);
        s.rho = red.rho;
        s.kappa = kappa;
        s.dprime = dp;
        for (std::size_t i = 0; i < n; ++i)
            for (std::uint32_t u = 1; u <= bcount[i]; ++u)
                s.upper.push_back(frac(std::int64_t(u - 1) * f.exponent_degree(i) + 1 + std::int64_t(f.deformation[i]) * j0 +
                                           k.exponents[i],
                                       std::int64_t(f.deformation[i]) * dp));
        for (std::uint32_t u = 1; u <= dp; ++u)
            if (j0 + u != dp) s.lower.push_back(frac(j0 + u, dp));
        out.push_back(std::move(s));
    }
    return out;
}

HypergeometricSpec canonicalize_spec(HypergeometricSpec spec) {
    std::sort(spec.upper.begin(), spec.upper.end());
    std::sort(spec.lower.begin(), spec.lower.end());
    std::vector<mpq_class> up, lo;
    std::size_t i = 0, j = 0;
    while (i < spec.upper.size() || j < spec.lower.size()) {
        if (j == spec.lower.size() || (i < spec.upper.size() && spec.upper[i] < spec.lower[j])) {
            up.push_back(spec.upper[i++]);
        } else if (i == spec.upper.size() || spec.lower[j] < spec.upper[i]) {
            lo.push_back(spec.lower[j++]);
        } else {
            ++i;
            ++j;
        }
    }
    spec.upper = std::move(up);
    spec.lower = std::move(lo);
    return spec;
}

std::vector<mpq_class> series_coefficients(const HypergeometricSpec& spec, std::size_t L) {
    for (const auto& b : spec.lower)
        if (b <= 0 && b.get_den() == 1)
            throw Error(ErrorKind::invalid_argument, "MalformedSpec", "lower parameter is a non-positive integer");
    std::vector<mpq_class> c(L + 1, 0);
    mpq_class term = spec.prefactor();
    const mpq_class z = spec.argument();
    for (std::uint64_t j = 0;; ++j) {
        const std::uint64_t e = spec.j0 + std::uint64_t(spec.dprime) * j;
        if (e > L) break;
        c[e] = term;
        mpq_class ratio = z;
        for (const auto& a : spec.upper) ratio *= a + j;
        for (const auto& b : spec.lower) ratio /= b + j;
        ratio /= j + 1;
        term *= ratio;
    }
    return c;
}

std::string rational_to_latex(const mpq_class& x) {
    if (x.get_den() == 1) return x.get_num().get_str();
    std::string sign = x < 0 ? "-" : "";
    return sign + "\\frac{" + mpz_class(abs(x.get_num())).get_str() + "}{" + x.get_den().get_str() + "}";
}

nlohmann::json spec_to_json(const HypergeometricSpec& spec) {
    nlohmann::json j;
    j["source"] = {{"exponents", spec.source.exponents}, {"type", spec.source.entries}, {"degree", spec.source.degree}};
    j["target"] = {{"exponents", spec.target.exponents}, {"type", spec.target.entries}, {"degree", spec.target.degree}};
    j["j0"] = spec.j0;
    j["binomial"] = spec.binomial.get_str();
    j["rho"] = spec.rho.get_str();
    j["prefactor"] = {{"coefficient", spec.prefactor().get_str()}, {"lambda_power", spec.j0}};
    j["argument"] = {{"coefficient", spec.argument().get_str()}, {"lambda_power", spec.dprime}};
    std::vector<std::string> up, lo;
    for (const auto& a : spec.upper) up.push_back(a.get_str());
    for (const auto& b : spec.lower) lo.push_back(b.get_str());
    j["upper"] = up;
    j["lower"] = lo;
    j["p"] = spec.upper.size();
    j["q"] = spec.lower.size();
    j["latex"] = spec_to_latex(spec);
    return j;
}

std::string spec_to_latex(const HypergeometricSpec& spec) {
    std::ostringstream os;
    const mpq_class pf = spec.prefactor();
    if (pf == 1 && spec.j0 == 0) {
    } else if (pf == -1 && spec.j0 == 0) {
        os << "-";
    } else {
        os << monomial_latex(pf, spec.j0) << "\\,";
    }
    auto index = [](std::size_t k) { return k < 10 ? std::to_string(k) : "{" + std::to_string(k) + "}"; };
    os << "{}_" << index(spec.upper.size()) << "F_" << index(spec.lower.size()) << "\\left(\\begin{matrix}";
    for (std::size_t i = 0; i < spec.upper.size(); ++i) os << (i ? "," : "") << rational_to_latex(spec.upper[i]);
    os << "\\\\";
    if (spec.lower.empty()) os << "-";
    for (std::size_t i = 0; i < spec.lower.size(); ++i) os << (i ? "," : "") << rational_to_latex(spec.lower[i]);
    os << "\\end{matrix};" << monomial_latex(spec.argument(), spec.dprime) << "\\right)";
    return os.str();
}

RationalSeries deformation_matrix(const FamilyDescriptor& f, const TypeClass& members, std::size_t L) {
    const auto idx = index_of(members);
    RationalSeries A(members.size(), L, mpq_class(0));
    for (std::size_t col = 0; col < members.size(); ++col)
        for (const auto& spec : deformation_block_specs(f, members[col])) {
            const auto it = idx.find(spec.target.exponents);
            if (it == idx.end())
                throw Error(ErrorKind::invalid_argument, "TargetOutsideClass",
                            "entry leaves the strong class of " + format_exponents(members[col]));
            const auto c = series_coefficients(spec, L);
            for (std::size_t e = 0; e <= L; ++e)
                if (c[e] != 0) A.at(e, it->second, col) += c[e];
        }
    return A;
}

RationalSeries deformation_matrix_by_reduction(const FamilyDescriptor& f, const TypeClass& members, std::size_t L) {
    const auto idx = index_of(members);
    RationalSeries A(members.size(), L, mpq_class(0));
    for (std::size_t col = 0; col < members.size(); ++col) {
        const auto& k = members[col];
        for (std::size_t e = 0; e <= L; ++e) {
            PoleForm form;
            form.t = k.degree + e;
            for (std::size_t i = 0; i < f.num_vars(); ++i) form.b.push_back(k.exponents[i] + e * f.deformation[i]);
            const ReducedForm red = complete_reduction(f, form);
            if (red.zero) continue;
            const auto it = idx.find(red.c);
            if (it == idx.end())
                throw Error(ErrorKind::invalid_argument, "TargetOutsideClass",
                            "entry leaves the strong class of " + format_exponents(k));
            mpq_class v = mpq_class(binomial(k.degree + e - 1, e)) * red.rho;
            if (e % 2) v = -v;
            A.at(e, it->second, col) += v;
        }
    }
    return A;
}

RationalSeries series_inverse(const RationalSeries& A, std::size_t L) {
    const std::size_t n = A.dim;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (A.at(0, i, j) != (i == j ? 1 : 0))
                throw Error(ErrorKind::invalid_argument, "NotNormalized", "series inverse needs A(0) = I");
    L = std::min(L, A.order);
    std::vector<std::size_t> nz;
    for (std::size_t v = 1; v <= L; ++v)
        for (std::size_t i = 0; i < n * n; ++i)
            if (A.c[v * n * n + i] != 0) {
                nz.push_back(v);
                break;
            }
    RationalSeries B(n, L, mpq_class(0));
    for (std::size_t i = 0; i < n; ++i) B.at(0, i, i) = 1;
    for (std::size_t e = 1; e <= L; ++e)
        for (auto v : nz) {
            if (v > e) break;
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t k = 0; k < n; ++k) {
                    const mpq_class& a = A.at(v, i, k);
                    if (a == 0) continue;
                    for (std::size_t j = 0; j < n; ++j) B.at(e, i, j) -= a * B.at(e - v, k, j);
                }
        }
    return B;
}

int min_valuation(const RationalSeries& s, std::uint32_t p) {
    int v = INT_MAX;
    for (const auto& x : s.c)
        if (x != 0) v = std::min(v, valuation(x, p));
    return v == INT_MAX ? 0 : v;
}

PoleFactor pole_factor(const FamilyDescriptor& f) {
    PoleFactor r;
    r.degree = f.deformation_order();
    mpq_class kappa = 1;
    for (std::size_t i = 0; i < f.num_vars(); ++i) {
        if (f.deformation[i] == 0) continue;
        const std::uint32_t di = f.exponent_degree(i);
        const std::uint32_t b = f.deformation[i] * r.degree / di;
        for (std::uint32_t s = 0; s < b; ++s) kappa *= frac(f.deformation[i], di);
    }
    r.kappa_signed = r.degree % 2 ? mpq_class(-kappa) : kappa;
    return r;
}

FrobeniusSeries frobenius_series(const FamilyDescriptor& f, const TypeClass& members, const ZqRingPtr& base,
                                 const EigenFunction& eigen, const FrobeniusSeriesOptions& opt) {
    const std::size_t n = members.size();
    const std::size_t L = opt.order;
    const std::uint64_t q = base->q();
    const std::uint32_t p = base->p();
    const RationalSeries A = deformation_matrix(f, members, L);
    const RationalSeries B = series_inverse(A, L / q);
    const unsigned GA = static_cast<unsigned>(std::max(0, -min_valuation(A, p)));
    const unsigned GB = static_cast<unsigned>(std::max(0, -min_valuation(B, p)));
    const unsigned target = opt.precision + opt.buffer;
    const ZqRingPtr R = base->with_precision(target + GA + GB);
    const ZqRingPtr Rout = base->with_precision(target);

    std::vector<ZqElement> e(n);
    for (std::size_t i = 0; i < n; ++i) e[i] = eigen(i, R);

    // D A_v, scaled by p^GA
    std::vector<std::vector<ZqElement>> DA(L + 1);
    std::vector<bool> DAzero(L + 1, true);
    for (std::size_t v = 0; v <= L; ++v) {
        DA[v].assign(n * n, R->zero());
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                const mpq_class& a = A.at(v, i, j);
                if (a == 0) continue;
                DA[v][i * n + j] = e[i] * embed_rational_scaled(R, a, GA);
                DAzero[v] = false;
            }
    }
    std::vector<std::vector<ZqElement>> Bs(B.order + 1);
    std::vector<bool> Bzero(B.order + 1, true);
    for (std::size_t u = 0; u <= B.order; ++u) {
        Bs[u].assign(n * n, R->zero());
        for (std::size_t i = 0; i < n * n; ++i)
            if (B.c[u * n * n + i] != 0) {
                Bs[u][i] = embed_rational_scaled(R, B.c[u * n * n + i], GB);
                Bzero[u] = false;
            }
    }

    FrobeniusSeries out;
    out.guard_digits = GA + GB;
    out.pole = pole_factor(f);
    out.pole_power = opt.pole_power;
    out.series = ZqSeries(n, L, Rout->zero());
    std::vector<ZqElement> acc(n * n, R->zero());
    for (std::size_t s = 0; s <= L; ++s) {
        std::fill(acc.begin(), acc.end(), R->zero());
        for (std::size_t u = 0; u * q <= s && u <= B.order; ++u) {
            const std::size_t v = s - u * q;
            if (Bzero[u] || DAzero[v]) continue;
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t k = 0; k < n; ++k) {
                    const ZqElement& b = Bs[u][i * n + k];
                    if (b.is_zero()) continue;
                    for (std::size_t j = 0; j < n; ++j) acc[i * n + j] += b * DA[v][k * n + j];
                }
        }
        for (std::size_t i = 0; i < n * n; ++i) {
            ZqElement x;
            try {
                x = acc[i].divide_p_power(GA + GB);
            } catch (const Error&) {
                throw Error(ErrorKind::convergence, "NonIntegralSeries",
                            "coefficient of lambda^" + std::to_string(s) + " is not p-integral");
            }
            out.series.c[s * n * n + i] = x.to_ring(Rout);
        }
    }

    // multiply by r(lambda)^K = (1 - kappa' lambda^{d'})^K, one factor at a time
    const ZqElement kap = embed_rational(Rout, out.pole.kappa_signed);
    const std::size_t dp = out.pole.degree;
    for (std::size_t rep = 0; rep < opt.pole_power; ++rep)
        for (std::size_t s = L; s >= dp; --s)
            for (std::size_t i = 0; i < n * n; ++i) {
                const ZqElement& prev = out.series.c[(s - dp) * n * n + i];
                if (!prev.is_zero()) out.series.c[s * n * n + i] -= kap * prev;
            }
    return out;
}

TailReport tail_report(const FrobeniusSeries& S, const FrobeniusSeriesOptions& opt) {
    TailReport rep;
    const std::size_t W = opt.window ? opt.window : std::max<std::size_t>(10, 4 * S.pole.degree);
    rep.window = W;
    const std::size_t n = S.series.dim, L = S.series.order;
    const unsigned target = opt.precision + opt.buffer;
    unsigned v = target;
    if (W > L) {
        rep.converged = false;
        rep.min_tail_valuation = 0;
        return rep;
    }
    for (std::size_t s = L - W + 1; s <= L; ++s)
        for (std::size_t i = 0; i < n * n; ++i) v = std::min(v, S.series.c[s * n * n + i].valuation());
    rep.min_tail_valuation = v;
    rep.converged = v >= target;
    return rep;
}

ZqMatrix evaluate_at_teichmueller(const FrobeniusSeries& S, const ZqElement& lambda0, const FrobeniusSeriesOptions& opt,
                                  TailReport* report) {
    const TailReport rep = tail_report(S, opt);
    if (report) *report = rep;
    if (!rep.converged)
        throw Error(ErrorKind::convergence, "TailNotConverged",
                    "L = " + std::to_string(S.series.order) + ", minimal tail valuation " +
                        std::to_string(rep.min_tail_valuation) + " < " + std::to_string(opt.precision + opt.buffer));
    const std::size_t n = S.series.dim, L = S.series.order;
    const ZqRingPtr& R = S.series.c.front().ring_ptr();
    const ZqElement x = lambda0.to_ring(R);
    ZqMatrix M(R, n);
    for (std::size_t s = L + 1; s-- > 0;)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) M.at(i, j) = M.at(i, j) * x + S.series.at(s, i, j);
    const ZqElement r0 = R->one() - embed_rational(R, S.pole.kappa_signed) * x.pow(std::uint64_t(S.pole.degree));
    if (!r0.is_unit())
        throw Error(ErrorKind::gate, "QuasiSmoothnessViolation", "r(lambda0) is not a unit: the member is singular");
    const ZqElement scale = r0.pow(std::uint64_t(S.pole_power)).inverse();
    const ZqRingPtr Rn = R->with_precision(opt.precision);
    return M.scale(scale).to_ring(Rn);
}

}  // namespace fermatzeta
