#include "fermatzeta/zeta.hpp"

#include <algorithm>

#include "fermatzeta/error.hpp"
#include "fermatzeta/reduction.hpp"

namespace fermatzeta {

namespace {

mpz_class ipow(std::uint64_t b, std::uint64_t e) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), b, e);
    return r;
}

// ceil(q^{e2/2})
mpz_class half_power_ceil(std::uint64_t q, std::uint64_t e2) {
    mpz_class full = ipow(q, e2), root;
    mpz_sqrt(root.get_mpz_t(), full.get_mpz_t());
    if (root * root != full) ++root;
    return root;
}

mpz_class weil_bound(std::uint64_t q, std::size_t D, std::size_t i, unsigned w) {
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), D, i);
    return b * half_power_ceil(q, std::uint64_t(i) * w);
}

std::vector<ZqElement> zq_poly_mul(const std::vector<ZqElement>& a, const std::vector<ZqElement>& b) {
    std::vector<ZqElement> r(a.size() + b.size() - 1, a[0].ring_ptr()->zero());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

nlohmann::json strings(const std::vector<mpz_class>& v) {
    auto j = nlohmann::json::array();
    for (const auto& x : v) j.push_back(x.get_str());
    return j;
}

nlohmann::json exponent_list(const TypeClass& c) {
    auto j = nlohmann::json::array();
    for (const auto& k : c) j.push_back(k.exponents);
    return j;
}

nlohmann::json entry_list(const TypeClass& c) {
    auto j = nlohmann::json::array();
    for (const auto& k : c) j.push_back(k.entries);
    return j;
}

}  // namespace

std::vector<mpz_class> poly_mul(const std::vector<mpz_class>& a, const std::vector<mpz_class>& b) {
    std::vector<mpz_class> r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

unsigned rounding_precision(std::uint32_t p, std::uint64_t q, std::size_t D, unsigned w) {
    mpz_class worst = 0;
    for (std::size_t i = 0; i <= D; ++i) worst = std::max(worst, weil_bound(q, D, i, w));
    unsigned N = 1;
    mpz_class pn = p;
    while (pn <= 2 * worst) {
        pn *= p;
        ++N;
    }
    return N;
}

void check_pipeline_gates(const FamilyDescriptor& f, const FieldDescriptor& field, FqElem lambda) {
    if (f.degree % field.p == 0)
        throw Error(ErrorKind::gate, "CharacteristicDividesDegree", "p divides d");
    for (auto w : f.weights)
        if (w % field.p == 0) throw Error(ErrorKind::gate, "CharacteristicDividesWeight", "p divides a weight");
    if ((field.q - 1) % f.degree != 0)
        throw Error(ErrorKind::gate, "UnsupportedField",
                    "the numeric pipeline needs q = 1 mod d (q = " + std::to_string(field.q) + ")");
    if (lambda >= field.q) throw Error(ErrorKind::invalid_argument, "InvalidLambda", "lambda is not in F_q");
    if (!quasi_smooth(f, field, lambda))
        throw Error(ErrorKind::gate, "QuasiSmoothnessViolation",
                    "the member at lambda = " + std::to_string(lambda) + " is not quasi-smooth");
}

ZqMatrix frobenius_block(const FamilyDescriptor& f, const TypeClass& members, const FieldDescriptor& field,
                         FqElem lambda, const JacobiTable& table, const Calibration& cal, unsigned N,
                         const ZetaOptions& opt, StrongTelemetry* tel) {
    const std::uint32_t p = field.p;
    const unsigned target = N + opt.buffer;
    const std::size_t dp = f.deformation_order();
    const std::size_t W = std::max<std::size_t>(10, 4 * dp);
    std::vector<CyclotomicInt> eig;
    for (const auto& k : members) eig.push_back(inverse_frobenius_constant(f, table, k, field.q, cal));
    const ZqRingPtr base = ZqRing::make(field, N);
    if (tel) {
        tel->first_member = members.front().exponents;
        tel->precision = N;
    }
    if (lambda == 0) {
        const ZqElement zeta = teichmueller_root_of_unity(base, field, f.degree);
        ZqMatrix M(base, members.size());
        for (std::size_t i = 0; i < members.size(); ++i) M.at(i, i) = eig[i].embed(zeta);
        return M;
    }
    EigenFunction eigen = [&](std::size_t i, const ZqRingPtr& R) {
        return eig[i].embed(teichmueller_root_of_unity(R, field, f.degree));
    };
    std::size_t K = opt.pole_power ? opt.pole_power : (opt.clear_poles ? std::size_t(p) * target : 0);
    std::size_t L = opt.order ? opt.order : std::max(25 * dp, dp * K + 2 * W);
    const ZqElement lam0 = teichmueller(base->with_precision(target), field, lambda);
    TailReport rep;
    for (unsigned attempt = 1; attempt <= opt.max_attempts; ++attempt) {
        if (L > opt.max_order) break;
        FrobeniusSeriesOptions o;
        o.precision = N;
        o.buffer = opt.buffer;
        o.order = L;
        o.pole_power = K;
        o.window = W;
        const FrobeniusSeries S = frobenius_series(f, members, base, eigen, o);
        rep = tail_report(S, o);
        if (tel) {
            tel->order = L;
            tel->pole_power = K;
            tel->guard_digits = S.guard_digits;
            tel->tail_valuation = rep.min_tail_valuation;
            tel->attempts = attempt;
        }
        if (rep.converged) return evaluate_at_teichmueller(S, lam0, o);
        if (!opt.pole_power && opt.clear_poles) K += std::size_t(p) * (target - rep.min_tail_valuation + 1);
        L = std::max(L + L / 2, dp * K + 2 * W);
    }
    throw Error(ErrorKind::convergence, "TailNotConverged",
                "class of " + format_exponents(members.front()) + ": L = " + std::to_string(L) +
                    ", minimal tail valuation " + std::to_string(rep.min_tail_valuation) + " < " +
                    std::to_string(target));
}

std::optional<std::vector<mpz_class>> integer_root(const std::vector<mpz_class>& P, std::size_t e) {
    if (e == 0 || P.empty() || P[0] != 1 || (P.size() - 1) % e) return std::nullopt;
    const std::size_t D = (P.size() - 1) / e;
    // y = P^{1/e}: k y_k = sum_{j=1}^{k} (j/e - (k - j)) P_j y_{k-j}
    std::vector<mpq_class> y(D + 1, 0);
    y[0] = 1;
    for (std::size_t k = 1; k <= D; ++k) {
        mpq_class acc = 0;
        for (std::size_t j = 1; j <= k && j < P.size(); ++j) {
            mpq_class alpha{long(j), long(e)};
            alpha.canonicalize();
            acc += (alpha - mpq_class(long(k - j))) * mpq_class(P[j]) * y[k - j];
        }
        y[k] = acc / mpq_class(long(k));
    }
    std::vector<mpz_class> R;
    for (auto& c : y) {
        if (c.get_den() != 1) return std::nullopt;
        R.push_back(c.get_num());
    }
    std::vector<mpz_class> power{1};
    for (std::size_t i = 0; i < e; ++i) power = poly_mul(power, R);
    if (power != P) return std::nullopt;
    return R;
}

int functional_equation_sign(const std::vector<mpz_class>& c, std::uint64_t q, unsigned w) {
    const std::size_t D = c.size() - 1;
    for (int eps : {1, -1}) {
        bool ok = true;
        for (std::size_t i = 0; i <= D && ok; ++i) {
            const std::int64_t e2 = std::int64_t(w) * (std::int64_t(D) - 2 * std::int64_t(i));
            if (e2 < 0) continue;
            if (e2 % 2) {
                ok = false;
                break;
            }
            ok = c[D - i] == eps * ipow(q, e2 / 2) * c[i];
        }
        if (ok) return eps;
    }
    return 0;
}

mpz_class ZetaReport::trace() const { return numerator.size() > 1 ? mpz_class(-numerator[1]) : mpz_class(0); }

mpz_class ZetaReport::predicted_open_count() const {
    const mpz_class t = trace();
    return ipow(q, n()) + (n() % 2 ? mpz_class(-t) : t);
}

std::vector<mpz_class> ZetaReport::predicted_counts(std::size_t terms) const {
    const std::size_t D = numerator.size() - 1;
    std::vector<mpz_class> ps(terms + 1, 0), out;
    for (std::size_t s = 1; s <= terms; ++s) {
        mpz_class acc = s <= D ? mpz_class(mpz_class(static_cast<unsigned long>(s)) * numerator[s]) : mpz_class(0);
        for (std::size_t j = 1; j < s; ++j)
            if (s - j <= D) acc += ps[j] * numerator[s - j];
        ps[s] = -acc;
        mpz_class base = 0;
        for (unsigned i = 0; i < n(); ++i) base += ipow(q, i * s);
        out.push_back(n() % 2 ? mpz_class(base + ps[s]) : mpz_class(base - ps[s]));
    }
    return out;
}

ZetaReport compute_zeta(const FamilyDescriptor& f, const FieldDescriptor& field, FqElem lambda, const Calibration& cal,
                        const ZetaOptions& opt) {
    check_pipeline_gates(f, field, lambda);
    ZetaReport rep;
    rep.family = f;
    rep.p = field.p;
    rep.r = field.r;
    rep.q = field.q;
    rep.lambda = lambda;
    rep.calibration = cal;
    const unsigned w = f.n() - 1;
    const auto types = enumerate_admissible(f);
    const auto weak = weak_classes(f, types);
    rep.orbits = symmetry_orbits(f, weak);
    std::vector<std::size_t> orbit_of(weak.size(), 0);
    for (std::size_t o = 0; o < rep.orbits.size(); ++o)
        for (auto c : rep.orbits[o].members) orbit_of[c] = o;
    const JacobiTable table = jacobi_table(f, field);
    rep.numerator = {1};
    for (std::size_t c = 0; c < weak.size(); ++c) {
        ClassResult cr;
        cr.members = weak[c];
        cr.strong = strong_classes(f, weak[c]);
        cr.orbit = orbit_of[c];
        const std::size_t D = weak[c].size();
        const unsigned N = std::max(opt.precision, rounding_precision(field.p, field.q, D, w));
        std::vector<ZqElement> poly;
        for (const auto& s : cr.strong) {
            StrongTelemetry tel;
            const ZqMatrix M = frobenius_block(f, s, field, lambda, table, cal, N, opt, &tel);
            cr.telemetry.push_back(tel);
            auto cp = char_poly(M);  // det(x - M), ascending; reversed it is det(1 - M t)
            std::reverse(cp.begin(), cp.end());
            poly = poly.empty() ? cp : zq_poly_mul(poly, cp);
        }
        for (std::size_t i = 0; i < poly.size(); ++i)
            cr.polynomial.push_back(round_to_integer(poly[i], weil_bound(field.q, D, i, w)));
        const std::size_t e = rep.orbits[cr.orbit].power;
        if (e > 1) cr.factor_root = integer_root(cr.polynomial, e);
        rep.numerator = poly_mul(rep.numerator, cr.polynomial);
        rep.classes.push_back(std::move(cr));
    }
    return rep;
}

void verify(ZetaReport& report, const std::vector<PointCount>& counts) {
    report.verdicts.clear();
    const unsigned w = report.n() - 1;
    if (!counts.empty()) {
        Verdict v{"lefschetz_trace", false, {}};
        const mpz_class expected = counts[0].open, got = report.predicted_open_count();
        v.pass = expected == got;
        v.detail = {{"open_count", expected.get_str()}, {"trace_formula", got.get_str()}, {"trace", report.trace().get_str()}};
        report.verdicts.push_back(v);

        Verdict c{"point_counts", true, nlohmann::json::array()};
        const auto pred = report.predicted_counts(counts.size());
        for (std::size_t s = 0; s < counts.size(); ++s) {
            const bool ok = pred[s] == counts[s].projective;
            c.pass &= ok;
            c.detail.push_back({{"s", counts[s].s},
                                {"counted", counts[s].projective.get_str()},
                                {"predicted", pred[s].get_str()},
                                {"match", ok},
                                {"weighted_caveat", counts[s].weighted_caveat}});
        }
        report.verdicts.push_back(c);

        std::vector<mpz_class> xs;
        for (const auto& pc : counts) xs.push_back(pc.projective);
        const CountZeta cz = zeta_from_counts(xs, report.n(), report.q, report.numerator.size() - 1);
        Verdict z{"zeta_from_counts", false, {}};
        if (cz.determined) {
            z.pass = cz.numerator == report.numerator;
            z.detail = {{"status", z.pass ? "match" : "mismatch"}, {"from_counts", strings(cz.numerator)}};
        } else {
            z.pass = true;
            z.detail = {{"status", "not_determined"}, {"reason", cz.reason}};
        }
        report.verdicts.push_back(z);
    }
    Verdict fe{"functional_equation", true, nlohmann::json::array()};
    for (std::size_t c = 0; c < report.classes.size(); ++c) {
        const int eps = functional_equation_sign(report.classes[c].polynomial, report.q, w);
        fe.pass &= eps != 0;
        fe.detail.push_back({{"class", c}, {"sign", eps}});
    }
    report.verdicts.push_back(fe);
}

std::string polynomial_to_string(const std::vector<mpz_class>& c, const std::string& var) {
    std::string s;
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i] == 0) continue;
        const mpz_class a = abs(c[i]);
        if (s.empty()) s += c[i] < 0 ? "-" : "";
        else s += c[i] < 0 ? " - " : " + ";
        if (i == 0 || a != 1) s += a.get_str();
        if (i > 0) s += (a != 1 ? "*" : "") + var + (i > 1 ? "^" + std::to_string(i) : "");
    }
    return s.empty() ? "0" : s;
}

nlohmann::json report_to_json(const ZetaReport& r, bool telemetry) {
    nlohmann::json j;
    j["schema"] = "fermatzeta.zeta";
    j["schema_version"] = kReportSchemaVersion;
    j["family"] = {{"weights", r.family.weights}, {"degree", r.family.degree}, {"deformation", r.family.deformation}};
    j["field"] = {{"p", r.p}, {"r", r.r}, {"q", r.q}};
    j["lambda"] = r.lambda;
    j["n"] = r.n();
    j["calibration"] = {{"nu", r.calibration.twist ? "n-1" : "n"},
                        {"sign", r.calibration.sign},
                        {"orientation", r.calibration.negate ? "negated" : "identity"}};
    j["classes"] = nlohmann::json::array();
    for (std::size_t c = 0; c < r.classes.size(); ++c) {
        const auto& cr = r.classes[c];
        const auto& orb = r.orbits[cr.orbit];
        nlohmann::json x;
        x["index"] = c;
        x["size"] = cr.members.size();
        x["exponents"] = exponent_list(cr.members);
        x["types"] = entry_list(cr.members);
        x["strong_classes"] = nlohmann::json::array();
        for (const auto& s : cr.strong) x["strong_classes"].push_back(exponent_list(s));
        x["polynomial"] = strings(cr.polynomial);
        x["orbit"] = cr.orbit;
        x["factor"] = {{"power", orb.power}, {"degree", orb.factor_degree}, {"multiplicity", orb.multiplicity()}};
        if (orb.power > 1) x["factor"]["root"] = cr.factor_root ? strings(*cr.factor_root) : nlohmann::json(nullptr);
        j["classes"].push_back(x);
    }
    j["factors"] = nlohmann::json::array();
    for (const auto& o : r.orbits) {
        const auto& rep = r.classes[o.representative];
        const auto& R = o.power > 1 && rep.factor_root ? *rep.factor_root : rep.polynomial;
        j["factors"].push_back({{"degree", R.size() - 1},
                                {"multiplicity", o.multiplicity()},
                                {"polynomial", strings(R)},
                                {"classes", o.members}});
    }
    const unsigned n = r.n();
    j["numerator"] = strings(r.numerator);
    j["zeta_U"] = {{"P_exponent", n % 2 ? 1 : -1}, {"denominator", {"1", "-" + ipow(r.q, n).get_str()}}};
    nlohmann::json den = nlohmann::json::array();
    for (unsigned i = 0; i < n; ++i) den.push_back({"1", "-" + ipow(r.q, i).get_str()});
    j["zeta_X"] = {{"P_exponent", n % 2 ? -1 : 1}, {"denominator_factors", den}};
    j["verdicts"] = nlohmann::json::array();
    bool all = true;
    for (const auto& v : r.verdicts) {
        j["verdicts"].push_back({{"name", v.name}, {"pass", v.pass}, {"detail", v.detail}});
        all &= v.pass;
    }
    if (!r.verdicts.empty()) j["verdict"] = all ? "MATCH" : "MISMATCH";
    if (telemetry) {
        auto t = nlohmann::json::array();
        for (const auto& cr : r.classes)
            for (const auto& s : cr.telemetry)
                t.push_back({{"class_of", s.first_member},
                             {"N", s.precision},
                             {"L", s.order},
                             {"K", s.pole_power},
                             {"guard_digits", s.guard_digits},
                             {"tail_valuation", s.tail_valuation},
                             {"attempts", s.attempts}});
        j["telemetry"] = t;
    }
    return j;
}

Calibration default_calibration() {
    const auto hesse = FamilyDescriptor::make({1, 1, 1}, 3, {1, 1, 1});
    const auto quartic = FamilyDescriptor::make({1, 1, 1}, 4, {2, 2, 0});
    const FieldDescriptor f7 = field_make(7, 1), f5 = field_make(5, 1);
    auto counts = [](const FamilyDescriptor& f, const FieldDescriptor& F) {
        return std::vector<mpz_class>{count_points(f, F, 0, 1).projective, count_points(f, F, 0, 2).projective};
    };
    Calibration a = calibrate(hesse, f7, counts(hesse, f7));
    const Calibration b = calibrate(quartic, f5, counts(quartic, f5));
    if (a.twist != b.twist || a.sign != b.sign || a.negate != b.negate)
        throw Error(ErrorKind::verification, "NoConventionMatches", "Hesse and quartic calibrations disagree");
    a.evidence = {{"hesse_q7", a.evidence}, {"quartic_q5", b.evidence}};
    return a;
}

}  // namespace fermatzeta
