#include "fermatzeta/report.hpp"

#include <sstream>

#include "fermatzeta/hypergeometric.hpp"

namespace fermatzeta {

namespace {

nlohmann::json exponents(const TypeClass& c) {
    auto a = nlohmann::json::array();
    for (const auto& k : c) a.push_back(k.exponents);
    return a;
}

std::vector<mpz_class> parse_poly(const nlohmann::json& a) {
    std::vector<mpz_class> c;
    for (const auto& s : a) c.emplace_back(s.get<std::string>());
    return c;
}

std::string poly_latex(const std::vector<mpz_class>& c) {
    std::string s;
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i] == 0) continue;
        const mpz_class a = abs(c[i]);
        if (s.empty()) s += c[i] < 0 ? "-" : "";
        else s += c[i] < 0 ? " - " : " + ";
        if (i == 0 || a != 1) s += a.get_str();
        if (i > 0) s += i > 1 ? "t^{" + std::to_string(i) + "}" : "t";
    }
    return s.empty() ? "0" : s;
}

std::vector<TypeClass> strong_of(const FamilyDescriptor& f) { return strong_classes(f, enumerate_admissible(f)); }

}  // namespace

nlohmann::json family_to_json(const FamilyDescriptor& f) {
    return {{"weights", f.weights}, {"degree", f.degree}, {"deformation", f.deformation}};
}

nlohmann::json classes_to_json(const FamilyDescriptor& f) {
    const auto types = enumerate_admissible(f);
    const auto weak = weak_classes(f, types);
    const auto orbits = symmetry_orbits(f, weak);
    nlohmann::json j;
    j["schema"] = "fermatzeta.classes";
    j["schema_version"] = kReportSchemaVersion;
    j["family"] = family_to_json(f);
    j["deformation_order"] = f.deformation_order();
    j["admissible"] = types.size();
    j["strong_classes"] = nlohmann::json::array();
    for (const auto& s : strong_classes(f, types)) j["strong_classes"].push_back(exponents(s));
    j["weak_classes"] = nlohmann::json::array();
    for (const auto& w : weak) j["weak_classes"].push_back({{"size", w.size()}, {"exponents", exponents(w)}});
    j["factors"] = nlohmann::json::array();
    for (const auto& o : orbits)
        j["factors"].push_back({{"degree", o.factor_degree},
                                {"multiplicity", o.multiplicity()},
                                {"class_size", o.class_size},
                                {"power", o.power},
                                {"classes", o.members}});
    return j;
}

std::string classes_to_text(const nlohmann::json& j) {
    std::ostringstream os;
    os << "admissible types: " << j["admissible"] << "\n";
    os << "strong classes: " << j["strong_classes"].size() << "\n";
    os << "weak classes: " << j["weak_classes"].size() << "\n";
    for (const auto& w : j["weak_classes"]) os << "  size " << w["size"] << ": " << w["exponents"].dump() << "\n";
    os << "factors:\n";
    for (const auto& fa : j["factors"])
        os << "  degree " << fa["degree"] << " multiplicity " << fa["multiplicity"] << "\n";
    return os.str();
}

nlohmann::json pf_to_json(const FamilyDescriptor& f) {
    nlohmann::json j;
    j["schema"] = "fermatzeta.pf";
    j["schema_version"] = kReportSchemaVersion;
    j["family"] = family_to_json(f);
    j["blocks"] = nlohmann::json::array();
    for (const auto& s : strong_of(f)) {
        nlohmann::json b;
        b["members"] = exponents(s);
        b["entries"] = nlohmann::json::array();
        for (const auto& k : s)
            for (const auto& spec : deformation_block_specs(f, k)) b["entries"].push_back(spec_to_json(canonicalize_spec(spec)));
        j["blocks"].push_back(b);
    }
    return j;
}

std::string pf_to_latex(const FamilyDescriptor& f) {
    std::ostringstream os;
    for (const auto& s : strong_of(f)) {
        std::vector<std::vector<std::string>> cell(s.size(), std::vector<std::string>(s.size(), "0"));
        for (std::size_t col = 0; col < s.size(); ++col)
            for (const auto& spec : deformation_block_specs(f, s[col]))
                for (std::size_t row = 0; row < s.size(); ++row)
                    if (s[row] == spec.target) cell[row][col] = spec_to_latex(canonicalize_spec(spec));
        os << "% " << exponents(s).dump() << "\n\\begin{pmatrix}\n";
        for (const auto& r : cell) {
            for (std::size_t c = 0; c < r.size(); ++c) os << (c ? " & " : "") << r[c];
            os << " \\\\\n";
        }
        os << "\\end{pmatrix}\n";
    }
    return os.str();
}

std::string pf_to_text(const FamilyDescriptor& f) {
    std::ostringstream os;
    for (const auto& s : strong_of(f)) {
        os << "block " << exponents(s).dump() << "\n";
        for (const auto& k : s)
            for (const auto& spec : deformation_block_specs(f, k)) {
                const auto c = canonicalize_spec(spec);
                os << "  " << format_exponents(c.source) << " -> " << format_exponents(c.target) << ": "
                   << spec_to_latex(c) << "\n";
            }
    }
    return os.str();
}

std::string report_to_text(const nlohmann::json& r) {
    std::ostringstream os;
    os << "family " << r["family"].dump() << " over F_" << r["field"]["q"] << ", lambda = " << r["lambda"] << "\n";
    for (const auto& fa : r["factors"])
        os << "  (" << polynomial_to_string(parse_poly(fa["polynomial"])) << ")^" << fa["multiplicity"] << "\n";
    os << "P(t) = " << polynomial_to_string(parse_poly(r["numerator"])) << "\n";
    for (const auto& v : r["verdicts"]) os << v["name"].get<std::string>() << ": " << (v["pass"].get<bool>() ? "pass" : "FAIL") << "\n";
    if (r.contains("verdict")) os << r["verdict"].get<std::string>() << "\n";
    return os.str();
}

std::string report_to_latex(const nlohmann::json& r) {
    std::string P;
    for (const auto& fa : r["factors"]) {
        const auto m = fa["multiplicity"].get<std::size_t>();
        P += "\\left(" + poly_latex(parse_poly(fa["polynomial"])) + "\\right)";
        if (m > 1) P += "^{" + std::to_string(m) + "}";
    }
    std::string den;
    for (const auto& d : r["zeta_X"]["denominator_factors"])
        den += d[1] == "-1" ? std::string("(1 - t)") : "(1 - " + d[1].get<std::string>().substr(1) + "t)";
    const bool up = r["zeta_X"]["P_exponent"] == 1;
    return "Z(X,t) = " + (up ? "\\frac{" + P + "}{" + den + "}" : "\\frac{1}{" + den + "\\," + P + "}") + "\n";
}

nlohmann::json counts_to_json(const FamilyDescriptor& f, const FieldDescriptor& field, FqElem lambda,
                              const std::vector<PointCount>& counts) {
    nlohmann::json j;
    j["schema"] = "fermatzeta.counts";
    j["schema_version"] = kReportSchemaVersion;
    j["family"] = family_to_json(f);
    j["field"] = {{"p", field.p}, {"r", field.r}, {"q", field.q}};
    j["lambda"] = lambda;
    j["counts"] = nlohmann::json::array();
    std::vector<mpz_class> xs;
    for (const auto& c : counts) {
        j["counts"].push_back(count_to_json(c));
        xs.push_back(c.projective);
    }
    const std::size_t D = enumerate_admissible(f).size();
    const auto z = zeta_from_counts(xs, f.n(), field.q, D);
    nlohmann::json zj{{"degree", D}, {"determined", z.determined}};
    if (z.determined) {
        std::vector<std::string> c;
        for (const auto& x : z.numerator) c.push_back(x.get_str());
        zj["numerator"] = c;
    } else {
        zj["reason"] = z.reason;
        zj["residuals"] = z.residuals;
    }
    j["zeta_from_counts"] = zj;
    return j;
}

}  // namespace fermatzeta
