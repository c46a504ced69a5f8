#include <doctest.h>

#include <map>

#include "fermatzeta/error.hpp"
#include "fermatzeta/hypergeometric.hpp"
#include "oracles.hpp"

using namespace fermatzeta;

namespace {

const FamilyDescriptor hesse = FamilyDescriptor::make({1, 1, 1}, 3, {1, 1, 1});
const FamilyDescriptor quintic = FamilyDescriptor::make({1, 1, 1, 1, 1}, 5, {1, 1, 1, 1, 1});
const FamilyDescriptor k3 = FamilyDescriptor::make({1, 1, 1, 1}, 4, {1, 1, 1, 1});
const FamilyDescriptor quartic = FamilyDescriptor::make({1, 1, 1}, 4, {2, 2, 0});

std::vector<mpq_class> q(std::initializer_list<std::pair<long, long>> xs) {
    std::vector<mpq_class> out;
    for (auto [a, b] : xs) out.emplace_back(a, b);
    for (auto& x : out) x.canonicalize();
    return out;
}

HypergeometricSpec spec_for(const FamilyDescriptor& f, std::vector<std::uint32_t> k, std::uint32_t j0) {
    for (const auto& s : deformation_block_specs(f, *type_from_exponents(f, k)))
        if (s.j0 == j0) return canonicalize_spec(s);
    throw std::runtime_error("no spec");
}

}  // namespace

TEST_CASE("Hesse block specs") {
    const auto a = spec_for(hesse, {0, 0, 0}, 0);
    CHECK(a.upper == q({{1, 3}, {1, 3}}));
    CHECK(a.lower == q({{2, 3}}));
    CHECK(a.prefactor() == 1);
    CHECK(a.argument() == mpq_class(-1, 27));

    const auto b = spec_for(hesse, {0, 0, 0}, 1);
    CHECK(b.target.exponents == std::vector<std::uint32_t>{1, 1, 1});
    CHECK(b.target.entries == std::vector<std::uint32_t>{2, 2, 2});
    CHECK(b.upper == q({{2, 3}, {2, 3}}));
    CHECK(b.lower == q({{4, 3}}));
    CHECK(b.prefactor() == -1);
    CHECK(spec_to_latex(b) ==
          "-\\lambda\\,{}_2F_1\\left(\\begin{matrix}\\frac{2}{3},\\frac{2}{3}\\\\\\frac{4}{3}\\end{matrix};-\\frac{\\lambda^{3}}{27}\\right)");

    const auto c = spec_for(hesse, {1, 1, 1}, 2);
    CHECK(c.prefactor() == mpq_class(1, 54));
    CHECK(c.upper == q({{4, 3}, {4, 3}}));
    CHECK(c.lower == q({{5, 3}}));

    const auto d = spec_for(hesse, {1, 1, 1}, 0);
    CHECK(d.upper == q({{2, 3}, {2, 3}}));
    CHECK(d.lower == q({{1, 3}}));
    CHECK(deformation_block_specs(hesse, *type_from_exponents(hesse, {1, 1, 1})).size() == 2);
}

TEST_CASE("spec invariants") {
    for (const auto& f : {hesse, quintic, k3, quartic, FamilyDescriptor::make({1, 1, 2}, 4, {1, 1, 1})}) {
        const std::uint32_t dp = f.deformation_order();
        for (const auto& k : enumerate_admissible(f))
            for (const auto& s : deformation_block_specs(f, k)) {
                CHECK(s.upper.size() == dp);
                CHECK(s.lower.size() == dp - 1);
                CHECK(s.rho != 0);
                CHECK(strongly_equivalent(s.source, s.target, f));
                const auto shifted = shift_type(f, k, s.j0);
                REQUIRE(shifted);
                CHECK(*shifted == s.target);
            }
    }
}

TEST_CASE("canonicalization") {
    HypergeometricSpec s;
    s.upper = q({{2, 3}, {2, 3}, {2, 3}});
    s.lower = q({{2, 3}, {4, 3}});
    const auto c = canonicalize_spec(s);
    CHECK(c.upper == q({{2, 3}, {2, 3}}));
    CHECK(c.lower == q({{4, 3}}));
    s.upper = q({{1, 4}, {1, 2}, {1, 2}, {3, 4}});
    s.lower = q({{1, 4}, {1, 2}, {3, 4}});
    const auto d = canonicalize_spec(s);
    CHECK(d.upper == q({{1, 2}}));
    CHECK(d.lower.empty());
    s.upper = q({{1, 5}});
    s.lower = q({{2, 5}});
    CHECK(canonicalize_spec(s).upper == s.upper);

    const auto w = spec_for(k3, {0, 1, 1, 2}, 0);
    CHECK(w.upper == q({{1, 2}}));
    CHECK(w.lower.empty());
    CHECK(w.argument() == mpq_class(1, 256));
}

TEST_CASE("series coefficients") {
    const auto b = spec_for(hesse, {0, 0, 0}, 1);
    const auto c = series_coefficients(b, 7);
    CHECK(c[0] == 0);
    CHECK(c[1] == -1);
    CHECK(c[4] == mpq_class(1, 81));
    CHECK(c[2] == 0);
    CHECK(c[3] == 0);
    CHECK(series_coefficients(spec_for(hesse, {1, 1, 1}, 2), 1) == std::vector<mpq_class>{0, 0});
    CHECK(series_coefficients(spec_for(hesse, {0, 0, 0}, 0), 0)[0] == 1);
    HypergeometricSpec bad = b;
    bad.lower.push_back(0);
    CHECK_THROWS_AS(series_coefficients(bad, 3), Error);
}

TEST_CASE("closed form matches term-by-term reduction") {
    for (const auto& f : {hesse, quintic, k3, quartic, FamilyDescriptor::make({1, 1, 2}, 4, {1, 1, 1}),
                          FamilyDescriptor::make({1, 2, 3}, 6, {1, 1, 1}), FamilyDescriptor::make({1, 1, 1}, 5, {3, 1, 1})}) {
        const auto types = enumerate_admissible(f);
        const std::size_t terms = 8 * f.deformation_order() + 2;
        for (const auto& cls : strong_classes(f, types)) {
            const auto A = deformation_matrix(f, cls, terms);
            CHECK(A.c == deformation_matrix_by_reduction(f, cls, terms).c);
            std::map<std::vector<std::uint32_t>, std::size_t> idx;
            for (std::size_t i = 0; i < cls.size(); ++i) idx[cls[i].exponents] = i;
            for (std::size_t col = 0; col < cls.size(); ++col)
                for (std::uint64_t e = 0; e <= terms; ++e) {
                    const auto [target, coeff] = oracle::deformation_coefficient(f, cls[col].exponents, cls[col].degree, e);
                    if (coeff == 0) continue;
                    const std::vector<std::uint32_t> tt(target.begin(), target.end());
                    REQUIRE(idx.count(tt));
                    CHECK(A.at(e, idx[tt], col) == coeff);
                }
        }
    }
}

TEST_CASE("quartic curve argument is lambda^2/4") {
    for (const auto& k : enumerate_admissible(quartic))
        for (const auto& s : deformation_block_specs(quartic, k)) CHECK(s.argument() == mpq_class(1, 4));
    const auto s = spec_for(quartic, {2, 2, 1}, 1);
    CHECK(s.prefactor() == mpq_class(-1, 16));
}

TEST_CASE("series inverse") {
    const auto cls = strong_classes(quintic, enumerate_admissible(quintic)).front();
    const std::size_t L = 30;
    const auto A = deformation_matrix(quintic, cls, L);
    const auto B = series_inverse(A, L);
    const std::size_t n = A.dim;
    for (std::size_t e = 0; e <= L; ++e)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                mpq_class s = 0;
                for (std::size_t v = 0; v <= e; ++v)
                    for (std::size_t k = 0; k < n; ++k) s += A.at(v, i, k) * B.at(e - v, k, j);
                CHECK(s == (e == 0 && i == j ? 1 : 0));
            }
    RationalSeries bad(1, 2, mpq_class(0));
    CHECK_THROWS_AS(series_inverse(bad, 2), Error);
}

TEST_CASE("spec JSON") {
    const auto j = spec_to_json(spec_for(hesse, {1, 1, 1}, 2));
    CHECK(j["prefactor"]["coefficient"] == "1/54");
    CHECK(j["prefactor"]["lambda_power"] == 2);
    CHECK(j["argument"]["coefficient"] == "-1/27");
    CHECK(j["upper"] == nlohmann::json::array({"4/3", "4/3"}));
    CHECK(j["p"] == 2);
    CHECK(rational_to_latex(mpq_class(-3, 4)) == "-\\frac{3}{4}");
}

TEST_CASE("pole factor") {
    const auto h = pole_factor(hesse);
    CHECK(h.degree == 3);
    CHECK(h.kappa_signed == mpq_class(-1, 27));
    CHECK(pole_factor(quartic).kappa_signed == mpq_class(1, 4));
    CHECK(pole_factor(quintic).kappa_signed == mpq_class(-1, 3125));
}
