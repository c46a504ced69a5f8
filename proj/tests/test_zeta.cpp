#include <doctest.h>

#include "fermatzeta/error.hpp"
#include "fermatzeta/zeta.hpp"

using namespace fermatzeta;

namespace {

const FamilyDescriptor hesse = FamilyDescriptor::make({1, 1, 1}, 3, {1, 1, 1});

std::vector<PointCount> counts(const FamilyDescriptor& f, const FieldDescriptor& field, FqElem lam, std::size_t terms) {
    std::vector<PointCount> out;
    for (std::size_t s = 1; s <= terms; ++s) out.push_back(count_points(f, field, lam, s));
    return out;
}

bool verdict(const ZetaReport& r, const std::string& name) {
    for (const auto& v : r.verdicts)
        if (v.name == name) return v.pass;
    return false;
}

}  // namespace

TEST_CASE("polynomial helpers") {
    const std::vector<mpz_class> r{1, 66, 3751, 87846, 1771561};
    const auto sq = poly_mul(r, r);
    CHECK(sq.size() == 9);
    CHECK(sq[8] == mpz_class("3138428376721"));
    CHECK(integer_root(sq, 2) == r);
    CHECK(integer_root(poly_mul(sq, r), 3) == r);
    auto off = sq;
    off[3] += 1;
    CHECK(!integer_root(off, 2));
    CHECK(integer_root(r, 1) == r);

    CHECK(functional_equation_sign(r, 11, 3) == 1);
    CHECK(functional_equation_sign({1, -3, 7}, 7, 1) == 1);
    CHECK(functional_equation_sign({1, 0, -7}, 7, 1) == -1);
    CHECK(functional_equation_sign({1, 2, 3}, 7, 1) == 0);
    CHECK(polynomial_to_string({1, -3, 7}) == "1 - 3*t + 7*t^2");
}

TEST_CASE("rounding precision") {
    // D = 2, w = 1, q = 7: bound 2 * binom(2,1) * 3 = 12 < 7^2
    CHECK(rounding_precision(7, 7, 2, 1) == 2);
    CHECK(rounding_precision(11, 11, 4, 3) >= 7);
}

TEST_CASE("Hesse pencil over F_7") {
    const auto field = field_make(7, 1);
    const auto cal = default_calibration();
    for (FqElem lam = 0; lam < 7; ++lam) {
        if (lam == 1 || lam == 2 || lam == 4) {
            CHECK_THROWS_AS(compute_zeta(hesse, field, lam, cal), Error);
            continue;
        }
        auto r = compute_zeta(hesse, field, lam, cal);
        REQUIRE(r.numerator.size() == 3);
        CHECK(r.numerator[2] == 7);
        CHECK(abs(r.numerator[1]) <= 5);
        verify(r, counts(hesse, field, lam, 2));
        for (const auto& v : r.verdicts) CHECK_MESSAGE(v.pass, v.name);
        CHECK(r.predicted_open_count() == count_points(hesse, field, lam, 1).open);
    }
}

TEST_CASE("Fermat members reduce to Jacobi sums") {
    const auto f = FamilyDescriptor::make({1, 1, 1}, 4, {2, 2, 0});
    const auto field = field_make(5, 1);
    auto r = compute_zeta(f, field, 0, default_calibration());
    CHECK(r.numerator.size() == 7);
    CHECK(r.predicted_counts(3)[0] == count_points(f, field, 0, 1).projective);
    verify(r, counts(f, field, 0, 3));
    CHECK(verdict(r, "zeta_from_counts"));
    CHECK(verdict(r, "lefschetz_trace"));
}

TEST_CASE("gates") {
    const auto cal = default_calibration();
    CHECK_THROWS_AS(compute_zeta(hesse, field_make(3, 1), 1, cal), Error);
    CHECK_THROWS_AS(compute_zeta(hesse, field_make(5, 1), 1, cal), Error);
    try {
        compute_zeta(hesse, field_make(7, 1), 1, cal);
        FAIL("singular member accepted");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::gate);
        CHECK(e.name() == "QuasiSmoothnessViolation");
    }
}

TEST_CASE("report JSON is stable under more precision") {
    const auto field = field_make(7, 1);
    const auto cal = default_calibration();
    auto a = compute_zeta(hesse, field, 3, cal);
    ZetaOptions more;
    more.precision = 8;
    more.order = 600;
    auto b = compute_zeta(hesse, field, 3, cal, more);
    verify(a, counts(hesse, field, 3, 2));
    verify(b, counts(hesse, field, 3, 2));
    const auto ja = report_to_json(a), jb = report_to_json(b);
    CHECK(ja.dump() == jb.dump());
    CHECK(ja["schema"] == "fermatzeta.zeta");
    CHECK(ja["verdict"] == "MATCH");
    CHECK(!ja.contains("telemetry"));
    CHECK(report_to_json(a, true).contains("telemetry"));
}
