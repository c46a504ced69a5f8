#include <doctest.h>

#include <filesystem>

#include "fermatzeta/point_counter.hpp"
#include "oracles.hpp"

using namespace fermatzeta;

namespace {

const FamilyDescriptor hesse = FamilyDescriptor::make({1, 1, 1}, 3, {1, 1, 1});

mpz_class ambient(std::uint64_t q, unsigned n) {
    mpz_class s = 0, t = 1;
    for (unsigned i = 0; i <= n; ++i, t *= static_cast<unsigned long>(q)) s += t;
    return s;
}

}  // namespace

TEST_CASE("cone counts against the triple loop") {
    for (const auto& f : {hesse, FamilyDescriptor::make({1, 1, 1}, 4, {2, 2, 0}), FamilyDescriptor::make({1, 1, 1}, 4, {1, 1, 2})})
        for (std::uint32_t p : {5u, 7u, 13u}) {
            const auto field = field_make(p, 1);
            for (FqElem lam = 0; lam < field.q; ++lam) {
                const auto ref = oracle::plane_cone_count(f, field, lam);
                CHECK(count_affine_cone(f, field, lam) == mpz_class(static_cast<unsigned long>(ref)));
            }
        }
    const auto f9 = field_make(3, 2);
    const auto g = FamilyDescriptor::make({1, 1, 1}, 4, {2, 2, 0});
    for (FqElem lam = 0; lam < f9.q; ++lam)
        CHECK(count_affine_cone(g, f9, lam) == mpz_class(static_cast<unsigned long>(oracle::plane_cone_count(g, f9, lam))));
}

TEST_CASE("both enumeration strategies agree") {
    CountOptions full;
    full.strategy = CountStrategy::full_scan;
    for (const auto& f : {hesse, FamilyDescriptor::make({1, 1, 1, 1}, 4, {1, 1, 1, 1}), FamilyDescriptor::make({1, 1, 2}, 4, {1, 1, 1})})
        for (std::uint32_t r : {1u, 2u}) {
            const auto field = field_make(5, r);
            for (FqElem lam : {0u, 1u, 3u}) CHECK(count_affine_cone(f, field, lam) == count_affine_cone(f, field, lam, full));
        }
}

TEST_CASE("open and closed parts fill projective space") {
    const auto field = field_make(7, 1);
    for (FqElem lam = 0; lam < 7; ++lam)
        for (std::uint64_t s : {1u, 2u}) {
            const auto c = count_points(hesse, field, lam, s);
            CHECK(c.ambient == ambient((s == 1 ? 7ul : 49ul), 2));
            CHECK(c.open + c.projective == c.ambient);
            CHECK((c.cone - 1) % ((s == 1 ? 7ul : 49ul) - 1) == 0);
            CHECK(!c.weighted_caveat);
        }
    const auto w = count_points(FamilyDescriptor::make({1, 1, 2}, 4, {1, 1, 1}), field_make(5, 1), 1, 1);
    CHECK(w.weighted_caveat);
}

TEST_CASE("counts do not depend on the number of workers") {
    const auto f = FamilyDescriptor::make({1, 1, 1, 1}, 4, {1, 1, 1, 1});
    const auto field = field_make(5, 1);
    CountOptions one, four;
    four.jobs = 4;
    for (std::uint64_t s : {1u, 2u}) CHECK(count_points(f, field, 2, s, one).cone == count_points(f, field, 2, s, four).cone);
}

TEST_CASE("evaluation cap") {
    CountOptions tiny;
    tiny.max_evaluations = 10;
    CHECK_THROWS(count_points(hesse, field_make(7, 1), 3, 1, tiny));
}

TEST_CASE("zeta from counts") {
    // elliptic curve: one count fixes a
    const auto f7 = field_make(7, 1);
    const auto c = count_points(hesse, f7, 3, 1);
    const auto z = zeta_from_counts({c.projective}, 2, 7, 2);
    REQUIRE(z.determined);
    CHECK(z.numerator[0] == 1);
    CHECK(z.numerator[1] == c.projective - 8);
    CHECK(z.numerator[2] == 7);

    // genus 3: three counts fix the degree-6 numerator, and a fourth is predicted
    const auto g = FamilyDescriptor::make({1, 1, 1}, 4, {2, 2, 0});
    const auto f5 = field_make(5, 1);
    std::vector<mpz_class> counts;
    for (std::uint64_t s = 1; s <= 4; ++s) counts.push_back(count_points(g, f5, 1, s).projective);
    const auto z3 = zeta_from_counts({counts[0], counts[1], counts[2]}, 2, 5, 6);
    REQUIRE(z3.determined);
    CHECK(z3.numerator[6] == 125);
    CHECK(zeta_from_counts(counts, 2, 5, 6).determined);

    auto bad = counts;
    bad[3] += 5;
    const auto zb = zeta_from_counts(bad, 2, 5, 6);
    CHECK(!zb.determined);
    CHECK(!zb.residuals.empty());
    CHECK(!zeta_from_counts({counts[0]}, 2, 5, 6).determined);
}

TEST_CASE("count cache round trip") {
    const auto dir = std::filesystem::temp_directory_path() / "fermatzeta_cache_test";
    std::filesystem::remove_all(dir);
    const auto field = field_make(7, 1);
    {
        CountCache cache(dir);
        CHECK(!cache.get(hesse, 7, 3, 1));
        const auto c = cached_count(&cache, hesse, field, 3, 2);
        CHECK(cache.get(hesse, 7, 3, 2));
        CHECK(c.projective == count_points(hesse, field, 3, 2).projective);
    }
    CountCache reopened(dir);
    const auto hit = reopened.get(hesse, 7, 3, 2);
    REQUIRE(hit);
    CHECK(count_to_json(*hit).dump() == count_to_json(count_points(hesse, field, 3, 2)).dump());
    CHECK(!reopened.get(hesse, 7, 4, 2));
    std::filesystem::remove_all(dir);
}
