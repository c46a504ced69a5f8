#include <doctest.h>

#include "fermatzeta/error.hpp"
#include "fermatzeta/reduction.hpp"
#include "oracles.hpp"

using namespace fermatzeta;

namespace {

const FamilyDescriptor hesse = FamilyDescriptor::make({1, 1, 1}, 3, {1, 1, 1});

}  // namespace

TEST_CASE("single reduction steps") {
    const auto s = reduce_step(hesse, PoleForm{{4, 1, 1}, 3}, 0);
    CHECK(s.multiplier == mpq_class(1, 3));
    CHECK(s.form.b == std::vector<std::uint64_t>{1, 1, 1});
    CHECK(s.form.t == 2);
    const auto q = FamilyDescriptor::make({1, 1, 1, 1, 1}, 5, {1, 1, 1, 1, 1});
    const auto s2 = reduce_step(q, PoleForm{{5, 0, 0, 0, 0}, 2}, 0);
    CHECK(s2.multiplier == mpq_class(1, 5));
    CHECK_THROWS_AS(reduce_step(hesse, PoleForm{{2, 2, 2}, 3}, 0), Error);
}

TEST_CASE("complete reduction closed form") {
    const auto same = complete_reduction(hesse, PoleForm{{1, 1, 1}, 2});
    CHECK(same.rho == 1);
    CHECK(same.s == 2);
    const auto r = complete_reduction(hesse, PoleForm{{3, 3, 3}, 4});
    CHECK(r.rho == mpq_class(1, 162));
    CHECK(r.c == std::vector<std::uint32_t>{0, 0, 0});
    CHECK(r.s == 1);
    CHECK(complete_reduction(hesse, PoleForm{{2, 2, 2}, 3}).zero);
    CHECK_THROWS_AS(complete_reduction(hesse, PoleForm{{1, 1, 1}, 3}), Error);
}

TEST_CASE("complete reduction equals iterated steps in every order") {
    std::size_t forms = 0;
    for (const auto& f : {hesse, FamilyDescriptor::make({1, 1, 1}, 4, {2, 2, 0}),
                          FamilyDescriptor::make({1, 1, 2}, 4, {1, 1, 1}), FamilyDescriptor::make({1, 1, 1, 1}, 4, {1, 1, 1, 1}),
                          FamilyDescriptor::make({1, 2, 3}, 6, {1, 1, 1}), FamilyDescriptor::make({1, 1, 1}, 2, {1, 1, 0})}) {
        const std::size_t n = f.num_vars();
        std::vector<std::uint64_t> b(n, 0);
        while (true) {
            std::uint64_t total = 0, hw = 0;
            for (std::size_t i = 0; i < n; ++i) {
                total += b[i];
                hw += f.weights[i] * (b[i] + 1);
            }
            if (total <= 12 && hw % f.degree == 0) {
                const std::uint64_t t = hw / f.degree;
                const auto all = oracle::reductions_all_orders(f, b, t);
                REQUIRE(all.size() == 1);
                const auto cr = complete_reduction(f, PoleForm{b, t});
                CHECK(cr.rho == all[0].rho);
                if (!cr.zero) {
                    CHECK(cr.s == all[0].s);
                    for (std::size_t i = 0; i < n; ++i) CHECK(cr.c[i] == all[0].c[i]);
                }
                ++forms;
            }
            std::size_t i = n;
            while (i-- > 0) {
                if (b[i] < 12) {
                    ++b[i];
                    break;
                }
                b[i] = 0;
            }
            if (i == std::size_t(-1)) break;
        }
    }
    CHECK(forms > 1000);
}

TEST_CASE("quasi-smoothness criterion") {
    const auto D = discriminant(hesse, 0);
    CHECK(D.order == 3);
    CHECK(D.value == -27);
    CHECK(quasi_smooth(hesse, mpq_class(0)));
    CHECK_FALSE(quasi_smooth(hesse, mpq_class(-3)));
    const auto F7 = field_make(7, 1);
    CHECK_FALSE(quasi_smooth(hesse, F7, 1));
    CHECK(quasi_smooth(hesse, F7, 3));
    CHECK(quasi_smooth(hesse, F7, 0));
}

TEST_CASE("quasi-smoothness agrees with a singular point search") {
    struct Case {
        FamilyDescriptor f;
        std::uint32_t p, r;
    };
    for (const auto& c : {Case{hesse, 7, 1}, Case{FamilyDescriptor::make({1, 1, 1}, 4, {2, 2, 0}), 5, 1},
                          Case{FamilyDescriptor::make({1, 1, 1}, 4, {1, 1, 2}), 5, 1},
                          Case{FamilyDescriptor::make({1, 1, 1}, 4, {2, 1, 1}), 3, 2}, Case{hesse, 2, 2}}) {
        const auto F = field_make(c.p, c.r);
        const auto F2 = field_make(c.p, 2 * c.r);
        const auto emb = field_embedding(F, F2);
        for (FqElem l = 0; l < F.q; ++l) {
            const bool qs = quasi_smooth(c.f, F, l);
            CHECK(qs == !oracle::has_singular_point(c.f, F2, emb[l]));
        }
    }
}
