#include <doctest.h>

#include <random>

#include "fermatzeta/error.hpp"
#include "fermatzeta/padic.hpp"
#include "oracles.hpp"

using namespace fermatzeta;

namespace {

using IPoly = oracle::IntPoly;

mpz_class powmod_int(mpz_class b, unsigned e, const mpz_class& m) {
    mpz_class r;
    mpz_powm_ui(r.get_mpz_t(), b.get_mpz_t(), e, m.get_mpz_t());
    return r;
}

}  // namespace

TEST_CASE("teichmueller lift in Z_7 at precision 3") {
    const auto F = field_make(7, 1);
    const auto R = ZqRing::make(F, 3);
    mpz_class t = 3, m = 343;
    for (int i = 0; i < 10; ++i) t = powmod_int(t, 7, m);
    CHECK(teichmueller(R, F, 3).coefficients()[0] == t);
    CHECK(powmod_int(t, 6, m) == 1);
    CHECK(teichmueller(R, F, 1) == R->one());
    CHECK(teichmueller(R, F, 0).is_zero());
}

TEST_CASE("teichmueller lifts are fixed by q-th power and multiplicative") {
    for (auto [p, r] : {std::pair{5u, 1u}, {7u, 1u}, {5u, 2u}, {3u, 2u}, {2u, 3u}}) {
        const auto F = field_make(p, r);
        const auto R = ZqRing::make(F, 6);
        std::vector<ZqElement> T;
        for (FqElem x = 0; x < F.q; ++x) T.push_back(teichmueller(R, F, x));
        for (FqElem x = 0; x < F.q; ++x) {
            CHECK(T[x].pow(std::uint64_t(F.q)) == T[x]);
            const auto res = T[x].to_ring(R->with_precision(1));
            std::vector<mpz_class> c;
            for (auto v : F.coordinates(x)) c.emplace_back(v);
            CHECK(res.coefficients() == c);
            for (FqElem y = 0; y < F.q; ++y) CHECK(T[x] * T[y] == T[F.mul(x, y)]);
        }
    }
}

TEST_CASE("embed_rational") {
    const auto F = field_make(7, 1);
    const auto R2 = ZqRing::make(F, 2);
    CHECK(embed_rational(R2, 5, 1) == R2->from_int(5));
    CHECK(embed_rational(R2, 1, 3).coefficients()[0] == 33);
    CHECK((embed_rational(R2, 1, 3) * R2->from_int(3)) == R2->one());
    try {
        embed_rational(R2, 1, 14);
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.name() == "DenominatorNotInvertible");
    }
    // scaled embedding: 7^2 * (1/7) = 7
    const auto R4 = ZqRing::make(F, 4);
    CHECK(embed_rational_scaled(R4, mpq_class(1, 7), 2) == R4->from_int(7));
    CHECK_THROWS_AS(embed_rational_scaled(R4, mpq_class(1, 49), 1), Error);
}

TEST_CASE("arithmetic, inverse and valuation in an extension ring") {
    const auto F = field_make(5, 2);
    const auto R = ZqRing::make(F, 8);
    std::mt19937 rng(17);
    std::uniform_int_distribution<unsigned long> dist(0, 390624);
    for (int trial = 0; trial < 50; ++trial) {
        const ZqElement a = R->from_coefficients({mpz_class(dist(rng)), mpz_class(dist(rng))});
        const ZqElement b = R->from_coefficients({mpz_class(dist(rng)), mpz_class(dist(rng))});
        const ZqElement c = R->from_coefficients({mpz_class(dist(rng)), mpz_class(dist(rng))});
        CHECK(a * (b + c) == a * b + a * c);
        CHECK((a - b) + b == a);
        if (a.is_unit()) CHECK(a * a.inverse() == R->one());
        const unsigned va = a.valuation(), vb = b.valuation();
        if (va + vb < R->precision()) CHECK((a * b).valuation() == va + vb);
        const ZqElement pa = a.scale(25);
        if (va + 2 < R->precision()) {
            CHECK(pa.valuation() == va + 2);
            CHECK(pa.divide(R->from_int(25)).to_ring(R->with_precision(6)) == a.to_ring(R->with_precision(6)));
        }
    }
}

TEST_CASE("Berkowitz char poly on small cases") {
    const auto F = field_make(7, 1);
    const auto R = ZqRing::make(F, 5);
    auto I = ZqMatrix::identity(R, 2);
    auto cp = char_poly(I);
    REQUIRE(cp.size() == 3);
    CHECK(cp[0] == R->one());
    CHECK(cp[1] == R->from_int(-2));
    CHECK(cp[2] == R->one());
    ZqMatrix D(R, 2);
    D.at(0, 0) = R->from_int(3);
    D.at(1, 1) = R->from_int(10);
    cp = char_poly(D);
    CHECK(cp[0] == R->from_int(30));
    CHECK(cp[1] == R->from_int(-13));
}

TEST_CASE("Berkowitz agrees with cofactor expansion on random integer matrices") {
    const auto F = field_make(11, 1);
    const auto R = ZqRing::make(F, 30);
    std::mt19937 rng(2024);
    std::uniform_int_distribution<int> entry(-9, 9);
    std::uniform_int_distribution<int> size(1, 5);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = size(rng);
        std::vector<std::vector<int>> M(n, std::vector<int>(n));
        for (auto& row : M)
            for (auto& x : row) x = entry(rng);
        std::vector<std::vector<IPoly>> tI(n, std::vector<IPoly>(n));
        ZqMatrix Z(R, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                tI[i][j] = i == j ? IPoly{-M[i][j], 1} : IPoly{-M[i][j]};
                Z.at(i, j) = R->from_int(M[i][j]);
            }
        const IPoly expected = oracle::det_by_cofactors(tI);
        const auto cp = char_poly(Z);
        REQUIRE(cp.size() == std::size_t(n + 1));
        for (int i = 0; i <= n; ++i) CHECK(cp[i] == R->from_int(expected[i]));
    }
}

TEST_CASE("matrix inverse") {
    const auto F = field_make(5, 1);
    const auto R = ZqRing::make(F, 10);
    CHECK(mat_inverse(ZqMatrix::identity(R, 3)) == ZqMatrix::identity(R, 3));
    ZqMatrix D(R, 2);
    D.at(0, 0) = R->from_int(3);
    D.at(1, 1) = R->from_int(7);
    const auto Di = mat_inverse(D);
    CHECK(Di.at(0, 0) == R->from_int(3).inverse());
    CHECK(Di.at(1, 1) == R->from_int(7).inverse());
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> entry(-20, 20);
    int tested = 0;
    while (tested < 20) {
        ZqMatrix M(R, 4);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) M.at(i, j) = R->from_int(entry(rng));
        if (!char_poly(M)[0].is_unit()) continue;
        CHECK(M * mat_inverse(M) == ZqMatrix::identity(R, 4));
        ++tested;
    }
    ZqMatrix S(R, 2);
    S.at(0, 0) = R->from_int(5);
    S.at(1, 1) = R->one();
    try {
        mat_inverse(S);
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.name() == "NonUnitDeterminant");
    }
}

TEST_CASE("round_to_integer") {
    const auto F = field_make(7, 1);
    const auto R = ZqRing::make(F, 6);
    CHECK(round_to_integer(R->from_int(R->p_power() - 1), 1) == -1);
    CHECK(round_to_integer(R->zero(), 5) == 0);
    CHECK(round_to_integer(embed_rational(R, 42, 1), 100) == 42);
    CHECK(round_to_integer(embed_rational(R, -300, 1), 1000) == -300);
    CHECK_THROWS_AS(round_to_integer(R->from_int(500), 100), Error);
    CHECK_THROWS_AS(round_to_integer(R->from_int(1), R->p_power()), Error);
    const auto F2 = field_make(7, 2);
    const auto R2 = ZqRing::make(F2, 4);
    CHECK_THROWS_AS(round_to_integer(R2->from_coefficients({1, 1}), 10), Error);
}

TEST_CASE("mixed rings are rejected") {
    const auto F = field_make(7, 1);
    const auto R3 = ZqRing::make(F, 3), R4 = ZqRing::make(F, 4);
    CHECK_THROWS_AS(R3->one() + R4->one(), Error);
    CHECK_NOTHROW(R3->one() + R3->with_precision(3)->one());
}
