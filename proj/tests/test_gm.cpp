#include "doctest.h"
#include "gmq/gm.hpp"

using namespace gmq;

TEST_CASE("random GM data is valid for every admissible pair") {
    const PrimeField f(101);
    for (int n = 2; n <= 6; ++n)
        for (GMType t : {GMType::Ordinary, GMType::Special}) {
            const bool ok = t == GMType::Ordinary ? n <= 5 : n >= 3;
            if (!ok) {
                CHECK_THROWS_AS(random_gm(n, t, f, 1), GMError);
                continue;
            }
            for (std::uint64_t s = 0; s < 3; ++s) {
                const GMVariety<Fp> x = random_gm(n, t, f, s);
                CHECK_FALSE(gm_violation(x).has_value());
                CHECK(x.w.dim() == n + 5);
                CHECK(x.w0perp.cols() == 5 - x.n0());
            }
        }
    const RationalField qq;
    CHECK_FALSE(gm_violation(random_gm(4, GMType::Special, qq, 2)).has_value());
}

TEST_CASE("special and ordinary parts") {
    const PrimeField f(101);
    const GMVariety<Fp> x0 = random_gm(4, GMType::Ordinary, f, 5);
    const GMVariety<Fp> x = make_special(x0, f(3));
    CHECK(x.n == 5);
    CHECK_FALSE(gm_violation(x).has_value());
    const GMVariety<Fp> back = ordinary_part(x);
    CHECK(back.w == x0.w);
    CHECK(back.q == x0.q);
    CHECK_THROWS_AS(make_special(x0, f(0)), GMError);
    CHECK_THROWS_AS(make_special(x, f(1)), GMError);
}

TEST_CASE("validator names violated invariants") {
    const PrimeField f(101);
    GMVariety<Fp> x = random_gm(3, GMType::Ordinary, f, 1);
    // e0 ^ e1 ^ e2 gives a 2-form of rank 2.
    Mat<Fp> bad = x.w0perp;
    bad.col(0).setConstant(f(0));
    bad(exterior(5).index(0b00111u), 0) = f(1);
    GMVariety<Fp> y = ordinary_from(bad, x.q, f(1));
    const auto v = gm_violation(y);
    REQUIRE(v.has_value());
    CHECK(v->find("rank 2") != std::string::npos);

    GMVariety<Fp> s = random_gm(4, GMType::Special, f, 2);
    s.q(0, 0) = f(0);
    REQUIRE(gm_violation(s).has_value());
    CHECK(gm_violation(s)->find("vertex") != std::string::npos);

    x.q = Mat<Fp>(x.q.topLeftCorner(3, 3));
    CHECK(gm_violation(x).has_value());
}

TEST_CASE("GM data from Lagrangian data has dimension 5 - l") {
    const PrimeField f(101);
    const Mat<Fp> id = identity<Fp>(6, f(1));
    const Mat<Fp> v5 = id.leftCols(5);
    const Vec<Fp> v0 = id.col(5);
    for (int ell = 0; ell <= 3; ++ell) {
        const auto pl = lagrangian_with_stratum(f, {StratumTarget::Kind::Dual, ell}, v5, 30 + ell);
        const GMFromLagrangian<Fp> g = gm_from_lagrangian(pl.a.space, v5, v0);
        CHECK(g.ell == ell);
        CHECK(g.x.n == 5 - ell);
        CHECK(g.x.type == GMType::Ordinary);
        CHECK_FALSE(gm_violation(g.x).has_value());
    }
    // A change of V5 basis leaves the dimension alone.
    std::mt19937_64 rng(4);
    const auto pl = lagrangian_with_stratum(f, {StratumTarget::Kind::Dual, 1}, v5, 4);
    const Mat<Fp> mixed = v5 * random_invertible(f, 5, rng);
    Vec<Fp> v0b = v0;
    v0b(2) = f(7);
    CHECK(gm_from_lagrangian(pl.a.space, mixed, v0b).x.n == 4);
    CHECK_THROWS_AS(gm_from_lagrangian(pl.a.space, v5, Vec<Fp>(id.col(0))), GMError);
}

TEST_CASE("fiber spaces have dimension n + 1") {
    const PrimeField f(101);
    std::mt19937_64 rng(77);
    const GMVariety<Fp> x = random_gm(3, GMType::Ordinary, f, 77);
    const Subspace<Fp> v5 = Subspace<Fp>::full(5, f(1));
    for (int t = 0; t < 100; ++t) {
        const Mat<Fp> u4 = random_subspace(f, v5, 4, rng).basis();
        const Subspace<Fp> fw = fiber_w(x, u4);
        CHECK(fw.dim() == 4);
        // Independent: intersect W with k + (second power of U4) directly.
        const Mat<Fp> s2 = second_power_span(u4);
        Mat<Fp> gens = zeros<Fp>(11, s2.cols() + 1, f(1));
        gens(0, 0) = f(1);
        gens.bottomRightCorner(10, s2.cols()) = s2;
        CHECK(intersect(Subspace<Fp>::span(gens), x.w) == fw);
    }
}

TEST_CASE("type names") {
    CHECK(parse_gm_type("special") == GMType::Special);
    CHECK(gm_type_name(GMType::Ordinary) == "ordinary");
    CHECK_THROWS_AS(parse_gm_type("odd"), std::invalid_argument);
}
