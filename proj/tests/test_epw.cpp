#include "doctest.h"
#include "gmq/epw.hpp"
#include "gmq/lagrangian.hpp"

using namespace gmq;

namespace {

std::uint64_t gaussian_oracle(int n, int k, std::uint64_t q) {
    // Count k-frames of F_q^n divided by |GL_k(F_q)|.
    unsigned __int128 frames = 1, gl = 1, qn = 1, qk = 1;
    for (int i = 0; i < n; ++i) qn *= q;
    for (int i = 0; i < k; ++i) qk *= q;
    unsigned __int128 qi = 1;
    for (int i = 0; i < k; ++i, qi *= q) {
        frames *= qn - qi;
        gl *= qk - qi;
    }
    return static_cast<std::uint64_t>(frames / gl);
}

}  // namespace

TEST_CASE("stratum functions on examples") {
    const PrimeField f(101);
    const LagrangianSubspace<Fp> l0 = coordinate_lagrangian(f(1));
    Vec<Fp> e0 = Vec<Fp>::Constant(6, f(0));
    e0(0) = f(1);
    int containing_zero = 0;
    for (int i : coordinate_lagrangian_indices()) containing_zero += (exterior(6).subset(3, i) & 1u) != 0;
    CHECK(y_stratum(l0.space, e0) == containing_zero);

    std::mt19937_64 rng(13);
    const LagrangianSubspace<Fp> a = random_lagrangian(f, 13);
    int hits = 0;
    for (int t = 0; t < 300; ++t) hits += y_stratum(a.space, Vec<Fp>(random_matrix<Fp>(f, 6, 1, rng).col(0))) > 0;
    CHECK(hits < 30);  // a hypersurface holds about 1/p of the points
    int dual_hits = 0, z_hits = 0;
    for (int t = 0; t < 100; ++t) {
        dual_hits += ydual_stratum(a.space, random_matrix<Fp>(f, 6, 5, rng)) > 0;
        z_hits += z_stratum(a.space, random_matrix<Fp>(f, 6, 3, rng)) > 0;
    }
    CHECK(dual_hits < 10);
    CHECK(z_hits < 10);

    const Mat<Fp> id = identity<Fp>(6, f(1));
    CHECK(z_stratum(l0.space, Mat<Fp>(id.leftCols(3))) >= 1);  // e0 ^ e1 ^ e2 lies in L0
    CHECK_THROWS_AS(y_stratum(a.space, Vec<Fp>(Vec<Fp>::Constant(6, f(0)))), DimensionError);
}

TEST_CASE("intersection and contraction paths agree") {
    const PrimeField f(31);
    std::mt19937_64 rng(7);
    for (int ell = 0; ell <= 3; ++ell) {
        const auto pl = lagrangian_with_stratum(f, {StratumTarget::Kind::Dual, ell}, 50 + ell);
        const Vec<Fp> phi = kernel(Mat<Fp>(pl.locus.transpose())).vector(0);
        CHECK(ydual_stratum_by_contraction(pl.a.space, phi) == ell);
        for (int t = 0; t < 40; ++t) {
            Vec<Fp> psi;
            do psi = random_matrix<Fp>(f, 6, 1, rng).col(0);
            while (all_zero(psi));
            CHECK(ydual_stratum(pl.a.space, hyperplane_of(psi)) == ydual_stratum_by_contraction(pl.a.space, psi));
        }
    }
}

TEST_CASE("F3 censuses: totals, emptiness, witnesses") {
    const PrimeField f3(3);
    const LagrangianSubspace<Fp> a = random_valid_lagrangian(f3, 11);
    std::vector<Mat<Fp>> wit;
    const StratumCensus yd = scan_strata(a.space, Locus::Ydual, {1, 1, 50}, &wit);
    CHECK(yd.total == 364);
    CHECK(yd.total == (729 - 1) / 2);
    CHECK(yd.at_least(4) == 0);
    CHECK(yd.invariants_hold());
    for (const Mat<Fp>& w : wit) {
        const Vec<Fp> phi = w.row(0).transpose();
        CHECK(ydual_stratum(a.space, hyperplane_of(phi)) >= 1);
    }
    const StratumCensus y = scan_strata(a.space, Locus::Y);
    CHECK(y.total == 364);
    CHECK(y.at_least(4) == 0);
    const StratumCensus z = scan_strata(a.space, Locus::Z);
    CHECK(z.total == 33880);
    CHECK(z.total == gaussian_oracle(6, 3, 3));
    CHECK(z.at_least(5) == 0);
    CHECK(z.invariants_hold());
    // Worker count must not change anything.
    const StratumCensus y1 = scan_strata(a.space, Locus::Y, {1}), y3 = scan_strata(a.space, Locus::Y, {3});
    CHECK(y1.counts == y3.counts);
    CHECK(y1.to_json() == y3.to_json());
}

TEST_CASE("census buckets a planted point") {
    const PrimeField f3(3);
    for (std::uint64_t s = 0; s < 20; ++s) {
        const auto pl = lagrangian_with_stratum(f3, {StratumTarget::Kind::Dual, 2}, s);
        const StratumCensus c = scan_strata(pl.a.space, Locus::Ydual);
        CHECK(c.at_least(2) >= 1);
    }
}

TEST_CASE("projective and Grassmannian point counts") {
    CHECK(projective_points(6, 3) == 364);
    CHECK(projective_points(6, 5) == 3906);
    for (int n = 2; n <= 6; ++n)
        for (int k = 0; k <= n; ++k) CHECK(gaussian_binomial(n, k, 5) == gaussian_oracle(n, k, 5));
}

TEST_CASE("sextic on lines over F101") {
    const PrimeField f(101);
    const LagrangianSubspace<Fp> a = random_lagrangian(f, 21);
    std::mt19937_64 rng(21);
    for (int t = 0; t < 5; ++t) {
        const Vec<Fp> p0 = random_matrix<Fp>(f, 6, 1, rng).col(0), p1 = random_matrix<Fp>(f, 6, 1, rng).col(0);
        const SexticReport r = sextic_on_line(f, a.space, p0, p1);
        CHECK(r.degree == 6);
        CHECK(r.squarefree);
        CHECK(r.roots_verified);
        // The determinant, evaluated entrywise at 8 values of t, matches.
        const PolyMat<Fp> m = sextic_matrix(a.space, p0, p1);
        Fp ratio = f(0);
        for (int s = 0; s < 8; ++s) {
            const Fp tv = f(3 * s + 1);
            Mat<Fp> ev(10, 10);
            for (int i = 0; i < 10; ++i)
                for (int j = 0; j < 10; ++j) ev(i, j) = m(i, j)(tv);
            const Fp d = determinant(ev);
            const Fp rd = r.det(tv);
            CHECK(is_zero(d) == is_zero(rd));
            if (!is_zero(rd)) {
                if (is_zero(ratio)) ratio = d * inverse(rd);
                CHECK(d == ratio * rd);
            }
        }
        for (std::size_t i = 0; i < r.roots.size(); ++i) CHECK(r.root_strata[i] >= 1);
    }
    const auto pl = lagrangian_with_stratum(f, {StratumTarget::Kind::Dual, 2}, 4);
    const Vec<Fp> phi0 = kernel(Mat<Fp>(pl.locus.transpose())).vector(0);
    const SexticReport r = sextic_on_line(f, pl.a.space, phi0, Vec<Fp>(random_matrix<Fp>(f, 6, 1, rng).col(0)));
    CHECK(root_multiplicity(r.det, f(0)) >= 2);
}

TEST_CASE("double cover local model") {
    const PrimeField f(5);
    std::mt19937_64 rng(3);
    for (int t = 0; t < 20; ++t) {
        const Vec<Fp> a = random_matrix<Fp>(f, 3, 1, rng).col(0), b = random_matrix<Fp>(f, 3, 1, rng).col(0);
        Mat<Fp> ab(3, 2);
        ab << a, b;
        if (rank(ab) < 2) continue;
        const Mat<Fp> mu = a * b.transpose();
        const Mat<Fp> s = determinantal_cover_model(mu);
        CHECK(rank(s) == 2);
        CHECK(is_zero(determinant(s)));
        const auto fib = cover_fiber(s, 5);
        REQUIRE(fib.size() == 2);
        CHECK(((fib[0] == mu && fib[1] == Mat<Fp>(mu.transpose())) || (fib[1] == mu && fib[0] == Mat<Fp>(mu.transpose()))));
        if (all_zero(a)) continue;
        const Mat<Fp> sym = a * a.transpose();
        CHECK(determinantal_cover_model(sym) == Mat<Fp>(f(2) * sym));
        CHECK(cover_fiber(Mat<Fp>(f(2) * sym), 5).size() == 1);
    }
}

TEST_CASE("double cover census against a brute-force oracle") {
    for (std::uint32_t p : {3u, 5u}) {
        const PrimeField f(p);
        const CoverCensus c = cover_census(p);
        CHECK(c.consistent());
        std::uint64_t singular = 0, anisotropic_rank2 = 0;
        Mat<Fp> s(3, 3);
        const int total = static_cast<int>(p * p * p * p * p * p);
        for (int code = 0; code < total; ++code) {
            int x = code;
            int e[6];
            for (int& v : e) v = x % static_cast<int>(p), x /= static_cast<int>(p);
            s << f(e[0]), f(e[1]), f(e[2]), f(e[1]), f(e[3]), f(e[4]), f(e[2]), f(e[4]), f(e[5]);
            if (!is_zero(determinant(s))) continue;
            ++singular;
            if (rank(s) != 2) continue;
            bool isotropic = false;
            const Subspace<Fp> rad = kernel(s);
            Vec<Fp> v(3);
            for (int w = 1; w < static_cast<int>(p * p * p) && !isotropic; ++w) {
                v << f(w % p), f(w / p % p), f(w / (p * p));
                Mat<Fp> aug(3, 2);
                aug << rad.basis(), v;
                if (rank(aug) < 2) continue;
                isotropic = is_zero(v.dot(s * v));
            }
            anisotropic_rank2 += !isotropic;
        }
        CHECK(c.singular_symmetric == singular);
        CHECK(c.nonsplit_rank2 == anisotropic_rank2);
        CHECK(c.image == singular - anisotropic_rank2);
    }
}

TEST_CASE("Plücker point profile") {
    const PrimeField f(101);
    for (int ell = 0; ell <= 3; ++ell) {
        const auto pl = lagrangian_with_stratum(f, {StratumTarget::Kind::Dual, ell}, 9);
        const PluckerProfile p = plucker_point_profile(pl.a.space, pl.locus);
        CHECK(p.ell == ell);
        CHECK(p.ordinary_dim == 5 - ell);
        CHECK(p.special_dim == 6 - ell);
    }
}

TEST_CASE("locus names") {
    CHECK(parse_locus("Ydual") == Locus::Ydual);
    CHECK(locus_name(parse_locus("Z")) == "Z");
    CHECK_THROWS_AS(parse_locus("W"), std::invalid_argument);
}
