#include "doctest.h"
#include "gmq/epw.hpp"
#include "gmq/exterior.hpp"
#include "gmq/gm.hpp"

using namespace gmq;

namespace {

// Coordinates of u1 ^ ... ^ uk are the k x k minors of [u1 .. uk].
template <class S>
Vec<S> minors_oracle(const Mat<S>& u) {
    const int d = static_cast<int>(u.rows()), k = static_cast<int>(u.cols());
    const ExteriorContext& ctx = exterior(d);
    Vec<S> out(ctx.size(k));
    for (int i = 0; i < ctx.size(k); ++i) {
        const std::vector<int> rows = ctx.elements(k, i);
        Mat<S> m(k, k);
        for (int r = 0; r < k; ++r)
            for (int c = 0; c < k; ++c) m(r, c) = u(rows[r], c);
        out(i) = determinant(m);
    }
    return out;
}

}  // namespace

TEST_CASE("wedge examples") {
    const PrimeField f(101);
    const Fp one = f(1);
    const auto e01 = basis_multivector(6, {0, 1}, one), e23 = basis_multivector(6, {2, 3}, one);
    const auto w = wedge(e01, e23);
    CHECK(w.coords == basis_multivector(6, {0, 1, 2, 3}, one).coords);
    const auto a = wedge(basis_multivector(6, {0}, one), e23);
    CHECK(all_zero(wedge(a, a).coords));
    MultiVector<Fp> s = basis_multivector(5, {0, 1}, one);
    s.coords += basis_multivector(5, {2, 3}, one).coords;
    const auto ss = wedge(s, s);
    CHECK(ss.coords == Vec<Fp>(f(2) * basis_multivector(5, {0, 1, 2, 3}, one).coords));
}

TEST_CASE("wedge of vectors matches the minors oracle") {
    const PrimeField f(101);
    std::mt19937_64 rng(17);
    for (int k = 1; k <= 4; ++k)
        for (int t = 0; t < 20; ++t) {
            const Mat<Fp> u = random_matrix<Fp>(f, 6, k, rng);
            std::vector<Vec<Fp>> vs;
            for (int j = 0; j < k; ++j) vs.push_back(u.col(j));
            CHECK(wedge_vectors(vs).coords == minors_oracle(u));
        }
}

TEST_CASE("graded commutativity and associativity") {
    const PrimeField f(31);
    std::mt19937_64 rng(6);
    auto rand_mv = [&](int k) {
        return MultiVector<Fp>{6, k, random_matrix<Fp>(f, exterior(6).size(k), 1, rng).col(0)};
    };
    for (int t = 0; t < 20; ++t) {
        const auto a = rand_mv(1), b = rand_mv(2), c = rand_mv(2);
        CHECK(wedge(a, b).coords == wedge(b, a).coords);
        CHECK(wedge(wedge(a, b), c).coords == wedge(a, wedge(b, c)).coords);
        const auto x = rand_mv(1), y = rand_mv(3);
        CHECK(wedge(x, y).coords == Vec<Fp>(-wedge(y, x).coords));
    }
}

TEST_CASE("symplectic pairing") {
    const PrimeField f(101);
    const Fp one = f(1);
    CHECK(symplectic_pairing(basis_multivector(6, {0, 1, 2}, one), basis_multivector(6, {3, 4, 5}, one)) == one);
    std::mt19937_64 rng(1);
    for (int t = 0; t < 20; ++t) {
        const MultiVector<Fp> a{6, 3, random_matrix<Fp>(f, 20, 1, rng).col(0)};
        CHECK(symplectic_pairing(a, a) == f(0));
    }
    const Mat<Fp> g = symplectic_gram(one);
    CHECK(rank(g) == 20);
    CHECK(is_skew(g));
}

TEST_CASE("decomposability") {
    const PrimeField f(101);
    const Fp one = f(1);
    CHECK(is_decomposable(basis_multivector(6, {0, 1, 2}, one)));
    MultiVector<Fp> s = basis_multivector(6, {0, 1, 2}, one);
    s.coords += basis_multivector(6, {3, 4, 5}, one).coords;
    CHECK_FALSE(is_decomposable(s));
    std::mt19937_64 rng(12);
    for (int t = 0; t < 30; ++t) {
        const Mat<Fp> u = random_matrix<Fp>(f, 6, 3, rng);
        if (rank(u) < 3) continue;
        CHECK(is_decomposable(Vec<Fp>(minors_oracle(u))));
    }
}

TEST_CASE("Gr(2,5)(F3) has 1210 points: brute force over all 2-vectors") {
    const PrimeField f(3);
    std::vector<Mat<Fp>> grams;
    for (int i = 0; i < 5; ++i) {
        Vec<Fp> v = Vec<Fp>::Constant(5, f(0));
        v(i) = f(1);
        grams.push_back(plucker_gram(v));
    }
    std::uint64_t zeros_count = 0;
    Vec<Fp> x(10);
    for (int code = 1; code < 59049; ++code) {
        int c = code;
        for (int i = 0; i < 10; ++i, c /= 3) x(i) = f(c % 3);
        bool all = true;
        for (const Mat<Fp>& g : grams) all = all && is_zero(x.dot(g * x));
        zeros_count += all;
    }
    CHECK(zeros_count / 2 == 1210);
    CHECK(zeros_count / 2 == gaussian_binomial(5, 2, 3));
}

TEST_CASE("Plücker quadrics are Pfaffians of complementary 4x4 blocks") {
    const PrimeField f(101);
    std::mt19937_64 rng(21);
    const ExteriorContext& c5 = exterior(5);
    for (int t = 0; t < 50; ++t) {
        const Vec<Fp> x = random_matrix<Fp>(f, 10, 1, rng).col(0);
        Mat<Fp> w = zeros<Fp>(5, 5, f(1));
        for (int a = 0; a < 5; ++a)
            for (int b = a + 1; b < 5; ++b) {
                w(a, b) = x(c5.index((1u << a) | (1u << b)));
                w(b, a) = -w(a, b);
            }
        // x ^ x = 2 sum Pf(X_K) e_K, so q_{e_i}(x) = +/- Pf of X off row and column i.
        for (int i = 0; i < 5; ++i) {
            Vec<Fp> v = Vec<Fp>::Constant(5, f(0));
            v(i) = f(1);
            std::vector<int> keep;
            for (int j = 0; j < 5; ++j)
                if (j != i) keep.push_back(j);
            Mat<Fp> m(4, 4);
            for (int a = 0; a < 4; ++a)
                for (int b = 0; b < 4; ++b) m(a, b) = w(keep[a], keep[b]);
            const Fp q = x.dot(plucker_gram(v) * x);
            const Fp pf = pfaffian4(m);
            CHECK((q == pf || q == -pf));
        }
    }
}

TEST_CASE("kappa examples") {
    const PrimeField f(101);
    Mat<Fp> w = zeros<Fp>(5, 5, f(1));
    w(0, 1) = f(1), w(1, 0) = f(-1), w(2, 3) = f(1), w(3, 2) = f(-1);
    const Vec<Fp> k = kappa(w);
    for (int i = 0; i < 4; ++i) CHECK(k(i) == f(0));
    CHECK(k(4) != f(0));
    Mat<Fp> w2 = zeros<Fp>(5, 5, f(1));
    w2(0, 1) = f(1), w2(1, 0) = f(-1);
    CHECK_THROWS_AS(kappa(w2), DimensionError);
}

TEST_CASE("kappa-tilde ranks on valid GM data") {
    const PrimeField f(101);
    std::mt19937_64 rng(99);
    for (int t = 0; t < 10; ++t) {
        for (int m = 1; m <= 3; ++m) {
            const Mat<Fp> w0p = random_w0perp(f, m, rng);
            std::vector<Mat<Fp>> forms;
            for (int j = 0; j < m; ++j) forms.push_back(skew_form_of(Vec<Fp>(w0p.col(j))));
            const Mat<Fp> kt = kappa_tilde(forms);
            const int cols = m * (m + 1) / 2;
            CHECK(kt.cols() == cols);
            if (m < 3) CHECK(rank(kt) == cols);  // injective for n0 = 4, 3
            else {
                CHECK(rank(kt) == 5);
                const Subspace<Fp> ker = kernel(kt);
                REQUIRE(ker.dim() == 1);
                CHECK(rank(symmetric_tensor_matrix(ker.vector(0), 3)) == 3);
            }
        }
    }
}
