#include "doctest.h"
#include "gmq/linalg.hpp"
#include "gmq/poly.hpp"

#include <algorithm>
#include <numeric>

using namespace gmq;

namespace {

// Leibniz expansion: independent of the elimination code.
template <class S>
S leibniz(const Mat<S>& m) {
    const int n = static_cast<int>(m.rows());
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    S total = like(sample_of(m), 0);
    do {
        int inversions = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) inversions += perm[i] > perm[j];
        S term = like(sample_of(m), inversions % 2 ? -1 : 1);
        for (int i = 0; i < n; ++i) term = term * m(i, perm[i]);
        total = total + term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

}  // namespace

TEST_CASE("field arithmetic") {
    const PrimeField f(101);
    std::mt19937_64 rng(5);
    for (int i = 0; i < 200; ++i) {
        const Fp a = f.random(rng), b = f.random(rng), c = f.random_nonzero(rng);
        CHECK((a + b) * c == a * c + b * c);
        CHECK(c * inverse(c) == f(1));
        CHECK(a - a == f(0));
    }
    CHECK_THROWS_AS(PrimeField(100), FieldError);
    CHECK_THROWS_AS(f(0).inverse(), FieldError);
    CHECK(f(-1) == f(100));
    CHECK(to_string(f(-1)) == "100");
    CHECK(to_string(Q(3, 4)) == "3/4");
    CHECK(is_prime(101));
    CHECK_FALSE(is_prime(1));
}

TEST_CASE("rank examples") {
    const PrimeField f(101);
    CHECK(rank(identity<Fp>(3, f(1))) == 3);
    CHECK(rank(zeros<Fp>(4, 7, f(1))) == 0);
    std::mt19937_64 rng(11);
    const Mat<Fp> a = random_matrix<Fp>(f, 10, 8, rng), b = random_matrix<Fp>(f, 8, 10, rng);
    const Mat<Fp> m = a * b;
    const int r = rank(m);
    CHECK(r <= 8);
    // Equality via an explicit nonzero 8x8 minor.
    bool found = false;
    for (int drop_r = 0; drop_r < 10 && !found; ++drop_r)
        for (int drop_c = 0; drop_c < 10 && !found; ++drop_c) {
            std::vector<int> rows, cols;
            for (int i = 0; i < 10; ++i) {
                if (i != drop_r && i != (drop_r + 1) % 10) rows.push_back(i);
                if (i != drop_c && i != (drop_c + 1) % 10) cols.push_back(i);
            }
            Mat<Fp> minor(8, 8);
            for (int i = 0; i < 8; ++i)
                for (int j = 0; j < 8; ++j) minor(i, j) = m(rows[i], cols[j]);
            found = !is_zero(leibniz(minor));
        }
    CHECK(found);
    CHECK(r == 8);
}

TEST_CASE("determinant agrees with Leibniz over F_p and Q") {
    const PrimeField f(7);
    std::mt19937_64 rng(3);
    for (int t = 0; t < 50; ++t) {
        const Mat<Fp> m = random_matrix<Fp>(f, 5, 5, rng);
        CHECK(determinant(m) == leibniz(m));
        CHECK((rank(m) == 5) == !is_zero(determinant(m)));
    }
    const RationalField qq;
    for (int t = 0; t < 10; ++t) {
        const Mat<Q> m = random_matrix<Q>(qq, 4, 4, rng);
        CHECK(determinant(m) == leibniz(m));
    }
}

TEST_CASE("kernel and rank-nullity") {
    const PrimeField f(101);
    CHECK(kernel(identity<Fp>(4, f(1))).dim() == 0);
    CHECK(kernel(zeros<Fp>(3, 5, f(1))).dim() == 5);
    std::mt19937_64 rng(9);
    for (int t = 0; t < 40; ++t) {
        const int r = 1 + static_cast<int>(rng() % 6), c = 1 + static_cast<int>(rng() % 7);
        const Mat<Fp> m = random_matrix<Fp>(f, r, 3, rng) * random_matrix<Fp>(f, 3, c, rng);
        const Subspace<Fp> k = kernel(m);
        CHECK(k.dim() + rank(m) == c);
        if (k.dim() > 0) CHECK(all_zero(Mat<Fp>(m * k.basis())));
    }
}

TEST_CASE("subspace operations") {
    const PrimeField f(101);
    const Mat<Fp> id = identity<Fp>(5, f(1));
    const Subspace<Fp> s = Subspace<Fp>::span(Mat<Fp>(id.leftCols(2)));
    CHECK(intersect(s, s) == s);
    const Subspace<Fp> t = Subspace<Fp>::span(Mat<Fp>(id.rightCols(3)));
    CHECK(intersect(s, t).dim() == 0);
    CHECK(sum(s, t).dim() == 5);
    std::mt19937_64 rng(2);
    const Subspace<Fp> full = Subspace<Fp>::full(6, f(1));
    for (int i = 0; i < 30; ++i) {
        const Subspace<Fp> a = random_subspace(f, full, 3, rng), b = random_subspace(f, full, 4, rng);
        CHECK(intersect(a, b).dim() + sum(a, b).dim() == a.dim() + b.dim());
    }
}

TEST_CASE("Pfaffians") {
    const PrimeField f(101);
    Mat<Fp> j = zeros<Fp>(4, 4, f(1));
    j(0, 1) = f(1), j(1, 0) = f(-1), j(2, 3) = f(1), j(3, 2) = f(-1);
    CHECK(pfaffian4(j) == f(1));
    CHECK(pfaffian4(zeros<Fp>(4, 4, f(1))) == f(0));
    std::mt19937_64 rng(4);
    for (int t = 0; t < 30; ++t) {
        const Mat<Fp> a = random_matrix<Fp>(f, 6, 6, rng);
        const Mat<Fp> s = a - a.transpose();
        const Fp p = pfaffian(s);
        CHECK(p * p == determinant(s));
    }
}

TEST_CASE("symmetric corank") {
    const PrimeField f(101);
    CHECK(symmetric_corank(identity<Fp>(4, f(1))) == 0);
    CHECK(symmetric_corank(zeros<Fp>(4, 4, f(1))) == 4);
    Mat<Fp> h = zeros<Fp>(5, 5, f(1));
    h(0, 1) = h(1, 0) = f(1);
    CHECK(symmetric_corank(h) == 3);
}

TEST_CASE("polynomial determinants") {
    const PrimeField f(101);
    PolyMat<Fp> d(2, 2);
    d(0, 0) = d(1, 1) = UniPoly<Fp>::linear(f(0), f(1));
    d(0, 1) = d(1, 0) = UniPoly<Fp>::constant(f(0));
    const UniPoly<Fp> t2 = poly_det(f, d);
    CHECK(t2.degree() == 2);
    CHECK(t2(f(3)) == f(9));
    PolyMat<Fp> c(2, 2);
    c(0, 0) = UniPoly<Fp>::constant(f(2)), c(0, 1) = UniPoly<Fp>::constant(f(3));
    c(1, 0) = UniPoly<Fp>::constant(f(5)), c(1, 1) = UniPoly<Fp>::constant(f(7));
    const UniPoly<Fp> k = poly_det(f, c);
    CHECK(k.degree() == 0);
    CHECK(k(f(0)) == f(-1));
    // Bareiss and interpolation agree on random linear pencils.
    std::mt19937_64 rng(8);
    for (int t = 0; t < 10; ++t) {
        PolyMat<Fp> m(4, 4);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) m(i, j) = UniPoly<Fp>::linear(f.random(rng), f.random(rng));
        const UniPoly<Fp> a = poly_det_bareiss(m, f(1));
        const UniPoly<Fp> b = poly_det_interpolation(m, interpolation_nodes(f, 5));
        CHECK(a == b);
    }
}

TEST_CASE("polynomial gcd and squarefree test") {
    const PrimeField f(101);
    const UniPoly<Fp> x1 = UniPoly<Fp>::linear(f(-1), f(1)), x2 = UniPoly<Fp>::linear(f(-2), f(1));
    CHECK(is_squarefree(x1 * x2));
    CHECK_FALSE(is_squarefree(x1 * x1 * x2));
    CHECK(root_multiplicity(x1 * x1 * x2, f(1)) == 2);
    CHECK(gcd(x1 * x2, x1 * x1).degree() == 1);
}
