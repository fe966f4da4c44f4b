#include "doctest.h"
#include "gmq/io.hpp"

using namespace gmq;

TEST_CASE("field specs") {
    CHECK(parse_field_spec("Fp:101").p == 101);
    CHECK(parse_field_spec("Fp 7").p == 7);
    CHECK(parse_field_spec("3").p == 3);
    CHECK(parse_field_spec("QQ").rational());
    CHECK(parse_field_spec("QQ").name() == "QQ");
    CHECK(parse_field_spec("Fp:5").name() == "Fp 5");
    CHECK_THROWS_AS(parse_field_spec("Fp:9"), FormatError);
    CHECK_THROWS_AS(parse_field_spec("Fp:2"), FormatError);
    CHECK_THROWS_AS(parse_field_spec("R"), FormatError);
}

TEST_CASE("entry parsing") {
    CHECK(parse_fp("-1", 7) == Fp(6, 7));
    CHECK(parse_fp("1/2", 7) == Fp(4, 7));
    CHECK(parse_q("-3/6") == Q(-1, 2));
    CHECK_THROWS_AS(parse_fp("1/7", 7), FormatError);
    CHECK_THROWS_AS(parse_q("x"), FormatError);
    CHECK_THROWS_AS(parse_q("1/0"), FormatError);
}

TEST_CASE("Lagrangian round trip over F_p and Q") {
    const FieldSpec fp{101};
    const LagrangianSubspace<Fp> a = random_lagrangian(PrimeField(101), 42);
    const std::string text = lagrangian_document(a.space, fp).render();
    CHECK(text.rfind("gmq 1 lagrangian Fp 101\ndim 20 10\n", 0) == 0);
    CHECK(lagrangian_from<Fp>(parse_gmq(text)) == a.space);
    CHECK(lagrangian_document(a.space, fp).render() == text);

    const FieldSpec qq{0};
    const LagrangianSubspace<Q> b = random_lagrangian(RationalField(), 5);
    const std::string qt = lagrangian_document(b.space, qq).render();
    CHECK(qt.rfind("gmq 1 lagrangian QQ", 0) == 0);
    CHECK(lagrangian_from<Q>(parse_gmq(qt)) == b.space);
}

TEST_CASE("GM round trip, including a basis in non-canonical form") {
    const PrimeField f(101);
    for (GMType t : {GMType::Ordinary, GMType::Special}) {
        const GMVariety<Fp> x = random_gm(4, t, f, 9);
        const GmqDocument d = gm_document(x, FieldSpec{101});
        const GMVariety<Fp> y = gm_from<Fp>(parse_gmq(d.render()));
        CHECK(y.w == x.w);
        CHECK(y.q == x.q);
        CHECK(y.w0perp == x.w0perp);
        CHECK(y.type == t);
    }
    // Same W given by a mixed basis with Q transported along.
    const GMVariety<Fp> x = random_gm(3, GMType::Ordinary, f, 2);
    std::mt19937_64 rng(1);
    const Mat<Fp> p = random_invertible(f, x.w.dim(), rng);
    const Mat<Fp> mixed = x.w.basis() * p;
    GmqDocument d = gm_document(x, FieldSpec{101});
    d.columns.clear();
    for (int j = 0; j < mixed.cols(); ++j) d.columns.push_back(column_text(mixed, j));
    d.set("q", flat_text(Mat<Fp>(p.transpose() * x.q * p)));
    const GMVariety<Fp> y = gm_from<Fp>(parse_gmq(d.render()));
    CHECK(y.w == x.w);
    CHECK(y.q == x.q);
}

TEST_CASE("corrupted and malformed input") {
    const std::string good = lagrangian_document(random_lagrangian(PrimeField(101), 1).space, FieldSpec{101}).render();
    std::string flipped = good;
    flipped[good.find("dim 20 10\n") + 12] = flipped[good.find("dim 20 10\n") + 12] == '1' ? '2' : '1';
    CHECK_THROWS_WITH_AS(parse_gmq(flipped), doctest::Contains("digest"), FormatError);
    CHECK_THROWS_AS(parse_gmq("gmq 2 lagrangian Fp 101\ndim 20 10\n"), FormatError);
    CHECK_THROWS_AS(parse_gmq("hello\n"), FormatError);
    CHECK_THROWS_AS(parse_gmq("gmq 1 lagrangian Fp 101\ndim 20 1\n1 2 3\n"), FormatError);
    CHECK_THROWS_AS(read_gmq("/nonexistent/file.gmq"), FormatError);
    // Digest-free files are accepted; validation still runs.
    const std::string body = good.substr(0, good.find("meta sha256"));
    CHECK_NOTHROW(lagrangian_from<Fp>(parse_gmq(body)));
}

TEST_CASE("invariant violations are named") {
    const PrimeField f(101);
    // A random 10-dim subspace is not Lagrangian.
    std::mt19937_64 rng(3);
    const Subspace<Fp> junk = random_subspace(f, Subspace<Fp>::full(20, f(1)), 10, rng);
    const std::string t = lagrangian_document(junk, FieldSpec{101}).render();
    CHECK_THROWS_WITH_AS(lagrangian_from<Fp>(parse_gmq(t)), doctest::Contains("isotropic"), FormatError);

    GMVariety<Fp> x = random_gm(4, GMType::Special, f, 1);
    x.q(0, 0) = f(0);
    const std::string g = gm_document(x, FieldSpec{101}).render();
    CHECK_THROWS_WITH_AS(gm_from<Fp>(parse_gmq(g)), doctest::Contains("vertex"), FormatError);

    GmqDocument d = gm_document(random_gm(4, GMType::Ordinary, f, 1), FieldSpec{101});
    d.meta.erase(d.meta.begin());
    CHECK_THROWS_WITH_AS(gm_from<Fp>(parse_gmq(d.render())), doctest::Contains("missing meta"), FormatError);
}

TEST_CASE("meta accessors") {
    GmqDocument d;
    d.set("a", "1");
    d.set("a", "2");
    CHECK(d.get("a") == "2");
    CHECK_FALSE(d.get("b").has_value());
    CHECK(d.meta.size() == 1);
}
