#include "gmq/verify.hpp"

#include "gmq/digest.hpp"
#include "gmq/fibration.hpp"
#include "gmq/hilbert.hpp"
#include "gmq/ogr.hpp"
#include "json.hpp"

#include <iomanip>
#include <sstream>

namespace gmq {

int VerificationReport::passed() const {
    int n = 0;
    for (const CaseRecord& c : cases) n += c.pass;
    return n;
}

std::string VerificationReport::to_json_lines() const {
    std::string out;
    for (const CaseRecord& c : cases) {
        nlohmann::ordered_json j{{"suite", c.suite}, {"check", c.check},       {"anchor", c.anchor},
                                 {"inputs", c.inputs}, {"expected", c.expected}, {"got", c.got},
                                 {"pass", c.pass}};
        out += j.dump() + '\n';
    }
    nlohmann::ordered_json s{{"suite", suite}, {"run", run()}, {"passed", passed()}, {"failed", failed()}};
    return out + s.dump() + '\n';
}

std::string VerificationReport::to_table() const {
    std::ostringstream os;
    for (const CaseRecord& c : cases)
        os << (c.pass ? "PASS " : "FAIL ") << c.suite << "  " << std::left << std::setw(56) << c.check
           << " expected " << c.expected << ", got " << c.got << '\n';
    os << suite << ": " << passed() << "/" << run() << " passed\n";
    return os.str();
}

std::uint64_t case_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = (seed ^ index) + 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"algebra", "epw", "fibration", "ogr", "tables"};
    return names;
}

namespace {

struct Sink {
    VerificationReport& rep;
    std::string suite;
    std::uint64_t seed;
    std::uint64_t index = 0;

    std::uint64_t next_seed() { return case_seed(seed, index++); }

    template <class E, class G>
    void add(const std::string& check, const std::string& anchor, const std::string& inputs, const E& expected,
             const G& got) {
        std::ostringstream e, g;
        e << expected;
        g << got;
        rep.cases.push_back({suite, check, anchor, inputs, e.str(), g.str(), e.str() == g.str()});
    }
};

std::string seed_digest(std::uint64_t s) { return sha256_hex("seed " + std::to_string(s)).substr(0, 16); }

template <class F>
void algebra_suite(const F& f, int samples, Sink& out) {
    using S = typename F::Scalar;
    const S one = f(1);
    {
        const Mat<S> g = symplectic_gram(one);
        out.add("wedge pairing is skew and nondegenerate", "symplectic form on the third power of V6",
                matrix_digest(g), "skew rank 20",
                std::string(is_skew(g) ? "skew" : "not skew") + " rank " + std::to_string(rank(g)));
    }
    {
        int good = 0;
        const std::uint64_t s = out.next_seed();
        for (int i = 0; i < samples; ++i) good += is_lagrangian(random_lagrangian(f, s + i).space);
        out.add("random graph Lagrangians are Lagrangian", "Lagrangian subspaces of the third power", seed_digest(s),
                samples, good);
    }
    {
        // q_{e0}(x) = x12 x34 - x13 x24 + x14 x23 on V5 labels 0..4.
        const std::uint64_t s = out.next_seed();
        std::mt19937_64 rng(s);
        int good = 0;
        const ExteriorContext& c5 = exterior(5);
        Vec<S> v = Vec<S>::Constant(5, f(0));
        v(0) = one;
        const Mat<S> g = plucker_gram(v);
        for (int i = 0; i < samples; ++i) {
            const Vec<S> x = random_matrix<S>(f, 10, 1, rng).col(0);
            auto at = [&](int a, int b) { return x(c5.index((1u << a) | (1u << b))); };
            const S direct = at(1, 2) * at(3, 4) - at(1, 3) * at(2, 4) + at(1, 4) * at(2, 3);
            good += x.dot(g * x) == direct;
        }
        out.add("Plücker quadric of e0 in coordinates", "Plücker quadrics q_v(x) = top(v ^ x ^ x) / 2", seed_digest(s),
                samples, good);
    }
    {
        const std::uint64_t s = out.next_seed();
        std::mt19937_64 rng(s);
        int good = 0;
        for (int i = 0; i < samples; ++i) {
            const Mat<S> w0p = random_w0perp(f, 1, rng);
            const Mat<S> w = skew_form_of(Vec<S>(w0p.col(0)));
            good += kernel(w) == Subspace<S>::span(Mat<S>(kappa(w)));
        }
        out.add("kappa(w) spans the kernel of w", "kappa sends a rank-4 form to its kernel", seed_digest(s), samples,
                good);
    }
    {
        const std::uint64_t s = out.next_seed();
        std::mt19937_64 rng(s);
        int rank3 = 0;
        for (int i = 0; i < samples; ++i) {
            const Mat<S> w0p = random_w0perp(f, 3, rng);
            std::vector<Mat<S>> forms;
            for (int j = 0; j < 3; ++j) forms.push_back(skew_form_of(Vec<S>(w0p.col(j))));
            const Subspace<S> k = kernel(kappa_tilde(forms));
            if (k.dim() == 1 && rank(symmetric_tensor_matrix(k.vector(0), 3)) == 3) ++rank3;
        }
        out.add("kernel of kappa-tilde for n0 = 2", "kernel spanned by a nondegenerate quadratic tensor",
                seed_digest(s), samples, rank3);
    }
    {
        const std::uint64_t s = out.next_seed();
        std::mt19937_64 rng(s);
        int good = 0;
        for (int i = 0; i < samples; ++i) {
            std::vector<Vec<S>> u;
            for (int j = 0; j < 3; ++j) u.push_back(random_matrix<S>(f, 6, 1, rng).col(0));
            const MultiVector<S> d = wedge_vectors(u);
            const bool dec = all_zero(d.coords) || is_decomposable(d);
            const MultiVector<S> sum = wedge(
                wedge(basis_multivector(6, {0}, one), basis_multivector(6, {1}, one)), basis_multivector(6, {2}, one));
            MultiVector<S> nd = sum;
            nd.coords += wedge(wedge(basis_multivector(6, {3}, one), basis_multivector(6, {4}, one)),
                               basis_multivector(6, {5}, one))
                             .coords;
            good += dec && !is_decomposable(nd);
        }
        out.add("decomposable trivectors are detected", "decomposable vectors u1 ^ u2 ^ u3", seed_digest(s), samples,
                good);
    }
}

template <class F>
void fibration_suite(const F& f, int samples, Sink& out) {
    using S = typename F::Scalar;
    const S one = f(1);
    const Subspace<S> v5full = Subspace<S>::full(5, one);
    {
        const std::uint64_t s = out.next_seed();
        std::mt19937_64 rng(s);
        PfaffianCheck pc = pfaffian_identity_check(f, samples, rng);
        out.add("Pfaffian chart identity", "Pfaffian of the skew 4x4 factor gives q_{e1}", seed_digest(s), 0,
                pc.failures);
        PfaffianCheck neg = pfaffian_identity_check(f, samples, rng, true);
        out.add("Pfaffian identity negative control", "sign-flipped factor must fail", seed_digest(s), samples,
                neg.failures);
    }
    for (int n = 2; n <= 5; ++n) {
        const std::uint64_t s = out.next_seed();
        std::mt19937_64 rng(s);
        const GMVariety<S> x = random_gm(n, GMType::Ordinary, f, s);
        int vanish = 0, eq = 0, neg = 0;
        for (int i = 0; i < samples; ++i) {
            const Mat<S> u4 = random_subspace(f, v5full, 4, rng).basis();
            vanish += verify_u4_vanishing(x, u4);
            eq += e_stratum_check(x, u4).equal();
            // A random (n+1)-dim subspace of k^11 generally fails the vanishing.
            const Mat<S> junk = random_subspace(f, Subspace<S>::full(11, one), n + 1, rng).basis();
            neg += !plucker_forms_vanish(junk, u4);
        }
        const std::string tag = " (n=" + std::to_string(n) + ")";
        out.add("U4 Plücker forms vanish on the fiber space" + tag, "vanishing on W over [U4]", seed_digest(s), samples,
                vanish);
        out.add("vanishing negative control" + tag, "random subspaces are not fiber spaces", seed_digest(s), samples,
                neg);
        out.add("corank on E equals corank of kappa-tilde-dual" + tag, "E-stratification by kappa-tilde-dual",
                seed_digest(s), samples, eq);
        if (n >= 3) {
            const BStratificationReport v = e_vertex_check(f, x, std::max(1, samples / 5), rng);
            out.add("corank 5 - n on the vertex of E" + tag, "structure of the E-strata", seed_digest(s), 0,
                    v.mismatches);
        }
    }
    for (int n = 3; n <= 6; ++n) {
        const std::uint64_t s = out.next_seed();
        std::mt19937_64 rng(s);
        const GMVariety<S> x = random_gm(n, GMType::Special, f, s);
        const GMVariety<S> x0 = ordinary_part(x);
        int on = 0, off = 0;
        for (int i = 0; i < samples; ++i) {
            const Mat<S> u4 = random_subspace(f, v5full, 4, rng).basis();
            const BasePoint<S> e = base_point_on_e(u4);
            on += quadric_at(x, e).corank() == quadric_at(x0, e).corank() + 1;
            Vec<S> phi;
            do phi = random_matrix<S>(f, 6, 1, rng).col(0);
            while (all_zero(Vec<S>(phi.head(5))));
            const BasePoint<S> b = base_point_from_functional(phi);
            off += quadric_at(x, b).corank() == quadric_at(x0, b).corank();
        }
        const std::string tag = " (n=" + std::to_string(n) + ")";
        out.add("special corank is one more on E" + tag, "special and ordinary coranks differ by 1 on E",
                seed_digest(s), samples, on);
        out.add("special corank agrees off E" + tag, "special and ordinary coranks agree off E", seed_digest(s),
                samples, off);
    }
    {
        const std::uint64_t s = out.next_seed();
        std::mt19937_64 rng(s);
        const LagrangianSubspace<S> a = random_lagrangian(f, s);
        const Mat<S> id = identity<S>(6, one);
        const BStratificationReport r =
            b_stratification_check(f, a.space, Mat<S>(id.leftCols(5)), Vec<S>(id.col(5)), samples, rng);
        out.add("fiber corank equals dual stratum off E", "corank stratification matches the dual EPW strata",
                matrix_digest(a.basis()), 0, r.mismatches);
    }
    if constexpr (std::is_same_v<S, Fp>) {
        for (int ell = 1; ell <= 3; ++ell) {
            const std::uint64_t s = out.next_seed();
            std::mt19937_64 rng(s);
            const auto pl = lagrangian_with_stratum(f, StratumTarget{StratumTarget::Kind::Dual, ell}, s);
            const Mat<S> id = identity<S>(6, one);
            const BStratificationReport r = b_stratification_check(f, pl.a.space, Mat<S>(id.leftCols(5)),
                                                                   Vec<S>(id.col(5)), 0, rng, {pl.locus});
            out.add("planted dual stratum " + std::to_string(ell) + " gives corank " + std::to_string(ell),
                    "corank stratification matches the dual EPW strata", matrix_digest(pl.a.basis()),
                    "corank " + std::to_string(ell), "corank " + std::to_string(r.histogram.begin()->first));
        }
    }
}

void epw_suite(const PrimeField& f, int samples, Sink& out) {
    const Fp one = f(1);
    {
        const std::uint64_t s = out.next_seed();
        std::mt19937_64 rng(s);
        const LagrangianSubspace<Fp> a = random_lagrangian(f, s);
        int agree = 0;
        for (int i = 0; i < samples; ++i) {
            Vec<Fp> phi;
            do phi = random_matrix<Fp>(f, 6, 1, rng).col(0);
            while (all_zero(phi));
            agree += ydual_stratum(a.space, hyperplane_of(phi)) == ydual_stratum_by_contraction(a.space, phi);
        }
        out.add("dual stratum by intersection and by contraction", "dual EPW strata", matrix_digest(a.basis()),
                samples, agree);
    }
    for (int ell = 1; ell <= 3; ++ell) {
        const std::uint64_t s = out.next_seed();
        const auto d = lagrangian_with_stratum(f, StratumTarget{StratumTarget::Kind::Dual, ell}, s);
        out.add("planted dual point has stratum " + std::to_string(ell), "dual EPW strata",
                matrix_digest(d.a.basis()), ell, ydual_stratum(d.a.space, d.locus));
        const auto p = lagrangian_with_stratum(f, StratumTarget{StratumTarget::Kind::Primal, ell}, s);
        out.add("planted primal point has stratum " + std::to_string(ell), "primal EPW strata",
                matrix_digest(p.a.basis()), ell, y_stratum(p.a.space, Vec<Fp>(p.locus.col(0))));
    }
    {
        const PrimeField f3(3);
        const std::uint64_t s = out.next_seed();
        const LagrangianSubspace<Fp> a = random_valid_lagrangian(f3, s);
        const StratumCensus yd = scan_strata(a.space, Locus::Ydual);
        const StratumCensus y = scan_strata(a.space, Locus::Y);
        const StratumCensus z = scan_strata(a.space, Locus::Z);
        const std::string dg = matrix_digest(a.basis());
        out.add("F3 dual census covers P(V6-dual)", "points of P5 over F3", dg, 364, yd.total);
        out.add("F3 primal census covers P(V6)", "points of P5 over F3", dg, 364, y.total);
        out.add("F3 Z census covers Gr(3,6)", "Gaussian binomial [6,3] at q = 3", dg, gaussian_binomial(6, 3, 3),
                z.total);
        out.add("no dual points of stratum >= 4", "dual EPW strata of valid A are empty from 4 on", dg, 0,
                yd.at_least(4));
        out.add("no primal points of stratum >= 4", "primal EPW strata of valid A are empty from 4 on", dg, 0,
                y.at_least(4));
        out.add("no Z points of stratum >= 5", "Z strata of valid A are empty from 5 on", dg, 0, z.at_least(5));
    }
    {
        const PrimeField f101(101);
        const std::uint64_t s = out.next_seed();
        std::mt19937_64 rng(s);
        const LagrangianSubspace<Fp> a = random_lagrangian(f101, s);
        int deg6 = 0, sqf = 0, ver = 0;
        const int lines = std::max(1, samples / 5);
        for (int i = 0; i < lines; ++i) {
            const SexticReport r = sextic_on_line(f101, a.space, random_matrix<Fp>(f101, 6, 1, rng).col(0),
                                                  random_matrix<Fp>(f101, 6, 1, rng).col(0));
            deg6 += r.degree == 6;
            sqf += r.squarefree;
            ver += r.roots_verified;
        }
        const std::string dg = matrix_digest(a.basis());
        out.add("sextic restricted to random lines has degree 6", "the dual EPW locus is a sextic", dg, lines, deg6);
        out.add("sextic restricted to random lines is squarefree", "the dual EPW sextic is integral and normal", dg,
                lines, sqf);
        out.add("sextic roots are exactly the stratum >= 1 points", "the dual EPW sextic", dg, lines, ver);
        const auto pl = lagrangian_with_stratum(f101, StratumTarget{StratumTarget::Kind::Dual, 2}, s);
        const Vec<Fp> phi0 = kernel(Mat<Fp>(pl.locus.transpose())).vector(0);
        const SexticReport r =
            sextic_on_line(f101, pl.a.space, phi0, random_matrix<Fp>(f101, 6, 1, rng).col(0));
        int mult = 0;
        for (const auto& [t, m] : r.roots)
            if (t == f101(0)) mult = m;
        out.add("line through a planted stratum-2 point", "double root at a singular point of the sextic",
                matrix_digest(pl.a.basis()), ">= 2", mult >= 2 ? ">= 2" : std::to_string(mult));
    }
    {
        for (std::uint32_t p : {3u, 5u}) {
            const CoverCensus c = cover_census(p);
            out.add("double cover local model over F" + std::to_string(p), "symmetrized rank-one matrices",
                    seed_digest(p), "consistent", c.consistent() ? "consistent" : "inconsistent");
        }
    }
    {
        const std::uint64_t s = out.next_seed();
        const auto pl = lagrangian_with_stratum(f, StratumTarget{StratumTarget::Kind::Dual, 1}, s);
        const PluckerProfile pp = plucker_point_profile(pl.a.space, pl.locus);
        out.add("Plücker point stratum gives dim X", "ordinary dimension 5 - l, special 6 - l",
                matrix_digest(pl.a.basis()), "4/5", std::to_string(pp.ordinary_dim) + "/" + std::to_string(pp.special_dim));
    }
    (void)one;
}

void ogr_suite(Sink& out) {
    const int table[4][8] = {{0, 0, 0, 0, -1, -1, -1, -1},
                             {0, 0, 0, 0, 1, -1, -1, -1},
                             {0, 0, 0, 1, 1, 3, -1, -1},
                             {0, 0, 1, 1, 3, 3, 6, -1}};
    int agree = 0;
    for (int c = 0; c < 4; ++c)
        for (int l = -3; l <= 4; ++l) {
            const int want = table[c][l + 3];
            if (want < 0) agree += c < l;
            else agree += ogr_delta(c, l) == want;
        }
    out.add("excess dimension table", "values of the excess dimension", "table", 32, agree);
    out.add("N(4,3)", "dimension of OGr(p, n+1)", "formula", 0, ogr_N(4, 3));
    out.add("N(6,4)", "dimension of OGr(p, n+1)", "formula", 2, ogr_N(6, 4));
    out.add("N(5,3)", "dimension of OGr(p, n+1)", "formula", 3, ogr_N(5, 3));

    const PrimeField f3(3);
    auto count = [&](const PrimeField& f, int n, int c, int p) {
        return enumerate_isotropic(QuadraticSpace<Fp>(split_form(f, n, c)), p).summary.count;
    };
    out.add("isotropic points of a split conic over F3", "q + 1 points", "split n=2 c=0", 4, count(f3, 2, 0, 1));
    out.add("isotropic planes of hyperbolic 4-space over F3", "two rulings", "split n=3 c=0", 8, count(f3, 3, 0, 2));
    int grid = 0, cells = 0;
    for (int n = 2; n <= 6; ++n)
        for (int p = 1; p <= n; ++p)
            for (int c = 0; c <= 3; ++c) {
                ++cells;
                grid += (count(f3, n, c, p) > 0) == (c >= ogr_ell(n, p));
            }
    out.add("nonempty exactly when c >= l", "emptiness criterion for OGr(p, Q)", "grid n<=6 c<=3 F3", cells, grid);
    int dims = 0, dcells = 0;
    for (int n = 2; n <= 6; ++n)
        for (int p = 1; p <= n; ++p)
            for (int c = 0; c <= 3; ++c) {
                ++dcells;
                try {
                    const DimensionEstimate d = dimension_estimate(n, c, p);
                    dims += d.matches();
                } catch (const FitError&) {
                }
            }
    out.add("count degree equals N + delta", "dim OGr(p, Q) = N(n, p) + delta(c, l)", "grid F3 F5", dcells, dims);
    for (std::uint32_t q : {3u, 5u}) {
        const PrimeField f(q);
        const std::string tq = " over F" + std::to_string(q);
        out.add("n=4 c=3 p=4 profile" + tq, "two reduced points", "split", "two points",
                fiber_profile(QuadraticSpace<Fp>(split_form(f, 4, 3)), 4).tag);
        out.add("n=6 c=3 p=5 profile" + tq, "two copies of P1", "split", "two lines",
                fiber_profile(QuadraticSpace<Fp>(split_form(f, 6, 3)), 5).tag);
        out.add("n=4 c=3 p=3 profile" + tq, "two P3 glued at a point", "split", "two P3 meeting in a point",
                fiber_profile(QuadraticSpace<Fp>(split_form(f, 4, 3)), 3).tag);
    }
    EnumerateOptions keep;
    keep.keep = true;
    for (int m : {1, 2, 3}) {
        const auto e = enumerate_isotropic(QuadraticSpace<Fp>(split_form(f3, 2 * m - 1, 0)), m, keep);
        const auto fam = e.summary.families.value_or(std::make_pair(0ull, 0ull));
        out.add("maximal isotropics of hyperbolic " + std::to_string(2 * m) + "-space split evenly",
                "two connected components for n = 2p - 1", "split F3",
                std::to_string(e.summary.count / 2) + "+" + std::to_string(e.summary.count / 2),
                std::to_string(fam.first) + "+" + std::to_string(fam.second));
    }
    {
        const std::uint64_t s = out.next_seed();
        std::mt19937_64 rng(s);
        int same = 0;
        for (int t = 0; t < 5; ++t) {
            const Mat<Fp> p = random_invertible(f3, 5, rng);
            const Mat<Fp> g = split_form(f3, 4, 2);
            same += enumerate_isotropic(QuadraticSpace<Fp>(Mat<Fp>(p.transpose() * g * p)), 2).summary.count ==
                    count(f3, 4, 2, 2);
        }
        out.add("counts are congruence invariant", "isotropic counts depend only on the form class", seed_digest(s), 5,
                same);
    }
}

std::string dims_row(const FkMxRow& r) {
    std::string s;
    for (const TableCell& c : r.cells) s += (s.empty() ? "" : ",") + (c.dim ? std::to_string(*c.dim) : std::string("-"));
    return s;
}

std::string inv_dims(const HilbertInventory& inv) {
    std::string s;
    for (const char* nm : {"G0", "Gsigma", "Gtau"}) {
        const Component* c = inv.find(nm);
        s += (s.empty() ? "" : ",") + (c && c->dim ? std::to_string(*c->dim) : std::string("-"));
    }
    return s;
}

void tables_suite(Sink& out) {
    const std::vector<std::tuple<int, GMType, std::string>> fk{
        {2, GMType::Ordinary, "2,-,-,-,-"}, {3, GMType::Special, "4,2,2,-,-"}, {3, GMType::Ordinary, "4,1,0,-,-"},
        {4, GMType::Special, "6,4,3,1,-"},  {4, GMType::Ordinary, "6,4,3,0,-"}, {5, GMType::Special, "8,7,6,4,-"},
        {5, GMType::Ordinary, "8,7,6,4,-"}, {6, GMType::Special, "10,10,9,8,4"}};
    for (const auto& [n, t, want] : fk)
        out.add("hull table column X" + std::to_string(n) + (t == GMType::Ordinary ? "ord" : "spe"),
                "dimensions of Hilbert schemes of linear spaces on M_X", "golden", want, dims_row(fk_mx_table(n, t)));
    const std::vector<std::tuple<int, int, GMType, std::string>> gk{
        {2, 1, GMType::Ordinary, "0,-,-"}, {4, 2, GMType::Ordinary, "0,0,-"}, {4, 2, GMType::Special, "0,1,0"},
        {6, 3, GMType::Special, "1,4,-"},  {3, 1, GMType::Ordinary, "2,1,0"}, {3, 1, GMType::Special, "2,2,2"},
        {5, 2, GMType::Ordinary, "3,4,-"}, {5, 2, GMType::Special, "3,4,3"},  {2, 0, GMType::Ordinary, "4,2,2"},
        {6, 2, GMType::Special, "7,8,6"},  {5, 3, GMType::Special, "-,0,-"}};
    for (const auto& [n, k, t, want] : gk)
        out.add("inventory n=" + std::to_string(n) + " k=" + std::to_string(k) + " " + gm_type_name(t),
                "components of G_k(X)", "golden", want, inv_dims(gk_structure(n, k, t)));
    for (int n = 3; n <= 6; ++n) {
        const GMType t = n == 6 ? GMType::Special : GMType::Ordinary;
        const auto d = gk_structure(n, 1, t).total_dim;
        out.add("dim G1 for n=" + std::to_string(n), "conics form a scheme of pure dimension 3n - 7", "golden",
                3 * n - 7, d ? *d : -1);
    }
    int consistent = 0, checked = 0;
    for (int n = 2; n <= 6; ++n)
        for (int k = 0; k <= 3; ++k)
            for (GMType t : {GMType::Ordinary, GMType::Special}) {
                if (!admissible(n, t) || ell(k, n) > 2 || n < 2 * k + 1) continue;
                const Component* g0 = gk_structure(n, k, t).find("G0");
                if (!g0 || !g0->dim) continue;
                ++checked;
                consistent += *g0->dim == ogr_N(n, k + 2) + 5;
            }
    out.add("dim G0 = N(n, k+2) + 5 when l <= 2", "main component dimension", "all admissible", checked, consistent);
    for (int n = 3; n <= 6; ++n)
        for (int t = 0; t <= 1; ++t) {
            const Cohomology c = encapsulated_cohomology(n, t);
            out.add("encapsulated conic cohomology n=" + std::to_string(n) + " t=" + std::to_string(t),
                    "normal bundle cohomology of encapsulated conics", "formula",
                    std::to_string(3 * n - 8 - t) + "," + std::to_string(t + 1) + "," + std::to_string(t + 2),
                    std::to_string(c.h0_normal) + "," + std::to_string(c.h1_twisted) + "," + std::to_string(c.degree));
        }
    out.add("l(1,3)", "complexity parameter", "formula", 2, ell(1, 3));
    out.add("l(3,6)", "complexity parameter", "formula", 3, ell(3, 6));
    int rep = 0;
    for (int k = 0; k <= 4; ++k)
        for (int n = 2; n <= 6; ++n) rep += ell(k, n) == ogr_ell(n, k + 2);
    out.add("l(k, n) = 2(k+2) - n - 1", "reparametrization p = k + 2", "formula", 25, rep);
}

}  // namespace

VerificationReport run_suite(const std::string& suite, const VerifyConfig& cfg) {
    if (suite == "all") {
        VerificationReport all;
        all.suite = "all";
        for (const std::string& s : suite_names()) {
            VerificationReport r = run_suite(s, cfg);
            all.cases.insert(all.cases.end(), r.cases.begin(), r.cases.end());
        }
        return all;
    }
    VerificationReport rep;
    rep.suite = suite;
    Sink sink{rep, suite, cfg.seed};
    const int samples = std::max(1, cfg.samples);
    if (suite == "algebra") {
        if (cfg.field.rational()) algebra_suite(RationalField(), samples, sink);
        else algebra_suite(PrimeField(cfg.field.p), samples, sink);
    } else if (suite == "fibration") {
        if (cfg.field.rational()) fibration_suite(RationalField(), std::max(1, samples / 5), sink);
        else fibration_suite(PrimeField(cfg.field.p), samples, sink);
    } else if (suite == "epw") {
        // Censuses need a finite field; the rationals fall back to F101.
        epw_suite(PrimeField(cfg.field.rational() ? 101 : cfg.field.p), samples, sink);
    } else if (suite == "ogr") {
        ogr_suite(sink);
    } else if (suite == "tables") {
        tables_suite(sink);
    } else {
        throw std::invalid_argument("unknown suite '" + suite + "'");
    }
    return rep;
}

}  // namespace gmq
