#pragma once

// Lagrangian subspaces of the third power of V6 under the wedge pairing.

#include "gmq/exterior.hpp"
#include "gmq/kernels.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <string>

namespace gmq {

template <class S>
Mat<S> inverse_matrix(const Mat<S>& m) {
    if (m.rows() != m.cols()) throw DimensionError("inverse of a non-square matrix");
    return express(m, identity<S>(m.rows(), sample_of(m)));
}

template <class S>
struct LagrangianSubspace {
    Subspace<S> space;
    std::string provenance;

    const Mat<S>& basis() const { return space.basis(); }
    int dim() const { return space.dim(); }
};

/// Every pair of columns pairs to zero.
template <class S>
bool is_isotropic(const Mat<S>& basis, const Mat<S>& gram) {
    return all_zero(Mat<S>(basis.transpose() * gram * basis));
}

template <class S>
bool is_lagrangian(const Subspace<S>& s) {
    if (s.ambient_dim() != 20 || s.dim() != 10) return false;
    return is_isotropic(s.basis(), symplectic_gram(sample_of(s.basis())));
}

/// Index sets containing 0: one from each complementary pair of 3-subsets.
inline std::vector<int> coordinate_lagrangian_indices() {
    const ExteriorContext& ctx = exterior(6);
    std::vector<int> idx;
    for (int i = 0; i < 20; ++i)
        if (ctx.subset(3, i) & 1u) idx.push_back(i);
    return idx;
}

/// Graph over the coordinate Lagrangian L0 of the symmetric matrix `sym`:
/// a_I = e_I + sum_K sym(I,K) s_K e_{K^c} with s_K = top(e_K ^ e_{K^c}).
/// Isotropy reduces to the symmetry of `sym`.
template <class S>
LagrangianSubspace<S> lagrangian_graph(const Mat<S>& sym) {
    if (sym.rows() != 10 || !is_symmetric(sym)) throw DimensionError("lagrangian_graph needs a symmetric 10x10 matrix");
    const ExteriorContext& ctx = exterior(6);
    const S sample = sample_of(sym);
    const std::vector<int> idx = coordinate_lagrangian_indices();
    Mat<S> b = zeros<S>(20, 10, sample);
    for (int i = 0; i < 10; ++i) {
        b(idx[i], i) = like(sample, 1);
        for (int k = 0; k < 10; ++k) {
            const std::uint32_t mk = ctx.subset(3, idx[k]);
            const int s = ExteriorContext::wedge_sign(mk, 63u & ~mk);
            const S term = s > 0 ? sym(i, k) : -sym(i, k);
            b(ctx.index(63u & ~mk), i) += term;
        }
    }
    return {Subspace<S>::span(b), "graph"};
}

template <class S>
LagrangianSubspace<S> coordinate_lagrangian(const S& sample) {
    LagrangianSubspace<S> l = lagrangian_graph(zeros<S>(10, 10, sample));
    l.provenance = "coordinate";
    return l;
}

template <class F>
LagrangianSubspace<typename F::Scalar> random_lagrangian(const F& field, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    LagrangianSubspace<typename F::Scalar> l = lagrangian_graph(random_symmetric(field, 10, rng));
    l.provenance = "random-graph(" + std::to_string(seed) + ")";
    return l;
}

/// Symplectic complement; Lagrangian input gives back the same subspace.
template <class S>
Subspace<S> symplectic_perp(const Subspace<S>& s) {
    return orthogonal(s, symplectic_gram(sample_of(s.basis())));
}

struct DecomposableVerdict {
    enum class Status { ExhaustivelyClean, SampledClean, Counterexample };
    Status status = Status::SampledClean;
    std::uint64_t checked = 0;
    std::optional<Vec<Fp>> point;

    bool clean() const { return status != Status::Counterexample; }
    std::string describe() const;
};

/// Exhaustive over P(A)(F_p) for p in {3, 5} when the point count fits in
/// `budget`; otherwise `samples` random vectors of A are tested.
DecomposableVerdict validate_no_decomposables(const LagrangianSubspace<Fp>& a, std::uint64_t budget = 20'000'000,
                                              std::uint64_t samples = 20000, std::uint64_t seed = 0);

/// First random Lagrangian from seeds seed, seed + 1, ... that passes the
/// decomposable check; throws after `tries` rejections.
LagrangianSubspace<Fp> random_valid_lagrangian(const PrimeField& field, std::uint64_t seed, int tries = 64);

/// 10-dim Lagrangian companions used by the EPW loci, as spanning columns.
template <class S>
Mat<S> dual_companion(const Mat<S>& u5) {
    if (u5.rows() != 6 || u5.cols() != 5) throw DimensionError("dual companion needs a 6x5 basis");
    return third_power_span(u5);
}
template <class S>
Mat<S> primal_companion(const Vec<S>& u1) {
    if (u1.size() != 6) throw DimensionError("primal companion needs a vector of V6");
    return Subspace<S>::span(wedge_matrix(as_multivector(u1), 2)).basis();
}
template <class S>
Mat<S> z_companion(const Mat<S>& u3) {
    if (u3.rows() != 6 || u3.cols() != 3) throw DimensionError("Z companion needs a 6x3 basis");
    Mat<S> gens(20, 18);
    int c = 0;
    for (int a = 0; a < 3; ++a)
        for (int b = a + 1; b < 3; ++b) {
            MultiVector<S> ab = wedge(as_multivector(Vec<S>(u3.col(a))), as_multivector(Vec<S>(u3.col(b))));
            Mat<S> w = wedge_matrix(ab, 1);
            for (int k = 0; k < 6; ++k) gens.col(c++) = w.col(k);
        }
    return Subspace<S>::span(gens).basis();
}

struct StratumTarget {
    enum class Kind { Dual, Primal };
    Kind kind = Kind::Dual;
    int ell = 0;
};

template <class S>
struct PlantedLagrangian {
    LagrangianSubspace<S> a;
    Mat<S> locus;  // 6x5 basis of U5 (dual) or 6x1 vector U1 (primal)
    int ell = 0;
};

namespace detail {
template <class F>
Mat<typename F::Scalar> random_full_rank(const F& field, int r, int c, std::mt19937_64& rng) {
    using S = typename F::Scalar;
    for (;;) {
        Mat<S> m = random_matrix<S>(field, r, c, rng);
        if (rank(m) == std::min(r, c)) return m;
    }
}
}  // namespace detail

/// Plant a Lagrangian meeting the companion of `locus` in exactly `ell`
/// dimensions. With T a random ell-dim subspace of the companion L, and L' a
/// Lagrangian transverse to L, the graph of X = S (P^T)^-1 over L' meets L
/// only in T, where P pairs L' with a complement of T in L.
template <class F>
PlantedLagrangian<typename F::Scalar> lagrangian_with_stratum(const F& field, StratumTarget target,
                                                              const Mat<typename F::Scalar>& locus,
                                                              std::uint64_t seed) {
    using S = typename F::Scalar;
    if (target.ell < 0 || target.ell > 3) throw DimensionError("planted stratum must have 0 <= ell <= 3");
    std::mt19937_64 rng(seed);
    const S one = field(1);
    const Mat<S> g = symplectic_gram(one);
    Mat<S> companion, transverse;
    if (target.kind == StratumTarget::Kind::Dual) {
        if (locus.rows() != 6 || locus.cols() != 5 || rank(locus) != 5) throw DimensionError("dual target needs U5");
        companion = dual_companion(locus);
    } else {
        if (locus.rows() != 6 || locus.cols() != 1 || all_zero(locus)) throw DimensionError("primal target needs U1");
        companion = primal_companion(Vec<S>(locus.col(0)));
    }
    const Subspace<S> l = Subspace<S>::span(companion);
    for (int attempt = 0; attempt < 64; ++attempt) {
        if (target.kind == StratumTarget::Kind::Dual) {
            Vec<S> v;
            do v = random_matrix<S>(field, 6, 1, rng).col(0);
            while (rank(Mat<S>((Mat<S>(6, 6) << locus, v).finished())) < 6);
            transverse = wedge_matrix(as_multivector(v), 2) * second_power_span(locus);
        } else {
            Mat<S> h;
            do h = random_matrix<S>(field, 6, 5, rng);
            while (rank(Mat<S>((Mat<S>(6, 6) << h, locus).finished())) < 6);
            transverse = third_power_span(h);
        }
        const Subspace<S> lp = Subspace<S>::span(transverse);
        const Subspace<S> t = random_subspace(field, l, target.ell, rng);
        const Mat<S> comp = complete_basis(t.basis(), l);
        const Mat<S> pp = intersect(lp, orthogonal(t, g)).basis();
        const Mat<S> pairing = pp.transpose() * g * comp;
        const Mat<S> x = random_symmetric(field, 10 - target.ell, rng) * inverse_matrix(Mat<S>(pairing.transpose()));
        Mat<S> gens(20, 10);
        gens << Mat<S>(pp + comp * x.transpose()), t.basis();
        Subspace<S> a = Subspace<S>::span(gens);
        if (!is_lagrangian(a)) throw std::logic_error("planted construction lost isotropy");
        if (intersect(a, l).dim() != target.ell) continue;
        const std::string tag = target.kind == StratumTarget::Kind::Dual ? "dual" : "primal";
        return {{a, "planted(" + tag + ":" + std::to_string(target.ell) + ")"}, locus, target.ell};
    }
    throw std::runtime_error("lagrangian_with_stratum: retries exhausted");
}

/// Same, at a random U5 (dual) or random U1 (primal).
template <class F>
PlantedLagrangian<typename F::Scalar> lagrangian_with_stratum(const F& field, StratumTarget target,
                                                              std::uint64_t seed) {
    std::mt19937_64 rng(seed ^ 0x5bd1e995ull);
    const int cols = target.kind == StratumTarget::Kind::Dual ? 5 : 1;
    return lagrangian_with_stratum(field, target, detail::random_full_rank(field, 6, cols, rng), seed);
}

template <class S>
struct ReducedSpace {
    Mat<S> pairing;                  // induced form on the chosen complement C
    Mat<S> complement;               // columns of C inside the original ambient
    std::vector<Subspace<S>> images;  // (L cap I-perp + I) / I in C-coordinates
};

/// Symplectic reduction by an isotropic I: I-perp / I realized on a
/// complement C of I inside I-perp.
template <class S>
ReducedSpace<S> isotropic_reduce(const Mat<S>& pairing, const Subspace<S>& iso,
                                 const std::vector<Subspace<S>>& targets) {
    if (!is_isotropic(iso.basis(), pairing)) throw DimensionError("isotropic_reduce: I is not isotropic");
    const Subspace<S> perp = orthogonal(iso, pairing);
    ReducedSpace<S> r;
    r.complement = complete_basis(iso.basis(), perp);
    r.pairing = r.complement.transpose() * pairing * r.complement;
    const int c = static_cast<int>(r.complement.cols());
    Mat<S> full(pairing.rows(), c + iso.dim());
    full << r.complement, iso.basis();
    for (const Subspace<S>& l : targets) {
        const Subspace<S> inside = intersect(l, perp);
        if (inside.dim() == 0) {
            r.images.emplace_back(c);
            continue;
        }
        const Mat<S> coords = express(full, inside.basis());
        r.images.push_back(Subspace<S>::span(Mat<S>(coords.topRows(c))));
    }
    return r;
}

/// dim coker(L2 -> ambient / L1), computed from a rank and checked against the
/// intersection dimension.
template <class S>
int cointersection_rank(const Subspace<S>& l1, const Subspace<S>& l2) {
    Mat<S> both(l1.ambient_dim(), l1.dim() + l2.dim());
    both << l1.basis(), l2.basis();
    const int coker = l1.ambient_dim() - rank(both);
    const int meet = intersect(l1, l2).dim();
    if (coker != meet) throw std::logic_error("cointersection rank disagrees with the intersection");
    return coker;
}

template <class S>
struct TripleForm {
    QuadraticSpace<S> form;  // beta on L1 in the basis of L1 (= L3-dual via the pairing)
    Mat<S> mu;               // L1 coordinates -> L3 coordinates
};

/// With ambient = L1 + L3 and L2 transverse to L3, L2 is the graph of
/// mu: L1 -> L3 and beta(a, b) = pairing(a, mu b) is symmetric with
/// corank dim(L1 cap L2).
template <class S>
TripleForm<S> triple_quadratic_form(const Mat<S>& pairing, const Subspace<S>& l1, const Subspace<S>& l2,
                                    const Subspace<S>& l3) {
    if (intersect(l3, l1).dim() != 0 || intersect(l3, l2).dim() != 0)
        throw DimensionError("triple_quadratic_form: L3 must be transverse to L1 and L2");
    const int k = l1.dim();
    if (l2.dim() != k || l3.dim() != k || 2 * k != pairing.rows())
        throw DimensionError("triple_quadratic_form: dimensions are not Lagrangian");
    Mat<S> split(pairing.rows(), 2 * k);
    split << l1.basis(), l3.basis();
    const Mat<S> c = express(split, l2.basis());
    const Mat<S> p1 = c.topRows(k), p3 = c.bottomRows(k);
    TripleForm<S> t;
    t.mu = p3 * inverse_matrix(p1);
    const Mat<S> beta = l1.basis().transpose() * pairing * l3.basis() * t.mu;
    if (!is_symmetric(beta)) throw std::logic_error("triple form is not symmetric");
    t.form = QuadraticSpace<S>(beta);
    if (t.form.corank() != intersect(l1, l2).dim()) throw std::logic_error("triple form corank mismatch");
    return t;
}

}  // namespace gmq
