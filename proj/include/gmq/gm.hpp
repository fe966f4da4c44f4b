#pragma once

// Gushel-Mukai data (W, Q) over a field, base points of the quadric family,
// and the passage from Lagrangian data (A, V5) to ordinary GM data.
//
// Coordinates: V6 = V5 + k v0 with V5 = <e0..e4> and v0 = e5. W lives in the
// 11-dimensional space k + (second power of V5); coordinate 0 is the vertex
// direction k. Skew forms on V5 are trivectors of V5.

#include "gmq/epw.hpp"

#include <optional>

namespace gmq {

enum class GMType { Ordinary, Special };
std::string gm_type_name(GMType t);
GMType parse_gm_type(const std::string& s);

class GMError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

template <class S>
struct GMVariety {
    int n = 0;
    GMType type = GMType::Ordinary;
    Subspace<S> w;   // in k^11, canonical basis
    Mat<S> q;        // Gram matrix of the extra quadric on w's basis
    Mat<S> w0perp;   // 10 x (5 - n0) trivectors of V5
    Subspace<S> w0;  // in k^10

    int n0() const { return type == GMType::Ordinary ? n : n - 1; }
    S sample() const { return sample_of(w.basis()); }

    std::vector<Mat<S>> forms() const {
        std::vector<Mat<S>> out;
        for (Eigen::Index j = 0; j < w0perp.cols(); ++j) out.push_back(skew_form_of(Vec<S>(w0perp.col(j))));
        return out;
    }
};

template <class S>
struct BasePoint {
    Mat<S> u4;  // 5 x 4, inside V5
    Mat<S> u5;  // 6 x 5, inside V6
    bool on_e = false;
};

/// Annihilator of trivectors of V5 in the second power: {x : top(t ^ x) = 0}.
template <class S>
Subspace<S> annihilator(const Mat<S>& trivectors, const S& sample) {
    if (trivectors.cols() == 0) return Subspace<S>::full(10, sample);
    return kernel(Mat<S>(trivectors.transpose() * top_pairing<S>(5, 3, sample)));
}

/// Pad second-power coordinates with the vertex coordinate 0.
template <class S>
Mat<S> with_vertex(const Mat<S>& x, const S& sample) {
    Mat<S> out = zeros<S>(11, x.cols(), sample);
    out.bottomRows(10) = x;
    return out;
}

/// All nonzero members of the span have rank 4. Exhaustive over F_p-points
/// of the projectivized span when that is at most `budget` points.
bool forms_have_rank_four(const Mat<Fp>& trivectors, std::uint64_t budget = 200000, std::uint64_t samples = 5000,
                          std::uint64_t seed = 0);
bool forms_have_rank_four(const Mat<Q>& trivectors, std::uint64_t budget = 0, std::uint64_t samples = 500,
                          std::uint64_t seed = 0);

/// Structural checks: dimensions, annihilator relation, vertex splitting for
/// special data, rank-4 forms. Returns the first violated invariant.
template <class S>
std::optional<std::string> gm_violation(const GMVariety<S>& x) {
    if (x.type == GMType::Ordinary && (x.n < 2 || x.n > 5)) return "ordinary dimension must be 2..5";
    if (x.type == GMType::Special && (x.n < 3 || x.n > 6)) return "special dimension must be 3..6";
    if (x.w.ambient_dim() != 11 || x.w.dim() != x.n + 5) return "dim W must be n + 5";
    if (x.q.rows() != x.w.dim() || !is_symmetric(x.q)) return "Q must be a symmetric form on W";
    if (x.w0perp.rows() != 10 || x.w0perp.cols() != 5 - x.n0()) return "dim W0-perp must be 5 - n0";
    const S sample = x.sample();
    if (annihilator(x.w0perp, sample) != x.w0) return "W0 must be the annihilator of W0-perp";
    Mat<S> proj = x.w.basis().bottomRows(10);
    if (Subspace<S>::span(proj) != x.w0) return "W0 must be the image of W";
    const bool has_vertex = !all_zero(x.w.basis().row(0));
    if (x.type == GMType::Ordinary && has_vertex) return "ordinary W must not meet the vertex coordinate";
    if (x.type == GMType::Special) {
        Vec<S> k = Vec<S>::Constant(11, like(sample, 0));
        k(0) = like(sample, 1);
        if (!x.w.contains(k)) return "special W must contain the vertex line";
        const Vec<S> kc = x.w.coordinates(k);
        const Vec<S> qk = x.q * kc;
        if (is_zero(kc.dot(qk))) return "Q must be nonzero on the vertex line";
        for (int j = 0; j < x.w.dim(); ++j) {
            if (!is_zero(x.w.basis()(0, j))) continue;  // W0 part of the canonical basis
            if (!is_zero(qk(j))) return "vertex line must be Q-orthogonal to W0";
        }
    }
    if (!forms_have_rank_four(x.w0perp)) return "W0-perp contains a form of rank 2";
    return std::nullopt;
}

template <class S>
GMVariety<S> ordinary_from(const Mat<S>& w0perp, const Mat<S>& q0, const S& sample) {
    GMVariety<S> x;
    x.type = GMType::Ordinary;
    x.w0perp = w0perp;
    x.w0 = annihilator(w0perp, sample);
    x.n = x.w0.dim() - 5;
    x.w = Subspace<S>::span(with_vertex(x.w0.basis(), sample));
    x.q = q0;
    return x;
}

/// k + W0 with Q(k, k) = c and Q(k, W0) = 0.
template <class S>
GMVariety<S> make_special(const GMVariety<S>& x0, const S& c) {
    if (x0.type != GMType::Ordinary) throw GMError("make_special needs ordinary data");
    if (is_zero(c)) throw GMError("make_special needs a nonzero vertex value");
    const S sample = x0.sample();
    GMVariety<S> x = x0;
    x.type = GMType::Special;
    x.n = x0.n + 1;
    Mat<S> gens = zeros<S>(11, x0.w.dim() + 1, sample);
    gens(0, 0) = like(sample, 1);
    gens.rightCols(x0.w.dim()) = x0.w.basis();
    x.w = Subspace<S>::span(gens);
    x.q = zeros<S>(x0.w.dim() + 1, x0.w.dim() + 1, sample);
    x.q(0, 0) = c;
    x.q.bottomRightCorner(x0.w.dim(), x0.w.dim()) = x0.q;
    return x;
}

/// The ordinary data of a special variety (identity on ordinary data).
template <class S>
GMVariety<S> ordinary_part(const GMVariety<S>& x) {
    if (x.type == GMType::Ordinary) return x;
    const int d = x.w.dim() - 1;
    return ordinary_from(x.w0perp, Mat<S>(x.q.bottomRightCorner(d, d)), x.sample());
}

template <class F>
Mat<typename F::Scalar> random_w0perp(const F& field, int m, std::mt19937_64& rng) {
    using S = typename F::Scalar;
    for (int attempt = 0; attempt < 256; ++attempt) {
        Mat<S> t = random_matrix<S>(field, 10, m, rng);
        if (rank(t) != m) continue;
        if (m == 0 || forms_have_rank_four(t, 200000, 5000, rng())) return t;
    }
    throw GMError("random_w0perp: retries exhausted");
}

template <class F>
GMVariety<typename F::Scalar> random_gm(int n, GMType type, const F& field, std::uint64_t seed) {
    using S = typename F::Scalar;
    const int n0 = type == GMType::Ordinary ? n : n - 1;
    if (type == GMType::Ordinary ? (n < 2 || n > 5) : (n < 3 || n > 6))
        throw GMError("inadmissible (n, type) = (" + std::to_string(n) + ", " + gm_type_name(type) + ")");
    std::mt19937_64 rng(seed);
    const S one = field(1);
    GMVariety<S> x0 = ordinary_from(random_w0perp(field, 5 - n0, rng), random_symmetric(field, n0 + 5, rng), one);
    if (type == GMType::Ordinary) return x0;
    return make_special(x0, field.random_nonzero(rng));
}

/// (k + second power of U4) cap W; U4 given as a 5x4 basis of a subspace of V5.
template <class S>
Subspace<S> fiber_w(const GMVariety<S>& x, const Mat<S>& u4) {
    if (u4.rows() != 5 || u4.cols() != 4 || rank(u4) != 4) throw DimensionError("fiber_w needs U4 of dim 4 in V5");
    const S sample = x.sample();
    Mat<S> gens = zeros<S>(11, 7, sample);
    gens(0, 0) = like(sample, 1);
    gens.block(1, 1, 10, 6) = second_power_span(u4);
    const Subspace<S> f = intersect(x.w, Subspace<S>::span(gens));
    if (f.dim() != x.n + 1) throw GMError("fiber dimension " + std::to_string(f.dim()) + " != n + 1");
    return f;
}

/// Some u in U5 outside U4 (U4 embedded in V6 with last coordinate 0).
template <class S>
Vec<S> transversal_vector(const BasePoint<S>& b) {
    const S sample = sample_of(b.u5);
    Mat<S> u4 = zeros<S>(6, 4, sample);
    u4.topRows(5) = b.u4;
    const Mat<S> extra = complete_basis(u4, Subspace<S>::span(b.u5));
    if (extra.cols() != 1) throw DimensionError("base point must satisfy U4 in U5");
    return extra.col(0);
}

/// The quadric q(u) = lambda Q + B_v restricted to W_b, for u = v + lambda v0.
template <class S>
QuadraticSpace<S> quadric_at(const GMVariety<S>& x, const BasePoint<S>& b, const Vec<S>& u) {
    const Subspace<S> f = fiber_w(x, b.u4);
    const S lambda = u(5);
    const Vec<S> v = u.head(5);
    const Mat<S> c = f.basis();
    const Mat<S> m = express(x.w.basis(), c);
    Mat<S> gram = restrict_form(plucker_gram(v, true), c);
    if (!is_zero(lambda)) gram += restrict_form(x.q, m) * lambda;
    return QuadraticSpace<S>(gram);
}

template <class S>
QuadraticSpace<S> quadric_at(const GMVariety<S>& x, const BasePoint<S>& b) {
    return quadric_at(x, b, transversal_vector(b));
}

/// Base point with U5 = ker(phi) for phi on V6; U4 = U5 cap V5.
template <class S>
BasePoint<S> base_point_from_functional(const Vec<S>& phi) {
    BasePoint<S> b;
    b.u5 = hyperplane_of(phi);
    const S sample = sample_of(phi);
    bool on_e = true;
    for (int i = 0; i < 5; ++i)
        if (!is_zero(phi(i))) on_e = false;
    b.on_e = on_e;
    if (on_e) {
        throw DimensionError("ker(phi) = V5: give U4 explicitly for points of E");
    }
    const Subspace<S> v5 = Subspace<S>::span(Mat<S>(identity<S>(6, sample).leftCols(5)));
    const Subspace<S> u4 = intersect(Subspace<S>::span(b.u5), v5);
    b.u4 = u4.basis().topRows(5);
    return b;
}

/// Point of E over a given U4 of V5.
template <class S>
BasePoint<S> base_point_on_e(const Mat<S>& u4) {
    const S sample = sample_of(u4);
    return {u4, Mat<S>(identity<S>(6, sample).leftCols(5)), true};
}

template <class S>
struct GMFromLagrangian {
    GMVariety<S> x;
    Subspace<S> adapted;   // A in the adapted basis (V5 = <e0..e4>, v0 = e5)
    Mat<S> basis_change;   // columns: the V5 basis then v0, in original coordinates
    int ell = 0;
};

/// Ordinary GM data from (A, V5, v0). W0-perp = A cap (third power of V5);
/// Q comes from the Lagrangian triple (v0 ^ second power of V5, A, third
/// power of V5) after reduction by W0-perp, scaled by 1/2 so that
/// q(v0 + v) = Q + B_v matches the corank of A along the third powers of
/// hyperplanes.
template <class S>
GMFromLagrangian<S> gm_from_lagrangian(const Subspace<S>& a, const Mat<S>& v5, const Vec<S>& v0) {
    if (!is_lagrangian(a)) throw GMError("A is not Lagrangian");
    const S sample = sample_of(a.basis());
    GMFromLagrangian<S> out;
    out.basis_change = Mat<S>(6, 6);
    out.basis_change << v5, v0;
    if (rank(out.basis_change) != 6) throw GMError("v0 must lie outside V5");
    out.adapted = Subspace<S>::span(Mat<S>(exterior_power_matrix(inverse_matrix(out.basis_change), 3) * a.basis()));
    const ExteriorContext& c6 = exterior(6);
    const ExteriorContext& c5 = exterior(5);
    Mat<S> in_v5 = zeros<S>(20, 10, sample), to_v5 = zeros<S>(10, 20, sample);
    for (int i = 0; i < 20; ++i) {
        const std::uint32_t m = c6.subset(3, i);
        if (m & 32u) continue;
        in_v5(i, c5.index(m)) = like(sample, 1);
        to_v5(c5.index(m), i) = like(sample, 1);
    }
    const Subspace<S> third_v5 = Subspace<S>::span(in_v5);
    const Subspace<S> iso = intersect(out.adapted, third_v5);
    out.ell = iso.dim();
    if (out.ell > 3) throw GMError("dim(A cap third power of V5) >= 4: A is not valid");
    const Mat<S> w0perp = to_v5 * iso.basis();
    const Subspace<S> w0 = annihilator(w0perp, sample);
    // e5 ^ x for a basis x of W0, inside the third power of V6.
    const Vec<S> e5 = identity<S>(6, sample).col(5);
    const Mat<S> e5_wedge = wedge_matrix(as_multivector(e5), 2);  // 20 x 15
    Mat<S> lift = zeros<S>(15, w0.dim(), sample);
    for (int i = 0; i < 10; ++i)
        lift.row(c6.index(c5.subset(2, i))) = w0.basis().row(i);
    const Mat<S> e5w0 = e5_wedge * lift;
    const Mat<S> g = symplectic_gram(sample);
    const ReducedSpace<S> red =
        isotropic_reduce(g, iso, {Subspace<S>::span(e5_wedge), out.adapted, third_v5});
    Mat<S> full(20, red.complement.cols() + iso.dim());
    full << red.complement, iso.basis();
    const Mat<S> y = express(full, e5w0).topRows(red.complement.cols());
    const Subspace<S> l1r = Subspace<S>::span(y);
    if (l1r != red.images[0]) throw std::logic_error("reduced image of v0 ^ W0 mismatch");
    const TripleForm<S> t = triple_quadratic_form(red.pairing, l1r, red.images[1], red.images[2]);
    const Mat<S> r = express(l1r.basis(), y);
    const Mat<S> beta = r.transpose() * t.form.gram() * r;
    const S half = inverse(like(sample, 2));
    out.x = ordinary_from(w0perp, Mat<S>(beta * half), sample);
    return out;
}

}  // namespace gmq
