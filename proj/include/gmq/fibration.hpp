#pragma once

// Corank stratification of the quadric family over B and E.

#include "gmq/digest.hpp"
#include "gmq/gm.hpp"

namespace gmq {

/// For v in U4 the Plücker form B_v vanishes on every pair of vectors of
/// the fiber (full bilinear check on a basis).
template <class S>
bool plucker_forms_vanish(const Mat<S>& fiber_basis, const Mat<S>& u4) {
    for (Eigen::Index j = 0; j < u4.cols(); ++j)
        if (!all_zero(restrict_form(plucker_gram(Vec<S>(u4.col(j)), true), fiber_basis))) return false;
    return true;
}

template <class S>
bool verify_u4_vanishing(const GMVariety<S>& x, const Mat<S>& u4) {
    return plucker_forms_vanish(fiber_w(x, u4).basis(), u4);
}

/// x_ij for 1 <= i < j <= 5 in lex coordinates of the second power of V5.
template <class S>
S xx_plain(const Vec<S>& x, const ExteriorContext& c5, int i, int j) {
    return x(c5.index((1u << (i - 1)) | (1u << (j - 1))));
}

struct PfaffianCheck {
    int trials = 0;
    int failures = 0;
    bool pass() const { return failures == 0; }
};

/// The chart identity: with labels 1..5 for e0..e4, the skew matrix in
/// x23, x24, x25, x34, x35, x45 times the column with entries
/// x1j + sum_k xjk y_k (j = 5, 4, 3, 2) equals the column q_{e_j} + y_j q_{e_1};
/// its Pfaffian is q_{e_1}. `flip` negates the matrix (negative control).
template <class F>
PfaffianCheck pfaffian_identity_check(const F& field, int trials, std::mt19937_64& rng, bool flip = false,
                                      bool zero_y = false) {
    using S = typename F::Scalar;
    const ExteriorContext& c5 = exterior(5);
    PfaffianCheck out;
    const S one = field(1);
    for (int t = 0; t < trials; ++t) {
        const Vec<S> x = random_matrix<S>(field, 10, 1, rng).col(0);
        Vec<S> y = random_matrix<S>(field, 6, 1, rng).col(0);  // y(2..5) used
        if (zero_y) y.setConstant(field(0));
        auto xx = [&](int i, int j) -> S {  // 1-indexed, antisymmetric
            if (i == j) return field(0);
            if (i > j) return -xx_plain(x, c5, j, i);
            return xx_plain(x, c5, i, j);
        };
        Mat<S> m(4, 4);
        m << field(0), xx(2, 3), -xx(2, 4), xx(3, 4),
             -xx(2, 3), field(0), xx(2, 5), -xx(3, 5),
             xx(2, 4), -xx(2, 5), field(0), xx(4, 5),
             -xx(3, 4), xx(3, 5), -xx(4, 5), field(0);
        if (flip) m = -m;
        Vec<S> col(4);
        const int order[4] = {5, 4, 3, 2};
        for (int r = 0; r < 4; ++r) {
            const int j = order[r];
            S s = xx(1, j);
            for (int k = 2; k <= 5; ++k) s += xx(j, k) * y(k);
            col(r) = s;
        }
        auto q = [&](int j) {  // q_{e_j}(x), 1-indexed
            Vec<S> v = Vec<S>::Constant(5, field(0));
            v(j - 1) = one;
            return x.dot(plucker_gram(v) * x);
        };
        Vec<S> rhs(4);
        for (int r = 0; r < 4; ++r) rhs(r) = q(order[r]) + y(order[r]) * q(1);
        const bool ok = Vec<S>(m * col) == rhs && pfaffian4(m) == q(1);
        if (!ok) ++out.failures;
        ++out.trials;
    }
    return out;
}

struct QuadricFiberReport {
    int corank = 0;
    bool on_e = false;
    int fiber_dim = 0;  // projective dimension n - 1 of the quadric
    std::string form_digest;
};

template <class S>
QuadricFiberReport corank_at(const GMVariety<S>& x, const BasePoint<S>& b) {
    const QuadraticSpace<S> q = quadric_at(x, b);
    return {q.corank(), b.on_e, x.n - 1, matrix_digest(q.gram())};
}

/// phi on V5 with kernel U4.
template <class S>
Vec<S> functional_of(const Mat<S>& u4) {
    const Subspace<S> k = kernel(Mat<S>(u4.transpose()));
    if (k.dim() != 1) throw DimensionError("U4 must be a hyperplane of V5");
    return k.vector(0);
}

struct EStratumComparison {
    int fiber_corank = 0;
    int kappa_corank = 0;
    bool equal() const { return fiber_corank == kappa_corank; }
};

/// On E over U4 = ker(phi): corank of the fiber quadric against the corank
/// of the form (w, w') -> phi(w ^ w') on W0-perp.
template <class S>
EStratumComparison e_stratum_check(const GMVariety<S>& x, const Mat<S>& u4) {
    if (x.type != GMType::Ordinary) throw GMError("e_stratum_check needs ordinary data");
    const Vec<S> phi = functional_of(u4);
    EStratumComparison r;
    r.fiber_corank = quadric_at(x, base_point_on_e(u4)).corank();
    const std::vector<Mat<S>> forms = x.forms();
    r.kappa_corank = forms.empty() ? 0 : symmetric_corank(kappa_tilde_dual(forms, phi));
    return r;
}

/// {phi : kappa-tilde-dual(phi) = 0}, the vertex of the stratification on E.
template <class S>
Subspace<S> kappa_dual_kernel(const GMVariety<S>& x) {
    const std::vector<Mat<S>> forms = x.forms();
    if (forms.empty()) return Subspace<S>::full(5, x.sample());
    return kernel(Mat<S>(kappa_tilde(forms).transpose()));
}

struct BStratificationReport {
    int checked = 0;
    int mismatches = 0;
    std::map<int, int> histogram;  // corank -> count
    bool pass() const { return mismatches == 0 && checked > 0; }
};
/// Fiber coranks on E at random functionals of the vertex subspace: the
/// form on W0-perp vanishes there, so the corank should equal 5 - n.
template <class F>
BStratificationReport e_vertex_check(const F& field, const GMVariety<typename F::Scalar>& x, int samples,
                                     std::mt19937_64& rng) {
    using S = typename F::Scalar;
    BStratificationReport r;
    const Subspace<S> k = kappa_dual_kernel(x);
    if (k.dim() == 0) return r;
    const int expected = static_cast<int>(x.w0perp.cols());
    for (int i = 0; i < samples; ++i) {
        Vec<S> phi;
        do phi = k.basis() * random_matrix<S>(field, k.dim(), 1, rng).col(0);
        while (all_zero(phi));
        const int c = quadric_at(x, base_point_on_e(hyperplane_of(phi))).corank();
        ++r.checked;
        ++r.histogram[c];
        if (c != expected) ++r.mismatches;
    }
    return r;
}


/// Off E: corank of the fiber quadric of gm_from_lagrangian(A, V5, v0)
/// against dim(A cap third power of U5), on random functionals plus any
/// `extra` U5 (given in original coordinates as 6x5 bases).
template <class F>
BStratificationReport b_stratification_check(const F& field, const Subspace<typename F::Scalar>& a,
                                             const Mat<typename F::Scalar>& v5, const Vec<typename F::Scalar>& v0,
                                             int samples, std::mt19937_64& rng,
                                             const std::vector<Mat<typename F::Scalar>>& extra = {}) {
    using S = typename F::Scalar;
    const GMFromLagrangian<S> g = gm_from_lagrangian(a, v5, v0);
    const Mat<S> back = inverse_matrix(g.basis_change);
    BStratificationReport r;
    auto check = [&](const Vec<S>& phi) {
        const BasePoint<S> b = base_point_from_functional(phi);
        const int c = quadric_at(g.x, b).corank();
        const int ell = ydual_stratum(g.adapted, b.u5);
        ++r.checked;
        ++r.histogram[c];
        if (c != ell) ++r.mismatches;
    };
    for (int i = 0; i < samples; ++i) {
        Vec<S> phi;
        do phi = random_matrix<S>(field, 6, 1, rng).col(0);
        while (all_zero(Vec<S>(phi.head(5))));
        check(phi);
    }
    for (const Mat<S>& u5 : extra) {
        const Vec<S> phi = kernel(Mat<S>((back * u5).transpose())).vector(0);
        check(phi);
    }
    return r;
}

}  // namespace gmq
