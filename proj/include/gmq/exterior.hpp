#pragma once

// Exterior powers of V = k^d (d <= 6) in the lexicographic basis of k-subsets.
// The top form e_0 ^ ... ^ e_{d-1} is trivialized to 1; every identification
// below (top coefficient, forms from trivectors, the V5 value of w ^ w')
// inherits that scale.

#include "gmq/linalg.hpp"

#include <array>
#include <cstdint>
#include <initializer_list>
#include <vector>

namespace gmq {

/// Index tables for the exterior algebra of a d-dimensional space.
class ExteriorContext {
public:
    explicit ExteriorContext(int d);

    int dim() const { return d_; }
    int size(int k) const { return static_cast<int>(subsets_[k].size()); }
    /// Bitmask of the i-th k-subset.
    std::uint32_t subset(int k, int i) const { return subsets_[k][i]; }
    /// Position of a subset bitmask inside its degree.
    int index(std::uint32_t mask) const { return index_[mask]; }
    std::vector<int> elements(int k, int i) const;

    /// Sign of e_A ^ e_B relative to e_{A u B}; 0 if A and B overlap.
    static int wedge_sign(std::uint32_t a, std::uint32_t b);

private:
    int d_;
    std::array<std::vector<std::uint32_t>, 7> subsets_;
    std::vector<int> index_;
};

const ExteriorContext& exterior(int d);

template <class S>
struct MultiVector {
    int space_dim = 0;
    int degree = 0;
    Vec<S> coords;

    S top() const { return coords(0); }
};

template <class S>
MultiVector<S> basis_multivector(int d, std::initializer_list<int> idx, const S& sample) {
    const ExteriorContext& ctx = exterior(d);
    std::uint32_t mask = 0;
    for (int i : idx) mask |= 1u << i;
    const int k = static_cast<int>(idx.size());
    MultiVector<S> m{d, k, Vec<S>::Constant(ctx.size(k), like(sample, 0))};
    m.coords(ctx.index(mask)) = like(sample, 1);
    return m;
}

/// Embed a vector of V as a degree-1 multivector.
template <class S>
MultiVector<S> as_multivector(const Vec<S>& v) {
    return MultiVector<S>{static_cast<int>(v.size()), 1, v};
}

template <class S>
MultiVector<S> wedge(const MultiVector<S>& a, const MultiVector<S>& b) {
    if (a.space_dim != b.space_dim) throw DimensionError("wedge of multivectors over different spaces");
    const int d = a.space_dim, k = a.degree + b.degree;
    if (k > d) throw DimensionError("wedge degree exceeds the dimension");
    const ExteriorContext& ctx = exterior(d);
    const S sample = either(sample_of(a.coords), sample_of(b.coords));
    MultiVector<S> r{d, k, Vec<S>::Constant(ctx.size(k), like(sample, 0))};
    for (int i = 0; i < ctx.size(a.degree); ++i) {
        if (is_zero(a.coords(i))) continue;
        const std::uint32_t ma = ctx.subset(a.degree, i);
        for (int j = 0; j < ctx.size(b.degree); ++j) {
            if (is_zero(b.coords(j))) continue;
            const std::uint32_t mb = ctx.subset(b.degree, j);
            const int s = ExteriorContext::wedge_sign(ma, mb);
            if (!s) continue;
            S term = a.coords(i) * b.coords(j);
            S& slot = r.coords(ctx.index(ma | mb));
            slot = s > 0 ? slot + term : slot - term;
        }
    }
    return r;
}

/// u1 ^ ... ^ uk for vectors of V.
template <class S>
MultiVector<S> wedge_vectors(const std::vector<Vec<S>>& vs) {
    if (vs.empty()) throw DimensionError("empty wedge");
    MultiVector<S> r = as_multivector(vs[0]);
    for (std::size_t i = 1; i < vs.size(); ++i) r = wedge(r, as_multivector(vs[i]));
    return r;
}

/// Matrix of x -> v ^ x from the degree-j part to degree (deg v + j).
template <class S>
Mat<S> wedge_matrix(const MultiVector<S>& v, int j) {
    const ExteriorContext& ctx = exterior(v.space_dim);
    const S sample = sample_of(v.coords);
    Mat<S> m = zeros<S>(ctx.size(v.degree + j), ctx.size(j), sample);
    for (int c = 0; c < ctx.size(j); ++c) {
        const std::uint32_t mc = ctx.subset(j, c);
        for (int i = 0; i < ctx.size(v.degree); ++i) {
            if (is_zero(v.coords(i))) continue;
            const std::uint32_t mi = ctx.subset(v.degree, i);
            const int s = ExteriorContext::wedge_sign(mi, mc);
            if (!s) continue;
            S& slot = m(ctx.index(mi | mc), c);
            slot = s > 0 ? slot + v.coords(i) : slot - v.coords(i);
        }
    }
    return m;
}

/// Matrix of the induced map on the k-th exterior power: column I is
/// M e_i1 ^ ... ^ M e_ik.
template <class S>
Mat<S> exterior_power_matrix(const Mat<S>& m, int k) {
    if (m.rows() != m.cols()) throw DimensionError("exterior_power_matrix needs a square matrix");
    const int d = static_cast<int>(m.rows());
    const ExteriorContext& ctx = exterior(d);
    Mat<S> out(ctx.size(k), ctx.size(k));
    for (int c = 0; c < ctx.size(k); ++c) {
        std::vector<Vec<S>> cols;
        for (int i : ctx.elements(k, c)) cols.push_back(m.col(i));
        out.col(c) = wedge_vectors(cols).coords;
    }
    return out;
}

/// Span of all u_a ^ u_b ^ u_c for a basis of `u` (columns), inside the third power.
template <class S>
Mat<S> third_power_span(const Mat<S>& u) {
    const int k = static_cast<int>(u.cols());
    const ExteriorContext& small = exterior(k);
    Mat<S> out(exterior(static_cast<int>(u.rows())).size(3), small.size(3));
    for (int c = 0; c < small.size(3); ++c) {
        std::vector<Vec<S>> cols;
        for (int i : small.elements(3, c)) cols.push_back(u.col(i));
        out.col(c) = wedge_vectors(cols).coords;
    }
    return out;
}

/// Second-power analogue of third_power_span.
template <class S>
Mat<S> second_power_span(const Mat<S>& u) {
    const int k = static_cast<int>(u.cols());
    const ExteriorContext& small = exterior(k);
    Mat<S> out(exterior(static_cast<int>(u.rows())).size(2), small.size(2));
    for (int c = 0; c < small.size(2); ++c) {
        std::vector<int> e = small.elements(2, c);
        out.col(c) = wedge_vectors<S>({u.col(e[0]), u.col(e[1])}).coords;
    }
    return out;
}

/// Gram matrix of (a, b) -> top(a ^ b) on degree p x degree (d - p).
template <class S>
Mat<S> top_pairing(int d, int p, const S& sample) {
    const ExteriorContext& ctx = exterior(d);
    const std::uint32_t full = (1u << d) - 1;
    Mat<S> g = zeros<S>(ctx.size(p), ctx.size(d - p), sample);
    for (int i = 0; i < ctx.size(p); ++i) {
        const std::uint32_t mi = ctx.subset(p, i);
        g(i, ctx.index(full & ~mi)) = like(sample, ExteriorContext::wedge_sign(mi, full & ~mi));
    }
    return g;
}

/// 20 x 20 Gram matrix of the wedge pairing on the third power of V6.
template <class S>
Mat<S> symplectic_gram(const S& sample) {
    return top_pairing<S>(6, 3, sample);
}

template <class S>
S symplectic_pairing(const MultiVector<S>& a, const MultiVector<S>& b) {
    if (a.space_dim != 6 || b.space_dim != 6 || a.degree != 3 || b.degree != 3)
        throw DimensionError("symplectic_pairing needs two trivectors of V6");
    return wedge(a, b).top();
}

/// v is decomposable iff x -> v ^ x has rank 3 on V6.
template <class S>
bool is_decomposable(const MultiVector<S>& v) {
    if (v.degree != 3 || v.space_dim != 6) throw DimensionError("is_decomposable needs a trivector of V6");
    if (all_zero(v.coords)) throw DimensionError("is_decomposable of the zero vector");
    return rank(wedge_matrix(v, 1)) == 3;
}

template <class S>
bool is_decomposable(const Vec<S>& coords) {
    return is_decomposable(MultiVector<S>{6, 3, coords});
}

/// Gram matrix of the Plücker form B_v(x, y) = top(v ^ x ^ y) / 2 on the second
/// power of V5, so that q_v(x) = B_v(x, x). With `with_k` a leading coordinate
/// for the vertex direction is added, lying in the radical.
template <class S>
Mat<S> plucker_gram(const Vec<S>& v, bool with_k = false) {
    if (v.size() != 5) throw DimensionError("plucker_gram needs a vector of V5");
    const S sample = sample_of(v);
    const S half = inverse(like(sample, 2));
    Mat<S> b = wedge_matrix(as_multivector(v), 2);     // 10 x 10, lands in degree 3
    Mat<S> g = top_pairing<S>(5, 3, sample);  // degree 3 x degree 2
    Mat<S> gram = (b.transpose() * g) * half;
    const int off = with_k ? 1 : 0;
    Mat<S> out = zeros<S>(10 + off, 10 + off, sample);
    out.bottomRightCorner(10, 10) = gram;
    return out;
}

/// Skew 5 x 5 matrix M_ij = top(t ^ e_i ^ e_j) of the 2-form attached to a
/// trivector of V5.
template <class S>
Mat<S> skew_form_of(const Vec<S>& trivector) {
    const ExteriorContext& ctx = exterior(5);
    const S sample = sample_of(trivector);
    Mat<S> m = zeros<S>(5, 5, sample);
    for (int t = 0; t < ctx.size(3); ++t) {
        if (is_zero(trivector(t))) continue;
        const std::uint32_t mt = ctx.subset(3, t);
        const std::uint32_t rest = 31u & ~mt;
        int a = -1, b = -1;
        for (int i = 0; i < 5; ++i)
            if (rest >> i & 1) (a < 0 ? a : b) = i;
        const int s = ExteriorContext::wedge_sign(mt, rest);
        m(a, b) += s > 0 ? trivector(t) : -trivector(t);
        m(b, a) = -m(a, b);
    }
    return m;
}

/// Value in V5 of w1 ^ w2 for skew forms given as 5 x 5 matrices, through the
/// identification of the fourth power of V5-dual with V5 by the top form.
template <class S>
Vec<S> two_form_wedge(const Mat<S>& w1, const Mat<S>& w2) {
    const ExteriorContext& ctx = exterior(5);
    auto as_mv = [&](const Mat<S>& w) {
        MultiVector<S> m{5, 2, Vec<S>(10)};
        for (int i = 0; i < 10; ++i) {
            std::vector<int> e = ctx.elements(2, i);
            m.coords(i) = w(e[0], e[1]);
        }
        return m;
    };
    MultiVector<S> w = wedge(as_mv(w1), as_mv(w2));
    Vec<S> v(5);
    for (int m = 0; m < 5; ++m) {
        S c = w.coords(ctx.index(31u & ~(1u << m)));
        v(m) = (m % 2) ? -c : c;
    }
    return v;
}

/// kappa(w) = w ^ w as a vector of V5; it spans the kernel of a rank-4 form.
template <class S>
Vec<S> kappa(const Mat<S>& w) {
    if (w.rows() != 5 || !is_skew(w)) throw DimensionError("kappa needs a skew 5x5 form");
    Vec<S> k = two_form_wedge(w, w);
    if (all_zero(k)) throw DimensionError("kappa of a form of rank at most 2");
    return k;
}

/// Matrix of the linear extension of kappa to the symmetric square, columns
/// ordered (0,0), (0,1), ..., (0,m-1), (1,1), ... . Column (i,j) is w_i ^ w_j.
template <class S>
Mat<S> kappa_tilde(const std::vector<Mat<S>>& forms) {
    const int m = static_cast<int>(forms.size());
    if (m == 0) throw DimensionError("kappa_tilde of an empty family");
    Mat<S> k(5, m * (m + 1) / 2);
    int col = 0;
    for (int i = 0; i < m; ++i)
        for (int j = i; j < m; ++j) k.col(col++) = two_form_wedge(forms[i], forms[j]);
    return k;
}

/// Symmetric matrix of a symmetric-square element given in kappa_tilde's
/// column order: diagonal entries c_ii, off-diagonal c_ij / 2.
template <class S>
Mat<S> symmetric_tensor_matrix(const Vec<S>& c, int m) {
    const S sample = sample_of(c);
    const S half = inverse(like(sample, 2));
    Mat<S> s(m, m);
    int col = 0;
    for (int i = 0; i < m; ++i)
        for (int j = i; j < m; ++j, ++col) {
            if (i == j) s(i, i) = c(col);
            else s(i, j) = s(j, i) = c(col) * half;
        }
    return s;
}

/// The dual map: the quadratic form on the span of `forms` given by
/// (w_i, w_j) -> phi(w_i ^ w_j).
template <class S>
Mat<S> kappa_tilde_dual(const std::vector<Mat<S>>& forms, const Vec<S>& phi) {
    const int m = static_cast<int>(forms.size());
    Mat<S> g(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = i; j < m; ++j) g(i, j) = g(j, i) = phi.dot(two_form_wedge(forms[i], forms[j]));
    return g;
}

}  // namespace gmq
