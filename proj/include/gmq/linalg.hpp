#pragma once

// Dense exact linear algebra over Fp and Q on top of Eigen storage.
// Elimination is written here because Eigen's decompositions pick pivots by
// magnitude, which has no meaning over a finite field.

#include "gmq/field.hpp"

#include <Eigen/Core>

#include <stdexcept>
#include <utility>
#include <vector>

namespace gmq {

template <class S>
using Mat = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
template <class S>
using Vec = Eigen::Matrix<S, Eigen::Dynamic, 1>;

class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An exhaustive computation would exceed its declared budget.
class BudgetError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// First bound entry of a matrix, used to recover the field of literal-only data.
template <class Derived>
typename Derived::Scalar sample_of(const Eigen::MatrixBase<Derived>& m) {
    using S = typename Derived::Scalar;
    if constexpr (std::is_same_v<S, Fp>) {
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            for (Eigen::Index i = 0; i < m.rows(); ++i)
                if (m(i, j).bound()) return m(i, j);
        return Fp(0);
    } else {
        return S(0);
    }
}

/// Exact zero test; Eigen's isZero compares magnitudes, which Fp lacks.
template <class Derived>
bool all_zero(const Eigen::MatrixBase<Derived>& m) {
    for (Eigen::Index j = 0; j < m.cols(); ++j)
        for (Eigen::Index i = 0; i < m.rows(); ++i)
            if (!is_zero(m(i, j))) return false;
    return true;
}

template <class S>
Mat<S> zeros(Eigen::Index r, Eigen::Index c, const S& sample) {
    return Mat<S>::Constant(r, c, like(sample, 0));
}

template <class S>
Mat<S> identity(Eigen::Index n, const S& sample) {
    Mat<S> m = zeros<S>(n, n, sample);
    for (Eigen::Index i = 0; i < n; ++i) m(i, i) = like(sample, 1);
    return m;
}

template <class S>
struct Echelon {
    Mat<S> form;              // reduced row echelon form
    std::vector<int> pivots;  // pivot column of each nonzero row
};

/// Reduced row echelon form by Gauss-Jordan elimination.
template <class Derived>
Echelon<typename Derived::Scalar> rref(const Eigen::MatrixBase<Derived>& input) {
    using S = typename Derived::Scalar;
    Echelon<S> e{input, {}};
    Mat<S>& m = e.form;
    const Eigen::Index rows = m.rows(), cols = m.cols();
    Eigen::Index r = 0;
    for (Eigen::Index c = 0; c < cols && r < rows; ++c) {
        Eigen::Index piv = r;
        while (piv < rows && is_zero(m(piv, c))) ++piv;
        if (piv == rows) continue;
        if (piv != r) m.row(piv).swap(m.row(r));
        S inv = inverse(m(r, c));
        for (Eigen::Index j = c; j < cols; ++j) m(r, j) *= inv;
        for (Eigen::Index i = 0; i < rows; ++i) {
            if (i == r || is_zero(m(i, c))) continue;
            S f = m(i, c);
            for (Eigen::Index j = c; j < cols; ++j) m(i, j) -= f * m(r, j);
        }
        e.pivots.push_back(static_cast<int>(c));
        ++r;
    }
    return e;
}

template <class Derived>
int rank(const Eigen::MatrixBase<Derived>& m) {
    if (m.rows() > m.cols()) return static_cast<int>(rref(m.transpose()).pivots.size());
    return static_cast<int>(rref(m).pivots.size());
}

template <class Derived>
typename Derived::Scalar determinant(const Eigen::MatrixBase<Derived>& input) {
    using S = typename Derived::Scalar;
    if (input.rows() != input.cols()) throw DimensionError("determinant of a non-square matrix");
    Mat<S> m = input;
    const S sample = sample_of(m);
    S det = like(sample, 1);
    const Eigen::Index n = m.rows();
    for (Eigen::Index c = 0; c < n; ++c) {
        Eigen::Index piv = c;
        while (piv < n && is_zero(m(piv, c))) ++piv;
        if (piv == n) return like(sample, 0);
        if (piv != c) {
            m.row(piv).swap(m.row(c));
            det = -det;
        }
        det *= m(c, c);
        S inv = inverse(m(c, c));
        for (Eigen::Index i = c + 1; i < n; ++i) {
            if (is_zero(m(i, c))) continue;
            S f = m(i, c) * inv;
            for (Eigen::Index j = c; j < n; ++j) m(i, j) -= f * m(c, j);
        }
    }
    return det;
}

template <class Derived>
bool is_symmetric(const Eigen::MatrixBase<Derived>& m) {
    if (m.rows() != m.cols()) return false;
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = i + 1; j < m.cols(); ++j)
            if (m(i, j) != m(j, i)) return false;
    return true;
}

template <class Derived>
bool is_skew(const Eigen::MatrixBase<Derived>& m) {
    if (m.rows() != m.cols()) return false;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        if (!is_zero(m(i, i))) return false;
        for (Eigen::Index j = i + 1; j < m.cols(); ++j)
            if (m(i, j) != -m(j, i)) return false;
    }
    return true;
}

/// m01 m23 - m02 m13 + m03 m12.
template <class Derived>
typename Derived::Scalar pfaffian4(const Eigen::MatrixBase<Derived>& m) {
    if (m.rows() != 4 || m.cols() != 4 || !is_skew(m)) throw DimensionError("pfaffian4 needs a 4x4 skew matrix");
    return m(0, 1) * m(2, 3) - m(0, 2) * m(1, 3) + m(0, 3) * m(1, 2);
}

/// Pfaffian of an even skew matrix by expansion along the first row.
template <class S>
S pfaffian(const Mat<S>& m) {
    const Eigen::Index n = m.rows();
    const S sample = sample_of(m);
    if (n == 0) return like(sample, 1);
    if (n % 2) return like(sample, 0);
    S total = like(sample, 0);
    for (Eigen::Index j = 1; j < n; ++j) {
        if (is_zero(m(0, j))) continue;
        std::vector<Eigen::Index> keep;
        for (Eigen::Index k = 1; k < n; ++k)
            if (k != j) keep.push_back(k);
        Mat<S> minor(n - 2, n - 2);
        for (std::size_t a = 0; a < keep.size(); ++a)
            for (std::size_t b = 0; b < keep.size(); ++b) minor(a, b) = m(keep[a], keep[b]);
        S term = m(0, j) * pfaffian(minor);
        total = (j % 2 == 1) ? total + term : total - term;
    }
    return total;
}

template <class Derived>
int symmetric_corank(const Eigen::MatrixBase<Derived>& q) {
    if (!is_symmetric(q)) throw DimensionError("symmetric_corank needs a symmetric matrix");
    return static_cast<int>(q.rows()) - rank(q);
}

/// Subspace of S^n; the basis is kept in reduced column echelon form, so two
/// subspaces are equal exactly when their bases are entrywise equal.
template <class S>
class Subspace {
public:
    Subspace() = default;
    explicit Subspace(int ambient) : ambient_(ambient), basis_(ambient, 0) {}

    /// Span of the columns of `gens` (dependent columns are allowed).
    static Subspace span(const Mat<S>& gens) {
        Subspace s(static_cast<int>(gens.rows()));
        if (gens.cols() == 0) return s;
        Echelon<S> e = rref(gens.transpose());
        const int k = static_cast<int>(e.pivots.size());
        s.basis_ = e.form.topRows(k).transpose();
        s.pivots_ = e.pivots;
        return s;
    }
    static Subspace full(int n, const S& sample) { return span(identity<S>(n, sample)); }

    int ambient_dim() const { return ambient_; }
    int dim() const { return static_cast<int>(basis_.cols()); }
    const Mat<S>& basis() const { return basis_; }
    const std::vector<int>& pivots() const { return pivots_; }
    Vec<S> vector(int j) const { return basis_.col(j); }

    /// Coefficients of v in the canonical basis; throws if v is outside.
    Vec<S> coordinates(const Vec<S>& v) const {
        Vec<S> c(dim());
        for (int j = 0; j < dim(); ++j) c(j) = v(pivots_[j]);
        if (basis_ * c != v) throw DimensionError("vector is not in the subspace");
        return c;
    }
    bool contains(const Vec<S>& v) const {
        if (v.size() != ambient_) throw DimensionError("ambient mismatch");
        Vec<S> c(dim());
        for (int j = 0; j < dim(); ++j) c(j) = v(pivots_[j]);
        return basis_ * c == v;
    }
    bool contains(const Subspace& o) const {
        for (int j = 0; j < o.dim(); ++j)
            if (!contains(Vec<S>(o.basis_.col(j)))) return false;
        return true;
    }
    friend bool operator==(const Subspace& a, const Subspace& b) {
        return a.ambient_ == b.ambient_ && a.dim() == b.dim() && a.basis_ == b.basis_;
    }
    friend bool operator!=(const Subspace& a, const Subspace& b) { return !(a == b); }

private:
    int ambient_ = 0;
    Mat<S> basis_;
    std::vector<int> pivots_;
};

/// Null space of m as a subspace of S^cols.
template <class Derived>
Subspace<typename Derived::Scalar> kernel(const Eigen::MatrixBase<Derived>& m) {
    using S = typename Derived::Scalar;
    const int cols = static_cast<int>(m.cols());
    Echelon<S> e = rref(m);
    const S sample = sample_of(m);
    std::vector<bool> is_pivot(cols, false);
    for (int c : e.pivots) is_pivot[c] = true;
    Mat<S> gens = zeros<S>(cols, cols - static_cast<int>(e.pivots.size()), sample);
    int k = 0;
    for (int f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        gens(f, k) = like(sample, 1);
        for (std::size_t r = 0; r < e.pivots.size(); ++r) gens(e.pivots[r], k) = -e.form(r, f);
        ++k;
    }
    return Subspace<S>::span(gens);
}

template <class S>
Subspace<S> sum(const Subspace<S>& a, const Subspace<S>& b) {
    if (a.ambient_dim() != b.ambient_dim()) throw DimensionError("ambient mismatch in sum");
    Mat<S> g(a.ambient_dim(), a.dim() + b.dim());
    g << a.basis(), b.basis();
    return Subspace<S>::span(g);
}

template <class S>
Subspace<S> intersect(const Subspace<S>& a, const Subspace<S>& b) {
    if (a.ambient_dim() != b.ambient_dim()) throw DimensionError("ambient mismatch in intersect");
    if (a.dim() == 0 || b.dim() == 0) return Subspace<S>(a.ambient_dim());
    Mat<S> g(a.ambient_dim(), a.dim() + b.dim());
    g << a.basis(), -b.basis();
    Subspace<S> k = kernel(g);
    return Subspace<S>::span(a.basis() * k.basis().topRows(a.dim()));
}

/// {x : pairing(s, x) = 0 for all s in sub}, with pairing(u, v) = u^T P v.
template <class S>
Subspace<S> orthogonal(const Subspace<S>& sub, const Mat<S>& pairing) {
    if (sub.dim() == 0) return Subspace<S>::full(static_cast<int>(pairing.cols()), sample_of(pairing));
    return kernel(Mat<S>(sub.basis().transpose() * pairing));
}

/// Restriction of a bilinear form to the column span of `basis`.
template <class S>
Mat<S> restrict_form(const Mat<S>& gram, const Mat<S>& basis) {
    return basis.transpose() * gram * basis;
}

/// Coefficients X with basis * X = targets; `basis` must have independent
/// columns. Throws if some target is outside the column span.
template <class S>
Mat<S> express(const Mat<S>& basis, const Mat<S>& targets) {
    const Eigen::Index k = basis.cols();
    Mat<S> aug(basis.rows(), k + targets.cols());
    aug << basis, targets;
    Echelon<S> e = rref(aug);
    if (static_cast<Eigen::Index>(e.pivots.size()) < k || (k > 0 && e.pivots[k - 1] != k - 1))
        throw DimensionError("express: basis columns are dependent");
    if (static_cast<Eigen::Index>(e.pivots.size()) > k) throw DimensionError("express: target outside the span");
    return e.form.topRightCorner(k, targets.cols());
}

/// Symmetric bilinear form on an explicit basis; q(x) = x^T G x.
template <class S>
class QuadraticSpace {
public:
    QuadraticSpace() = default;
    explicit QuadraticSpace(Mat<S> gram) : gram_(std::move(gram)) {
        if (!is_symmetric(gram_)) throw DimensionError("Gram matrix is not symmetric");
        radical_ = kernel(gram_);
    }
    int dim() const { return static_cast<int>(gram_.rows()); }
    const Mat<S>& gram() const { return gram_; }
    int corank() const { return radical_.dim(); }
    const Subspace<S>& radical() const { return radical_; }
    S value(const Vec<S>& x) const { return x.dot(gram_ * x); }

private:
    Mat<S> gram_;
    Subspace<S> radical_;
};

template <class S, class F>
Mat<S> random_matrix(const F& field, Eigen::Index r, Eigen::Index c, std::mt19937_64& rng) {
    Mat<S> m(r, c);
    for (Eigen::Index j = 0; j < c; ++j)
        for (Eigen::Index i = 0; i < r; ++i) m(i, j) = field.random(rng);
    return m;
}

template <class F>
Mat<typename F::Scalar> random_symmetric(const F& field, Eigen::Index n, std::mt19937_64& rng) {
    Mat<typename F::Scalar> m(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = i; j < n; ++j) m(i, j) = m(j, i) = field.random(rng);
    return m;
}

template <class F>
Mat<typename F::Scalar> random_invertible(const F& field, Eigen::Index n, std::mt19937_64& rng) {
    for (;;) {
        Mat<typename F::Scalar> m = random_matrix<typename F::Scalar>(field, n, n, rng);
        if (rank(m) == n) return m;
    }
}

/// Random subspace of the given dimension inside `ambient`.
template <class F>
Subspace<typename F::Scalar> random_subspace(const F& field, const Subspace<typename F::Scalar>& ambient, int d,
                                             std::mt19937_64& rng) {
    using S = typename F::Scalar;
    if (d > ambient.dim()) throw DimensionError("random_subspace: dimension too large");
    for (;;) {
        Mat<S> c = random_matrix<S>(field, ambient.dim(), d, rng);
        Subspace<S> s = Subspace<S>::span(Mat<S>(ambient.basis() * c));
        if (s.dim() == d) return s;
    }
}

/// Extend the columns of `partial` (independent) to a basis of `ambient`,
/// returning only the added columns.
template <class S>
Mat<S> complete_basis(const Mat<S>& partial, const Subspace<S>& ambient) {
    const S sample = sample_of(ambient.basis());
    Mat<S> cur = partial;
    Mat<S> added = zeros<S>(ambient.ambient_dim(), 0, sample);
    int r = rank(cur);
    for (int j = 0; j < ambient.dim() && r < ambient.dim(); ++j) {
        Mat<S> trial(cur.rows(), cur.cols() + 1);
        trial << cur, ambient.basis().col(j);
        if (rank(trial) > r) {
            cur = trial;
            ++r;
            Mat<S> a2(added.rows(), added.cols() + 1);
            a2 << added, ambient.basis().col(j);
            added = a2;
        }
    }
    return added;
}

}  // namespace gmq
