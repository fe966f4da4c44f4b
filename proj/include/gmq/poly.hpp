#pragma once

// Univariate polynomials over Fp or Q and determinants of polynomial matrices.

#include "gmq/linalg.hpp"

#include <algorithm>
#include <string>
#include <vector>

namespace gmq {

template <class S>
class UniPoly {
public:
    UniPoly() = default;
    explicit UniPoly(std::vector<S> coeffs) : c_(std::move(coeffs)) { trim(); }
    static UniPoly constant(const S& a) { return UniPoly(std::vector<S>{a}); }
    /// a + b t
    static UniPoly linear(const S& a, const S& b) { return UniPoly(std::vector<S>{a, b}); }

    int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
    bool is_zero() const { return c_.empty(); }
    const std::vector<S>& coeffs() const { return c_; }
    S coeff(int i) const { return i < static_cast<int>(c_.size()) ? c_[i] : S(0); }
    S leading() const { return c_.back(); }

    S operator()(const S& t) const {
        S acc = like(t, 0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + *it;
        return acc;
    }

    friend UniPoly operator+(const UniPoly& a, const UniPoly& b) {
        std::vector<S> r(std::max(a.c_.size(), b.c_.size()), S(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] += b.c_[i];
        return UniPoly(std::move(r));
    }
    friend UniPoly operator-(const UniPoly& a, const UniPoly& b) { return a + (-b); }
    UniPoly operator-() const {
        std::vector<S> r = c_;
        for (auto& x : r) x = -x;
        return UniPoly(std::move(r));
    }
    friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
        if (a.is_zero() || b.is_zero()) return UniPoly();
        std::vector<S> r(a.c_.size() + b.c_.size() - 1, S(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        return UniPoly(std::move(r));
    }
    UniPoly& operator+=(const UniPoly& o) { return *this = *this + o; }
    UniPoly& operator-=(const UniPoly& o) { return *this = *this - o; }
    UniPoly& operator*=(const UniPoly& o) { return *this = *this * o; }
    friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const UniPoly& a, const UniPoly& b) { return !(a == b); }

    /// Quotient and remainder; the divisor must be nonzero.
    friend std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b) {
        if (b.is_zero()) throw FieldError("polynomial division by zero");
        std::vector<S> r = a.c_;
        const int db = b.degree();
        if (a.degree() < db) return {UniPoly(), a};
        std::vector<S> q(a.degree() - db + 1, S(0));
        S inv = inverse(b.leading());
        for (int i = a.degree(); i >= db; --i) {
            if (gmq::is_zero(r[i])) continue;
            S f = r[i] * inv;
            q[i - db] = f;
            for (int j = 0; j <= db; ++j) r[i - db + j] -= f * b.c_[j];
        }
        return {UniPoly(std::move(q)), UniPoly(std::move(r))};
    }

    UniPoly derivative() const {
        if (c_.size() <= 1) return UniPoly();
        std::vector<S> r(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * like(c_[i], static_cast<long long>(i));
        return UniPoly(std::move(r));
    }

    UniPoly monic() const {
        if (is_zero()) return *this;
        S inv = inverse(leading());
        std::vector<S> r = c_;
        for (auto& x : r) x *= inv;
        return UniPoly(std::move(r));
    }

    std::string str() const {
        if (is_zero()) return "0";
        std::string s;
        for (int i = degree(); i >= 0; --i) {
            if (gmq::is_zero(c_[i])) continue;
            if (!s.empty()) s += " + ";
            s += to_string(c_[i]);
            if (i) s += (i == 1 ? "*t" : "*t^" + std::to_string(i));
        }
        return s;
    }

private:
    void trim() {
        while (!c_.empty() && gmq::is_zero(c_.back())) c_.pop_back();
    }
    std::vector<S> c_;
};

template <class S>
UniPoly<S> gcd(UniPoly<S> a, UniPoly<S> b) {
    while (!b.is_zero()) {
        auto r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

template <class S>
bool is_squarefree(const UniPoly<S>& f) {
    return gcd(f, f.derivative()).degree() == 0;
}

/// Order of vanishing of f at t0 (f must be nonzero).
template <class S>
int root_multiplicity(UniPoly<S> f, const S& t0) {
    if (f.is_zero()) throw FieldError("multiplicity of the zero polynomial");
    UniPoly<S> lin = UniPoly<S>::linear(-t0, like(t0, 1));
    int m = 0;
    for (;;) {
        auto [q, r] = divmod(f, lin);
        if (!r.is_zero()) return m;
        f = q;
        ++m;
    }
}

/// Newton interpolation through (x_i, y_i) with distinct x_i.
template <class S>
UniPoly<S> interpolate(const std::vector<S>& xs, const std::vector<S>& ys) {
    const std::size_t n = xs.size();
    std::vector<S> dd = ys;
    for (std::size_t k = 1; k < n; ++k)
        for (std::size_t i = n - 1; i >= k; --i) {
            dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - k]);
            if (i == k) break;
        }
    UniPoly<S> result;
    UniPoly<S> basis = UniPoly<S>::constant(like(xs.empty() ? S(0) : xs[0], 1));
    for (std::size_t k = 0; k < n; ++k) {
        result += basis * UniPoly<S>::constant(dd[k]);
        basis *= UniPoly<S>::linear(-xs[k], like(xs[k], 1));
    }
    return result;
}

template <class S>
using PolyMat = Eigen::Matrix<UniPoly<S>, Eigen::Dynamic, Eigen::Dynamic>;

/// Degree bound for det: the smaller of the row-wise and column-wise sums of
/// maximal entry degrees.
template <class S>
int det_degree_bound(const PolyMat<S>& m) {
    int by_col = 0, by_row = 0;
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
        int d = 0;
        for (Eigen::Index i = 0; i < m.rows(); ++i) d = std::max(d, m(i, j).degree());
        by_col += d;
    }
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        int d = 0;
        for (Eigen::Index j = 0; j < m.cols(); ++j) d = std::max(d, m(i, j).degree());
        by_row += d;
    }
    return std::min(by_col, by_row);
}

enum class DetMethod { Auto, Interpolation, Bareiss };

/// Fraction-free Bareiss elimination over S[t]; every division is exact.
template <class S>
UniPoly<S> poly_det_bareiss(PolyMat<S> m, const S& sample) {
    const Eigen::Index n = m.rows();
    if (n != m.cols()) throw DimensionError("poly_det of a non-square matrix");
    UniPoly<S> one = UniPoly<S>::constant(like(sample, 1));
    if (n == 0) return one;
    UniPoly<S> prev = one;
    bool negate = false;
    for (Eigen::Index k = 0; k < n - 1; ++k) {
        if (m(k, k).is_zero()) {
            Eigen::Index piv = k + 1;
            while (piv < n && m(piv, k).is_zero()) ++piv;
            if (piv == n) return UniPoly<S>();
            m.row(piv).swap(m.row(k));
            negate = !negate;
        }
        for (Eigen::Index i = k + 1; i < n; ++i) {
            for (Eigen::Index j = k + 1; j < n; ++j) {
                UniPoly<S> num = m(k, k) * m(i, j) - m(i, k) * m(k, j);
                auto [q, r] = divmod(num, prev);
                if (!r.is_zero()) throw FieldError("Bareiss division was not exact");
                m(i, j) = q;
            }
            m(i, k) = UniPoly<S>();
        }
        prev = m(k, k);
    }
    UniPoly<S> d = m(n - 1, n - 1);
    return negate ? -d : d;
}

/// Evaluate at degree-bound + 1 points and interpolate. `points` supplies the
/// evaluation nodes; throws if there are not enough of them.
template <class S>
UniPoly<S> poly_det_interpolation(const PolyMat<S>& m, const std::vector<S>& points) {
    const int bound = det_degree_bound(m);
    if (static_cast<int>(points.size()) < bound + 1) throw FieldError("field too small for interpolation");
    std::vector<S> xs(points.begin(), points.begin() + bound + 1), ys;
    for (const S& t : xs) {
        Mat<S> v(m.rows(), m.cols());
        for (Eigen::Index i = 0; i < m.rows(); ++i)
            for (Eigen::Index j = 0; j < m.cols(); ++j) v(i, j) = m(i, j)(t);
        ys.push_back(determinant(v));
    }
    return interpolate(xs, ys);
}

template <class F>
std::vector<typename F::Scalar> interpolation_nodes(const F& field, int count) {
    std::vector<typename F::Scalar> xs;
    if constexpr (F::finite)
        for (std::uint64_t i = 0; i < field.order() && static_cast<int>(xs.size()) < count; ++i)
            xs.push_back(field.element(i));
    else
        for (int i = 0; i < count; ++i) xs.push_back(field(i));
    return xs;
}

/// Determinant of a polynomial matrix. Auto picks interpolation when the field
/// has enough points and falls back to Bareiss otherwise.
template <class F>
UniPoly<typename F::Scalar> poly_det(const F& field, const PolyMat<typename F::Scalar>& m,
                                     DetMethod method = DetMethod::Auto) {
    if (m.rows() != m.cols()) throw DimensionError("poly_det of a non-square matrix");
    const int need = det_degree_bound(m) + 1;
    if (method == DetMethod::Bareiss) return poly_det_bareiss(m, field(1));
    auto nodes = interpolation_nodes(field, need);
    if (method == DetMethod::Auto && static_cast<int>(nodes.size()) < need) return poly_det_bareiss(m, field(1));
    return poly_det_interpolation(m, nodes);
}

}  // namespace gmq

namespace Eigen {
template <class S>
struct NumTraits<gmq::UniPoly<S>> : GenericNumTraits<gmq::UniPoly<S>> {
    using Real = gmq::UniPoly<S>;
    using NonInteger = gmq::UniPoly<S>;
    using Literal = gmq::UniPoly<S>;
    using Nested = gmq::UniPoly<S>;
    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 1,
        AddCost = 10,
        MulCost = 50
    };
};
}  // namespace Eigen
