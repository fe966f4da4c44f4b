#include "gmq/ogr.hpp"

#include "gmq/epw.hpp"
#include "gmq/kernels.hpp"

#include <algorithm>
#include <atomic>
#include <sstream>
#include <thread>

namespace gmq {

int ogr_N(int n, int p) { return p * (n + 1 - p) - p * (p + 1) / 2; }

int ogr_delta(int c, int ell) {
    const int s = c + ell;
    const int m = std::max(0, s >= 0 ? s / 2 : -((-s + 1) / 2));
    return m * (m + 1) / 2;
}

IntPoly IntPoly::monomial(std::int64_t a, int d) {
    IntPoly r;
    r.c.assign(static_cast<std::size_t>(d) + 1, 0);
    r.c[d] = a;
    return r;
}

int IntPoly::degree() const {
    for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i)
        if (c[i] != 0) return i;
    return -1;
}

std::int64_t IntPoly::operator()(std::int64_t q) const {
    std::int64_t v = 0;
    for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i) v = v * q + c[i];
    return v;
}

IntPoly IntPoly::operator+(const IntPoly& o) const {
    IntPoly r;
    r.c.assign(std::max(c.size(), o.c.size()), 0);
    for (std::size_t i = 0; i < c.size(); ++i) r.c[i] += c[i];
    for (std::size_t i = 0; i < o.c.size(); ++i) r.c[i] += o.c[i];
    return r;
}

IntPoly IntPoly::operator*(const IntPoly& o) const {
    IntPoly r;
    if (c.empty() || o.c.empty()) return r;
    r.c.assign(c.size() + o.c.size() - 1, 0);
    for (std::size_t i = 0; i < c.size(); ++i)
        for (std::size_t j = 0; j < o.c.size(); ++j) r.c[i + j] += c[i] * o.c[j];
    return r;
}

bool IntPoly::operator==(const IntPoly& o) const {
    const std::size_t n = std::max(c.size(), o.c.size());
    for (std::size_t i = 0; i < n; ++i) {
        const std::int64_t a = i < c.size() ? c[i] : 0, b = i < o.c.size() ? o.c[i] : 0;
        if (a != b) return false;
    }
    return true;
}

std::string IntPoly::str() const {
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        if (c[i] == 0) continue;
        const std::int64_t a = c[i];
        os << (first ? (a < 0 ? "-" : "") : (a < 0 ? " - " : " + "));
        const std::int64_t m = a < 0 ? -a : a;
        if (m != 1 || i == 0) os << m;
        if (i > 0) os << "q" << (i > 1 ? "^" + std::to_string(i) : "");
        first = false;
    }
    return first ? "0" : os.str();
}

IntPoly gaussian_binomial_poly(int n, int k) {
    if (k < 0 || k > n) return IntPoly{};
    if (k == 0 || k == n) return IntPoly::monomial(1, 0);
    return gaussian_binomial_poly(n - 1, k - 1) + IntPoly::monomial(1, k) * gaussian_binomial_poly(n - 1, k);
}

Mat<Fp> split_form(const PrimeField& field, int n, int c) {
    const int dim = n + 1;
    if (c < 0 || c > dim) throw DimensionError("corank out of range");
    Mat<Fp> g = zeros<Fp>(dim, dim, field(0));
    const int r = dim - c;
    for (int h = 0; h + 1 < r; h += 2) g(h, h + 1) = g(h + 1, h) = field(1);
    if (r % 2) g(r - 1, r - 1) = field(1);
    return g;
}

namespace {

// Isotropic k-subspaces of a nondegenerate split form of dimension r.
IntPoly nondegenerate_count(int r, int k) {
    if (k == 0) return IntPoly::monomial(1, 0);
    const int m = r / 2;
    if (k > m) return IntPoly{};
    IntPoly out = gaussian_binomial_poly(m, k);
    for (int i = 0; i < k; ++i) {
        const int e = (r % 2 == 0) ? m - 1 - i : m - i;
        out = out * (IntPoly::monomial(1, e) + IntPoly::monomial(1, 0));
    }
    return out;
}

}  // namespace

IntPoly ogr_count_polynomial(int n, int c, int p) {
    const int r = n + 1 - c;
    IntPoly total;
    for (int i = 0; i <= std::min(p, c); ++i) {
        const IntPoly lifted = nondegenerate_count(r, p - i);
        if (lifted.degree() < 0) continue;
        total = total + gaussian_binomial_poly(c, i) * IntPoly::monomial(1, (p - i) * (c - i)) * lifted;
    }
    return total;
}

namespace {

using raw::mulmod;

struct Enumerator {
    int dim = 0, target = 0;
    std::uint32_t p = 0;
    std::vector<std::uint32_t> g;  // row-major Gram
    std::uint64_t budget = 0;
    std::atomic<std::uint64_t>* nodes = nullptr;
    bool keep = false;

    std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
        const std::uint32_t s = a + b;
        return s >= p ? s - p : s;
    }
    std::uint32_t neg(std::uint32_t a) const { return a ? p - a : 0; }

    // (G r)_j for a row r.
    std::uint32_t gdot(const std::vector<std::uint32_t>& r, int j) const {
        std::uint64_t s = 0;
        for (int k = 0; k < dim; ++k) s += static_cast<std::uint64_t>(g[j * dim + k]) * r[k];
        return static_cast<std::uint32_t>(s % p);
    }
    std::uint32_t qval(const std::vector<std::uint32_t>& x) const {
        std::uint64_t s = 0;
        for (int i = 0; i < dim; ++i) {
            if (!x[i]) continue;
            s += static_cast<std::uint64_t>(x[i]) * gdot(x, i);
            s %= p;
        }
        return static_cast<std::uint32_t>(s);
    }

    // All vectors e_j + sum over free columns orthogonal to `rows`; calls f on
    // each. Returns false if f asked to stop.
    template <class Fn>
    void candidates(const std::vector<std::vector<std::uint32_t>>& rows, const std::vector<int>& used, int j,
                    Fn&& f) const {
        std::vector<int> free;
        for (int k = j + 1; k < dim; ++k)
            if (std::find(used.begin(), used.end(), k) == used.end()) free.push_back(k);
        const int nf = static_cast<int>(free.size()), nr = static_cast<int>(rows.size());
        // Augmented system: sum_f t_f (G r)_f = -(G r)_j.
        std::vector<std::uint32_t> m(static_cast<std::size_t>(nr) * (nf + 1));
        for (int a = 0; a < nr; ++a) {
            for (int b = 0; b < nf; ++b) m[a * (nf + 1) + b] = gdot(rows[a], free[b]);
            m[a * (nf + 1) + nf] = neg(gdot(rows[a], j));
        }
        std::vector<int> piv;
        int rk = 0;
        for (int col = 0; col < nf && rk < nr; ++col) {
            int sel = rk;
            while (sel < nr && m[sel * (nf + 1) + col] == 0) ++sel;
            if (sel == nr) continue;
            for (int k = 0; k <= nf; ++k) std::swap(m[sel * (nf + 1) + k], m[rk * (nf + 1) + k]);
            const std::uint32_t inv = raw::invmod(m[rk * (nf + 1) + col], p);
            for (int k = 0; k <= nf; ++k) m[rk * (nf + 1) + k] = mulmod(m[rk * (nf + 1) + k], inv, p);
            for (int a = 0; a < nr; ++a) {
                if (a == rk || m[a * (nf + 1) + col] == 0) continue;
                const std::uint32_t fct = m[a * (nf + 1) + col];
                for (int k = 0; k <= nf; ++k)
                    m[a * (nf + 1) + k] = add(m[a * (nf + 1) + k], neg(mulmod(fct, m[rk * (nf + 1) + k], p)));
            }
            piv.push_back(col);
            ++rk;
        }
        for (int a = rk; a < nr; ++a)
            if (m[a * (nf + 1) + nf] != 0) return;  // inconsistent
        std::vector<int> params;
        for (int b = 0; b < nf; ++b)
            if (std::find(piv.begin(), piv.end(), b) == piv.end()) params.push_back(b);
        std::vector<std::uint32_t> t(nf, 0), digit(params.size(), 0), x(dim, 0);
        for (;;) {
            for (std::size_t k = 0; k < params.size(); ++k) t[params[k]] = digit[k];
            for (int a = 0; a < rk; ++a) {
                std::uint32_t v = m[a * (nf + 1) + nf];
                for (int b : params) v = add(v, neg(mulmod(m[a * (nf + 1) + b], t[b], p)));
                t[piv[a]] = v;
            }
            std::fill(x.begin(), x.end(), 0u);
            x[j] = 1;
            for (int b = 0; b < nf; ++b) x[free[b]] = t[b];
            if (nodes->fetch_add(1, std::memory_order_relaxed) + 1 > budget)
                throw BudgetError("isotropic enumeration exceeded its budget");
            if (qval(x) == 0) f(x);
            std::size_t d = 0;
            while (d < digit.size() && ++digit[d] == p) digit[d++] = 0;
            if (d == digit.size()) break;
        }
    }

    void extend(std::vector<std::vector<std::uint32_t>>& rows, std::vector<int>& used, std::uint64_t& count,
                std::vector<std::vector<std::vector<std::uint32_t>>>* out) const {
        const int left = target - static_cast<int>(rows.size());
        if (left == 0) {
            ++count;
            if (keep && out) out->push_back(rows);
            return;
        }
        const int top = used.empty() ? dim : used.back();
        for (int j = left - 1; j < top; ++j) {
            candidates(rows, used, j, [&](const std::vector<std::uint32_t>& x) {
                rows.push_back(x);
                used.push_back(j);
                extend(rows, used, count, out);
                rows.pop_back();
                used.pop_back();
            });
        }
    }
};

}  // namespace

IsotropicEnumeration enumerate_isotropic(const QuadraticSpace<Fp>& qs, int p, const EnumerateOptions& opt) {
    const Mat<Fp>& gram = qs.gram();
    const int dim = qs.dim();
    const Fp sample = sample_of(gram);
    if (!sample.bound()) throw DimensionError("enumerate_isotropic needs a bound field element");
    const std::uint32_t q = sample.modulus();
    if (q == 2) throw DimensionError("characteristic 2 is not supported");
    IsotropicEnumeration out;
    out.summary.p = p;
    out.summary.q = q;
    if (p < 0 || p > dim) return out;
    std::atomic<std::uint64_t> nodes{0};
    Enumerator e;
    e.dim = dim;
    e.target = p;
    e.p = q;
    e.g = raw::to_residues(gram);
    e.budget = opt.budget;
    e.nodes = &nodes;
    e.keep = opt.keep;

    using Rows = std::vector<std::vector<std::uint32_t>>;
    auto to_mat = [&](const Rows& rows) {
        Mat<Fp> m(static_cast<Eigen::Index>(rows.size()), dim);
        // Rows were found from the last pivot down; list them top-down.
        for (std::size_t i = 0; i < rows.size(); ++i)
            for (int k = 0; k < dim; ++k) m(static_cast<Eigen::Index>(i), k) = Fp(rows[rows.size() - 1 - i][k], q);
        return m;
    };

    if (p == 0) {
        out.summary.count = 1;
        if (opt.keep) out.subspaces.push_back(Mat<Fp>(0, dim));
        return out;
    }

    // First rows (largest pivot) define independent subtrees.
    std::vector<std::pair<int, std::vector<std::uint32_t>>> first;
    {
        Rows none;
        std::vector<int> used;
        for (int j = p - 1; j < dim; ++j)
            e.candidates(none, used, j, [&](const std::vector<std::uint32_t>& x) { first.emplace_back(j, x); });
    }
    const int threads = std::max(1, std::min<int>(opt.threads > 0 ? opt.threads : configured_threads(),
                                                  static_cast<int>(first.size())));
    std::vector<std::uint64_t> counts(first.size(), 0);
    std::vector<std::vector<Rows>> lists(first.size());
    std::vector<std::exception_ptr> errors(threads);
    auto work = [&](int t) {
        try {
            for (std::size_t i = t; i < first.size(); i += threads) {
                Rows rows{first[i].second};
                std::vector<int> used{first[i].first};
                e.extend(rows, used, counts[i], &lists[i]);
            }
        } catch (...) {
            errors[t] = std::current_exception();
        }
    };
    if (threads == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(work, t);
        for (auto& th : pool) th.join();
    }
    for (auto& err : errors)
        if (err) std::rethrow_exception(err);
    for (std::size_t i = 0; i < first.size(); ++i) {
        out.summary.count += counts[i];
        for (const Rows& r : lists[i]) out.subspaces.push_back(to_mat(r));
    }
    out.nodes = nodes.load();
    if (opt.keep && 2 * p == dim && qs.corank() == 0 && out.summary.count > 0)
        out.summary.families = maximal_family_parity(out.subspaces, p);
    return out;
}

std::pair<std::uint64_t, std::uint64_t> maximal_family_parity(const std::vector<Mat<Fp>>& maximal, int p) {
    if (maximal.empty()) return {0, 0};
    auto meet = [&](const Mat<Fp>& a, const Mat<Fp>& b) {
        Mat<Fp> s(a.rows() + b.rows(), a.cols());
        s << a, b;
        return 2 * p - rank(s);
    };
    std::vector<int> cls(maximal.size());
    for (std::size_t i = 0; i < maximal.size(); ++i) cls[i] = (meet(maximal[0], maximal[i]) - p) % 2 == 0 ? 0 : 1;
    for (std::size_t i = 0; i < maximal.size(); ++i)
        for (std::size_t j = i + 1; j < maximal.size(); ++j) {
            const bool same = (meet(maximal[i], maximal[j]) - p) % 2 == 0;
            if (same != (cls[i] == cls[j])) throw std::logic_error("parity relation is not transitive");
        }
    const auto a = static_cast<std::uint64_t>(std::count(cls.begin(), cls.end(), 0));
    return {a, maximal.size() - a};
}

DimensionEstimate dimension_estimate(int n, int c, int p, const std::vector<std::uint32_t>& qs,
                                     const EnumerateOptions& opt) {
    DimensionEstimate d;
    d.n = n;
    d.c = c;
    d.p = p;
    d.ell = ogr_ell(n, p);
    d.polynomial = ogr_count_polynomial(n, c, p);
    d.degree = d.polynomial.degree();
    d.expected = c >= d.ell ? ogr_N(n, p) + ogr_delta(c, d.ell) : -1;
    if (qs.size() < 2) throw FitError("dimension_estimate needs at least two fields");
    for (std::uint32_t q : qs) {
        const PrimeField f(q);
        const std::uint64_t got = enumerate_isotropic(QuadraticSpace<Fp>(split_form(f, n, c)), p, opt).summary.count;
        d.counts.emplace_back(q, got);
        const std::int64_t want = d.polynomial(static_cast<std::int64_t>(q));
        if (static_cast<std::int64_t>(got) != want)
            throw FitError("count " + std::to_string(got) + " over F_" + std::to_string(q) +
                           " disagrees with the cell polynomial value " + std::to_string(want));
    }
    return d;
}

FiberProfile classify_count(std::uint64_t count, std::uint64_t q) {
    FiberProfile f;
    f.count = count;
    if (count == 2) {
        f.tag = "two points";
    } else if (count == 2 * (q + 1)) {
        f.tag = "two lines";
    } else if (count == 2 * (q * q * q + q * q + q + 1) - 1) {
        f.tag = "two P3 meeting in a point";
    } else {
        std::uint64_t s = 1, pw = 1;
        for (int m = 0; m <= 40 && s <= count; ++m) {
            if (s == count) {
                f.tag = "P" + std::to_string(m);
                f.m = m;
                return f;
            }
            pw *= q;
            s += pw;
        }
        throw FitError("count " + std::to_string(count) + " matches no fiber profile");
    }
    return f;
}

FiberProfile fiber_profile(const QuadraticSpace<Fp>& qs, int p, const EnumerateOptions& opt) {
    const IsotropicEnumeration e = enumerate_isotropic(qs, p, opt);
    return classify_count(e.summary.count, e.summary.q);
}

std::string ogr_csv(const std::vector<OGrTableRow>& rows) {
    std::ostringstream os;
    os << "n,c,p,q,count,expected_dim\n";
    for (const OGrTableRow& r : rows)
        os << r.n << ',' << r.c << ',' << r.p << ',' << r.q << ',' << r.count << ',' << r.expected_dim << '\n';
    return os.str();
}

}  // namespace gmq
