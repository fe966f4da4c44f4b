#include "gmq/epw.hpp"

#include "gmq/digest.hpp"

#include "json.hpp"

#include <algorithm>
#include <array>

#include <cstdlib>
#include <set>
#include <thread>

namespace gmq {

std::string locus_name(Locus l) {
    switch (l) {
        case Locus::Y: return "Y";
        case Locus::Ydual: return "Ydual";
        case Locus::Z: return "Z";
    }
    return "?";
}

Locus parse_locus(const std::string& s) {
    if (s == "Y" || s == "y") return Locus::Y;
    if (s == "Ydual" || s == "ydual" || s == "dual") return Locus::Ydual;
    if (s == "Z" || s == "z") return Locus::Z;
    throw std::invalid_argument("unknown locus '" + s + "' (expected Y, Ydual or Z)");
}

std::uint64_t projective_points(int n, std::uint64_t q) {
    std::uint64_t s = 0;
    for (int i = 0; i < n; ++i) s = s * q + 1;
    return s;
}

std::uint64_t gaussian_binomial(int n, int k, std::uint64_t q) {
    if (k < 0 || k > n) return 0;
    // prod (q^{n-i} - 1) / (q^{i+1} - 1), exact at every step
    std::uint64_t num = 1, den = 1;
    for (int i = 0; i < k; ++i) {
        std::uint64_t a = 1, b = 1;
        for (int j = 0; j < n - i; ++j) a *= q;
        for (int j = 0; j < i + 1; ++j) b *= q;
        num *= a - 1;
        den *= b - 1;
    }
    return num / den;
}

int configured_threads() {
    if (const char* env = std::getenv("GMQ_THREADS")) {
        const int t = std::atoi(env);
        if (t > 0) return t;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

std::uint64_t StratumCensus::at_least(int ell) const {
    std::uint64_t s = 0;
    for (const auto& [k, v] : counts)
        if (k >= ell) s += v;
    return s;
}

std::uint64_t StratumCensus::expected_total() const {
    return locus == Locus::Z ? gaussian_binomial(6, 3, p) : projective_points(6, p);
}

bool StratumCensus::invariants_hold() const {
    std::uint64_t sum = 0;
    for (const auto& [k, v] : counts) sum += v;
    const int cutoff = locus == Locus::Z ? 5 : 4;
    return sum == total && total == expected_total() && at_least(cutoff) == 0;
}

std::string StratumCensus::to_json() const {
    nlohmann::ordered_json j;
    j["locus"] = locus_name(locus);
    j["p"] = p;
    nlohmann::ordered_json c = nlohmann::ordered_json::object();
    for (const auto& [k, v] : counts) c[std::to_string(k)] = v;
    j["counts"] = c;
    j["total"] = total;
    j["seed"] = seed;
    j["A_digest"] = digest;
    return j.dump();
}

namespace {

struct Tables {
    // Contraction third -> second power: per trivector, three (target, sign, element).
    struct Term {
        int target, element;
        bool negative;
    };
    Term contract3[20][3];
    Term contract2[15][2];
    // Wedge with a basis vector: per trivector and j, target or -1.
    int wedge_target[20][6];
    bool wedge_negative[20][6];
    Tables() {
        const ExteriorContext& ctx = exterior(6);
        for (int t = 0; t < 20; ++t) {
            const std::vector<int> e = ctx.elements(3, t);
            for (int r = 0; r < 3; ++r)
                contract3[t][r] = {ctx.index(ctx.subset(3, t) & ~(1u << e[r])), e[r], r % 2 == 1};
            for (int j = 0; j < 6; ++j) {
                const int s = ExteriorContext::wedge_sign(ctx.subset(3, t), 1u << j);
                wedge_target[t][j] = s ? ctx.index(ctx.subset(3, t) | (1u << j)) : -1;
                wedge_negative[t][j] = s < 0;
            }
        }
        for (int b = 0; b < 15; ++b) {
            const std::vector<int> e = ctx.elements(2, b);
            for (int r = 0; r < 2; ++r) contract2[b][r] = {e[1 - r], e[r], r % 2 == 1};
        }
    }
};

const Tables& tables() {
    static const Tables t;
    return t;
}

inline void accumulate(std::uint32_t& slot, std::uint32_t value, bool negative, std::uint32_t p) {
    slot = negative ? (slot + p - value) % p : (slot + value) % p;
}

class RawCensus {
public:
    RawCensus(const Subspace<Fp>& a, std::uint32_t p) : p_(p), cols_(raw::columns_of(a.basis())) {}

    int ydual(const std::uint32_t* phi) const {
        const Tables& tb = tables();
        std::uint32_t m[15 * 10] = {};
        for (int j = 0; j < 10; ++j) {
            const std::uint32_t* col = &cols_[j * 20];
            for (int t = 0; t < 20; ++t) {
                if (!col[t]) continue;
                for (const auto& term : tb.contract3[t]) {
                    if (!phi[term.element]) continue;
                    accumulate(m[term.target * 10 + j], raw::mulmod(col[t], phi[term.element], p_), term.negative, p_);
                }
            }
        }
        return 10 - raw::rank(m, 15, 10, p_);
    }

    int y(const std::uint32_t* u) const {
        const Tables& tb = tables();
        std::uint32_t m[15 * 10] = {};
        for (int j = 0; j < 10; ++j) {
            const std::uint32_t* col = &cols_[j * 20];
            for (int t = 0; t < 20; ++t) {
                if (!col[t]) continue;
                for (int i = 0; i < 6; ++i) {
                    const int tg = tb.wedge_target[t][i];
                    if (tg < 0 || !u[i]) continue;
                    accumulate(m[tg * 10 + j], raw::mulmod(col[t], u[i], p_), tb.wedge_negative[t][i], p_);
                }
            }
        }
        return 10 - raw::rank(m, 15, 10, p_);
    }

    /// phis: three functionals spanning the annihilator of U3.
    int z(const std::uint32_t* phis) const {
        const Tables& tb = tables();
        std::uint32_t m[18 * 10] = {};
        static constexpr int pairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};
        for (int j = 0; j < 10; ++j) {
            const std::uint32_t* col = &cols_[j * 20];
            for (int pi = 0; pi < 3; ++pi) {
                const std::uint32_t* pa = phis + 6 * pairs[pi][0];
                const std::uint32_t* pb = phis + 6 * pairs[pi][1];
                std::uint32_t bi[15] = {};
                for (int t = 0; t < 20; ++t) {
                    if (!col[t]) continue;
                    for (const auto& term : tb.contract3[t])
                        if (pa[term.element])
                            accumulate(bi[term.target], raw::mulmod(col[t], pa[term.element], p_), term.negative, p_);
                }
                for (int b = 0; b < 15; ++b) {
                    if (!bi[b]) continue;
                    for (const auto& term : tb.contract2[b])
                        if (pb[term.element])
                            accumulate(m[(pi * 6 + term.target) * 10 + j], raw::mulmod(bi[b], pb[term.element], p_),
                                       term.negative, p_);
                }
            }
        }
        return 10 - raw::rank(m, 18, 10, p_);
    }

private:
    std::uint32_t p_;
    raw::Residues cols_;
};

/// Normalized representatives of P^{n-1}(F_p), in a fixed order.
template <class Fn>
void for_each_point(int n, std::uint32_t p, Fn&& f) {
    std::vector<std::uint32_t> v(n);
    for (int lead = 0; lead < n; ++lead) {
        std::fill(v.begin(), v.end(), 0u);
        v[lead] = 1;
        for (;;) {
            f(v.data());
            int d = n - 1;
            while (d > lead) {
                if (++v[d] < p) break;
                v[d] = 0;
                --d;
            }
            if (d == lead) break;
        }
    }
}

/// Reduced row echelon 3x6 matrices over F_p, row-major, in a fixed order.
template <class Fn>
void for_each_rref3(std::uint32_t p, Fn&& f) {
    std::uint32_t m[18];
    for (int c0 = 0; c0 < 6; ++c0)
        for (int c1 = c0 + 1; c1 < 6; ++c1)
            for (int c2 = c1 + 1; c2 < 6; ++c2) {
                const int piv[3] = {c0, c1, c2};
                std::vector<int> free_slots;
                for (int r = 0; r < 3; ++r)
                    for (int c = piv[r] + 1; c < 6; ++c)
                        if (c != c0 && c != c1 && c != c2) free_slots.push_back(r * 6 + c);
                std::fill(m, m + 18, 0u);
                for (int r = 0; r < 3; ++r) m[r * 6 + piv[r]] = 1;
                for (;;) {
                    f(static_cast<const std::uint32_t*>(m));
                    std::size_t d = 0;
                    while (d < free_slots.size()) {
                        if (++m[free_slots[d]] < p) break;
                        m[free_slots[d]] = 0;
                        ++d;
                    }
                    if (d == free_slots.size()) break;
                }
            }
}

}  // namespace

StratumCensus scan_strata(const Subspace<Fp>& a, Locus locus, const CensusOptions& opt,
                          std::vector<Mat<Fp>>* witnesses) {
    if (a.ambient_dim() != 20 || a.dim() != 10) throw DimensionError("scan_strata needs a Lagrangian subspace");
    const std::uint32_t p = sample_of(a.basis()).modulus();
    if (!p) throw FieldError("scan_strata needs a prime field");
    if (locus == Locus::Z ? p > 5 : p > 19)
        throw BudgetError("scan budget exceeded: p = " + std::to_string(p) + " is too large for " + locus_name(locus));
    const RawCensus raw(a, p);
    const int threads = std::max(1, opt.threads > 0 ? opt.threads : configured_threads());

    struct Partial {
        std::map<int, std::uint64_t> counts;
        std::uint64_t total = 0;
        std::vector<std::pair<std::uint64_t, Mat<Fp>>> kept;  // (index, witness)
    };
    std::vector<Partial> parts(threads);
    auto worker = [&](int w) {
        Partial& part = parts[w];
        std::uint64_t index = 0;
        auto visit = [&](const std::uint32_t* x, int rows) {
            const std::uint64_t i = index++;
            if (static_cast<int>(i % threads) != w) return;
            const int ell = locus == Locus::Y ? raw.y(x) : locus == Locus::Ydual ? raw.ydual(x) : raw.z(x);
            ++part.counts[ell];
            ++part.total;
            if (ell >= opt.keep_from && part.kept.size() < opt.keep) {
                Mat<Fp> m(rows, 6);
                for (int r = 0; r < rows; ++r)
                    for (int c = 0; c < 6; ++c) m(r, c) = Fp(x[r * 6 + c], p);
                part.kept.emplace_back(i, m);
            }
        };
        if (locus == Locus::Z) for_each_rref3(p, [&](const std::uint32_t* m) { visit(m, 3); });
        else for_each_point(6, p, [&](const std::uint32_t* v) { visit(v, 1); });
    };
    if (threads == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < threads; ++w) pool.emplace_back(worker, w);
        for (auto& t : pool) t.join();
    }
    StratumCensus c;
    c.locus = locus;
    c.p = p;
    c.digest = matrix_digest(a.basis());
    std::vector<std::pair<std::uint64_t, Mat<Fp>>> kept;
    for (const Partial& part : parts) {
        for (const auto& [k, v] : part.counts) c.counts[k] += v;
        c.total += part.total;
        kept.insert(kept.end(), part.kept.begin(), part.kept.end());
    }
    if (witnesses) {
        std::sort(kept.begin(), kept.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
        for (std::size_t i = 0; i < kept.size() && i < opt.keep; ++i) witnesses->push_back(kept[i].second);
    }
    return c;
}

SexticReport sextic_on_line(const PrimeField& field, const Subspace<Fp>& a, const Vec<Fp>& phi0,
                            const Vec<Fp>& phi1, DetMethod method) {
    SexticReport r;
    const PolyMat<Fp> m = sextic_matrix(a, phi0, phi1);
    r.det = poly_det(field, m, method);
    r.degree = r.det.degree();
    if (r.det.is_zero()) {
        r.squarefree = false;
        return r;
    }
    r.squarefree = is_squarefree(r.det);
    r.infinity_stratum = ydual_stratum_by_contraction(a, phi1);
    bool ok = (r.degree < 6) == (r.infinity_stratum >= 1);
    for (std::uint64_t i = 0; i < field.order(); ++i) {
        const Fp t = field.element(i);
        const int stratum = ydual_stratum_by_contraction(a, Vec<Fp>(phi0 + t * phi1));
        const bool root = r.det(t).is_zero();
        if (root) {
            r.roots.emplace_back(t, root_multiplicity(r.det, t));
            r.root_strata.push_back(stratum);
        }
        if (root != (stratum >= 1)) ok = false;
    }
    r.roots_verified = ok;
    return r;
}

std::vector<Mat<Fp>> cover_fiber(const Mat<Fp>& s, std::uint32_t p) {
    std::vector<Mat<Fp>> out;
    const PrimeField f(p);
    Mat<Fp> zero = zeros<Fp>(3, 3, f(1));
    if (s == zero) out.push_back(zero);
    // A rank-one mu is a b^T with a normalized (first nonzero entry 1).
    for_each_point(3, p, [&](const std::uint32_t* av) {
        Vec<Fp> va(3);
        for (int i = 0; i < 3; ++i) va(i) = f(av[i]);
        for (std::uint32_t code = 1; code < p * p * p; ++code) {
            Vec<Fp> vb(3);
            std::uint32_t c = code;
            for (int i = 0; i < 3; ++i, c /= p) vb(i) = f(c % p);
            Mat<Fp> mu = va * vb.transpose();
            if (Mat<Fp>(mu + mu.transpose()) == s) out.push_back(mu);
        }
    });
    return out;
}

CoverCensus cover_census(std::uint32_t p) {
    const PrimeField f(p);
    CoverCensus c;
    c.p = p;
    // Image of the symmetrization, keyed by the 6 upper-triangle entries.
    auto key = [](const Mat<Fp>& s) {
        std::array<std::uint32_t, 6> k{};
        int n = 0;
        for (int i = 0; i < 3; ++i)
            for (int j = i; j < 3; ++j) k[n++] = s(i, j).value();
        return k;
    };
    std::map<std::array<std::uint32_t, 6>, std::vector<Mat<Fp>>> fibers;
    const Mat<Fp> zero = zeros<Fp>(3, 3, f(1));
    fibers[key(zero)].push_back(zero);
    for_each_point(3, p, [&](const std::uint32_t* av) {
        Vec<Fp> va(3);
        for (int i = 0; i < 3; ++i) va(i) = f(av[i]);
        for (std::uint32_t code = 1; code < p * p * p; ++code) {
            Vec<Fp> vb(3);
            std::uint32_t x = code;
            for (int i = 0; i < 3; ++i, x /= p) vb(i) = f(x % p);
            const Mat<Fp> mu = va * vb.transpose();
            fibers[key(determinantal_cover_model(mu))].push_back(mu);
        }
    });
    // All symmetric 3x3 matrices.
    std::uint64_t total = 1;
    for (int i = 0; i < 6; ++i) total *= p;
    for (std::uint64_t code = 0; code < total; ++code) {
        Mat<Fp> s(3, 3);
        std::uint64_t x = code;
        for (int i = 0; i < 3; ++i)
            for (int j = i; j < 3; ++j, x /= p) s(i, j) = s(j, i) = f(static_cast<long long>(x % p));
        if (!determinant(s).is_zero()) continue;
        ++c.singular_symmetric;
        if (rank(s) == 2) {
            // The form on a complement of the radical is split iff -det is a square.
            const Subspace<Fp> rad = kernel(s);
            const Mat<Fp> comp = complete_basis(rad.basis(), Subspace<Fp>::full(3, f(1)));
            const Mat<Fp> b = comp.transpose() * s * comp;
            if (!f.is_square(-determinant(b))) ++c.nonsplit_rank2;
        }
        auto it = fibers.find(key(s));
        if (it == fibers.end()) continue;
        ++c.image;
        const auto& fib = it->second;
        if (fib.size() == 2) ++c.fiber_two;
        if (fib.size() == 1) {
            ++c.fiber_one;
            if (fib[0] == Mat<Fp>(fib[0].transpose())) ++c.fiber_one_symmetric;
        }
    }
    return c;
}

bool CoverCensus::consistent() const {
    return image == singular_symmetric - nonsplit_rank2 && fiber_one + fiber_two == image &&
           fiber_one == fiber_one_symmetric;
}

}  // namespace gmq
