#pragma once

// EPW strata of a Lagrangian A: membership, exhaustive censuses over small
// prime fields, the sextic along a pencil of hyperplanes, and the local model
// of the double cover by symmetrized rank-one matrices.

#include "gmq/lagrangian.hpp"
#include "gmq/poly.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace gmq {

template <class S>
int y_stratum(const Subspace<S>& a, const Vec<S>& u1) {
    if (all_zero(u1)) throw DimensionError("y_stratum of the zero vector");
    return intersect(a, Subspace<S>::span(primal_companion(u1))).dim();
}

template <class S>
int ydual_stratum(const Subspace<S>& a, const Mat<S>& u5) {
    if (rank(u5) != 5) throw DimensionError("ydual_stratum needs a hyperplane");
    return intersect(a, Subspace<S>::span(dual_companion(u5))).dim();
}

template <class S>
int z_stratum(const Subspace<S>& a, const Mat<S>& u3) {
    if (rank(u3) != 3) throw DimensionError("z_stratum needs a 3-dimensional subspace");
    return intersect(a, Subspace<S>::span(z_companion(u3))).dim();
}

/// Contraction by a functional phi of V (dim 5 or 6), from degree k to k-1:
/// i_phi(e_I) = sum over positions r of (-1)^r phi(e_{I_r}) e_{I - I_r}.
template <class S>
Mat<S> contraction_matrix(const Vec<S>& phi, int k) {
    const int d = static_cast<int>(phi.size());
    const ExteriorContext& ctx = exterior(d);
    const S sample = sample_of(phi);
    Mat<S> m = zeros<S>(ctx.size(k - 1), ctx.size(k), sample);
    for (int c = 0; c < ctx.size(k); ++c) {
        const std::vector<int> e = ctx.elements(k, c);
        for (std::size_t r = 0; r < e.size(); ++r) {
            const int row = ctx.index(ctx.subset(k, c) & ~(1u << e[r]));
            m(row, c) += (r % 2) ? -phi(e[r]) : phi(e[r]);
        }
    }
    return m;
}

/// Hyperplane ker(phi) as a 6x5 basis.
template <class S>
Mat<S> hyperplane_of(const Vec<S>& phi) {
    Mat<S> row = phi.transpose();
    const Subspace<S> k = kernel(row);
    if (k.dim() != static_cast<int>(phi.size()) - 1) throw DimensionError("hyperplane_of the zero functional");
    return k.basis();
}

/// Second code path for the dual stratum: a trivector lies in the third power
/// of ker(phi) iff its contraction by phi vanishes.
template <class S>
int ydual_stratum_by_contraction(const Subspace<S>& a, const Vec<S>& phi) {
    return a.dim() - rank(Mat<S>(contraction_matrix(phi, 3) * a.basis()));
}

enum class Locus { Y, Ydual, Z };
std::string locus_name(Locus l);
Locus parse_locus(const std::string& s);

struct StratumCensus {
    Locus locus = Locus::Y;
    std::uint32_t p = 0;
    std::map<int, std::uint64_t> counts;
    std::uint64_t total = 0;
    std::uint64_t seed = 0;
    std::string digest;

    std::uint64_t at_least(int ell) const;
    /// |P^5(F_p)| or |Gr(3,6)(F_p)|.
    std::uint64_t expected_total() const;
    /// Zero counts above the cutoff (4 for Y-type, 5 for Z) and full coverage.
    bool invariants_hold() const;
    std::string to_json() const;
};

/// Exhaustive census. Up to `keep` witnesses with stratum >= keep_from are
/// returned in `witnesses` (functionals, points, or 3x6 annihilator rows).
struct CensusOptions {
    int threads = 0;  // 0: GMQ_THREADS or hardware concurrency
    int keep_from = 99;
    std::size_t keep = 0;
};
StratumCensus scan_strata(const Subspace<Fp>& a, Locus locus, const CensusOptions& opt = {},
                          std::vector<Mat<Fp>>* witnesses = nullptr);

std::uint64_t projective_points(int n, std::uint64_t q);       // |P^{n-1}(F_q)|
std::uint64_t gaussian_binomial(int n, int k, std::uint64_t q);
int configured_threads();

/// Basis f_0..f_5 dual to (phi0, phi1, completion).
template <class S>
Mat<S> adapted_dual_basis(const Vec<S>& phi0, const Vec<S>& phi1) {
    const S sample = either(sample_of(phi0), sample_of(phi1));
    Mat<S> rows(2, 6);
    rows.row(0) = phi0.transpose();
    rows.row(1) = phi1.transpose();
    if (rank(rows) != 2) throw DimensionError("degenerate line: functionals are dependent");
    Mat<S> full(6, 6);
    const Mat<S> extra = complete_basis(Mat<S>(rows.transpose()), Subspace<S>::full(6, sample));
    full << rows.transpose(), extra;
    return inverse_matrix(Mat<S>(full.transpose()));
}

/// 10 x 10 matrix over S[t] of the third power of ker(phi0 + t phi1) -> sixth
/// power / A, written as pairings with a basis of A.
template <class S>
PolyMat<S> sextic_matrix(const Subspace<S>& a, const Vec<S>& phi0, const Vec<S>& phi1) {
    const Mat<S> f = adapted_dual_basis(phi0, phi1);
    const S sample = sample_of(f);
    const Mat<S> g = symplectic_gram(sample);
    const ExteriorContext& c4 = exterior(4);
    std::vector<Vec<S>> constant, slope;
    auto wedge3 = [&](int i, int j, int k) {
        return wedge_vectors<S>({f.col(i), f.col(j), f.col(k)}).coords;
    };
    // Basis of U5(t): u0 = t f0 - f1, u1..u4 = f2..f5.
    for (int c = 0; c < c4.size(3); ++c) {  // triples inside {f2..f5}
        std::vector<int> e = c4.elements(3, c);
        constant.push_back(wedge3(e[0] + 2, e[1] + 2, e[2] + 2));
        slope.push_back(Vec<S>::Constant(20, like(sample, 0)));
    }
    for (int c = 0; c < c4.size(2); ++c) {  // u0 ^ pair
        std::vector<int> e = c4.elements(2, c);
        constant.push_back(-wedge3(1, e[0] + 2, e[1] + 2));
        slope.push_back(wedge3(0, e[0] + 2, e[1] + 2));
    }
    PolyMat<S> m(10, 10);
    for (int i = 0; i < 10; ++i) {
        const Vec<S> row = g.transpose() * a.vector(i);  // w -> omega(a_i, w)
        for (int j = 0; j < 10; ++j) m(i, j) = UniPoly<S>::linear(row.dot(constant[j]), row.dot(slope[j]));
    }
    return m;
}

struct SexticReport {
    UniPoly<Fp> det;
    int degree = -1;
    bool squarefree = false;
    std::vector<std::pair<Fp, int>> roots;  // F_p roots with multiplicity
    std::vector<int> root_strata;           // ydual stratum at each root
    int infinity_stratum = 0;               // stratum of ker(phi1)
    bool roots_verified = false;            // every root has stratum >= 1 and no other t does
};

SexticReport sextic_on_line(const PrimeField& field, const Subspace<Fp>& a, const Vec<Fp>& phi0,
                            const Vec<Fp>& phi1, DetMethod method = DetMethod::Auto);

/// mu -> mu + mu^T on 3x3 matrices of rank <= 1.
template <class S>
Mat<S> determinantal_cover_model(const Mat<S>& mu) {
    if (mu.rows() != 3 || mu.cols() != 3) throw DimensionError("cover model works on 3x3 matrices");
    if (rank(mu) > 1) throw DimensionError("cover model needs rank <= 1");
    return mu + mu.transpose();
}

/// All rank <= 1 matrices mu over F_p with mu + mu^T = s.
std::vector<Mat<Fp>> cover_fiber(const Mat<Fp>& s, std::uint32_t p);

struct CoverCensus {
    std::uint32_t p = 0;
    std::uint64_t singular_symmetric = 0;  // det = 0 symmetric 3x3
    std::uint64_t image = 0;               // reached by some rank <= 1 mu
    std::uint64_t nonsplit_rank2 = 0;      // rank-2 forms whose binary part is anisotropic
    std::uint64_t fiber_two = 0;           // image points with fiber size 2
    std::uint64_t fiber_one = 0;           // image points with fiber size 1
    std::uint64_t fiber_one_symmetric = 0; // of those, fibers consisting of a symmetric mu
    bool consistent() const;  // image = singular minus nonsplit rank 2; fiber sizes as predicted
};
CoverCensus cover_census(std::uint32_t p);

struct PluckerProfile {
    int ell = 0;
    int ordinary_dim = 0;
    int special_dim = 0;
};

template <class S>
PluckerProfile plucker_point_profile(const Subspace<S>& a, const Mat<S>& v5) {
    const int ell = ydual_stratum(a, v5);
    if (ell >= 4) throw DimensionError("stratum >= 4 at the Plücker point: A is not valid");
    return {ell, 5 - ell, 6 - ell};
}

}  // namespace gmq
