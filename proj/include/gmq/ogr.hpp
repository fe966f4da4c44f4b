#pragma once

// Isotropic subspaces of possibly degenerate quadratic forms over F_q:
// exhaustive enumeration, the closed-form count polynomial of split forms,
// and the dimension bookkeeping N(n, p) + delta(c, l).

#include "gmq/linalg.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gmq {

/// Dimension of OGr(p, n + 1) for a nondegenerate form; may be negative.
int ogr_N(int n, int p);
/// Excess dimension for corank c; m = floor((c + l) / 2) is clamped at 0.
int ogr_delta(int c, int ell);
inline int ogr_ell(int n, int p) { return 2 * p - n - 1; }

/// Polynomial in q with integer coefficients (counts over F_q).
struct IntPoly {
    std::vector<std::int64_t> c;  // c[i] is the coefficient of q^i

    static IntPoly monomial(std::int64_t a, int d);
    int degree() const;
    std::int64_t operator()(std::int64_t q) const;
    IntPoly operator+(const IntPoly& o) const;
    IntPoly operator*(const IntPoly& o) const;
    std::string str() const;
    bool operator==(const IntPoly& o) const;
};

IntPoly gaussian_binomial_poly(int n, int k);

/// Split form of dimension n + 1 and corank c: hyperbolic planes, one unary
/// block if the rank is odd, then the zero block.
Mat<Fp> split_form(const PrimeField& field, int n, int c);

/// Number of p-dim isotropic subspaces of a split form of dimension n + 1 and
/// corank c, stratified by the intersection with the radical.
IntPoly ogr_count_polynomial(int n, int c, int p);

struct OGrCount {
    int p = 0;
    std::uint32_t q = 0;
    std::uint64_t count = 0;
    std::optional<std::pair<std::uint64_t, std::uint64_t>> families;
};

struct EnumerateOptions {
    std::uint64_t budget = 10'000'000;  // candidate vectors tested
    bool keep = false;                  // return the subspaces (RREF, p x dim)
    int threads = 0;                    // 0: GMQ_THREADS or hardware concurrency
};

struct IsotropicEnumeration {
    OGrCount summary;
    std::vector<Mat<Fp>> subspaces;
    std::uint64_t nodes = 0;
};

/// Exhaustive over RREF bases: rows are chosen from the last pivot down, each
/// solving the linear orthogonality conditions against the rows already fixed.
/// Throws BudgetError past opt.budget candidates.
IsotropicEnumeration enumerate_isotropic(const QuadraticSpace<Fp>& qs, int p, const EnumerateOptions& opt = {});

/// Classes of maximal isotropics of a nondegenerate split form of dim 2p
/// under dim(L cap L') = p mod 2. Throws std::logic_error if the relation is
/// not an equivalence with two classes on the given list.
std::pair<std::uint64_t, std::uint64_t> maximal_family_parity(const std::vector<Mat<Fp>>& maximal, int p);

class FitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct DimensionEstimate {
    int n = 0, c = 0, p = 0, ell = 0;
    std::vector<std::pair<std::uint32_t, std::uint64_t>> counts;  // (q, count)
    IntPoly polynomial;
    int degree = -1;    // -1 when empty
    int expected = -1;  // N + delta, or -1 for c < l
    bool matches() const { return degree == expected; }
};

/// Enumerates the split form over each q, requires agreement with the count
/// polynomial (FitError otherwise) and reports its degree.
DimensionEstimate dimension_estimate(int n, int c, int p, const std::vector<std::uint32_t>& qs = {3, 5},
                                     const EnumerateOptions& opt = {});

struct FiberProfile {
    std::string tag;
    int m = -1;  // for the single projective space tag
    std::uint64_t count = 0;
};

/// Names the shape of OGr(p, qs) from its exact count over F_q: two points,
/// two lines, two P3 meeting in a point, or a single P^m. Throws FitError if
/// none fits.
FiberProfile fiber_profile(const QuadraticSpace<Fp>& qs, int p, const EnumerateOptions& opt = {});
FiberProfile classify_count(std::uint64_t count, std::uint64_t q);

/// CSV header plus one line per row: n,c,p,q,count,expected_dim.
struct OGrTableRow {
    int n, c, p;
    std::uint32_t q;
    std::uint64_t count;
    int expected_dim;
};
std::string ogr_csv(const std::vector<OGrTableRow>& rows);

}  // namespace gmq
