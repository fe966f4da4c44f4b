#pragma once

// Raw modular kernels for the exhaustive scans. They work on plain uint32
// residues in row-major buffers and skip the modulus bookkeeping of Fp, which
// dominates the cost of millions of tiny rank computations.

#include "gmq/linalg.hpp"

#include <algorithm>
#include <cstdint>
#include <vector>

namespace gmq::raw {

using Residues = std::vector<std::uint32_t>;

inline std::uint32_t mulmod(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
    return static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) * b % p);
}
std::uint32_t invmod(std::uint32_t a, std::uint32_t p);

/// Rank of a rows x cols row-major matrix mod p; the buffer is clobbered.
/// Stops as soon as the rank exceeds `cap` and returns cap + 1.
int rank(std::uint32_t* m, int rows, int cols, std::uint32_t p, int cap = 1 << 30);

/// Row-major copy of an Fp matrix.
Residues to_residues(const Mat<Fp>& m);
/// Column-major copy (each column contiguous), for fast column combinations.
Residues columns_of(const Mat<Fp>& m);

}  // namespace gmq::raw

namespace gmq::raw {

/// Calls f(vec) once per point of the projectivized column span of `cols`
/// (k columns of length n, column-major residues), using the normalization
/// "first nonzero coefficient is 1". Each step adds one or more basis columns
/// to the running vector, so the cost per point is O(n) amortized.
template <class Fn>
void for_each_projective(const Residues& cols, int n, int k, std::uint32_t p, Fn&& f) {
    std::vector<std::uint32_t> v(n);
    std::vector<std::uint32_t> digit(k);
    auto add = [&](int j) {
        const std::uint32_t* b = cols.data() + static_cast<std::size_t>(j) * n;
        for (int r = 0; r < n; ++r) {
            std::uint32_t s = v[r] + b[r];
            v[r] = s >= p ? s - p : s;
        }
    };
    for (int lead = 0; lead < k; ++lead) {
        std::fill(v.begin(), v.end(), 0u);
        std::fill(digit.begin(), digit.end(), 0u);
        add(lead);
        for (;;) {
            if (!f(static_cast<const std::uint32_t*>(v.data()))) return;
            int d = k - 1;
            while (d > lead) {
                add(d);
                if (++digit[d] < p) break;
                digit[d] = 0;
                --d;
            }
            if (d == lead) break;
        }
    }
}

/// Decomposability of a trivector of V6 given as 20 residues: the map
/// x -> v ^ x into the fourth power has rank 3 exactly when v = u1 ^ u2 ^ u3.
bool is_decomposable6(const std::uint32_t* v, std::uint32_t p);

}  // namespace gmq::raw
