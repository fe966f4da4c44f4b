#include "gmq/exterior.hpp"

#include <algorithm>
#include <bit>

namespace gmq {

ExteriorContext::ExteriorContext(int d) : d_(d), index_(1u << d, -1) {
    if (d < 0 || d > 6) throw DimensionError("exterior algebra supports dimensions 0..6");
    // Iterating masks by increasing value and bucketing by popcount does not
    // give lex order, so collect then sort by the element tuple.
    for (int k = 0; k <= d; ++k) {
        std::vector<std::uint32_t>& bucket = subsets_[k];
        for (std::uint32_t m = 0; m < (1u << d); ++m)
            if (std::popcount(m) == k) bucket.push_back(m);
        std::sort(bucket.begin(), bucket.end(), [](std::uint32_t a, std::uint32_t b) {
            // lex on sorted tuples = compare lowest differing element
            std::uint32_t diff = a ^ b;
            std::uint32_t low = diff & (~diff + 1);
            return (a & low) != 0;
        });
        for (std::size_t i = 0; i < bucket.size(); ++i) index_[bucket[i]] = static_cast<int>(i);
    }
}

std::vector<int> ExteriorContext::elements(int k, int i) const {
    std::vector<int> e;
    const std::uint32_t m = subsets_[k][i];
    for (int j = 0; j < d_; ++j)
        if (m >> j & 1) e.push_back(j);
    return e;
}

int ExteriorContext::wedge_sign(std::uint32_t a, std::uint32_t b) {
    if (a & b) return 0;
    // Count pairs (i in A, j in B) with i > j: those are the transpositions
    // needed to sort the concatenated tuple.
    int inversions = 0;
    for (std::uint32_t bb = b; bb; bb &= bb - 1) {
        const int j = std::countr_zero(bb);
        inversions += std::popcount(a >> (j + 1));
    }
    return inversions % 2 ? -1 : 1;
}

const ExteriorContext& exterior(int d) {
    static const ExteriorContext contexts[] = {ExteriorContext(0), ExteriorContext(1), ExteriorContext(2),
                                               ExteriorContext(3), ExteriorContext(4), ExteriorContext(5),
                                               ExteriorContext(6)};
    if (d < 0 || d > 6) throw DimensionError("exterior algebra supports dimensions 0..6");
    return contexts[d];
}

}  // namespace gmq
