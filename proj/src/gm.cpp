#include "gmq/gm.hpp"

namespace gmq {

std::string gm_type_name(GMType t) { return t == GMType::Ordinary ? "ordinary" : "special"; }

GMType parse_gm_type(const std::string& s) {
    if (s == "ordinary" || s == "ord") return GMType::Ordinary;
    if (s == "special" || s == "spe") return GMType::Special;
    throw std::invalid_argument("unknown GM type '" + s + "' (expected ordinary or special)");
}

namespace {

// Skew 5x5 residue matrix of a trivector of V5 (same rule as skew_form_of).
void skew_residues(const std::uint32_t* t, std::uint32_t p, std::uint32_t* m) {
    const ExteriorContext& ctx = exterior(5);
    std::fill(m, m + 25, 0u);
    for (int i = 0; i < 10; ++i) {
        if (!t[i]) continue;
        const std::uint32_t mt = ctx.subset(3, i), rest = 31u & ~mt;
        int a = -1, b = -1;
        for (int j = 0; j < 5; ++j)
            if (rest >> j & 1) (a < 0 ? a : b) = j;
        const std::uint32_t v = ExteriorContext::wedge_sign(mt, rest) > 0 ? t[i] : p - t[i];
        m[a * 5 + b] = (m[a * 5 + b] + v) % p;
        m[b * 5 + a] = (m[b * 5 + a] + p - v) % p;
    }
}

}  // namespace

bool forms_have_rank_four(const Mat<Fp>& trivectors, std::uint64_t budget, std::uint64_t samples,
                          std::uint64_t seed) {
    const int k = static_cast<int>(trivectors.cols());
    if (k == 0) return true;
    const std::uint32_t p = sample_of(trivectors).modulus();
    if (!p) throw FieldError("forms_have_rank_four needs a prime field");
    const raw::Residues cols = raw::columns_of(trivectors);
    bool ok = true;
    auto test = [&](const std::uint32_t* v) {
        std::uint32_t m[25];
        skew_residues(v, p, m);
        if (raw::rank(m, 5, 5, p, 2) <= 2) ok = false;
        return ok;
    };
    if (projective_points(k, p) <= budget) {
        raw::for_each_projective(cols, 10, k, p, test);
        return ok;
    }
    std::mt19937_64 rng(seed);
    std::vector<std::uint32_t> v(10);
    for (std::uint64_t s = 0; s < samples && ok; ++s) {
        std::fill(v.begin(), v.end(), 0u);
        bool any = false;
        for (int j = 0; j < k; ++j) {
            const std::uint32_t c = static_cast<std::uint32_t>(rng() % p);
            if (!c) continue;
            any = true;
            for (int r = 0; r < 10; ++r) v[r] = (v[r] + raw::mulmod(c, cols[j * 10 + r], p)) % p;
        }
        if (any) test(v.data());
    }
    return ok;
}

bool forms_have_rank_four(const Mat<Q>& trivectors, std::uint64_t, std::uint64_t samples, std::uint64_t seed) {
    const int k = static_cast<int>(trivectors.cols());
    if (k == 0) return true;
    std::mt19937_64 rng(seed);
    RationalField field;
    for (int j = 0; j < k; ++j)
        if (rank(skew_form_of(Vec<Q>(trivectors.col(j)))) < 4) return false;
    for (std::uint64_t s = 0; s < samples; ++s) {
        Vec<Q> c(k);
        for (int j = 0; j < k; ++j) c(j) = field.random(rng);
        if (all_zero(c)) continue;
        if (rank(skew_form_of(Vec<Q>(trivectors * c))) < 4) return false;
    }
    return true;
}

}  // namespace gmq
