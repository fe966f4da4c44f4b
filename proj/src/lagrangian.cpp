#include "gmq/lagrangian.hpp"

namespace gmq {

std::string DecomposableVerdict::describe() const {
    switch (status) {
        case Status::ExhaustivelyClean: return "exhaustively-clean(" + std::to_string(checked) + ")";
        case Status::SampledClean: return "sampled-clean(" + std::to_string(checked) + ")";
        case Status::Counterexample: return "counterexample";
    }
    return "unknown";
}

DecomposableVerdict validate_no_decomposables(const LagrangianSubspace<Fp>& a, std::uint64_t budget,
                                              std::uint64_t samples, std::uint64_t seed) {
    const std::uint32_t p = sample_of(a.basis()).modulus();
    if (!p) throw FieldError("validate_no_decomposables needs a bound prime field");
    const int k = a.dim();
    std::uint64_t points = 0;
    for (int i = 0; i < k; ++i) points = points * p + 1;  // (p^k - 1) / (p - 1)
    DecomposableVerdict verdict;
    const raw::Residues cols = raw::columns_of(a.basis());
    if ((p == 3 || p == 5) && points <= budget) {
        verdict.status = DecomposableVerdict::Status::ExhaustivelyClean;
        raw::for_each_projective(cols, 20, k, p, [&](const std::uint32_t* v) {
            ++verdict.checked;
            if (!raw::is_decomposable6(v, p)) return true;
            verdict.status = DecomposableVerdict::Status::Counterexample;
            Vec<Fp> hit(20);
            for (int i = 0; i < 20; ++i) hit(i) = Fp(v[i], p);
            verdict.point = hit;
            return false;
        });
        return verdict;
    }
    verdict.status = DecomposableVerdict::Status::SampledClean;
    // The canonical basis vectors go first: coordinate-type Lagrangians are
    // caught there and never by random combinations.
    for (int j = 0; j < k; ++j) {
        ++verdict.checked;
        if (raw::is_decomposable6(cols.data() + j * 20, p)) {
            verdict.status = DecomposableVerdict::Status::Counterexample;
            verdict.point = a.space.vector(j);
            return verdict;
        }
    }
    std::mt19937_64 rng(seed);
    std::vector<std::uint32_t> v(20);
    for (std::uint64_t s = 0; s < samples; ++s) {
        std::fill(v.begin(), v.end(), 0u);
        bool any = false;
        for (int j = 0; j < k; ++j) {
            const std::uint32_t c = static_cast<std::uint32_t>(rng() % p);
            if (!c) continue;
            any = true;
            for (int r = 0; r < 20; ++r) v[r] = (v[r] + raw::mulmod(c, cols[j * 20 + r], p)) % p;
        }
        if (!any) continue;
        ++verdict.checked;
        if (raw::is_decomposable6(v.data(), p)) {
            verdict.status = DecomposableVerdict::Status::Counterexample;
            Vec<Fp> hit(20);
            for (int i = 0; i < 20; ++i) hit(i) = Fp(v[i], p);
            verdict.point = hit;
            return verdict;
        }
    }
    return verdict;
}

LagrangianSubspace<Fp> random_valid_lagrangian(const PrimeField& field, std::uint64_t seed, int tries) {
    for (int t = 0; t < tries; ++t) {
        LagrangianSubspace<Fp> a = random_lagrangian(field, seed + t);
        if (validate_no_decomposables(a).clean()) return a;
    }
    throw std::runtime_error("no decomposable-free Lagrangian found in " + std::to_string(tries) + " seeds");
}

}  // namespace gmq
