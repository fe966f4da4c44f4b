#include "gmq/kernels.hpp"

#include <utility>

namespace gmq::raw {

std::uint32_t invmod(std::uint32_t a, std::uint32_t p) {
    std::uint32_t r = 1, b = a, e = p - 2;
    while (e) {
        if (e & 1) r = mulmod(r, b, p);
        b = mulmod(b, b, p);
        e >>= 1;
    }
    return r;
}

int rank(std::uint32_t* m, int rows, int cols, std::uint32_t p, int cap) {
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int piv = r;
        while (piv < rows && m[piv * cols + c] == 0) ++piv;
        if (piv == rows) continue;
        if (piv != r)
            for (int j = c; j < cols; ++j) std::swap(m[piv * cols + j], m[r * cols + j]);
        const std::uint32_t inv = invmod(m[r * cols + c], p);
        for (int j = c; j < cols; ++j) m[r * cols + j] = mulmod(m[r * cols + j], inv, p);
        for (int i = r + 1; i < rows; ++i) {
            const std::uint32_t f = m[i * cols + c];
            if (!f) continue;
            const std::uint32_t neg = p - f;
            for (int j = c; j < cols; ++j) m[i * cols + j] = (m[i * cols + j] + mulmod(neg, m[r * cols + j], p)) % p;
        }
        if (++r > cap) return cap + 1;
    }
    return r;
}

Residues to_residues(const Mat<Fp>& m) {
    Residues out(static_cast<std::size_t>(m.rows() * m.cols()));
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) out[i * m.cols() + j] = m(i, j).value();
    return out;
}

Residues columns_of(const Mat<Fp>& m) {
    Residues out(static_cast<std::size_t>(m.rows() * m.cols()));
    for (Eigen::Index j = 0; j < m.cols(); ++j)
        for (Eigen::Index i = 0; i < m.rows(); ++i) out[j * m.rows() + i] = m(i, j).value();
    return out;
}

}  // namespace gmq::raw

#include "gmq/exterior.hpp"

namespace gmq::raw {

namespace {
struct WedgeTable {
    // For trivector t and basis vector j: target index in the fourth power or -1, and sign.
    int target[20][6];
    int sign[20][6];
    WedgeTable() {
        const ExteriorContext& ctx = exterior(6);
        for (int t = 0; t < 20; ++t)
            for (int j = 0; j < 6; ++j) {
                const std::uint32_t mt = ctx.subset(3, t), mj = 1u << j;
                const int s = ExteriorContext::wedge_sign(mt, mj);
                target[t][j] = s ? ctx.index(mt | mj) : -1;
                sign[t][j] = s;
            }
    }
};
const WedgeTable& wedge_table() {
    static const WedgeTable table;
    return table;
}
}  // namespace

bool is_decomposable6(const std::uint32_t* v, std::uint32_t p) {
    const WedgeTable& tb = wedge_table();
    std::uint32_t m[6 * 15] = {};  // row j = v ^ e_j, 15 entries
    bool nonzero = false;
    for (int t = 0; t < 20; ++t) {
        if (!v[t]) continue;
        nonzero = true;
        for (int j = 0; j < 6; ++j) {
            const int tg = tb.target[t][j];
            if (tg < 0) continue;
            std::uint32_t& slot = m[j * 15 + tg];
            slot = tb.sign[t][j] > 0 ? (slot + v[t]) % p : (slot + p - v[t]) % p;
        }
    }
    if (!nonzero) return false;
    return rank(m, 6, 15, p, 3) == 3;
}

}  // namespace gmq::raw
