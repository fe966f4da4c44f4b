#pragma once

// The .gmq text format. Line 1: "gmq 1 <kind> <field>" with field "Fp <p>"
// or "QQ"; then "dim <ambient> <k>"; then k basis columns, one per line;
// then optional "meta <key> <value...>" lines. The last meta line is
// "meta sha256 <hex>" over everything before it.

#include "gmq/gm.hpp"

#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gmq {

/// Malformed input, a failed digest, or data violating an invariant.
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Field selector: p = 0 for QQ.
struct FieldSpec {
    std::uint32_t p = 0;
    bool rational() const { return p == 0; }
    std::string name() const;  // "Fp 101" or "QQ"
};
/// Accepts "Fp:101", "Fp 101", "101", "QQ".
FieldSpec parse_field_spec(const std::string& s);

struct GmqDocument {
    std::string kind;  // "lagrangian" or "gm"
    FieldSpec field;
    int ambient = 0;
    std::vector<std::vector<std::string>> columns;
    std::vector<std::pair<std::string, std::string>> meta;  // without the digest

    std::optional<std::string> get(const std::string& key) const;
    void set(const std::string& key, const std::string& value);
    std::string render() const;  // includes the digest line
};

GmqDocument parse_gmq(const std::string& text);
GmqDocument read_gmq(const std::string& path);
void write_gmq(const std::string& path, const GmqDocument& doc);

template <class S>
std::string entry_text(const S& x) {
    return to_string(x);
}

template <class S>
std::vector<std::string> column_text(const Mat<S>& m, Eigen::Index j) {
    std::vector<std::string> out;
    for (Eigen::Index i = 0; i < m.rows(); ++i) out.push_back(entry_text(m(i, j)));
    return out;
}

/// Flat row-major rendering for meta values.
template <class S>
std::string flat_text(const Mat<S>& m) {
    std::string s = std::to_string(m.rows()) + " " + std::to_string(m.cols());
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) s += " " + entry_text(m(i, j));
    return s;
}

Fp parse_fp(const std::string& s, std::uint32_t p);
Q parse_q(const std::string& s);

template <class S>
S parse_entry(const std::string& s, const FieldSpec& f) {
    if constexpr (std::is_same_v<S, Fp>) return parse_fp(s, f.p);
    else return parse_q(s);
}

template <class S>
Mat<S> columns_matrix(const GmqDocument& d) {
    Mat<S> m(d.ambient, static_cast<Eigen::Index>(d.columns.size()));
    for (std::size_t j = 0; j < d.columns.size(); ++j)
        for (int i = 0; i < d.ambient; ++i) m(i, static_cast<Eigen::Index>(j)) = parse_entry<S>(d.columns[j][i], d.field);
    return m;
}

template <class S>
Mat<S> parse_flat(const std::string& value, const FieldSpec& f) {
    std::istringstream is(value);
    long r = -1, c = -1;
    if (!(is >> r >> c) || r < 0 || c < 0 || r > 64 || c > 64) throw FormatError("bad matrix shape in meta value");
    Mat<S> m(r, c);
    for (long i = 0; i < r; ++i)
        for (long j = 0; j < c; ++j) {
            std::string t;
            if (!(is >> t)) throw FormatError("truncated matrix in meta value");
            m(i, j) = parse_entry<S>(t, f);
        }
    std::string extra;
    if (is >> extra) throw FormatError("trailing entries in matrix meta value");
    return m;
}

template <class S>
GmqDocument lagrangian_document(const Subspace<S>& a, const FieldSpec& f) {
    GmqDocument d;
    d.kind = "lagrangian";
    d.field = f;
    d.ambient = a.ambient_dim();
    for (int j = 0; j < a.dim(); ++j) d.columns.push_back(column_text(a.basis(), j));
    return d;
}

/// Reads a Lagrangian; throws FormatError if it is not Lagrangian.
template <class S>
Subspace<S> lagrangian_from(const GmqDocument& d) {
    if (d.kind != "lagrangian") throw FormatError("expected a lagrangian file, got " + d.kind);
    if (d.ambient != 20 || d.columns.size() != 10) throw FormatError("a Lagrangian needs dim 20 10");
    const Subspace<S> a = Subspace<S>::span(columns_matrix<S>(d));
    if (a.dim() != 10) throw FormatError("basis columns are dependent");
    if (!is_lagrangian(a)) throw FormatError("subspace is not isotropic for the wedge pairing");
    return a;
}

template <class S>
GmqDocument gm_document(const GMVariety<S>& x, const FieldSpec& f) {
    GmqDocument d;
    d.kind = "gm";
    d.field = f;
    d.ambient = 11;
    for (int j = 0; j < x.w.dim(); ++j) d.columns.push_back(column_text(x.w.basis(), j));
    d.set("n", std::to_string(x.n));
    d.set("type", gm_type_name(x.type));
    d.set("q", flat_text(x.q));
    d.set("w0perp", flat_text(x.w0perp));
    return d;
}

/// Reads GM data and re-runs the invariant checks; the FormatError message
/// names the violated invariant.
template <class S>
GMVariety<S> gm_from(const GmqDocument& d) {
    if (d.kind != "gm") throw FormatError("expected a gm file, got " + d.kind);
    if (d.ambient != 11) throw FormatError("GM data lives in dimension 11");
    auto need = [&](const char* k) {
        const auto v = d.get(k);
        if (!v) throw FormatError(std::string("missing meta ") + k);
        return *v;
    };
    GMVariety<S> x;
    try {
        x.n = std::stoi(need("n"));
        x.type = parse_gm_type(need("type"));
    } catch (const std::invalid_argument& e) {
        throw FormatError(std::string("bad GM header: ") + e.what());
    }
    const Mat<S> w = columns_matrix<S>(d);
    x.w = Subspace<S>::span(w);
    if (x.w.dim() != static_cast<int>(d.columns.size())) throw FormatError("W basis columns are dependent");
    x.q = parse_flat<S>(need("q"), d.field);
    x.w0perp = parse_flat<S>(need("w0perp"), d.field);
    if (x.q.rows() != x.w.dim() || x.q.cols() != x.w.dim()) throw FormatError("Q has the wrong size");
    if (x.w0perp.rows() != 10) throw FormatError("W0-perp must consist of trivectors of V5");
    // Q is stored on the canonical basis of W; a file basis in another form is re-expressed.
    if (!(w == x.w.basis())) {
        const Mat<S> m = express(w, x.w.basis());
        x.q = Mat<S>(m.transpose() * x.q * m);
    }
    const S sample = x.sample();
    x.w0 = annihilator(x.w0perp, sample);
    if (const auto v = gm_violation(x)) throw FormatError("invalid GM data: " + *v);
    return x;
}

}  // namespace gmq
