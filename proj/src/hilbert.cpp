#include "gmq/hilbert.hpp"

#include "gmq/fibration.hpp"
#include "gmq/ogr.hpp"
#include "json.hpp"

#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace gmq {

bool admissible(int n, GMType t) {
    return t == GMType::Ordinary ? (n >= 2 && n <= 5) : (n >= 3 && n <= 6);
}

namespace {

void require_admissible(int n, GMType t) {
    if (!admissible(n, t))
        throw std::invalid_argument("no smooth " + gm_type_name(t) + " GM variety of dimension " + std::to_string(n));
}

TableCell cell(int d, std::string s) { return {d, std::move(s)}; }
TableCell empty_cell() { return {std::nullopt, "empty"}; }

std::string dim_text(const std::optional<int>& d) { return d ? std::to_string(*d) : "empty"; }

Component comp(std::string name, std::optional<int> dim, std::string structure, std::string condition = {}) {
    return {std::move(name), dim, std::move(structure), std::nullopt, std::move(condition)};
}

Component fibred(std::string name, int dim, std::string structure, std::string base, std::string fiber) {
    Component c = comp(std::move(name), dim, std::move(structure));
    c.fibration = std::make_pair(std::move(base), std::move(fiber));
    return c;
}

}  // namespace

FkMxRow fk_mx_table(int n, GMType t) {
    require_admissible(n, t);
    FkMxRow r;
    r.n = n;
    r.type = t;
    for (auto& c : r.cells) c = empty_cell();
    const bool ord = t == GMType::Ordinary;
    // Special hulls are cones; their linear spaces fibre as affine-space
    // bundles over those of the ordinary hull one dimension down.
    const std::string cone = "cone over the hull of the ordinary part; F_k is stratified by A^{k+1}-bundles";
    switch (n) {
        case 2:
            r.cells[0] = cell(2, "kappa(P(W0-perp)) = P2");
            break;
        case 3:
            if (ord) {
                r.cells[0] = cell(4, "Bl_{kappa(P(W0-perp))} P(V5)");
                r.cells[1] = cell(1, "P1");
                r.cells[2] = cell(0, "P0");
            } else {
                r.cells[0] = cell(4, cone);
                r.cells[1] = cell(2, cone);
                r.cells[2] = cell(2, cone);
            }
            break;
        case 4:
            if (ord) {
                r.cells[0] = cell(6, "Bl_{IGr(3,V5)} Gr(3,V5)");
                r.cells[1] = cell(4, "Bl_{P(V1)} P(V5)");
                r.cells[2] = cell(3, "IGr(3,V5)");
                r.cells[3] = cell(0, "P0");
            } else {
                r.cells[0] = cell(6, cone);
                r.cells[1] = cell(4, cone);
                r.cells[2] = cell(3, cone);
                r.cells[3] = cell(1, cone);
            }
            break;
        case 5:
            if (ord) {
                r.cells[0] = cell(8, "Fl(1,3;V5)");
                r.cells[1] = cell(7, "Fl(1,4;V5)");
                r.cells[2] = cell(6, "Gr(3,V5)");
                r.cells[3] = cell(4, "P(V5)");
            } else {
                r.cells[0] = cell(8, cone);
                r.cells[1] = cell(7, cone);
                r.cells[2] = cell(6, cone);
                r.cells[3] = cell(4, cone);
            }
            break;
        case 6:
            r.cells[0] = cell(10, cone);
            r.cells[1] = cell(10, cone);
            r.cells[2] = cell(9, cone);
            r.cells[3] = cell(8, cone);
            r.cells[4] = cell(4, cone);
            break;
    }
    return r;
}

std::string fk_mx_text() {
    const std::vector<std::pair<int, GMType>> cols{{2, GMType::Ordinary}, {3, GMType::Special}, {3, GMType::Ordinary},
                                                  {4, GMType::Special},  {4, GMType::Ordinary}, {5, GMType::Special},
                                                  {5, GMType::Ordinary}, {6, GMType::Special}};
    std::ostringstream os;
    os << std::left << std::setw(12) << "";
    for (const auto& [n, t] : cols) os << std::setw(8) << ("X" + std::to_string(n) + (t == GMType::Ordinary ? "ord" : "spe"));
    os << '\n';
    for (int i = 0; i < 5; ++i) {
        os << std::setw(12) << ("dim " + std::string(FkMxRow::names[i]));
        for (const auto& [n, t] : cols) {
            const auto& d = fk_mx_table(n, t).cells[i].dim;
            os << std::setw(8) << (d ? std::to_string(*d) : "-");
        }
        os << '\n';
    }
    return os.str();
}

std::string tag_name(Prediction::Tag t) {
    switch (t) {
        case Prediction::Tag::Exact: return "exact";
        case Prediction::Tag::UpperBound: return "upper-bound";
        case Prediction::Tag::GeneralOnly: return "general-only";
    }
    return "?";
}

std::vector<Prediction> fk_x_predict(int n, int k, const StratumData& data) {
    using K = Prediction::Kind;
    using T = Prediction::Tag;
    std::vector<Prediction> out;
    if (2 * k > n) {
        out.push_back({"F" + std::to_string(k), K::Empty, T::Exact, std::nullopt, "empty since 2k > n", std::nullopt});
        return out;
    }
    if (2 * k == n) {
        Prediction p{"F" + std::to_string(k), K::Finite, T::Exact, 0, "", std::nullopt};
        if (k == 1) {
            p.statement = "isomorphic to Y3_{A,V5}";
            p.finite_target = data.y3_av5;
        } else if (k == 2) {
            p.statement = "finite reduced, finite surjective onto Y3_{A,V5} disjoint union Z4_{A,V5}";
            if (data.y3_av5 && data.z4_av5) p.finite_target = *data.y3_av5 + *data.z4_av5;
        } else if (k == 3) {
            p.statement = "finite reduced, finite surjective onto Y3_{A,V5}";
            p.finite_target = data.y3_av5;
        } else {
            p.statement = "finite reduced";
        }
        out.push_back(p);
        return out;
    }
    if (k == 1 && n >= 3) out.push_back({"F1", K::Dimension, T::Exact, 2 * n - 5, "dim F1(X) = 2n - 5", std::nullopt});
    if (k == 2 && n >= 5) {
        out.push_back({"Fsigma2", K::Dimension, T::UpperBound, 3 * n - 14, "dim Fsigma2(X) <= 3n - 14", std::nullopt});
        out.push_back({"Ftau2", K::Dimension, T::UpperBound, 3 * n - 12, "dim Ftau2(X) <= 3n - 12", std::nullopt});
        out.push_back({"Fsigma2", K::Dimension, T::GeneralOnly, 3 * n - 14, "general X: dim 3n - 14", std::nullopt});
        out.push_back({"Ftau2", K::Dimension, T::GeneralOnly, 3 * n - 15, "general X: dim 3n - 15", std::nullopt});
    }
    if (out.empty())
        out.push_back({"F" + std::to_string(k), K::Dimension, T::GeneralOnly, std::nullopt, "no closed form tabulated",
                       std::nullopt});
    return out;
}

const Component* HilbertInventory::find(const std::string& name) const {
    for (const Component& c : components)
        if (c.name == name) return &c;
    return nullptr;
}

HilbertInventory gk_structure(int n, int k, GMType t, const StratumData& data) {
    require_admissible(n, t);
    if (k < 0) throw std::invalid_argument("k must be nonnegative");
    const bool ord = t == GMType::Ordinary;
    HilbertInventory inv;
    inv.n = n;
    inv.k = k;
    inv.type = t;
    auto& cs = inv.components;

    if (n < 2 * k) {
        if (k == 3 && n == 5 && !ord) {
            cs.push_back(comp("G0", std::nullopt, "empty"));
            cs.push_back(comp("Gsigma", 0, "a point; the quadric is a sigma-quadric"));
            cs.push_back(comp("Gtau", std::nullopt, "empty"));
            inv.total_dim = 0;
        } else {
            inv.notes.push_back("G_k(X) is empty");
        }
        return inv;
    }

    const std::string y3_cond = "needs Y3 of A-perp nonempty (off the Plücker point when k = 1)";
    if (n == 2 * k) {
        if (k == 1) {
            cs.push_back(comp("G0", 0, "Y3_{A-perp} minus the Plücker point", y3_cond));
            cs.push_back(comp("Gsigma", std::nullopt, "empty"));
            cs.push_back(comp("Gtau", std::nullopt, "empty"));
        } else if (k == 2) {
            cs.push_back(comp("G0", 0, "double cover of Y3_{A-perp}", y3_cond));
            cs.push_back(comp("Gsigma", ord ? 0 : 1, ord ? "P0" : "P1"));
            cs.push_back(ord ? comp("Gtau", std::nullopt, "empty") : comp("Gtau", 0, "P0"));
        } else if (k == 3) {
            cs.push_back(comp("G0", 1, "double cover of Y3_{A-perp} times P1", y3_cond));
            cs.push_back(comp("Gsigma", 4, "P4"));
            cs.push_back(comp("Gtau", std::nullopt, "empty"));
        }
        inv.notes.push_back("the three pieces are disjoint closed subschemes");
        return inv;
    }

    if (n == 2 * k + 1) {
        if (k == 1) {
            inv.total_dim = 2;
            if (ord) {
                cs.push_back(comp("G0", 2, "Bl_{p'} of the double dual EPW surface, p' one preimage of the Plücker point"));
                cs.push_back(comp("Gsigma", 1, "P1, the exceptional curve over p'"));
                cs.push_back(comp("Gtau", 0, "the other preimage p'' of the Plücker point"));
            } else {
                cs.push_back(comp("G0", 2, "Bl of the double dual EPW surface at the point over the Plücker point"));
                cs.push_back(comp("Gsigma", 2, "P2"));
                cs.push_back(comp("Gtau", 2, "P2"));
                cs.push_back(comp("Gsigmatau", 2, "P2"));
                inv.notes.push_back("G0 closure and P2 meet transversely along a smooth rational curve");
            }
        } else if (k == 2) {
            cs.push_back(fibred("G0", 3, "normal integral Cohen-Macaulay threefold", "double dual EPW surface", "P1"));
            if (ord) {
                cs.push_back(comp("Gsigma", 4, "P(V5)"));
                cs.push_back(comp("Gtau", std::nullopt, "empty"));
            } else {
                cs.push_back(comp("Gsigma", 4, "P(C + (V1 ^ V5)-dual) union Bl_{[V1]} P(V5)"));
                cs.push_back(comp("Gtau", 3, "IGr(3,V5)"));
            }
        } else {
            inv.notes.push_back("no closed form tabulated for this case");
        }
        return inv;
    }

    if (n == 2 * k + 2) {
        if (k == 0) {
            cs.push_back(comp("G0", 4, "Hilbert square of X, a hyper-Kähler fourfold"));
            for (const char* nm : {"Gsigma", "Gtau", "Gsigmatau"}) cs.push_back(comp(nm, 2, "Bl_{F1(X)} F1(M_X)"));
            inv.total_dim = 4;
            inv.notes.push_back("a Mukai flop of the planes over F1(X) gives a small resolution of the double dual EPW sextic");
        } else if (k == 1) {
            inv.total_dim = 5;
            Component g0 = fibred("G0", 5, "irreducible component, closure of G0",
                                  "double dual EPW sextic off Y3", "P1");
            cs.push_back(g0);
            if (ord) {
                cs.push_back(comp("Gsigma", 5, "Fsigma2(X) x P5", "needs Fsigma2(X) nonempty; empty for general X"));
                cs.push_back(comp("Gtau", 5, "Ftau2(X) x P5", "needs Ftau2(X) nonempty; empty for general X"));
                inv.notes.push_back("over Y3 of A-perp the fibers are two P3 meeting in a point");
            }
        } else if (k == 2) {
            cs.push_back(fibred("G0", 7, "normal integral Cohen-Macaulay of pure dimension 7",
                                "double dual EPW sextic off Y3", "P3"));
            cs.push_back(comp("Gsigma", 8, "Bl_{F3(X)} Fsigma3(M_X) union F3(X) x P9"));
            cs.push_back(comp("Gtau", 6, "Ftau3(M_X) = Gr(3,V5)"));
        }
        return inv;
    }

    // n >= 2k + 3
    if (k == 0) {
        const char* fibers[] = {"", "", "", "P1", "P3", "Fl(1,3;4)", "OGr(2,7)"};
        cs.push_back(fibred("G0", 2 * n, "Hilbert square of X, smooth irreducible",
                            n == 3 ? "double cover of P(V6-dual) branched along the dual sextic" : "P(V6-dual)",
                            fibers[n]));
        inv.total_dim = 2 * n;
        inv.notes.push_back("a relative Atiyah flop in the P2-bundle over F1(X) precedes the fibration");
    } else if (k == 1) {
        inv.total_dim = 3 * n - 7;
        if (n == 5)
            cs.push_back(fibred("G0", 3 * n - 7, "main component", "double cover of P(V6-dual) branched along the dual sextic", "P3"));
        else
            cs.push_back(fibred("G0", 3 * n - 7, "irreducible", "P(V6-dual)", "smooth 6-dimensional quadric"));
    } else {
        inv.notes.push_back("no closed form tabulated for this case");
    }
    (void)data;
    return inv;
}

std::string HilbertInventory::to_json() const {
    nlohmann::ordered_json j;
    j["n"] = n;
    j["k"] = k;
    j["type"] = gm_type_name(type);
    j["ell"] = ell(k, n);
    j["total_dim"] = total_dim ? nlohmann::ordered_json(*total_dim) : nlohmann::ordered_json(nullptr);
    j["components"] = nlohmann::ordered_json::array();
    for (const Component& c : components) {
        nlohmann::ordered_json e;
        e["name"] = c.name;
        e["dim"] = c.dim ? nlohmann::ordered_json(*c.dim) : nlohmann::ordered_json("empty");
        e["structure"] = c.structure;
        if (c.fibration) e["fibration"] = {{"base", c.fibration->first}, {"fiber", c.fibration->second}};
        if (!c.condition.empty()) e["condition"] = c.condition;
        j["components"].push_back(e);
    }
    j["notes"] = notes;
    return j.dump(2);
}

std::string HilbertInventory::to_text() const {
    std::ostringstream os;
    os << "G_" << k << "(X), " << gm_type_name(type) << " n=" << n << ", ell=" << ell(k, n);
    if (total_dim) os << ", dim " << *total_dim;
    os << '\n';
    for (const Component& c : components) {
        os << "  " << std::left << std::setw(10) << c.name << std::setw(7) << dim_text(c.dim) << c.structure;
        if (c.fibration) os << " [fibred over " << c.fibration->first << ", fiber " << c.fibration->second << "]";
        if (!c.condition.empty()) os << " (" << c.condition << ")";
        os << '\n';
    }
    for (const std::string& s : notes) os << "  note: " << s << '\n';
    return os.str();
}

Cohomology encapsulated_cohomology(int n, int t) {
    if (n < 3 || (t != 0 && t != 1)) throw std::invalid_argument("encapsulated_cohomology needs n >= 3, t in {0,1}");
    return {3 * n - 8 - t, t + 1, t + 2};
}

bool CrossCheckReport::pass() const {
    for (const HookCheck& c : checks)
        if (!c.pass) return false;
    return true;
}

std::string CrossCheckReport::to_json() const {
    nlohmann::ordered_json j;
    j["pass"] = pass();
    j["checks"] = nlohmann::ordered_json::array();
    for (const HookCheck& c : checks)
        j["checks"].push_back({{"name", c.name}, {"expected", c.expected}, {"got", c.got}, {"pass", c.pass}});
    j["notes"] = notes;
    return j.dump(2);
}

namespace {

// Whether the nondegenerate part of a form is split (maximal Witt index).
bool nondegenerate_part_split(const QuadraticSpace<Fp>& q, const PrimeField& f) {
    const Mat<Fp> c = complete_basis(q.radical().basis(), Subspace<Fp>::full(q.dim(), f(1)));
    const Mat<Fp> g = restrict_form(q.gram(), c);
    const int r = static_cast<int>(g.rows());
    if (r == 0 || r % 2) return true;
    // Hyperbolic iff (-1)^{r/2} det is a square.
    Fp d = determinant(g);
    if ((r / 2) % 2) d = -d;
    return f.is_square(d);
}

}  // namespace

CrossCheckReport cross_check(const HilbertInventory& inv, const Subspace<Fp>& a, const Mat<Fp>& v5,
                             const Vec<Fp>& v0) {
    CrossCheckReport rep;
    const std::uint32_t p = sample_of(a.basis()).modulus();
    const PrimeField f(p);
    const GMFromLagrangian<Fp> g = gm_from_lagrangian(a, v5, v0);
    const bool special = inv.type == GMType::Special;
    const GMVariety<Fp> x = special ? make_special(g.x, f(1)) : g.x;

    const int want_px = special ? 6 - inv.n : 5 - inv.n;
    rep.checks.push_back({"Plücker point stratum", std::to_string(want_px), std::to_string(g.ell), g.ell == want_px});
    if (g.ell != want_px) return rep;

    // Plücker point: the functional vanishing on V5.
    Mat<Fp> v5rows = v5.transpose();
    const Vec<Fp> px = kernel(v5rows).vector(0);
    auto proportional = [](const Vec<Fp>& u, const Vec<Fp>& w) {
        Mat<Fp> m(2, u.size());
        m.row(0) = u.transpose();
        m.row(1) = w.transpose();
        return rank(m) == 1;
    };

    std::vector<Mat<Fp>> witnesses;
    CensusOptions opt;
    opt.keep_from = 3;
    opt.keep = 100000;
    const StratumCensus census = scan_strata(a, Locus::Ydual, opt, &witnesses);
    const std::uint64_t y3 = census.at_least(3);
    std::uint64_t off_px = 0, corank3 = 0, ogr_ok = 0;
    const int pdim = inv.k + 2;
    const IntPoly poly = ogr_count_polynomial(inv.n, 3, pdim);
    for (const Mat<Fp>& w : witnesses) {
        const Vec<Fp> phi = w.row(0).transpose();
        if (proportional(phi, px)) continue;
        ++off_px;
        const Vec<Fp> phi_adapted = g.basis_change.transpose() * phi;
        const BasePoint<Fp> b = base_point_from_functional(phi_adapted);
        const QuadraticSpace<Fp> q = quadric_at(x, b);
        if (q.corank() == 3) ++corank3;
        if (pdim <= q.dim()) {
            const std::uint64_t cnt = enumerate_isotropic(q, pdim).summary.count;
            const std::uint64_t want =
                nondegenerate_part_split(q, f) ? static_cast<std::uint64_t>(poly(p)) : 0;
            if (q.corank() == 3 && cnt == want) ++ogr_ok;
        }
    }
    rep.checks.push_back({"Y3 points off the Plücker point", std::to_string(y3 - (g.ell >= 3 ? 1 : 0)),
                          std::to_string(off_px), off_px == y3 - (g.ell >= 3 ? 1 : 0)});
    rep.checks.push_back({"corank 3 fibers at those points", std::to_string(off_px), std::to_string(corank3),
                          corank3 == off_px});
    rep.checks.push_back({"OGr(k+2) count at those fibers (split: " + poly.str() + ", nonsplit: 0)",
                          std::to_string(off_px), std::to_string(ogr_ok), ogr_ok == off_px});
    if (const Component* g0 = inv.find("G0"); g0 && g0->dim && *g0->dim == 0 && inv.n == 2 * inv.k) {
        // Finite main component: one point per Y3 point (k = 1) or per split fiber.
        rep.notes.push_back("finite G0: |Y3 off the Plücker point| = " + std::to_string(off_px));
    }
    rep.notes.push_back("pointwise fiber counts only; the global twist of the double cover over Y3 is not visible");
    return rep;
}

}  // namespace gmq
