#pragma once

// Lookup layer for Hilbert schemes of linear spaces and quadrics on GM
// varieties: dimension tables, component inventories with structure tags,
// and pointwise finite-field hooks against EPW strata.

#include "gmq/gm.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace gmq {

inline int ell(int k, int n) { return 2 * k + 3 - n; }

/// Admissible (n, type): ordinary 2..5, special 3..6.
bool admissible(int n, GMType t);

struct TableCell {
    std::optional<int> dim;  // nullopt: empty
    std::string structure;
};

/// Columns F1, Fσ2, Fτ2, F3, F4 of the Grassmannian hull. Throws
/// std::invalid_argument on an inadmissible pair.
struct FkMxRow {
    int n = 0;
    GMType type = GMType::Ordinary;
    std::array<TableCell, 5> cells;
    static constexpr std::array<const char*, 5> names{"F1", "Fsigma2", "Ftau2", "F3", "F4"};
};
FkMxRow fk_mx_table(int n, GMType t);
/// Whole table in the paper's column order, as aligned text.
std::string fk_mx_text();

/// Counts supplied by a caller from strata scans.
struct StratumData {
    std::optional<std::uint64_t> y3_dual;  // |Y3 of A-perp|
    std::optional<int> px_stratum;         // ydual stratum at the Plücker point
    std::optional<std::uint64_t> y3_av5;   // |Y3_{A,V5}|
    std::optional<std::uint64_t> z4_av5;   // |Z4_{A,V5}|
};

struct Prediction {
    enum class Kind { Empty, Finite, Dimension };
    enum class Tag { Exact, UpperBound, GeneralOnly };
    std::string scheme;  // "F1", "Fsigma2", ...
    Kind kind = Kind::Empty;
    Tag tag = Tag::Exact;
    std::optional<int> dim;
    std::string statement;
    std::optional<std::uint64_t> finite_target;  // cardinality of the finite target, if known
};
std::vector<Prediction> fk_x_predict(int n, int k, const StratumData& data = {});
std::string tag_name(Prediction::Tag t);

struct Component {
    std::string name;        // G0, Gsigma, Gtau, Gsigmatau
    std::optional<int> dim;  // nullopt: empty
    std::string structure;
    std::optional<std::pair<std::string, std::string>> fibration;  // (base, fiber)
    std::string condition;   // when the dimension needs a nonempty finite set
};

struct HilbertInventory {
    int n = 0, k = 0;
    GMType type = GMType::Ordinary;
    std::optional<int> total_dim;  // dim of G_k(X) when stated
    std::vector<Component> components;
    std::vector<std::string> notes;

    const Component* find(const std::string& name) const;
    std::string to_json() const;
    std::string to_text() const;
};

/// Throws std::invalid_argument on inadmissible input.
HilbertInventory gk_structure(int n, int k, GMType t, const StratumData& data = {});

struct Cohomology {
    int h0_normal = 0;
    int h1_twisted = 0;
    int degree = 0;
};
Cohomology encapsulated_cohomology(int n, int t);

/// Pointwise checks of the finite predictions of an inventory against a
/// Lagrangian A over a small prime field (exhaustive dual census).
struct HookCheck {
    std::string name;
    std::string expected;
    std::string got;
    bool pass = false;
};
struct CrossCheckReport {
    std::vector<HookCheck> checks;
    std::vector<std::string> notes;
    bool pass() const;
    std::string to_json() const;
};
CrossCheckReport cross_check(const HilbertInventory& inv, const Subspace<Fp>& a, const Mat<Fp>& v5,
                             const Vec<Fp>& v0);

}  // namespace gmq
