// gmq: command-line front end for generation, scans, verification and tables.

#include "gmq/fibration.hpp"
#include "gmq/hilbert.hpp"
#include "gmq/io.hpp"
#include "gmq/ogr.hpp"
#include "gmq/verify.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <fstream>
#include <iostream>

using namespace gmq;

namespace {

enum Exit { kPass = 0, kFail = 1, kInvalid = 2 };

struct Options {
    std::string field = "Fp:101";
    std::uint64_t seed = 1;
    int samples = 50;
    std::string out;
    std::string report = "table";
    std::string input;
};

void emit(const Options& o, const std::string& text) {
    if (o.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(o.out);
    if (!f) throw std::runtime_error("cannot write " + o.out);
    f << text;
}

int finish(const Options& o, const VerificationReport& r) {
    emit(o, o.report == "json" ? r.to_json_lines() : r.to_table());
    return r.failed() == 0 ? kPass : kFail;
}

Vec<Fp> parse_vector(const std::string& s, const PrimeField& f) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    for (std::string t; std::getline(ss, t, ',');) parts.push_back(t);
    if (parts.size() != 6) throw FormatError("a functional needs 6 comma-separated entries");
    Vec<Fp> v(6);
    for (int i = 0; i < 6; ++i) v(i) = parse_fp(parts[i], f.characteristic());
    if (all_zero(v)) throw FormatError("zero functional");
    return v;
}

std::pair<StratumTarget, bool> parse_stratum(const std::string& s) {
    const auto colon = s.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("--stratum expects dual:<l> or primal:<l>");
    const std::string kind = s.substr(0, colon);
    StratumTarget t;
    if (kind == "dual") t.kind = StratumTarget::Kind::Dual;
    else if (kind == "primal") t.kind = StratumTarget::Kind::Primal;
    else throw std::invalid_argument("unknown stratum kind '" + kind + "'");
    t.ell = std::stoi(s.substr(colon + 1));
    if (t.ell < 0 || t.ell > 3) throw std::invalid_argument("planted stratum must lie in 0..3");
    return {t, true};
}

template <class F>
GmqDocument gen_lagrangian(const F& f, const FieldSpec& spec, std::uint64_t seed, const std::string& stratum) {
    using S = typename F::Scalar;
    GmqDocument d;
    if (stratum.empty()) {
        const LagrangianSubspace<S> a = random_lagrangian(f, seed);
        d = lagrangian_document(a.space, spec);
        d.set("provenance", a.provenance);
    } else {
        const auto [target, ok] = parse_stratum(stratum);
        (void)ok;
        const auto pl = lagrangian_with_stratum(f, target, seed);
        d = lagrangian_document(pl.a.space, spec);
        d.set("provenance", pl.a.provenance);
        d.set("stratum", stratum);
        d.set("locus", flat_text(pl.locus));
        const int got = target.kind == StratumTarget::Kind::Dual ? ydual_stratum(pl.a.space, pl.locus)
                                                                 : y_stratum(pl.a.space, Vec<S>(pl.locus.col(0)));
        if (got != target.ell) throw std::runtime_error("planted stratum was not realized");
    }
    d.set("seed", std::to_string(seed));
    return d;
}

template <class F>
GmqDocument gen_gm(const F& f, const FieldSpec& spec, std::uint64_t seed, int n, GMType t) {
    using S = typename F::Scalar;
    const GMVariety<S> x = random_gm(n, t, f, seed);
    if (const auto v = gm_violation(x)) throw std::runtime_error("generated data is invalid: " + *v);
    GmqDocument d = gm_document(x, spec);
    d.set("seed", std::to_string(seed));
    return d;
}

/// Validates a .gmq file of either kind; throws FormatError on any problem.
VerificationReport validate_input(const std::string& path) {
    const GmqDocument d = read_gmq(path);
    auto check = [&](auto tag) {
        using S = decltype(tag);
        if (d.kind == "lagrangian") lagrangian_from<S>(d);
        else if (d.kind == "gm") gm_from<S>(d);
        else throw FormatError("unknown kind " + d.kind);
    };
    if (d.field.rational()) check(Q{});
    else check(Fp{});
    VerificationReport r;
    r.suite = "input";
    r.cases.push_back({"input", "input file validates", "well-formed Lagrangian or GM data",
                       sha256_hex(d.render()).substr(0, 16), "valid", "valid", true});
    return r;
}

Subspace<Fp> load_or_random_lagrangian(const Options& o, const PrimeField& f) {
    if (o.input.empty()) return random_valid_lagrangian(f, o.seed).space;
    const GmqDocument d = read_gmq(o.input);
    if (d.field.rational() || d.field.p != f.characteristic())
        throw FormatError("input field " + d.field.name() + " does not match --field " + f.name());
    return lagrangian_from<Fp>(d);
}

PrimeField prime_field(const FieldSpec& s, const char* cmd) {
    if (s.rational()) throw std::invalid_argument(std::string(cmd) + " needs a prime field");
    return PrimeField(s.p);
}

template <class F>
VerificationReport gm_corank_check(const F& f, const GMVariety<typename F::Scalar>& x, const Options& o) {
    using S = typename F::Scalar;
    std::mt19937_64 rng(case_seed(o.seed, 0));
    const Subspace<S> v5 = Subspace<S>::full(5, f(1));
    VerificationReport r;
    r.suite = "corank-check";
    int vanish = 0, eq = 0;
    for (int i = 0; i < o.samples; ++i) {
        const Mat<S> u4 = random_subspace(f, v5, 4, rng).basis();
        vanish += verify_u4_vanishing(x, u4);
        if (x.type == GMType::Ordinary) eq += e_stratum_check(x, u4).equal();
    }
    const std::string dg = matrix_digest(x.w.basis());
    auto add = [&](const std::string& c, const std::string& a, int got) {
        r.cases.push_back({r.suite, c, a, dg, std::to_string(o.samples), std::to_string(got), got == o.samples});
    };
    add("U4 Plücker forms vanish on the fiber space", "vanishing on W over [U4]", vanish);
    if (x.type == GMType::Ordinary)
        add("corank on E equals corank of kappa-tilde-dual", "E-stratification by kappa-tilde-dual", eq);
    return r;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"gmq: exact linear algebra for GM varieties and EPW strata"};
    app.require_subcommand(1);
    Options o;
    app.add_option("--field", o.field, "Fp:<p>, <p> or QQ");
    app.add_option("--seed", o.seed, "seed determining all randomness");
    app.add_option("--samples", o.samples, "sample budget")->check(CLI::PositiveNumber);
    app.add_option("--out", o.out, "output path (default stdout)");
    app.add_option("--report", o.report, "report format")->check(CLI::IsMember({"json", "table"}));

    int n = 4, k = -1, c = 0, p = 1;
    std::string type = "ordinary", stratum, suite = "all", locus = "Ydual", phi0, phi1;
    bool type_given = false;

    CLI::App* gen = app.add_subcommand("gen", "generate a Lagrangian or GM data file");
    std::string kind;
    gen->add_option("kind", kind, "lagrangian | gm")->required()->check(CLI::IsMember({"lagrangian", "gm"}));
    gen->add_option("--stratum", stratum, "plant a point: dual:<l> or primal:<l>");
    gen->add_option("--n", n, "GM dimension");
    gen->add_option("--type", type, "ordinary | special");

    CLI::App* verify = app.add_subcommand("verify", "run verification suites");
    verify->add_option("--suite", suite, "algebra | epw | fibration | ogr | tables | all");
    verify->add_option("--input", o.input, "validate this .gmq file first");

    CLI::App* scan = app.add_subcommand("scan", "exhaustive stratum census over a small prime field");
    scan->add_option("--locus", locus, "Y | Ydual | Z");
    scan->add_option("--input", o.input, "Lagrangian .gmq file (default: random valid A)");

    CLI::App* tables = app.add_subcommand("tables", "hull table and Hilbert scheme inventories");
    tables->add_option("--n", n, "GM dimension");
    tables->add_option("--k", k, "dimension of the quadrics");
    tables->add_option("--type", type, "ordinary | special")->each([&](const std::string&) { type_given = true; });

    CLI::App* sextic = app.add_subcommand("sextic-line", "restrict the dual EPW sextic to a line");
    sextic->add_option("--input", o.input, "Lagrangian .gmq file (default: random valid A)");
    sextic->add_option("--phi0", phi0, "first functional, 6 comma-separated entries");
    sextic->add_option("--phi1", phi1, "second functional");

    CLI::App* ogr = app.add_subcommand("ogr-count", "count isotropic subspaces of a split degenerate form");
    ogr->add_option("--n", n, "the form lives on n + 1 dimensions")->required();
    ogr->add_option("--c", c, "corank")->required();
    ogr->add_option("--p", p, "isotropic dimension")->required();

    CLI::App* corank = app.add_subcommand("corank-check", "compare fiber coranks with EPW strata");
    corank->add_option("--input", o.input, "Lagrangian or GM .gmq file (default: random valid A)");

    for (CLI::App* s : {gen, verify, scan, tables, sextic, ogr, corank}) s->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kPass : kInvalid;
    }

    try {
        const FieldSpec spec = parse_field_spec(o.field);

        if (*gen) {
            GmqDocument d;
            if (kind == "lagrangian") {
                d = spec.rational() ? gen_lagrangian(RationalField(), spec, o.seed, stratum)
                                    : gen_lagrangian(PrimeField(spec.p), spec, o.seed, stratum);
            } else {
                const GMType t = parse_gm_type(type);
                d = spec.rational() ? gen_gm(RationalField(), spec, o.seed, n, t)
                                    : gen_gm(PrimeField(spec.p), spec, o.seed, n, t);
            }
            emit(o, d.render());
            return kPass;
        }

        if (*verify) {
            VerificationReport r;
            r.suite = suite;
            if (!o.input.empty()) r = validate_input(o.input);
            VerifyConfig cfg{spec, o.seed, o.samples};
            const VerificationReport s = run_suite(suite, cfg);
            r.suite = s.suite;
            r.cases.insert(r.cases.end(), s.cases.begin(), s.cases.end());
            return finish(o, r);
        }

        if (*scan) {
            const PrimeField f = prime_field(spec, "scan");
            const Subspace<Fp> a = load_or_random_lagrangian(o, f);
            StratumCensus cen = scan_strata(a, parse_locus(locus));
            if (o.input.empty()) cen.seed = o.seed;
            if (o.report == "json") {
                emit(o, cen.to_json() + "\n");
            } else {
                std::ostringstream os;
                os << locus_name(cen.locus) << " over F" << cen.p << "\n";
                for (const auto& [ell, cnt] : cen.counts) os << "  stratum " << ell << ": " << cnt << "\n";
                os << "  total " << cen.total << " of " << cen.expected_total() << "\n";
                os << "  invariants " << (cen.invariants_hold() ? "hold" : "FAIL") << "\n";
                emit(o, os.str());
            }
            return cen.invariants_hold() ? kPass : kFail;
        }

        if (*tables) {
            const GMType t = parse_gm_type(type);
            if (k >= 0) {
                const HilbertInventory inv = gk_structure(n, k, t);
                emit(o, o.report == "json" ? inv.to_json() + "\n" : inv.to_text());
            } else if (type_given) {
                const FkMxRow row = fk_mx_table(n, t);
                nlohmann::ordered_json j{{"n", n}, {"type", gm_type_name(t)}};
                for (std::size_t i = 0; i < row.cells.size(); ++i)
                    j[FkMxRow::names[i]] = row.cells[i].dim ? nlohmann::json(*row.cells[i].dim) : nlohmann::json();
                emit(o, j.dump() + "\n");
            } else {
                emit(o, fk_mx_text());
            }
            return kPass;
        }

        if (*sextic) {
            const PrimeField f = prime_field(spec, "sextic-line");
            const Subspace<Fp> a = load_or_random_lagrangian(o, f);
            std::mt19937_64 rng(case_seed(o.seed, 0));
            const Vec<Fp> p0 = phi0.empty() ? Vec<Fp>(random_matrix<Fp>(f, 6, 1, rng).col(0)) : parse_vector(phi0, f);
            const Vec<Fp> p1 = phi1.empty() ? Vec<Fp>(random_matrix<Fp>(f, 6, 1, rng).col(0)) : parse_vector(phi1, f);
            const SexticReport r = sextic_on_line(f, a, p0, p1);
            nlohmann::ordered_json j{{"field", f.name()},
                                     {"degree", r.degree},
                                     {"squarefree", r.squarefree},
                                     {"roots_verified", r.roots_verified},
                                     {"infinity_stratum", r.infinity_stratum}};
            nlohmann::json roots = nlohmann::json::array();
            for (std::size_t i = 0; i < r.roots.size(); ++i)
                roots.push_back({{"t", to_string(r.roots[i].first)},
                                 {"multiplicity", r.roots[i].second},
                                 {"stratum", r.root_strata[i]}});
            j["roots"] = roots;
            emit(o, j.dump() + "\n");
            return r.roots_verified ? kPass : kFail;
        }

        if (*ogr) {
            const PrimeField f = prime_field(spec, "ogr-count");
            if (n < 1 || c < 0 || c > n + 1 || p < 1 || p > n + 1)
                throw std::invalid_argument("need n >= 1, 0 <= c <= n + 1, 1 <= p <= n + 1");
            const IsotropicEnumeration e = enumerate_isotropic(QuadraticSpace<Fp>(split_form(f, n, c)), p);
            const int expected = c >= ogr_ell(n, p) ? ogr_N(n, p) + ogr_delta(c, ogr_ell(n, p)) : -1;
            emit(o, ogr_csv({OGrTableRow{n, c, p, f.characteristic(), e.summary.count, expected}}));
            return kPass;
        }

        if (*corank) {
            if (!o.input.empty() && read_gmq(o.input).kind == "gm") {
                const GmqDocument d = read_gmq(o.input);
                if (d.field.rational()) return finish(o, gm_corank_check(RationalField(), gm_from<Q>(d), o));
                return finish(o, gm_corank_check(PrimeField(d.field.p), gm_from<Fp>(d), o));
            }
            const PrimeField f = prime_field(spec, "corank-check");
            const Subspace<Fp> a = load_or_random_lagrangian(o, f);
            std::mt19937_64 rng(case_seed(o.seed, 0));
            const Mat<Fp> id = identity<Fp>(6, f(1));
            const BStratificationReport b =
                b_stratification_check(f, a, Mat<Fp>(id.leftCols(5)), Vec<Fp>(id.col(5)), o.samples, rng);
            VerificationReport r;
            r.suite = "corank-check";
            std::string hist;
            for (const auto& [cr, cnt] : b.histogram) hist += (hist.empty() ? "" : " ") + std::to_string(cr) + ":" + std::to_string(cnt);
            r.cases.push_back({r.suite, "fiber corank equals dual stratum off E (" + hist + ")",
                               "corank stratification matches the dual EPW strata", matrix_digest(a.basis()), "0",
                               std::to_string(b.mismatches), b.pass()});
            return finish(o, r);
        }
    } catch (const FormatError& e) {
        std::cerr << "gmq: invalid input: " << e.what() << "\n";
        return kInvalid;
    } catch (const FieldError& e) {
        std::cerr << "gmq: invalid field: " << e.what() << "\n";
        return kInvalid;
    } catch (const std::invalid_argument& e) {
        std::cerr << "gmq: invalid argument: " << e.what() << "\n";
        return kInvalid;
    } catch (const BudgetError& e) {
        std::cerr << "gmq: over budget: " << e.what() << "\n";
        return kInvalid;
    } catch (const std::exception& e) {
        std::cerr << "gmq: " << e.what() << "\n";
        return kFail;
    }
    return kPass;
}
