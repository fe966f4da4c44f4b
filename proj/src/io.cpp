#include "gmq/io.hpp"

#include "gmq/digest.hpp"

#include <fstream>
#include <sstream>

namespace gmq {

std::string FieldSpec::name() const { return rational() ? "QQ" : "Fp " + std::to_string(p); }

FieldSpec parse_field_spec(const std::string& s) {
    if (s == "QQ" || s == "Q") return {0};
    std::string digits = s;
    for (const char* prefix : {"Fp:", "Fp ", "F", "p"}) {
        const std::string pre(prefix);
        if (digits.rfind(pre, 0) == 0) {
            digits = digits.substr(pre.size());
            break;
        }
    }
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
        throw FormatError("bad field '" + s + "': use Fp:<p>, <p> or QQ");
    const unsigned long long p = std::stoull(digits);
    if (p > (1ull << 31) || !is_prime(p) || p == 2) throw FormatError("field size " + digits + " is not an odd prime");
    return {static_cast<std::uint32_t>(p)};
}

std::optional<std::string> GmqDocument::get(const std::string& key) const {
    for (const auto& [k, v] : meta)
        if (k == key) return v;
    return std::nullopt;
}

void GmqDocument::set(const std::string& key, const std::string& value) {
    for (auto& [k, v] : meta)
        if (k == key) {
            v = value;
            return;
        }
    meta.emplace_back(key, value);
}

namespace {

std::string body(const GmqDocument& d) {
    std::ostringstream os;
    os << "gmq 1 " << d.kind << ' ' << d.field.name() << '\n';
    os << "dim " << d.ambient << ' ' << d.columns.size() << '\n';
    for (const auto& col : d.columns) {
        for (std::size_t i = 0; i < col.size(); ++i) os << (i ? " " : "") << col[i];
        os << '\n';
    }
    for (const auto& [k, v] : d.meta) os << "meta " << k << ' ' << v << '\n';
    return os.str();
}

}  // namespace

std::string GmqDocument::render() const {
    const std::string b = body(*this);
    return b + "meta sha256 " + sha256_hex(b) + '\n';
}

GmqDocument parse_gmq(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    GmqDocument d;
    auto next = [&](const char* what) {
        if (!std::getline(in, line)) throw FormatError(std::string("unexpected end of file: expected ") + what);
        return line;
    };
    {
        std::istringstream h(next("header"));
        std::string magic, version, field, rest;
        h >> magic >> version >> d.kind >> field;
        if (magic != "gmq") throw FormatError("not a gmq file");
        if (version != "1") throw FormatError("unsupported gmq version " + version);
        if (d.kind != "lagrangian" && d.kind != "gm") throw FormatError("unknown kind '" + d.kind + "'");
        if (field == "Fp") {
            h >> rest;
            d.field = parse_field_spec(rest);
        } else if (field == "QQ") {
            d.field = {0};
        } else {
            throw FormatError("unknown field '" + field + "'");
        }
    }
    long k = -1;
    {
        std::istringstream h(next("dim line"));
        std::string tag;
        h >> tag >> d.ambient >> k;
        if (tag != "dim" || d.ambient <= 0 || d.ambient > 64 || k < 0 || k > d.ambient)
            throw FormatError("bad dim line");
    }
    for (long j = 0; j < k; ++j) {
        std::istringstream row(next("basis column"));
        std::vector<std::string> col;
        std::string t;
        while (row >> t) col.push_back(t);
        if (static_cast<int>(col.size()) != d.ambient)
            throw FormatError("column " + std::to_string(j) + " has " + std::to_string(col.size()) + " entries, expected " +
                              std::to_string(d.ambient));
        for (const std::string& e : col) parse_entry<Q>(e, d.field);  // syntax check
        if (!d.field.rational())
            for (const std::string& e : col) parse_fp(e, d.field.p);
        d.columns.push_back(col);
    }
    std::optional<std::string> digest;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (digest) throw FormatError("content after the digest line");
        std::istringstream m(line);
        std::string tag, key;
        m >> tag >> key;
        if (tag != "meta" || key.empty()) throw FormatError("unexpected line: " + line);
        std::string value;
        std::getline(m, value);
        if (!value.empty() && value[0] == ' ') value.erase(0, 1);
        if (key == "sha256") digest = value;
        else d.meta.emplace_back(key, value);
    }
    if (digest && *digest != sha256_hex(body(d))) throw FormatError("digest mismatch: file is corrupted");
    return d;
}

GmqDocument read_gmq(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw FormatError("cannot open " + path);
    std::ostringstream os;
    os << f.rdbuf();
    return parse_gmq(os.str());
}

void write_gmq(const std::string& path, const GmqDocument& doc) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << doc.render();
    if (!f) throw std::runtime_error("write failed for " + path);
}

Fp parse_fp(const std::string& s, std::uint32_t p) {
    const Q q = parse_q(s);
    const auto num = boost::multiprecision::numerator(q);
    const auto den = boost::multiprecision::denominator(q);
    const long long n = static_cast<long long>(num % p);
    const long long dd = static_cast<long long>(den % p);
    if (dd == 0) throw FormatError("entry " + s + " has a denominator divisible by " + std::to_string(p));
    return Fp(n, p) * Fp(dd, p).inverse();
}

Q parse_q(const std::string& s) {
    const std::size_t slash = s.find('/');
    auto is_int = [](const std::string& t) {
        std::size_t i = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
        return i < t.size() && t.find_first_not_of("0123456789", i) == std::string::npos;
    };
    const std::string a = s.substr(0, slash), b = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!is_int(a) || !is_int(b) || b[0] == '-' || b[0] == '+') throw FormatError("bad entry '" + s + "'");
    using Z = boost::multiprecision::mpz_int;
    const Z den(b);
    if (den == 0) throw FormatError("zero denominator in '" + s + "'");
    return Q(Z(a[0] == '+' ? a.substr(1) : a), den);
}

}  // namespace gmq
