#include "spets/tabledata.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "spets/orders.hpp"

#ifndef SPETS_DEFAULT_DATA
#define SPETS_DEFAULT_DATA "data"
#endif

namespace spets {

std::string data_dir() {
    if (const char* env = std::getenv("SPETS_DATA"); env && *env) return env;
    return SPETS_DEFAULT_DATA;
}

std::string data_file(std::string_view relative) {
    std::string d = data_dir();
    if (!d.empty() && d.back() != '/') d += '/';
    return d + std::string(relative);
}

namespace {

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

const char* marker_text(Marker m) {
    switch (m) {
    case Marker::special: return "special";
    case Marker::cospecial: return "cospecial";
    default: return "-";
    }
}

std::string fr_text(const std::optional<FracExpMonomial>& fr) { return fr ? fr->str() : "?"; }

bool fr_compatible(const UnipotentCharacter& a, const UnipotentCharacter& b) {
    if (!a.fr || !b.fr) return true;
    return a.fr->mod_integral() == b.fr->mod_integral();
}

// Fields of a '|'-separated row with their 1-based start columns.
std::vector<std::pair<std::string, std::size_t>> split_row(std::string_view line) {
    std::vector<std::pair<std::string, std::size_t>> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
        if (i == line.size() || line[i] == '|') {
            std::size_t b = start;
            while (b < i && line[b] == ' ') ++b;
            out.emplace_back(trim(line.substr(start, i - start)), b + 1);
            start = i + 1;
        }
    }
    return out;
}

}  // namespace

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& msg)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg),
      line_(line), column_(column) {}

std::string format_degree(const LaurentPoly& p, const CycloSubfield& K) {
    if (p.is_zero()) return "0";
    Factorization f = factor_cyclotomic(p, K);
    std::vector<std::string> parts;
    if (!f.unit.is_one()) {
        if (f.unit == Cyclo(-1)) parts.push_back("-1");
        else if (f.unit.zumbroich_terms().size() > 1) parts.push_back("(" + f.unit.str() + ")");
        else parts.push_back(f.unit.str());
    }
    if (f.x_power == 1) parts.push_back("x");
    else if (f.x_power != 0) parts.push_back("x^" + std::to_string(f.x_power));
    auto with_exp = [](std::string s, long m) { return m > 1 ? s + "^" + std::to_string(m) : s; };
    std::size_t i = 0;
    while (i < f.factors.size()) {
        long d = f.factors[i].first.root_order;
        std::size_t j = i;
        while (j < f.factors.size() && f.factors[j].first.root_order == d) ++j;
        std::size_t complete = k_cyclotomic_factors(d, K).size();
        long mm = 0;
        if (complete > 1 && j - i == complete) {
            mm = f.factors[i].second;
            for (std::size_t t = i; t < j; ++t) mm = std::min(mm, f.factors[t].second);
            parts.push_back(with_exp("Phi" + std::to_string(d), mm));
        }
        for (std::size_t t = i; t < j; ++t) {
            long m = f.factors[t].second - mm;
            if (m > 0) parts.push_back(with_exp(f.factors[t].first.label, m));
        }
        i = j;
    }
    if (!f.rest.is_constant()) parts.push_back("(" + f.rest.str() + ")");
    if (parts.empty()) return "1";
    std::string out;
    for (std::size_t t = 0; t < parts.size(); ++t) {
        if (t) out += "*";
        out += parts[t];
    }
    return out;
}

UchTable parse_uch(std::string_view text) {
    UchTable t;
    std::istringstream in{std::string(text)};
    std::string raw;
    std::size_t ln = 0;
    int current = -1;
    bool have_group = false;
    while (std::getline(in, raw)) {
        ++ln;
        std::string line = trim(raw);
        if (line.empty() || line[0] == '#') continue;
        if (line.find('|') != std::string::npos) {
            if (current < 0) throw ParseError(ln, 1, "row before any family line");
            auto f = split_row(raw);
            if (f.size() != 5 && f.size() != 6)
                throw ParseError(ln, 1, "expected 5 or 6 fields, found " + std::to_string(f.size()));
            UnipotentCharacter r;
            r.name = f[0].first;
            if (r.name.empty()) throw ParseError(ln, f[0].second, "empty name");
            try {
                r.degree = LaurentPoly::parse(f[1].first);
            } catch (const std::exception& e) {
                throw ParseError(ln, f[1].second, std::string("bad degree: ") + e.what());
            }
            if (r.degree.is_zero()) throw ParseError(ln, f[1].second, "zero degree");
            if (f[2].first != "?") {
                try {
                    r.fr = FracExpMonomial::parse(f[2].first).mod_integral();
                } catch (const std::exception& e) {
                    throw ParseError(ln, f[2].second, std::string("bad eigenvalue: ") + e.what());
                }
            }
            char* end = nullptr;
            long fam = std::strtol(f[3].first.c_str(), &end, 10);
            if (f[3].first.empty() || *end) throw ParseError(ln, f[3].second, "bad family index");
            if (fam != current) throw ParseError(ln, f[3].second, "family index differs from the enclosing block");
            r.family = current;
            const std::string& mk = f[4].first;
            if (mk == "special") r.marker = Marker::special;
            else if (mk == "cospecial") r.marker = Marker::cospecial;
            else if (mk != "-") throw ParseError(ln, f[4].second, "bad marker '" + mk + "'");
            if (f.size() == 6) r.symbol = f[5].first;
            if (t.find(r.name)) throw ParseError(ln, f[0].second, "duplicate name " + r.name);
            t.rows.push_back(std::move(r));
            continue;
        }
        std::size_t sp = line.find(' ');
        std::string key = line.substr(0, sp);
        std::string rest = sp == std::string::npos ? "" : trim(std::string_view(line).substr(sp + 1));
        std::size_t col = raw.find(key) + key.size() + 2;
        if (key == "group") {
            if (rest.empty()) throw ParseError(ln, col, "missing group name");
            t.group = rest;
            have_group = true;
        } else if (key == "conductor") {
            char* end = nullptr;
            long c = std::strtol(rest.c_str(), &end, 10);
            if (rest.empty() || *end || c < 1) throw ParseError(ln, col, "bad conductor");
            t.conductor = c;
        } else if (key == "order") {
            try {
                t.order = LaurentPoly::parse(rest);
            } catch (const std::exception& e) {
                throw ParseError(ln, col, std::string("bad order: ") + e.what());
            }
        } else if (key == "series" || key == "hc") {
            std::size_t s2 = rest.find(' ');
            if (s2 == std::string::npos) throw ParseError(ln, col, key + " line needs a label and an algebra");
            SeriesLine sl{rest.substr(0, s2), trim(std::string_view(rest).substr(s2 + 1))};
            (key == "series" ? t.series : t.hc).push_back(std::move(sl));
        } else if (key == "family") {
            char* end = nullptr;
            long fam = std::strtol(rest.c_str(), &end, 10);
            if (rest.empty() || *end) throw ParseError(ln, col, "bad family index");
            if (fam != current + 1 && !(current < 0 && fam == 1) && fam != 0)
                throw ParseError(ln, col, "family indices must be consecutive from 1");
            current = static_cast<int>(fam);
        } else {
            throw ParseError(ln, 1, "unknown keyword '" + key + "'");
        }
    }
    if (!have_group) throw ParseError(ln + 1, 1, "missing group line");
    if (t.rows.empty()) throw ParseError(ln + 1, 1, "table has no characters");
    return t;
}

std::string emit_uch(const UchTable& t) {
    auto K = CycloSubfield::cyclotomic(t.conductor);
    std::ostringstream out;
    out << "group " << t.group << "\n";
    out << "conductor " << t.conductor << "\n";
    out << "order " << t.order.str() << "\n";
    for (const auto& s : t.series) out << "series " << s.label << " " << s.spec << "\n";
    for (const auto& s : t.hc) out << "hc " << s.label << " " << s.spec << "\n";
    auto block = [&](int f) {
        out << "family " << f << "\n";
        for (std::size_t i : t.family(f)) {
            const auto& r = t.rows[i];
            out << r.name << " | " << format_degree(r.degree, K) << " | " << fr_text(r.fr) << " | " << f << " | "
                << marker_text(r.marker);
            if (!r.symbol.empty()) out << " | " << r.symbol;
            out << "\n";
        }
    };
    for (int f = 1; f <= t.family_count(); ++f) block(f);
    if (!t.family(0).empty()) block(0);
    return out.str();
}

UchTable load_uch(const std::string& path) { return parse_uch(read_file(path)); }

std::vector<std::string> uch_warnings(const UchTable& t) {
    std::vector<std::string> w;
    if (t.order.is_zero()) return w;
    for (const auto& r : t.rows)
        if (!t.order.div_exact(r.degree)) w.push_back(r.name + ": degree does not divide the order");
    return w;
}

std::vector<DiffEntry> TableDiff::mismatches() const {
    std::vector<DiffEntry> out;
    for (const auto& e : entries)
        if (e.kind != DiffKind::rename && e.kind != DiffKind::sign_only) out.push_back(e);
    return out;
}

std::string TableDiff::str() const {
    static const char* names[] = {"missing-left", "missing-right", "fr", "family", "marker", "header", "rename", "sign"};
    std::ostringstream out;
    for (const auto& e : entries) {
        out << names[static_cast<int>(e.kind)] << " " << (e.left.empty() ? "-" : e.left) << " "
            << (e.right.empty() ? "-" : e.right);
        if (!e.detail.empty()) out << " " << e.detail;
        out << "\n";
    }
    return out.str();
}

namespace {

struct Pairing {
    std::vector<std::optional<std::size_t>> partner;  // left -> right
    std::vector<int> sign;
    std::vector<bool> fr_ok;
};

Pairing pair_rows(const UchTable& L, const UchTable& R) {
    Pairing p;
    p.partner.assign(L.rows.size(), std::nullopt);
    p.sign.assign(L.rows.size(), 1);
    p.fr_ok.assign(L.rows.size(), true);
    std::vector<bool> used(R.rows.size(), false);
    // Passes from strictest to loosest: exact degree and Fr with equal names, exact
    // degree and Fr, sign-only with Fr, exact degree alone.
    for (int pass = 0; pass < 4; ++pass) {
        for (std::size_t i = 0; i < L.rows.size(); ++i) {
            if (p.partner[i]) continue;
            const auto& l = L.rows[i];
            for (std::size_t j = 0; j < R.rows.size(); ++j) {
                if (used[j]) continue;
                const auto& r = R.rows[j];
                bool ok = false;
                int sign = 1;
                if (pass == 0) ok = l.name == r.name && l.degree == r.degree && fr_compatible(l, r);
                else if (pass == 1) ok = l.degree == r.degree && fr_compatible(l, r);
                else if (pass == 2) {
                    ok = (!l.sign_resolved || !r.sign_resolved) && l.degree == r.degree.scaled(Cyclo(-1)) &&
                         fr_compatible(l, r);
                    sign = -1;
                } else ok = l.degree == r.degree;
                if (!ok) continue;
                p.partner[i] = j;
                p.sign[i] = sign;
                p.fr_ok[i] = fr_compatible(l, r);
                used[j] = true;
                break;
            }
        }
    }
    return p;
}

}  // namespace

TableDiff diff_tables(const UchTable& L, const UchTable& R) {
    TableDiff d;
    if (L.group != R.group) d.entries.push_back({DiffKind::header, L.group, R.group, "group"});
    if (L.conductor != R.conductor)
        d.entries.push_back({DiffKind::header, std::to_string(L.conductor), std::to_string(R.conductor), "conductor"});
    if (L.order != R.order) d.entries.push_back({DiffKind::header, L.order.str(), R.order.str(), "order"});
    Pairing p = pair_rows(L, R);
    std::vector<bool> hit(R.rows.size(), false);
    std::map<int, std::set<int>> lf, rf;
    for (std::size_t i = 0; i < L.rows.size(); ++i) {
        const auto& l = L.rows[i];
        if (!p.partner[i]) {
            d.entries.push_back({DiffKind::missing_right, l.name, "", l.degree.str()});
            continue;
        }
        const auto& r = R.rows[*p.partner[i]];
        hit[*p.partner[i]] = true;
        if (l.name != r.name) d.entries.push_back({DiffKind::rename, l.name, r.name, ""});
        if (p.sign[i] < 0) d.entries.push_back({DiffKind::sign_only, l.name, r.name, ""});
        if (!p.fr_ok[i]) d.entries.push_back({DiffKind::fr, l.name, r.name, fr_text(l.fr) + " vs " + fr_text(r.fr)});
        if (l.marker != r.marker)
            d.entries.push_back(
                {DiffKind::marker, l.name, r.name, std::string(marker_text(l.marker)) + " vs " + marker_text(r.marker)});
        lf[l.family].insert(r.family);
        rf[r.family].insert(l.family);
    }
    for (std::size_t j = 0; j < R.rows.size(); ++j)
        if (!hit[j]) d.entries.push_back({DiffKind::missing_left, "", R.rows[j].name, R.rows[j].degree.str()});
    for (const auto& [f, s] : lf)
        if (s.size() > 1) d.entries.push_back({DiffKind::family, std::to_string(f), "", "split across reference families"});
    for (const auto& [f, s] : rf)
        if (s.size() > 1) d.entries.push_back({DiffKind::family, "", std::to_string(f), "merges computed families"});
    return d;
}

void adopt_reference(UchTable& computed, const UchTable& reference) {
    Pairing p = pair_rows(computed, reference);
    for (std::size_t i = 0; i < computed.rows.size(); ++i) {
        if (!p.partner[i]) continue;
        auto& c = computed.rows[i];
        const auto& r = reference.rows[*p.partner[i]];
        c.name = r.name;
        if (p.sign[i] < 0) c.degree = r.degree;
        c.sign_resolved = true;
        c.symbol = r.symbol;
        if (!c.fr) c.fr = r.fr;
    }
}

std::vector<SchurEntry> parse_schur(std::string_view text, std::string* group) {
    std::vector<SchurEntry> out;
    std::istringstream in{std::string(text)};
    std::string raw;
    std::size_t ln = 0;
    while (std::getline(in, raw)) {
        ++ln;
        std::string line = trim(raw);
        if (line.empty() || line[0] == '#') continue;
        if (line.rfind("group ", 0) == 0) {
            if (group) *group = trim(std::string_view(line).substr(6));
            continue;
        }
        auto f = split_row(raw);
        if (f.size() != 3) throw ParseError(ln, 1, "expected theta | schur | block");
        SchurEntry e;
        e.theta = f[0].first;
        try {
            e.schur = LaurentPoly::parse(f[1].first);
        } catch (const std::exception& ex) {
            throw ParseError(ln, f[1].second, std::string("bad Schur element: ") + ex.what());
        }
        char* end = nullptr;
        e.block = static_cast<int>(std::strtol(f[2].first.c_str(), &end, 10));
        if (f[2].first.empty() || *end || e.block < 1) throw ParseError(ln, f[2].second, "bad block index");
        out.push_back(std::move(e));
    }
    if (out.empty()) throw ParseError(ln + 1, 1, "no Schur elements");
    return out;
}

std::string emit_schur(const std::string& group, const std::vector<SchurEntry>& entries, const CycloSubfield& K) {
    std::ostringstream out;
    out << "group " << group << "\n";
    for (const auto& e : entries) out << e.theta << " | " << format_degree(e.schur, K) << " | " << e.block << "\n";
    return out.str();
}

std::vector<SchurEntry> load_schur(const std::string& group) {
    return parse_schur(read_file(data_file("schur/" + table_stem(group) + ".txt")));
}

bool is_spetsial(std::string_view g) {
    std::string s;
    for (char c : g)
        if (!std::isspace(static_cast<unsigned char>(c)) && c != '_' && c != '{' && c != '}') s += c;
    auto all_digits = [](std::string_view t) {
        return !t.empty() && std::all_of(t.begin(), t.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
    };
    if (s.size() > 1 && s[0] == 'Z' && all_digits(std::string_view(s).substr(1))) return true;
    if (s.size() > 2 && s[0] == 'G' && s[1] == '(' && s.back() == ')') {
        std::vector<long> v;
        std::stringstream ss(s.substr(2, s.size() - 3));
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            if (!all_digits(tok)) throw std::invalid_argument("bad group name " + std::string(g));
            v.push_back(std::stol(tok));
        }
        if (v.size() != 3 || v[0] < 1 || v[1] < 1 || v[2] < 1 || v[0] % v[1] != 0)
            throw std::invalid_argument("bad group name " + std::string(g));
        return v[1] == 1 || v[1] == v[0];
    }
    if (s.size() > 1 && s[0] == 'G' && all_digits(std::string_view(s).substr(1))) {
        long i = std::stol(s.substr(1));
        if (i < 4 || i > 37) throw std::invalid_argument("no exceptional group " + std::string(g));
        // Well-generated and generated by involutive reflections.
        static const std::set<long> involutive_wg = {23, 24, 27, 28, 29, 30, 33, 34, 35, 36, 37};
        static const std::set<long> extra = {4, 6, 8, 14, 25, 26, 32};
        return involutive_wg.count(i) || extra.count(i);
    }
    throw std::invalid_argument("bad group name " + std::string(g));
}

std::string table_stem(const std::string& group) {
    std::string s;
    for (char c : group)
        if (std::isalnum(static_cast<unsigned char>(c))) s += c;
    return s;
}

}  // namespace spets
