#include "spets/kcyclo.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "expr.hpp"
#include "spets/data.hpp"

namespace spets {

namespace {

std::vector<long> units_mod(long n) {
    if (n == 1) return {1};
    std::vector<long> u;
    for (long k = 1; k < n; ++k)
        if (std::gcd(k, n) == 1) u.push_back(k);
    return u;
}

std::string trim(std::string s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

long label_root_order(const std::string& label) {
    std::size_t p = label.size();
    while (p > 0 && std::isdigit(static_cast<unsigned char>(label[p - 1]))) --p;
    if (p == label.size()) throw std::invalid_argument("label without root order: " + label);
    return std::stol(label.substr(p));
}

struct LabelStore {
    std::recursive_mutex mu;
    bool loaded = false;
    std::vector<LabelEntry> entries;
};

LabelStore& store() {
    static LabelStore s;
    return s;
}

std::vector<LabelEntry> read_labels(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open label file " + path);
    std::vector<LabelEntry> out;
    std::string line, field;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw std::runtime_error(path + ":" + std::to_string(lineno) + ": bad section header");
            field = line.substr(1, line.size() - 2);
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos || field.empty())
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": expected `label = polynomial`");
        LabelEntry e;
        e.field = field;
        e.label = trim(line.substr(0, eq));
        e.root_order = label_root_order(e.label);
        try {
            e.poly = LaurentPoly::parse(trim(line.substr(eq + 1)));
        } catch (const std::exception& ex) {
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": " + ex.what());
        }
        out.push_back(std::move(e));
    }
    return out;
}

std::string canonical_key(const LaurentPoly& p) {
    std::string k;
    for (const auto& c : p.coeffs()) k += c.str() + ";";
    return k;
}

}  // namespace

CycloSubfield CycloSubfield::cyclotomic(long n) {
    if (n < 1) throw std::invalid_argument("field conductor must be positive");
    std::string name = n <= 2 ? "Q" : (n == 4 ? "Q(i)" : "Q(ζ" + std::to_string(n) + ")");
    return generated_by({Cyclo::root_of_unity(n, 1)}, name);
}

CycloSubfield CycloSubfield::generated_by(const std::vector<Cyclo>& gens, std::string name) {
    CycloSubfield K;
    K.n_ = 1;
    for (const auto& g : gens) K.n_ = lcm_conductor(K.n_, g.conductor());
    K.h_.clear();
    for (long k : units_mod(K.n_)) {
        bool fixes = std::all_of(gens.begin(), gens.end(), [&](const Cyclo& g) { return g.galois(k) == g; });
        if (fixes) K.h_.push_back(k);
    }
    // Shrink the ambient conductor while the fixing group contains the kernel.
    for (bool again = true; again && K.n_ > 1;) {
        again = false;
        for (long p : prime_divisors(K.n_)) {
            long m = K.n_ / p;
            if (m % 4 == 2) m /= 2;
            if (m == K.n_) continue;
            bool ok = true;
            std::set<long> h(K.h_.begin(), K.h_.end());
            for (long k : units_mod(K.n_))
                if (k % m == 1 % m && !h.count(k)) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            std::set<long> hm;
            for (long k : K.h_) hm.insert(m == 1 ? 1 : k % m);
            K.n_ = m;
            K.h_.assign(hm.begin(), hm.end());
            again = true;
            break;
        }
    }
    if (K.n_ == 1) K.h_ = {1};
    K.name_ = name.empty() ? (K.n_ == 1 ? "Q" : "K") : std::move(name);
    return K;
}

CycloSubfield CycloSubfield::parse(std::string_view text) {
    std::string s = trim(std::string(text));
    if (s.empty()) throw std::invalid_argument("empty field description");
    if (std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
        return cyclotomic(std::stol(s));
    if (s == "Q") return generated_by({}, "Q");
    if (s.size() < 4 || s.substr(0, 2) != "Q(" || s.back() != ')')
        throw std::invalid_argument("field description must look like Q(...): " + s);
    std::vector<Cyclo> gens;
    std::string inner = s.substr(2, s.size() - 3);
    std::stringstream ss(inner);
    std::string g;
    while (std::getline(ss, g, ',')) gens.push_back(Cyclo::parse(trim(g)));
    return generated_by(gens, s);
}

long CycloSubfield::degree() const { return euler_phi(n_) / static_cast<long>(h_.size()); }

bool CycloSubfield::contains(const Cyclo& z) const {
    if (z.is_rational()) return true;
    if (n_ % z.conductor() != 0) return false;
    return std::all_of(h_.begin(), h_.end(), [&](long k) { return z.galois(k) == z; });
}

const std::vector<LabelEntry>& cyclotomic_labels() {
    auto& s = store();
    std::lock_guard lk(s.mu);
    if (!s.loaded) {
        s.loaded = true;
        s.entries = read_labels(data_file("labels/kcyclotomic.txt"));
    }
    return s.entries;
}

void load_cyclotomic_labels(const std::string& path) {
    auto entries = read_labels(path);
    auto& s = store();
    std::lock_guard lk(s.mu);
    s.entries = std::move(entries);
    s.loaded = true;
}

std::optional<LaurentPoly> cyclotomic_label_poly(const std::string& label) {
    if (label.size() > 3 && label.compare(0, 3, "Phi") == 0 &&
        std::all_of(label.begin() + 3, label.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
        long d = std::stol(label.substr(3));
        if (d < 1) return std::nullopt;
        return LaurentPoly::cyclotomic(d);
    }
    for (const auto& e : cyclotomic_labels())
        if (e.label == label) return e.poly;
    return std::nullopt;
}

std::vector<KCycloPoly> k_cyclotomic_factors(long d, const CycloSubfield& K) {
    if (d < 1) throw std::invalid_argument("root order must be positive");
    const long L = std::lcm(d, K.conductor());
    const std::set<long> h(K.fixing_group().begin(), K.fixing_group().end());
    std::vector<long> gal;
    for (long k : units_mod(L)) {
        if (h.count(K.conductor() == 1 ? 1 : k % K.conductor())) gal.push_back(k);
    }
    std::vector<bool> seen(static_cast<std::size_t>(d), false);
    std::vector<KCycloPoly> out;
    for (long j : units_mod(d)) {
        long j0 = j % d;
        if (seen[static_cast<std::size_t>(j0)]) continue;
        std::set<long> orbit;
        for (long k : gal) orbit.insert((j0 * k) % d);
        LaurentPoly p(1);
        for (long t : orbit) {
            seen[static_cast<std::size_t>(t)] = true;
            p *= LaurentPoly::x() - LaurentPoly(Cyclo::root_of_unity(d, t));
        }
        out.push_back({"", d, std::move(p)});
    }
    std::map<std::string, std::pair<std::size_t, std::string>> known;
    const auto& labels = cyclotomic_labels();
    for (std::size_t i = 0; i < labels.size(); ++i)
        if (labels[i].root_order == d) known.emplace(canonical_key(labels[i].poly), std::make_pair(i, labels[i].label));
    for (auto& f : out) {
        if (out.size() == 1) {
            f.label = "Phi" + std::to_string(d);
            continue;
        }
        auto it = known.find(canonical_key(f.poly));
        if (it != known.end()) f.label = it->second.second;
    }
    std::sort(out.begin(), out.end(), [&](const KCycloPoly& a, const KCycloPoly& b) {
        auto ia = known.find(canonical_key(a.poly)), ib = known.find(canonical_key(b.poly));
        bool la = ia != known.end() && !a.label.empty(), lb = ib != known.end() && !b.label.empty();
        if (la != lb) return la;
        if (la) return ia->second.first < ib->second.first;
        return canonical_key(a.poly) < canonical_key(b.poly);
    });
    for (auto& f : out)
        if (f.label.empty()) f.label = "(" + f.poly.str() + ")";
    return out;
}

Factorization factor_cyclotomic(const LaurentPoly& p, const CycloSubfield& K) {
    if (p.is_zero()) throw std::domain_error("cannot factor the zero polynomial");
    Factorization f;
    f.x_power = p.valuation();
    LaurentPoly rest = p.shifted(-f.x_power);
    const long bound = rest.degree() * std::max<long>(1, K.degree());
    for (long d = 1; rest.degree() > 0 && d <= 2 * bound * bound + 2; ++d) {
        if (euler_phi(d) > bound) continue;
        auto fs = k_cyclotomic_factors(d, K);
        for (auto& fac : fs) {
            long mult = 0;
            while (rest.degree() >= fac.poly.degree()) {
                auto q = rest.div_exact(fac.poly);
                if (!q) break;
                rest = *q;
                ++mult;
            }
            if (mult > 0) f.factors.emplace_back(fac, mult);
        }
    }
    if (rest.degree() == 0) {
        f.unit = rest.coeff(0);
        f.rest = LaurentPoly(1);
    } else {
        f.unit = Cyclo(1);
        f.rest = rest;
    }
    return f;
}

std::string format_factored(const Factorization& f, bool unicode) {
    std::vector<std::string> parts;
    if (!f.unit.is_one()) {
        if (f.unit == Cyclo(-1)) parts.push_back("-1");
        else if (f.unit.zumbroich_terms().size() > 1) parts.push_back("(" + f.unit.str() + ")");
        else parts.push_back(f.unit.str());
    }
    if (f.x_power == 1) parts.push_back("x");
    else if (f.x_power != 0) parts.push_back("x^" + std::to_string(f.x_power));
    for (const auto& [fac, m] : f.factors) {
        std::string l = fac.label;
        if (unicode && l.compare(0, 3, "Phi") == 0) l = "Φ" + l.substr(3);
        if (m > 1) l += "^" + std::to_string(m);
        parts.push_back(l);
    }
    if (!f.rest.is_constant()) parts.push_back("(" + f.rest.str() + ")");
    if (parts.empty()) return "1";
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += "*";
        out += parts[i];
    }
    return out;
}

}  // namespace spets
