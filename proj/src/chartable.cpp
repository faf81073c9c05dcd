#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "spets/data.hpp"
#include "spets/reflection.hpp"

namespace spets {

namespace {

std::string trim(std::string s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_values(const std::string& s) {
    std::vector<std::string> out;
    int depth = 0;
    std::string cur;
    for (char c : s) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == ',' && depth == 0) {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(trim(cur));
    return out;
}

}  // namespace

std::optional<std::size_t> CharacterTable::index_of(const std::string& name) const {
    for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i] == name) return i;
    return std::nullopt;
}

std::string chartable_file_stem(const std::string& group_name) {
    std::string s;
    for (char c : group_name)
        if (std::isalnum(static_cast<unsigned char>(c))) s += c;
    return s;
}

CharacterTable parse_character_table(const ReflectionCoset& G, std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    const auto& cls = G.classes();
    std::vector<std::size_t> file_to_class;
    std::optional<std::size_t> expected_classes;
    CharacterTable t;
    int lineno = 0;
    auto fail = [&](const std::string& msg) {
        throw std::runtime_error("character table line " + std::to_string(lineno) + ": " + msg);
    };
    while (std::getline(in, line)) {
        ++lineno;
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string key;
        ls >> key;
        if (key == "group") {
            std::string name;
            ls >> name;
            t.provenance = "file:" + name;
        } else if (key == "order") {
            std::size_t n = 0;
            ls >> n;
            if (n != G.order()) fail("group order mismatch");
        } else if (key == "classes") {
            std::size_t n = 0;
            ls >> n;
            if (n != cls.size()) fail("class count mismatch");
            expected_classes = n;
        } else if (key == "class") {
            std::string word;
            std::size_t size = 0, cent = 0;
            ls >> word >> size >> cent;
            std::size_t c = G.class_of(G.from_word(word));
            if (cls[c].size() != size) fail("class size mismatch for word " + word);
            if (size * cent != G.order()) fail("centralizer order mismatch for word " + word);
            if (std::find(file_to_class.begin(), file_to_class.end(), c) != file_to_class.end()) fail("duplicate class " + word);
            file_to_class.push_back(c);
        } else {
            auto colon = line.find(':');
            if (colon == std::string::npos) fail("expected `name : values`");
            if (file_to_class.size() != cls.size()) fail("class list incomplete before character rows");
            std::string name = trim(line.substr(0, colon));
            auto vals = split_values(line.substr(colon + 1));
            if (vals.size() != cls.size()) fail("wrong number of values for " + name);
            std::vector<Cyclo> row(cls.size());
            for (std::size_t j = 0; j < vals.size(); ++j) row[file_to_class[j]] = Cyclo::parse(vals[j]);
            if (t.index_of(name)) fail("duplicate character " + name);
            t.names.push_back(name);
            t.values.push_back(std::move(row));
        }
    }
    if (!expected_classes) throw std::runtime_error("character table lacks a classes line");
    if (t.size() != cls.size()) throw std::runtime_error("character table is not square");
    return t;
}

std::string emit_character_table(const ReflectionCoset& G, const CharacterTable& t) {
    std::ostringstream os;
    const auto& cls = G.classes();
    os << "group " << G.name() << "\n";
    os << "order " << G.order() << "\n";
    os << "classes " << cls.size() << "\n";
    for (const auto& c : cls) os << "class " << c.word << " " << c.size() << " " << G.order() / c.size() << "\n";
    for (std::size_t i = 0; i < t.size(); ++i) {
        os << t.names[i] << " :";
        for (std::size_t j = 0; j < t.values[i].size(); ++j) os << (j ? ", " : " ") << t.values[i][j].str();
        os << "\n";
    }
    return os.str();
}

std::optional<std::string> check_orthogonality(const ReflectionCoset& G, const CharacterTable& t) {
    const auto& cls = G.classes();
    const Cyclo order(static_cast<long>(G.order()));
    for (std::size_t a = 0; a < t.size(); ++a)
        for (std::size_t b = a; b < t.size(); ++b) {
            Cyclo s;
            for (std::size_t c = 0; c < cls.size(); ++c)
                s += Cyclo(static_cast<long>(cls[c].size())) * t.values[a][c] * t.values[b][c].conjugate();
            Cyclo want = a == b ? order : Cyclo(0);
            if (s != want) return "row orthogonality fails for " + t.names[a] + ", " + t.names[b];
        }
    for (std::size_t c = 0; c < cls.size(); ++c)
        for (std::size_t d = c; d < cls.size(); ++d) {
            Cyclo s;
            for (std::size_t a = 0; a < t.size(); ++a) s += t.values[a][c] * t.values[a][d].conjugate();
            Cyclo want = c == d ? Cyclo(static_cast<long>(G.order() / cls[c].size())) : Cyclo(0);
            if (s != want) return "column orthogonality fails for classes " + cls[c].word + ", " + cls[d].word;
        }
    return std::nullopt;
}

CharacterTable compute_abelian_character_table(const ReflectionCoset& G) {
    if (!G.is_abelian()) throw std::invalid_argument("group is not abelian");
    const auto& gens = G.generators();
    const std::size_t N = G.order();
    std::vector<std::size_t> gidx;
    std::vector<long> gord;
    for (const auto& g : gens) {
        gidx.push_back(*G.index_of(g));
        gord.push_back(G.element_order(gidx.back()));
    }
    // Enumerate homomorphisms by their values on the generators.
    CharacterTable t;
    t.provenance = "computed";
    const auto& cls = G.classes();
    std::vector<long> k(gens.size(), 0);
    std::vector<std::vector<Cyclo>> rows;
    while (true) {
        std::vector<Cyclo> val(N);
        std::vector<bool> set(N, false);
        val[0] = Cyclo(1);
        set[0] = true;
        bool ok = true;
        std::vector<std::size_t> queue{0};
        for (std::size_t h = 0; h < queue.size() && ok; ++h)
            for (std::size_t g = 0; g < gens.size() && ok; ++g) {
                std::size_t y = G.multiply(queue[h], gidx[g]);
                Cyclo v = val[queue[h]] * Cyclo::root_of_unity(gord[g], k[g]);
                if (!set[y]) {
                    set[y] = true;
                    val[y] = v;
                    queue.push_back(y);
                } else if (val[y] != v) {
                    ok = false;
                }
            }
        if (ok) {
            std::vector<Cyclo> row(cls.size());
            for (std::size_t c = 0; c < cls.size(); ++c) row[c] = val[cls[c].rep];
            rows.push_back(std::move(row));
        }
        std::size_t i = 0;
        while (i < k.size() && ++k[i] == gord[i]) k[i++] = 0;
        if (i == k.size()) break;
    }
    if (rows.size() != cls.size()) throw std::logic_error("abelian character count mismatch");
    const bool cyclic_rank1 = G.rank() == 1 && gens.size() == 1;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (cyclic_rank1) {
            // name by the value on the generator
            std::size_t c = G.class_of(gidx[0]);
            t.names.push_back(pretty_root(rows[i][c]));
        } else {
            t.names.push_back(i == 0 ? "1" : "chi" + std::to_string(i));
        }
    }
    t.values = std::move(rows);
    if (cyclic_rank1) {
        // order by the exponent j of chi(generator) = zeta_e^j
        std::vector<std::size_t> perm(t.size());
        std::iota(perm.begin(), perm.end(), 0);
        std::size_t c = G.class_of(gidx[0]);
        auto expo = [&](std::size_t i) {
            auto e = t.values[i][c].root_of_unity_exponent();
            return Rational(e->second, e->first);
        };
        std::sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) { return expo(a) < expo(b); });
        CharacterTable s;
        s.provenance = t.provenance;
        for (auto p : perm) {
            s.names.push_back(t.names[p]);
            s.values.push_back(t.values[p]);
        }
        t = std::move(s);
    }
    return t;
}

const CharacterTable& ReflectionCoset::character_table() const {
    std::lock_guard lk(mu_);
    if (chartable_) return *chartable_;
    if (!is_split()) throw std::logic_error("character table of a twisted coset is not available");
    CharacterTable t;
    if (is_abelian()) {
        t = compute_abelian_character_table(*this);
    } else {
        std::string path = data_file("chartables/" + chartable_file_stem(name_) + ".txt");
        std::ifstream in(path);
        if (!in) throw std::runtime_error("no character table for " + name_ + " (" + path + ")");
        std::stringstream ss;
        ss << in.rdbuf();
        t = parse_character_table(*this, ss.str());
    }
    if (auto err = check_orthogonality(*this, t)) throw std::runtime_error("character table of " + name_ + ": " + *err);
    chartable_ = std::move(t);
    return *chartable_;
}

}  // namespace spets
