#include "spets/reflection.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <regex>
#include <set>
#include <sstream>
#include <stdexcept>

#include "linalg.hpp"

namespace spets {

// ---------------------------------------------------------------- matrices

CMatrix::CMatrix(std::size_t n, std::vector<Cyclo> entries) : n_(n), a_(std::move(entries)) {
    if (a_.size() != n * n) throw std::invalid_argument("matrix entry count does not match dimension");
}

CMatrix CMatrix::identity(std::size_t n) { return scalar(n, Cyclo(1)); }

CMatrix CMatrix::scalar(std::size_t n, const Cyclo& c) {
    CMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = c;
    return m;
}

CMatrix CMatrix::diagonal(const std::vector<Cyclo>& d) {
    CMatrix m(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
}

CMatrix CMatrix::operator*(const CMatrix& o) const {
    if (n_ != o.n_) throw std::invalid_argument("matrix dimension mismatch");
    CMatrix r(n_);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t k = 0; k < n_; ++k) {
            const Cyclo& a = (*this)(i, k);
            if (a.is_zero()) continue;
            for (std::size_t j = 0; j < n_; ++j)
                if (!o(k, j).is_zero()) r(i, j) += a * o(k, j);
        }
    return r;
}

CMatrix CMatrix::operator+(const CMatrix& o) const {
    CMatrix r = *this;
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] += o.a_[i];
    return r;
}

CMatrix CMatrix::operator-(const CMatrix& o) const {
    CMatrix r = *this;
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] -= o.a_[i];
    return r;
}

CMatrix CMatrix::scaled(const Cyclo& c) const {
    CMatrix r = *this;
    for (auto& x : r.a_) x *= c;
    return r;
}

bool CMatrix::is_identity() const { return *this == identity(n_); }

std::optional<Cyclo> CMatrix::as_scalar() const {
    if (n_ == 0) return std::nullopt;
    Cyclo c = (*this)(0, 0);
    return *this == scalar(n_, c) ? std::optional<Cyclo>(c) : std::nullopt;
}

Cyclo CMatrix::trace() const {
    Cyclo t;
    for (std::size_t i = 0; i < n_; ++i) t += (*this)(i, i);
    return t;
}

Cyclo CMatrix::det() const { return detail::determinant(detail::rows_of(*this)); }

CMatrix CMatrix::inverse() const {
    auto inv = detail::inverse(detail::rows_of(*this));
    if (!inv) throw std::domain_error("singular matrix");
    return detail::from_rows(*inv);
}

CMatrix CMatrix::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    CMatrix r = identity(n_), b = *this;
    while (e > 0) {
        if (e & 1) r = r * b;
        e >>= 1;
        if (e) b = b * b;
    }
    return r;
}

LaurentPoly CMatrix::charpoly() const {
    // Faddeev-LeVerrier
    const std::size_t n = n_;
    std::vector<Cyclo> c(n + 1);
    c[n] = Cyclo(1);
    CMatrix M(n);
    for (std::size_t k = 1; k <= n; ++k) {
        M = (*this) * M + scalar(n, c[n - k + 1]);
        c[n - k] = -((*this) * M).trace() / Cyclo(static_cast<long>(k));
    }
    return LaurentPoly::from_coeffs(0, std::move(c));
}

LaurentPoly CMatrix::det_one_minus_x() const {
    LaurentPoly p = charpoly();
    std::vector<Cyclo> r(n_ + 1);
    for (std::size_t k = 0; k <= n_; ++k) r[n_ - k] = p.coeff(static_cast<long>(k));
    return LaurentPoly::from_coeffs(0, std::move(r));
}

std::size_t CMatrix::rank() const { return detail::rank(detail::rows_of(*this)); }

std::vector<Vec> CMatrix::kernel() const { return detail::nullspace(detail::rows_of(*this), n_); }

CMatrix CMatrix::evaluate(const LaurentPoly& p) const {
    if (p.is_zero()) return CMatrix(n_);
    if (!p.is_polynomial()) throw std::invalid_argument("matrix evaluation needs a polynomial");
    CMatrix r(n_);
    for (long e = p.degree(); e >= 0; --e) r = r * (*this) + scalar(n_, p.coeff(e));
    return r;
}

std::size_t CMatrix::hash() const {
    std::size_t h = n_;
    for (const auto& x : a_) h = h * 1000003u ^ x.hash();
    return h;
}

long CMatrix::conductor() const {
    long n = 1;
    for (const auto& x : a_) n = lcm_conductor(n, x.conductor());
    return n;
}

std::string pretty_root(const Cyclo& z) {
    if (auto r = z.root_str()) return *r;
    return "(" + z.str() + ")";
}

// ---------------------------------------------------------------- groups

namespace {

long matrix_order(const CMatrix& m, long bound) {
    CMatrix p = m;
    for (long k = 1; k <= bound; ++k) {
        if (p.is_identity()) return k;
        p = p * m;
    }
    return -1;
}

std::vector<Rational> eigen_exponents(const CMatrix& m, long order) {
    LaurentPoly p = m.charpoly();
    std::vector<Rational> out;
    for (long k = 0; k < order && p.degree() > 0; ++k) {
        Cyclo z = Cyclo::root_of_unity(order, k);
        LaurentPoly lin = LaurentPoly::x() - LaurentPoly(z);
        while (p.degree() > 0) {
            auto q = p.div_exact(lin);
            if (!q) break;
            p = *q;
            Rational r(k, order);
            r.canonicalize();
            out.push_back(r);
        }
    }
    if (p.degree() != 0) throw std::domain_error("matrix of finite order with non-root eigenvalue");
    std::sort(out.begin(), out.end());
    return out;
}

std::string exponents_key(const std::vector<Rational>& v) {
    std::string s;
    for (const auto& r : v) s += r.get_str() + ",";
    return s;
}

Vec normalized_form(const CMatrix& m) {
    // First nonzero row of m, scaled so its first nonzero entry is 1.
    for (std::size_t i = 0; i < m.dim(); ++i) {
        Vec row(m.dim());
        bool nz = false;
        for (std::size_t j = 0; j < m.dim(); ++j) {
            row[j] = m(i, j);
            nz = nz || !row[j].is_zero();
        }
        if (!nz) continue;
        return detail::normalize(row);
    }
    return {};
}

std::string vec_key(const Vec& v) {
    std::string s;
    for (const auto& x : v) s += x.str() + ";";
    return s;
}

struct UnionFind {
    std::vector<std::size_t> p;
    explicit UnionFind(std::size_t n) : p(n) { std::iota(p.begin(), p.end(), 0); }
    std::size_t find(std::size_t x) { return p[x] == x ? x : p[x] = find(p[x]); }
    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a != b) p[std::max(a, b)] = std::min(a, b);
    }
};

// Power series 1/c(x) up to degree D (c(0) = 1).
std::vector<Cyclo> inverse_series(const LaurentPoly& c, long D) {
    std::vector<Cyclo> b(static_cast<std::size_t>(D + 1));
    const Cyclo c0inv = c.coeff(0).inverse();
    b[0] = c0inv;
    for (long n = 1; n <= D; ++n) {
        Cyclo s;
        for (long k = 1; k <= std::min(n, c.degree()); ++k)
            if (!c.coeff(k).is_zero()) s += c.coeff(k) * b[static_cast<std::size_t>(n - k)];
        b[static_cast<std::size_t>(n)] = -s * c0inv;
    }
    return b;
}

std::vector<Cyclo> inverse_series(const std::vector<Cyclo>& c, long D) {
    return inverse_series(LaurentPoly::from_coeffs(0, c), D);
}

std::vector<long> extract_split_degrees(LaurentPoly p) {
    std::vector<long> ds;
    while (p.degree() > 0) {
        long d = 1;
        while (p.coeff(d).is_zero()) ++d;
        auto mult = p.coeff(d).as_rational();
        if (!mult || *mult >= 0 || mult->get_den() != 1) throw std::logic_error("Poincare polynomial is not a product of 1-x^d");
        long k = -mult->get_num().get_si();
        LaurentPoly f = LaurentPoly(1) - LaurentPoly::monomial(Cyclo(1), d);
        for (long i = 0; i < k; ++i) {
            auto q = p.div_exact(f);
            if (!q) throw std::logic_error("Poincare polynomial factorization failed");
            p = *q;
            ds.push_back(d);
        }
    }
    return ds;
}

}  // namespace

void ReflectionCoset::index_elements() {
    lookup_.clear();
    for (std::size_t i = 0; i < elems_.size(); ++i) lookup_[elems_[i].hash()].push_back(i);
}

std::optional<std::size_t> ReflectionCoset::index_of(const CMatrix& m) const {
    auto it = lookup_.find(m.hash());
    if (it == lookup_.end()) return std::nullopt;
    for (std::size_t i : it->second)
        if (elems_[i] == m) return i;
    return std::nullopt;
}

std::shared_ptr<const ReflectionCoset> ReflectionCoset::from_generators(std::string name, std::vector<CMatrix> gens,
                                                                        std::optional<CMatrix> twist,
                                                                        std::size_t order_bound) {
    if (gens.empty()) throw std::invalid_argument("at least one generator is required");
    const std::size_t n = gens[0].dim();
    for (const auto& g : gens) {
        if (g.dim() != n) throw std::invalid_argument("generators of different dimensions");
        if (matrix_order(g, static_cast<long>(order_bound)) < 0) throw std::invalid_argument("generator of infinite or too large order");
        if ((g - CMatrix::identity(n)).rank() != 1) throw std::invalid_argument("generator is not a pseudo-reflection");
    }
    auto G = std::make_shared<ReflectionCoset>();
    G->name_ = std::move(name);
    G->rank_ = n;
    G->gens_ = gens;
    G->elems_.push_back(CMatrix::identity(n));
    G->words_.push_back({});
    G->index_elements();
    for (std::size_t head = 0; head < G->elems_.size(); ++head) {
        for (std::size_t g = 0; g < gens.size(); ++g) {
            CMatrix m = G->elems_[head] * gens[g];
            if (G->index_of(m)) continue;
            if (G->elems_.size() >= order_bound) throw std::runtime_error("group closure exceeded the order bound");
            auto w = G->words_[head];
            w.push_back(static_cast<int>(g));
            G->lookup_[m.hash()].push_back(G->elems_.size());
            G->elems_.push_back(std::move(m));
            G->words_.push_back(std::move(w));
        }
    }
    G->phi_ = CMatrix::identity(n);
    if (twist) {
        if (twist->dim() != n) throw std::invalid_argument("twist of wrong dimension");
        if (matrix_order(*twist, static_cast<long>(order_bound)) < 0) throw std::invalid_argument("twist of infinite order");
        CMatrix tinv = twist->inverse();
        for (const auto& g : gens)
            if (!G->index_of((*twist) * g * tinv)) throw std::invalid_argument("twist does not normalize W");
        if (!G->index_of(*twist)) G->phi_ = *twist;
    }
    return G;
}

std::shared_ptr<const ReflectionCoset> ReflectionCoset::from_elements(std::string name, std::vector<CMatrix> elements,
                                                                      std::optional<CMatrix> twist) {
    if (elements.empty()) throw std::invalid_argument("empty element list");
    const std::size_t n = elements[0].dim();
    if (!elements[0].is_identity()) throw std::invalid_argument("element list must start with the identity");
    auto G = std::make_shared<ReflectionCoset>();
    G->name_ = std::move(name);
    G->rank_ = n;
    G->elems_ = std::move(elements);
    G->index_elements();
    G->words_.assign(G->elems_.size(), {});
    std::vector<bool> reached(G->elems_.size(), false);
    reached[0] = true;
    std::vector<std::size_t> frontier_all{0};
    // Greedy generating set, preferring reflections.
    std::vector<std::size_t> order(G->elems_.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_partition(order.begin(), order.end(), [&](std::size_t i) {
        return i != 0 && (G->elems_[i] - CMatrix::identity(n)).rank() == 1;
    });
    for (std::size_t cand : order) {
        if (reached[cand]) continue;
        G->gens_.push_back(G->elems_[cand]);
        const int gi = static_cast<int>(G->gens_.size() - 1);
        // extend closure
        std::vector<std::size_t> queue;
        for (std::size_t i = 0; i < reached.size(); ++i)
            if (reached[i]) queue.push_back(i);
        for (std::size_t h = 0; h < queue.size(); ++h) {
            for (int g = 0; g <= gi; ++g) {
                auto idx = G->index_of(G->elems_[queue[h]] * G->gens_[static_cast<std::size_t>(g)]);
                if (!idx) throw std::invalid_argument("element list is not closed under multiplication");
                if (reached[*idx]) continue;
                reached[*idx] = true;
                auto w = G->words_[queue[h]];
                w.push_back(g);
                G->words_[*idx] = std::move(w);
                queue.push_back(*idx);
            }
        }
    }
    G->phi_ = CMatrix::identity(n);
    if (twist && !G->index_of(*twist)) G->phi_ = *twist;
    return G;
}

namespace {

CMatrix perm_matrix(std::size_t n, std::size_t i, std::size_t j) {
    CMatrix m = CMatrix::identity(n);
    m(i, i) = Cyclo(0);
    m(j, j) = Cyclo(0);
    m(i, j) = Cyclo(1);
    m(j, i) = Cyclo(1);
    return m;
}

CosetPtr build_imprimitive(long de, long e, long r) {
    if (de < 1 || e < 1 || r < 1 || de % e != 0) throw std::invalid_argument("G(de,e,r) needs e | de");
    const long d = de / e;
    const std::size_t n = static_cast<std::size_t>(r);
    std::vector<CMatrix> gens;
    if (r == 1) {
        if (e != 1 && de > 1) throw std::invalid_argument("G(de,e,1) is cyclic of order d; use G(d,1,1)");
        gens.push_back(CMatrix::diagonal({Cyclo::root_of_unity(d, 1)}));
    } else {
        if (d > 1) {
            std::vector<Cyclo> diag(n, Cyclo(1));
            diag[0] = Cyclo::root_of_unity(d, 1);
            gens.push_back(CMatrix::diagonal(diag));
        }
        if (e > 1) {
            CMatrix s = perm_matrix(n, 0, 1);
            s(0, 1) = Cyclo::root_of_unity(de, -1);
            s(1, 0) = Cyclo::root_of_unity(de, 1);
            gens.push_back(s);
        }
        for (std::size_t i = 0; i + 1 < n; ++i) gens.push_back(perm_matrix(n, i, i + 1));
    }
    std::string name = "G(" + std::to_string(de) + "," + std::to_string(e) + "," + std::to_string(r) + ")";
    return ReflectionCoset::from_generators(name, gens);
}

}  // namespace

std::shared_ptr<const ReflectionCoset> ReflectionCoset::builtin(std::string_view text) {
    static std::recursive_mutex mu;
    static std::map<std::string, CosetPtr> cache;
    std::string s;
    for (char c : text)
        if (c != ' ' && c != '_' && c != '{' && c != '}') s += c;
    std::lock_guard lk(mu);
    if (auto it = cache.find(s); it != cache.end()) return it->second;
    CosetPtr G;
    std::smatch m;
    if (std::regex_match(s, m, std::regex(R"([ZC](\d+))"))) {
        long e = std::stol(m[1]);
        if (e < 1 || e > 64) throw std::invalid_argument("cyclic builtin needs 1 <= e <= 64");
        auto g = CMatrix::diagonal({Cyclo::root_of_unity(e, 1)});
        if (e == 1)
            G = from_elements("Z1", {CMatrix::identity(1)});
        else
            G = from_generators("Z" + std::to_string(e), {g});
    } else if (s == "G4") {
        const Cyclo w = Cyclo::root_of_unity(3, 1);
        const Cyclo r3 = Cyclo::sqrt(-3) / Cyclo(3);
        CMatrix a = CMatrix::diagonal({Cyclo(1), w});
        CMatrix b(2, {r3, -Cyclo(2) * w / Cyclo(3), Cyclo(1), Cyclo(1) + w - r3});
        if (a * b * a != b * a * b) throw std::logic_error("G4 generators fail the braid relation");
        G = from_generators("G4", {a, b});
        if (G->order() != 24) throw std::logic_error("G4 closure has wrong order");
    } else if (std::regex_match(s, m, std::regex(R"(G\(?(\d+),(\d+),(\d+)\)?)"))) {
        G = build_imprimitive(std::stol(m[1]), std::stol(m[2]), std::stol(m[3]));
    } else {
        throw std::invalid_argument("unknown builtin group '" + std::string(text) + "'");
    }
    cache.emplace(s, G);
    return G;
}

std::size_t ReflectionCoset::multiply(std::size_t a, std::size_t b) const {
    auto r = index_of(elems_[a] * elems_[b]);
    if (!r) throw std::logic_error("product left the group");
    return *r;
}

std::size_t ReflectionCoset::inverse(std::size_t a) const {
    std::lock_guard lk(mu_);
    if (inverse_.empty()) inverse_.assign(elems_.size(), static_cast<std::size_t>(-1));
    if (inverse_[a] == static_cast<std::size_t>(-1)) {
        auto r = index_of(elems_[a].inverse());
        if (!r) throw std::logic_error("inverse left the group");
        inverse_[a] = *r;
        inverse_[*r] = a;
    }
    return inverse_[a];
}

long ReflectionCoset::element_order(std::size_t a) const { return matrix_order(elems_[a], static_cast<long>(order()) + 1); }

std::string ReflectionCoset::word(std::size_t a) const {
    if (words_[a].empty()) return "e";
    std::string s;
    for (std::size_t i = 0; i < words_[a].size(); ++i) {
        if (i) s += ".";
        s += std::to_string(words_[a][i] + 1);
    }
    return s;
}

std::size_t ReflectionCoset::from_word(std::string_view w) const {
    CMatrix m = CMatrix::identity(rank_);
    if (w != "e") {
        std::stringstream ss{std::string(w)};
        std::string tok;
        while (std::getline(ss, tok, '.')) {
            long g = std::stol(tok);
            if (g < 1 || g > static_cast<long>(gens_.size())) throw std::invalid_argument("generator index out of range in word");
            m = m * gens_[static_cast<std::size_t>(g - 1)];
        }
    }
    auto r = index_of(m);
    if (!r) throw std::logic_error("word evaluates outside the group");
    return *r;
}

long ReflectionCoset::field_conductor() const {
    long n = phi_.conductor();
    for (const auto& g : gens_) n = lcm_conductor(n, g.conductor());
    return n;
}

void ReflectionCoset::compute_classes() const {
    const std::size_t N = elems_.size();
    // conjugation of w.phi by g: g w (phi g^-1 phi^-1) . phi
    const CMatrix phinv = phi_.inverse();
    std::vector<std::pair<CMatrix, CMatrix>> acts;
    for (const auto& g : gens_) acts.emplace_back(g, phi_ * g.inverse() * phinv);
    std::vector<std::size_t> cls(N, static_cast<std::size_t>(-1));
    std::vector<ConjClass> out;
    for (std::size_t i = 0; i < N; ++i) {
        if (cls[i] != static_cast<std::size_t>(-1)) continue;
        ConjClass c;
        c.members.push_back(i);
        cls[i] = out.size();
        for (std::size_t h = 0; h < c.members.size(); ++h)
            for (const auto& [g, hg] : acts) {
                auto j = index_of(g * elems_[c.members[h]] * hg);
                if (!j) throw std::logic_error("conjugation left the group");
                if (cls[*j] != static_cast<std::size_t>(-1)) continue;
                cls[*j] = out.size();
                c.members.push_back(*j);
            }
        std::sort(c.members.begin(), c.members.end());
        c.rep = c.members.front();
        c.word = word(c.rep);
        CMatrix m = coset_element(c.rep);
        c.eigen_exponents = eigen_exponents(m, matrix_order(m, static_cast<long>(N) * 64));
        out.push_back(std::move(c));
    }
    auto wkey = [&](const ConjClass& c) { return std::make_pair(words_[c.rep].size(), words_[c.rep]); };
    std::stable_sort(out.begin(), out.end(), [&](const ConjClass& a, const ConjClass& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        auto ka = exponents_key(a.eigen_exponents), kb = exponents_key(b.eigen_exponents);
        if (ka != kb) return ka < kb;
        return wkey(a) < wkey(b);
    });
    class_of_.assign(N, 0);
    for (std::size_t c = 0; c < out.size(); ++c)
        for (std::size_t m : out[c].members) class_of_[m] = c;
    classes_ = std::move(out);
}

const std::vector<ConjClass>& ReflectionCoset::classes() const {
    std::lock_guard lk(mu_);
    if (!classes_) compute_classes();
    return *classes_;
}

std::size_t ReflectionCoset::class_of(std::size_t element) const {
    classes();
    return class_of_[element];
}

bool ReflectionCoset::is_abelian() const {
    for (const auto& a : gens_)
        for (const auto& b : gens_)
            if (a * b != b * a) return false;
    return true;
}

std::vector<std::size_t> ReflectionCoset::center() const {
    std::vector<std::size_t> z;
    for (std::size_t i = 0; i < elems_.size(); ++i) {
        bool central = std::all_of(gens_.begin(), gens_.end(), [&](const CMatrix& g) { return g * elems_[i] == elems_[i] * g; });
        if (central) z.push_back(i);
    }
    return z;
}

void ReflectionCoset::compute_hyperplanes() const {
    const CMatrix I = CMatrix::identity(rank_);
    std::vector<HyperplaneData> hs;
    std::map<std::string, std::size_t> key;
    std::vector<std::size_t> hyp_of(elems_.size(), static_cast<std::size_t>(-1));
    for (std::size_t i = 1; i < elems_.size(); ++i) {
        CMatrix d = elems_[i] - I;
        if (d.rank() != 1) continue;
        Vec f = normalized_form(d);
        auto k = vec_key(f);
        auto it = key.find(k);
        if (it == key.end()) {
            it = key.emplace(k, hs.size()).first;
            hs.push_back({f, {}, 0});
        }
        hs[it->second].reflections.push_back(i);
        hyp_of[i] = it->second;
    }
    UnionFind uf(hs.size());
    for (std::size_t h = 0; h < hs.size(); ++h) {
        std::size_t s = hs[h].reflections.front();
        for (const auto& g : gens_) {
            auto j = index_of(g * elems_[s] * g.inverse());
            if (!j || hyp_of[*j] == static_cast<std::size_t>(-1)) throw std::logic_error("conjugate of a reflection is not a reflection");
            uf.unite(h, hyp_of[*j]);
        }
    }
    std::map<std::size_t, std::size_t> orbit_id;
    std::vector<HyperplaneOrbit> orbits;
    for (std::size_t h = 0; h < hs.size(); ++h) {
        std::size_t root = uf.find(h);
        auto it = orbit_id.find(root);
        if (it == orbit_id.end()) {
            it = orbit_id.emplace(root, orbits.size()).first;
            orbits.push_back({0, static_cast<long>(hs[h].reflections.size()) + 1, hs[h].form});
        }
        hs[h].orbit = it->second;
        orbits[it->second].size += 1;
    }
    hyperplanes_ = std::move(hs);
    orbits_ = std::move(orbits);
}

const std::vector<HyperplaneData>& ReflectionCoset::hyperplanes() const {
    std::lock_guard lk(mu_);
    if (!hyperplanes_) compute_hyperplanes();
    return *hyperplanes_;
}

const std::vector<HyperplaneOrbit>& ReflectionCoset::hyperplane_orbits() const {
    std::lock_guard lk(mu_);
    if (!orbits_) compute_hyperplanes();
    return *orbits_;
}

std::vector<std::size_t> ReflectionCoset::reflections() const {
    std::vector<std::size_t> r;
    for (const auto& h : hyperplanes()) r.insert(r.end(), h.reflections.begin(), h.reflections.end());
    std::sort(r.begin(), r.end());
    return r;
}

long ReflectionCoset::n_ref() const {
    long n = 0;
    for (const auto& h : hyperplanes()) n += static_cast<long>(h.reflections.size());
    return n;
}

long ReflectionCoset::n_hyp() const { return static_cast<long>(hyperplanes().size()); }

const LaurentPoly& ReflectionCoset::poincare() const {
    std::lock_guard lk(mu_);
    if (poincare_) return *poincare_;
    const long D = n_ref() + static_cast<long>(rank_) + 2;
    std::vector<Cyclo> molien(static_cast<std::size_t>(D + 1));
    for (const auto& c : classes()) {
        auto s = inverse_series(coset_element(c.rep).det_one_minus_x(), D);
        Cyclo w(static_cast<long>(c.size()));
        for (long k = 0; k <= D; ++k) molien[static_cast<std::size_t>(k)] += w * s[static_cast<std::size_t>(k)];
    }
    const Cyclo inv_order = Cyclo(Rational(1, static_cast<long>(order())));
    for (auto& m : molien) m *= inv_order;
    auto p = inverse_series(molien, D);
    if (!p[static_cast<std::size_t>(D)].is_zero() || !p[static_cast<std::size_t>(D - 1)].is_zero())
        throw std::logic_error("inverse Molien series is not a polynomial of the expected degree");
    poincare_ = LaurentPoly::from_coeffs(0, std::move(p));
    return *poincare_;
}

const DegreeData& ReflectionCoset::degrees() const {
    std::lock_guard lk(mu_);
    if (degrees_) return *degrees_;
    DegreeData dd;
    if (is_split()) {
        for (long d : extract_split_degrees(poincare())) dd.degrees.emplace_back(d, Cyclo(1));
    } else {
        // Degrees of W from the untwisted Molien series, then the roots of unity of the twist.
        const long D = n_ref() + static_cast<long>(rank_) + 2;
        std::vector<Cyclo> molien(static_cast<std::size_t>(D + 1));
        for (const auto& m : elems_) {
            auto s = inverse_series(m.det_one_minus_x(), D);
            for (long k = 0; k <= D; ++k) molien[static_cast<std::size_t>(k)] += s[static_cast<std::size_t>(k)];
        }
        for (auto& m : molien) m *= Cyclo(Rational(1, static_cast<long>(order())));
        auto ds = extract_split_degrees(LaurentPoly::from_coeffs(0, inverse_series(molien, D)));
        std::map<long, long> mult;
        for (long d : ds) ++mult[d];
        LaurentPoly p = poincare();
        const long M = std::lcm(2L, std::lcm(field_conductor(), matrix_order(phi_, 100000)));
        for (auto [d, k] : mult) {
            // choose k roots of unity of order dividing M; greedy divisibility
            long found = 0;
            for (long j = 0; j < M && found < k; ++j) {
                Cyclo z = Cyclo::root_of_unity(M, j);
                LaurentPoly f = LaurentPoly(1) - LaurentPoly::monomial(z, d);
                while (found < k) {
                    auto q = p.div_exact(f);
                    if (!q) break;
                    // a factor with a larger degree multiple of d may also divide; accept only if the
                    // lowest remaining term in degree d is consistent
                    p = *q;
                    dd.degrees.emplace_back(d, z);
                    ++found;
                }
            }
            if (found != k) throw std::logic_error("could not factor the twisted Poincare polynomial");
        }
        if (p != LaurentPoly(1)) throw std::logic_error("twisted Poincare polynomial has a leftover factor");
    }
    std::stable_sort(dd.degrees.begin(), dd.degrees.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    degrees_ = std::move(dd);
    return *degrees_;
}

void ReflectionCoset::set_character_table(CharacterTable t) const {
    std::lock_guard lk(mu_);
    chartable_ = std::move(t);
}

long ReflectionCoset::eigenspace_dim(std::size_t element, const Cyclo& zeta) const {
    CMatrix m = coset_element(element) - CMatrix::scalar(rank_, zeta);
    return static_cast<long>(rank_ - m.rank());
}

std::vector<RegularElementData> ReflectionCoset::regular_classes(const Cyclo& zeta) const {
    auto ord = zeta.root_of_unity_exponent();
    if (!ord) throw std::invalid_argument("regular_classes needs a root of unity");
    const auto& cls = classes();
    std::vector<long> dims;
    long best = 0;
    for (const auto& c : cls) {
        dims.push_back(eigenspace_dim(c.rep, zeta));
        best = std::max(best, dims.back());
    }
    std::vector<RegularElementData> out;
    if (best == 0) return out;
    for (std::size_t i = 0; i < cls.size(); ++i) {
        if (dims[i] != best) continue;
        RegularElementData r;
        r.class_index = i;
        r.zeta = zeta;
        r.order = ord->first;
        r.eigenspace_dim = best;
        auto basis = (coset_element(cls[i].rep) - CMatrix::scalar(rank_, zeta)).kernel();
        r.has_regular_vector = true;
        for (const auto& h : hyperplanes()) {
            bool inside = std::all_of(basis.begin(), basis.end(), [&](const Vec& v) { return detail::dot(h.form, v).is_zero(); });
            if (inside) {
                r.has_regular_vector = false;
                break;
            }
        }
        out.push_back(r);
    }
    return out;
}

std::vector<std::size_t> ReflectionCoset::centralizer(std::size_t element) const {
    CMatrix m = coset_element(element);
    std::vector<std::size_t> c;
    for (std::size_t i = 0; i < elems_.size(); ++i)
        if (elems_[i] * m == m * elems_[i]) c.push_back(i);
    return c;
}

std::vector<std::size_t> ReflectionCoset::fixator(const std::vector<Vec>& vectors) const {
    std::vector<std::size_t> f;
    for (std::size_t i = 0; i < elems_.size(); ++i) {
        bool fixes = std::all_of(vectors.begin(), vectors.end(), [&](const Vec& v) { return detail::apply(elems_[i], v) == v; });
        if (fixes) f.push_back(i);
    }
    return f;
}

std::string ReflectionCoset::summary() const {
    std::ostringstream os;
    os << "group " << name_ << "\n";
    os << "rank " << rank_ << "\n";
    os << "order " << order() << "\n";
    os << "classes " << classes().size() << "\n";
    os << "reflections " << n_ref() << "\n";
    os << "hyperplanes " << n_hyp() << "\n";
    os << "e_W " << e_W() << "\n";
    os << "hyperplane orbits";
    for (const auto& o : hyperplane_orbits()) os << " (size " << o.size << ", e_H " << o.e_H << ")";
    os << "\n";
    os << "degrees";
    for (const auto& [d, z] : degrees().degrees) {
        os << " " << d;
        if (!z.is_one()) os << "(" << pretty_root(z) << ")";
    }
    os << "\n";
    os << "center " << center().size() << "\n";
    os << "poincare " << poincare().str() << "\n";
    return os.str();
}

// ---------------------------------------------------------------- centralizers, Sylow

namespace {

// Matrix of g restricted to the span of basis (g must preserve it).
CMatrix restrict_to(const CMatrix& g, const std::vector<Vec>& basis) {
    const std::size_t a = basis.size();
    const std::size_t n = g.dim();
    // rows of B where B is n x a
    std::vector<Vec> B(n, Vec(a));
    for (std::size_t j = 0; j < a; ++j)
        for (std::size_t i = 0; i < n; ++i) B[i][j] = basis[j][i];
    auto sel = detail::independent_rows(B);
    std::vector<Vec> Bs;
    for (auto i : sel) Bs.push_back(B[i]);
    auto Binv = detail::inverse(Bs);
    if (!Binv) throw std::logic_error("restriction basis is degenerate");
    CMatrix R(a);
    for (std::size_t j = 0; j < a; ++j) {
        Vec gv = detail::apply(g, basis[j]);
        Vec sub;
        for (auto i : sel) sub.push_back(gv[i]);
        Vec coords = detail::mat_vec(*Binv, sub);
        // verify the image lies in the span
        Vec back(n);
        for (std::size_t k = 0; k < a; ++k)
            for (std::size_t i = 0; i < n; ++i) back[i] += basis[k][i] * coords[k];
        if (back != gv) throw std::logic_error("element does not preserve the subspace");
        for (std::size_t k = 0; k < a; ++k) R(k, j) = coords[k];
    }
    return R;
}

}  // namespace

CentralizerData centralizer_coset(const ReflectionCoset& G, std::size_t element, const Cyclo& zeta) {
    auto regs = G.regular_classes(zeta);
    const std::size_t cls = G.class_of(element);
    auto it = std::find_if(regs.begin(), regs.end(), [&](const RegularElementData& r) { return r.class_index == cls; });
    if (it == regs.end() || !it->has_regular_vector) throw std::invalid_argument("element is not regular for the given eigenvalue");
    CentralizerData cd;
    cd.element = element;
    cd.zeta = zeta;
    cd.basis = (G.coset_element(element) - CMatrix::scalar(G.rank(), zeta)).kernel();
    cd.parent_index = G.centralizer(element);
    std::vector<CMatrix> restricted;
    for (std::size_t i : cd.parent_index) restricted.push_back(restrict_to(G.elements()[i], cd.basis));
    cd.group = ReflectionCoset::from_elements("W(w)", std::move(restricted));
    const auto& hs = cd.group->hyperplanes();
    for (const auto& orb : cd.group->hyperplane_orbits()) {
        CentralizerOrbit co;
        co.e_I = orb.e_H;
        co.size = orb.size;
        // hyperplane I of V(w) as vectors of V
        std::vector<Vec> I;
        auto ker = detail::nullspace({orb.form}, cd.basis.size());
        for (const auto& y : ker) {
            Vec v(G.rank());
            for (std::size_t k = 0; k < y.size(); ++k)
                for (std::size_t i = 0; i < G.rank(); ++i) v[i] += cd.basis[k][i] * y[k];
            I.push_back(v);
        }
        co.fixator = G.fixator(I);
        std::set<std::size_t> fix(co.fixator.begin(), co.fixator.end());
        for (const auto& h : G.hyperplanes()) {
            long inside = 0;
            for (std::size_t s : h.reflections) inside += fix.count(s) ? 1 : 0;
            if (inside > 0) {
                co.n_hyp_WI += 1;
                co.n_ref_WI += inside;
            }
        }
        co.e_WI = co.n_ref_WI + co.n_hyp_WI;
        cd.orbits.push_back(co);
    }
    (void)hs;
    return cd;
}

SylowData sylow_subcoset(const ReflectionCoset& G, const LaurentPoly& phi) {
    if (!phi.is_polynomial() || phi.degree() < 1 || !phi.leading().is_one()) throw std::invalid_argument("Phi must be monic");
    SylowData sd;
    sd.phi = phi;
    long best = -1;
    for (const auto& c : G.classes()) {
        CMatrix m = G.coset_element(c.rep).evaluate(phi);
        long dim = static_cast<long>(G.rank() - m.rank());
        if (dim > best) {
            best = dim;
            sd.element = c.rep;
        }
    }
    if (best % phi.degree() != 0) throw std::logic_error("kernel dimension not a multiple of deg Phi");
    sd.a = best / phi.degree();
    CMatrix w = G.coset_element(sd.element);
    sd.torus_basis = w.evaluate(phi).kernel();
    if (sd.torus_basis.empty())
        sd.torus_order = LaurentPoly(1);
    else
        sd.torus_order = restrict_to(w, sd.torus_basis).charpoly();
    sd.levi_group = G.fixator(sd.torus_basis);
    std::vector<CMatrix> wl;
    for (std::size_t i : sd.levi_group) wl.push_back(G.elements()[i]);
    sd.levi = ReflectionCoset::from_elements("L", wl, w);
    std::set<std::size_t> L(sd.levi_group.begin(), sd.levi_group.end());
    std::size_t normalizer = 0;
    const CMatrix winv = w.inverse();
    for (std::size_t v = 0; v < G.order(); ++v) {
        const CMatrix& V = G.elements()[v];
        const CMatrix Vinv = V.inverse();
        auto t = G.index_of(V * w * Vinv * winv);
        if (!t || !L.count(*t)) continue;
        bool norm = std::all_of(sd.levi_group.begin(), sd.levi_group.end(), [&](std::size_t x) {
            auto y = G.index_of(V * G.elements()[x] * Vinv);
            return y && L.count(*y);
        });
        if (norm) ++normalizer;
    }
    sd.relative_order = normalizer / sd.levi_group.size();
    return sd;
}

}  // namespace spets
