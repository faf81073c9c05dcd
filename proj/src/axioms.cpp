#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "linalg.hpp"
#include "spets/orders.hpp"
#include "spets/uch.hpp"

namespace spets {

std::vector<std::pair<long, long>> regular_eigenvalues(const ReflectionCoset& G) {
    long top = 1;
    for (const auto& [d, z] : G.degrees().degrees) top = std::max(top, d);
    std::vector<std::pair<long, long>> out;
    for (long d = 1; d <= top; ++d)
        for (long a = 0; a < d; ++a) {
            if (std::gcd(a, d) != 1) continue;
            for (const auto& r : G.regular_classes(Cyclo::root_of_unity(d, a)))
                if (r.has_regular_vector) {
                    out.emplace_back(d, a);
                    break;
                }
        }
    return out;
}

bool AxiomReport::ok() const { return failures() == 0; }

std::size_t AxiomReport::failures() const {
    return static_cast<std::size_t>(std::count_if(items.begin(), items.end(), [](const AxiomItem& i) { return !i.ok; }));
}

std::vector<AxiomItem> AxiomReport::failed() const {
    std::vector<AxiomItem> out;
    for (const auto& i : items)
        if (!i.ok) out.push_back(i);
    return out;
}

std::string AxiomReport::str() const {
    std::map<std::string, std::pair<std::size_t, std::size_t>> tally;
    std::vector<std::string> order;
    for (const auto& i : items) {
        if (!tally.count(i.check)) order.push_back(i.check);
        auto& t = tally[i.check];
        ++t.first;
        if (i.ok) ++t.second;
    }
    std::ostringstream out;
    for (const auto& c : order)
        out << (tally[c].first == tally[c].second ? "ok   " : "FAIL ") << c << " " << tally[c].second << "/" << tally[c].first
            << "\n";
    for (const auto& i : items)
        if (!i.ok) out << "  " << i.check << " [" << i.where << "] " << i.detail << "\n";
    return out.str();
}

bool bilinear_identity(const std::vector<std::pair<LaurentPoly, LaurentPoly>>& lhs,
                       const std::vector<std::pair<LaurentPoly, LaurentPoly>>& rhs) {
    long vx = 0, dx = 0, vy = 0, dy = 0;
    bool first = true;
    auto scan = [&](const std::vector<std::pair<LaurentPoly, LaurentPoly>>& s) {
        for (const auto& [a, b] : s) {
            if (a.is_zero() || b.is_zero()) continue;
            if (first) {
                vx = a.valuation(), dx = a.degree(), vy = b.valuation(), dy = b.degree();
                first = false;
            }
            vx = std::min(vx, a.valuation()), dx = std::max(dx, a.degree());
            vy = std::min(vy, b.valuation()), dy = std::max(dy, b.degree());
        }
    };
    scan(lhs);
    scan(rhs);
    if (first) return true;
    // A Laurent polynomial with exponents in [v, d] is fixed by its values at d - v + 1 nonzero points.
    const long nx = dx - vx + 1, ny = dy - vy + 1;
    auto values = [](const LaurentPoly& p, long n) {
        std::vector<Cyclo> v;
        for (long t = 1; t <= n; ++t) v.push_back(p.evaluate(Cyclo(t)));
        return v;
    };
    std::vector<std::vector<Cyclo>> grid(static_cast<std::size_t>(nx), std::vector<Cyclo>(static_cast<std::size_t>(ny)));
    auto accumulate = [&](const std::vector<std::pair<LaurentPoly, LaurentPoly>>& s, const Cyclo& sign) {
        for (const auto& [a, b] : s) {
            auto va = values(a, nx), vb = values(b, ny);
            for (std::size_t i = 0; i < va.size(); ++i) {
                if (va[i].is_zero()) continue;
                Cyclo ai = va[i] * sign;
                for (std::size_t j = 0; j < vb.size(); ++j) grid[i][j] += ai * vb[j];
            }
        }
    };
    accumulate(lhs, Cyclo(1));
    accumulate(rhs, Cyclo(-1));
    for (const auto& row : grid)
        for (const auto& c : row)
            if (!c.is_zero()) return false;
    return true;
}

namespace {

std::vector<std::pair<LaurentPoly, LaurentPoly>> degree_pairs(const UchTable& t, const std::vector<std::size_t>& rows) {
    std::vector<std::pair<LaurentPoly, LaurentPoly>> out;
    for (std::size_t i : rows) out.emplace_back(t.rows[i].degree, t.rows[i].degree.conjugate());
    return out;
}

std::vector<std::pair<LaurentPoly, LaurentPoly>> feg_pairs(const std::vector<LaurentPoly>& fd, const std::vector<std::size_t>& thetas) {
    std::vector<std::pair<LaurentPoly, LaurentPoly>> out;
    for (std::size_t th : thetas) out.emplace_back(fd[th], fd[th]);
    return out;
}

// Character indices of the principal rows of family f.
std::vector<std::size_t> block_thetas(const UchTable& t, const CharacterTable& ct, int f) {
    std::vector<std::size_t> out;
    for (std::size_t i : t.family(f))
        if (t.rows[i].principal())
            if (auto th = ct.index_of(t.rows[i].hc_relative)) out.push_back(*th);
    return out;
}

std::string pretty_zeta(long d, long a) { return "ζ" + std::to_string(d) + (a == 1 ? "" : "^" + std::to_string(a)); }

}  // namespace

bool global_family_identity(const UchTable& table, const ReflectionCoset& G) {
    auto fd = fake_degrees(G);
    std::vector<std::size_t> all(table.rows.size()), thetas(fd.size());
    std::iota(all.begin(), all.end(), std::size_t{0});
    std::iota(thetas.begin(), thetas.end(), std::size_t{0});
    return bilinear_identity(degree_pairs(table, all), feg_pairs(fd, thetas));
}

AxiomReport verify_axioms(const UchTable& table, const ReflectionCoset& G, const VerifyOptions& opt) {
    AxiomReport rep;
    auto add = [&](std::string check, bool ok, std::string where, std::string detail = {}) {
        rep.items.push_back({std::move(check), ok, std::move(where), std::move(detail)});
    };
    const auto& ct = G.character_table();
    auto fd = fake_degrees(G);
    LaurentPoly order = order_polys(G).order_c;

    add("order", table.order == order, table.group, table.order == order ? "" : "expected " + order.str());
    for (const auto& r : table.rows) {
        add("degree divides order", order.div_exact(r.degree).has_value(), r.name);
        add("family assigned", r.family > 0, r.name);
        add("frobenius known", r.fr.has_value(), r.name);
    }

    for (int f = 1; f <= table.family_count(); ++f) {
        auto mem = table.family(f);
        if (mem.empty()) continue;
        std::string where = "family " + std::to_string(f);
        long a = table.rows[mem[0]].a(), A = table.rows[mem[0]].A();
        bool constant = std::all_of(mem.begin(), mem.end(), [&](std::size_t i) {
            return table.rows[i].a() == a && table.rows[i].A() == A;
        });
        add("(a, A) constant", constant, where);
        auto thetas = block_thetas(table, ct, f);
        add("family meets the principal series", !thetas.empty(), where);
        std::size_t specials = 0;
        bool bounds = true;
        for (std::size_t th : thetas) {
            if (fd[th].valuation() == a) ++specials;
            bounds = bounds && a <= fd[th].valuation() && fd[th].degree() <= A;
        }
        add("unique special", specials == 1, where, std::to_string(specials) + " special characters");
        add("a <= b and B <= A", bounds, where);
        if (opt.family_identity)
            add("family identity", bilinear_identity(degree_pairs(table, mem), feg_pairs(fd, thetas)), where);
    }

    std::map<std::size_t, std::set<Cyclo>> zeta_delta;
    for (const auto& [d, a] : regular_eigenvalues(G)) {
        Cyclo z = Cyclo::root_of_unity(d, a);
        std::string where = pretty_zeta(d, a);
        std::size_t cls = 0;
        for (const auto& r : G.regular_classes(z))
            if (r.has_regular_vector) {
                cls = r.class_index;
                break;
            }
        LaurentPoly feg = fake_degree_torus(G, cls);
        auto series = table.series_at(z);
        LaurentPoly sum;
        for (std::size_t i : series) {
            sum += table.rows[i].degree.scaled(table.rows[i].degree.evaluate(z));
            zeta_delta[i].insert(z.pow(table.rows[i].delta()));
        }
        add("series sum", sum == feg, where);
        for (int f = 1; f <= table.family_count(); ++f) {
            Cyclo lhs, rhs;
            for (std::size_t i : table.family(f)) {
                Cyclo v = table.rows[i].degree.evaluate(z);
                lhs += v * v.conjugate();
            }
            for (std::size_t th : block_thetas(table, ct, f)) {
                Cyclo v = fd[th].evaluate(z);
                rhs += v * v.conjugate();
            }
            add("family norm at zeta", lhs == rhs, where + " family " + std::to_string(f));
        }
    }
    for (const auto& [i, vals] : zeta_delta)
        add("zeta^delta constant", vals.size() == 1, table.rows[i].name);

    std::multiset<std::string> frs;
    long n = 1;
    for (const auto& r : table.rows)
        if (r.fr) {
            frs.insert(r.fr->mod_integral().str());
            n = lcm_conductor(n, r.fr->scalar.conductor());
        }
    const long kc = G.field_conductor();
    bool stable = true;
    for (long k = 1; k < n * kc + 1 && stable; ++k) {
        if (std::gcd(k, n) != 1 || (k - 1) % kc != 0) continue;
        std::multiset<std::string> img;
        for (const auto& r : table.rows)
            if (r.fr) img.insert(FracExpMonomial(r.fr->scalar.galois(k), r.fr->exponent).mod_integral().str());
        stable = img == frs;
    }
    add("frobenius Galois stable", stable, table.group);
    return rep;
}

CuspidalDatum cuspidal_datum(const ReflectionCoset& G, const std::vector<std::size_t>& levi_elements,
                             const LaurentPoly& deg_lambda, std::string label) {
    std::vector<CMatrix> mats;
    std::set<std::size_t> inL(levi_elements.begin(), levi_elements.end());
    for (std::size_t i : levi_elements) mats.push_back(G.elements()[i]);
    auto L = ReflectionCoset::from_elements(label, mats);
    CuspidalDatum c;
    c.label = std::move(label);
    c.deg_lambda = deg_lambda;
    LaurentPoly og = order_polys(G).order_c, ol = order_polys(*L).order_c;
    c.order_G = og.shifted(-og.valuation());
    c.order_L = ol.shifted(-ol.valuation());

    const std::size_t n = G.rank();
    detail::Rows rows;
    for (const auto& m : mats) {
        CMatrix d = m - CMatrix::identity(n);
        for (auto& r : detail::rows_of(d)) rows.push_back(std::move(r));
    }
    auto fix = detail::nullspace(rows, n);
    if (fix.size() != 1) throw std::invalid_argument("cuspidal_datum: the relative group does not act on a line");
    const Vec& v = fix[0];
    std::size_t k = 0;
    while (v[k].is_zero()) ++k;

    std::vector<std::size_t> normalizer;
    for (std::size_t g = 0; g < G.order(); ++g) {
        std::size_t gi = G.inverse(g);
        bool ok = std::all_of(levi_elements.begin(), levi_elements.end(),
                              [&](std::size_t l) { return inL.count(G.multiply(G.multiply(g, l), gi)) > 0; });
        if (ok) normalizer.push_back(g);
    }
    std::set<Cyclo> scalars;
    for (std::size_t g : normalizer) {
        const CMatrix& m = G.elements()[g];
        Cyclo gv;
        for (std::size_t j = 0; j < n; ++j) gv += m(k, j) * v[j];
        scalars.insert(gv / v[k]);
    }
    c.relative_order = static_cast<long>(scalars.size());
    if (normalizer.size() != scalars.size() * levi_elements.size())
        throw std::logic_error("cuspidal_datum: kernel of the action on the line differs from W_L");
    c.relative_degrees = {1};
    return c;
}

std::vector<HCCandidate> hc_candidate_filter(const CuspidalDatum& datum, const UchTable& table) {
    auto ratio = datum.order_G.div_exact(datum.order_L);
    if (!ratio) throw std::invalid_argument("hc_candidate_filter: |L| does not divide |G|");
    LaurentPoly top = datum.deg_lambda * *ratio;
    std::vector<HCCandidate> out;
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const auto& deg = table.rows[i].degree;
        if (!deg.div_exact(datum.deg_lambda)) continue;
        auto S = top.div_exact(deg);
        if (!S) continue;
        auto s1 = S->evaluate(Cyclo(1)).as_rational();
        if (!s1 || *s1 == 0) continue;
        Rational chi = Rational(datum.relative_order) / *s1;
        chi.canonicalize();
        if (chi.get_den() != 1) continue;
        long c = chi.get_num().get_si();
        if (std::find(datum.relative_degrees.begin(), datum.relative_degrees.end(), std::labs(c)) ==
            datum.relative_degrees.end())
            continue;
        out.push_back({i, c, *S});
    }
    return out;
}

bool hc_tuple_ok(const CuspidalDatum& datum, const UchTable& table, const std::vector<HCCandidate>& tuple) {
    if (static_cast<long>(tuple.size()) != datum.relative_order) return false;
    auto ratio = datum.order_G.div_exact(datum.order_L);
    if (!ratio) return false;
    LaurentPoly sum;
    for (const auto& c : tuple) sum += table.rows[c.row].degree.scaled(Cyclo(c.chi1));
    return sum == datum.deg_lambda * *ratio;
}

}  // namespace spets
