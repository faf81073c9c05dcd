#include <algorithm>
#include <functional>
#include <sstream>

#include "spets/orders.hpp"
#include "spets/uch.hpp"

namespace spets {

namespace {

Rational frac_part(Rational q) {
    q.canonicalize();
    mpz_class f;
    mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    Rational r = q - Rational(f);
    r.canonicalize();
    return r;
}

// Perfect matching of every left vertex; adj[l] lists admissible right vertices.
std::optional<std::vector<std::size_t>> match_all(const std::vector<std::vector<std::size_t>>& adj, std::size_t nright) {
    std::vector<std::optional<std::size_t>> owner(nright);
    std::function<bool(std::size_t, std::vector<bool>&)> aug = [&](std::size_t l, std::vector<bool>& seen) {
        for (std::size_t r : adj[l]) {
            if (seen[r]) continue;
            seen[r] = true;
            if (!owner[r] || aug(*owner[r], seen)) {
                owner[r] = l;
                return true;
            }
        }
        return false;
    };
    for (std::size_t l = 0; l < adj.size(); ++l) {
        std::vector<bool> seen(nright, false);
        if (!aug(l, seen)) return std::nullopt;
    }
    std::vector<std::size_t> out(adj.size());
    for (std::size_t r = 0; r < nright; ++r)
        if (owner[r]) out[*owner[r]] = r;
    return out;
}

// Eigenvalues of Frobenius a slot can carry, from its position and x-exponent alone.
std::vector<FracExpMonomial> slot_fr_candidates(const SeriesContext& c, long j, const Rational& m) {
    const long e = c.e;
    Rational l(c.a * c.delta, c.d);
    l.canonicalize();
    Rational rho = l * e;
    rho.canonicalize();
    if (rho.get_den() != 1) return {};
    Cyclo omega = Cyclo::root_of_unity(e, ((j * rho.get_num().get_si()) % e + e) % e);
    Rational sigma = m * e - c.n_hyp_W;
    Rational delta = Rational(c.n_ref_W) - sigma;
    Cyclo base = omega * c.zeta_pow(l * delta);
    Rational xexp = frac_part(-delta * l);
    const long kp = xexp.get_den().get_si();
    std::vector<FracExpMonomial> out;
    for (long i = 0; i < kp; ++i) out.push_back(FracExpMonomial(base * Cyclo::root_of_unity(kp, i), xexp).mod_integral());
    return out;
}

bool fr_in(const FracExpMonomial& f, const std::vector<FracExpMonomial>& s) {
    auto g = f.mod_integral();
    return std::any_of(s.begin(), s.end(), [&](const FracExpMonomial& h) { return h.mod_integral() == g; });
}

std::string funnel_str(const SearchFunnel& f) {
    std::ostringstream o;
    o << f.arrangements << " arrangements, " << f.after_fr << " after Fr, " << f.after_rationality
      << " after rationality, " << f.survivors << " survivors";
    return o.str();
}

}  // namespace

std::vector<Rational> parameter_multiset(const ReflectionCoset& G, const SeriesContext& ctx, const UchTable& known) {
    const auto& ct = G.character_table();
    auto fd = fake_degrees(G);
    const Cyclo z = ctx.zeta();
    std::vector<Rational> out;
    for (int f = 1; f <= known.family_count(); ++f) {
        auto mem = known.family(f);
        if (mem.empty()) continue;
        Cyclo count;
        for (std::size_t i : mem)
            if (known.rows[i].principal())
                if (auto th = ct.index_of(known.rows[i].hc_relative)) {
                    Cyclo v = fd[*th].evaluate(z);
                    count += v * v.conjugate();
                }
        auto c = count.as_rational();
        if (!c || c->get_den() != 1 || *c < 0) throw SearchError("family norm at zeta is not a natural number", 0);
        if (*c == 0) continue;
        Rational m(ctx.n_ref_W + ctx.n_hyp_W - known.rows[mem[0]].delta(), ctx.e);
        m.canonicalize();
        for (long k = 0; k < c->get_num().get_si(); ++k) out.push_back(m);
    }
    if (static_cast<long>(out.size()) != ctx.e)
        throw SearchError("family norms add up to " + std::to_string(out.size()) + ", expected " + std::to_string(ctx.e), 0);
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
}

DeterminedSeries determine_parameters(const ReflectionCoset& G, long d, long a, const UchTable& known) {
    SeriesContext ctx = series_context(G, d, a);
    if (!ctx.cyclic) throw SearchError("centralizer is not cyclic", 0);
    const long e = ctx.e;
    auto ms = parameter_multiset(G, ctx, known);
    if (ms.front() != ctx.m_I()) throw SearchError("largest parameter exponent differs from m_I", 0);

    const Cyclo z = ctx.zeta();
    auto series = known.series_at(z);
    std::vector<Rational> row_m;
    for (std::size_t i : series) {
        Rational m(ctx.n_ref_W + ctx.n_hyp_W - known.rows[i].delta(), e);
        m.canonicalize();
        row_m.push_back(m);
    }

    DeterminedSeries best;
    best.m_multiset = ms;
    SearchFunnel funnel;
    std::vector<std::pair<std::string, DeterminedSeries>> found;
    std::vector<Rational> rest(ms.begin() + 1, ms.end());
    std::sort(rest.begin(), rest.end());
    do {
        ++funnel.arrangements;
        std::vector<Rational> m{ms.front()};
        m.insert(m.end(), rest.begin(), rest.end());

        std::vector<std::vector<std::size_t>> adj(series.size());
        for (std::size_t r = 0; r < series.size(); ++r)
            for (long j = 0; j < e; ++j) {
                if (m[static_cast<std::size_t>(j)] != row_m[r]) continue;
                const auto& fr = known.rows[series[r]].fr;
                if (fr && !fr_in(*fr, slot_fr_candidates(ctx, j, m[static_cast<std::size_t>(j)]))) continue;
                adj[r].push_back(static_cast<std::size_t>(j));
            }
        if (!match_all(adj, static_cast<std::size_t>(e))) continue;
        ++funnel.after_fr;

        auto spec = SpetsialAlgebraSpec::from_m(ctx, SupportType::compact, m);
        try {
            if (!check_spetsial(spec).ok()) continue;
        } catch (const std::exception&) {
            continue;
        }
        ++funnel.after_rationality;

        DeterminedSeries cand;
        cand.spec = spec;
        try {
            auto vd = generic_degrees(spec);
            for (std::size_t j = 0; j < vd.size(); ++j) {
                auto dx = vd[j].in_x();
                if (!dx) throw std::runtime_error("degree not in x");
                cand.degrees.push_back(*dx);
                auto fr = frobenius(spec, j);
                cand.fr.push_back(fr.is_single() ? std::optional<FracExpMonomial>(fr.value().mod_integral()) : std::nullopt);
            }
        } catch (const std::exception&) {
            continue;
        }
        std::vector<std::vector<std::size_t>> adj2(series.size());
        for (std::size_t r = 0; r < series.size(); ++r) {
            const auto& row = known.rows[series[r]];
            for (std::size_t j = 0; j < cand.degrees.size(); ++j) {
                bool deg_ok = row.degree == cand.degrees[j] || row.degree == cand.degrees[j].scaled(Cyclo(-1));
                bool fr_ok = !row.fr || !cand.fr[j] || row.fr->mod_integral() == *cand.fr[j];
                if (deg_ok && fr_ok) adj2[r].push_back(j);
            }
        }
        auto mt = match_all(adj2, cand.degrees.size());
        if (!mt) continue;
        cand.slots.assign(cand.degrees.size(), SlotMatch{});
        for (std::size_t r = 0; r < series.size(); ++r) {
            std::size_t j = (*mt)[r];
            cand.slots[j].row = series[r];
            cand.slots[j].sign = known.rows[series[r]].degree == cand.degrees[j] ? 1 : -1;
        }
        found.emplace_back(spec.str(), std::move(cand));
    } while (std::next_permutation(rest.begin(), rest.end()));

    std::sort(found.begin(), found.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    funnel.survivors = found.size();
    if (found.size() != 1) {
        std::string msg = "expected one parameter assignment at " + std::to_string(a) + "/" + std::to_string(d) + ", found " +
                          std::to_string(found.size()) + " (" + funnel_str(funnel) + ")";
        throw SearchError(msg, found.size());
    }
    best = std::move(found.front().second);
    best.m_multiset = ms;
    best.funnel = funnel;
    best.survivors = {found.front().first};
    return best;
}

}  // namespace spets
