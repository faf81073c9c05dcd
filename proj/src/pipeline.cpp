#include <algorithm>
#include <map>

#include "spets/orders.hpp"
#include "spets/tabledata.hpp"
#include "spets/uch.hpp"

namespace spets {

namespace {

std::optional<std::size_t> find_degree(const UchTable& t, const LaurentPoly& p, int& sign) {
    for (std::size_t i = 0; i < t.rows.size(); ++i)
        if (t.rows[i].degree == p) {
            sign = 1;
            return i;
        }
    LaurentPoly n = p.scaled(Cyclo(-1));
    for (std::size_t i = 0; i < t.rows.size(); ++i)
        if (t.rows[i].degree == n) {
            sign = -1;
            return i;
        }
    return std::nullopt;
}

LaurentPoly positive_leading(const LaurentPoly& p, bool& resolved) {
    Cyclo l = p.leading();
    resolved = false;
    if (l.is_real() && l.to_complex().real() < 0) return p.scaled(Cyclo(-1));
    return p;
}

std::string zeta_label(long d, long a) {
    if (d == 1) return "1";
    if (d == 2) return "-1";
    return "ζ" + std::to_string(d) + (a == 1 ? "" : "^" + std::to_string(a));
}

void fill_fr(UnipotentCharacter& r, const std::optional<FracExpMonomial>& fr) {
    if (!r.fr && fr) r.fr = fr->mod_integral();
}

// Rows of the series of spec twisted by each central element.
void ennola_series(UchTable& t, const SpetsialAlgebraSpec& spec, const std::vector<Cyclo>& centre, const std::string& label,
                   std::vector<std::string>& log) {
    for (const auto& z : centre) {
        if (z.is_one()) continue;
        auto nk = z.root_of_unity_exponent();
        if (!nk) continue;
        std::vector<UnipotentCharacter> ps;
        try {
            ps = principal_series(ennola_twist(spec, nk->first, nk->second));
        } catch (const std::exception& ex) {
            log.push_back("Ennola " + pretty_root(z) + " of " + label + ": " + ex.what());
            continue;
        }
        for (std::size_t j = 0; j < ps.size(); ++j) {
            int sign = 1;
            if (auto i = find_degree(t, ps[j].degree, sign)) {
                fill_fr(t.rows[*i], ps[j].fr);
                continue;
            }
            UnipotentCharacter r;
            r.name = "E_{" + pretty_root(z) + "}(" + label + ":" + std::to_string(j) + ")";
            r.degree = positive_leading(ps[j].degree, r.sign_resolved);
            r.fr = ps[j].fr;
            t.rows.push_back(std::move(r));
        }
    }
}

SpetsialAlgebraSpec cyclic_generic_spec(const ReflectionCoset& G) {
    const long e = static_cast<long>(G.order());
    auto ctx = series_context(G, 1, 0);
    std::vector<Rational> m(static_cast<std::size_t>(e), Rational(0));
    m[0] = ctx.m_I();
    auto spec = SpetsialAlgebraSpec::from_m(ctx, SupportType::compact, m);
    if (!check_spetsial(spec).ok()) throw std::runtime_error("generic algebra of " + G.name() + " is not spetsial");
    return spec;
}

std::vector<UnipotentCharacter> cyclic_principal(const ReflectionCoset& G, const SpetsialAlgebraSpec& spec) {
    const auto& ct = G.character_table();
    auto ps = principal_series(spec);
    for (std::size_t j = 0; j < ps.size(); ++j) {
        auto& r = ps[j];
        r.name = j == 0 ? "Id" : cyclic_name(static_cast<long>(j), 0);
        r.hc_cuspidal = "Id";
        r.hc_relative = ct.names[j];
    }
    return ps;
}

}  // namespace

std::vector<UnipotentCharacter> principal_characters(const ReflectionCoset& G) {
    if (G.rank() == 1) return cyclic_principal(G, cyclic_generic_spec(G));
    return principal_series(G, load_schur(G.name()));
}

PipelineResult run_pipeline(const std::string& group, const PipelineOptions& opt) {
    auto Gp = ReflectionCoset::builtin(group);
    const auto& G = *Gp;
    PipelineResult res;
    auto& t = res.table;
    auto& log = res.log;
    t.group = G.name();
    t.conductor = G.field_conductor();
    t.order = order_polys(G).order_c;
    std::vector<Cyclo> centre;
    for (std::size_t i : G.center())
        if (auto s = G.elements()[i].as_scalar()) centre.push_back(*s);
    std::vector<std::vector<std::string>> blocks;

    if (G.rank() == 1) {
        const long e = static_cast<long>(G.order());
        auto spec = cyclic_generic_spec(G);
        for (auto& r : cyclic_principal(G, spec)) t.rows.push_back(std::move(r));
        log.push_back("principal series from " + spec.str());
        for (const auto& z : centre) {
            if (z.is_one()) continue;
            auto nk = z.root_of_unity_exponent();
            const long k = nk->second * e / nk->first;
            auto tw = principal_series(ennola_twist(spec, nk->first, nk->second));
            for (long i = 0; i < e; ++i) {
                const auto& s = tw[static_cast<std::size_t>(i)];
                int sign = 1;
                if (auto row = find_degree(t, s.degree, sign)) {
                    fill_fr(t.rows[*row], s.fr);
                    continue;
                }
                const long idx = (i + k) % e;
                UnipotentCharacter r;
                r.name = idx > k ? cyclic_name(idx, k) : cyclic_name(k, idx);
                r.degree = idx > k ? s.degree : s.degree.scaled(Cyclo(-1));
                r.fr = s.fr;
                r.hc_cuspidal = r.name;
                r.sign_resolved = false;
                t.rows.push_back(std::move(r));
            }
            log.push_back("Ennola " + pretty_root(z) + ": " + std::to_string(t.rows.size()) + " characters");
        }
        blocks = cyclic_blocks(t);
        families(t, G, blocks, centre);
        res.complete = global_family_identity(t, G);
        return res;
    }

    auto schur = load_schur(group);
    for (auto& r : principal_series(G, schur)) t.rows.push_back(std::move(r));
    for (const auto& s : schur) {
        if (static_cast<std::size_t>(s.block) > blocks.size()) blocks.resize(static_cast<std::size_t>(s.block));
        blocks[static_cast<std::size_t>(s.block - 1)].push_back(s.theta);
    }
    log.push_back("principal series: " + std::to_string(t.rows.size()) + " characters");
    for (bool grew = true; grew;) {
        grew = false;
        for (const auto& z : centre) {
            if (z.is_one()) continue;
            for (const auto& m : ennola_transform(t, z)) {
                if (m.target) continue;
                int sign = 1;
                if (find_degree(t, m.image, sign)) continue;
                UnipotentCharacter r;
                r.name = "E_{" + pretty_root(z) + "}(" + t.rows[m.source].name + ")";
                r.degree = positive_leading(m.image, r.sign_resolved);
                t.rows.push_back(std::move(r));
                grew = true;
            }
        }
    }
    log.push_back("after Ennola: " + std::to_string(t.rows.size()) + " characters");
    families(t, G, blocks, centre);
    res.complete = global_family_identity(t, G);

    std::vector<std::pair<long, long>> zetas = opt.zetas;
    if (zetas.empty()) {
        std::map<long, long> first;
        for (const auto& [d, a] : regular_eigenvalues(G)) {
            Cyclo z = Cyclo::root_of_unity(d, a);
            if (std::find(centre.begin(), centre.end(), z) != centre.end()) continue;
            if (!first.count(d)) first[d] = a;
        }
        for (auto it = first.rbegin(); it != first.rend(); ++it) zetas.emplace_back(it->first, it->second);
    }
    auto fr_missing = [&] {
        return std::any_of(t.rows.begin(), t.rows.end(), [](const UnipotentCharacter& r) { return !r.fr; });
    };
    const bool run_all = !opt.zetas.empty();
    auto finished = [&] { return !run_all && res.complete && !fr_missing(); };
    std::vector<bool> done(zetas.size(), false);
    for (bool progress = true; progress && !finished();) {
        progress = false;
        for (std::size_t q = 0; q < zetas.size() && !finished(); ++q) {
            if (done[q]) continue;
            const auto [d, a] = zetas[q];
            const std::string label = zeta_label(d, a);
            DeterminedSeries ds;
            try {
                ds = determine_parameters(G, d, a, t);
            } catch (const std::exception& ex) {
                log.push_back(label + ": " + ex.what());
                continue;
            }
            done[q] = progress = true;
            std::size_t before = t.rows.size();
            for (std::size_t j = 0; j < ds.degrees.size(); ++j) {
                if (ds.slots[j].row) {
                    fill_fr(t.rows[*ds.slots[j].row], ds.fr[j]);
                    continue;
                }
                UnipotentCharacter r;
                r.name = label + ":" + std::to_string(j);
                r.degree = positive_leading(ds.degrees[j], r.sign_resolved);
                r.fr = ds.fr[j];
                t.rows.push_back(std::move(r));
            }
            ennola_series(t, ds.spec, centre, label, log);
            families(t, G, blocks, centre);
            t.series.push_back({label, ds.spec.str()});
            res.specs.emplace_back(label, ds.spec);
            log.push_back(label + ": " + ds.spec.str() + ", " + std::to_string(t.rows.size() - before) + " new characters");
            res.complete = global_family_identity(t, G);
        }
    }
    log.push_back(res.complete ? "complete" : "incomplete");
    if (fr_missing()) log.push_back("some eigenvalues of Frobenius are unknown");
    return res;
}

}  // namespace spets
