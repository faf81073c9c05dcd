#include "spets/uch.hpp"

#include <algorithm>

#include "spets/orders.hpp"

namespace spets {

int UchTable::family_count() const {
    int m = 0;
    for (const auto& r : rows) m = std::max(m, r.family);
    return m;
}

std::vector<std::size_t> UchTable::family(int f) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < rows.size(); ++i)
        if (rows[i].family == f) out.push_back(i);
    return out;
}

std::optional<std::size_t> UchTable::find(const std::string& name) const {
    for (std::size_t i = 0; i < rows.size(); ++i)
        if (rows[i].name == name) return i;
    return std::nullopt;
}

std::vector<std::size_t> UchTable::series_at(const Cyclo& z) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < rows.size(); ++i)
        if (!rows[i].degree.evaluate(z).is_zero()) out.push_back(i);
    return out;
}

std::string cyclic_name(long i, long k) { return "rho_{" + std::to_string(i) + "," + std::to_string(k) + "}"; }

UchTable cyclic_uch(long e) {
    if (e < 1) throw std::invalid_argument("cyclic_uch: e must be positive");
    UchTable t;
    t.group = "Z" + std::to_string(e);
    t.conductor = field_conductor(e);
    const LaurentPoly X = LaurentPoly::x();
    LaurentPoly xe1 = LaurentPoly::monomial(Cyclo(1), e) - LaurentPoly(1);
    t.order = e == 1 ? xe1 : X * xe1;

    UnipotentCharacter id;
    id.name = "Id";
    id.degree = LaurentPoly(1);
    id.fr = FracExpMonomial(Cyclo(1), Rational(0));
    id.family = 1;
    id.marker = Marker::special;
    id.hc_cuspidal = "Id";
    id.hc_relative = "1";
    t.rows.push_back(id);

    auto z = [e](long k) { return Cyclo::root_of_unity(e, ((k % e) + e) % e); };
    for (long i = 1; i < e; ++i) {
        for (long k = 0; k < i; ++k) {
            UnipotentCharacter r;
            r.name = cyclic_name(i, k);
            LaurentPoly num = X * xe1;
            LaurentPoly den = (X - LaurentPoly(z(k))) * (X - LaurentPoly(z(i)));
            auto q = num.div_exact(den);
            if (!q) throw std::logic_error("cyclic_uch: inexact division");
            r.degree = q->scaled((z(k) - z(i)) * Cyclo(Rational(1, e)));
            r.fr = FracExpMonomial(z(i * k), Rational(0));
            r.family = 2;
            if (k == 0) {
                r.hc_cuspidal = "Id";
                r.hc_relative = pretty_root(z(i));
                if (i == 1) r.marker = Marker::special;
                else if (i == e - 1) r.marker = Marker::cospecial;
            } else {
                r.hc_cuspidal = r.name;
                r.sign_resolved = false;
            }
            t.rows.push_back(std::move(r));
        }
    }
    return t;
}

std::vector<UnipotentCharacter> principal_series(const SpetsialAlgebraSpec& spec) {
    auto degs = generic_degrees(spec);
    std::vector<UnipotentCharacter> out;
    for (std::size_t j = 0; j < degs.size(); ++j) {
        auto d = degs[j].in_x();
        if (!d) throw std::runtime_error("principal_series: degree of character " + std::to_string(j) + " is not in x");
        UnipotentCharacter r;
        r.degree = *d;
        auto fr = frobenius(spec, j);
        if (fr.is_single()) r.fr = fr.value().mod_integral();
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<UnipotentCharacter> principal_series(const ReflectionCoset& G, const std::vector<SchurEntry>& schur) {
    const auto& t = G.character_table();
    LaurentPoly feg = fake_degree_torus(G, G.class_of(G.identity_index()));
    std::vector<UnipotentCharacter> out;
    for (const auto& s : schur) {
        if (!t.index_of(s.theta)) throw std::runtime_error("principal_series: unknown character " + s.theta);
        auto d = feg.div_exact(s.schur);
        if (!d) throw std::runtime_error("principal_series: Schur element of " + s.theta + " does not divide Feg");
        UnipotentCharacter r;
        r.name = s.theta;
        r.degree = *d;
        r.fr = FracExpMonomial(Cyclo(1), Rational(0));
        r.hc_cuspidal = "Id";
        r.hc_relative = s.theta;
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<EnnolaMatch> ennola_transform(const UchTable& table, const Cyclo& z) {
    Cyclo zi = z.inverse();
    std::vector<EnnolaMatch> out;
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        EnnolaMatch m;
        m.source = i;
        m.image = table.rows[i].degree.subs_scale(zi);
        LaurentPoly neg = m.image.scaled(Cyclo(-1));
        for (std::size_t j = 0; j < table.rows.size() && !m.target; ++j)
            if (table.rows[j].degree == m.image) m.target = j;
        for (std::size_t j = 0; j < table.rows.size() && !m.target; ++j)
            if (table.rows[j].degree == neg) {
                m.target = j;
                m.sign = -1;
            }
        out.push_back(std::move(m));
    }
    return out;
}

void tag_principal(UchTable& table, const std::vector<UnipotentCharacter>& principal) {
    for (const auto& p : principal) {
        for (auto& r : table.rows) {
            if (r.degree != p.degree) continue;
            r.hc_cuspidal = "Id";
            r.hc_relative = p.hc_relative;
            if (!r.fr) r.fr = p.fr;
            break;
        }
    }
}

}  // namespace spets
