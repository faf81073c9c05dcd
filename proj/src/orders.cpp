#include "spets/orders.hpp"

#include <stdexcept>

#include "spets/kcyclo.hpp"

namespace spets {

LaurentPoly fake_degree_torus(const ReflectionCoset& G, std::size_t class_index) {
    const auto& c = G.classes().at(class_index);
    LaurentPoly num = G.poincare().conjugate();
    LaurentPoly den = G.coset_element(c.rep).det_one_minus_x().conjugate();
    auto q = num.div_exact(den);
    if (!q) throw std::logic_error("torus Poincare polynomial does not divide P");
    return *q;
}

LaurentPoly fake_degree(const ReflectionCoset& G, const ClassFunction& f) {
    const auto& cls = G.classes();
    if (f.size() != cls.size()) throw std::invalid_argument("class function has the wrong length");
    LaurentPoly s;
    for (std::size_t i = 0; i < cls.size(); ++i) {
        if (f[i].is_zero()) continue;
        s += fake_degree_torus(G, i).scaled(f[i] * Cyclo(static_cast<long>(cls[i].size())));
    }
    return s.scaled(Cyclo(Rational(1, static_cast<long>(G.order()))));
}

std::vector<LaurentPoly> fake_degrees(const ReflectionCoset& G) {
    std::vector<LaurentPoly> out;
    for (const auto& row : G.character_table().values) out.push_back(fake_degree(G, row));
    return out;
}

ClassFunction det_function(const ReflectionCoset& G, bool dual) {
    ClassFunction f;
    for (const auto& c : G.classes()) {
        Cyclo d = G.coset_element(c.rep).det();
        f.push_back(dual ? d.conjugate() : d);
    }
    return f;
}

OrderPolynomials order_polys(const ReflectionCoset& G) {
    OrderPolynomials o;
    o.poincare = G.poincare();
    const LaurentPoly pstar = o.poincare.conjugate();
    const Cyclo sign(G.rank() % 2 == 0 ? 1 : -1);
    o.order_c = (fake_degree(G, det_function(G, false)) * pstar).scaled(sign);
    o.order_nc = (fake_degree(G, det_function(G, true)) * pstar).scaled(sign);
    return o;
}

DetValues det_character_values(const ReflectionCoset& G) {
    LaurentPoly fd = fake_degree(G, det_function(G, false));
    LaurentPoly fds = fake_degree(G, det_function(G, true));
    if (!fd.is_monomial() || !fds.is_monomial()) throw std::logic_error("fake degree of det is not a monomial");
    DetValues v;
    v.det_prime = fd.leading();
    v.det_prime_vee = fds.leading().conjugate();
    v.delta = v.det_prime * v.det_prime_vee;
    return v;
}

Cyclo scalar_product(const ReflectionCoset& G, const ClassFunction& a, const ClassFunction& b) {
    const auto& cls = G.classes();
    Cyclo s;
    for (std::size_t i = 0; i < cls.size(); ++i)
        if (!a[i].is_zero() && !b[i].is_zero()) s += Cyclo(static_cast<long>(cls[i].size())) * a[i] * b[i].conjugate();
    return s / Cyclo(static_cast<long>(G.order()));
}

ClassFunction torus_class_function(const ReflectionCoset& G, std::size_t class_index) {
    ClassFunction f(G.classes().size());
    f[class_index] = Cyclo(static_cast<long>(G.order() / G.classes()[class_index].size()));
    return f;
}

namespace {

// Index in G of the W-part of the L coset element l*phi_L, i.e. l*phi_L*phi_G^{-1}.
std::size_t parent_element(const ReflectionCoset& G, const ReflectionCoset& L, std::size_t l, const CMatrix& phig_inv) {
    auto idx = G.index_of(L.coset_element(l) * phig_inv);
    if (!idx) throw std::invalid_argument("L is not a subcoset of G");
    return *idx;
}

}  // namespace

std::vector<std::size_t> parent_classes(const ReflectionCoset& G, const ReflectionCoset& L) {
    const CMatrix phig_inv = G.twist().inverse();
    std::vector<std::size_t> out;
    for (const auto& c : L.classes()) out.push_back(G.class_of(parent_element(G, L, c.rep, phig_inv)));
    return out;
}

ClassFunction restrict_to(const ReflectionCoset& G, const ReflectionCoset& L, const ClassFunction& alpha) {
    ClassFunction out;
    for (std::size_t c : parent_classes(G, L)) out.push_back(alpha.at(c));
    return out;
}

ClassFunction induce_from(const ReflectionCoset& G, const ReflectionCoset& L, const ClassFunction& beta) {
    const CMatrix phil_inv = L.twist().inverse();
    ClassFunction out;
    for (const auto& c : G.classes()) {
        const CMatrix u = G.coset_element(c.rep);
        Cyclo s;
        for (const auto& v : G.elements()) {
            auto l = L.index_of(v * u * v.inverse() * phil_inv);
            if (l) s += beta.at(L.class_of(*l));
        }
        out.push_back(s / Cyclo(static_cast<long>(L.order())));
    }
    return out;
}

CongruenceReport sylow_congruence_check(const ReflectionCoset& G, const LaurentPoly& phi) {
    CongruenceReport r;
    r.phi = phi;
    SylowData sd = sylow_subcoset(G, phi);
    r.a = sd.a;
    r.relative_order = sd.relative_order;
    auto og = order_polys(G);
    auto ol = order_polys(*sd.levi);
    auto reduce = [&](const LaurentPoly& num, const LaurentPoly& den) {
        auto q = num.div_exact(den);
        if (!q) throw std::logic_error("order of L does not divide the order of G");
        return q->scaled(Cyclo(Rational(1, static_cast<long>(sd.relative_order)))).mod_reduce(phi);
    };
    r.remainder_c = reduce(og.order_c, ol.order_c);
    r.remainder_nc = reduce(og.order_nc, ol.order_nc);
    return r;
}

std::vector<LaurentPoly> cyclotomic_divisors(const ReflectionCoset& G) {
    auto f = factor_cyclotomic(G.poincare(), CycloSubfield::cyclotomic(G.field_conductor()));
    std::vector<LaurentPoly> out;
    for (const auto& [fac, m] : f.factors) out.push_back(fac.poly);
    return out;
}

}  // namespace spets
