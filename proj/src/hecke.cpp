#include "spets/hecke.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "expr.hpp"
#include "spets/kcyclo.hpp"
#include "spets/orders.hpp"

namespace spets {

namespace {

// exp(2 pi i q)
Cyclo root_exp(Rational q) {
    q = frac_mod1(q);
    return Cyclo::root_of_unity(q.get_den().get_si(), q.get_num().get_si());
}

Rational rat(long p, long q = 1) {
    Rational r(p, q);
    r.canonicalize();
    return r;
}

long to_long(const Rational& q) {
    if (q.get_den() != 1) throw std::logic_error("expected an integer, got " + q.get_str());
    return q.get_num().get_si();
}

bool algebraic_integer(const Cyclo& c) {
    for (const auto& q : c.coefficients())
        if (q.get_den() != 1) return false;
    return true;
}

}  // namespace

// ---------------------------------------------------------------- MultiLaurent

MultiLaurent::MultiLaurent(std::size_t nvars, const Cyclo& c) : n_(nvars) {
    if (!c.is_zero()) t_[Exponent(nvars, 0)] = c;
}

MultiLaurent MultiLaurent::var(std::size_t nvars, std::size_t i, long power) {
    MultiLaurent m(nvars);
    Exponent e(nvars, 0);
    e.at(i) = power;
    m.t_[e] = Cyclo(1);
    return m;
}

MultiLaurent& MultiLaurent::operator+=(const MultiLaurent& o) {
    if (n_ == 0) n_ = o.n_;
    for (const auto& [e, c] : o.t_) {
        auto it = t_.find(e);
        if (it == t_.end()) t_[e] = c;
        else {
            it->second += c;
            if (it->second.is_zero()) t_.erase(it);
        }
    }
    return *this;
}

MultiLaurent& MultiLaurent::operator-=(const MultiLaurent& o) {
    MultiLaurent neg(o.n_);
    for (const auto& [e, c] : o.t_) neg.t_[e] = -c;
    return *this += neg;
}

MultiLaurent& MultiLaurent::operator*=(const MultiLaurent& o) {
    MultiLaurent r(std::max(n_, o.n_));
    for (const auto& [e1, c1] : t_)
        for (const auto& [e2, c2] : o.t_) {
            Exponent e(r.n_, 0);
            for (std::size_t i = 0; i < e1.size(); ++i) e[i] += e1[i];
            for (std::size_t i = 0; i < e2.size(); ++i) e[i] += e2[i];
            r += MultiLaurent::from_term(r.n_, e, c1 * c2);
        }
    return *this = std::move(r);
}

MultiLaurent MultiLaurent::vee() const {
    MultiLaurent r(n_);
    for (const auto& [e, c] : t_) {
        Exponent f = e;
        for (auto& x : f) x = -x;
        r.t_[f] = c.conjugate();
    }
    return r;
}

Cyclo MultiLaurent::evaluate(const std::vector<Cyclo>& u) const {
    Cyclo s;
    for (const auto& [e, c] : t_) {
        Cyclo term = c;
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i] != 0) term *= u.at(i).pow(e[i]);
        s += term;
    }
    return s;
}

std::string MultiLaurent::str(const std::vector<std::string>& names) const {
    if (t_.empty()) return "0";
    auto name = [&](std::size_t i) {
        if (i < names.size()) return names[i];
        if (n_ <= 26) return std::string(1, static_cast<char>('a' + i));
        return "u" + std::to_string(i);
    };
    std::string out;
    for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
        const auto& [e, c] = *it;
        std::string mono;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            mono += name(i);
            if (e[i] != 1) mono += "^" + std::to_string(e[i]);
        }
        std::string cs = c.str();
        bool compound = cs.find_first_of("+-", 1) != std::string::npos;
        std::string term;
        if (mono.empty()) term = compound ? "(" + cs + ")" : cs;
        else if (c.is_one()) term = mono;
        else if (c == Cyclo(-1)) term = "-" + mono;
        else term = (compound ? "(" + cs + ")" : cs) + "*" + mono;
        if (!out.empty() && term[0] != '-') out += "+";
        out += term;
    }
    return out;
}

MultiLaurent MultiLaurent::from_term(std::size_t nvars, const Exponent& e, const Cyclo& c) {
    MultiLaurent m(nvars);
    if (!c.is_zero()) m.t_[e] = c;
    return m;
}

// ---------------------------------------------------------------- VLaurent

std::optional<LaurentPoly> VLaurent::in_x() const {
    if (p.is_zero()) return LaurentPoly();
    long lo = p.low();
    if (lo % h != 0) return std::nullopt;
    for (std::size_t i = 0; i < p.coeffs().size(); ++i) {
        if (p.coeffs()[i].is_zero()) continue;
        if ((static_cast<long>(i) + lo) % h != 0) return std::nullopt;
    }
    LaurentPoly r;
    for (std::size_t i = 0; i < p.coeffs().size(); ++i)
        if (!p.coeffs()[i].is_zero()) r += LaurentPoly::monomial(p.coeffs()[i], (static_cast<long>(i) + lo) / h);
    return r;
}

Rational VLaurent::val_plus_deg() const { return rat(p.valuation() + p.degree(), h); }

std::string VLaurent::str() const {
    if (auto x = in_x()) return x->str();
    std::string s = p.str();
    std::string out;
    for (char ch : s) {
        if (ch == 'x') out += "x^{1/" + std::to_string(h) + "}";
        else out += ch;
    }
    return out;
}

// ---------------------------------------------------------------- Schur elements

std::vector<MultiLaurent> schur_generic(long e) {
    const auto n = static_cast<std::size_t>(e);
    std::vector<MultiLaurent> out;
    for (std::size_t i = 0; i < n; ++i) {
        MultiLaurent s(n, Cyclo(1));
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            s *= MultiLaurent::var(n, j) - MultiLaurent::var(n, i);
            s *= MultiLaurent::var(n, j, -1);
        }
        out.push_back(std::move(s));
    }
    return out;
}

std::vector<Cyclo> schur_cyclic(const std::vector<Cyclo>& u) {
    std::vector<Cyclo> out;
    for (std::size_t i = 0; i < u.size(); ++i) {
        Cyclo s(1);
        for (std::size_t j = 0; j < u.size(); ++j) {
            if (j == i) continue;
            if (u[j] == u[i]) throw std::invalid_argument("repeated Hecke parameter");
            s *= (u[j] - u[i]) / u[j];
        }
        out.push_back(s);
    }
    return out;
}

long common_root_index(const std::vector<FracExpMonomial>& u) {
    long h = 1;
    for (const auto& p : u) h = std::lcm(h, p.exponent.get_den().get_si());
    return h;
}

namespace {

LaurentPoly y_monomial(const FracExpMonomial& m, long h) {
    return LaurentPoly::monomial(m.scalar, to_long(m.exponent * h));
}

}  // namespace

std::vector<VLaurent> schur_cyclic(const CyclicHeckeParams& params) {
    const auto& u = params.u;
    const long h = common_root_index(u);
    for (std::size_t i = 0; i < u.size(); ++i)
        for (std::size_t j = i + 1; j < u.size(); ++j)
            if (u[i] == u[j]) throw std::invalid_argument("repeated Hecke parameter " + u[i].pretty());
    std::vector<VLaurent> out;
    for (std::size_t i = 0; i < u.size(); ++i) {
        LaurentPoly s(1);
        const LaurentPoly yi = y_monomial(u[i], h);
        for (std::size_t j = 0; j < u.size(); ++j) {
            if (j == i) continue;
            s *= y_monomial(u[j], h) - yi;
            s *= y_monomial(u[j].pow(-1), h);
        }
        out.push_back(VLaurent{h, s});
    }
    return out;
}

FracExpMonomial tau_pi(const CyclicHeckeParams& params, long n_ref) {
    FracExpMonomial t(Cyclo(n_ref % 2 == 0 ? 1 : -1), 0);
    for (const auto& p : params.u) t = t * p;
    return t;
}

MultiLaurent tau_pi_generic(long e) {
    const auto n = static_cast<std::size_t>(e);
    MultiLaurent t(n, Cyclo((e - 1) % 2 == 0 ? 1 : -1));
    for (std::size_t j = 0; j < n; ++j) t *= MultiLaurent::var(n, j);
    return t;
}

// ---------------------------------------------------------------- context

Cyclo SeriesContext::zeta_pow(const Rational& q) const { return root_exp(q * rat(a, d)); }

FracExpMonomial SeriesContext::zx(const Rational& q) const { return FracExpMonomial(zeta_pow(-q), q); }

SeriesContext series_context(const ReflectionCoset& G, long d, long a) {
    SeriesContext c;
    c.group = G.name();
    Rational r = frac_mod1(rat(a, d));
    c.d = r.get_den().get_si();
    c.a = r.get_num().get_si();
    const Cyclo z = c.zeta();
    std::optional<RegularElementData> reg;
    for (const auto& rr : G.regular_classes(z))
        if (rr.has_regular_vector) {
            reg = rr;
            break;
        }
    if (!reg) throw std::invalid_argument("no regular element for eigenvalue " + z.str() + " in " + G.name());
    c.class_index = reg->class_index;
    if (!G.is_split()) {
        CMatrix p = G.twist();
        long k = 1;
        while (!G.index_of(p)) {
            p = p * G.twist();
            ++k;
        }
        c.delta = k;
    }
    auto cd = centralizer_coset(G, G.classes()[c.class_index].rep, z);
    c.e = static_cast<long>(cd.group->order());
    c.cyclic = cd.group->rank() == 1 && cd.orbits.size() == 1;
    if (c.cyclic) {
        c.e_WI = cd.orbits[0].e_WI;
        c.n_ref_WI = cd.orbits[0].n_ref_WI;
        c.n_hyp_WI = cd.orbits[0].n_hyp_WI;
    }
    c.n_ref_W = G.n_ref();
    c.n_hyp_W = G.n_hyp();
    c.zw = static_cast<long>(G.center().size());
    c.k_conductor = G.field_conductor();
    c.kw_conductor = cd.group->field_conductor();
    c.feg = fake_degree_torus(G, c.class_index);
    for (const auto& [deg, zz] : cd.group->degrees().degrees) c.centralizer_degrees.push_back(deg);
    return c;
}

// ---------------------------------------------------------------- spec

std::vector<Rational> SpetsialAlgebraSpec::m() const {
    std::vector<Rational> out;
    for (const auto& p : params) out.push_back(p.exponent);
    return out;
}

SpetsialAlgebraSpec SpetsialAlgebraSpec::from_m(const SeriesContext& ctx, SupportType type, const std::vector<Rational>& m) {
    SpetsialAlgebraSpec s;
    s.ctx = ctx;
    s.type = type;
    for (std::size_t j = 0; j < m.size(); ++j)
        s.params.push_back(FracExpMonomial(Cyclo::root_of_unity(static_cast<long>(m.size()), static_cast<long>(j)), 0) *
                           ctx.zx(m[j]));
    return s;
}

std::string SpetsialAlgebraSpec::str() const { return format_hecke_spec("Z_" + std::to_string(params.size()), params); }

std::pair<std::string, std::vector<FracExpMonomial>> parse_hecke_spec(std::string_view text) {
    std::string s(text);
    auto lp = s.find('(');
    auto rp = s.rfind(')');
    if (lp == std::string::npos || rp == std::string::npos || rp < lp)
        throw detail::ParseError("expected H_{group}(p_0, ...)", 0);
    std::string head = s.substr(0, lp);
    std::string label;
    auto lb = head.find('{');
    auto rb = head.rfind('}');
    if (lb != std::string::npos && rb != std::string::npos && rb > lb) label = head.substr(lb + 1, rb - lb - 1);
    else {
        auto us = head.find('_');
        label = us == std::string::npos ? head : head.substr(us + 1);
    }
    std::vector<FracExpMonomial> params;
    std::string body = s.substr(lp + 1, rp - lp - 1);
    int depth = 0;
    std::string cur;
    for (char ch : body) {
        if (ch == '(' || ch == '{') ++depth;
        if (ch == ')' || ch == '}') --depth;
        if ((ch == ',' || ch == ';') && depth == 0) {
            params.push_back(FracExpMonomial::parse(cur));
            cur.clear();
        } else cur += ch;
    }
    if (!cur.empty()) params.push_back(FracExpMonomial::parse(cur));
    return {label, params};
}

std::string format_hecke_spec(const std::string& label, const std::vector<FracExpMonomial>& params) {
    std::string out = "H_{" + label + "}(";
    for (std::size_t i = 0; i < params.size(); ++i) {
        if (i) out += ", ";
        out += params[i].pretty();
    }
    return out + ")";
}

bool same_up_to_rotation(const std::vector<FracExpMonomial>& a, const std::vector<FracExpMonomial>& b) {
    if (a.size() != b.size()) return false;
    const std::size_t n = a.size();
    for (std::size_t r = 0; r < std::max<std::size_t>(n, 1); ++r) {
        bool ok = true;
        for (std::size_t j = 0; j < n && ok; ++j) ok = a[j] == b[(j + r) % n];
        if (ok) return true;
    }
    return false;
}

namespace {

// Coefficients e_k(u) (k = 0..n) in y = x^{1/h}.
std::vector<LaurentPoly> elementary(const std::vector<FracExpMonomial>& u, long h) {
    std::vector<LaurentPoly> e(u.size() + 1);
    e[0] = LaurentPoly(1);
    for (const auto& p : u) {
        LaurentPoly y = y_monomial(p, h);
        for (std::size_t k = e.size() - 1; k >= 1; --k) e[k] += e[k - 1] * y;
    }
    return e;
}

long rationality_conductor(const std::vector<FracExpMonomial>& u) {
    long n = 1;
    for (const auto& c : elementary(u, common_root_index(u))) n = lcm_conductor(n, c.conductor());
    return n;
}

}  // namespace

std::vector<FracExpMonomial> normalize_relative_params(std::vector<FracExpMonomial> params) {
    if (params.empty()) return params;
    const long e = static_cast<long>(params.size());
    Rational lo = params[0].exponent;
    for (const auto& p : params) lo = std::min(lo, p.exponent);
    for (auto& p : params) p = p * FracExpMonomial(Cyclo(1), -lo);
    std::vector<FracExpMonomial> best;
    long best_cond = 0;
    for (long r = 0; r < e; ++r) {
        Cyclo c = Cyclo::root_of_unity(e, r) / params[0].scalar;
        std::vector<std::optional<FracExpMonomial>> slot(static_cast<std::size_t>(e));
        bool ok = true;
        for (const auto& p : params) {
            FracExpMonomial q(p.scalar * c, p.exponent);
            auto ex = q.scalar.root_of_unity_exponent();
            if (!ex || e % ex->first != 0) {
                ok = false;
                break;
            }
            auto j = static_cast<std::size_t>(ex->second * (e / ex->first));
            if (slot[j]) {
                ok = false;
                break;
            }
            slot[j] = q;
        }
        if (!ok) continue;
        std::vector<FracExpMonomial> cand;
        for (auto& s : slot) cand.push_back(*s);
        long cond = rationality_conductor(cand);
        auto key = [](const std::vector<FracExpMonomial>& v) {
            std::vector<Rational> m;
            for (const auto& p : v) m.push_back(p.exponent);
            return m;
        };
        if (best.empty() || cond < best_cond || (cond == best_cond && key(cand) > key(best))) {
            best = cand;
            best_cond = cond;
        }
    }
    if (best.empty()) throw std::invalid_argument("parameters do not specialize to the roots of unity");
    return best;
}

// ---------------------------------------------------------------- conditions

bool ConditionReport::ok() const {
    return std::all_of(items.begin(), items.end(), [](const ConditionItem& i) { return i.ok; });
}

bool ConditionReport::passed(const std::string& name) const {
    for (const auto& i : items)
        if (i.name == name) return i.ok;
    return false;
}

std::string ConditionReport::str() const {
    std::ostringstream os;
    for (const auto& i : items) {
        os << (i.ok ? "ok   " : "FAIL ") << i.name;
        if (!i.detail.empty()) os << ": " << i.detail;
        os << "\n";
    }
    return os.str();
}

namespace {

bool in_field(const LaurentPoly& p, const CycloSubfield& K) {
    for (const auto& c : p.coeffs())
        if (!c.is_zero() && !K.contains(c)) return false;
    return true;
}

bool x_integral(const LaurentPoly& p, long h) { return VLaurent{h, p}.in_x().has_value(); }

// Value of u at x = zeta.
Cyclo at_zeta(const SeriesContext& c, const FracExpMonomial& u) { return u.scalar * c.zeta_pow(u.exponent); }

}  // namespace

ConditionReport check_spetsial(const SpetsialAlgebraSpec& spec) {
    ConditionReport rep;
    const auto& c = spec.ctx;
    const auto& u = spec.params;
    auto add = [&](std::string name, bool ok, std::string detail = {}) {
        rep.items.push_back({std::move(name), ok, std::move(detail)});
    };
    if (!c.cyclic) {
        add("cyclic", false, "cyclic reduction only: W(wphi) is not cyclic");
        return rep;
    }
    const long e = static_cast<long>(u.size());
    if (e != c.e) {
        add("size", false, "expected " + std::to_string(c.e) + " parameters");
        return rep;
    }
    std::set<std::string> seen;
    for (const auto& p : u) seen.insert(p.str());
    if (seen.size() != u.size()) {
        add("distinct", false, "repeated parameters");
        return rep;
    }
    const long h = common_root_index(u);
    const auto ek = elementary(u, h);
    const auto KW = CycloSubfield::cyclotomic(c.kw_conductor);
    const auto K = CycloSubfield::cyclotomic(c.k_conductor);

    bool ca1 = true;
    for (const auto& a : ek) ca1 = ca1 && a.is_polynomial() && x_integral(a, h) && in_field(a, KW);
    add("CA1", ca1, ca1 ? "" : "coefficients of P not in K_W(wphi)[x]");

    std::multiset<std::string> vals, roots;
    bool norm = true;
    for (long j = 0; j < e; ++j) {
        Cyclo v = at_zeta(c, u[static_cast<std::size_t>(j)]);
        vals.insert(v.str());
        roots.insert(Cyclo::root_of_unity(e, j).str());
        norm = norm && v == Cyclo::root_of_unity(e, j);
    }
    add("CA2", vals == roots, vals == roots ? "" : "P(t, zeta) != t^e - 1");
    add("normalization", norm, norm ? "" : "u_j does not specialize to zeta_e^j");

    // Galois action v -> zeta_|ZW| v
    bool gal = true;
    std::set<std::string> uset(seen);
    for (const auto& p : u) {
        FracExpMonomial g(p.scalar * root_exp(p.exponent), p.exponent);
        gal = gal && uset.count(g.str());
        gal = gal && Rational(p.exponent * c.zw).get_den() == 1;
    }
    add("rationality", gal, gal ? "" : "parameters not permuted by the Galois action on v");

    const auto S = spec.schur();
    bool sc1 = true;
    for (const auto& s : S) {
        sc1 = sc1 && x_integral(s.p, h);
        for (const auto& co : s.p.coeffs()) sc1 = sc1 && algebraic_integer(co);
    }
    add("SC1", sc1, sc1 ? "" : "a Schur element is not in Z_K[x, x^-1]");

    std::vector<std::size_t> maxi;
    for (std::size_t i = 0; i < S.size(); ++i) {
        bool all = true;
        for (std::size_t k = 0; k < S.size() && all; ++k) {
            all = S[i].p.div_exact(S[k].p).has_value();
        }
        if (all) maxi.push_back(i);
    }
    // associates (equal up to a power of x): keep those with quotients in K[x]
    if (maxi.size() > 1) {
        std::vector<std::size_t> poly;
        for (std::size_t i : maxi) {
            bool all = true;
            for (std::size_t k = 0; k < S.size() && all; ++k) {
                auto q = S[i].p.div_exact(S[k].p);
                all = q && q->is_polynomial();
            }
            if (all) poly.push_back(i);
        }
        if (poly.size() == 1) maxi = poly;
    }
    if (maxi.size() == 1) rep.chi0 = maxi[0];
    add("SC2", maxi.size() == 1, maxi.size() == 1 ? "chi0 = " + std::to_string(maxi[0])
                                                   : std::to_string(maxi.size()) + " maximal characters");

    const LaurentPoly feg_y = c.feg.subs_power(h);
    bool sc3 = true;
    std::string bad3;
    for (std::size_t i = 0; i < S.size(); ++i)
        if (!feg_y.div_exact(S[i].p)) {
            sc3 = false;
            bad3 += (bad3.empty() ? "" : ",") + std::to_string(i);
        }
    add("SC3", sc3, sc3 ? "" : "S_j does not divide Feg(R) for j = " + bad3);

    FracExpMonomial p0(Cyclo(e % 2 == 0 ? 1 : -1), 0);
    for (const auto& p : u) p0 = p0 * p;
    auto y_of = [&](const FracExpMonomial& m) { return y_monomial(m, h); };

    if (spec.type == SupportType::noncompact) {
        bool ncs0 = true;
        for (const auto& a : ek) ncs0 = ncs0 && x_integral(a, h) && in_field(a, K);
        add("NCS0", ncs0);
        long deg0 = 0;
        bool has1 = false;
        for (const auto& p : u) {
            if (p.exponent == 0) ++deg0;
            if (p == FracExpMonomial(Cyclo(1), 0)) has1 = true;
        }
        add("NCS1", has1 && deg0 == 1, has1 ? "" : "1 is not a root");
        bool ncs2 = rep.chi0 && u[*rep.chi0] == FracExpMonomial(Cyclo(1), 0);
        add("NCS2", ncs2);
        bool ncs2p = rep.chi0 && S[*rep.chi0].p == y_of(c.zx(rat(-c.n_ref_W))) * feg_y;
        add("NCS2'", ncs2p);
        add("NCS3", p0 == c.zx(rat(c.n_ref_WI)).pow(1) * FracExpMonomial(Cyclo(-1), 0),
            "P(0,x) = " + p0.pretty());
    } else {
        const Rational mI = c.m_I();
        bool cs0 = true;
        for (std::size_t j = 1; j < ek.size(); ++j) {
            Cyclo f = c.zeta_pow(mI * static_cast<long>(j));
            LaurentPoly a = ek[j].scaled(f);
            cs0 = cs0 && x_integral(a, h) && in_field(a, K);
        }
        add("CS0", cs0);
        Rational top = u[0].exponent;
        for (const auto& p : u) top = std::max(top, p.exponent);
        long ntop = 0;
        std::optional<FracExpMonomial> toproot;
        for (const auto& p : u)
            if (p.exponent == top) {
                ++ntop;
                toproot = p;
            }
        bool cs1 = ntop == 1 && *toproot == c.zx(mI);
        add("CS1", cs1, cs1 ? "" : "highest root is not (zeta^-1 x)^" + mI.get_str());
        bool cs2 = rep.chi0 && u[*rep.chi0] == c.zx(mI);
        add("CS2", cs2);
        bool cs2p = rep.chi0 && S[*rep.chi0].p == feg_y;
        add("CS2'", cs2p);
        add("CS3", p0 == c.zx(rat(c.n_hyp_WI)) * FracExpMonomial(Cyclo(-1), 0), "P(0,x) = " + p0.pretty());
    }
    return rep;
}

// ---------------------------------------------------------------- transforms

std::size_t compactify_index(std::size_t j, long e) {
    return static_cast<std::size_t>((e - static_cast<long>(j) % e) % e);
}

namespace {

SpetsialAlgebraSpec swap_support(const SpetsialAlgebraSpec& spec) {
    SpetsialAlgebraSpec out = spec;
    const long e = static_cast<long>(spec.params.size());
    const FracExpMonomial top = spec.ctx.zx(spec.ctx.m_I());
    for (std::size_t j = 0; j < spec.params.size(); ++j)
        out.params[compactify_index(j, e)] = top * spec.params[j].pow(-1);
    out.type = spec.type == SupportType::compact ? SupportType::noncompact : SupportType::compact;
    return out;
}

}  // namespace

SpetsialAlgebraSpec compactify(const SpetsialAlgebraSpec& spec) {
    if (spec.type != SupportType::noncompact) throw std::invalid_argument("compactify expects a noncompact spec");
    return swap_support(spec);
}

SpetsialAlgebraSpec noncompactify(const SpetsialAlgebraSpec& spec) {
    if (spec.type != SupportType::compact) throw std::invalid_argument("noncompactify expects a compact spec");
    return swap_support(spec);
}

SpetsialAlgebraSpec ennola_twist(const SpetsialAlgebraSpec& spec, long n, long k) {
    SpetsialAlgebraSpec out = spec;
    const Rational q = rat(k, n);
    for (auto& p : out.params) p = FracExpMonomial(p.scalar * root_exp(-q * p.exponent), p.exponent);
    Rational r = frac_mod1(rat(spec.ctx.a, spec.ctx.d) + q);
    out.ctx.d = r.get_den().get_si();
    out.ctx.a = r.get_num().get_si();
    out.ctx.feg = spec.ctx.feg.subs_scale(root_exp(-q));
    return out;
}

// ---------------------------------------------------------------- omega, sigma, Fr

OmegaSigmaDelta omega_sigma_delta(const SpetsialAlgebraSpec& spec, std::size_t j) {
    const auto S = spec.schur();
    OmegaSigmaDelta r;
    r.sigma = S.at(j).val_plus_deg();
    const long N = spec.type == SupportType::compact ? spec.ctx.n_hyp_W : spec.ctx.n_ref_W;
    r.omega = spec.ctx.zx(r.sigma + N);
    r.delta = Rational(spec.ctx.n_ref_W) - r.sigma;
    r.mandsigma_ok = r.sigma + N == spec.params[j].exponent * static_cast<long>(spec.params.size());
    return r;
}

std::vector<std::size_t> galois_orbit(const SpetsialAlgebraSpec& spec, std::size_t j) {
    std::vector<std::size_t> orbit{j};
    std::size_t cur = j;
    for (;;) {
        const auto& p = spec.params[cur];
        FracExpMonomial g(p.scalar * root_exp(p.exponent), p.exponent);
        auto it = std::find(spec.params.begin(), spec.params.end(), g);
        if (it == spec.params.end()) throw std::invalid_argument("parameters not stable under the Galois action");
        cur = static_cast<std::size_t>(it - spec.params.begin());
        if (cur == j) break;
        orbit.push_back(cur);
    }
    return orbit;
}

FrobeniusEigenvalue frobenius(const SpetsialAlgebraSpec& spec, std::size_t j) {
    if (!spec.ctx.cyclic) throw std::invalid_argument("Frobenius eigenvalues need a cyclic centralizer");
    if (spec.type == SupportType::noncompact) {
        auto c = compactify(spec);
        auto f = frobenius(c, compactify_index(j, static_cast<long>(spec.params.size())));
        for (auto& v : f.values) v = FracExpMonomial(v.scalar.conjugate(), frac_mod1(-v.exponent));
        return f;
    }
    const auto& c = spec.ctx;
    const long e = static_cast<long>(spec.params.size());
    Rational l = rat(c.a * c.delta, c.d);  // l(rho)/l(pi)
    Rational rho_exp = l * e;               // rho = s^{e a delta / d}
    const Cyclo theta_s = at_zeta(c, spec.params[j]);
    Cyclo omega = theta_s.pow(to_long(rho_exp));
    auto osd = omega_sigma_delta(spec, j);
    Cyclo base = omega * c.zeta_pow(l * osd.delta);
    Rational xexp = frac_mod1(-osd.delta * l);
    FrobeniusEigenvalue f;
    const auto orbit = galois_orbit(spec, j);
    const long kp = xexp.get_den().get_si();
    if (orbit.size() == 1 || kp == 1) {
        f.values.push_back(FracExpMonomial(base, xexp));
        return f;
    }
    for (long i = 0; i < kp; ++i) f.values.push_back(FracExpMonomial(base * Cyclo::root_of_unity(kp, i), xexp));
    std::sort(f.values.begin(), f.values.end());
    return f;
}

std::vector<VLaurent> generic_degrees(const SpetsialAlgebraSpec& spec) {
    const auto S = spec.schur();
    std::vector<VLaurent> out;
    for (const auto& s : S) {
        auto q = spec.ctx.feg.subs_power(s.h).div_exact(s.p);
        if (!q) throw std::invalid_argument("Schur element does not divide Feg(R_wphi)");
        out.push_back(VLaurent{s.h, *q});
    }
    return out;
}

}  // namespace spets
