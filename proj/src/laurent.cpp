#include "spets/laurent.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

#include "expr.hpp"
#include "spets/kcyclo.hpp"

namespace spets {

LaurentPoly::LaurentPoly(long c) : LaurentPoly(Cyclo(c)) {}
LaurentPoly::LaurentPoly(const Rational& c) : LaurentPoly(Cyclo(c)) {}
LaurentPoly::LaurentPoly(const Cyclo& c) {
    if (!c.is_zero()) c_.push_back(c);
}

LaurentPoly LaurentPoly::x() { return monomial(Cyclo(1), 1); }

LaurentPoly LaurentPoly::monomial(const Cyclo& c, long e) {
    LaurentPoly p;
    if (!c.is_zero()) {
        p.val_ = e;
        p.c_.push_back(c);
    }
    return p;
}

LaurentPoly LaurentPoly::from_coeffs(long valuation, std::vector<Cyclo> coeffs) {
    LaurentPoly p;
    p.val_ = valuation;
    p.c_ = std::move(coeffs);
    p.trim();
    return p;
}

LaurentPoly LaurentPoly::cyclotomic(long d) {
    const auto& cs = cyclotomic_coeffs(d);
    std::vector<Cyclo> v;
    v.reserve(cs.size());
    for (long long c : cs) v.emplace_back(static_cast<long>(c));
    return from_coeffs(0, std::move(v));
}

void LaurentPoly::trim() {
    std::size_t b = 0;
    while (b < c_.size() && c_[b].is_zero()) ++b;
    if (b == c_.size()) {
        c_.clear();
        val_ = 0;
        return;
    }
    std::size_t e = c_.size();
    while (c_[e - 1].is_zero()) --e;
    if (b > 0 || e < c_.size()) c_ = std::vector<Cyclo>(c_.begin() + static_cast<long>(b), c_.begin() + static_cast<long>(e));
    val_ += static_cast<long>(b);
}

long LaurentPoly::valuation() const {
    if (is_zero()) throw std::domain_error("valuation of the zero polynomial");
    return val_;
}

long LaurentPoly::degree() const {
    if (is_zero()) throw std::domain_error("degree of the zero polynomial");
    return val_ + static_cast<long>(c_.size()) - 1;
}

std::pair<long, long> LaurentPoly::val_deg() const { return {valuation(), degree()}; }

Cyclo LaurentPoly::coeff(long e) const {
    if (is_zero() || e < val_ || e > degree()) return Cyclo(0);
    return c_[static_cast<std::size_t>(e - val_)];
}

Cyclo LaurentPoly::leading() const { return is_zero() ? Cyclo(0) : c_.back(); }
Cyclo LaurentPoly::trailing() const { return is_zero() ? Cyclo(0) : c_.front(); }

long LaurentPoly::conductor() const {
    long n = 1;
    for (const auto& c : c_) n = lcm_conductor(n, c.conductor());
    return n;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
    if (o.is_zero()) return *this;
    if (is_zero()) return *this = o;
    long lo = std::min(val_, o.val_);
    long hi = std::max(degree(), o.degree());
    std::vector<Cyclo> r(static_cast<std::size_t>(hi - lo + 1));
    for (std::size_t i = 0; i < c_.size(); ++i) r[static_cast<std::size_t>(val_ - lo) + i] = c_[i];
    for (std::size_t i = 0; i < o.c_.size(); ++i) r[static_cast<std::size_t>(o.val_ - lo) + i] += o.c_[i];
    val_ = lo;
    c_ = std::move(r);
    trim();
    return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) { return *this += -o; }

LaurentPoly LaurentPoly::operator-() const {
    LaurentPoly r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
}

LaurentPoly& LaurentPoly::operator*=(const LaurentPoly& o) {
    if (is_zero() || o.is_zero()) return *this = LaurentPoly();
    std::vector<Cyclo> r(c_.size() + o.c_.size() - 1);
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].is_zero()) continue;
        for (std::size_t j = 0; j < o.c_.size(); ++j)
            if (!o.c_[j].is_zero()) r[i + j] += c_[i] * o.c_[j];
    }
    val_ += o.val_;
    c_ = std::move(r);
    trim();
    return *this;
}

LaurentPoly LaurentPoly::scaled(const Cyclo& c) const {
    if (c.is_zero()) return LaurentPoly();
    LaurentPoly r = *this;
    for (auto& a : r.c_) a *= c;
    return r;
}

LaurentPoly LaurentPoly::shifted(long k) const {
    LaurentPoly r = *this;
    if (!r.is_zero()) r.val_ += k;
    return r;
}

LaurentPoly LaurentPoly::pow(long e) const {
    if (e < 0) {
        if (!is_monomial()) throw std::domain_error("negative power of a non-monomial");
        return monomial(c_[0].pow(e), val_ * e);
    }
    LaurentPoly r(1), b = *this;
    while (e > 0) {
        if (e & 1) r *= b;
        e >>= 1;
        if (e) b *= b;
    }
    return r;
}

bool operator<(const LaurentPoly& a, const LaurentPoly& b) {
    if (a.val_ != b.val_) return a.val_ < b.val_;
    if (a.c_.size() != b.c_.size()) return a.c_.size() < b.c_.size();
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i] < b.c_[i]) return true;
        if (b.c_[i] < a.c_[i]) return false;
    }
    return false;
}

Cyclo LaurentPoly::evaluate(const Cyclo& z) const {
    if (is_zero()) return Cyclo(0);
    if (z.is_zero()) {
        if (val_ < 0) throw std::domain_error("evaluate: zero substituted into a negative power");
        return val_ == 0 ? c_[0] : Cyclo(0);
    }
    Cyclo acc;
    for (std::size_t i = c_.size(); i-- > 0;) {
        acc *= z;
        acc += c_[i];
    }
    return acc * z.pow(val_);
}

LaurentPoly LaurentPoly::subs_scale(const Cyclo& z) const {
    if (is_zero()) return *this;
    std::vector<Cyclo> r(c_.size());
    Cyclo p = z.pow(val_);
    for (std::size_t i = 0; i < c_.size(); ++i) {
        r[i] = c_[i] * p;
        p *= z;
    }
    return from_coeffs(val_, std::move(r));
}

LaurentPoly LaurentPoly::subs_power(long k) const {
    if (k == 0) throw std::invalid_argument("subs_power: k must be nonzero");
    LaurentPoly r;
    for (std::size_t i = 0; i < c_.size(); ++i)
        if (!c_[i].is_zero()) r += monomial(c_[i], (val_ + static_cast<long>(i)) * k);
    return r;
}

LaurentPoly LaurentPoly::conjugate() const {
    LaurentPoly r = *this;
    for (auto& c : r.c_) c = c.conjugate();
    return r;
}

LaurentPoly LaurentPoly::galois(long k) const {
    LaurentPoly r = *this;
    for (auto& c : r.c_) c = c.galois(k);
    return r;
}

LaurentPoly LaurentPoly::vee() const {
    if (is_zero()) return *this;
    std::vector<Cyclo> r(c_.rbegin(), c_.rend());
    for (auto& c : r) c = c.conjugate();
    return from_coeffs(-degree(), std::move(r));
}

std::pair<LaurentPoly, LaurentPoly> LaurentPoly::divmod(const LaurentPoly& q) const {
    if (q.is_zero()) throw std::domain_error("division by the zero polynomial");
    if (!is_polynomial() || !q.is_polynomial()) throw std::domain_error("divmod needs polynomials");
    if (is_zero()) return {LaurentPoly(), LaurentPoly()};
    std::vector<Cyclo> r(static_cast<std::size_t>(degree() + 1));
    for (std::size_t i = 0; i < c_.size(); ++i) r[static_cast<std::size_t>(val_) + i] = c_[i];
    const long dq = q.degree();
    std::vector<Cyclo> qq(static_cast<std::size_t>(dq + 1));
    for (std::size_t i = 0; i < q.c_.size(); ++i) qq[static_cast<std::size_t>(q.val_) + i] = q.c_[i];
    const Cyclo inv = qq.back().inverse();
    const long dr = degree();
    if (dr < dq) return {LaurentPoly(), *this};
    std::vector<Cyclo> quo(static_cast<std::size_t>(dr - dq + 1));
    for (long i = dr; i >= dq; --i) {
        Cyclo c = r[static_cast<std::size_t>(i)];
        if (c.is_zero()) continue;
        c *= inv;
        quo[static_cast<std::size_t>(i - dq)] = c;
        for (long j = 0; j <= dq; ++j)
            if (!qq[static_cast<std::size_t>(j)].is_zero()) r[static_cast<std::size_t>(i - dq + j)] -= c * qq[static_cast<std::size_t>(j)];
    }
    r.resize(static_cast<std::size_t>(dq));
    return {from_coeffs(0, std::move(quo)), from_coeffs(0, std::move(r))};
}

std::optional<LaurentPoly> LaurentPoly::div_exact(const LaurentPoly& q) const {
    if (q.is_zero()) throw std::domain_error("division by the zero polynomial");
    if (is_zero()) return LaurentPoly();
    LaurentPoly a = shifted(-val_), b = q.shifted(-q.val_);
    auto [quo, rem] = a.divmod(b);
    if (!rem.is_zero()) return std::nullopt;
    return quo.shifted(val_ - q.val_);
}

LaurentPoly LaurentPoly::mod_reduce(const LaurentPoly& phi) const {
    if (!phi.is_polynomial() || phi.is_zero() || phi.degree() < 1 || !phi.leading().is_one() || phi.coeff(0).is_zero())
        throw std::invalid_argument("mod_reduce: modulus must be monic with nonzero constant term");
    if (is_zero()) return *this;
    LaurentPoly p = shifted(-val_);
    LaurentPoly r = p.divmod(phi).second;
    long v = val_;
    if (v == 0) return r;
    // x^{-1} = -(phi - phi(0))/(x phi(0)) modulo phi
    LaurentPoly xinv = (phi - LaurentPoly(phi.coeff(0))).shifted(-1).scaled(-phi.coeff(0).inverse());
    LaurentPoly step = v > 0 ? x() : xinv;
    long n = v > 0 ? v : -v;
    LaurentPoly acc(1);
    while (n > 0) {
        if (n & 1) acc = (acc * step).divmod(phi).second;
        n >>= 1;
        if (n) step = (step * step).divmod(phi).second;
    }
    return (r * acc).divmod(phi).second;
}

namespace {

bool compound(const Cyclo& c) { return c.zumbroich_terms().size() > 1; }

}  // namespace

std::string LaurentPoly::str() const {
    if (is_zero()) return "0";
    std::string out;
    const bool single = c_.size() == 1 || std::count_if(c_.begin(), c_.end(), [](const Cyclo& c) { return !c.is_zero(); }) == 1;
    for (long e = degree(); e >= val_; --e) {
        const Cyclo& c = c_[static_cast<std::size_t>(e - val_)];
        if (c.is_zero()) continue;
        std::string t;
        std::string cs = c.str();
        if (e == 0) {
            t = (compound(c) && !single) ? "(" + cs + ")" : cs;
        } else {
            std::string mono = e == 1 ? "x" : "x^" + std::to_string(e);
            if (c.is_one()) t = mono;
            else if (c == Cyclo(-1)) t = "-" + mono;
            else if (compound(c)) t = "(" + cs + ")*" + mono;
            else t = cs + "*" + mono;
        }
        if (!out.empty() && t[0] != '-') out += "+";
        out += t;
    }
    return out;
}

std::ostream& operator<<(std::ostream& os, const LaurentPoly& p) { return os << p.str(); }

LaurentPoly LaurentPoly::parse(std::string_view text) {
    detail::ExprHooks<LaurentPoly> hooks;
    hooks.constant = [](const Cyclo& c) { return LaurentPoly(c); };
    hooks.symbol = [](const std::string& name) -> std::optional<LaurentPoly> {
        if (name == "x") return LaurentPoly::x();
        return cyclotomic_label_poly(name);
    };
    hooks.divide = [](const LaurentPoly& a, const LaurentPoly& b) {
        auto q = a.div_exact(b);
        if (!q) throw std::invalid_argument("non-exact polynomial division in '" + a.str() + " / " + b.str() + "'");
        return *q;
    };
    hooks.power = [](const LaurentPoly& a, long e) { return a.pow(e); };
    detail::ExprParser<LaurentPoly> p(detail::normalize_notation(text), hooks);
    return p.parse_all();
}

Rational frac_mod1(const Rational& q) {
    mpz_class f;
    mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    Rational r = q - Rational(f);
    r.canonicalize();
    return r;
}

FracExpMonomial FracExpMonomial::mod_integral() const { return FracExpMonomial(scalar, frac_mod1(exponent)); }

FracExpMonomial FracExpMonomial::operator*(const FracExpMonomial& o) const {
    return FracExpMonomial(scalar * o.scalar, exponent + o.exponent);
}

FracExpMonomial FracExpMonomial::pow(long k) const { return FracExpMonomial(scalar.pow(k), exponent * k); }

bool operator<(const FracExpMonomial& a, const FracExpMonomial& b) {
    if (a.exponent != b.exponent) return a.exponent < b.exponent;
    return a.scalar < b.scalar;
}

std::string FracExpMonomial::str() const {
    if (exponent == 0) return scalar.str();
    std::string e = "x^{" + exponent.get_str() + "}";
    if (scalar.is_one()) return e;
    if (scalar == Cyclo(-1)) return "-" + e;
    if (compound(scalar)) return "(" + scalar.str() + ")*" + e;
    return scalar.str() + "*" + e;
}

std::string FracExpMonomial::pretty() const {
    std::string s;
    auto r = scalar.root_str();
    std::string xs;
    if (exponent != 0) {
        if (exponent == 1) xs = "x";
        else if (exponent.get_den() == 1) xs = "x^" + exponent.get_str();
        else xs = "x^{" + exponent.get_str() + "}";
    }
    if (r) {
        if (xs.empty()) return *r;
        if (*r == "1") return xs;
        if (*r == "-1") return "-" + xs;
        return *r + xs;
    }
    std::string cs = compound(scalar) ? "(" + scalar.str() + ")" : scalar.str();
    return xs.empty() ? cs : cs + "*" + xs;
}

FracExpMonomial FracExpMonomial::parse(std::string_view text) {
    std::string s = detail::normalize_notation(text);
    while (!s.empty() && s.back() == ' ') s.pop_back();
    while (!s.empty() && s.front() == ' ') s.erase(s.begin());
    Rational e = 0;
    std::size_t xp = s.rfind('x');
    std::string pre = s;
    if (xp != std::string::npos) {
        std::string post = s.substr(xp + 1);
        pre = s.substr(0, xp);
        if (post.empty()) e = 1;
        else {
            if (post[0] != '^') throw detail::ParseError("bad exponent in '" + s + "'", xp);
            std::string ex = post.substr(1);
            if (!ex.empty() && (ex.front() == '{' || ex.front() == '(')) ex = ex.substr(1, ex.size() - 2);
            e = Rational(ex);
            e.canonicalize();
        }
        while (!pre.empty() && (pre.back() == '*' || pre.back() == ' ')) pre.pop_back();
    }
    Cyclo z(1);
    if (pre == "-") z = Cyclo(-1);
    else if (pre == "+" || pre.empty()) z = Cyclo(1);
    else z = Cyclo::parse(pre);
    return FracExpMonomial(z, e);
}

std::optional<LaurentPoly> FracExpMonomial::as_laurent() const {
    if (exponent.get_den() != 1) return std::nullopt;
    return LaurentPoly::monomial(scalar, exponent.get_num().get_si());
}

std::ostream& operator<<(std::ostream& os, const FracExpMonomial& m) { return os << m.str(); }

}  // namespace spets
