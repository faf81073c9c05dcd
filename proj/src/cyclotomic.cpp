#include "spets/cyclotomic.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "expr.hpp"

namespace spets {

namespace {

std::recursive_mutex cache_mutex;

using QMatrix = std::vector<std::vector<Rational>>;

// Inverse of a square rational matrix; throws if singular.
QMatrix invert(QMatrix a) {
    const std::size_t n = a.size();
    QMatrix inv(n, std::vector<Rational>(n, 0));
    for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && a[piv][col] == 0) ++piv;
        if (piv == n) throw std::logic_error("singular rational matrix");
        std::swap(a[piv], a[col]);
        std::swap(inv[piv], inv[col]);
        Rational f = 1 / a[col][col];
        for (std::size_t j = 0; j < n; ++j) {
            a[col][j] *= f;
            inv[col][j] *= f;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || a[r][col] == 0) continue;
            Rational g = a[r][col];
            for (std::size_t j = 0; j < n; ++j) {
                a[r][j] -= g * a[col][j];
                inv[r][j] -= g * inv[col][j];
            }
        }
    }
    return inv;
}

// Reduce a coefficient vector in powers of zeta_n modulo Phi_n.
void reduce_mod_phi(std::vector<Rational>& a, long n) {
    const auto& phi = cyclotomic_coeffs(n);
    const std::size_t d = phi.size() - 1;
    for (std::size_t i = a.size(); i-- > d;) {
        if (a[i] == 0) continue;
        Rational c = a[i];
        for (std::size_t j = 0; j < d; ++j)
            if (phi[j] != 0) a[i - d + j] -= c * static_cast<long>(phi[j]);
        a[i] = 0;
    }
    a.resize(d, Rational(0));
}

std::vector<Rational> power_of_zeta(long n, long k) {
    k = ((k % n) + n) % n;
    std::vector<Rational> v(static_cast<std::size_t>(std::max<long>(k + 1, euler_phi(n))), Rational(0));
    v[static_cast<std::size_t>(k)] = 1;
    reduce_mod_phi(v, n);
    return v;
}

long mod_pow(long b, long e, long m) {
    long r = 1 % m;
    b %= m;
    while (e > 0) {
        if (e & 1) r = (r * b) % m;
        b = (b * b) % m;
        e >>= 1;
    }
    return r;
}

// Subfield Q(zeta_m) of Q(zeta_n): a generator of the kernel of restriction
// and a left inverse of the embedding on selected rows.
struct Restriction {
    long galois_gen = 1;
    std::vector<std::size_t> rows;
    QMatrix inverse;
};

const Restriction& restriction(long n, long m) {
    static std::map<std::pair<long, long>, Restriction> cache;
    std::lock_guard<std::recursive_mutex> lock(cache_mutex);
    auto it = cache.find({n, m});
    if (it != cache.end()) return it->second;
    Restriction r;
    const long kernel = euler_phi(n) / euler_phi(m);
    for (long t = 0; t < n / m; ++t) {
        long k = (1 + m * t) % n;
        if (std::gcd(k, n) != 1) continue;
        long ord = 1;
        long y = k;
        while (y != 1 % n) {
            y = (y * k) % n;
            ++ord;
        }
        if (ord == kernel) {
            r.galois_gen = k;
            break;
        }
    }
    const long pm = euler_phi(m), pn = euler_phi(n);
    QMatrix emb(static_cast<std::size_t>(pn), std::vector<Rational>(static_cast<std::size_t>(pm), 0));
    for (long j = 0; j < pm; ++j) {
        auto col = power_of_zeta(n, j * (n / m));
        for (long i = 0; i < pn; ++i) emb[i][j] = col[i];
    }
    // Greedy row selection by elimination.
    QMatrix basis;
    std::vector<std::size_t> rows;
    std::vector<std::vector<Rational>> echelon;
    std::vector<std::size_t> pivots;
    for (std::size_t i = 0; i < emb.size() && rows.size() < static_cast<std::size_t>(pm); ++i) {
        auto v = emb[i];
        for (std::size_t e = 0; e < echelon.size(); ++e) {
            if (v[pivots[e]] == 0) continue;
            Rational f = v[pivots[e]] / echelon[e][pivots[e]];
            for (std::size_t j = 0; j < v.size(); ++j) v[j] -= f * echelon[e][j];
        }
        auto nz = std::find_if(v.begin(), v.end(), [](const Rational& q) { return q != 0; });
        if (nz == v.end()) continue;
        pivots.push_back(static_cast<std::size_t>(nz - v.begin()));
        echelon.push_back(v);
        rows.push_back(i);
        basis.push_back(emb[i]);
    }
    r.rows = rows;
    r.inverse = invert(basis);
    return cache.emplace(std::make_pair(n, m), std::move(r)).first->second;
}

struct DisplayBasis {
    std::vector<long> exps;
    QMatrix to_display;
};

const DisplayBasis& display_basis(long n) {
    static std::map<long, DisplayBasis> cache;
    {
        std::lock_guard<std::recursive_mutex> lock(cache_mutex);
        auto it = cache.find(n);
        if (it != cache.end()) return it->second;
    }
    DisplayBasis b;
    b.exps = zumbroich_exponents(n);
    const long d = euler_phi(n);
    QMatrix m(static_cast<std::size_t>(d), std::vector<Rational>(static_cast<std::size_t>(d), 0));
    for (long j = 0; j < d; ++j) {
        auto col = power_of_zeta(n, b.exps[j]);
        for (long i = 0; i < d; ++i) m[i][j] = col[i];
    }
    b.to_display = invert(m);
    std::lock_guard<std::recursive_mutex> lock(cache_mutex);
    return cache.emplace(n, std::move(b)).first->second;
}

std::vector<long> zumbroich_prime_power(long p, long nu) {
    if (p == 2) {
        std::vector<long> v;
        for (long k = 0; k < (1L << (nu - 1)); ++k) v.push_back(k);
        return v;
    }
    std::vector<long> base;
    for (long k = 1; k < p; ++k) base.push_back(k);
    long q = p;
    for (long level = 2; level <= nu; ++level) {
        std::vector<long> next;
        for (long b : base)
            for (long k = -(p - 1) / 2; k <= (p - 1) / 2; ++k) next.push_back(p * b + k);
        base = std::move(next);
        q *= p;
    }
    for (auto& e : base) e = ((e % q) + q) % q;
    return base;
}

}  // namespace

long euler_phi(long n) {
    long r = n;
    for (long p : prime_divisors(n)) r = r / p * (p - 1);
    return r;
}

std::vector<long> prime_divisors(long n) {
    std::vector<long> ps;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            ps.push_back(p);
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) ps.push_back(n);
    return ps;
}

long field_conductor(long n) {
    if (n % 4 == 2) return n / 2;
    return n;
}

long lcm_conductor(long a, long b) { return field_conductor(std::lcm(a, b)); }

const std::vector<long long>& cyclotomic_coeffs(long n) {
    static std::map<long, std::vector<long long>> cache;
    {
        std::lock_guard<std::recursive_mutex> lock(cache_mutex);
        auto it = cache.find(n);
        if (it != cache.end()) return it->second;
    }
    // x^n - 1 divided by Phi_d for all proper divisors d.
    std::vector<long long> num(static_cast<std::size_t>(n + 1), 0);
    num[0] = -1;
    num[static_cast<std::size_t>(n)] = 1;
    for (long d = 1; d < n; ++d) {
        if (n % d != 0) continue;
        const auto& den = cyclotomic_coeffs(d);
        const std::size_t dd = den.size() - 1;
        std::vector<long long> q(num.size() - dd, 0);
        for (std::size_t i = num.size(); i-- > dd;) {
            long long c = num[i];
            q[i - dd] = c;
            if (c == 0) continue;
            for (std::size_t j = 0; j <= dd; ++j) num[i - dd + j] -= c * den[j];
        }
        num = std::move(q);
    }
    std::lock_guard<std::recursive_mutex> lock(cache_mutex);
    return cache.emplace(n, std::move(num)).first->second;
}

std::vector<long> zumbroich_exponents(long n) {
    if (n == 1) return {0};
    std::vector<long> exps{0};
    long m = n;
    for (long p : prime_divisors(n)) {
        long nu = 0, q = 1;
        while (m % p == 0) {
            m /= p;
            q *= p;
            ++nu;
        }
        std::vector<long> next;
        for (long e : exps)
            for (long f : zumbroich_prime_power(p, nu)) next.push_back((e + (n / q) * f) % n);
        exps = std::move(next);
    }
    std::sort(exps.begin(), exps.end());
    return exps;
}

Cyclo::Cyclo() : n_(1), c_{Rational(0)} {}
Cyclo::Cyclo(long v) : n_(1), c_{Rational(v)} {}
Cyclo::Cyclo(const Rational& q) : n_(1), c_{q} { c_[0].canonicalize(); }

Cyclo Cyclo::from_power_basis(long n, std::vector<Rational> coeffs) {
    if (n < 1) throw std::invalid_argument("conductor must be positive");
    if (n % 4 == 2) {
        Cyclo z = root_of_unity(n, 1);
        Cyclo acc;
        Cyclo pw(1);
        for (std::size_t i = 0; i < coeffs.size(); ++i) {
            if (coeffs[i] != 0) acc += Cyclo(coeffs[i]) * pw;
            pw *= z;
        }
        return acc;
    }
    Cyclo r;
    r.n_ = n;
    if (static_cast<long>(coeffs.size()) < euler_phi(n)) coeffs.resize(static_cast<std::size_t>(euler_phi(n)), 0);
    reduce_mod_phi(coeffs, n);
    r.c_ = std::move(coeffs);
    r.canonicalize();
    return r;
}

Cyclo Cyclo::root_of_unity(long n, long k) {
    if (n < 1) throw std::invalid_argument("root_of_unity: n must be positive");
    k = ((k % n) + n) % n;
    long g = std::gcd(k, n);
    if (k == 0) return Cyclo(1);
    n /= g;
    k /= g;
    if (n == 2) return Cyclo(-1);
    if (n % 4 == 2) {
        long m = n / 2;
        return -root_of_unity(m, (k + m) / 2);
    }
    Cyclo r;
    r.n_ = n;
    r.c_ = power_of_zeta(n, k);
    r.canonicalize();
    return r;
}

Cyclo Cyclo::sqrt(long d) {
    if (d == 0) return Cyclo(0);
    bool neg = d < 0;
    long a = neg ? -d : d;
    long s = 1;
    for (long p = 2; p * p <= a; ++p)
        while (a % (p * p) == 0) {
            a /= p * p;
            s *= p;
        }
    Cyclo r(s);
    for (long p : prime_divisors(a)) {
        if (p == 2) {
            r *= root_of_unity(8, 1) - root_of_unity(8, 3);
            continue;
        }
        Cyclo g;
        for (long t = 1; t < p; ++t) {
            long leg = mod_pow(t, (p - 1) / 2, p) == 1 ? 1 : -1;
            g += Cyclo(leg) * root_of_unity(p, t);
        }
        if (p % 4 == 3) g *= root_of_unity(4, 3);
        r *= g;
    }
    if (neg) r *= root_of_unity(4, 1);
    return r;
}

void Cyclo::canonicalize() {
    for (auto& q : c_) q.canonicalize();
    bool rational = true;
    for (std::size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0) {
            rational = false;
            break;
        }
    if (rational) {
        Rational q = c_.empty() ? Rational(0) : c_[0];
        n_ = 1;
        c_.assign(1, q);
        return;
    }
    bool changed = true;
    while (changed && n_ > 1) {
        changed = false;
        for (long p : prime_divisors(n_)) {
            long m;
            if (p == 2) m = (n_ % 8 == 0) ? n_ / 2 : n_ / 4;
            else m = n_ / p;
            const Restriction& r = restriction(n_, m);
            if (galois(r.galois_gen) != *this) continue;
            std::vector<Rational> y(r.rows.size(), Rational(0));
            for (std::size_t i = 0; i < y.size(); ++i)
                for (std::size_t j = 0; j < r.rows.size(); ++j) y[i] += r.inverse[i][j] * c_[r.rows[j]];
            n_ = m;
            c_ = std::move(y);
            if (n_ == 1) return;
            changed = true;
            break;
        }
    }
}

bool Cyclo::is_zero() const { return n_ == 1 && c_[0] == 0; }
bool Cyclo::is_one() const { return n_ == 1 && c_[0] == 1; }

std::optional<Rational> Cyclo::as_rational() const {
    if (n_ == 1) return c_[0];
    return std::nullopt;
}

bool Cyclo::is_real() const { return conjugate() == *this; }

Cyclo Cyclo::galois(long k) const {
    if (n_ == 1) return *this;
    k = ((k % n_) + n_) % n_;
    if (std::gcd(k, n_) != 1) throw std::invalid_argument("galois: exponent not coprime to conductor");
    std::vector<Rational> v(static_cast<std::size_t>(n_), Rational(0));
    for (std::size_t i = 0; i < c_.size(); ++i)
        if (c_[i] != 0) v[static_cast<std::size_t>((static_cast<long>(i) * k) % n_)] += c_[i];
    reduce_mod_phi(v, n_);
    Cyclo r;
    r.n_ = n_;
    r.c_ = std::move(v);
    return r;  // a Galois conjugate has the same conductor
}

Cyclo Cyclo::conjugate() const { return galois(-1); }

std::vector<Rational> Cyclo::embed(long N) const {
    if (N % n_ != 0) throw std::invalid_argument("embed: target conductor not a multiple");
    if (N == n_) return c_;
    const long step = N / n_;
    std::vector<Rational> v(static_cast<std::size_t>(std::max<long>((static_cast<long>(c_.size()) - 1) * step + 1, euler_phi(N))),
                            Rational(0));
    for (std::size_t i = 0; i < c_.size(); ++i) v[static_cast<std::size_t>(static_cast<long>(i) * step)] = c_[i];
    reduce_mod_phi(v, N);
    return v;
}

Cyclo& Cyclo::operator+=(const Cyclo& o) {
    if (o.n_ == 1 && n_ == 1) {
        c_[0] += o.c_[0];
        return *this;
    }
    if (o.n_ == n_) {
        for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
        canonicalize();
        return *this;
    }
    long N = lcm_conductor(n_, o.n_);
    auto a = embed(N);
    auto b = o.embed(N);
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    n_ = N;
    c_ = std::move(a);
    canonicalize();
    return *this;
}

Cyclo& Cyclo::operator-=(const Cyclo& o) { return *this += -o; }

Cyclo Cyclo::operator-() const {
    Cyclo r = *this;
    for (auto& q : r.c_) q = -q;
    return r;
}

Cyclo& Cyclo::operator*=(const Cyclo& o) {
    if (o.n_ == 1) {
        if (o.c_[0] == 0) return *this = Cyclo(0);
        for (auto& q : c_) q *= o.c_[0];
        return *this;
    }
    if (n_ == 1) {
        Rational s = c_[0];
        *this = o;
        if (s == 0) return *this = Cyclo(0);
        for (auto& q : c_) q *= s;
        return *this;
    }
    long N = lcm_conductor(n_, o.n_);
    auto a = embed(N);
    auto b = o.embed(N);
    std::vector<Rational> prod(a.size() + b.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            if (b[j] != 0) prod[i + j] += a[i] * b[j];
    }
    reduce_mod_phi(prod, N);
    n_ = N;
    c_ = std::move(prod);
    canonicalize();
    return *this;
}

Cyclo Cyclo::inverse() const {
    if (is_zero()) throw std::domain_error("division by zero in cyclotomic field");
    if (n_ == 1) return Cyclo(Rational(1) / c_[0]);
    const std::size_t d = c_.size();
    QMatrix m(d, std::vector<Rational>(d, 0));
    for (std::size_t j = 0; j < d; ++j) {
        std::vector<Rational> col(2 * d, Rational(0));
        for (std::size_t i = 0; i < d; ++i) col[i + j] = c_[i];
        reduce_mod_phi(col, n_);
        for (std::size_t i = 0; i < d; ++i) m[i][j] = col[i];
    }
    QMatrix inv = invert(m);
    std::vector<Rational> y(d);
    for (std::size_t i = 0; i < d; ++i) y[i] = inv[i][0];
    Cyclo r;
    r.n_ = n_;
    r.c_ = std::move(y);
    r.canonicalize();
    return r;
}

Cyclo& Cyclo::operator/=(const Cyclo& o) { return *this *= o.inverse(); }

Cyclo Cyclo::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    Cyclo r(1), b = *this;
    while (e > 0) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

bool operator<(const Cyclo& a, const Cyclo& b) {
    if (a.n_ != b.n_) return a.n_ < b.n_;
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        int c = cmp(a.c_[i], b.c_[i]);
        if (c != 0) return c < 0;
    }
    return false;
}

std::vector<std::pair<long, Rational>> Cyclo::zumbroich_terms() const {
    std::vector<std::pair<long, Rational>> out;
    if (n_ == 1) {
        if (c_[0] != 0) out.emplace_back(0, c_[0]);
        return out;
    }
    const DisplayBasis& b = display_basis(n_);
    for (std::size_t i = 0; i < b.exps.size(); ++i) {
        Rational s = 0;
        for (std::size_t j = 0; j < c_.size(); ++j)
            if (c_[j] != 0) s += b.to_display[i][j] * c_[j];
        if (s != 0) out.emplace_back(b.exps[i], s);
    }
    return out;
}

std::string Cyclo::str() const {
    if (n_ == 1) return c_[0].get_str();
    std::string out;
    for (const auto& [k, c] : zumbroich_terms()) {
        std::string t;
        if (k == 0) t = c.get_str();
        else {
            std::string e = "E(" + std::to_string(n_) + "," + std::to_string(k) + ")";
            if (c == 1) t = e;
            else if (c == -1) t = "-" + e;
            else t = c.get_str() + "*" + e;
        }
        if (!out.empty() && t[0] != '-') out += "+";
        out += t;
    }
    return out;
}

std::optional<std::pair<long, long>> Cyclo::root_of_unity_exponent() const {
    if (n_ == 1) {
        if (c_[0] == 1) return std::make_pair(1L, 0L);
        if (c_[0] == -1) return std::make_pair(2L, 1L);
        return std::nullopt;
    }
    // Roots of unity in Q(zeta_n) have order dividing M.
    const long M = (n_ % 2 == 1) ? 2 * n_ : n_;
    auto z = to_complex();
    if (std::abs(std::abs(z) - 1.0) > 1e-9) return std::nullopt;
    double ang = std::arg(z) / (2 * M_PI) * static_cast<double>(M);
    long k = static_cast<long>(std::llround(ang));
    k = ((k % M) + M) % M;
    if (root_of_unity(M, k) != *this) return std::nullopt;
    long g = std::gcd(k, M);
    return std::make_pair(M / g, k / g);
}

std::optional<std::string> Cyclo::root_str() const {
    auto e = root_of_unity_exponent();
    if (!e) return std::nullopt;
    auto [m, k] = *e;
    auto zeta = [](long mm, long kk) {
        std::string s = "ζ" + std::to_string(mm);
        if (kk != 1) s += "^" + std::to_string(kk);
        return s;
    };
    if (m == 1) return std::string("1");
    if (m == 2) return std::string("-1");
    if (m == 4) return std::string(k == 1 ? "i" : "-i");
    if (m % 2 == 1) return zeta(m, k);
    if (m % 4 == 2) {
        long h = m / 2;
        return "-" + zeta(h, ((k + h) / 2) % h);
    }
    return zeta(m, k);
}

std::complex<double> Cyclo::to_complex() const {
    std::complex<double> s = 0;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        double ang = 2 * M_PI * static_cast<double>(i) / static_cast<double>(n_);
        s += c_[i].get_d() * std::complex<double>(std::cos(ang), std::sin(ang));
    }
    return s;
}

std::size_t Cyclo::hash() const {
    std::size_t h = std::hash<long>()(n_);
    for (const auto& q : c_) h = h * 1000003u ^ std::hash<std::string>()(q.get_str());
    return h;
}

std::ostream& operator<<(std::ostream& os, const Cyclo& z) { return os << z.str(); }

Cyclo Cyclo::parse(std::string_view text) {
    detail::ExprHooks<Cyclo> hooks;
    hooks.constant = [](const Cyclo& c) { return c; };
    hooks.divide = [](const Cyclo& a, const Cyclo& b) { return a / b; };
    hooks.power = [](const Cyclo& a, long e) { return a.pow(e); };
    detail::ExprParser<Cyclo> p(detail::normalize_notation(text), hooks);
    return p.parse_all();
}

namespace detail {

std::string normalize_notation(std::string_view in) {
    static const std::pair<const char*, const char*> words[] = {
        {"\\zeta", "Z"}, {"zeta", "Z"}, {"\\sqrt", "S"}, {"sqrt", "S"}, {"\\Phi", "P"}, {"Phi", "P"},
        {"\xE2\x88\x92", "-"}, {"\xC2\xB7", "*"}, {"\xC3\x97", "*"}, {"\xCE\xB6", "Z"}, {"\xE2\x88\x9A", "S"},
        {"\xCE\xA6", "P"}, {"\xE2\x80\xB2", "'"}, {"\xE2\x80\xB3", "''"}, {"\xE2\x80\xB4", "'''"},
    };
    static const char* sup[] = {"\xE2\x81\xB0", "\xC2\xB9", "\xC2\xB2", "\xC2\xB3", "\xE2\x81\xB4",
                                "\xE2\x81\xB5", "\xE2\x81\xB6", "\xE2\x81\xB7", "\xE2\x81\xB8", "\xE2\x81\xB9"};
    static const char* sup_minus = "\xE2\x81\xBB";
    auto match_sup = [&](std::size_t p) -> std::pair<int, std::size_t> {
        for (int d = 0; d < 10; ++d) {
            std::string_view s(sup[d]);
            if (in.substr(p, s.size()) == s) return {d, s.size()};
        }
        std::string_view m(sup_minus);
        if (in.substr(p, m.size()) == m) return {-1, m.size()};
        return {-2, 0};
    };
    std::string out;
    std::size_t p = 0;
    while (p < in.size()) {
        auto [d, len] = match_sup(p);
        if (len > 0) {
            out += "^{";
            while (len > 0) {
                out += d == -1 ? '-' : static_cast<char>('0' + d);
                p += len;
                std::tie(d, len) = match_sup(p);
            }
            out += "}";
            continue;
        }
        // subscript digits
        if (in.substr(p, 2) == "\xE2\x82" && p + 2 < in.size()) {
            unsigned char c = static_cast<unsigned char>(in[p + 2]);
            if (c >= 0x80 && c <= 0x89) {
                out += static_cast<char>('0' + (c - 0x80));
                p += 3;
                continue;
            }
        }
        bool done = false;
        for (const auto& [w, r] : words) {
            std::string_view sw(w);
            if (in.substr(p, sw.size()) == sw) {
                out += r;
                p += sw.size();
                done = true;
                break;
            }
        }
        if (!done) out += in[p++];
    }
    return out;
}

}  // namespace detail

}  // namespace spets
