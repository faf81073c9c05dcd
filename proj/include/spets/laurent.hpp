#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "spets/cyclotomic.hpp"

namespace spets {

// Laurent polynomial in x over a cyclotomic field.
class LaurentPoly {
public:
    LaurentPoly() = default;
    LaurentPoly(long c);
    LaurentPoly(const Rational& c);
    LaurentPoly(const Cyclo& c);

    static LaurentPoly x();
    static LaurentPoly monomial(const Cyclo& c, long e);
    static LaurentPoly from_coeffs(long valuation, std::vector<Cyclo> coeffs);
    // Rational cyclotomic polynomial Phi_d.
    static LaurentPoly cyclotomic(long d);
    static LaurentPoly parse(std::string_view text);

    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.empty() || (val_ == 0 && c_.size() == 1); }
    bool is_monomial() const { return c_.size() == 1; }
    bool is_polynomial() const { return c_.empty() || val_ >= 0; }

    long valuation() const;
    long degree() const;
    std::pair<long, long> val_deg() const;
    Cyclo coeff(long e) const;
    Cyclo leading() const;
    Cyclo trailing() const;
    const std::vector<Cyclo>& coeffs() const { return c_; }
    long low() const { return val_; }
    long conductor() const;

    LaurentPoly& operator+=(const LaurentPoly& o);
    LaurentPoly& operator-=(const LaurentPoly& o);
    LaurentPoly& operator*=(const LaurentPoly& o);
    LaurentPoly operator-() const;
    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
    friend LaurentPoly operator*(LaurentPoly a, const LaurentPoly& b) { return a *= b; }
    LaurentPoly scaled(const Cyclo& c) const;
    LaurentPoly shifted(long k) const;
    LaurentPoly pow(long e) const;

    bool operator==(const LaurentPoly& o) const { return val_ == o.val_ && c_ == o.c_; }
    bool operator!=(const LaurentPoly& o) const { return !(*this == o); }
    friend bool operator<(const LaurentPoly& a, const LaurentPoly& b);

    Cyclo evaluate(const Cyclo& z) const;
    // P(z x)
    LaurentPoly subs_scale(const Cyclo& z) const;
    // P(x^k), k != 0
    LaurentPoly subs_power(long k) const;
    // P(1/x)^*
    LaurentPoly vee() const;
    LaurentPoly conjugate() const;
    LaurentPoly galois(long k) const;

    std::optional<LaurentPoly> div_exact(const LaurentPoly& q) const;
    // Remainder modulo a monic polynomial with nonzero constant term.
    LaurentPoly mod_reduce(const LaurentPoly& phi) const;
    // Polynomial long division (both arguments polynomials).
    std::pair<LaurentPoly, LaurentPoly> divmod(const LaurentPoly& q) const;

    std::string str() const;

private:
    long val_ = 0;
    std::vector<Cyclo> c_;
    void trim();
};

std::ostream& operator<<(std::ostream& os, const LaurentPoly& p);

// lambda * x^nu with nu a rational exponent.
struct FracExpMonomial {
    Cyclo scalar{1};
    Rational exponent{0};

    FracExpMonomial() = default;
    FracExpMonomial(Cyclo s, Rational e) : scalar(std::move(s)), exponent(std::move(e)) { exponent.canonicalize(); }

    // Exponent taken in [0, 1).
    FracExpMonomial mod_integral() const;
    FracExpMonomial operator*(const FracExpMonomial& o) const;
    FracExpMonomial pow(long k) const;
    bool operator==(const FracExpMonomial& o) const { return scalar == o.scalar && exponent == o.exponent; }
    bool operator!=(const FracExpMonomial& o) const { return !(*this == o); }
    friend bool operator<(const FracExpMonomial& a, const FracExpMonomial& b);
    // Canonical form `z*x^{p/q}`.
    std::string str() const;
    // Short form: ix^3, -ζ3^2x, ζ8^3x^{1/2}.
    std::string pretty() const;
    static FracExpMonomial parse(std::string_view text);
    // Integral exponent as a Laurent monomial.
    std::optional<LaurentPoly> as_laurent() const;
};

std::ostream& operator<<(std::ostream& os, const FracExpMonomial& m);

Rational frac_mod1(const Rational& q);

}  // namespace spets
