#pragma once

#include <gmpxx.h>

#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace spets {

using Rational = mpq_class;

/*
 * Element of the cyclotomic field Q(zeta_n).
 *
 * The value is stored on the power basis 1, z, ..., z^(phi(n)-1) of Q(zeta_n)
 * modulo the n-th cyclotomic polynomial, where n is always the smallest
 * conductor containing the value (never 2 mod 4; n = 1 for rationals).
 * Two elements are equal iff their stored data are equal.
 */
class Cyclo {
public:
    Cyclo();
    Cyclo(long v);
    Cyclo(const Rational& q);

    static Cyclo root_of_unity(long n, long k);
    static Cyclo sqrt(long d);
    static Cyclo parse(std::string_view text);
    static Cyclo from_power_basis(long n, std::vector<Rational> coeffs);

    long conductor() const { return n_; }
    bool is_zero() const;
    bool is_one() const;
    bool is_rational() const { return n_ == 1; }
    std::optional<Rational> as_rational() const;
    bool is_real() const;

    Cyclo conjugate() const;
    Cyclo galois(long k) const;
    Cyclo inverse() const;
    Cyclo pow(long e) const;

    Cyclo& operator+=(const Cyclo& o);
    Cyclo& operator-=(const Cyclo& o);
    Cyclo& operator*=(const Cyclo& o);
    Cyclo& operator/=(const Cyclo& o);
    Cyclo operator-() const;

    friend Cyclo operator+(Cyclo a, const Cyclo& b) { return a += b; }
    friend Cyclo operator-(Cyclo a, const Cyclo& b) { return a -= b; }
    friend Cyclo operator*(Cyclo a, const Cyclo& b) { return a *= b; }
    friend Cyclo operator/(Cyclo a, const Cyclo& b) { return a /= b; }

    bool operator==(const Cyclo& o) const { return n_ == o.n_ && c_ == o.c_; }
    bool operator!=(const Cyclo& o) const { return !(*this == o); }
    // Arbitrary but fixed total order, used for canonical sorting.
    friend bool operator<(const Cyclo& a, const Cyclo& b);

    // Canonical text: terms c*E(n,k) on the Zumbroich basis, increasing k.
    std::string str() const;
    // Short notation for roots of unity (1, -1, i, -i, ζ3^2, -ζ5 ...).
    std::optional<std::string> root_str() const;

    std::complex<double> to_complex() const;

    // (m, k) with value zeta_m^k, m the multiplicative order and 0 <= k < m.
    std::optional<std::pair<long, long>> root_of_unity_exponent() const;

    // Power-basis coefficients in Q(zeta_N); N must be a multiple of the conductor.
    std::vector<Rational> embed(long N) const;
    std::vector<std::pair<long, Rational>> zumbroich_terms() const;
    const std::vector<Rational>& coefficients() const { return c_; }

    std::size_t hash() const;

private:
    long n_ = 1;
    std::vector<Rational> c_;

    void canonicalize();
};

std::ostream& operator<<(std::ostream& os, const Cyclo& z);

long euler_phi(long n);
std::vector<long> prime_divisors(long n);
long field_conductor(long n);
long lcm_conductor(long a, long b);
// Integer coefficients of the rational cyclotomic polynomial Phi_n, low degree first.
const std::vector<long long>& cyclotomic_coeffs(long n);
std::vector<long> zumbroich_exponents(long n);

}  // namespace spets
