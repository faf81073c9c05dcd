#include <random>

#include "doctest.h"
#include "spets/cyclotomic.hpp"

using namespace spets;

namespace {

Cyclo Z(long n, long k) { return Cyclo::root_of_unity(n, k); }

Cyclo random_cyclo(std::mt19937& rng) {
    static const long conds[] = {1, 3, 4, 5, 7, 8, 9, 12, 15, 20, 24};
    std::uniform_int_distribution<int> pick(0, 10), coef(-4, 4), den(1, 3), nterms(1, 4);
    long n = conds[pick(rng)];
    Cyclo z;
    for (int t = nterms(rng); t > 0; --t) z += Cyclo(Rational(coef(rng), den(rng))) * Z(n, coef(rng) + 5);
    return z;
}

}  // namespace

TEST_CASE("roots of unity") {
    CHECK(Z(1, 0).is_one());
    CHECK(Z(3, 1) + Z(3, 2) == Cyclo(-1));
    Cyclo s = Z(3, 1) - Z(3, 2);
    CHECK(s * s == Cyclo(-3));
    CHECK(s == Cyclo::sqrt(-3));
    CHECK(Z(6, 2) == Z(3, 1));
    CHECK(Z(6, 2).conductor() == 3);
    CHECK(Z(12, 5).pow(12).is_one());
    for (long n = 1; n <= 30; ++n)
        for (long k = 0; k < n; ++k) {
            auto e = Z(n, k).root_of_unity_exponent();
            REQUIRE(e);
            long g = std::gcd(k, n);
            CHECK(e->first == n / g);
        }
}

TEST_CASE("conjugation") {
    CHECK(Z(3, 1).conjugate() == Z(3, 2));
    CHECK(Cyclo::sqrt(-3).conjugate() == -Cyclo::sqrt(-3));
    CHECK(Cyclo(Rational(5, 7)).conjugate() == Cyclo(Rational(5, 7)));
    std::mt19937 rng(7);
    for (int i = 0; i < 200; ++i) {
        Cyclo a = random_cyclo(rng), b = random_cyclo(rng);
        CHECK(a.conjugate().conjugate() == a);
        CHECK((a * b).conjugate() == a.conjugate() * b.conjugate());
        CHECK((a + a.conjugate()).is_real());
    }
}

TEST_CASE("field arithmetic") {
    CHECK((Cyclo(1) - Z(3, 1)) * (Cyclo(1) - Z(3, 2)) == Cyclo(3));
    CHECK(Z(4, 1) * Z(4, 1) == Cyclo(-1));
    CHECK(Cyclo(1) / (Cyclo(1) - Z(3, 2)) == (Cyclo(1) - Z(3, 1)) / Cyclo(3));
    CHECK_THROWS_AS(Cyclo(1) / Cyclo(0), std::domain_error);
    std::mt19937 rng(11);
    for (int i = 0; i < 200; ++i) {
        Cyclo a = random_cyclo(rng);
        if (a.is_zero()) continue;
        CHECK(a * a.inverse() == Cyclo(1));
    }
}

TEST_CASE("rationality") {
    CHECK(*(Z(3, 1) + Z(3, 2) + Cyclo(1)).as_rational() == 0);
    CHECK(!Z(3, 1).as_rational());
    auto r = ((Z(5, 1) + Z(5, 4)) * (Z(5, 2) + Z(5, 3))).as_rational();
    REQUIRE(r);
    CHECK(*r == -1);
    CHECK(Cyclo::sqrt(5).is_real());
    CHECK(!Cyclo::sqrt(5).is_rational());
    CHECK(Cyclo::sqrt(8) == Cyclo(2) * Cyclo::sqrt(2));
    for (long d : {-7, -3, -2, -1, 2, 3, 5, 6, 12})
        CHECK(Cyclo::sqrt(d) * Cyclo::sqrt(d) == Cyclo(d));
}

TEST_CASE("embedding round trip") {
    std::mt19937 rng(3);
    for (int i = 0; i < 100; ++i) {
        Cyclo a = random_cyclo(rng);
        long N = a.conductor() * 6;
        Cyclo b = Cyclo::from_power_basis(N, a.embed(N));
        CHECK(a == b);
        CHECK(b.conductor() == a.conductor());
    }
}

TEST_CASE("canonical text") {
    CHECK(Cyclo(0).str() == "0");
    CHECK(Cyclo(Rational(-3, 4)).str() == "-3/4");
    CHECK(Z(3, 1).str() == "E(3,1)");
    CHECK(Z(6, 1).str() == "-E(3,2)");
    CHECK((Cyclo(1) / (Cyclo(1) - Z(3, 2))).str() == "-2/3*E(3,1)-1/3*E(3,2)");
    CHECK(Cyclo::sqrt(-3).str() == "E(3,1)-E(3,2)");
    CHECK(Cyclo::parse("(3-√-3)/6") == (Cyclo(3) - Cyclo::sqrt(-3)) / Cyclo(6));
    CHECK(Cyclo::parse("-ζ3^4") == -Z(3, 1));
    CHECK(Cyclo::parse("E(12,7)") == Z(12, 7));
    CHECK(*Z(3, 2).root_str() == "ζ3^2");
    CHECK(*Z(4, 3).root_str() == "-i");
    std::mt19937 rng(5);
    for (int i = 0; i < 200; ++i) {
        Cyclo a = random_cyclo(rng);
        CHECK(Cyclo::parse(a.str()) == a);
    }
}

TEST_CASE("zumbroich basis sizes") {
    for (long n = 1; n <= 60; ++n) {
        if (n % 4 == 2) continue;
        CHECK(static_cast<long>(zumbroich_exponents(n).size()) == euler_phi(n));
    }
}
