#include <random>

#include "doctest.h"
#include "spets/kcyclo.hpp"
#include "spets/laurent.hpp"

using namespace spets;

namespace {

Cyclo Z(long n, long k) { return Cyclo::root_of_unity(n, k); }
const LaurentPoly X = LaurentPoly::x();
LaurentPoly P(const char* s) { return LaurentPoly::parse(s); }

LaurentPoly random_poly(std::mt19937& rng, bool laurent) {
    std::uniform_int_distribution<int> c(-3, 3), e(0, 11), len(1, 5), lo(-3, 2);
    LaurentPoly p;
    long base = laurent ? lo(rng) : 0;
    for (int i = 0, n = len(rng); i < n; ++i)
        p += LaurentPoly::monomial(Cyclo(c(rng)) * Z(12, e(rng)), base + i);
    return p;
}

}  // namespace

TEST_CASE("vee") {
    CHECK((X - LaurentPoly(Z(3, 1))).vee() == X.pow(-1) - LaurentPoly(Z(3, 2)));
    CHECK(LaurentPoly(1).vee() == LaurentPoly(1));
    LaurentPoly p = X * (X.pow(3) - LaurentPoly(1));
    CHECK(p.vee() == X.pow(-1) * (X.pow(-3) - LaurentPoly(1)));
    std::mt19937 rng(1);
    for (int i = 0; i < 100; ++i) {
        LaurentPoly a = random_poly(rng, true), b = random_poly(rng, true);
        CHECK(a.vee().vee() == a);
        CHECK((a * b).vee() == a.vee() * b.vee());
    }
}

TEST_CASE("evaluate") {
    CHECK(P("x^3-1").evaluate(Z(3, 1)).is_zero());
    CHECK(P("1+ζ3^2x+ζ3x^2").evaluate(Z(3, 1)) == Cyclo(3));
    CHECK(P("x-1").evaluate(Cyclo(1)).is_zero());
    CHECK_THROWS_AS(P("x^-1").evaluate(Cyclo(0)), std::domain_error);
}

TEST_CASE("exact division") {
    auto q = P("x^3-1").div_exact(X - LaurentPoly(Z(3, 2)));
    REQUIRE(q);
    CHECK(*q == (X - LaurentPoly(1)) * (X - LaurentPoly(Z(3, 1))));
    LaurentPoly p = P("x^2+3x-ζ5");
    CHECK(*p.div_exact(LaurentPoly(1)) == p);
    CHECK(!P("x^2+1").div_exact(P("x-1")));
    std::mt19937 rng(2);
    for (int i = 0; i < 100; ++i) {
        LaurentPoly a = random_poly(rng, true), b = random_poly(rng, true);
        if (b.is_zero()) continue;
        auto r = (a * b).div_exact(b);
        REQUIRE(r);
        CHECK(*r == a);
    }
}

TEST_CASE("valuation and degree") {
    LaurentPoly d = *(X * (X - LaurentPoly(Z(3, 2)))).div_exact(LaurentPoly(Cyclo(1) - Z(3, 2)));
    CHECK(d.val_deg() == std::make_pair(1L, 2L));
    CHECK(LaurentPoly(5).val_deg() == std::make_pair(0L, 0L));
    CHECK(P("x^-2+x^3").val_deg() == std::make_pair(-2L, 3L));
    CHECK_THROWS(LaurentPoly().val_deg());
}

TEST_CASE("modular reduction") {
    CHECK(P("x^2+1").mod_reduce(P("x-i")).is_zero());
    CHECK(P("x^3").mod_reduce(P("x^2+x+1")) == LaurentPoly(1));
    LaurentPoly q = *P("1-x^3").div_exact(P("1-x"));
    CHECK(q.mod_reduce(X - LaurentPoly(Z(3, 1))).is_zero());
    CHECK(q.mod_reduce(P("x-1")) == LaurentPoly(3));
    LaurentPoly feg = *P("1-x^3").div_exact(P("1-ζ3^2x"));
    CHECK(feg.mod_reduce(X - LaurentPoly(Z(3, 1))) == LaurentPoly(3));
    CHECK(P("x^-1").mod_reduce(P("x^2+x+1")) == P("-x-1"));
    std::mt19937 rng(4);
    LaurentPoly phi = P("x^4+ζ3");
    for (int i = 0; i < 50; ++i) {
        LaurentPoly a = random_poly(rng, true), b = random_poly(rng, true);
        CHECK((a + b).mod_reduce(phi) == a.mod_reduce(phi) + b.mod_reduce(phi));
        CHECK((a * b).mod_reduce(phi) == (a.mod_reduce(phi) * b.mod_reduce(phi)).mod_reduce(phi));
    }
}

TEST_CASE("text round trip") {
    CHECK(LaurentPoly().str() == "0");
    CHECK(P("x^3-1").str() == "x^3-1");
    CHECK(P("-x").str() == "-x");
    CHECK(P("(1+i)x^2+2").str() == "(1+E(4,1))*x^2+2");
    CHECK(P("x^-2").str() == "x^-2");
    CHECK(P("Φ'3").str() == "x-E(3,1)");
    CHECK(P("Phi4*Phi^(5)12") == P("(x^2+1)(x^2-√3x+1)"));
    std::mt19937 rng(6);
    for (int i = 0; i < 100; ++i) {
        LaurentPoly a = random_poly(rng, true);
        CHECK(LaurentPoly::parse(a.str()) == a);
    }
}

TEST_CASE("fractional monomials") {
    FracExpMonomial m(Z(8, 3), Rational(1, 2));
    CHECK(m.str() == "E(8,3)*x^{1/2}");
    CHECK(FracExpMonomial::parse(m.str()) == m);
    CHECK(FracExpMonomial::parse("E(3,2)") == FracExpMonomial(Z(3, 2), 0));
    CHECK(FracExpMonomial::parse("-x^{1/3}") == FracExpMonomial(Cyclo(-1), Rational(1, 3)));
    CHECK(FracExpMonomial(Z(4, 1), Rational(7, 3)).mod_integral().exponent == Rational(1, 3));
    CHECK(FracExpMonomial(Z(4, 1), 3).pretty() == "ix^3");
    CHECK(FracExpMonomial(-Z(3, 1), 2).pretty() == "-ζ3x^2");
}

TEST_CASE("K-cyclotomic factors") {
    auto names = [](const std::vector<KCycloPoly>& v) {
        std::vector<std::string> r;
        for (auto& f : v) r.push_back(f.label);
        return r;
    };
    auto qi = CycloSubfield::parse("Q(i)");
    auto f4 = k_cyclotomic_factors(4, qi);
    CHECK(names(f4) == std::vector<std::string>{"Phi'4", "Phi''4"});
    CHECK(f4[0].poly == P("x-i"));
    auto f3 = k_cyclotomic_factors(3, CycloSubfield::cyclotomic(3));
    CHECK(f3[0].poly == X - LaurentPoly(Z(3, 1)));
    CHECK(f3[1].poly == X - LaurentPoly(Z(3, 2)));
    auto f12 = k_cyclotomic_factors(12, CycloSubfield::parse("Q(√3)"));
    CHECK(names(f12) == std::vector<std::string>{"Phi^(5)12", "Phi^(6)12"});
    CHECK(k_cyclotomic_factors(7, CycloSubfield::parse("Q")).size() == 1);
    for (long n : {1, 3, 4, 5, 8, 12, 15})
        for (long d = 1; d <= 42; ++d) {
            auto fs = k_cyclotomic_factors(d, CycloSubfield::cyclotomic(n));
            LaurentPoly prod(1);
            for (auto& f : fs) prod *= f.poly;
            CHECK(prod == LaurentPoly::cyclotomic(d));
        }
    CHECK(CycloSubfield::parse("Q(√5,ζ3)").degree() == 4);
    CHECK(CycloSubfield::parse("Q(√-3)") == CycloSubfield::cyclotomic(3));
}

TEST_CASE("factored display") {
    auto K = CycloSubfield::cyclotomic(3);
    LaurentPoly deg = P("(3-√-3)/6") * X * P("Φ'3*Φ4*Φ''6");
    auto f = factor_cyclotomic(deg, K);
    CHECK(f.x_power == 1);
    CHECK(f.rest == LaurentPoly(1));
    CHECK(format_factored(f, false) == "(" + ((Cyclo(3) - Cyclo::sqrt(-3)) / Cyclo(6)).str() + ")*x*Phi'3*Phi4*Phi''6");
    CHECK(LaurentPoly::parse(format_factored(f)) == deg);
}
