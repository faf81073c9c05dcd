#pragma once

#include <string>
#include <vector>

#include "spets/laurent.hpp"
#include "spets/reflection.hpp"

namespace spets {

// Values indexed by the classes of a coset.
using ClassFunction = std::vector<Cyclo>;

struct OrderPolynomials {
    LaurentPoly poincare;
    LaurentPoly order_nc;
    LaurentPoly order_c;
};

OrderPolynomials order_polys(const ReflectionCoset& G);

// Feg(R_{wphi}) = P^* / det(1 - wphi x)^*.
LaurentPoly fake_degree_torus(const ReflectionCoset& G, std::size_t class_index);
LaurentPoly fake_degree(const ReflectionCoset& G, const ClassFunction& f);
std::vector<LaurentPoly> fake_degrees(const ReflectionCoset& G);

ClassFunction det_function(const ReflectionCoset& G, bool dual);

struct DetValues {
    Cyclo det_prime;
    Cyclo det_prime_vee;
    Cyclo delta;
};
DetValues det_character_values(const ReflectionCoset& G);

Cyclo scalar_product(const ReflectionCoset& G, const ClassFunction& a, const ClassFunction& b);
ClassFunction torus_class_function(const ReflectionCoset& G, std::size_t class_index);

// Index of the parent class of every class of the subcoset L (same ambient space, W_L inside W).
std::vector<std::size_t> parent_classes(const ReflectionCoset& G, const ReflectionCoset& L);
ClassFunction restrict_to(const ReflectionCoset& G, const ReflectionCoset& L, const ClassFunction& alpha);
ClassFunction induce_from(const ReflectionCoset& G, const ReflectionCoset& L, const ClassFunction& beta);

struct CongruenceReport {
    LaurentPoly phi;
    long a = 0;
    std::size_t relative_order = 0;
    LaurentPoly remainder_c;
    LaurentPoly remainder_nc;
    bool ok() const { return remainder_c == LaurentPoly(1) && remainder_nc == LaurentPoly(1); }
};

CongruenceReport sylow_congruence_check(const ReflectionCoset& G, const LaurentPoly& phi);

// All K-cyclotomic factors of P over the field of G (K = Q(zeta_n), n the field conductor).
std::vector<LaurentPoly> cyclotomic_divisors(const ReflectionCoset& G);

}  // namespace spets
