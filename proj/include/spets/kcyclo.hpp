#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "spets/cyclotomic.hpp"
#include "spets/laurent.hpp"

namespace spets {

// Abelian number field K inside Q(zeta_N), stored as N and the subgroup of
// (Z/N)^x fixing K.
class CycloSubfield {
public:
    CycloSubfield() = default;
    static CycloSubfield cyclotomic(long n);
    static CycloSubfield generated_by(const std::vector<Cyclo>& gens, std::string name = {});
    // "Q", "Q(i)", "Q(ζ3)", "Q(√5,ζ3)", or a bare conductor "12".
    static CycloSubfield parse(std::string_view text);

    long conductor() const { return n_; }
    const std::vector<long>& fixing_group() const { return h_; }
    const std::string& name() const { return name_; }
    long degree() const;
    bool contains(const Cyclo& z) const;
    bool operator==(const CycloSubfield& o) const { return n_ == o.n_ && h_ == o.h_; }

private:
    long n_ = 1;
    std::vector<long> h_{1};
    std::string name_ = "Q";
};

struct KCycloPoly {
    std::string label;
    long root_order = 1;
    LaurentPoly poly;
};

// K-irreducible factors of Phi_d.
std::vector<KCycloPoly> k_cyclotomic_factors(long d, const CycloSubfield& K);

// Polynomial carried by a label such as Phi12, Phi'3, Phi^(5)12.
std::optional<LaurentPoly> cyclotomic_label_poly(const std::string& label);

struct LabelEntry {
    std::string field;
    std::string label;
    long root_order;
    LaurentPoly poly;
};
// Shipped label list, in file order.
const std::vector<LabelEntry>& cyclotomic_labels();
// Load labels from an explicit file (replaces the cached list).
void load_cyclotomic_labels(const std::string& path);

struct Factorization {
    Cyclo unit{1};
    long x_power = 0;
    std::vector<std::pair<KCycloPoly, long>> factors;
    // Part with no K-cyclotomic factor left (1 when fully factored).
    LaurentPoly rest{1};
};

Factorization factor_cyclotomic(const LaurentPoly& p, const CycloSubfield& K);
// Text form: unit, x power, factors with exponents.
std::string format_factored(const Factorization& f, bool unicode = true);

}  // namespace spets
