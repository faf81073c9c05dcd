#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "spets/laurent.hpp"
#include "spets/reflection.hpp"

namespace spets {

// Laurent polynomial in indeterminates u_0..u_{n-1}; used for generic cyclic Hecke algebras.
class MultiLaurent {
public:
    using Exponent = std::vector<long>;

    MultiLaurent() = default;
    explicit MultiLaurent(std::size_t nvars) : n_(nvars) {}
    MultiLaurent(std::size_t nvars, const Cyclo& c);
    static MultiLaurent var(std::size_t nvars, std::size_t i, long power = 1);
    static MultiLaurent from_term(std::size_t nvars, const Exponent& e, const Cyclo& c);

    std::size_t nvars() const { return n_; }
    const std::map<Exponent, Cyclo>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }

    MultiLaurent& operator+=(const MultiLaurent& o);
    MultiLaurent& operator-=(const MultiLaurent& o);
    MultiLaurent& operator*=(const MultiLaurent& o);
    friend MultiLaurent operator+(MultiLaurent a, const MultiLaurent& b) { return a += b; }
    friend MultiLaurent operator-(MultiLaurent a, const MultiLaurent& b) { return a -= b; }
    friend MultiLaurent operator*(MultiLaurent a, const MultiLaurent& b) { return a *= b; }
    bool operator==(const MultiLaurent& o) const { return n_ == o.n_ && t_ == o.t_; }

    // u_j -> 1/u_j, coefficients conjugated.
    MultiLaurent vee() const;
    Cyclo evaluate(const std::vector<Cyclo>& u) const;
    // Uses the given names for the variables (default a, b, c, ...).
    std::string str(const std::vector<std::string>& names = {}) const;

private:
    std::size_t n_ = 0;
    std::map<Exponent, Cyclo> t_;
};

// Polynomial in y with y^h = x.
struct VLaurent {
    long h = 1;
    LaurentPoly p;

    std::optional<LaurentPoly> in_x() const;
    // (valuation + degree) / h
    Rational val_plus_deg() const;
    std::string str() const;
    bool operator==(const VLaurent& o) const { return h == o.h && p == o.p; }
};

struct CyclicHeckeParams {
    std::vector<FracExpMonomial> u;
    std::size_t e() const { return u.size(); }
};

// S_i = prod_{j != i} (u_j - u_i) / u_j.
std::vector<MultiLaurent> schur_generic(long e);
std::vector<Cyclo> schur_cyclic(const std::vector<Cyclo>& u);
std::vector<VLaurent> schur_cyclic(const CyclicHeckeParams& params);
// Least common denominator of the x-exponents.
long common_root_index(const std::vector<FracExpMonomial>& u);

// tau(pi) = (-1)^{N^ref} prod u_j.
FracExpMonomial tau_pi(const CyclicHeckeParams& params, long n_ref);
MultiLaurent tau_pi_generic(long e);

// Data of the zeta-regular element wphi needed by the spetsial conditions.
struct SeriesContext {
    std::string group;         // e.g. G4
    long d = 1, a = 0;         // zeta = exp(2 pi i a / d)
    long delta = 1;
    std::size_t class_index = 0;
    bool cyclic = true;        // W(wphi) cyclic of rank 1
    long e = 1;                // |W(wphi)|
    long e_WI = 0, n_ref_WI = 0, n_hyp_WI = 0;
    long n_ref_W = 0, n_hyp_W = 0;
    long zw = 1;               // |ZW|
    long k_conductor = 1;      // field of W
    long kw_conductor = 1;     // field of W(wphi)
    LaurentPoly feg;           // Feg(R_{wphi})
    std::vector<long> centralizer_degrees;

    Cyclo zeta() const { return Cyclo::root_of_unity(d, a); }
    // zeta^q read as exp(2 pi i a q / d).
    Cyclo zeta_pow(const Rational& q) const;
    // (zeta^{-1} x)^q
    FracExpMonomial zx(const Rational& q) const;
    Rational m_I() const {
        Rational r(e_WI, e);
        r.canonicalize();
        return r;
    }
};

// Smallest a with gcd(a, d) = 1 is not assumed: the caller picks the eigenvalue.
SeriesContext series_context(const ReflectionCoset& G, long d, long a);

enum class SupportType { compact, noncompact };

struct SpetsialAlgebraSpec {
    SeriesContext ctx;
    SupportType type = SupportType::compact;
    std::vector<FracExpMonomial> params;  // u_j, j = 0..e-1

    // m_j: x-exponent of u_j.
    std::vector<Rational> m() const;
    // u_j = zeta_e^j (zeta^{-1} x)^{m_j}
    static SpetsialAlgebraSpec from_m(const SeriesContext& ctx, SupportType type, const std::vector<Rational>& m);
    CyclicHeckeParams hecke() const { return CyclicHeckeParams{params}; }
    std::vector<VLaurent> schur() const { return schur_cyclic(hecke()); }
    // H_{Z_e}(p_0, p_1, ...)
    std::string str() const;
};

// Parameter list from "H_{Z_4}(ix^3, i, ix, -i)"; returns the group label and the parameters.
std::pair<std::string, std::vector<FracExpMonomial>> parse_hecke_spec(std::string_view text);
std::string format_hecke_spec(const std::string& label, const std::vector<FracExpMonomial>& params);
// Same list up to a cyclic rotation.
bool same_up_to_rotation(const std::vector<FracExpMonomial>& a, const std::vector<FracExpMonomial>& b);
// Scale so the lowest x-power is 0, then pick the rotation: smallest coefficient field,
// then the largest m list.
std::vector<FracExpMonomial> normalize_relative_params(std::vector<FracExpMonomial> params);

struct ConditionItem {
    std::string name;
    bool ok = false;
    std::string detail;
};

struct ConditionReport {
    std::vector<ConditionItem> items;
    std::optional<std::size_t> chi0;
    bool ok() const;
    bool passed(const std::string& name) const;
    std::string str() const;
};

ConditionReport check_spetsial(const SpetsialAlgebraSpec& spec);

SpetsialAlgebraSpec compactify(const SpetsialAlgebraSpec& spec);
SpetsialAlgebraSpec noncompactify(const SpetsialAlgebraSpec& spec);
// Image of character j under (non)compactification.
std::size_t compactify_index(std::size_t j, long e);

// Ennola twist by eps = exp(2 pi i k / n), a scalar in W.
SpetsialAlgebraSpec ennola_twist(const SpetsialAlgebraSpec& spec, long n, long k);

struct OmegaSigmaDelta {
    FracExpMonomial omega;  // omega_chi(pi)
    Rational sigma;
    Rational delta;
    bool mandsigma_ok = false;
};

OmegaSigmaDelta omega_sigma_delta(const SpetsialAlgebraSpec& spec, std::size_t j);

// Set of eigenvalues (one element unless the character has a nontrivial pi-orbit).
struct FrobeniusEigenvalue {
    std::vector<FracExpMonomial> values;
    bool is_single() const { return values.size() == 1; }
    const FracExpMonomial& value() const { return values.front(); }
};

// Orbit of j under v -> zeta_{|ZW|} v.
std::vector<std::size_t> galois_orbit(const SpetsialAlgebraSpec& spec, std::size_t j);
FrobeniusEigenvalue frobenius(const SpetsialAlgebraSpec& spec, std::size_t j);

// Deg(chi_j) = Feg(R_{wphi}) / S_j in y = x^{1/h}.
std::vector<VLaurent> generic_degrees(const SpetsialAlgebraSpec& spec);

}  // namespace spets
