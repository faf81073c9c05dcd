#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "spets/hecke.hpp"
#include "spets/laurent.hpp"
#include "spets/reflection.hpp"

namespace spets {

enum class Marker { none, special, cospecial };

struct UnipotentCharacter {
    std::string name;
    LaurentPoly degree;
    // Unknown for characters first met through an Ennola transform of a non-cyclic series.
    std::optional<FracExpMonomial> fr;
    int family = 0;  // 1-based, 0 when unassigned
    Marker marker = Marker::none;
    // Harish-Chandra label: cuspidal datum and relative character.
    // Principal series: cuspidal "Id" and the character theta of W.
    std::string hc_cuspidal;
    std::string hc_relative;
    bool sign_resolved = true;
    // Opaque symbol text carried by some reference tables.
    std::string symbol;

    long a() const { return degree.valuation(); }
    long A() const { return degree.degree(); }
    long delta() const { return a() + A(); }
    bool principal() const { return hc_cuspidal == "Id"; }
};

struct SeriesLine {
    std::string label;  // eigenvalue, e.g. ζ4
    std::string spec;   // H_{Z_4}(ix^3, i, ix, -i)
};

struct UchTable {
    std::string group;
    long conductor = 1;
    LaurentPoly order;  // |G|_c
    std::vector<SeriesLine> series;
    std::vector<SeriesLine> hc;  // relative algebras of 1-cuspidal pairs
    std::vector<UnipotentCharacter> rows;

    int family_count() const;
    std::vector<std::size_t> family(int f) const;
    std::optional<std::size_t> find(const std::string& name) const;
    // Rows with nonzero degree at z.
    std::vector<std::size_t> series_at(const Cyclo& z) const;
};

struct Family {
    int id = 0;
    std::vector<std::size_t> members;
    long a = 0, A = 0;
    std::optional<std::size_t> special, cospecial;
};

// Id and rho_{i,k}, 0 <= k < i < e.
UchTable cyclic_uch(long e);
std::string cyclic_name(long i, long k);

// One character per chi with degree Feg(R_wphi)/S_chi (sign +), Fr from the algebra.
// Names are attached by the caller.
std::vector<UnipotentCharacter> principal_series(const SpetsialAlgebraSpec& spec);

struct SchurEntry {
    std::string theta;
    LaurentPoly schur;
    int block = 0;
};
// Principal 1-series from Schur elements: Deg = Feg(R_1)/S_theta, Fr = 1.
std::vector<UnipotentCharacter> principal_series(const ReflectionCoset& G, const std::vector<SchurEntry>& schur);

struct EnnolaMatch {
    std::size_t source = 0;
    std::optional<std::size_t> target;
    int sign = 1;       // Deg(target) = sign * image
    LaurentPoly image;  // Deg(source)(z^{-1} x)
};
// Signed matching of x -> z^{-1} x images against the table.
std::vector<EnnolaMatch> ennola_transform(const UchTable& table, const Cyclo& z);

// Family partition from principal-series blocks (lists of theta names) and the
// Ennola tie-break over the given central elements. Sets family ids and markers.
std::vector<Family> families(UchTable& table, const ReflectionCoset& G, const std::vector<std::vector<std::string>>& blocks,
                             const std::vector<Cyclo>& centre = {});
// Blocks read off an already partitioned table (principal rows only).
std::vector<std::vector<std::string>> principal_blocks(const UchTable& table);
// Blocks of the cyclic generic algebra: (a, A)-classes of its principal series.
std::vector<std::vector<std::string>> cyclic_blocks(const UchTable& table);
void set_markers(UchTable& table, const ReflectionCoset& G);

// Tag rows whose degree equals that of a principal-series character.
void tag_principal(UchTable& table, const std::vector<UnipotentCharacter>& principal);

// Eigenvalues (d, a), zeta = exp(2 pi i a/d), with a regular eigenvector, by increasing d.
std::vector<std::pair<long, long>> regular_eigenvalues(const ReflectionCoset& G);

struct AxiomItem {
    std::string check;
    bool ok = true;
    std::string where;
    std::string detail;
};

struct AxiomReport {
    std::vector<AxiomItem> items;
    bool ok() const;
    std::size_t failures() const;
    std::vector<AxiomItem> failed() const;
    std::string str() const;
};

struct VerifyOptions {
    // Skip the exact grid evaluation of the family identity.
    bool family_identity = true;
};

AxiomReport verify_axioms(const UchTable& table, const ReflectionCoset& G, const VerifyOptions& opt = {});

// Sum over families of the family identity: both sides as exact two-variable identities.
bool global_family_identity(const UchTable& table, const ReflectionCoset& G);

// Exact check of sum_i A_i(x) B_i(y) = sum_j C_j(x) D_j(y) on a full grid of integer points.
bool bilinear_identity(const std::vector<std::pair<LaurentPoly, LaurentPoly>>& lhs,
                       const std::vector<std::pair<LaurentPoly, LaurentPoly>>& rhs);

struct CuspidalDatum {
    std::string label;
    LaurentPoly deg_lambda;
    LaurentPoly order_G;  // |G|_{x'}
    LaurentPoly order_L;  // |L|_{x'}
    long relative_order = 1;
    std::vector<long> relative_degrees;
};

// Levi subcoset (V, W_L) with its relative group N_W(W_L)/W_L; the relative group
// must act on a line (so it is cyclic).
CuspidalDatum cuspidal_datum(const ReflectionCoset& G, const std::vector<std::size_t>& levi_elements,
                             const LaurentPoly& deg_lambda, std::string label);

struct HCCandidate {
    std::size_t row = 0;
    long chi1 = 0;
    LaurentPoly schur;
};

std::vector<HCCandidate> hc_candidate_filter(const CuspidalDatum& datum, const UchTable& table);
// Degree identity Deg(lambda) |G|_{x'}/|L|_{x'} = sum Deg(rho_chi) chi(1) on a proposed tuple.
bool hc_tuple_ok(const CuspidalDatum& datum, const UchTable& table, const std::vector<HCCandidate>& tuple);

struct SearchFunnel {
    std::size_t arrangements = 0;
    std::size_t after_fr = 0;
    std::size_t after_rationality = 0;
    std::size_t survivors = 0;
};

struct SlotMatch {
    std::optional<std::size_t> row;  // known row matched to the slot
    int sign = 1;                    // Deg(row) = sign * Feg/S_j
};

struct DeterminedSeries {
    SpetsialAlgebraSpec spec;
    std::vector<LaurentPoly> degrees;  // Feg/S_j
    std::vector<std::optional<FracExpMonomial>> fr;
    std::vector<SlotMatch> slots;
    std::vector<Rational> m_multiset;
    SearchFunnel funnel;
    std::vector<std::string> survivors;
};

class SearchError : public std::runtime_error {
public:
    SearchError(const std::string& what, std::size_t survivors) : std::runtime_error(what), survivors_(survivors) {}
    std::size_t survivors() const { return survivors_; }

private:
    std::size_t survivors_;
};

// Parameters of the zeta-spetsial algebra for zeta = exp(2 pi i a/d), from a partial table
// with families and principal tags. Throws SearchError unless exactly one assignment survives.
DeterminedSeries determine_parameters(const ReflectionCoset& G, long d, long a, const UchTable& known);

// m-multiset of step 1 (byfam counts over the families of the known table).
std::vector<Rational> parameter_multiset(const ReflectionCoset& G, const SeriesContext& ctx, const UchTable& known);

struct PipelineOptions {
    // Eigenvalues (d, a) for the second stage, in order, all of them processed; empty
    // picks the non-central regular eigenvalues by decreasing order and stops once the
    // table is complete.
    std::vector<std::pair<long, long>> zetas;
};

struct PipelineResult {
    UchTable table;
    std::vector<std::pair<std::string, SpetsialAlgebraSpec>> specs;
    std::vector<std::string> log;
    bool complete = false;  // sum of the family identity over all families holds
};

// Principal 1-series with Harish-Chandra tags: from the generic algebra for cyclic
// groups, from the shipped Schur elements otherwise.
std::vector<UnipotentCharacter> principal_characters(const ReflectionCoset& G);

PipelineResult run_pipeline(const std::string& group, const PipelineOptions& opt = {});

}  // namespace spets
