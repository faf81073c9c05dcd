#pragma once

#include <cstddef>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "spets/cyclotomic.hpp"
#include "spets/laurent.hpp"

namespace spets {

// Square matrix over cyclotomic numbers.
class CMatrix {
public:
    CMatrix() = default;
    explicit CMatrix(std::size_t n) : n_(n), a_(n * n) {}
    CMatrix(std::size_t n, std::vector<Cyclo> entries);
    static CMatrix identity(std::size_t n);
    static CMatrix scalar(std::size_t n, const Cyclo& c);
    static CMatrix diagonal(const std::vector<Cyclo>& d);

    std::size_t dim() const { return n_; }
    Cyclo& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
    const Cyclo& operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

    CMatrix operator*(const CMatrix& o) const;
    CMatrix operator+(const CMatrix& o) const;
    CMatrix operator-(const CMatrix& o) const;
    CMatrix scaled(const Cyclo& c) const;
    bool operator==(const CMatrix& o) const { return n_ == o.n_ && a_ == o.a_; }
    bool operator!=(const CMatrix& o) const { return !(*this == o); }

    bool is_identity() const;
    std::optional<Cyclo> as_scalar() const;
    Cyclo trace() const;
    Cyclo det() const;
    CMatrix inverse() const;
    CMatrix pow(long e) const;
    // det(1 - M x)
    LaurentPoly det_one_minus_x() const;
    // Characteristic polynomial det(x - M).
    LaurentPoly charpoly() const;
    std::size_t rank() const;
    // Basis of the kernel (column vectors).
    std::vector<std::vector<Cyclo>> kernel() const;
    // P(M)
    CMatrix evaluate(const LaurentPoly& p) const;
    std::size_t hash() const;
    long conductor() const;

private:
    std::size_t n_ = 0;
    std::vector<Cyclo> a_;
};

using Vec = std::vector<Cyclo>;

struct ConjClass {
    std::size_t rep = 0;
    std::vector<std::size_t> members;
    std::string word;
    // Eigenvalue exponents k/m of the representative (as reduced fractions in [0,1)).
    std::vector<Rational> eigen_exponents;
    std::size_t size() const { return members.size(); }
};

struct HyperplaneOrbit {
    std::size_t size = 0;
    long e_H = 0;
    // Linear form cutting out a representative hyperplane.
    Vec form;
};

struct HyperplaneData {
    Vec form;
    // Reflections (element indices) with this hyperplane.
    std::vector<std::size_t> reflections;
    std::size_t orbit = 0;
};

struct DegreeData {
    std::vector<std::pair<long, Cyclo>> degrees;
};

struct CharacterTable {
    std::vector<std::string> names;
    // values[chi][class]
    std::vector<std::vector<Cyclo>> values;
    std::string provenance;
    std::size_t size() const { return names.size(); }
    std::optional<std::size_t> index_of(const std::string& name) const;
};

class ReflectionCoset;

struct RegularElementData {
    std::size_t class_index = 0;
    Cyclo zeta;
    long order = 1;
    long eigenspace_dim = 0;
    // A regular eigenvector exists (checked against every hyperplane).
    bool has_regular_vector = false;
};

struct CentralizerData;
struct SylowData;

class ReflectionCoset {
public:
    // Z_e / Z3 / G4 / G(de,e,r) / G3,1,2 / G_{3,1,2}
    static std::shared_ptr<const ReflectionCoset> builtin(std::string_view name);
    static std::shared_ptr<const ReflectionCoset> from_generators(std::string name, std::vector<CMatrix> gens,
                                                                  std::optional<CMatrix> twist = std::nullopt,
                                                                  std::size_t order_bound = 100000);
    // Coset built from an explicit subgroup element list (closed under product).
    static std::shared_ptr<const ReflectionCoset> from_elements(std::string name, std::vector<CMatrix> elements,
                                                                std::optional<CMatrix> twist = std::nullopt);

    const std::string& name() const { return name_; }
    std::size_t rank() const { return rank_; }
    std::size_t order() const { return elems_.size(); }
    const std::vector<CMatrix>& elements() const { return elems_; }
    const std::vector<CMatrix>& generators() const { return gens_; }
    const CMatrix& twist() const { return phi_; }
    bool is_split() const { return phi_.is_identity(); }
    // Matrix of the coset element w*phi for element index w.
    CMatrix coset_element(std::size_t w) const { return elems_[w] * phi_; }
    std::optional<std::size_t> index_of(const CMatrix& m) const;
    std::size_t identity_index() const { return 0; }
    std::size_t multiply(std::size_t a, std::size_t b) const;
    std::size_t inverse(std::size_t a) const;
    long element_order(std::size_t a) const;
    std::string word(std::size_t a) const;
    std::size_t from_word(std::string_view word) const;
    long field_conductor() const;

    const std::vector<ConjClass>& classes() const;
    std::size_t class_of(std::size_t element) const;
    bool is_abelian() const;
    std::vector<std::size_t> center() const;

    const std::vector<HyperplaneData>& hyperplanes() const;
    const std::vector<HyperplaneOrbit>& hyperplane_orbits() const;
    std::vector<std::size_t> reflections() const;
    long n_ref() const;
    long n_hyp() const;
    long e_W() const { return n_ref() + n_hyp(); }

    // Molien-series inverse; the twisted form when the coset is not split.
    const LaurentPoly& poincare() const;
    const DegreeData& degrees() const;

    const CharacterTable& character_table() const;
    void set_character_table(CharacterTable t) const;

    long eigenspace_dim(std::size_t element, const Cyclo& zeta) const;
    std::vector<RegularElementData> regular_classes(const Cyclo& zeta) const;
    std::vector<std::size_t> centralizer(std::size_t element) const;
    // Pointwise fixator of the span of the given vectors.
    std::vector<std::size_t> fixator(const std::vector<Vec>& vectors) const;

    // Generic description used by the CLI and the tests.
    std::string summary() const;

private:
    std::string name_;
    std::size_t rank_ = 0;
    std::vector<CMatrix> gens_;
    CMatrix phi_;
    std::vector<CMatrix> elems_;
    std::vector<std::vector<int>> words_;
    std::unordered_map<std::size_t, std::vector<std::size_t>> lookup_;

    mutable std::recursive_mutex mu_;
    mutable std::optional<std::vector<ConjClass>> classes_;
    mutable std::vector<std::size_t> class_of_;
    mutable std::optional<std::vector<HyperplaneData>> hyperplanes_;
    mutable std::optional<std::vector<HyperplaneOrbit>> orbits_;
    mutable std::optional<LaurentPoly> poincare_;
    mutable std::optional<DegreeData> degrees_;
    mutable std::optional<CharacterTable> chartable_;
    mutable std::vector<std::size_t> inverse_;

    void index_elements();
    void compute_classes() const;
    void compute_hyperplanes() const;
};

using CosetPtr = std::shared_ptr<const ReflectionCoset>;

// W(w) = C_W(w) acting on the zeta-eigenspace of w.
struct CentralizerOrbit {
    long e_I = 0;
    std::size_t size = 0;
    // Fixator W_I in the parent and its invariants.
    long e_WI = 0;
    long n_ref_WI = 0;
    long n_hyp_WI = 0;
    std::vector<std::size_t> fixator;
};

struct CentralizerData {
    CosetPtr group;
    std::size_t element = 0;
    Cyclo zeta;
    // Columns spanning V(w).
    std::vector<Vec> basis;
    // Parent element index for each element of group.
    std::vector<std::size_t> parent_index;
    std::vector<CentralizerOrbit> orbits;
};

CentralizerData centralizer_coset(const ReflectionCoset& G, std::size_t element, const Cyclo& zeta);

struct SylowData {
    std::size_t element = 0;
    long a = 0;
    LaurentPoly phi;
    std::vector<Vec> torus_basis;
    // Order of the torus S as a polynomial.
    LaurentPoly torus_order;
    CosetPtr levi;  // (V, W_L w)
    std::vector<std::size_t> levi_group;
    std::size_t relative_order = 0;  // |N_W(L)/W_L|
};

SylowData sylow_subcoset(const ReflectionCoset& G, const LaurentPoly& phi);

// Character table file I/O.
CharacterTable parse_character_table(const ReflectionCoset& G, std::string_view text);
std::string emit_character_table(const ReflectionCoset& G, const CharacterTable& t);
// Exact row and column orthogonality; returns an error description on failure.
std::optional<std::string> check_orthogonality(const ReflectionCoset& G, const CharacterTable& t);
CharacterTable compute_abelian_character_table(const ReflectionCoset& G);

// Name of the shipped character-table file for a builtin group name.
std::string chartable_file_stem(const std::string& group_name);

std::string pretty_root(const Cyclo& z);

}  // namespace spets
