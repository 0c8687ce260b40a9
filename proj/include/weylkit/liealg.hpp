#ifndef WEYLKIT_LIEALG_HPP
#define WEYLKIT_LIEALG_HPP

#include "weylkit/rootsys.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace weylkit::liealg {

using namespace weylkit;
using rootsys::RootDatum;
using rootsys::RootDatumPtr;
using rootsys::Series;

struct SparseVec {
    std::vector<std::pair<size_t, Rat>> terms;
    void add(size_t i, const Rat& c);
    Vec dense(size_t dim) const;
};

// A semisimple Lie algebra over Q on a Chevalley basis.  Basis layout:
// indices 0..rank-1 are the simple coroots h_i = alpha_i^vee, index rank+k
// is the root vector e_{root k} in the order of datum->roots().
// Structure constants are produced by the extraspecial-pair recursion and
// verified (antisymmetry, Jacobi on basis triples for small ranks,
// |N_{a,b}| = p+1).
class ChevalleyAlgebra;
using AlgebraPtr = std::shared_ptr<const ChevalleyAlgebra>;

class ChevalleyAlgebra {
public:
    static AlgebraPtr build(const RootDatumPtr& datum);

    const RootDatumPtr& datum() const { return datum_; }
    size_t dim() const { return dim_; }
    size_t rank() const { return rank_; }

    size_t root_vector_index(const Vec& root) const;  // index into the basis
    const Vec& root_of_basis(size_t basis_index) const;
    bool is_root_vector(size_t basis_index) const { return basis_index >= rank_; }

    // e_alpha as a coordinate vector, and Cartan elements from t-coordinates.
    Vec root_vector(const Vec& root) const;
    // element of the Cartan with <lambda, h> = pairing for all weights:
    // coordinates of the coroot alpha^vee, or a general t-vector given in
    // the ambient eps-coordinates of the datum (identified via the form).
    Vec cartan_from_eps(const Vec& eps_vec) const;
    Vec coroot_element(const Vec& root) const;
    // evaluate a weight (eps-coordinates) on a Cartan element given in
    // algebra coordinates (must be supported on the Cartan part)
    Rat weight_eval(const Vec& weight, const Vec& cartan_elem) const;
    // eps-coordinate vector corresponding to a Cartan element
    Vec eps_of_cartan(const Vec& cartan_elem) const;

    Vec bracket(const Vec& x, const Vec& y) const;
    const SparseVec& basis_bracket(size_t i, size_t j) const;
    Mat ad_matrix(const Vec& x) const;

    // invariant form normalized with K(alpha^vee,alpha^vee)=2 for long alpha
    // per simple factor
    Rat form_K(const Vec& x, const Vec& y) const;
    Rat killing(const Vec& x, const Vec& y) const;

    // structure constant N_{a,b} with [e_a, e_b] = N e_{a+b}
    Rat structure_constant(const Vec& a, const Vec& b) const;

    bool is_nilpotent_element(const Vec& x) const;

    // exp(ad(x)) for ad-nilpotent x, as a dim x dim matrix
    Mat exp_ad(const Vec& x) const;

    // Ad-lift of the reflection s_alpha: n_alpha = exp(e_a)exp(-e_{-a})exp(e_a)
    Mat weyl_lift(const Vec& root) const;
    // Ad-lift of a Weyl group element given as a product of reflections
    // taking x to the chamber data; w expressed by its matrix on eps-space.
    Mat weyl_lift_of(const Mat& weyl_matrix) const;

    std::string serialize() const;

private:
    RootDatumPtr datum_;
    size_t rank_ = 0, dim_ = 0;
    std::vector<std::vector<SparseVec>> brk_;  // dim x dim
    std::vector<Rat> k_root_;                  // K(e_alpha, e_{-alpha}) per root index
    Mat k_cartan_;                             // K on the coroot basis
    friend struct ChevBuilder;
};

// A subspace of a ChevalleyAlgebra closed under bracket.
class Subalgebra {
public:
    Subalgebra() = default;
    Subalgebra(AlgebraPtr g, Subspace space, std::string tag = "");
    static Subalgebra span_of(AlgebraPtr g, const std::vector<Vec>& gens,
                              std::string tag = "");
    static Subalgebra zero(AlgebraPtr g);
    static Subalgebra whole(AlgebraPtr g);

    const AlgebraPtr& algebra() const { return g_; }
    const Subspace& space() const { return space_; }
    size_t dim() const { return space_.dim(); }
    const std::string& tag() const { return tag_; }
    void set_tag(const std::string& t) { tag_ = t; }

    bool is_bracket_closed() const;
    bool contains(const Vec& v) const { return space_.contains(v); }
    bool contains(const Subalgebra& other) const { return space_.contains(other.space()); }

    // t-stability and root support (for subalgebras normalized by the
    // fixed Cartan)
    bool is_torus_stable() const;
    // roots alpha with e_alpha in the subalgebra (only meaningful if t-stable)
    std::vector<Vec> root_support() const;
    Subspace cartan_part() const;  // intersection with the Cartan subalgebra

    bool operator==(const Subalgebra& o) const { return space_ == o.space_; }

private:
    AlgebraPtr g_;
    Subspace space_;
    std::string tag_;
};

// --- subalgebra calculus ----------------------------------------------------

Subalgebra normalizer(const Subalgebra& h);
Subalgebra centralizer(const Subalgebra& h);
Subalgebra center_of(const Subalgebra& h);
Subalgebra derived(const Subalgebra& h);
Subalgebra bracket_closure(const Subalgebra& h);
Subalgebra sum(const Subalgebra& a, const Subalgebra& b);
Subalgebra intersect(const Subalgebra& a, const Subalgebra& b);

// solvable radical of h (Killing-orthocomplement of [h,h] in h)
Subalgebra radical(const Subalgebra& h);
// unipotent radical of an algebraic subalgebra: the nilpotent elements of
// the solvable radical, computed by the associative trace-form criterion
Subalgebra nilradical(const Subalgebra& h);

bool is_reductive_in(const Subalgebra& h);  // nilradical == 0

struct LeviSplit {
    Subalgebra reductive;
    Subalgebra unipotent;
};
LeviSplit levi_split(const Subalgebra& h);

// Adjoint-trace-form value on a long coroot of the simple type (honest
// computation from the root datum, cached).
Rat k_constant(Series s, int rank);

// Dynkin index of a simple subalgebra of known abstract type.
Rat dynkin_index_raw(const Subalgebra& h, Series h_series, int h_rank);
long dynkin_index(const Subalgebra& h, Series h_series, int h_rank);

// index of a module given by its trace form (x,y)_U against the adjoint
// form of the simple algebra h; the module is supplied as action matrices
// aligned with a basis of h.
Rat module_index(const Subalgebra& h, const std::vector<Mat>& action_on_basis);

bool sl2_long_root_test(const Subalgebra& s, const Subalgebra& h, Series h_series, int h_rank);

// Killing form of the abstract subalgebra (trace of ad_h on h).
Rat killing_within(const Subalgebra& h, const Vec& x, const Vec& y);

// derived series dimensions, lower central series dimensions
std::vector<size_t> derived_series_dims(const Subalgebra& h);
std::vector<size_t> lower_central_dims(const Subalgebra& h);

// dimension of the centralizer of a generic element (rank for reductive h);
// deterministic given seed
size_t generic_centralizer_dim(const Subalgebra& h, uint64_t seed = 20240);

struct Fingerprint {
    size_t dim = 0;
    size_t generic_centralizer = 0;
    std::vector<size_t> derived_dims;
    size_t killing_rank = 0;
    bool operator==(const Fingerprint& o) const = default;
    std::string str() const;
};
Fingerprint fingerprint(const Subalgebra& h);

}  // namespace weylkit::liealg

#endif
