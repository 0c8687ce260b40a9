#ifndef WEYLKIT_ROOTSYS_HPP
#define WEYLKIT_ROOTSYS_HPP

#include "weylkit/linalg.hpp"

#include <map>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

namespace weylkit::rootsys {

using namespace weylkit;

enum class Series { A, B, C, D, E6, E7, E8, F4, G2 };

std::string series_name(Series s);
Series series_parse(const std::string& s);

// One simple factor.  Coordinates follow the conventions of the classical
// matrix realizations (eps_i on the diagonal torus); exceptional types use
// the realizations documented in data/rootdata_conventions.txt.  Factors of
// type A, G2, E6, E7, E8 live in a coordinate space whose sum-zero (or
// partially sum-zero) subspace carries the roots; vectors are canonicalized
// into that subspace.
struct SimpleFactor {
    Series series;
    int rank;
    size_t dim;         // coordinate dimension of this factor
    size_t offset;      // column offset in the ambient product space
    Mat gram;           // inner product on this factor's coordinates
    // number of leading coordinates that are forced to sum to zero
    // (A: dim, G2: 3, E6: 6, E7: 8, E8: 9, else 0)
    size_t sumzero = 0;
};

class RootDatum;
using RootDatumPtr = std::shared_ptr<const RootDatum>;

class RootDatum {
public:
    static RootDatumPtr simple(Series s, int rank);
    static RootDatumPtr product(const std::vector<RootDatumPtr>& factors);

    const std::vector<SimpleFactor>& factors() const { return factors_; }
    size_t ambient_dim() const { return dim_; }
    size_t rank() const { return simple_roots_.size(); }
    const Mat& gram() const { return gram_; }

    const std::vector<Vec>& roots() const { return roots_; }
    const std::vector<Vec>& positive_roots() const { return positive_; }
    const std::vector<Vec>& simple_roots() const { return simple_roots_; }
    const std::vector<Vec>& fundamental_weights() const { return fundamental_; }

    bool is_root(const Vec& v) const;
    int root_index(const Vec& v) const;  // -1 if not a root

    Rat inner(const Vec& x, const Vec& y) const;
    // <x, alpha^vee> = 2 (x,alpha)/(alpha,alpha)
    Rat pairing(const Vec& x, const Vec& alpha) const;
    Vec coroot(const Vec& alpha) const;  // alpha^vee inside the same space
    bool is_long(const Vec& alpha) const;    // per simple factor
    bool is_short(const Vec& alpha) const;

    Vec reflect(const Vec& alpha, const Vec& x) const;  // s_alpha(x)
    Mat reflection_matrix(const Vec& alpha) const;

    // Canonicalize a coordinate vector into the root-bearing subspace
    // (project out forced sum-zero directions).
    Vec canonicalize(const Vec& v) const;

    // Express a root in the basis of simple roots (exactly).
    Vec simple_root_coordinates(const Vec& root) const;
    // Support of a root: indices of simple roots with nonzero coefficient.
    std::vector<int> support(const Vec& root) const;

    // Sum of fundamental weights (a regular dominant element).
    Vec rho_weight() const;

    int factor_of_root(const Vec& root) const;

    std::string name() const;

    // plain text serialization (versioned, one root per line)
    std::string serialize() const;

private:
    std::vector<SimpleFactor> factors_;
    size_t dim_ = 0;
    Mat gram_;
    std::vector<Vec> roots_, positive_, simple_roots_, fundamental_;
    std::unordered_map<uint64_t, std::vector<int>> root_hash_;
    void finish();
};

// ---------------------------------------------------------------------------
// Finite reflection groups given by rational matrices.

struct ReflectionSubgroup {
    RootDatumPtr ambient;
    std::vector<Vec> delta_gamma;       // all roots alpha with s_alpha in the group
    std::vector<Mat> elements;          // the full group; identity first
    std::vector<Vec> simple_system;     // positive-on-dominant-chamber simple roots of delta_gamma

    size_t order() const { return elements.size(); }
    bool contains_reflection(const Vec& root) const;
};

// Generate the group from reflections in the given roots, recomputing the
// full reflection set from the generated group.  Budget guards the closure.
ReflectionSubgroup reflection_subgroup(const RootDatumPtr& datum,
                                       const std::vector<Vec>& generators,
                                       size_t order_budget = 1200000);

// Closure of a set of matrices (must generate a finite group).
std::vector<Mat> generate_matrix_group(const std::vector<Mat>& gens, size_t budget);

// Definition-level largeness test: for every pair of non-proportional,
// non-orthogonal roots some reflection of the group lies in their plane.
bool is_large(const ReflectionSubgroup& g);

// Exhaustive enumeration of reflection subgroups with a large test; the
// result is the set of Delta_Gamma sets of all large subgroups.  Requires
// |W(g)| within budget (1152 covers F4).
std::vector<std::vector<Vec>> enumerate_large(const RootDatumPtr& datum,
                                              size_t weyl_order_budget = 1152);

// All completely perpendicular subsets up to W-conjugacy (sizes 1..max_size).
std::vector<std::vector<Vec>> completely_perpendicular_subsets(
    const RootDatumPtr& datum, size_t max_size = 4, size_t weyl_order_budget = 1152);

bool is_completely_perpendicular(const RootDatumPtr& datum, const std::vector<Vec>& a);

struct Cone {
    Subspace space;                  // the ambient Cartan subspace a
    std::vector<Vec> inequalities;   // cone = { x in a : (x, n_i) >= 0 }
    Subspace lineality;              // { x in a : (x, n_i) = 0 for all i }
    bool simplicial = false;
};

// The Weyl chamber of gamma acting on the subspace a (gamma-stable)
// containing the projection of the antidominant chamber of the ambient
// datum.  Inequality normals are returned primitively scaled.
Cone valuation_chamber(const ReflectionSubgroup& gamma, const Subspace& a);

// Fixed subspace { v : w v = v for all w }.
Subspace fixed_subspace(const ReflectionSubgroup& gamma);
Subspace fixed_subspace_of(const RootDatumPtr& datum, const std::vector<Mat>& elements);

// Reflections contained in a matrix group, reported as root vectors.
std::vector<Vec> reflections_in(const RootDatumPtr& datum, const std::vector<Mat>& elements);

// Support shape of a positive root per Prop-style classification:
// "A1" (simple root), "A2" (sum of two adjacent simple roots of equal
// length), "B2" (short sum in a double-bond pair), or "other".
std::string support_shape(const RootDatumPtr& datum, const Vec& root);

RootDatumPtr parse_root_datum(const std::string& text);

}  // namespace weylkit::rootsys

#endif
