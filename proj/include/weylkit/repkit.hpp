#ifndef WEYLKIT_REPKIT_HPP
#define WEYLKIT_REPKIT_HPP

#include "weylkit/liealg.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace weylkit::repkit {

using namespace weylkit;
using liealg::AlgebraPtr;
using liealg::ChevalleyAlgebra;
using liealg::Subalgebra;
using rootsys::RootDatum;
using rootsys::RootDatumPtr;
using rootsys::Series;

// --- weight combinatorics ---------------------------------------------------

using WeightTable = std::map<Vec, long>;  // weight (eps coords) -> multiplicity

// Freudenthal multiplicities of the irreducible of highest weight lambda.
WeightTable weight_system(const RootDatumPtr& datum, const Vec& lambda);
Rat weyl_dimension(const RootDatumPtr& datum, const Vec& lambda);
long module_dimension(const WeightTable& w);
bool is_dominant(const RootDatumPtr& datum, const Vec& lambda);
std::vector<Vec> weyl_orbit(const RootDatumPtr& datum, const Vec& v,
                            size_t budget = 4000000);
Vec dominant_representative(const RootDatumPtr& datum, const Vec& v);
Vec dual_highest_weight(const RootDatumPtr& datum, const Vec& lambda);

// --- an abstract copy of a reductive subalgebra -----------------------------

// A reductive subalgebra h of g equipped with an exact isomorphism from an
// abstract Chevalley algebra.  iota columns are the images of the abstract
// basis in g-coordinates.  Requires a Cartan of h acting rationally
// diagonalizably (e.g. h stable under a subtorus of the fixed Cartan, or
// Cartan = h cap t).
struct Embedded {
    AlgebraPtr inner;      // abstract Chevalley algebra of h
    AlgebraPtr outer;      // the ambient algebra
    Mat iota;              // outer->dim() x inner->dim()
    Subalgebra image;      // the image subalgebra in g

    Vec embed(const Vec& x_inner) const { return mat_apply(iota, x_inner); }
    std::optional<Vec> pull_back(const Vec& x_outer) const;
};

// Whole algebra as an Embedded (identity embedding).
Embedded embed_whole(const AlgebraPtr& g);

// Extract an abstract Chevalley structure from a reductive bracket-closed
// subalgebra, using the given Cartan subalgebra of h (defaults to h cap t,
// which must be a Cartan of h).  Throws if weights are not rational or the
// structure does not close.
Embedded embed_abstract(const AlgebraPtr& g, const Subalgebra& h);
Embedded embed_abstract(const AlgebraPtr& g, const Subalgebra& h, const Subspace& cartan_of_h);

// --- modules -----------------------------------------------------------------

// A finite-dimensional module over a subalgebra h of g: action matrices are
// aligned with the canonical RREF basis of h.  When available, wts carries
// one ambient eps-weight per module coordinate: every Cartan element c of g
// lying in h acts on coordinate j by the exact scalar (wts[j], eps(c)).
struct Module {
    AlgebraPtr g;
    Subalgebra h;
    size_t vdim = 0;
    std::vector<Mat> act;
    std::vector<Vec> wts;  // optional; empty when unknown
    std::string tag;

    Mat act_of(const Vec& x_gcoords) const;
    bool check_bracket_compatible() const;  // act([x,y]) == [act x, act y]
    bool has_weights() const { return wts.size() == vdim && vdim > 0; }
};

// split a subspace of a weighted module into weight-pure components and
// return a weight-adapted basis (basis vectors supported on single weights)
std::vector<std::pair<Vec, Vec>> weight_adapted_basis(const Module& m, const Subspace& s);

Module trivial_module(const AlgebraPtr& g, const Subalgebra& h, size_t n);
Module direct_sum(const Module& a, const Module& b);
Module dual_module(const Module& m);
Module tensor(const Module& a, const Module& b);
Module exterior_square(const Module& m);
Module exterior_power(const Module& m, size_t k);
Module restrict_module(const Module& m, const Subalgebra& smaller);
Module submodule(const Module& m, const Subspace& inv);
Module quotient_module(const Module& m, const Subspace& sub);
Module adjoint_module(const AlgebraPtr& g);
// g/h as an h-module
Module quotient_rep(const AlgebraPtr& g, const Subalgebra& h);

// invariants V^h
Subspace invariants(const Module& m);
// span h.v of a vector
Subspace orbit_span(const Module& m, const Vec& v);

// Weight-orbit model: the irreducible with all weights in a single Weyl
// orbit of multiplicity one and all root pairings in {0,+-1} (covers
// classical minuscule modules and B-spinors).  Signs fixed by an F2 solve
// and verified against the structure constants.
Module weight_orbit_module(const Embedded& e, const Vec& lambda_inner_eps);

// Highest-weight module over an embedded reductive algebra, dispatching to
// tautological/exterior/orbit constructions; throws if no model available
// or the dimension exceeds the budget.
Module hw_module_model(const Embedded& e, const Vec& lambda_inner_eps, size_t dim_budget = 512);

// weights of a module under the Cartan of an embedded context (context must
// be torus-adapted enough that action of Cartan elements is diagonalizable;
// used for branching bookkeeping)
WeightTable module_weights(const Module& m, const Embedded& e);

// decompose into irreducibles over an embedded reductive subalgebra:
// returns highest weights (in e.inner eps coordinates) with multiplicity
std::map<Vec, long> branch_to_embedded(const Module& m, const Embedded& e);

// --- generic stabilizers and strata ------------------------------------------

struct GenericStabilizer {
    Subalgebra algebra;
    Vec witness;      // the sampled point
    int certificates; // number of agreeing independent samples
};

GenericStabilizer generic_stabilizer(const Module& m, uint64_t seed = 20240,
                                     int retries = 6);

struct Stratum {
    Subalgebra s;          // reductive subalgebra
    Module v;              // module over s (normal form: V / V^s)
    std::string name;      // e.g. "S^s"
};

enum class Verdict { Yes, No, Undecided };
std::string verdict_str(Verdict v);

// Does the stratum S^s (s ~ sl2, module 2 C^2) occur in the h-module u?
// Implements: Lemma-style trace necessary condition, fixed-space dimension
// inequality, and a recursive sufficient search via stable submodules.
Verdict occurs_as_stratum_sl2(const Subalgebra& s, Series h_series, int h_rank,
                              const Subalgebra& h, const Module& u, uint64_t seed = 20240);

// Trace identity check: (x,x)_U = (x,x)_h - 4 normalized on the coroot of s.
bool stratum_trace_identity(const Subalgebra& s, const Subalgebra& h, const Module& u);

}  // namespace weylkit::repkit

#endif
