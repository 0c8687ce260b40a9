#ifndef WEYLKIT_CARTAN_HPP
#define WEYLKIT_CARTAN_HPP

#include "weylkit/tables.hpp"

#include <optional>
#include <string>
#include <vector>

// Cartan-space pipeline: reductive pairs through essential ideals and the
// tables, modules through the semiinvariant-stripping iteration, bundles and
// general homogeneous spaces through tame parabolics.

namespace weylkit::cartan {

using namespace weylkit;
using catalog::AlgebraPtr;
using liealg::Subalgebra;
using repkit::Embedded;
using repkit::Module;
using tables::TableStore;

struct Provenance {
    std::vector<std::string> steps;
    void add(const std::string& s) { steps.push_back(s); }
};

struct CartanSpace {
    AlgebraPtr g;
    Subspace subspace;             // a(g,h) inside the eps-space of g
    std::vector<Vec> lattice;      // generators of the weight lattice
    bool lattice_exact = false;
    Subalgebra l0;                 // l_{0,G,X} (unit component data)
    Subalgebra L;                  // L_{G,X} = z_g(a)
    std::optional<long> complexity;
    Provenance provenance;
    size_t rank() const { return subspace.dim(); }
};

// L and l0 determined by the span of a inside t*.
Subalgebra centralizer_of_span(const AlgebraPtr& g, const Subspace& a);
Subalgebra l0_of_span(const AlgebraPtr& g, const Subspace& a);
CartanSpace cartan_from_span(const AlgebraPtr& g, Subspace a, std::vector<Vec> lattice,
                             bool exact);

// the span of t* (the root span plus nothing for semisimple g)
Subspace full_t_span(const AlgebraPtr& g);

class Pipeline {
public:
    explicit Pipeline(const TableStore& store, uint64_t seed = 20240)
        : store_(store), seed_(seed) {}

    const TableStore& store() const { return store_; }
    uint64_t seed() const { return seed_; }

    // maximal ideal of reductive h that is an essential subalgebra
    // (resolved against the tables); nullopt means the zero ideal.
    struct EssResolution {
        Subalgebra ideal;
        std::vector<tables::EssentialPair> rows;  // one per component
        std::vector<size_t> factors;              // factor index per component
    };
    EssResolution h_ess(const AlgebraPtr& g, const Subalgebra& h);

    CartanSpace cartan_reductive(const AlgebraPtr& g, const Subalgebra& h);

    // Algorithm: iterated semiinvariant stripping for a module over a
    // torus-stable reductive subalgebra g0 (the acting group).
    struct ModuleRank {
        Subspace a;          // contribution to t*
        Subalgebra l0;       // inefficiency kernel of the final stage
        Provenance provenance;
    };
    ModuleRank l0_of_module(const Subalgebra& g0, const Module& v);

    struct TameData {
        Subalgebra q;        // antistandard parabolic containing the conjugated h
        Subalgebra h;        // h conjugated into q with Levi inside the standard Levi
        Subalgebra m;        // standard Levi of q
        Subalgebra s;        // Levi of h, contained in m
        std::vector<size_t> levi_simples;
        Mat conjugator;      // algebra automorphism applied to the input h
        Provenance provenance;
    };
    TameData tame_parabolic(const AlgebraPtr& g, const Subalgebra& h);

    struct BundleRewrite {
        Subalgebra s;
        Module fiber;        // module over s: (Rad_u(q)/Rad_u(h)) + V
        Provenance provenance;
    };
    BundleRewrite bundle_rewrite(const AlgebraPtr& g, const TameData& t,
                                 const std::optional<Module>& v);

    CartanSpace cartan_bundle(const AlgebraPtr& g, const Subalgebra& h,
                              const std::optional<Module>& v);
    CartanSpace cartan_homogeneous(const AlgebraPtr& g, const Subalgebra& h);

    // transport all outputs by a (B,T)-preserving automorphism
    CartanSpace twist(const Mat& tau, const CartanSpace& c);

    // probabilistic-exact complexity of G/H (codimension of a generic B-orbit)
    long complexity_homogeneous(const AlgebraPtr& g, const Subalgebra& h, int certificates = 2);

    // helper: reductive-pair Cartan space restricted to a torus-stable
    // reductive subalgebra context (a Levi), used by the recursion
    CartanSpace cartan_reductive_in(const Subalgebra& m, const Subalgebra& s);

private:
    const TableStore& store_;
    uint64_t seed_;
};

}  // namespace weylkit::cartan

#endif
