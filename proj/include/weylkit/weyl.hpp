#ifndef WEYLKIT_WEYL_HPP
#define WEYLKIT_WEYL_HPP

#include "weylkit/disting.hpp"

#include <optional>
#include <string>
#include <vector>

// Weyl-group pipeline: W-essential resolution for bundles, rank and product
// reductions, and the type-specific full-rank homogeneous computations.

namespace weylkit::weyl {

using namespace weylkit;
using cartan::CartanSpace;
using cartan::Pipeline;
using catalog::AlgebraPtr;
using liealg::Subalgebra;
using repkit::Module;
using rootsys::Cone;
using rootsys::ReflectionSubgroup;
using tables::TableStore;

enum class Decided { Yes, Undecided };

struct WeylResult {
    CartanSpace cartan;
    // the group on the Cartan space: full matrices on the ambient eps space
    // stabilizing cartan.subspace, generated by reflections
    std::vector<Mat> generators;
    std::vector<Vec> generator_roots;  // reflection vectors (when known)
    std::vector<Vec> delta_gamma;      // all reflection vectors of the group
    size_t order = 1;
    Cone valuation_cone;
    std::vector<Vec> pi_hat;           // positive roots along the facets
    std::vector<std::string> provenance;
    Decided decided = Decided::Yes;
    std::vector<std::string> candidates;  // populated when undecided
};

class Weyl {
public:
    Weyl(Pipeline& pipe, disting::Disting& dst) : pipe_(pipe), dst_(dst) {}

    // the unique table-4 sub-triple of an admissible triple, or none
    struct EssentialMatch {
        int row = 0;
        tables::Bindings bind;
        std::string variant;
        std::vector<Vec> generators;
        Subalgebra ideal;
    };
    std::optional<EssentialMatch> w_essential_part(const AlgebraPtr& g, const Subalgebra& h,
                                                   const std::optional<Module>& v);

    // reduce a table-4 triple to its generic-isotropy form; checked against
    // the table-5 data
    struct Reduced {
        Subalgebra h0;
        size_t v0_dim = 0;
        repkit::GenericStabilizer witness;
        std::string note;
    };
    Reduced reduce_triple(const AlgebraPtr& g, const Subalgebra& h, const Module& v);

    WeylResult weyl_bundle(const AlgebraPtr& g, const Subalgebra& h,
                           const std::optional<Module>& v);
    WeylResult weyl_homogeneous(const AlgebraPtr& g, const Subalgebra& h);
    WeylResult weyl_affine_homogeneous(const AlgebraPtr& g, const Subalgebra& h);
    WeylResult weyl_homogeneous_full_rank(const AlgebraPtr& g, const Subalgebra& h);

    // t^{W(g,h)} via the normalizer-center construction
    Subspace fixed_space(const AlgebraPtr& g, const Subalgebra& h);

    // attach the valuation cone and pi-hat data to a result
    void attach_cone(WeylResult& r);

private:
    Pipeline& pipe_;
    disting::Disting& dst_;

    WeylResult from_generator_roots(const AlgebraPtr& g, CartanSpace c,
                                    const std::vector<Vec>& roots,
                                    std::vector<std::string> prov);
    WeylResult assemble_semidirect(const AlgebraPtr& g, CartanSpace c,
                                   const std::vector<Vec>& inner_roots,
                                   const std::vector<Mat>& gamma_gens,
                                   std::vector<std::string> prov);
    WeylResult full_weyl(const AlgebraPtr& g, std::vector<std::string> prov);
    WeylResult rank2_dispatch(const AlgebraPtr& g, const Subalgebra& h);
};

// expand a table-9 gamma spec into matrices acting on the eps space
std::vector<Mat> gamma_matrices(const AlgebraPtr& g, const tables::UnderlineRow& row,
                                const Subspace& a);

}  // namespace weylkit::weyl

#endif
