#ifndef WEYLKIT_DISTING_HPP
#define WEYLKIT_DISTING_HPP

#include "weylkit/cartan.hpp"

#include <optional>
#include <string>
#include <vector>

// Distinguished components of X^{L0} for homogeneous spaces and bundles,
// certified by the dimension identity, plus the underline data feeding the
// Weyl-group assembly.

namespace weylkit::disting {

using namespace weylkit;
using cartan::CartanSpace;
using cartan::Pipeline;
using catalog::AlgebraPtr;
using liealg::Subalgebra;
using repkit::Module;
using tables::TableStore;

struct DistinguishedData {
    Subalgebra l0;
    std::vector<std::string> witness_words;  // group-element words; empty = eH
    Subalgebra underline_g;                  // g^{l0} cap z(l0)^perp
    Subalgebra underline_h;                  // n_h(l0) image data
    std::optional<Module> underline_fiber;   // V^{l0} for bundles
    tables::UnderlineRow gamma;              // table 8/9 data of the matched row
    int matched_row = 0;
    std::string matched_table;
    tables::Bindings bind;
    std::vector<std::string> provenance;
};

// dimension certificate of the smooth affine case:
// 2(dim h - dim n_h(l0)) = dim g - dim n_g(l0), plus l0 inside h
struct Certificate {
    bool l0_inside_h = false;
    bool dimension_identity = false;
    long dim_ng = 0, dim_nh = 0;
    bool ok() const { return l0_inside_h && dimension_identity; }
};

Certificate dimension_certificate(const AlgebraPtr& g, const Subalgebra& h,
                                  const Subalgebra& l0);

// Subsystem-completion construction for the E-series rows: the type-correct
// closed subsystem subalgebra containing l0, certified by the dimension
// identity with the stated dimensions.
Subalgebra l0_derived_subalgebra(const AlgebraPtr& g, const Subspace& a,
                                 const std::string& target_type, long dim_ng_expected,
                                 long dim_nh_expected);

class Disting {
public:
    Disting(Pipeline& pipe) : pipe_(pipe) {}

    // distinguished point data for a reductive pair; the input must be (or
    // fingerprint-match) a catalogued embedding so that eH is distinguished
    DistinguishedData distinguished_point(const AlgebraPtr& g, const Subalgebra& h);

    // bundles: fiber = V^{l0}
    DistinguishedData distinguished_bundle(const AlgebraPtr& g, const Subalgebra& h,
                                           const Module& v);

    // underline data (underline_g, Gamma) for the matched table row
    void fill_underline(const AlgebraPtr& g, const Subalgebra& h, DistinguishedData& d);

private:
    Pipeline& pipe_;
};

}  // namespace weylkit::disting

#endif
