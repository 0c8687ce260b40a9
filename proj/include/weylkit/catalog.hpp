#ifndef WEYLKIT_CATALOG_HPP
#define WEYLKIT_CATALOG_HPP

#include "weylkit/repkit.hpp"

#include <functional>
#include <map>
#include <string>
#include <vector>

// Named constructors for the classical matrix realizations, distinguished
// subalgebra embeddings, and reference modules.  These realize the fixed
// conventions (forms, annihilator data, Weyl lifts) so that table rows are
// reproducible verbatim.

namespace weylkit::catalog {

using namespace weylkit;
using liealg::AlgebraPtr;
using liealg::Subalgebra;
using repkit::Embedded;
using repkit::Module;
using rootsys::RootDatumPtr;
using rootsys::Series;

AlgebraPtr algebra_of(const RootDatumPtr& datum);  // cached ChevalleyAlgebra

// Parse "sl4", "so7", "sp6", "G2", "F4", "E6".. and products "sl3xsl3".
RootDatumPtr datum_by_name(const std::string& name);
AlgebraPtr algebra_by_name(const std::string& name);

// The coordinate subalgebra of one simple factor, and its abstract copy.
Subalgebra factor_subalgebra(const AlgebraPtr& g, size_t f);
Embedded embed_factor(const AlgebraPtr& g, size_t f);

// The defining module of a simple classical algebra (abstract basis action),
// built from the fixed matrix realization: sl_n on C^n, so_n and sp_n
// annihilating the standard (anti-diagonal) forms.
Module tautological_module(const AlgebraPtr& g_simple);
// Same for one classical factor of a product algebra.
Module tautological_module(const AlgebraPtr& g, size_t factor);

// Highest weight module with an explicit matrix model over an Embedded
// reductive algebra (dispatching over tautological / exterior / dual /
// weight-orbit / adjoint constructions).
Module hw_model(const Embedded& e, const Vec& lambda_inner, size_t dim_budget = 512);
// multiset version: direct sum of irreducibles
Module hw_model_sum(const Embedded& e, const std::vector<Vec>& lambdas, size_t dim_budget = 512);

// fundamental weight of an algebra factor by 1-based index
Vec fundamental_weight(const RootDatumPtr& d, size_t index_1based);

// --- catalog subalgebras ------------------------------------------------------

// Root subalgebra generated by g^{+-alpha}, alpha in the given set.
Subalgebra root_subalgebra(const AlgebraPtr& g, const std::vector<Vec>& roots);
// Antistandard parabolic q = b^- + Levi(simple subset), and friends.
Subalgebra antistandard_parabolic(const AlgebraPtr& g, const std::vector<size_t>& levi_simples);
Subalgebra standard_levi(const AlgebraPtr& g, const std::vector<size_t>& levi_simples);
Subalgebra borel_minus(const AlgebraPtr& g);
Subalgebra nilradical_minus(const AlgebraPtr& g);  // Rad_u(b^-)
Subalgebra cartan_subalgebra(const AlgebraPtr& g);

// annihilator of vectors inside a module
Subalgebra annihilator(const Module& m, const std::vector<Vec>& vectors);
// stabilizer of a subspace
Subalgebra subspace_stabilizer(const Module& m, const Subspace& u);

// --- named embeddings from the tables (per factor of g) -----------------------

// sl_k in sl_n: annihilates e_1..e_{n-k}, e^1..e^{n-k} (lower-right block).
Subalgebra sl_block(const AlgebraPtr& g, size_t factor, int k);
// sl_k x sl_{n-k} as complementary blocks
Subalgebra sl_pair(const AlgebraPtr& g, size_t factor, int k);
// subalgebra generated by the simple-root spaces with the given indices
Subalgebra simple_root_subalgebra(const AlgebraPtr& g, size_t factor, const std::string& csv);
// sp_{2k} inside sl_n (annihilating n-2k coordinates, preserving a form)
Subalgebra sp_in_sl(const AlgebraPtr& g, size_t factor, int two_k);
// sp_2k block in sp_2n, so_k in so_n: annihilator data per the catalog.
Subalgebra sp_block(const AlgebraPtr& g, size_t factor, int two_k);
Subalgebra so_block(const AlgebraPtr& g, size_t factor, int k);
// sp_{2m} in sl_{2m} as the annihilator of e^1^e^2 + e^3^e^4 + ...
Subalgebra sp_form_in_sl(const AlgebraPtr& g, size_t factor);
// sp_{2m} in sl_{2m+1}: annihilator of e_1, e^1 and the 2-form above on the rest
Subalgebra sp_in_sl_odd(const AlgebraPtr& g, size_t factor);
// distinguished sp_2k in sp_2n via paired vectors (catalog choice)
Subalgebra sp_distinguished(const AlgebraPtr& g, size_t factor, int two_k);
// the plain "obvious" sp_2k x sp_{2(n-k)} (used as the negative certificate)
Subalgebra sp_pair_obvious(const AlgebraPtr& g, size_t factor, int two_k);
// normalizer-commutant pair sp_2k x sp_{2(n-k)} via the distinguished sp_2k
Subalgebra sp_pair_distinguished(const AlgebraPtr& g, size_t factor, int two_k);
// sl2 x sl2 x sp_{2n-4} in sp_2n
Subalgebra sl2_sl2_sp(const AlgebraPtr& g, size_t factor);
// sl_m in so_2m as the root subalgebra on alpha_1..alpha_{m-1}
Subalgebra sl_in_so_even(const AlgebraPtr& g, size_t factor);
// diag embeddings via tau + tau^* (+ trivial): k x k block pairs
Subalgebra gl_diag(const AlgebraPtr& g, size_t factor, int k, bool trace_zero);
Subalgebra sp_diag(const AlgebraPtr& g, size_t factor, int two_k);
Subalgebra so_diag(const AlgebraPtr& g, size_t factor, int k);
// spin7 in so9-type factors (annihilator of v_hw + v_lw in the spinor)
Subalgebra spin7_in_so(const AlgebraPtr& g, size_t factor);
// G2 in so7-type factors (annihilator of v_hw + v_lw in the 8-dim spinor)
Subalgebra g2_in_so(const AlgebraPtr& g, size_t factor);
// long-root subsystem subalgebras (A2 in G2, D4 in F4)
Subalgebra long_root_subalgebra(const AlgebraPtr& g, size_t factor);
// B4 in F4 per the distinguished construction
Subalgebra b4_in_f4(const AlgebraPtr& g, size_t factor);
// F4 in E6 as the annihilator of v_{pi1} + v_{-pi5} + v_{pi5-pi1} in V(pi1)
Subalgebra f4_in_e6(const AlgebraPtr& g, size_t factor);
// B4 in E6 through D5
Subalgebra b4_in_e6(const AlgebraPtr& g, size_t factor);
// diagonal h in h x h twisted by the longest Weyl element
Subalgebra diagonal_twisted(const AlgebraPtr& gg);
// sp_{2n-2} x sl2 x sp_{2m-2} in sp_2n x sp_2m (rows 26, 27)
Subalgebra sp_product_stabilizer(const AlgebraPtr& g);

// generic catalog dispatcher: name with parameters, e.g.
//   "sl:3"  (block), "sp:4", "so:5", "spform", "spodd", "spdist:4",
//   "sp_pair:4", "sl2sl2sp", "slso", "gldiag:3", "sldiag:3", "spdiag:4",
//   "spin7", "g2", "longroots", "b4f4", "f4e6", "b4e6", "diag", "sppair2627",
//   "zero", "whole", "roots:<alpha list>"
Subalgebra by_name(const AlgebraPtr& g, const std::string& spec, size_t factor = 0);

// sl2-triple data of a root
struct Sl2Triple {
    Vec e, x, f;  // algebra coordinates
};
Sl2Triple root_sl2(const AlgebraPtr& g, const Vec& root);

// diagram automorphism lift: perm maps simple-root indices
Mat diagram_automorphism(const AlgebraPtr& g, const std::vector<size_t>& perm);

}  // namespace weylkit::catalog

#endif
