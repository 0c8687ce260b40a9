#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "weylkit/catalog.hpp"
#include "weylkit/liealg.hpp"
#include "weylkit/repkit.hpp"
#include "weylkit/rootsys.hpp"

using namespace weylkit;
using namespace weylkit::rootsys;

TEST_CASE("linear algebra basics") {
    Mat m(2, 3);
    m(0, 0) = 1; m(0, 1) = 2; m(0, 2) = 3;
    m(1, 0) = 2; m(1, 1) = 4; m(1, 2) = 6;
    Subspace k = kernel(m);
    CHECK(k.dim() == 2);
    Subspace s = Subspace::span(3, {{Rat(1), Rat(0), Rat(0)}, {Rat(0), Rat(1), Rat(0)}});
    Subspace t = Subspace::span(3, {{Rat(0), Rat(1), Rat(0)}, {Rat(0), Rat(0), Rat(1)}});
    CHECK(s.intersect(t).dim() == 1);
    CHECK(s.sum(t).dim() == 3);
    Vec v{Rat(2), Rat(-4), Rat(6)};
    Vec p = primitive_integer(v);
    CHECK(p == Vec{Rat(1), Rat(-2), Rat(3)});
}

TEST_CASE("root data counts and conventions") {
    auto b3 = RootDatum::simple(Series::B, 3);
    CHECK(b3->roots().size() == 18);
    // alpha_n = eps_n for so_{2n+1}
    Vec en = zero_vec(3);
    en[2] = 1;
    CHECK(b3->simple_roots()[2] == en);
    auto a1 = RootDatum::simple(Series::A, 1);
    CHECK(a1->roots().size() == 2);
    auto g2 = RootDatum::simple(Series::G2, 2);
    CHECK(g2->roots().size() == 12);
    auto f4 = RootDatum::simple(Series::F4, 4);
    CHECK(f4->roots().size() == 48);
    auto e6 = RootDatum::simple(Series::E6, 6);
    CHECK(e6->roots().size() == 72);
    auto e7 = RootDatum::simple(Series::E7, 7);
    CHECK(e7->roots().size() == 126);
    auto e8 = RootDatum::simple(Series::E8, 8);
    CHECK(e8->roots().size() == 240);
    // long/short in G2: alpha_1 short, alpha_2 long
    CHECK(g2->is_short(g2->simple_roots()[0]));
    CHECK(g2->is_long(g2->simple_roots()[1]));
    // products
    auto prod = RootDatum::product({RootDatum::simple(Series::A, 1), b3});
    CHECK(prod->roots().size() == 20);
    CHECK(prod->rank() == 4);
}

TEST_CASE("reflection subgroups") {
    auto b3 = RootDatum::simple(Series::B, 3);
    auto w = reflection_subgroup(b3, b3->simple_roots());
    CHECK(w.order() == 48);
    CHECK(w.delta_gamma.size() == 18);
    CHECK(w.simple_system.size() == 3);
    // single reflection
    auto s1 = reflection_subgroup(b3, {b3->simple_roots()[0]});
    CHECK(s1.order() == 2);
    CHECK(s1.delta_gamma.size() == 2);
    // idempotence of extraction
    auto s2 = reflection_subgroup(b3, s1.delta_gamma);
    CHECK(s2.delta_gamma == s1.delta_gamma);
    // fixed subspace
    CHECK(fixed_subspace(w).dim() == 0);
    CHECK(fixed_subspace(s1).dim() == 2);
    // |W(F4)| = 1152 via closure enumeration
    auto f4 = RootDatum::simple(Series::F4, 4);
    auto wf4 = reflection_subgroup(f4, f4->simple_roots());
    CHECK(wf4.order() == 1152);
}

TEST_CASE("sl_n diag sub-reflection group: Table 4 row 2 pattern") {
    // generators eps_i - eps_{i+2} in sl_5: Delta_Gamma = eps_i - eps_j, i = j mod 2
    auto a4 = RootDatum::simple(Series::A, 4);
    std::vector<Vec> gens;
    for (int i = 0; i + 2 < 5; ++i) {
        Vec v = zero_vec(5);
        v[i] = 1;
        v[i + 2] = -1;
        gens.push_back(a4->canonicalize(v));
    }
    auto g = reflection_subgroup(a4, gens);
    size_t expect = 0;
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j)
            if (i != j && (i - j) % 2 == 0) ++expect;
    CHECK(g.delta_gamma.size() == expect);
}

TEST_CASE("is_large basics") {
    auto a2 = RootDatum::simple(Series::A, 2);
    auto whole = reflection_subgroup(a2, a2->simple_roots());
    CHECK(is_large(whole));
    auto trivial = reflection_subgroup(a2, {});
    CHECK(!is_large(trivial));
}

TEST_CASE("valuation chamber") {
    auto b3 = RootDatum::simple(Series::B, 3);
    auto w = reflection_subgroup(b3, b3->simple_roots());
    Cone c = valuation_chamber(w, Subspace::full(3));
    CHECK(c.simplicial);
    CHECK(c.inequalities.size() == 3);
    // antidominant containment: -fundamental weights satisfy the inequalities
    for (auto& fw : b3->fundamental_weights()) {
        Vec p = Rat(-1) * fw;
        for (auto& n : c.inequalities) CHECK(b3->inner(p, n) >= 0);
    }
    // trivial group: whole space
    auto tr = reflection_subgroup(b3, {});
    Cone c2 = valuation_chamber(tr, Subspace::full(3));
    CHECK(c2.inequalities.empty());
    CHECK(c2.lineality.dim() == 3);
    // D3 = <s_{e_i - e_j}, s_{e2+e3}> inside W(B3): chamber per spec example
    std::vector<Vec> dgens;
    {
        Vec v = zero_vec(3);
        v[0] = 1; v[1] = -1;
        dgens.push_back(v);
        Vec u = zero_vec(3);
        u[1] = 1; u[2] = -1;
        dgens.push_back(u);
        Vec x = zero_vec(3);
        x[1] = 1; x[2] = 1;
        dgens.push_back(x);
    }
    auto dsub = reflection_subgroup(b3, dgens);
    CHECK(dsub.order() == 24);
    Cone c3 = valuation_chamber(dsub, Subspace::full(3));
    CHECK(c3.simplicial);
    CHECK(c3.inequalities.size() == 3);
}

TEST_CASE("completely perpendicular subsets") {
    auto b2 = RootDatum::simple(Series::B, 2);
    // {eps1 - eps2, eps1 + eps2} fails (span contains +-eps_i)
    Vec a = zero_vec(2), b = zero_vec(2);
    a[0] = 1; a[1] = -1;
    b[0] = 1; b[1] = 1;
    CHECK(!is_completely_perpendicular(b2, {a, b}));
    // any singleton qualifies
    CHECK(is_completely_perpendicular(b2, {a}));
    // {e1-e2, e3-e4} in A4 qualifies
    auto a4 = RootDatum::simple(Series::A, 4);
    Vec x = zero_vec(5), y = zero_vec(5);
    x[0] = 1; x[1] = -1;
    y[2] = 1; y[3] = -1;
    CHECK(is_completely_perpendicular(a4, {a4->canonicalize(x), a4->canonicalize(y)}));
}

TEST_CASE("chevalley algebras") {
    using namespace weylkit::liealg;
    auto a1 = ChevalleyAlgebra::build(RootDatum::simple(Series::A, 1));
    CHECK(a1->dim() == 3);
    auto b2 = ChevalleyAlgebra::build(RootDatum::simple(Series::B, 2));
    CHECK(b2->dim() == 10);
    auto g2 = ChevalleyAlgebra::build(RootDatum::simple(Series::G2, 2));
    CHECK(g2->dim() == 14);
    // Jacobi on all basis triples of G2
    size_t d = g2->dim();
    for (size_t i = 0; i < d; ++i)
        for (size_t j = i + 1; j < d; ++j)
            for (size_t k = j + 1; k < d; ++k) {
                Vec x(d, Rat(0)), y(d, Rat(0)), z(d, Rat(0));
                x[i] = 1; y[j] = 1; z[k] = 1;
                Vec s = g2->bracket(x, g2->bracket(y, z));
                s += g2->bracket(y, g2->bracket(z, x));
                s += g2->bracket(z, g2->bracket(x, y));
                REQUIRE(is_zero(s));
            }
    // antisymmetry + invariance of the form on F4 samples
    auto f4 = ChevalleyAlgebra::build(RootDatum::simple(Series::F4, 4));
    CHECK(f4->dim() == 52);
    for (size_t t = 0; t < 40; ++t) {
        size_t i = (t * 11) % 52, j = (t * 17 + 3) % 52, k = (t * 29 + 7) % 52;
        Vec x(52, Rat(0)), y(52, Rat(0)), z(52, Rat(0));
        x[i] = 1; y[j] = 1; z[k] = 1;
        CHECK(f4->form_K(f4->bracket(x, y), z) + f4->form_K(y, f4->bracket(x, z)) == 0);
    }
    // K normalization: K(theta^vee, theta^vee) = 2 on long coroot
    for (auto s : {Series::B, Series::C}) {
        auto g = ChevalleyAlgebra::build(RootDatum::simple(s, 3));
        Vec theta;
        Rat best(0);
        for (auto& r : g->datum()->roots())
            if (g->datum()->inner(r, r) > best) { best = g->datum()->inner(r, r); theta = r; }
        Vec tv = g->coroot_element(theta);
        CHECK(g->form_K(tv, tv) == 2);
    }
}

TEST_CASE("subalgebra calculus on sl3") {
    using namespace weylkit::liealg;
    auto g = catalog::algebra_by_name("sl3");
    auto b = catalog::borel_minus(g);
    CHECK(b.dim() == 5);
    CHECK(normalizer(b) == b);
    auto u = catalog::nilradical_minus(g);
    CHECK(normalizer(u) == b);
    CHECK(nilradical(b) == u);
    auto lv = levi_split(b);
    CHECK(lv.unipotent == u);
    CHECK(lv.reductive.dim() == 2);
    // centralizer of the Cartan is the Cartan
    auto t = catalog::cartan_subalgebra(g);
    CHECK(centralizer(t).dim() == 2);
    // z_g(0) = g
    CHECK(centralizer(Subalgebra::zero(g)).dim() == 8);
    // radical of whole simple algebra is 0
    CHECK(radical(Subalgebra::whole(g)).dim() == 0);
}

TEST_CASE("dynkin indices") {
    using namespace weylkit::liealg;
    // root sl2 in sl3 has index 1; principal sl2 has index 4
    auto g = catalog::algebra_by_name("sl3");
    auto root = catalog::root_subalgebra(g, {g->datum()->simple_roots()[0]});
    CHECK(dynkin_index(root, Series::A, 1) == 1);
    // principal: e = e_{a1} + e_{a2}, h = 2(a1^vee + a2^vee)-ish triple
    // use the regular sl2: h = sum of coroots scaled
    Vec e = g->root_vector(g->datum()->simple_roots()[0]) +
            g->root_vector(g->datum()->simple_roots()[1]);
    Vec h(g->dim(), Rat(0));
    h[0] = 2;
    h[1] = 2;
    // f = c1 f1 + c2 f2 with [h,f] = -2f, [e,f] = h: for sl3, c1 = c2 = 2
    Vec fvec = Rat(2) * g->root_vector(Rat(-1) * g->datum()->simple_roots()[0]) +
               Rat(2) * g->root_vector(Rat(-1) * g->datum()->simple_roots()[1]);
    auto s = Subalgebra::span_of(g, {e, h, fvec});
    REQUIRE(s.is_bracket_closed());
    REQUIRE(s.dim() == 3);
    CHECK(dynkin_index(s, Series::A, 1) == 4);
    CHECK(!sl2_long_root_test(s, Subalgebra::whole(g), Series::A, 2));
    CHECK(sl2_long_root_test(root, Subalgebra::whole(g), Series::A, 2));
    // short root sl2 in B2 has index 2
    auto b2 = catalog::algebra_by_name("so5");
    Vec shortroot = zero_vec(2);
    shortroot[0] = 1;
    auto sb = catalog::root_subalgebra(b2, {shortroot});
    CHECK(dynkin_index(sb, Series::A, 1) == 2);
}

TEST_CASE("tautological modules and weights") {
    using namespace weylkit::repkit;
    auto g = catalog::algebra_by_name("so5");
    auto tau = catalog::tautological_module(g);
    CHECK(tau.vdim == 5);
    CHECK(tau.check_bracket_compatible());
    auto sp4 = catalog::algebra_by_name("sp4");
    auto tau4 = catalog::tautological_module(sp4);
    CHECK(tau4.vdim == 4);
    CHECK(tau4.check_bracket_compatible());
    auto sl4 = catalog::algebra_by_name("sl4");
    CHECK(catalog::tautological_module(sl4).check_bracket_compatible());
    auto so8 = catalog::algebra_by_name("so8");
    CHECK(catalog::tautological_module(so8).check_bracket_compatible());
}

TEST_CASE("freudenthal and weyl dimension") {
    using namespace weylkit::repkit;
    auto a1 = RootDatum::simple(Series::A, 1);
    Vec pi1 = a1->fundamental_weights()[0];
    auto ws = weight_system(a1, pi1);
    CHECK(ws.size() == 2);
    CHECK(module_dimension(ws) == 2);
    // adjoint of sl3: weights = roots plus 0 with multiplicity 2
    auto a2 = RootDatum::simple(Series::A, 2);
    Vec adj = a2->canonicalize(a2->fundamental_weights()[0] + a2->fundamental_weights()[1]);
    auto wadj = weight_system(a2, adj);
    CHECK(module_dimension(wadj) == 8);
    CHECK(wadj.at(zero_vec(3)) == 2);
    // so9 spinor: 16 weights multiplicity 1
    auto b4 = RootDatum::simple(Series::B, 4);
    auto wspin = weight_system(b4, b4->fundamental_weights()[3]);
    CHECK(wspin.size() == 16);
    for (auto& [w, m] : wspin) CHECK(m == 1);
    CHECK(weyl_dimension(b4, b4->fundamental_weights()[3]) == 16);
}

TEST_CASE("weight orbit spinor model") {
    using namespace weylkit::repkit;
    auto so7 = catalog::algebra_by_name("so7");
    auto spin = weight_orbit_module(embed_whole(so7), so7->datum()->fundamental_weights()[2]);
    CHECK(spin.vdim == 8);
    auto so9 = catalog::algebra_by_name("so9");
    auto spin9 = weight_orbit_module(embed_whole(so9), so9->datum()->fundamental_weights()[3]);
    CHECK(spin9.vdim == 16);
}

TEST_CASE("g2 inside so7 via spinor annihilator") {
    auto so7 = catalog::algebra_by_name("so7");
    auto g2 = catalog::g2_in_so(so7, 0);
    CHECK(g2.dim() == 14);
    CHECK(g2.is_bracket_closed());
    auto e = repkit::embed_abstract(so7, g2);
    CHECK(e.inner->datum()->name() == "G22");
}

TEST_CASE("embed_abstract on a Levi") {
    auto sl4 = catalog::algebra_by_name("sl4");
    auto levi = catalog::standard_levi(sl4, {0, 1});  // gl3 block
    auto der = liealg::derived(levi);
    CHECK(der.dim() == 8);
    auto e = repkit::embed_abstract(sl4, der);
    CHECK(e.inner->datum()->name() == "A2");
}
