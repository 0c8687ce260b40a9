#include "weylkit/cartan.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

namespace weylkit::cartan {

using liealg::bracket_closure;
using liealg::center_of;
using liealg::centralizer;
using liealg::derived;
using liealg::intersect;
using liealg::levi_split;
using liealg::nilradical;
using liealg::normalizer;
using liealg::sum;
using rootsys::RootDatumPtr;
using rootsys::Series;

Subspace full_t_span(const AlgebraPtr& g) {
    return Subspace::span(g->datum()->ambient_dim(), g->datum()->fundamental_weights());
}

Subalgebra centralizer_of_span(const AlgebraPtr& g, const Subspace& a) {
    const auto& d = g->datum();
    std::vector<Vec> gens;
    for (size_t i = 0; i < g->rank(); ++i) {
        Vec h(g->dim(), Rat(0));
        h[i] = 1;
        gens.push_back(h);
    }
    for (auto& r : d->roots()) {
        bool perp = true;
        for (auto& b : a.basis_vectors())
            if (d->inner(r, b) != 0) { perp = false; break; }
        if (perp) gens.push_back(g->root_vector(r));
    }
    return Subalgebra(g, Subspace::span(g->dim(), gens), "L");
}

Subalgebra l0_of_span(const AlgebraPtr& g, const Subspace& a) {
    const auto& d = g->datum();
    std::vector<Vec> gens;
    {
        std::vector<Vec> rows;
        for (auto& b : a.basis_vectors()) {
            Vec row(g->rank());
            for (size_t i = 0; i < g->rank(); ++i) {
                Vec h(g->dim(), Rat(0));
                h[i] = 1;
                row[i] = d->inner(g->eps_of_cartan(h), b);
            }
            rows.push_back(row);
        }
        Subspace ker = rows.empty() ? Subspace::full(g->rank()) : kernel(Mat::from_rows(rows));
        for (auto& c : ker.basis_vectors()) {
            Vec h(g->dim(), Rat(0));
            for (size_t i = 0; i < g->rank(); ++i) h[i] = c[i];
            gens.push_back(h);
        }
    }
    for (auto& r : d->roots()) {
        bool perp = true;
        for (auto& b : a.basis_vectors())
            if (d->inner(r, b) != 0) { perp = false; break; }
        if (perp) gens.push_back(g->root_vector(r));
    }
    return Subalgebra(g, Subspace::span(g->dim(), gens), "l0");
}

CartanSpace cartan_from_span(const AlgebraPtr& g, Subspace a, std::vector<Vec> lattice,
                             bool exact) {
    CartanSpace c;
    c.g = g;
    c.subspace = std::move(a);
    c.lattice = std::move(lattice);
    c.lattice_exact = exact;
    c.L = centralizer_of_span(g, c.subspace);
    c.l0 = l0_of_span(g, c.subspace);
    return c;
}

// --- minimal ideals --------------------------------------------------------------

namespace {

std::vector<liealg::Subalgebra> minimal_ideals(const Subalgebra& d) {
    std::vector<Subalgebra> out;
    std::deque<Subalgebra> queue{d};
    const auto& g = d.algebra();
    while (!queue.empty()) {
        Subalgebra cur = queue.front();
        queue.pop_front();
        if (cur.dim() == 0) continue;
        bool split = false;
        for (auto& v : cur.space().basis_vectors()) {
            std::vector<Vec> gens{v};
            Subspace span = Subspace::span(g->dim(), gens);
            while (true) {
                std::vector<Vec> next = span.basis_vectors();
                size_t before = span.dim();
                for (auto& b : cur.space().basis_vectors())
                    for (auto& x : span.basis_vectors()) next.push_back(g->bracket(b, x));
                span = Subspace::span(g->dim(), next);
                if (span.dim() == before) break;
            }
            if (span.dim() < cur.dim()) {
                Subalgebra ideal(g, span);
                Subalgebra comp = intersect(centralizer(ideal), cur);
                if (comp.dim() + ideal.dim() != cur.dim())
                    throw std::runtime_error("minimal_ideals: bad split");
                queue.push_back(ideal);
                queue.push_back(comp);
                split = true;
                break;
            }
        }
        if (!split) out.push_back(cur);
    }
    std::sort(out.begin(), out.end(),
              [](const Subalgebra& a, const Subalgebra& b) { return a.dim() > b.dim(); });
    return out;
}

std::vector<size_t> factor_support(const AlgebraPtr& g, const Subspace& s) {
    std::set<size_t> supp;
    const auto& d = g->datum();
    for (auto& v : s.basis_vectors()) {
        for (size_t i = 0; i < g->rank(); ++i)
            if (v[i] != 0) supp.insert((size_t)d->factor_of_root(d->simple_roots()[i]));
        for (size_t k = 0; k < d->roots().size(); ++k)
            if (v[g->rank() + k] != 0) supp.insert((size_t)d->factor_of_root(d->roots()[k]));
    }
    return std::vector<size_t>(supp.begin(), supp.end());
}

Vec transport_vec(const AlgebraPtr& g, const std::vector<size_t>& factors,
                  const Vec& v) {
    Vec out = zero_vec(g->datum()->ambient_dim());
    size_t off_local = 0;
    for (size_t idx = 0; idx < factors.size(); ++idx) {
        const auto& gf = g->datum()->factors()[factors[idx]];
        for (size_t j = 0; j < gf.dim; ++j) out[gf.offset + j] = v[off_local + j];
        off_local += gf.dim;
    }
    return g->datum()->canonicalize(out);
}

}  // namespace

Pipeline::EssResolution Pipeline::h_ess(const AlgebraPtr& g, const Subalgebra& h) {
    EssResolution res;
    res.ideal = Subalgebra::zero(g);
    if (h.dim() == 0) return res;
    Subalgebra der = derived(h);
    Subalgebra z = center_of(h);
    auto minimals = minimal_ideals(der);
    size_t k = minimals.size();
    if (k > 12) throw std::runtime_error("h_ess: too many ideals");

    auto match_component = [&](const Subalgebra& cand, bool with_center)
        -> std::optional<std::pair<tables::EssentialPair, size_t>> {
        auto factors = factor_support(g, cand.space());
        if (factors.empty()) return std::nullopt;
        // full factor component: whole pair, a = 0
        if (factors.size() == 1) {
            Subalgebra fs = catalog::factor_subalgebra(g, factors[0]);
            if (fs.space() == cand.space()) {
                tables::EssentialPair p;
                p.row = 0;
                p.table = "whole";
                p.g_name = g->datum()->name();
                p.h_spec = "whole-factor";
                return std::make_pair(p, factors[0]);
            }
        }
        std::vector<RootDatumPtr> fd;
        for (auto f : factors) {
            const auto& gf = g->datum()->factors()[f];
            fd.push_back(rootsys::RootDatum::simple(gf.series, gf.rank));
        }
        auto standalone = rootsys::RootDatum::product(fd);
        AlgebraPtr sa = catalog::algebra_of(standalone);
        auto rows = tables::essential_rows_for(store_, standalone);
        auto fp = liealg::fingerprint(cand);
        for (auto& p : rows) {
            bool is_t2 = p.table == "table2";
            if (is_t2 != with_center) continue;
            Subalgebra inst;
            try {
                inst = tables::instantiate_h(sa, p.h_spec, p.bind);
            } catch (const std::exception&) {
                continue;
            }
            if (inst.dim() != cand.dim()) continue;
            if (!(liealg::fingerprint(inst) == fp)) continue;
            tables::EssentialPair q = p;
            std::vector<Vec> gens;
            for (auto& v : q.a_gens) gens.push_back(transport_vec(g, factors, v));
            q.a_gens = gens;
            return std::make_pair(q, factors.size() == 1 ? factors[0] : SIZE_MAX);
        }
        return std::nullopt;
    };

    std::vector<std::vector<size_t>> subsets;
    for (size_t mask = 1; mask < (1u << k); ++mask) {
        std::vector<size_t> s;
        for (size_t i = 0; i < k; ++i)
            if (mask & (1u << i)) s.push_back(i);
        subsets.push_back(s);
    }
    auto dim_of = [&](const std::vector<size_t>& s) {
        size_t d2 = 0;
        for (auto i : s) d2 += minimals[i].dim();
        return d2;
    };
    std::sort(subsets.begin(), subsets.end(),
              [&](auto& a, auto& b) { return dim_of(a) > dim_of(b); });

    for (auto& s : subsets) {
        std::vector<Subalgebra> pieces;
        for (auto i : s) pieces.push_back(minimals[i]);
        // group into components by overlapping factor support
        std::vector<std::vector<size_t>> supp;
        for (auto& p : pieces) supp.push_back(factor_support(g, p.space()));
        std::vector<int> comp_of(pieces.size(), -1);
        int nc = 0;
        for (size_t i = 0; i < pieces.size(); ++i) {
            if (comp_of[i] >= 0) continue;
            comp_of[i] = nc;
            bool grew = true;
            while (grew) {
                grew = false;
                for (size_t j = 0; j < pieces.size(); ++j) {
                    if (comp_of[j] >= 0) continue;
                    for (size_t j2 = 0; j2 < pieces.size(); ++j2) {
                        if (comp_of[j2] != nc) continue;
                        for (auto f : supp[j])
                            for (auto f2 : supp[j2])
                                if (f == f2 && comp_of[j] < 0) {
                                    comp_of[j] = nc;
                                    grew = true;
                                }
                    }
                }
            }
            ++nc;
        }
        bool all_matched = true;
        std::vector<tables::EssentialPair> rows;
        std::vector<size_t> row_factors;
        Subalgebra total = Subalgebra::zero(g);
        for (int c = 0; c < nc && all_matched; ++c) {
            Subalgebra comp = Subalgebra::zero(g);
            for (size_t i = 0; i < pieces.size(); ++i)
                if (comp_of[i] == c) comp = sum(comp, pieces[i]);
            std::optional<std::pair<tables::EssentialPair, size_t>> m;
            Subalgebra used = comp;
            {
                Subalgebra zz = center_of(centralizer(comp));
                Subalgebra zin = intersect(zz, z);
                if (zin.dim() == 1) {
                    Subalgebra czc = bracket_closure(sum(comp, zin));
                    m = match_component(czc, true);
                    if (m) used = czc;
                }
            }
            if (!m) m = match_component(comp, false);
            if (!m) { all_matched = false; break; }
            rows.push_back(m->first);
            row_factors.push_back(m->second);
            total = sum(total, used);
        }
        if (all_matched && nc > 0) {
            res.ideal = total;
            res.rows = rows;
            res.factors = row_factors;
            return res;
        }
    }
    return res;
}

CartanSpace Pipeline::cartan_reductive(const AlgebraPtr& g, const Subalgebra& h) {
    Provenance prov;
    if (h.dim() == 0) {
        auto c = cartan_from_span(g, full_t_span(g), g->datum()->fundamental_weights(), false);
        prov.add("trivial subgroup: a = t");
        c.provenance = prov;
        return c;
    }
    EssResolution res = h_ess(g, h);
    if (res.ideal.dim() == 0) {
        auto c = cartan_from_span(g, full_t_span(g), g->datum()->fundamental_weights(), false);
        prov.add("h^ess = 0: a = t");
        c.provenance = prov;
        return c;
    }
    std::set<size_t> covered;
    std::vector<Vec> gens;
    bool exact = true;
    std::ostringstream rowlist;
    for (size_t i = 0; i < res.rows.size(); ++i) {
        for (auto& v : res.rows[i].a_gens) gens.push_back(v);
        rowlist << (i ? "," : "") << res.rows[i].table << ":" << res.rows[i].row;
        if (res.factors[i] != SIZE_MAX) covered.insert(res.factors[i]);
        else
            for (size_t f = 0; f < g->datum()->factors().size(); ++f) covered.insert(f);
    }
    for (size_t f = 0; f < g->datum()->factors().size(); ++f) {
        if (covered.count(f)) continue;
        exact = false;
        size_t off = 0;
        for (size_t ff = 0; ff < f; ++ff)
            for (auto& a2 : g->datum()->simple_roots())
                if ((size_t)g->datum()->factor_of_root(a2) == ff) ++off;
        for (auto& a2 : g->datum()->simple_roots())
            if ((size_t)g->datum()->factor_of_root(a2) == f) {
                gens.push_back(g->datum()->fundamental_weights()[off]);
                ++off;
            }
    }
    Subspace a = Subspace::span(g->datum()->ambient_dim(), gens);
    auto c = cartan_from_span(g, a, gens, exact);
    prov.add("essential resolution via " + rowlist.str());
    c.provenance = prov;
    return c;
}

CartanSpace Pipeline::cartan_reductive_in(const Subalgebra& m, const Subalgebra& s) {
    const AlgebraPtr& g = m.algebra();
    Provenance prov;
    if (!m.is_torus_stable()) throw std::runtime_error("cartan_reductive_in: m not t-stable");
    Subalgebra mss = derived(m);
    Subalgebra zm = center_of(m);
    Subspace t_span = full_t_span(g);
    // z(m)* = orthocomplement of the mss-root span inside t*
    Subspace z_span = t_span;
    {
        std::vector<Vec> rows;
        for (auto& r : Subalgebra(g, mss.space()).root_support())
            rows.push_back(mat_apply(g->datum()->gram(), r));
        if (!rows.empty()) z_span = t_span.intersect(kernel(Mat::from_rows(rows)));
    }
    Subalgebra s_z = center_of(s);
    std::vector<Vec> a_gens;
    {
        // characters of the central torus trivial on s's central part
        std::vector<Vec> zrows;
        for (auto& x : s_z.space().basis_vectors()) {
            Vec eps = g->eps_of_cartan(x);
            zrows.push_back(mat_apply(g->datum()->gram(), eps));
        }
        Subspace azn = z_span;
        if (!zrows.empty()) azn = z_span.intersect(kernel(Mat::from_rows(zrows)));
        for (auto& v : azn.basis_vectors()) a_gens.push_back(v);
        prov.add("central torus characters (" + std::to_string(azn.dim()) + ")");
    }
    if (mss.dim() > 0) {
        Subalgebra s_in_mss = intersect(s, mss);
        // reject coupled central parts (not table-resolvable)
        if (s_z.dim() > 0) {
            Subalgebra s_z_zm = intersect(s_z, zm);
            Subalgebra s_z_mss = intersect(s_z, mss);
            if (s_z_zm.dim() + s_z_mss.dim() != s_z.dim())
                throw std::runtime_error("cartan_reductive_in: coupled central torus in s");
        }
        Embedded emss = repkit::embed_abstract(g, mss);
        std::vector<Vec> inner_gens;
        for (auto& v : s_in_mss.space().basis_vectors()) {
            auto c = emss.pull_back(v);
            if (!c) throw std::runtime_error("cartan_reductive_in: s escapes the Levi");
            inner_gens.push_back(*c);
        }
        Subalgebra s_inner(emss.inner, Subspace::span(emss.inner->dim(), inner_gens));
        CartanSpace inner_c = cartan_reductive(emss.inner, s_inner);
        for (auto& v : inner_c.subspace.basis_vectors()) {
            Vec hin = emss.inner->cartan_from_eps(v);
            Vec hout = emss.embed(hin);
            a_gens.push_back(g->eps_of_cartan(hout));
        }
        for (auto& st : inner_c.provenance.steps) prov.add("levi: " + st);
    }
    Subspace a = Subspace::span(g->datum()->ambient_dim(), a_gens);
    auto c = cartan_from_span(g, a, a_gens, false);
    c.provenance = prov;
    return c;
}

// --- module rank ------------------------------------------------------------------

Pipeline::ModuleRank Pipeline::l0_of_module(const Subalgebra& g0, const Module& v) {
    const AlgebraPtr& g = g0.algebra();
    Provenance prov;
    if (!g0.is_torus_stable()) throw std::runtime_error("l0_of_module: group not t-stable");
    if (v.vdim > 0 && !v.has_weights())
        throw std::runtime_error("l0_of_module: module lacks weight data");
    Subalgebra gi = g0;
    Module dual = repkit::dual_module(v);
    Subspace vi = Subspace::full(v.vdim);
    size_t guard = 0;
    while (v.vdim > 0) {
        if (++guard > 100) throw std::runtime_error("l0_of_module: no termination");
        Subalgebra der = derived(gi);
        bool trivial = true;
        for (auto& x : der.space().basis_vectors()) {
            Mat act = v.act_of(x);
            for (auto& b : vi.basis_vectors())
                if (!is_zero(mat_apply(act, b))) { trivial = false; break; }
            if (!trivial) break;
        }
        if (trivial) break;
        Subspace vi_perp = kernel(vi.basis());
        Module q = repkit::quotient_module(repkit::restrict_module(dual, gi), vi_perp);
        if (!q.has_weights()) throw std::runtime_error("l0_of_module: weights lost in quotient");
        std::vector<Vec> rows;
        for (auto& r : gi.root_support()) {
            Vec c = g->datum()->simple_root_coordinates(r);
            bool pos = true;
            for (auto& x : c)
                if (x < 0) { pos = false; break; }
            if (!pos) continue;
            Mat op = q.act_of(g->root_vector(r));
            for (size_t i = 0; i < op.rows; ++i) rows.push_back(op.row(i));
        }
        Subspace hv = rows.empty() ? Subspace::full(q.vdim) : kernel(Mat::from_rows(rows));
        if (hv.dim() == 0)
            throw std::runtime_error("l0_of_module: no semiinvariant in nonzero module");
        auto lines = repkit::weight_adapted_basis(q, hv);
        auto rank_of = [&](const Subalgebra& x) { return derived(x).cartan_part().dim(); };
        size_t cur_rank = rank_of(gi);
        auto stab_of = [&](const Vec& alpha) {
            std::vector<Vec> cols;
            for (auto& b : gi.space().basis_vectors())
                cols.push_back(mat_apply(q.act_of(b), alpha));
            Mat sys = Mat::from_rows(cols).transposed();
            Subspace coeff = kernel(sys);
            std::vector<Vec> sg;
            auto gb = gi.space().basis_vectors();
            for (auto& cc : coeff.basis_vectors()) {
                Vec x = zero_vec(g->dim());
                for (size_t j = 0; j < gb.size(); ++j) x += cc[j] * gb[j];
                sg.push_back(x);
            }
            return Subalgebra(g, Subspace::span(g->dim(), sg));
        };
        std::optional<size_t> best;
        bool best_drops = false;
        Vec best_w;
        std::vector<Subalgebra> stabs;
        for (size_t i = 0; i < lines.size(); ++i) {
            Subalgebra cand = stab_of(lines[i].second);
            if (getenv("WEYLKIT_TRACE"))
                fprintf(stderr, "  line %zu wt %s stabdim %zu ssrank %zu\n", i,
                        vec_str(lines[i].first).c_str(), cand.dim(), rank_of(cand));
            stabs.push_back(cand);
            bool drops = rank_of(cand) < cur_rank;
            bool better = false;
            if (!best) better = true;
            else if (drops && !best_drops) better = true;
            else if (drops == best_drops && lines[i].first > best_w) better = true;
            if (better) {
                best = i;
                best_drops = drops;
                best_w = lines[i].first;
            }
        }
        const Vec& alpha = lines[*best].second;
        Subalgebra next = stabs[*best];
        // V_{i+1} = annihilator in V_i of u^- alpha
        std::vector<Vec> covectors;
        {
            size_t n = v.vdim;
            const Mat& bmat = kernel(vi.basis()).basis();
            std::vector<bool> pivot(n, false);
            for (size_t i2 = 0; i2 < bmat.rows; ++i2) {
                size_t pc = 0;
                while (pc < n && bmat(i2, pc) == 0) ++pc;
                if (pc < n) pivot[pc] = true;
            }
            std::vector<size_t> free;
            for (size_t i2 = 0; i2 < n; ++i2)
                if (!pivot[i2]) free.push_back(i2);
            for (auto& r : gi.root_support()) {
                Vec c = g->datum()->simple_root_coordinates(r);
                bool neg = true;
                for (auto& x : c)
                    if (x > 0) { neg = false; break; }
                if (!neg) continue;
                Vec fa = mat_apply(q.act_of(g->root_vector(r)), alpha);
                if (is_zero(fa)) continue;
                Vec full = zero_vec(n);
                for (size_t i2 = 0; i2 < free.size() && i2 < fa.size(); ++i2)
                    full[free[i2]] = fa[i2];
                covectors.push_back(full);
            }
        }
        Subspace cut =
            covectors.empty() ? Subspace::full(v.vdim) : kernel(Mat::from_rows(covectors));
        vi = vi.intersect(cut);
        prov.add("strip semiinvariant (ss-rank " + std::to_string(rank_of(next)) + ", Vdim " +
                 std::to_string(vi.dim()) + ", gdim " + std::to_string(next.dim()) + ")");
        if (getenv("WEYLKIT_TRACE"))
            fprintf(stderr, "[l0_of_module] gdim %zu ssrank %zu vidim %zu lines %zu\n",
                    next.dim(), rank_of(next), vi.dim(), lines.size());
        gi = next;
    }
    std::vector<Vec> rows;
    auto gb = gi.space().basis_vectors();
    for (auto& b : vi.basis_vectors()) {
        std::vector<Vec> cols;
        for (auto& x : gb) cols.push_back(mat_apply(v.act_of(x), b));
        Mat sys = Mat::from_rows(cols).transposed();
        for (size_t r = 0; r < sys.rows; ++r) rows.push_back(sys.row(r));
    }
    Subspace coeff = rows.empty() ? Subspace::full(gb.size()) : kernel(Mat::from_rows(rows));
    std::vector<Vec> l0g;
    for (auto& cc : coeff.basis_vectors()) {
        Vec x = zero_vec(g->dim());
        for (size_t j = 0; j < gb.size(); ++j) x += cc[j] * gb[j];
        l0g.push_back(x);
    }
    ModuleRank out;
    out.l0 = Subalgebra(g, Subspace::span(g->dim(), l0g), "l0V");
    Subspace tg0;
    {
        std::vector<Vec> eps;
        for (auto& cb : g0.cartan_part().basis_vectors()) eps.push_back(g->eps_of_cartan(cb));
        tg0 = Subspace::span(g->datum()->ambient_dim(), eps);
    }
    {
        std::vector<Vec> rows2;
        for (auto& cb : out.l0.cartan_part().basis_vectors())
            rows2.push_back(mat_apply(g->datum()->gram(), g->eps_of_cartan(cb)));
        out.a = rows2.empty() ? tg0 : tg0.intersect(kernel(Mat::from_rows(rows2)));
    }
    out.provenance = prov;
    return out;
}

// --- tame parabolic ----------------------------------------------------------------

Pipeline::TameData Pipeline::tame_parabolic(const AlgebraPtr& g, const Subalgebra& h) {
    TameData out;
    out.provenance.add("nilradical iteration");
    Subalgebra n = nilradical(h);
    size_t guard = 0;
    while (true) {
        if (++guard > 50) throw std::runtime_error("tame_parabolic: iteration stuck");
        Subalgebra nn = nilradical(normalizer(n));
        if (nn.space() == n.space()) break;
        n = nn;
    }
    Subalgebra q = normalizer(n);
    if (q.dim() + n.dim() != g->dim())
        throw std::runtime_error("tame_parabolic: fixed point is not parabolic");
    if (!q.is_torus_stable())
        throw std::runtime_error("tame_parabolic: non-torus-stable parabolic (unsupported)");
    Vec v = zero_vec(g->datum()->ambient_dim());
    for (auto& r : Subalgebra(g, n.space()).root_support()) v += r;
    Mat w = Mat::identity(g->datum()->ambient_dim());
    {
        size_t guard2 = 0;
        bool moved = true;
        Vec cur = v;
        while (moved) {
            moved = false;
            for (auto& a2 : g->datum()->simple_roots()) {
                if (g->datum()->inner(cur, a2) > 0) {
                    cur = g->datum()->reflect(a2, cur);
                    w = g->datum()->reflection_matrix(a2) * w;
                    moved = true;
                }
            }
            if (++guard2 > 100000) throw std::runtime_error("tame_parabolic: chamber walk stuck");
        }
    }
    Mat lift = g->weyl_lift_of(w);
    auto apply = [&](const Subalgebra& s) {
        std::vector<Vec> gens;
        for (auto& b : s.space().basis_vectors()) gens.push_back(mat_apply(lift, b));
        return Subalgebra(g, Subspace::span(g->dim(), gens), s.tag());
    };
    Subalgebra q2 = apply(q);
    Subalgebra h2 = apply(h);
    std::vector<size_t> levis;
    {
        auto supp = q2.root_support();
        std::set<Vec> s(supp.begin(), supp.end());
        for (size_t i = 0; i < g->datum()->rank(); ++i)
            if (s.count(g->datum()->simple_roots()[i])) levis.push_back(i);
        for (auto& a2 : g->datum()->simple_roots())
            if (!s.count(Rat(-1) * a2))
                throw std::runtime_error("tame_parabolic: antistandardization failed");
    }
    Subalgebra m = catalog::standard_levi(g, levis);
    auto lv = levi_split(h2);
    if (!m.contains(lv.reductive))
        throw std::runtime_error("tame_parabolic: Levi of h not inside m (unsupported)");
    out.q = q2;
    out.h = h2;
    out.m = m;
    out.s = lv.reductive;
    out.levi_simples = levis;
    out.conjugator = lift;
    out.provenance.add("antistandardized via a Weyl element; Levi inside the standard Levi");
    return out;
}

Pipeline::BundleRewrite Pipeline::bundle_rewrite(const AlgebraPtr& g, const TameData& t,
                                                 const std::optional<Module>& v) {
    BundleRewrite out;
    out.s = t.s;
    Subalgebra radq = nilradical(t.q);
    Subalgebra radh = nilradical(t.h);
    (void)radh;
    std::vector<Subalgebra> chain{radq};
    while (chain.back().dim() > 0) {
        std::vector<Vec> gens;
        for (auto& a2 : radq.space().basis_vectors())
            for (auto& b : chain.back().space().basis_vectors())
                gens.push_back(g->bracket(a2, b));
        chain.push_back(Subalgebra(g, Subspace::span(g->dim(), gens)));
    }
    Module ad = repkit::adjoint_module(g);
    Module ad_s = repkit::restrict_module(ad, t.s.dim() ? t.s : Subalgebra::zero(g));
    std::vector<Module> parts;
    for (size_t i = 0; i + 1 < chain.size(); ++i) {
        Subspace target = chain[i].space();
        Subspace bad = chain[i + 1].space().sum(target.intersect(t.h.space()));
        if (bad.dim() == target.dim()) continue;
        Subspace comp(g->dim());
        if (t.s.dim() == 0) {
            std::vector<Vec> gens;
            Subspace acc = bad;
            for (auto& b : target.basis_vectors())
                if (!acc.contains(b)) {
                    gens.push_back(b);
                    auto g2 = acc.basis_vectors();
                    g2.push_back(b);
                    acc = Subspace::span(g->dim(), g2);
                }
            comp = Subspace::span(g->dim(), gens);
        } else {
            std::vector<Vec> rows;
            for (auto& r : t.s.root_support()) {
                Vec c = g->datum()->simple_root_coordinates(r);
                bool pos = true;
                for (auto& x : c)
                    if (x < 0) { pos = false; break; }
                if (!pos) continue;
                Mat op = ad_s.act_of(g->root_vector(r));
                for (size_t r2 = 0; r2 < op.rows; ++r2) rows.push_back(op.row(r2));
            }
            Subspace hv = rows.empty() ? Subspace::full(g->dim()) : kernel(Mat::from_rows(rows));
            Subspace hv_t = hv.intersect(target);
            Subspace hv_bad = hv.intersect(bad);
            std::vector<Vec> extension;
            Subspace acc = hv_bad;
            for (auto& b : hv_t.basis_vectors())
                if (!acc.contains(b)) {
                    extension.push_back(b);
                    auto g2 = acc.basis_vectors();
                    g2.push_back(b);
                    acc = Subspace::span(g->dim(), g2);
                }
            Subspace cur = Subspace::span(g->dim(), extension);
            bool grew = true;
            while (grew) {
                grew = false;
                std::vector<Vec> next = cur.basis_vectors();
                for (auto& x : t.s.space().basis_vectors())
                    for (auto& b : cur.basis_vectors()) next.push_back(g->bracket(x, b));
                Subspace nx = Subspace::span(g->dim(), next);
                if (nx.dim() != cur.dim()) { cur = nx; grew = true; }
            }
            comp = cur;
        }
        if (comp.dim() + bad.dim() != target.dim() || comp.intersect(bad).dim() != 0)
            throw std::runtime_error("bundle_rewrite: complement choice failed");
        Module part = repkit::submodule(ad_s, comp);
        parts.push_back(part);
        out.provenance.add("fiber layer " + std::to_string(i) + " dim " +
                           std::to_string(comp.dim()));
    }
    Module fiber = repkit::trivial_module(g, t.s, 0);
    for (auto& p : parts) fiber = repkit::direct_sum(fiber, p);
    if (v) fiber = repkit::direct_sum(fiber, repkit::restrict_module(*v, t.s));
    out.fiber = fiber;
    return out;
}

CartanSpace Pipeline::cartan_bundle(const AlgebraPtr& g, const Subalgebra& h,
                                    const std::optional<Module>& v) {
    CartanSpace base = cartan_reductive(g, h);
    if (!v || v->vdim == 0) return base;
    Subalgebra l1 = base.l0;
    if (!h.contains(l1))
        throw std::runtime_error(
            "cartan_bundle: l0 not inside h (use the distinguished embedding)");
    Module fiber = repkit::restrict_module(*v, l1);
    ModuleRank mr = l0_of_module(l1, fiber);
    Subspace a = base.subspace.sum(mr.a);
    std::vector<Vec> lattice = base.lattice;
    for (auto& b : mr.a.basis_vectors()) lattice.push_back(primitive_integer(b));
    auto c = cartan_from_span(g, a, lattice, false);
    c.provenance = base.provenance;
    for (auto& s : mr.provenance.steps) c.provenance.add(s);
    c.provenance.add("bundle rank added over the distinguished point");
    return c;
}

CartanSpace Pipeline::cartan_homogeneous(const AlgebraPtr& g, const Subalgebra& h) {
    if (h.dim() == 0 || nilradical(h).dim() == 0) return cartan_reductive(g, h);
    TameData t = tame_parabolic(g, h);
    BundleRewrite br = bundle_rewrite(g, t, std::nullopt);
    CartanSpace cm = cartan_reductive_in(t.m, t.s);
    Subalgebra l1 = intersect(cm.l0, t.m);
    Subspace a = cm.subspace;
    Provenance prov = t.provenance;
    for (auto& s : cm.provenance.steps) prov.add(s);
    if (br.fiber.vdim > 0) {
        if (!t.s.contains(l1) && t.s.dim() > 0)
            throw std::runtime_error("cartan_homogeneous: Levi-pair l0 not inside s");
        if (t.s.dim() == 0) l1 = Subalgebra::zero(g);
        Module fl = repkit::restrict_module(br.fiber, l1);
        ModuleRank mr = l0_of_module(l1, fl);
        a = a.sum(mr.a);
        for (auto& s : mr.provenance.steps) prov.add(s);
    }
    std::vector<Vec> lattice;
    for (auto& b : a.basis_vectors()) lattice.push_back(primitive_integer(b));
    auto c = cartan_from_span(g, a, lattice, false);
    c.provenance = prov;
    c.provenance.add("homogeneous reduction through the tame parabolic");
    return c;
}

CartanSpace Pipeline::twist(const Mat& tau, const CartanSpace& c) {
    CartanSpace out = c;
    const AlgebraPtr& g = c.g;
    auto eps_map = [&](const Vec& eps) {
        Vec h = g->cartan_from_eps(eps);
        Vec th = mat_apply(tau, h);
        return g->eps_of_cartan(th);
    };
    std::vector<Vec> gens;
    for (auto& b : c.subspace.basis_vectors()) gens.push_back(eps_map(b));
    out.subspace = Subspace::span(g->datum()->ambient_dim(), gens);
    out.lattice.clear();
    for (auto& l : c.lattice) out.lattice.push_back(eps_map(l));
    auto apply = [&](const Subalgebra& s) {
        std::vector<Vec> g2;
        for (auto& b : s.space().basis_vectors()) g2.push_back(mat_apply(tau, b));
        return Subalgebra(g, Subspace::span(g->dim(), g2), s.tag());
    };
    out.l0 = apply(c.l0);
    out.L = apply(c.L);
    out.provenance.add("twisted by automorphism");
    return out;
}

long Pipeline::complexity_homogeneous(const AlgebraPtr& g, const Subalgebra& h,
                                      int certificates) {
    std::mt19937_64 rng(seed_ ^ 0x9e3779b97f4a7c15ull);
    std::uniform_int_distribution<long> d(-5, 5);
    const auto& dm = g->datum();
    std::vector<Vec> bgens;
    for (size_t i = 0; i < g->rank(); ++i) {
        Vec x(g->dim(), Rat(0));
        x[i] = 1;
        bgens.push_back(x);
    }
    for (auto& r : dm->positive_roots()) bgens.push_back(g->root_vector(r));
    Subspace bspace = Subspace::span(g->dim(), bgens);
    long best = -1;
    for (int t = 0; t < certificates + 2; ++t) {
        Mat conj = Mat::identity(g->dim());
        for (int s = 0; s < 2; ++s) {
            Vec xu = zero_vec(g->dim()), xl = zero_vec(g->dim());
            for (auto& r : dm->positive_roots()) {
                long cu = d(rng), cl = d(rng);
                if (cu) xu[g->root_vector_index(r)] = Rat(cu);
                if (cl) xl[g->root_vector_index(Rat(-1) * r)] = Rat(cl);
            }
            conj = conj * g->exp_ad(xu) * g->exp_ad(xl);
        }
        std::vector<Vec> hg;
        for (auto& b : h.space().basis_vectors()) hg.push_back(mat_apply(conj, b));
        Subspace hc = Subspace::span(g->dim(), hg);
        long stab = (long)bspace.intersect(hc).dim();
        long orbit = (long)bspace.dim() - stab;
        long cx = (long)(g->dim() - h.dim()) - orbit;
        if (best < 0 || cx < best) best = cx;
    }
    return best;
}

}  // namespace weylkit::cartan
