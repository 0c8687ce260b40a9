#include "weylkit/disting.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>
#include <stdexcept>

namespace weylkit::disting {

using liealg::center_of;
using liealg::centralizer;
using liealg::intersect;
using liealg::normalizer;
using liealg::sum;
using rootsys::RootDatumPtr;
using rootsys::Series;

Certificate dimension_certificate(const AlgebraPtr& g, const Subalgebra& h,
                                  const Subalgebra& l0) {
    Certificate c;
    c.l0_inside_h = h.contains(l0);
    Subalgebra ng = normalizer(l0);
    Subalgebra nh = intersect(ng, h);
    c.dim_ng = (long)ng.dim();
    c.dim_nh = (long)nh.dim();
    c.dimension_identity =
        2 * ((long)h.dim() - c.dim_nh) == (long)g->dim() - c.dim_ng;
    return c;
}

Subalgebra l0_derived_subalgebra(const AlgebraPtr& g, const Subspace& a,
                                 const std::string& target_type, long dim_ng_expected,
                                 long dim_nh_expected) {
    // l0 from the span
    Subalgebra l0 = cartan::l0_of_span(g, a);
    const auto& d = g->datum();
    // target root count and dimension by type
    auto target_datum = catalog::datum_by_name(target_type == "D6" ? "so12" : target_type);
    size_t target_roots = target_datum->roots().size();
    size_t target_dim = target_roots + target_datum->rank();
    // closed-subsystem completion: start from the l0 root set, add roots
    std::set<Vec> base;
    for (auto& r : Subalgebra(g, l0.space()).root_support()) base.insert(r);
    auto closure = [&](std::set<Vec> s) {
        bool grew = true;
        while (grew) {
            grew = false;
            std::vector<Vec> cur(s.begin(), s.end());
            for (auto& x : cur)
                for (auto& y : cur) {
                    Vec z = d->canonicalize(x + y);
                    if (d->is_root(z) && !s.count(z)) {
                        s.insert(z);
                        grew = true;
                    }
                }
        }
        return s;
    };
    std::set<std::set<Vec>> seen;
    std::deque<std::set<Vec>> queue{closure(base)};
    seen.insert(queue.front());
    size_t guard = 0;
    while (!queue.empty()) {
        if (++guard > 30000) break;
        std::set<Vec> cur = queue.front();
        queue.pop_front();
        if (cur.size() == target_roots) {
            std::vector<Vec> roots(cur.begin(), cur.end());
            Subalgebra cand = catalog::root_subalgebra(g, roots);
            if (cand.dim() != target_dim) continue;
            Certificate c = dimension_certificate(g, cand, l0);
            if (c.ok() && c.dim_ng == dim_ng_expected && c.dim_nh == dim_nh_expected)
                return cand;
            continue;
        }
        if (cur.size() > target_roots) continue;
        // grow by one positive root (with its negative)
        for (auto& r : d->positive_roots()) {
            if (cur.count(r)) continue;
            std::set<Vec> nxt = cur;
            nxt.insert(r);
            nxt.insert(d->canonicalize(Rat(-1) * r));
            nxt = closure(nxt);
            if (nxt.size() > target_roots) continue;
            if (seen.count(nxt)) continue;
            seen.insert(nxt);
            queue.push_back(nxt);
        }
    }
    throw std::runtime_error("l0_derived_subalgebra: no certified completion to " + target_type);
}

DistinguishedData Disting::distinguished_point(const AlgebraPtr& g, const Subalgebra& h) {
    DistinguishedData d;
    d.provenance.push_back("reductive pair");
    CartanSpace c = pipe_.cartan_reductive(g, h);
    d.l0 = c.l0;
    // certify eH lies in the distinguished component (catalog embeddings)
    Certificate cert = dimension_certificate(g, h, d.l0);
    if (!cert.ok()) {
        std::ostringstream os;
        os << "distinguished_point: eH not certified (l0 in h: " << cert.l0_inside_h
           << ", identity: " << cert.dimension_identity << ", dims " << cert.dim_ng << "/"
           << cert.dim_nh << ")";
        throw std::runtime_error(os.str());
    }
    d.provenance.push_back("eH certified by the dimension identity (" +
                           std::to_string(cert.dim_ng) + "/" + std::to_string(cert.dim_nh) + ")");
    fill_underline(g, h, d);
    return d;
}

DistinguishedData Disting::distinguished_bundle(const AlgebraPtr& g, const Subalgebra& h,
                                                const Module& v) {
    DistinguishedData d = distinguished_point(g, h);
    // fiber = V^{l0}
    Module rest = repkit::restrict_module(v, d.l0);
    Subspace inv = repkit::invariants(rest);
    Module fiber = repkit::submodule(repkit::restrict_module(v, intersect(normalizer(d.l0), h)),
                                     inv);
    d.underline_fiber = fiber;
    d.provenance.push_back("fiber = V^{l0}, dim " + std::to_string(fiber.vdim));
    return d;
}

void Disting::fill_underline(const AlgebraPtr& g, const Subalgebra& h, DistinguishedData& d) {
    // underline_g = z_g(l0) cap z(l0)^perp
    Subalgebra zg = centralizer(d.l0);
    Subalgebra zl0 = center_of(d.l0);
    // K-orthogonal cut
    auto zb = zl0.space().basis_vectors();
    auto gb = zg.space().basis_vectors();
    std::vector<Vec> gens;
    if (!zb.empty()) {
        Mat cond(zb.size(), gb.size());
        for (size_t i = 0; i < zb.size(); ++i)
            for (size_t j = 0; j < gb.size(); ++j) cond(i, j) = g->form_K(gb[j], zb[i]);
        Subspace coeff = kernel(cond);
        for (auto& cc : coeff.basis_vectors()) {
            Vec x = zero_vec(g->dim());
            for (size_t j = 0; j < gb.size(); ++j) x += cc[j] * gb[j];
            gens.push_back(x);
        }
    } else {
        gens = gb;
    }
    d.underline_g = Subalgebra(g, Subspace::span(g->dim(), gens), "underline_g");
    d.underline_h = intersect(normalizer(d.l0), h);
    // match the pair against the tables for the Gamma data
    auto hit = tables::lookup_essential(pipe_.store(), g, h);
    if (hit && hit->table == "table1") {
        d.matched_row = hit->row;
        d.matched_table = hit->table;
        d.bind = hit->bind;
        d.gamma = tables::underline_row(pipe_.store(), hit->row, g->datum(), hit->bind);
        d.provenance.push_back("Gamma from table 9 row " + std::to_string(hit->row));
    } else {
        d.matched_row = 0;
        d.provenance.push_back("no table row matched: Gamma unavailable");
    }
}

}  // namespace weylkit::disting
