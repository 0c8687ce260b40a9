#include "weylkit/liealg.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <stdexcept>

namespace weylkit::liealg {

Subalgebra::Subalgebra(AlgebraPtr g, Subspace space, std::string tag)
    : g_(std::move(g)), space_(std::move(space)), tag_(std::move(tag)) {}

Subalgebra Subalgebra::span_of(AlgebraPtr g, const std::vector<Vec>& gens, std::string tag) {
    return Subalgebra(g, Subspace::span(g->dim(), gens), std::move(tag));
}

Subalgebra Subalgebra::zero(AlgebraPtr g) { return Subalgebra(g, Subspace(g->dim())); }

Subalgebra Subalgebra::whole(AlgebraPtr g) {
    return Subalgebra(g, Subspace::full(g->dim()), "g");
}

bool Subalgebra::is_bracket_closed() const {
    auto b = space_.basis_vectors();
    for (size_t i = 0; i < b.size(); ++i)
        for (size_t j = i + 1; j < b.size(); ++j)
            if (!space_.contains(g_->bracket(b[i], b[j]))) return false;
    return true;
}

bool Subalgebra::is_torus_stable() const {
    size_t r = g_->rank();
    for (size_t i = 0; i < r; ++i) {
        Vec h(g_->dim(), Rat(0));
        h[i] = 1;
        for (auto& v : space_.basis_vectors())
            if (!space_.contains(g_->bracket(h, v))) return false;
    }
    return true;
}

std::vector<Vec> Subalgebra::root_support() const {
    std::vector<Vec> out;
    for (auto& r : g_->datum()->roots())
        if (space_.contains(g_->root_vector(r))) out.push_back(r);
    return out;
}

Subspace Subalgebra::cartan_part() const {
    std::vector<Vec> cb;
    for (size_t i = 0; i < g_->rank(); ++i) {
        Vec h(g_->dim(), Rat(0));
        h[i] = 1;
        cb.push_back(h);
    }
    return space_.intersect(Subspace::span(g_->dim(), cb));
}

Subalgebra sum(const Subalgebra& a, const Subalgebra& b) {
    return Subalgebra(a.algebra(), a.space().sum(b.space()));
}

Subalgebra intersect(const Subalgebra& a, const Subalgebra& b) {
    return Subalgebra(a.algebra(), a.space().intersect(b.space()));
}

Subalgebra normalizer(const Subalgebra& h) {
    // { x : [x, h] subseteq h }: kernel of g -> Hom(h, g/h)
    const auto& g = h.algebra();
    size_t n = g->dim();
    auto hb = h.space().basis_vectors();
    if (hb.empty()) return Subalgebra::whole(g);
    // complement projection: coordinates modulo h
    // build matrix rows: for each basis vector e_i of g and each h-generator v:
    // bracket [e_i, v] reduced mod h must vanish
    Subspace hs = h.space();
    // residue map: full space -> quotient coordinates
    Mat basis = hs.basis();
    std::vector<Vec> rows;
    for (auto& v : hb) {
        // columns: x in g coordinates; map x -> [x, v] mod h
        std::vector<Vec> cols;
        for (size_t i = 0; i < n; ++i) {
            Vec e(n, Rat(0));
            e[i] = 1;
            Vec br = g->bracket(e, v);
            // reduce modulo h basis
            for (size_t r = 0; r < basis.rows; ++r) {
                size_t pc = 0;
                while (pc < n && basis(r, pc) == 0) ++pc;
                if (pc < n && br[pc] != 0) {
                    Rat f = br[pc];
                    for (size_t j = 0; j < n; ++j) br[j] -= f * basis(r, j);
                }
            }
            cols.push_back(br);
        }
        Mat m = Mat::from_rows(cols).transposed();
        for (size_t r = 0; r < m.rows; ++r) rows.push_back(m.row(r));
    }
    Subspace ker = kernel(Mat::from_rows(rows));
    return Subalgebra(g, ker);
}

Subalgebra centralizer(const Subalgebra& h) {
    const auto& g = h.algebra();
    size_t n = g->dim();
    auto hb = h.space().basis_vectors();
    if (hb.empty()) return Subalgebra::whole(g);
    std::vector<Vec> rows;
    for (auto& v : hb) {
        std::vector<Vec> cols;
        for (size_t i = 0; i < n; ++i) {
            Vec e(n, Rat(0));
            e[i] = 1;
            cols.push_back(g->bracket(e, v));
        }
        Mat m = Mat::from_rows(cols).transposed();
        for (size_t r = 0; r < m.rows; ++r) rows.push_back(m.row(r));
    }
    return Subalgebra(g, kernel(Mat::from_rows(rows)));
}

Subalgebra center_of(const Subalgebra& h) {
    return intersect(centralizer(h), h);
}

Subalgebra derived(const Subalgebra& h) {
    auto b = h.space().basis_vectors();
    std::vector<Vec> gens;
    for (size_t i = 0; i < b.size(); ++i)
        for (size_t j = i + 1; j < b.size(); ++j)
            gens.push_back(h.algebra()->bracket(b[i], b[j]));
    return Subalgebra(h.algebra(), Subspace::span(h.algebra()->dim(), gens));
}

Subalgebra bracket_closure(const Subalgebra& h) {
    Subalgebra cur = h;
    while (true) {
        auto b = cur.space().basis_vectors();
        std::vector<Vec> gens = b;
        for (size_t i = 0; i < b.size(); ++i)
            for (size_t j = i + 1; j < b.size(); ++j)
                gens.push_back(h.algebra()->bracket(b[i], b[j]));
        Subspace next = Subspace::span(h.algebra()->dim(), gens);
        if (next.dim() == cur.dim()) return cur;
        cur = Subalgebra(h.algebra(), next);
    }
}

Rat killing_within(const Subalgebra& h, const Vec& x, const Vec& y) {
    // trace of ad(x) ad(y) restricted to h, in the RREF basis of h
    auto b = h.space().basis_vectors();
    const auto& g = h.algebra();
    Rat tr(0);
    for (size_t j = 0; j < b.size(); ++j) {
        Vec w = g->bracket(y, b[j]);
        w = g->bracket(x, w);
        auto c = h.space().coordinates(w);
        if (!c) throw std::runtime_error("killing_within: h not closed");
        tr += (*c)[j];
    }
    return tr;
}

Subalgebra radical(const Subalgebra& h) {
    // rad(h) = { x in h : Killing_h(x, [h,h]) = 0 }
    auto d = derived(h);
    auto db = d.space().basis_vectors();
    auto hb = h.space().basis_vectors();
    if (db.empty()) return h;  // abelian
    std::vector<Vec> rows;
    for (auto& y : db) {
        Vec row(hb.size());
        for (size_t i = 0; i < hb.size(); ++i) row[i] = killing_within(h, hb[i], y);
        rows.push_back(row);
    }
    Subspace coeff = kernel(Mat::from_rows(rows));
    std::vector<Vec> gens;
    for (auto& c : coeff.basis_vectors()) {
        Vec v(h.algebra()->dim(), Rat(0));
        for (size_t i = 0; i < hb.size(); ++i) v += c[i] * hb[i];
        gens.push_back(v);
    }
    return Subalgebra(h.algebra(), Subspace::span(h.algebra()->dim(), gens));
}

namespace {

// Unital associative envelope of ad(r) acting on g, as a subspace of
// dim x dim matrices;返回 basis matrices.
std::vector<Mat> associative_envelope(const AlgebraPtr& g, const std::vector<Vec>& gens_elems) {
    size_t n = g->dim();
    std::vector<Mat> gens;
    for (auto& v : gens_elems) gens.push_back(g->ad_matrix(v));
    std::vector<Mat> basis;  // basis of the envelope, kept RREF-independent
    std::vector<Vec> flat;   // flattened matrices for independence tests
    auto try_add = [&](const Mat& m) -> bool {
        Vec f = m.a;
        std::vector<Vec> test = flat;
        test.push_back(f);
        if (Subspace::span(n * n, test).dim() == flat.size()) return false;
        // keep reduced spanning set
        flat.push_back(f);
        basis.push_back(m);
        return true;
    };
    try_add(Mat::identity(n));
    for (auto& m : gens) try_add(m);
    size_t frontier = 0;
    while (frontier < basis.size()) {
        Mat cur = basis[frontier++];
        for (auto& m : gens) try_add(cur * m);
    }
    return basis;
}

}  // namespace

Subalgebra nilradical(const Subalgebra& h) {
    // Rad_u(h) for algebraic h: nilpotent elements of the solvable radical,
    // cut out by trace conditions against the unital associative envelope.
    auto r = radical(h);
    auto rb = r.space().basis_vectors();
    if (rb.empty()) return r;
    const auto& g = h.algebra();
    auto env = associative_envelope(g, rb);
    std::vector<Vec> rows;
    for (auto& b : env) {
        Vec row(rb.size());
        for (size_t i = 0; i < rb.size(); ++i) {
            Mat prod = g->ad_matrix(rb[i]) * b;
            row[i] = mat_trace(prod);
        }
        rows.push_back(row);
    }
    Subspace coeff = kernel(Mat::from_rows(rows));
    std::vector<Vec> gens;
    for (auto& c : coeff.basis_vectors()) {
        Vec v(g->dim(), Rat(0));
        for (size_t i = 0; i < rb.size(); ++i) v += c[i] * rb[i];
        gens.push_back(v);
    }
    Subalgebra nil(g, Subspace::span(g->dim(), gens));
    // sanity: every element ad-nilpotent
    for (auto& v : nil.space().basis_vectors())
        if (!g->is_nilpotent_element(v))
            throw std::runtime_error("nilradical: non-nilpotent element (h not algebraic?)");
    return nil;
}

bool is_reductive_in(const Subalgebra& h) { return nilradical(h).dim() == 0; }

LeviSplit levi_split(const Subalgebra& h) {
    // algebraic Levi decomposition h = s + Rad_u(h) with s maximal reductive
    const auto& g = h.algebra();
    Subalgebra nil = nilradical(h);
    if (nil.dim() == 0) return {h, nil};
    if (nil.dim() == h.dim()) return {Subalgebra::zero(g), nil};

    // torus-adapted fast path: Cartan part plus symmetric root support
    if (h.is_torus_stable()) {
        std::vector<Vec> gens;
        for (auto& c : h.cartan_part().basis_vectors()) gens.push_back(c);
        auto supp = h.root_support();
        for (auto& r : supp) {
            bool sym = false;
            for (auto& r2 : supp)
                if (r2 == Rat(-1) * r) { sym = true; break; }
            if (sym) gens.push_back(g->root_vector(r));
        }
        Subalgebra s(g, Subspace::span(g->dim(), gens));
        if (s.is_bracket_closed() && s.dim() + nil.dim() == h.dim() &&
            intersect(s, nil).dim() == 0 && nilradical(s).dim() == 0)
            return {s, nil};
    }

    // layered correction along the lower central series of Rad_u(h)
    std::vector<Subalgebra> layers;  // n = n_0 > [n,n_0] > ... > 0
    Subalgebra cur = nil;
    layers.push_back(cur);
    while (cur.dim() > 0) {
        std::vector<Vec> gens;
        for (auto& a : nil.space().basis_vectors())
            for (auto& b : cur.space().basis_vectors()) gens.push_back(g->bracket(a, b));
        Subalgebra nxt(g, Subspace::span(g->dim(), gens));
        if (nxt.dim() == cur.dim()) throw std::runtime_error("nilradical not nilpotent");
        layers.push_back(nxt);
        cur = nxt;
    }
    Subalgebra rad = nil;  // complement target

    // initial vector-space complement to Rad_u(h) in h
    std::vector<Vec> comp;
    {
        Subspace acc = rad.space();
        for (auto& v : h.space().basis_vectors()) {
            if (!acc.contains(v)) {
                comp.push_back(v);
                std::vector<Vec> gens = acc.basis_vectors();
                gens.push_back(v);
                acc = Subspace::span(g->dim(), gens);
            }
        }
    }
    size_t m = comp.size();
    if (m == 0) return {Subalgebra::zero(g), nil};

    for (size_t layer = 0; layer + 1 < layers.size(); ++layer) {
        // want [x_i + y_i, x_j + y_j] = structure constants + (element of next layer)
        // unknown y_i in layers[layer], equations modulo layers[layer+1]
        const Subspace& L = layers[layer].space();
        const Subspace& Lnext = layers[layer + 1].space();
        auto lb = L.basis_vectors();
        size_t ld = lb.size();
        if (ld == 0) continue;
        // quotient coordinates of L / Lnext
        // use coordinates in L, then mod out Lnext coordinates
        auto mod_coords = [&](const Vec& v) -> std::optional<Vec> {
            auto c = L.coordinates(v);
            return c;
        };
        // current structure defects: [x_i,x_j] = sum c_k x_k + r_ij, r_ij in rad
        // compute c via projection onto span(comp) modulo rad
        Subspace comp_span = Subspace::span(g->dim(), comp);
        Subspace whole = comp_span.sum(rad.space());
        auto split_coords = [&](const Vec& v) {
            // v in h: v = sum a_i comp_i + r, solved linearly
            std::vector<Vec> cols = comp;
            for (auto& rv : rad.space().basis_vectors()) cols.push_back(rv);
            Mat mm = Mat::from_rows(cols).transposed();
            auto sol = solve(mm, v);
            if (!sol) throw std::runtime_error("levi_split: defect outside h");
            Vec a(m), rr = zero_vec(g->dim());
            for (size_t i = 0; i < m; ++i) a[i] = (*sol)[i];
            for (size_t i = 0; i < rad.space().basis_vectors().size(); ++i)
                rr += (*sol)[m + i] * rad.space().basis_vectors()[i];
            return std::make_pair(a, rr);
        };
        (void)whole;
        // unknowns: y_i = sum over lb of t_{i,k} lb[k]: m*ld unknowns.
        size_t nu = m * ld;
        std::vector<Vec> eq_rows;
        Vec rhs_all;
        std::vector<Rat> rhs;
        for (size_t i = 0; i < m; ++i)
            for (size_t j = i + 1; j < m; ++j) {
                Vec br = g->bracket(comp[i], comp[j]);
                auto [c, defect] = split_coords(br);
                // equation (in L/Lnext):
                // [x_i, y_j] - [x_j, y_i] - sum_k c_k y_k = -defect  (mod Lnext, and mod
                // the part of defect in L's complement inside rad? defect lies in rad;
                // project defect into L-coordinates: defect must lie in L at this stage)
                // Each equation is vector valued in quotient L/Lnext.
                // Build columns for unknowns.
                if (!L.contains(defect)) {
                    // defect has components in earlier layers already fixed
                    // cannot happen: earlier layers were corrected
                    throw std::runtime_error("levi_split: defect escapes layer");
                }
                auto dc = *mod_coords(defect);
                // row block: for each coordinate of L (we mod Lnext at solve time by
                // adding Lnext coordinate columns as free unknowns)
                // simpler: solve in L coordinates with extra unknown z in Lnext coords:
                // [x_i,y_j] - [x_j,y_i] - sum c_k y_k + defect = z (element of Lnext)
                // -> treat as linear system over unknowns t and z.
                std::vector<Vec> cols;
                for (size_t q = 0; q < m; ++q)
                    for (size_t k = 0; k < ld; ++k) {
                        Vec col = zero_vec(ld);
                        Vec contrib = zero_vec(g->dim());
                        if (q == j) contrib += g->bracket(comp[i], lb[k]);
                        if (q == i) contrib = contrib - g->bracket(comp[j], lb[k]);
                        contrib = contrib - c[q] * lb[k];
                        if (!L.contains(contrib))
                            throw std::runtime_error("levi_split: bracket leaves layer");
                        col = *mod_coords(contrib);
                        cols.push_back(col);
                    }
                for (auto& lv : Lnext.basis_vectors()) cols.push_back(Rat(-1) * *mod_coords(lv));
                Mat sys = Mat::from_rows(cols).transposed();
                for (size_t r = 0; r < sys.rows; ++r) {
                    Vec row = sys.row(r);
                    eq_rows.push_back(row);
                    rhs.push_back(-dc[r]);
                }
            }
        if (eq_rows.empty()) continue;
        // pad unknown count: nu + Lnext-dims per equation-block share the same z?
        // NOTE: z unknowns must be per-equation-pair; to keep it simple solve
        // modulo Lnext instead: eliminate Lnext coordinates from equations.
        // Build quotient projector: coordinates of L, drop those of Lnext.
        // We implement via: rows reduced against Lnext coordinate span.
        // Simpler correct approach: solve the big system with per-pair z's.
        size_t pairs = 0;
        for (size_t i = 0; i < m; ++i)
            for (size_t j = i + 1; j < m; ++j) ++pairs;
        size_t zdim = Lnext.dim();
        size_t total_unknowns = nu + pairs * zdim;
        // rebuild equations with per-pair z columns
        std::vector<Vec> rows2;
        std::vector<Rat> rhs2;
        size_t pair_idx = 0;
        size_t eq_cursor = 0;
        for (size_t i = 0; i < m; ++i)
            for (size_t j = i + 1; j < m; ++j) {
                for (size_t r = 0; r < ld; ++r) {
                    Vec row(total_unknowns, Rat(0));
                    const Vec& old_row = eq_rows[eq_cursor];
                    for (size_t q = 0; q < nu; ++q) row[q] = old_row[q];
                    for (size_t z = 0; z < zdim; ++z)
                        row[nu + pair_idx * zdim + z] = old_row[nu + z];
                    rows2.push_back(row);
                    rhs2.push_back(rhs[eq_cursor]);
                    ++eq_cursor;
                }
                ++pair_idx;
            }
        auto sol = solve(Mat::from_rows(rows2), rhs2);
        if (!sol) throw std::runtime_error("levi_split: layer system unsolvable");
        for (size_t i = 0; i < m; ++i) {
            Vec corr = zero_vec(g->dim());
            for (size_t k = 0; k < ld; ++k) corr += (*sol)[i * ld + k] * lb[k];
            comp[i] = comp[i] + corr;
        }
    }
    Subalgebra levi(g, Subspace::span(g->dim(), comp));
    if (!levi.is_bracket_closed()) throw std::runtime_error("levi_split: result not closed");
    if (nilradical(levi).dim() != 0) throw std::runtime_error("levi_split: part not reductive");
    return {levi, nil};
}

// Adjoint-trace-form value on a long coroot, computed honestly from the
// abstract algebra of the given type (cached per type).
Rat k_constant(Series s, int rank) {
    static std::map<std::pair<Series, int>, Rat> cache;
    auto key = std::make_pair(s, rank);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    auto datum = RootDatum::simple(s, rank);
    // Killing(theta^vee, theta^vee) = sum_beta <beta, theta^vee>^2
    Rat best(0);
    Vec theta;
    for (auto& r : datum->roots())
        if (datum->inner(r, r) > best) { best = datum->inner(r, r); theta = r; }
    Rat k(0);
    for (auto& b : datum->roots()) {
        Rat c = datum->pairing(b, theta);
        k += c * c;
    }
    cache[key] = k;
    return k;
}

// Dynkin index of a simple subalgebra whose abstract type is known:
// i(h,g) = K_g(x,x) / K_h(x,x) with K_h = (2/k_h) Killing_h.
Rat dynkin_index_raw(const Subalgebra& h, Series h_series, int h_rank) {
    const auto& g = h.algebra();
    Rat k_h = k_constant(h_series, h_rank);
    auto hb = h.space().basis_vectors();
    for (size_t i = 0; i < hb.size(); ++i) {
        Rat kh_x = killing_within(h, hb[i], hb[i]);
        if (kh_x == 0) continue;
        Rat num = g->form_K(hb[i], hb[i]);
        return num * k_h / (2 * kh_x);
    }
    for (size_t i = 0; i < hb.size(); ++i)
        for (size_t j = i + 1; j < hb.size(); ++j) {
            Vec x = hb[i] + hb[j];
            Rat kh_x = killing_within(h, x, x);
            if (kh_x == 0) continue;
            return g->form_K(x, x) * k_h / (2 * kh_x);
        }
    throw std::runtime_error("dynkin index: degenerate sample");
}

long dynkin_index(const Subalgebra& h, Series h_series, int h_rank) {
    Rat r = dynkin_index_raw(h, h_series, h_rank);
    if (r.get_den() != 1 || r <= 0)
        throw std::runtime_error("dynkin index not a positive integer: " + r.get_str());
    return r.get_num().get_si();
}

Rat module_index(const Subalgebra& h, const std::vector<Mat>& action_on_basis) {
    // l_h(U) = tr_U(x^2) / Killing_h(x,x) for x in h non-isotropic
    auto hb = h.space().basis_vectors();
    if (hb.size() != action_on_basis.size())
        throw std::runtime_error("module_index: action size mismatch");
    for (size_t i = 0; i < hb.size(); ++i) {
        Rat kh = killing_within(h, hb[i], hb[i]);
        if (kh == 0) continue;
        Rat tr = mat_trace(action_on_basis[i] * action_on_basis[i]);
        return tr / kh;
    }
    // mix two basis vectors
    for (size_t i = 0; i < hb.size(); ++i)
        for (size_t j = i + 1; j < hb.size(); ++j) {
            Vec x = hb[i] + hb[j];
            Rat kh = killing_within(h, x, x);
            if (kh == 0) continue;
            Mat a = action_on_basis[i] + action_on_basis[j];
            return mat_trace(a * a) / kh;
        }
    throw std::runtime_error("module_index: degenerate Killing form");
}

// s is sl2 inside h of known simple type: index-1 iff long-root sl2
// (Lemma-level equivalence; index computed by Killing-form ratios).
bool sl2_long_root_test(const Subalgebra& s, const Subalgebra& h, Series h_series, int h_rank) {
    if (s.dim() != 3) throw std::runtime_error("sl2_long_root_test: dim != 3");
    // i(s,h) = K_h(x,x)/K_s(x,x) with both forms intrinsic:
    // K_h = (2/k_h) Killing_h, K_s = (2/k_s) Killing_s, k_s = k(A1) = 8.
    Rat k_h = k_constant(h_series, h_rank);
    Rat k_s = k_constant(Series::A, 1);
    auto sb = s.space().basis_vectors();
    for (size_t i = 0; i < sb.size(); ++i) {
        Rat ks_x = killing_within(s, sb[i], sb[i]);
        if (ks_x == 0) continue;
        Rat kh_x = killing_within(h, sb[i], sb[i]);
        Rat idx = (kh_x / k_h) / (ks_x / k_s);
        return idx == 1;
    }
    for (size_t i = 0; i < sb.size(); ++i)
        for (size_t j = i + 1; j < sb.size(); ++j) {
            Vec x = sb[i] + sb[j];
            Rat ks_x = killing_within(s, x, x);
            if (ks_x == 0) continue;
            Rat kh_x = killing_within(h, x, x);
            return (kh_x / k_h) / (ks_x / k_s) == 1;
        }
    throw std::runtime_error("sl2_long_root_test: degenerate sample");
}

std::vector<size_t> derived_series_dims(const Subalgebra& h) {
    std::vector<size_t> dims;
    Subalgebra cur = h;
    dims.push_back(cur.dim());
    while (cur.dim() > 0) {
        Subalgebra nxt = derived(cur);
        if (nxt.dim() == cur.dim()) break;
        dims.push_back(nxt.dim());
        cur = nxt;
    }
    return dims;
}

std::vector<size_t> lower_central_dims(const Subalgebra& h) {
    std::vector<size_t> dims;
    Subalgebra cur = h;
    dims.push_back(cur.dim());
    while (cur.dim() > 0) {
        // [h, cur]
        std::vector<Vec> gens;
        for (auto& a : h.space().basis_vectors())
            for (auto& b : cur.space().basis_vectors())
                gens.push_back(h.algebra()->bracket(a, b));
        Subalgebra nxt(h.algebra(), Subspace::span(h.algebra()->dim(), gens));
        if (nxt.dim() == cur.dim()) break;
        dims.push_back(nxt.dim());
        cur = nxt;
    }
    return dims;
}

size_t generic_centralizer_dim(const Subalgebra& h, uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> d(-7, 7);
    auto hb = h.space().basis_vectors();
    if (hb.empty()) return 0;
    size_t best = h.dim();
    for (int trial = 0; trial < 4; ++trial) {
        Vec x = zero_vec(h.algebra()->dim());
        for (auto& v : hb) x += Rat(d(rng)) * v;
        // dim ker(ad x |_h)
        std::vector<Vec> rows;
        for (auto& v : hb) {
            Vec br = h.algebra()->bracket(x, v);
            auto c = h.space().coordinates(br);
            if (!c) throw std::runtime_error("generic_centralizer: not closed");
            rows.push_back(*c);
        }
        size_t kdim = kernel(Mat::from_rows(rows).transposed()).dim();
        best = std::min(best, kdim);
    }
    return best;
}

Fingerprint fingerprint(const Subalgebra& h) {
    Fingerprint f;
    f.dim = h.dim();
    f.generic_centralizer = generic_centralizer_dim(h);
    f.derived_dims = derived_series_dims(h);
    // killing rank
    auto hb = h.space().basis_vectors();
    Mat k(hb.size(), hb.size());
    for (size_t i = 0; i < hb.size(); ++i)
        for (size_t j = 0; j < hb.size(); ++j) k(i, j) = killing_within(h, hb[i], hb[j]);
    Mat kc = k;
    f.killing_rank = rref(kc).size();
    return f;
}

std::string Fingerprint::str() const {
    std::ostringstream os;
    os << "dim=" << dim << " rk~" << generic_centralizer << " kr=" << killing_rank << " ds=[";
    for (size_t i = 0; i < derived_dims.size(); ++i) os << (i ? "," : "") << derived_dims[i];
    os << "]";
    return os.str();
}

}  // namespace weylkit::liealg
