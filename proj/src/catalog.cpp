#include "weylkit/catalog.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>
#include <stdexcept>

namespace weylkit::catalog {

using liealg::ChevalleyAlgebra;
using repkit::embed_abstract;
using repkit::embed_whole;
using rootsys::RootDatum;

namespace {

std::map<std::string, AlgebraPtr>& algebra_cache() {
    static std::map<std::string, AlgebraPtr> c;
    return c;
}

}  // namespace

AlgebraPtr algebra_of(const RootDatumPtr& datum) {
    auto& c = algebra_cache();
    auto it = c.find(datum->name());
    if (it != c.end() && it->second->datum()->roots().size() == datum->roots().size())
        return it->second;
    auto a = ChevalleyAlgebra::build(datum);
    c[datum->name()] = a;
    return a;
}

RootDatumPtr datum_by_name(const std::string& name) {
    std::vector<RootDatumPtr> parts;
    std::string cur;
    std::istringstream is(name);
    std::string tok;
    while (std::getline(is, tok, 'x')) {
        if (tok.empty()) continue;
        RootDatumPtr d;
        if (tok == "G2" || tok == "g2") d = RootDatum::simple(Series::G2, 2);
        else if (tok == "F4" || tok == "f4") d = RootDatum::simple(Series::F4, 4);
        else if (tok == "E6" || tok == "e6") d = RootDatum::simple(Series::E6, 6);
        else if (tok == "E7" || tok == "e7") d = RootDatum::simple(Series::E7, 7);
        else if (tok == "E8" || tok == "e8") d = RootDatum::simple(Series::E8, 8);
        else if (tok.rfind("sl", 0) == 0) {
            int n = std::stoi(tok.substr(2));
            if (n < 2) throw std::runtime_error("sl rank");
            d = RootDatum::simple(Series::A, n - 1);
        } else if (tok.rfind("sp", 0) == 0) {
            int n = std::stoi(tok.substr(2));
            if (n % 2 || n < 4) throw std::runtime_error("sp_n needs even n >= 4");
            d = RootDatum::simple(Series::C, n / 2);
        } else if (tok.rfind("so", 0) == 0) {
            int n = std::stoi(tok.substr(2));
            if (n == 3) d = RootDatum::simple(Series::A, 1);
            else if (n == 5) d = RootDatum::simple(Series::B, 2);
            else if (n == 6) d = RootDatum::simple(Series::D, 3);
            else if (n >= 7 && n % 2) d = RootDatum::simple(Series::B, (n - 1) / 2);
            else if (n >= 8) d = RootDatum::simple(Series::D, n / 2);
            else throw std::runtime_error("unsupported so_n: " + tok);
        } else if (tok[0] == 'A' || tok[0] == 'B' || tok[0] == 'C' || tok[0] == 'D') {
            d = RootDatum::simple(rootsys::series_parse(tok.substr(0, 1)),
                                  std::stoi(tok.substr(1)));
        } else {
            throw std::runtime_error("cannot parse algebra name " + tok);
        }
        parts.push_back(d);
    }
    if (parts.empty()) throw std::runtime_error("empty algebra name");
    return RootDatum::product(parts);
}

AlgebraPtr algebra_by_name(const std::string& name) { return algebra_of(datum_by_name(name)); }

Vec fundamental_weight(const RootDatumPtr& d, size_t i1) {
    if (i1 < 1 || i1 > d->rank()) throw std::runtime_error("fundamental weight index");
    return d->fundamental_weights()[i1 - 1];
}

// --- factor helpers -----------------------------------------------------------

namespace {

size_t simple_offset_of_factor(const RootDatumPtr& d, size_t f) {
    size_t off = 0;
    for (size_t i = 0; i < f; ++i) {
        // count simples of factor i
        for (auto& a : d->simple_roots())
            if ((size_t)d->factor_of_root(a) == i) ++off;
    }
    return off;
}

size_t factor_rank(const RootDatumPtr& d, size_t f) {
    size_t r = 0;
    for (auto& a : d->simple_roots())
        if ((size_t)d->factor_of_root(a) == f) ++r;
    return r;
}

}  // namespace

Subalgebra factor_subalgebra(const AlgebraPtr& g, size_t f) {
    std::vector<Vec> gens;
    const auto& d = g->datum();
    size_t off = simple_offset_of_factor(d, f), fr = factor_rank(d, f);
    for (size_t i = 0; i < fr; ++i) {
        Vec v(g->dim(), Rat(0));
        v[off + i] = 1;
        gens.push_back(v);
    }
    for (size_t k = 0; k < d->roots().size(); ++k)
        if ((size_t)d->factor_of_root(d->roots()[k]) == f) {
            Vec v(g->dim(), Rat(0));
            v[g->rank() + k] = 1;
            gens.push_back(v);
        }
    return Subalgebra(g, Subspace::span(g->dim(), gens), "factor");
}

// Embedded copy of a factor: inner abstract simple algebra, mapped onto the
// coordinate block of the factor.
Embedded embed_factor(const AlgebraPtr& g, size_t f) {
    const auto& d = g->datum();
    const auto& fac = d->factors()[f];
    RootDatumPtr ds = RootDatum::simple(fac.series, fac.rank);
    AlgebraPtr inner = algebra_of(ds);
    Mat iota(g->dim(), inner->dim());
    size_t off = simple_offset_of_factor(d, f);
    for (size_t i = 0; i < ds->rank(); ++i) iota(off + i, i) = 1;
    for (size_t k = 0; k < ds->roots().size(); ++k) {
        // corresponding root of g: shift coordinates by factor offset
        Vec r(d->ambient_dim(), Rat(0));
        const Vec& rs = ds->roots()[k];
        for (size_t j = 0; j < rs.size(); ++j) r[fac.offset + j] = rs[j];
        int gi = d->root_index(r);
        if (gi < 0) throw std::runtime_error("embed_factor: root misalignment");
        iota(g->rank() + gi, ds->rank() + k) = 1;
    }
    Embedded e;
    e.inner = inner;
    e.outer = g;
    e.iota = iota;
    e.image = factor_subalgebra(g, f);
    return e;
}

// express an inner weight as an ambient eps-vector pairing correctly with
// every Cartan element of the image
Vec ambient_weight(const Embedded& e, const Vec& w_inner) {
    auto cart = e.image.cartan_part().basis_vectors();
    if (cart.empty()) return zero_vec(e.outer->datum()->ambient_dim());
    std::vector<Vec> us;
    Vec vals(cart.size());
    for (size_t j = 0; j < cart.size(); ++j) {
        auto pc = e.pull_back(cart[j]);
        if (!pc) throw std::runtime_error("ambient_weight: cartan pull-back failed");
        vals[j] = e.inner->weight_eval(w_inner, *pc);
        us.push_back(e.outer->eps_of_cartan(cart[j]));
    }
    Mat gram(us.size(), us.size());
    for (size_t i = 0; i < us.size(); ++i)
        for (size_t j = 0; j < us.size(); ++j)
            gram(i, j) = e.outer->datum()->inner(us[i], us[j]);
    auto x = solve(gram, vals);
    if (!x) throw std::runtime_error("ambient_weight: degenerate cartan frame");
    Vec w = zero_vec(e.outer->datum()->ambient_dim());
    for (size_t i = 0; i < us.size(); ++i) w += (*x)[i] * us[i];
    return w;
}

// --- tautological modules -------------------------------------------------------

namespace {

struct TauData {
    std::vector<Vec> weights;          // weight of each coordinate (ambient eps coords)
    std::vector<Mat> act;              // per abstract basis element
};

// matrix-unit root vector candidates for the fixed classical realizations
Mat classical_root_matrix(Series s, int rank, const RootDatumPtr& d, const Vec& root,
                          const std::vector<Vec>& w) {
    size_t N = w.size();
    auto prime = [&](size_t i) { return N - 1 - i; };
    if (s == Series::A) {
        for (size_t a = 0; a < N; ++a)
            for (size_t b = 0; b < N; ++b) {
                if (a == b) continue;
                if (d->canonicalize(w[a] - w[b]) == root) {
                    Mat m(N, N);
                    m(a, b) = 1;
                    return m;
                }
            }
        throw std::runtime_error("A root matrix not found");
    }
    if (s == Series::B || s == Series::D) {
        for (size_t a = 0; a < N; ++a)
            for (size_t b = 0; b < N; ++b) {
                if (a == b || b == prime(a)) continue;
                if (w[a] - w[b] == root) {
                    Mat m(N, N);
                    m(a, b) = 1;
                    m(prime(b), prime(a)) -= 1;
                    return m;
                }
            }
        throw std::runtime_error("BD root matrix not found");
    }
    if (s == Series::C) {
        size_t n = (size_t)rank;
        auto sgn = [&](size_t i) { return i < n ? Rat(1) : Rat(-1); };
        for (size_t a = 0; a < N; ++a) {
            if (w[a] + w[a] == root) {  // 2 eps_a
                Mat m(N, N);
                m(a, prime(a)) = 1;
                return m;
            }
        }
        for (size_t a = 0; a < N; ++a)
            for (size_t b = 0; b < N; ++b) {
                if (a == b) continue;
                if (b == prime(a)) {
                    if (w[a] - w[b] == root) {  // also 2eps
                        Mat m(N, N);
                        m(a, b) = 1;
                        return m;
                    }
                    continue;
                }
                if (w[a] - w[b] == root) {
                    Mat m(N, N);
                    m(a, b) = 1;
                    m(prime(b), prime(a)) -= sgn(prime(b)) * sgn(prime(a));
                    return m;
                }
            }
        throw std::runtime_error("C root matrix not found");
    }
    throw std::runtime_error("classical_root_matrix: not classical");
}

TauData build_tau(Series s, int rank) {
    RootDatumPtr d = RootDatum::simple(s, rank);
    AlgebraPtr a = algebra_of(d);
    size_t n = (size_t)rank;
    std::vector<Vec> w;
    size_t dim = d->ambient_dim();
    auto eps = [&](size_t i) {
        Vec v = zero_vec(dim);
        v[i] = 1;
        return d->canonicalize(v);
    };
    switch (s) {
        case Series::A:
            for (size_t i = 0; i < n + 1; ++i) w.push_back(eps(i));
            break;
        case Series::B: {
            for (size_t i = 0; i < n; ++i) w.push_back(eps(i));
            w.push_back(zero_vec(dim));
            for (size_t i = 0; i < n; ++i) w.push_back(Rat(-1) * eps(n - 1 - i));
            break;
        }
        case Series::C:
        case Series::D: {
            for (size_t i = 0; i < n; ++i) w.push_back(eps(i));
            for (size_t i = 0; i < n; ++i) w.push_back(Rat(-1) * eps(n - 1 - i));
            break;
        }
        default:
            throw std::runtime_error("tautological module: not classical");
    }
    size_t N = w.size();
    // raw matrices and consistency scalars
    const auto& roots = d->roots();
    std::map<int, Mat> raw;
    for (size_t k = 0; k < roots.size(); ++k)
        raw[(int)k] = classical_root_matrix(s, rank, d, roots[k], w);
    // Cartan action
    std::vector<Mat> act(a->dim(), Mat(N, N));
    for (size_t i = 0; i < d->rank(); ++i) {
        Mat m(N, N);
        for (size_t p = 0; p < N; ++p)
            m(p, p) = is_zero(w[p]) ? Rat(0) : d->pairing(w[p], d->simple_roots()[i]);
        act[i] = m;
    }
    // scalar solve: c on positive roots by height, then negatives
    std::map<int, Rat> c;
    auto ridx = [&](const Vec& r) { return d->root_index(r); };
    auto coroot_action = [&](const Vec& gamma) {
        Mat m(N, N);
        for (size_t p = 0; p < N; ++p)
            if (!is_zero(w[p])) m(p, p) = d->pairing(w[p], gamma);
        return m;
    };
    auto proportional = [&](const Mat& x, const Mat& y) -> std::optional<Rat> {
        // x = t*y
        Rat t(0);
        bool set = false;
        for (size_t i = 0; i < x.a.size(); ++i) {
            if (y.a[i] == 0) {
                if (x.a[i] != 0) return std::nullopt;
                continue;
            }
            Rat q = x.a[i] / y.a[i];
            if (!set) { t = q; set = true; }
            else if (q != t) return std::nullopt;
        }
        if (!set) return Rat(0);
        return t;
    };
    for (auto& gamma : d->positive_roots()) {
        Vec cg = d->simple_root_coordinates(gamma);
        Rat height(0);
        for (auto& x : cg) height += x;
        int ig = ridx(gamma), ing = ridx(Rat(-1) * gamma);
        if (height == 1) {
            c[ig] = 1;
            // [m_a, m_{-a}] = t * coroot_action
            Mat br = commutator(raw[ig], raw[ing]);
            auto t = proportional(br, coroot_action(gamma));
            if (!t || *t == 0) throw std::runtime_error("tau: simple sl2 mismatch");
            c[ing] = 1 / *t;
            continue;
        }
        // extraspecial decomposition
        bool done = false;
        for (auto& alpha : d->positive_roots()) {
            Vec beta = gamma - alpha;
            int ia = ridx(alpha), ib = ridx(beta);
            if (ib < 0 || !c.count(ia) || !c.count(ib)) continue;
            Rat nab = a->structure_constant(alpha, beta);
            if (nab == 0) continue;
            Mat br = commutator(raw[ia], raw[ib]);
            auto t = proportional(br, raw[ig]);
            if (!t || *t == 0) throw std::runtime_error("tau: bracket not proportional");
            c[ig] = c[ia] * c[ib] * *t / nab;
            // negative side
            int ina = ridx(Rat(-1) * alpha), inb = ridx(Rat(-1) * beta);
            Rat nab2 = a->structure_constant(Rat(-1) * alpha, Rat(-1) * beta);
            Mat br2 = commutator(raw[ina], raw[inb]);
            auto t2 = proportional(br2, raw[ing]);
            if (!t2 || *t2 == 0) throw std::runtime_error("tau: negative bracket");
            c[ing] = c[ina] * c[inb] * *t2 / nab2;
            done = true;
            break;
        }
        if (!done) throw std::runtime_error("tau: no decomposition");
    }
    for (size_t k = 0; k < roots.size(); ++k) act[d->rank() + k] = c[(int)k] * raw[(int)k];
    TauData td;
    td.weights = w;
    td.act = act;
    return td;
}

std::map<std::pair<Series, int>, TauData>& tau_cache() {
    static std::map<std::pair<Series, int>, TauData> c;
    return c;
}

const TauData& tau_of(Series s, int rank) {
    auto key = std::make_pair(s, rank);
    auto& c = tau_cache();
    auto it = c.find(key);
    if (it != c.end()) return it->second;
    c[key] = build_tau(s, rank);
    // verify homomorphism once
    RootDatumPtr d = RootDatum::simple(s, rank);
    AlgebraPtr a = algebra_of(d);
    Module m;
    m.g = a;
    m.h = Subalgebra::whole(a);
    m.vdim = c[key].weights.size();
    m.act = c[key].act;  // whole-algebra RREF basis is the coordinate basis
    if (!m.check_bracket_compatible())
        throw std::runtime_error("tau verification failed for " + d->name());
    return c[key];
}

}  // namespace

Module tautological_module(const AlgebraPtr& g_simple) {
    return tautological_module(g_simple, 0);
}

Module tautological_module(const AlgebraPtr& g, size_t f) {
    const auto& fac = g->datum()->factors()[f];
    const TauData& td = tau_of(fac.series, fac.rank);
    Embedded e = embed_factor(g, f);
    // transport: image RREF basis is the coordinate basis of the block, in
    // increasing index order which matches the inner basis order through iota
    Module m;
    m.g = g;
    m.h = e.image;
    m.vdim = td.weights.size();
    for (auto& bv : e.image.space().basis_vectors()) {
        auto c = e.pull_back(bv);
        if (!c) throw std::runtime_error("tau transport failed");
        Mat x(m.vdim, m.vdim);
        for (size_t i = 0; i < c->size(); ++i)
            if ((*c)[i] != 0) x = x + (*c)[i] * td.act[i];
        m.act.push_back(x);
    }
    for (auto& w : td.weights) {
        Vec wa = zero_vec(g->datum()->ambient_dim());
        for (size_t j = 0; j < w.size(); ++j) wa[fac.offset + j] = w[j];
        m.wts.push_back(g->datum()->canonicalize(wa));
    }
    m.tag = "tau";
    return m;
}

// --- abstract highest weight models ---------------------------------------------

namespace {

// cyclic submodule generated by a vector
Module generated_submodule(const Module& m, const Vec& v) {
    std::vector<Vec> basis{v};
    Subspace cur = Subspace::span(m.vdim, basis);
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<Vec> gens = cur.basis_vectors();
        for (auto& a : m.act)
            for (auto& b : cur.basis_vectors()) gens.push_back(mat_apply(a, b));
        Subspace next = Subspace::span(m.vdim, gens);
        if (next.dim() != cur.dim()) { cur = next; grew = true; }
    }
    return submodule(m, cur);
}

// highest vector of weight lambda inside a module over the whole algebra
std::optional<Vec> highest_vector_at(const AlgebraPtr& a, const Module& m, const Vec& lambda) {
    const auto& d = a->datum();
    std::vector<Vec> rows;
    for (auto& al : d->simple_roots()) {
        Vec ev(a->dim(), Rat(0));
        ev[a->root_vector_index(al)] = 1;
        Mat op = m.act_of(ev);
        for (size_t i = 0; i < op.rows; ++i) rows.push_back(op.row(i));
    }
    // weight condition
    for (size_t i = 0; i < a->rank(); ++i) {
        Vec hi(a->dim(), Rat(0));
        hi[i] = 1;
        Mat op = m.act_of(hi) - d->pairing(lambda, d->simple_roots()[i]) * Mat::identity(m.vdim);
        for (size_t r = 0; r < op.rows; ++r) rows.push_back(op.row(r));
    }
    Subspace k = kernel(Mat::from_rows(rows));
    if (k.dim() == 0) return std::nullopt;
    return k.basis_vectors()[0];
}

Module whole_module(const AlgebraPtr& a, std::vector<Mat> act, size_t vdim, std::string tag) {
    Module m;
    m.g = a;
    m.h = Subalgebra::whole(a);
    m.vdim = vdim;
    m.act = std::move(act);
    m.tag = std::move(tag);
    return m;
}

Module g2_seven_dim();  // forward

// build the module with highest weight lambda over the abstract simple
// algebra of the given type
Module abstract_hw_module(Series s, int rank, const Vec& lambda, size_t budget) {
    RootDatumPtr d = RootDatum::simple(s, rank);
    AlgebraPtr a = algebra_of(d);
    Vec lam = d->canonicalize(lambda);
    Rat dim = repkit::weyl_dimension(d, lam);
    if (dim > Rat((long)budget))
        throw std::runtime_error("hw model: dimension budget exceeded");
    if (is_zero(lam)) return repkit::trivial_module(a, Subalgebra::whole(a), 1);
    // weight-orbit model if applicable
    {
        auto ws = repkit::weight_system(d, lam);
        bool orbit_ok = true;
        for (auto& [w, mult] : ws)
            if (mult != 1) { orbit_ok = false; break; }
        if (orbit_ok) {
            auto orb = repkit::weyl_orbit(d, lam);
            if (orb.size() == ws.size()) {
                bool pair_ok = true;
                for (auto& mu : orb) {
                    for (auto& r : d->roots()) {
                        Rat p = d->pairing(mu, r);
                        if (p != 0 && p != 1 && p != -1) { pair_ok = false; break; }
                    }
                    if (!pair_ok) break;
                }
                if (pair_ok) return repkit::weight_orbit_module(embed_whole(a), lam);
            }
        }
    }
    // fundamental-weight special constructions
    const auto& fw = d->fundamental_weights();
    auto is_fw = [&](size_t i) { return lam == d->canonicalize(fw[i]); };
    auto tau_module_weighted = [&]() {
        const TauData& td = tau_of(s, rank);
        Module tau = whole_module(a, td.act, td.weights.size(), "tau");
        tau.wts = td.weights;
        return tau;
    };
    if (s == Series::A || s == Series::B || s == Series::C || s == Series::D) {
        if (is_fw(0)) return tau_module_weighted();
        for (size_t k = 2; k <= (size_t)rank; ++k) {
            if ((size_t)k > d->rank() || !is_fw(k - 1)) continue;
            Module tau = tau_module_weighted();
            Module wk = repkit::exterior_power(tau, k);
            if (s == Series::C) {
                auto hv = highest_vector_at(a, wk, lam);
                if (!hv) throw std::runtime_error("hw model: C wedge hv missing");
                return generated_submodule(wk, *hv);
            }
            // for A, B, D the k-th wedge is irreducible in the needed range
            if (repkit::weyl_dimension(d, lam) == Rat((long)wk.vdim)) return wk;
            auto hv = highest_vector_at(a, wk, lam);
            if (!hv) throw std::runtime_error("hw model: wedge hv missing");
            return generated_submodule(wk, *hv);
        }
    }
    if (s == Series::G2 && is_fw(0)) return g2_seven_dim();
    // adjoint
    {
        Vec theta = d->positive_roots().back();
        if (lam == d->canonicalize(theta)) return repkit::adjoint_module(a);
    }
    // dual of a constructible module
    {
        Vec dual = repkit::dual_highest_weight(d, lam);
        if (!(dual == lam)) {
            // avoid infinite recursion: only when the dual is "smaller"
            if (dual < lam) {
                Module md = abstract_hw_module(s, rank, dual, budget);
                return dual_module(md);
            }
        }
    }
    // tensor split: lambda = fw_i + rest
    for (size_t i = 0; i < d->rank(); ++i) {
        Rat ci = d->pairing(lam, d->simple_roots()[i]);
        if (ci <= 0) continue;
        Vec rest = d->canonicalize(lam - fw[i]);
        if (!repkit::is_dominant(d, rest)) continue;
        try {
            Module m1 = abstract_hw_module(s, rank, fw[i], budget);
            Module m2 = abstract_hw_module(s, rank, rest, budget);
            Module tp = repkit::tensor(m1, m2);
            if (tp.vdim > 4 * budget) continue;
            auto hv = highest_vector_at(a, tp, lam);
            if (!hv) continue;
            return generated_submodule(tp, *hv);
        } catch (const std::exception&) {
            continue;
        }
    }
    throw std::runtime_error("hw model: no construction for " + d->name());
}

std::map<std::tuple<Series, int, Vec>, Module>& hw_cache() {
    static std::map<std::tuple<Series, int, Vec>, Module> c;
    return c;
}

const Module& abstract_module_of(Series s, int rank, const Vec& lambda, size_t budget) {
    RootDatumPtr d = RootDatum::simple(s, rank);
    Vec lam = d->canonicalize(lambda);
    auto key = std::make_tuple(s, rank, lam);
    auto& c = hw_cache();
    auto it = c.find(key);
    if (it != c.end()) return it->second;
    c[key] = abstract_hw_module(s, rank, lam, budget);
    return c[key];
}

// The 7-dimensional G2 module via the octonion-style embedding in so7:
// build so7's 8-dim spinor, take the annihilator of v_hw + v_lw, restrict
// tau of so7, and transport along the abstract identification.
Module g2_seven_dim() {
    AlgebraPtr so7 = algebra_by_name("so7");
    Embedded whole = embed_whole(so7);
    Vec pi3 = so7->datum()->fundamental_weights()[2];
    Module spin = repkit::weight_orbit_module(whole, pi3);
    // highest and lowest weight vectors in the orbit basis: recompute order
    // identical to weight_orbit_module: weights sorted by std::set ordering;
    // find indices by solving for weights
    auto wts = repkit::weyl_orbit(so7->datum(), pi3);
    Vec hw = pi3;
    Vec lw = Rat(-1) * repkit::dominant_representative(so7->datum(), Rat(-1) * pi3);
    size_t ih = SIZE_MAX, il = SIZE_MAX;
    for (size_t i = 0; i < wts.size(); ++i) {
        if (wts[i] == so7->datum()->canonicalize(hw)) ih = i;
        if (wts[i] == so7->datum()->canonicalize(lw)) il = i;
    }
    if (ih == SIZE_MAX || il == SIZE_MAX) throw std::runtime_error("g2: spinor weights");
    Vec v = zero_vec(spin.vdim);
    v[ih] = 1;
    v[il] = 1;
    Subalgebra g2 = annihilator(spin, {v});
    if (g2.dim() != 14) throw std::runtime_error("g2: annihilator dim " + std::to_string(g2.dim()));
    Embedded eg2 = embed_abstract(so7, g2);
    Module tau7 = tautological_module(so7);
    // action of abstract basis through the embedding
    std::vector<Mat> act(eg2.inner->dim());
    for (size_t i = 0; i < eg2.inner->dim(); ++i) {
        Vec b(eg2.inner->dim(), Rat(0));
        b[i] = 1;
        act[i] = tau7.act_of(eg2.embed(b));
    }
    Module out = whole_module(eg2.inner, act, tau7.vdim, "g2_7");
    // weights over the abstract G2 Cartan: the action of the coroot basis is
    // diagonal on the so7 weight basis
    {
        const auto& dg = eg2.inner->datum();
        for (size_t j = 0; j < out.vdim; ++j) {
            Vec vals(eg2.inner->rank());
            for (size_t i = 0; i < eg2.inner->rank(); ++i) {
                Vec hi(eg2.inner->dim(), Rat(0));
                hi[i] = 1;
                Mat op = out.act[i];  // basis order: coroots first
                vals[i] = op(j, j);
            }
            Vec w = zero_vec(dg->ambient_dim());
            for (size_t i = 0; i < eg2.inner->rank(); ++i)
                w += vals[i] * dg->fundamental_weights()[i];
            out.wts.push_back(dg->canonicalize(w));
        }
    }
    return out;
}

}  // namespace

Module hw_model(const Embedded& e, const Vec& lambda_inner, size_t budget) {
    const auto& d = e.inner->datum();
    Vec lam = d->canonicalize(lambda_inner);
    // split over factors
    const auto& facs = d->factors();
    // per-factor lambda
    std::vector<Module> parts;
    for (size_t f = 0; f < facs.size(); ++f) {
        Vec lf = zero_vec(d->ambient_dim());
        for (size_t j = 0; j < facs[f].dim; ++j) lf[facs[f].offset + j] = lam[facs[f].offset + j];
        // express in the simple factor's own coordinates
        RootDatumPtr ds = RootDatum::simple(facs[f].series, facs[f].rank);
        Vec lf_local(ds->ambient_dim());
        for (size_t j = 0; j < facs[f].dim; ++j) lf_local[j] = lf[facs[f].offset + j];
        const Module& abs = abstract_module_of(facs[f].series, facs[f].rank,
                                               ds->canonicalize(lf_local), budget);
        // lift to the product's abstract algebra acting through factor f
        AlgebraPtr prod = e.inner;
        Embedded ef = embed_factor(prod, f);
        Module lifted;
        lifted.g = prod;
        lifted.h = Subalgebra::whole(prod);
        lifted.vdim = abs.vdim;
        for (size_t i = 0; i < prod->dim(); ++i) {
            Vec b(prod->dim(), Rat(0));
            b[i] = 1;
            auto c = ef.pull_back(b);
            Mat x(abs.vdim, abs.vdim);
            if (c) {
                for (size_t j = 0; j < c->size(); ++j)
                    if ((*c)[j] != 0) x = x + (*c)[j] * abs.act[j];
            }
            lifted.act.push_back(x);
        }
        if (abs.has_weights()) {
            for (auto& w : abs.wts) {
                Vec wa = zero_vec(d->ambient_dim());
                for (size_t j = 0; j < w.size(); ++j) wa[facs[f].offset + j] = w[j];
                lifted.wts.push_back(d->canonicalize(wa));
            }
        }
        lifted.tag = abs.tag;
        parts.push_back(lifted);
    }
    Module total = parts[0];
    for (size_t f = 1; f < parts.size(); ++f) total = repkit::tensor(total, parts[f]);
    if (total.vdim > budget) throw std::runtime_error("hw model: product budget");
    // transport through iota to a module over the image
    Module m;
    m.g = e.outer;
    m.h = e.image;
    m.vdim = total.vdim;
    for (auto& bv : e.image.space().basis_vectors()) {
        auto c = e.pull_back(bv);
        if (!c) throw std::runtime_error("hw model: pull back failed");
        Mat x(m.vdim, m.vdim);
        for (size_t i = 0; i < c->size(); ++i)
            if ((*c)[i] != 0) x = x + (*c)[i] * total.act[i];
        m.act.push_back(x);
    }
    if (total.has_weights()) {
        Embedded inner_whole = embed_whole(e.inner);
        for (auto& w : total.wts) {
            // w is an inner eps-weight; transport through e
            auto cart = e.image.cartan_part().basis_vectors();
            (void)inner_whole;
            m.wts.push_back(ambient_weight(e, w));
            (void)cart;
        }
    }
    m.tag = total.tag;
    return m;
}

Module hw_model_sum(const Embedded& e, const std::vector<Vec>& lambdas, size_t budget) {
    if (lambdas.empty()) return repkit::trivial_module(e.outer, e.image, 0);
    Module m = hw_model(e, lambdas[0], budget);
    for (size_t i = 1; i < lambdas.size(); ++i)
        m = repkit::direct_sum(m, hw_model(e, lambdas[i], budget));
    return m;
}

// --- subalgebra constructors -----------------------------------------------------

Subalgebra root_subalgebra(const AlgebraPtr& g, const std::vector<Vec>& roots) {
    std::vector<Vec> gens;
    for (auto& r : roots) {
        gens.push_back(g->root_vector(r));
        gens.push_back(g->root_vector(Rat(-1) * r));
    }
    return liealg::bracket_closure(Subalgebra::span_of(g, gens, "roots"));
}

Subalgebra antistandard_parabolic(const AlgebraPtr& g, const std::vector<size_t>& levi) {
    std::vector<Vec> gens;
    for (size_t i = 0; i < g->rank(); ++i) {
        Vec h(g->dim(), Rat(0));
        h[i] = 1;
        gens.push_back(h);
    }
    const auto& d = g->datum();
    for (auto& r : d->positive_roots()) gens.push_back(g->root_vector(Rat(-1) * r));
    for (auto i : levi) gens.push_back(g->root_vector(d->simple_roots()[i]));
    return liealg::bracket_closure(Subalgebra::span_of(g, gens, "q-"));
}

Subalgebra standard_levi(const AlgebraPtr& g, const std::vector<size_t>& levi) {
    std::vector<Vec> gens;
    for (size_t i = 0; i < g->rank(); ++i) {
        Vec h(g->dim(), Rat(0));
        h[i] = 1;
        gens.push_back(h);
    }
    const auto& d = g->datum();
    for (auto i : levi) {
        gens.push_back(g->root_vector(d->simple_roots()[i]));
        gens.push_back(g->root_vector(Rat(-1) * d->simple_roots()[i]));
    }
    return liealg::bracket_closure(Subalgebra::span_of(g, gens, "levi"));
}

Subalgebra borel_minus(const AlgebraPtr& g) { return antistandard_parabolic(g, {}); }

Subalgebra nilradical_minus(const AlgebraPtr& g) {
    std::vector<Vec> gens;
    for (auto& r : g->datum()->positive_roots()) gens.push_back(g->root_vector(Rat(-1) * r));
    return Subalgebra::span_of(g, gens, "u-");
}

Subalgebra cartan_subalgebra(const AlgebraPtr& g) {
    std::vector<Vec> gens;
    for (size_t i = 0; i < g->rank(); ++i) {
        Vec h(g->dim(), Rat(0));
        h[i] = 1;
        gens.push_back(h);
    }
    return Subalgebra::span_of(g, gens, "t");
}

Subalgebra annihilator(const Module& m, const std::vector<Vec>& vectors) {
    std::vector<Vec> rows;
    auto hb = m.h.space().basis_vectors();
    if (vectors.empty()) return m.h;
    for (auto& v : vectors) {
        // columns indexed by h basis: act[i] v
        std::vector<Vec> cols;
        for (auto& a : m.act) cols.push_back(mat_apply(a, v));
        Mat s = Mat::from_rows(cols).transposed();
        for (size_t r = 0; r < s.rows; ++r) rows.push_back(s.row(r));
    }
    Subspace coeff = kernel(Mat::from_rows(rows));
    std::vector<Vec> gens;
    for (auto& c : coeff.basis_vectors()) {
        Vec x = zero_vec(m.g->dim());
        for (size_t i = 0; i < hb.size(); ++i) x += c[i] * hb[i];
        gens.push_back(x);
    }
    return Subalgebra(m.g, Subspace::span(m.g->dim(), gens), "ann");
}

Subalgebra subspace_stabilizer(const Module& m, const Subspace& u) {
    std::vector<Vec> rows;
    auto hb = m.h.space().basis_vectors();
    const Mat& ub = u.basis();
    size_t n = m.vdim;
    auto reduce = [&](Vec v) {
        for (size_t i = 0; i < ub.rows; ++i) {
            size_t pc = 0;
            while (pc < n && ub(i, pc) == 0) ++pc;
            if (pc < n && v[pc] != 0) {
                Rat f = v[pc];
                for (size_t j = 0; j < n; ++j) v[j] -= f * ub(i, j);
            }
        }
        return v;
    };
    for (auto& bu : u.basis_vectors()) {
        std::vector<Vec> cols;
        for (auto& a : m.act) cols.push_back(reduce(mat_apply(a, bu)));
        Mat s = Mat::from_rows(cols).transposed();
        for (size_t r = 0; r < s.rows; ++r) rows.push_back(s.row(r));
    }
    Subspace coeff = kernel(Mat::from_rows(rows));
    std::vector<Vec> gens;
    for (auto& c : coeff.basis_vectors()) {
        Vec x = zero_vec(m.g->dim());
        for (size_t i = 0; i < hb.size(); ++i) x += c[i] * hb[i];
        gens.push_back(x);
    }
    return Subalgebra(m.g, Subspace::span(m.g->dim(), gens), "stab");
}

namespace {

// ambient tau of a factor together with covector (row) conditions
Subalgebra annihilate_vectors_and_covectors(const AlgebraPtr& g, size_t f,
                                            const std::vector<size_t>& vecs,
                                            const std::vector<size_t>& covecs,
                                            const std::string& tag) {
    Module tau = tautological_module(g, f);
    if (vecs.empty() && covecs.empty()) {
        Subalgebra whole = tau.h;
        whole.set_tag(tag);
        return whole;
    }
    std::vector<Vec> rows;
    auto hb = tau.h.space().basis_vectors();
    for (auto j : vecs) {
        std::vector<Vec> cols;
        for (auto& a : tau.act) cols.push_back(a.col(j));
        Mat s = Mat::from_rows(cols).transposed();
        for (size_t r = 0; r < s.rows; ++r) rows.push_back(s.row(r));
    }
    for (auto i : covecs) {
        std::vector<Vec> cols;
        for (auto& a : tau.act) cols.push_back(a.row(i));
        Mat s = Mat::from_rows(cols).transposed();
        for (size_t r = 0; r < s.rows; ++r) rows.push_back(s.row(r));
    }
    Subspace coeff = kernel(Mat::from_rows(rows));
    std::vector<Vec> gens;
    for (auto& c : coeff.basis_vectors()) {
        Vec x = zero_vec(g->dim());
        for (size_t i = 0; i < hb.size(); ++i) x += c[i] * hb[i];
        gens.push_back(x);
    }
    return Subalgebra(g, Subspace::span(g->dim(), gens), tag);
}

}  // namespace

Subalgebra sl_block(const AlgebraPtr& g, size_t f, int k) {
    int n = g->datum()->factors()[f].rank + 1;
    if (k < 1 || k > n) throw std::runtime_error("sl_block range");
    std::vector<size_t> vs, cs;
    for (int i = 0; i < n - k; ++i) { vs.push_back(i); cs.push_back(i); }
    return annihilate_vectors_and_covectors(g, f, vs, cs, "sl:" + std::to_string(k));
}

// sl_k x sl_{n-k}: the lower-right k-block plus the upper-left (n-k)-block
Subalgebra sl_pair(const AlgebraPtr& g, size_t f, int k) {
    int n = g->datum()->factors()[f].rank + 1;
    if (k < 1 || k >= n) throw std::runtime_error("sl_pair range");
    std::vector<size_t> vs1, vs2;
    for (int i = 0; i < n - k; ++i) vs1.push_back(i);
    for (int i = n - k; i < n; ++i) vs2.push_back(i);
    Subalgebra a = annihilate_vectors_and_covectors(g, f, vs1, vs1, "x");
    Subalgebra b = annihilate_vectors_and_covectors(g, f, vs2, vs2, "y");
    Subalgebra s = sum(a, b);
    s.set_tag("slpair:" + std::to_string(k));
    return s;
}

// simple-root subalgebra by 1-based indices within the factor
Subalgebra simple_root_subalgebra(const AlgebraPtr& g, size_t f, const std::string& csv) {
    const auto& d = g->datum();
    size_t off = simple_offset_of_factor(d, f);
    std::vector<Vec> roots;
    std::istringstream is(csv);
    std::string tok;
    while (std::getline(is, tok, ',')) {
        long i = std::stol(tok);
        roots.push_back(d->simple_roots()[off + (size_t)i - 1]);
    }
    auto s = root_subalgebra(g, roots);
    s.set_tag("srs:" + csv);
    return s;
}

// sp_{2k} inside sl_n: annihilates the first n-2k vectors and covectors and
// preserves the symplectic form sum e^{odd} wedge e^{odd+1} on the rest
Subalgebra sp_in_sl(const AlgebraPtr& g, size_t f, int two_k) {
    Module tau = tautological_module(g, f);
    size_t n = tau.vdim;
    size_t skip = n - (size_t)two_k;
    Mat omega(n, n);
    for (size_t i = skip; i + 1 < n; i += 2) {
        omega(i, i + 1) = 1;
        omega(i + 1, i) = -1;
    }
    std::vector<Vec> rows;
    auto hb = tau.h.space().basis_vectors();
    for (size_t a = 0; a < skip; ++a) {
        std::vector<Vec> cols, cols2;
        for (auto& m : tau.act) cols.push_back(m.col(a));
        for (auto& m : tau.act) cols2.push_back(m.row(a));
        Mat s1 = Mat::from_rows(cols).transposed();
        Mat s2 = Mat::from_rows(cols2).transposed();
        for (size_t r = 0; r < s1.rows; ++r) rows.push_back(s1.row(r));
        for (size_t r = 0; r < s2.rows; ++r) rows.push_back(s2.row(r));
    }
    for (size_t p = 0; p < n; ++p)
        for (size_t q = 0; q < n; ++q) {
            Vec row(hb.size());
            for (size_t i = 0; i < hb.size(); ++i) {
                Rat v(0);
                for (size_t k2 = 0; k2 < n; ++k2)
                    v += tau.act[i](k2, p) * omega(k2, q) + omega(p, k2) * tau.act[i](k2, q);
                row[i] = v;
            }
            rows.push_back(row);
        }
    Subspace coeff = kernel(Mat::from_rows(rows));
    std::vector<Vec> gens;
    for (auto& c : coeff.basis_vectors()) {
        Vec x = zero_vec(g->dim());
        for (size_t i = 0; i < hb.size(); ++i) x += c[i] * hb[i];
        gens.push_back(x);
    }
    return Subalgebra(g, Subspace::span(g->dim(), gens), "spinsl:" + std::to_string(two_k));
}

Subalgebra so_block(const AlgebraPtr& g, size_t f, int k) {
    const auto& fac = g->datum()->factors()[f];
    int n = fac.series == Series::B ? 2 * fac.rank + 1 : 2 * fac.rank;
    if (k > n) throw std::runtime_error("so_block range");
    Module tau = tautological_module(g, f);
    int d = n - k;
    int l = d / 2;
    std::vector<Vec> anns;
    for (int i = 0; i < l; ++i) {
        Vec v = zero_vec(n);
        v[i] = 1;
        anns.push_back(v);
        Vec w = zero_vec(n);
        w[n - 1 - i] = 1;
        anns.push_back(w);
    }
    if (d % 2) {
        Vec v = zero_vec(n);
        v[l] = 1;
        v[n - 1 - l] = 1;
        anns.push_back(v);
    }
    auto s = annihilator(tau, anns);
    s.set_tag("so:" + std::to_string(k));
    return s;
}

Subalgebra sp_block(const AlgebraPtr& g, size_t f, int two_k) {
    const auto& fac = g->datum()->factors()[f];
    int n2 = 2 * fac.rank;
    int d = n2 - two_k;
    if (d % 2 || d < 0) throw std::runtime_error("sp_block range");
    Module tau = tautological_module(g, f);
    std::vector<Vec> anns;
    for (int i = 0; i < d / 2; ++i) {
        Vec v = zero_vec(n2);
        v[i] = 1;
        anns.push_back(v);
        Vec w = zero_vec(n2);
        w[n2 - 1 - i] = 1;
        anns.push_back(w);
    }
    auto s = annihilator(tau, anns);
    s.set_tag("sp:" + std::to_string(two_k));
    return s;
}

Subalgebra sp_form_in_sl(const AlgebraPtr& g, size_t f) {
    // annihilator of the 2-form sum e^{2i-1} wedge e^{2i} on C^{2m}
    Module tau = tautological_module(g, f);
    size_t n = tau.vdim;
    if (n % 2) throw std::runtime_error("sp_form_in_sl: odd dimension");
    Mat omega(n, n);
    for (size_t i = 0; i + 1 < n; i += 2) {
        omega(i, i + 1) = 1;
        omega(i + 1, i) = -1;
    }
    // conditions: act^T omega + omega act = 0
    std::vector<Vec> rows;
    auto hb = tau.h.space().basis_vectors();
    for (size_t p = 0; p < n; ++p)
        for (size_t q = 0; q < n; ++q) {
            Vec row(hb.size());
            for (size_t i = 0; i < hb.size(); ++i) {
                Rat v(0);
                for (size_t k = 0; k < n; ++k)
                    v += tau.act[i](k, p) * omega(k, q) + omega(p, k) * tau.act[i](k, q);
                row[i] = v;
            }
            rows.push_back(row);
        }
    Subspace coeff = kernel(Mat::from_rows(rows));
    std::vector<Vec> gens;
    for (auto& c : coeff.basis_vectors()) {
        Vec x = zero_vec(g->dim());
        for (size_t i = 0; i < hb.size(); ++i) x += c[i] * hb[i];
        gens.push_back(x);
    }
    return Subalgebra(g, Subspace::span(g->dim(), gens), "spform");
}

Subalgebra sp_in_sl_odd(const AlgebraPtr& g, size_t f) {
    Module tau = tautological_module(g, f);
    size_t n = tau.vdim;
    if (n % 2 == 0) throw std::runtime_error("sp_in_sl_odd: even dimension");
    Mat omega(n, n);
    for (size_t i = 1; i + 1 < n; i += 2) {
        omega(i, i + 1) = 1;
        omega(i + 1, i) = -1;
    }
    std::vector<Vec> rows;
    auto hb = tau.h.space().basis_vectors();
    // annihilate e_1 and e^1
    for (auto& a : std::vector<int>{0}) {
        std::vector<Vec> cols;
        for (auto& m : tau.act) cols.push_back(m.col((size_t)a));
        Mat s = Mat::from_rows(cols).transposed();
        for (size_t r = 0; r < s.rows; ++r) rows.push_back(s.row(r));
        std::vector<Vec> cols2;
        for (auto& m : tau.act) cols2.push_back(m.row((size_t)a));
        Mat s2 = Mat::from_rows(cols2).transposed();
        for (size_t r = 0; r < s2.rows; ++r) rows.push_back(s2.row(r));
    }
    for (size_t p = 0; p < n; ++p)
        for (size_t q = 0; q < n; ++q) {
            Vec row(hb.size());
            for (size_t i = 0; i < hb.size(); ++i) {
                Rat v(0);
                for (size_t k = 0; k < n; ++k)
                    v += tau.act[i](k, p) * omega(k, q) + omega(p, k) * tau.act[i](k, q);
                row[i] = v;
            }
            rows.push_back(row);
        }
    Subspace coeff = kernel(Mat::from_rows(rows));
    std::vector<Vec> gens;
    for (auto& c : coeff.basis_vectors()) {
        Vec x = zero_vec(g->dim());
        for (size_t i = 0; i < hb.size(); ++i) x += c[i] * hb[i];
        gens.push_back(x);
    }
    return Subalgebra(g, Subspace::span(g->dim(), gens), "spodd");
}

Subalgebra sp_distinguished(const AlgebraPtr& g, size_t f, int two_k) {
    // annihilator of e_1+e_{2n-1}, e_2-e_{2n}, e_3+e_{2n-3}, e_4-e_{2n-2}, ...
    const auto& fac = g->datum()->factors()[f];
    int n = fac.rank;
    int k = two_k / 2;
    Module tau = tautological_module(g, f);
    std::vector<Vec> anns;
    for (int j = 1; j <= 2 * (n - k); ++j) {
        Vec v = zero_vec(2 * (size_t)n);
        v[(size_t)j - 1] = 1;
        if (j % 2 == 1)
            v[(size_t)(2 * n - j) - 1] = 1;       // e_j + e_{2n-j}
        else
            v[(size_t)(2 * n - j + 2) - 1] = -1;  // e_j - e_{2n-j+2}
        anns.push_back(v);
    }
    auto s = annihilator(tau, anns);
    s.set_tag("spdist:" + std::to_string(two_k));
    return s;
}

Subalgebra sp_pair_obvious(const AlgebraPtr& g, size_t f, int two_k) {
    const auto& fac = g->datum()->factors()[f];
    int n = fac.rank;
    int k = two_k / 2;
    Module tau = tautological_module(g, f);
    // U1 = span(e_{n-k+1}..e_{n+k}) middle block, U2 = complement
    std::vector<Vec> u1, u2;
    for (int i = 0; i < 2 * n; ++i) {
        Vec v = zero_vec(2 * (size_t)n);
        v[(size_t)i] = 1;
        if (i >= n - k && i < n + k) u1.push_back(v);
        else u2.push_back(v);
    }
    auto s = intersect(subspace_stabilizer(tau, Subspace::span(2 * (size_t)n, u1)),
                       subspace_stabilizer(tau, Subspace::span(2 * (size_t)n, u2)));
    s.set_tag("sp_pair_obvious:" + std::to_string(two_k));
    return s;
}

Subalgebra sp_pair_distinguished(const AlgebraPtr& g, size_t f, int two_k) {
    Subalgebra fsub = sp_distinguished(g, f, two_k);
    Subalgebra z = liealg::centralizer(fsub);
    Subalgebra pair = sum(fsub, intersect(z, factor_subalgebra(g, f)));
    pair = liealg::bracket_closure(pair);
    pair.set_tag("sp_pair:" + std::to_string(two_k));
    return pair;
}

Subalgebra sl2_sl2_sp(const AlgebraPtr& g, size_t f) {
    const auto& fac = g->datum()->factors()[f];
    int n = fac.rank;
    Module tau = tautological_module(g, f);
    size_t N = 2 * (size_t)n;
    auto unit = [&](size_t i) {
        Vec v = zero_vec(N);
        v[i] = 1;
        return v;
    };
    // sp_{2n-4} = ann(e1,e2,e_{2n-1},e_{2n})
    Subalgebra spp = annihilator(tau, {unit(0), unit(1), unit(N - 2), unit(N - 1)});
    // sl2_a = ann(e2..e_{2n-1})
    std::vector<Vec> mid;
    for (size_t i = 1; i + 1 < N; ++i) mid.push_back(unit(i));
    Subalgebra a1 = annihilator(tau, mid);
    // sl2_b = ann(e1, e3..e_{2n-2}, e_{2n})
    std::vector<Vec> rest;
    rest.push_back(unit(0));
    for (size_t i = 2; i + 2 < N; ++i) rest.push_back(unit(i));
    rest.push_back(unit(N - 1));
    Subalgebra a2 = annihilator(tau, rest);
    Subalgebra s = sum(sum(spp, a1), a2);
    s.set_tag("sl2sl2sp");
    return s;
}

Subalgebra sl_in_so_even(const AlgebraPtr& g, size_t f) {
    const auto& d = g->datum();
    const auto& fac = d->factors()[f];
    size_t off = simple_offset_of_factor(d, f);
    std::vector<Vec> roots;
    for (size_t i = 0; i + 1 < (size_t)fac.rank; ++i) roots.push_back(d->simple_roots()[off + i]);
    auto s = root_subalgebra(g, roots);
    s.set_tag("slso");
    return s;
}

namespace {

Subalgebra from_matrix_span(const AlgebraPtr& g, size_t f, const std::vector<Mat>& mats,
                            const std::string& tag) {
    Module tau = tautological_module(g, f);
    auto hb = tau.h.space().basis_vectors();
    // solve tau(x) = M for each generator
    std::vector<Vec> cols;  // flatten of tau basis action
    for (auto& a : tau.act) cols.push_back(a.a);
    Mat basis_mat = Mat::from_rows(cols).transposed();
    std::vector<Vec> gens;
    for (auto& M : mats) {
        auto sol = solve(basis_mat, M.a);
        if (!sol) throw std::runtime_error(tag + ": matrix outside the algebra");
        Vec x = zero_vec(g->dim());
        for (size_t i = 0; i < hb.size(); ++i) x += (*sol)[i] * hb[i];
        gens.push_back(x);
    }
    return Subalgebra(g, Subspace::span(g->dim(), gens), tag);
}

}  // namespace

Subalgebra gl_diag(const AlgebraPtr& g, size_t f, int k, bool trace_zero) {
    Module tau = tautological_module(g, f);
    size_t N = tau.vdim;
    auto prime = [&](size_t i) { return N - 1 - i; };
    std::vector<Mat> mats;
    for (int p = 0; p < k; ++p)
        for (int q = 0; q < k; ++q) {
            if (trace_zero && p == q && p == k - 1) continue;
            Mat m(N, N);
            if (trace_zero && p == q) {
                m((size_t)p, (size_t)p) = 1;
                m((size_t)k - 1, (size_t)k - 1) = -1;
                m(prime((size_t)k - 1), prime((size_t)k - 1)) = 1;
                m(prime((size_t)p), prime((size_t)p)) = -1;
            } else {
                m((size_t)p, (size_t)q) = 1;
                m(prime((size_t)q), prime((size_t)p)) = -1;
            }
            mats.push_back(m);
        }
    return from_matrix_span(g, f, mats, (trace_zero ? "sldiag:" : "gldiag:") + std::to_string(k));
}

Subalgebra sp_diag(const AlgebraPtr& g, size_t f, int two_k) {
    // y in sp_{2k} (standard form) embedded via tau + tau^* (+ trivial)
    AlgebraPtr hk = algebra_by_name("sp" + std::to_string(two_k));
    Module tauk = tautological_module(hk);
    Module tau = tautological_module(g, f);
    size_t N = tau.vdim, K = (size_t)two_k;
    auto prime = [&](size_t i) { return N - 1 - i; };
    std::vector<Mat> mats;
    for (auto& y : tauk.act) {
        Mat m(N, N);
        for (size_t p = 0; p < K; ++p)
            for (size_t q = 0; q < K; ++q) {
                if (y(p, q) == 0) continue;
                m(p, q) = y(p, q);
                m(prime(q), prime(p)) -= y(p, q);
            }
        mats.push_back(m);
    }
    return from_matrix_span(g, f, mats, "spdiag:" + std::to_string(two_k));
}

Subalgebra so_diag(const AlgebraPtr& g, size_t f, int k) {
    AlgebraPtr hk = algebra_by_name("so" + std::to_string(k));
    Module tauk = tautological_module(hk);
    Module tau = tautological_module(g, f);
    size_t N = tau.vdim, K = (size_t)k;
    auto prime = [&](size_t i) { return N - 1 - i; };
    std::vector<Mat> mats;
    for (auto& y : tauk.act) {
        Mat m(N, N);
        for (size_t p = 0; p < K; ++p)
            for (size_t q = 0; q < K; ++q) {
                if (y(p, q) == 0) continue;
                m(p, q) = y(p, q);
                m(prime(q), prime(p)) -= y(p, q);
            }
        mats.push_back(m);
    }
    return from_matrix_span(g, f, mats, "sodiag:" + std::to_string(k));
}

namespace {

// annihilator of v_hw + v_lw of the top spinor of an so-subalgebra given as
// an Embedded so_{2r+1} (B_r) copy, pulled back into the ambient algebra
Subalgebra spinor_annihilator(const AlgebraPtr& g, const Embedded& eso, size_t spin_index,
                              const std::string& tag) {
    const auto& d = eso.inner->datum();
    Vec pin = d->fundamental_weights()[spin_index - 1];
    Module spin = repkit::weight_orbit_module(eso, pin);
    auto wts = repkit::weyl_orbit(d, pin);
    Vec hw = d->canonicalize(pin);
    Vec lw = d->canonicalize(Rat(-1) * repkit::dominant_representative(d, Rat(-1) * pin));
    size_t ih = SIZE_MAX, il = SIZE_MAX;
    for (size_t i = 0; i < wts.size(); ++i) {
        if (wts[i] == hw) ih = i;
        if (wts[i] == lw) il = i;
    }
    if (ih == SIZE_MAX || il == SIZE_MAX) throw std::runtime_error("spinor weights missing");
    Vec v = zero_vec(spin.vdim);
    v[ih] = 1;
    v[il] = 1;
    auto s = annihilator(spin, {v});
    s.set_tag(tag);
    return s;
}

}  // namespace

Subalgebra spin7_in_so(const AlgebraPtr& g, size_t f) {
    const auto& fac = g->datum()->factors()[f];
    int n = fac.series == Series::B ? 2 * fac.rank + 1 : 2 * fac.rank;
    if (n == 9) {
        Embedded e = embed_factor(g, f);
        auto s = spinor_annihilator(g, e, 4, "spin7");
        if (s.dim() != 21) throw std::runtime_error("spin7 dim check failed");
        return s;
    }
    // compose through the so9 block
    Subalgebra so9 = so_block(g, f, 9);
    Embedded e9 = embed_abstract(g, so9);
    auto s = spinor_annihilator(g, e9, 4, "spin7");
    if (s.dim() != 21) throw std::runtime_error("spin7 (nested) dim check failed");
    return s;
}

Subalgebra g2_in_so(const AlgebraPtr& g, size_t f) {
    const auto& fac = g->datum()->factors()[f];
    int n = fac.series == Series::B ? 2 * fac.rank + 1 : 2 * fac.rank;
    if (n == 7) {
        Embedded e = embed_factor(g, f);
        auto s = spinor_annihilator(g, e, 3, "g2");
        if (s.dim() != 14) throw std::runtime_error("g2 dim check failed");
        return s;
    }
    Subalgebra so7 = so_block(g, f, 7);
    Embedded e7 = embed_abstract(g, so7);
    auto s = spinor_annihilator(g, e7, 3, "g2");
    if (s.dim() != 14) throw std::runtime_error("g2 (nested) dim check failed");
    return s;
}

Subalgebra long_root_subalgebra(const AlgebraPtr& g, size_t f) {
    const auto& d = g->datum();
    std::vector<Vec> longs;
    for (auto& r : d->roots())
        if ((size_t)d->factor_of_root(r) == f && d->is_long(r)) longs.push_back(r);
    auto s = root_subalgebra(g, longs);
    s.set_tag("longroots");
    return s;
}

Subalgebra b4_in_f4(const AlgebraPtr& g, size_t f) {
    const auto& d = g->datum();
    if (d->factors()[f].series != Series::F4) throw std::runtime_error("b4_in_f4: not F4");
    size_t off = d->factors()[f].offset;
    auto eps = [&](size_t i, Rat c) {
        Vec v = zero_vec(d->ambient_dim());
        v[off + i] = c;
        return v;
    };
    // h0 = subalgebra generated by short-root spaces +-eps_i
    std::vector<Vec> shorts;
    for (size_t i = 0; i < 4; ++i) shorts.push_back(eps(i, Rat(1)));
    Subalgebra h0 = root_subalgebra(g, shorts);
    if (h0.dim() != 36) throw std::runtime_error("b4_in_f4: h0 dim");
    // omega = (e1+e2+e3+e4)/2, x = e_omega + e_{-omega}
    Vec omega = zero_vec(d->ambient_dim());
    for (size_t i = 0; i < 4; ++i) omega[off + i] = Rat(1, 2);
    // Weyl word from omega to eps_1
    Vec target = eps(0, Rat(1));
    // BFS in the orbit
    std::map<Vec, std::pair<Vec, int>> parent;  // weight -> (prev, simple index)
    std::deque<Vec> dq{omega};
    parent[omega] = {omega, -1};
    while (!dq.empty() && !parent.count(target)) {
        Vec cur = dq.front();
        dq.pop_front();
        for (size_t i = 0; i < d->rank(); ++i) {
            Vec nx = d->reflect(d->simple_roots()[i], cur);
            if (!parent.count(nx)) {
                parent[nx] = {cur, (int)i};
                dq.push_back(nx);
            }
        }
    }
    if (!parent.count(target)) throw std::runtime_error("b4_in_f4: orbit search failed");
    std::vector<size_t> word;  // w = s_{i_1} ... applied to omega gives target
    Vec cur = target;
    while (true) {
        auto [prev, i] = parent[cur];
        if (i < 0) break;
        word.push_back((size_t)i);
        cur = prev;
    }
    Mat lift = Mat::identity(g->dim());
    // target = s_{w_1} s_{w_2} ... omega reading word front to back
    for (auto it = word.begin(); it != word.end(); ++it)
        lift = lift * g->weyl_lift(d->simple_roots()[*it]);
    // order: applying lift to e_omega should land in the +-eps1 spaces
    Vec x = g->root_vector(omega) + g->root_vector(Rat(-1) * omega);
    Vec x1 = mat_apply(lift, x);
    // read coefficients at e_{eps1}, e_{-eps1}
    size_t ip = g->root_vector_index(target), in = g->root_vector_index(Rat(-1) * target);
    Rat c1 = x1[ip], c2 = x1[in];
    for (size_t i = 0; i < x1.size(); ++i)
        if (x1[i] != 0 && i != ip && i != in)
            throw std::runtime_error("b4_in_f4: lift did not align x");
    if (c1 * c2 == -1) {
        // switch to x = e_omega - e_{-omega}; equally a hw+lw combination
        x = g->root_vector(omega) - g->root_vector(Rat(-1) * omega);
        x1 = mat_apply(lift, x);
        c1 = x1[ip];
        c2 = x1[in];
    }
    if (c1 * c2 != 1) throw std::runtime_error("b4_in_f4: cannot rationalize sl2 conjugation");
    // theta = exp(-1/2 ad f) exp(ad e) maps c(e+f) -> c*h

    Vec e1v = g->root_vector(target), f1v = g->root_vector(Rat(-1) * target);
    Mat theta = g->exp_ad(Rat(-1, 2) * f1v) * g->exp_ad(e1v);
    Mat total = theta * lift;
    std::vector<Vec> gens;
    for (auto& b : h0.space().basis_vectors()) gens.push_back(mat_apply(total, b));
    Subalgebra h(g, Subspace::span(g->dim(), gens), "b4f4");
    if (h.dim() != 36 || !h.is_bracket_closed()) throw std::runtime_error("b4_in_f4: image");
    return h;
}

Subalgebra f4_in_e6(const AlgebraPtr& g, size_t f) {
    const auto& d = g->datum();
    if (d->factors()[f].series != Series::E6) throw std::runtime_error("f4_in_e6: not E6");
    Embedded e = embed_factor(g, f);
    const auto& ds = e.inner->datum();
    Vec pi1 = ds->fundamental_weights()[0];
    Module v27 = repkit::weight_orbit_module(e, pi1);
    auto wts = repkit::weyl_orbit(ds, pi1);
    Vec w1 = ds->canonicalize(pi1);
    Vec w2 = ds->canonicalize(Rat(-1) * ds->fundamental_weights()[4]);
    Vec w3 = ds->canonicalize(ds->fundamental_weights()[4] - pi1);
    size_t i1 = SIZE_MAX, i2 = SIZE_MAX, i3 = SIZE_MAX;
    for (size_t i = 0; i < wts.size(); ++i) {
        if (wts[i] == w1) i1 = i;
        if (wts[i] == w2) i2 = i;
        if (wts[i] == w3) i3 = i;
    }
    if (i1 == SIZE_MAX || i2 == SIZE_MAX || i3 == SIZE_MAX)
        throw std::runtime_error("f4_in_e6: weights not in the orbit");
    for (int s2 = 1; s2 >= -1; s2 -= 2)
        for (int s3 = 1; s3 >= -1; s3 -= 2) {
            Vec v = zero_vec(v27.vdim);
            v[i1] = 1;
            v[i2] = s2;
            v[i3] = s3;
            Subalgebra cand = annihilator(v27, {v});
            if (cand.dim() == 52) {
                cand.set_tag("f4e6");
                return cand;
            }
        }
    throw std::runtime_error("f4_in_e6: no sign choice gives dim 52");
}

Subalgebra b4_in_e6(const AlgebraPtr& g, size_t f) {
    const auto& d = g->datum();
    size_t off = simple_offset_of_factor(d, f);
    // D5 = g^{(alpha_2..alpha_6)}
    std::vector<Vec> roots;
    for (size_t i = 1; i < 6; ++i) roots.push_back(d->simple_roots()[off + i]);
    Subalgebra d5 = root_subalgebra(g, roots);
    if (d5.dim() != 45) throw std::runtime_error("b4_in_e6: D5 dim");
    Embedded e5 = embed_abstract(g, d5);
    // so9 = annihilator of e_1 + e_10 in the 10-dim tautological module of D5
    Module tau10in;
    {
        const TauData& td = tau_of(Series::D, 5);
        // module over the image through e5
        Module m;
        m.g = g;
        m.h = e5.image;
        m.vdim = td.weights.size();
        for (auto& bv : e5.image.space().basis_vectors()) {
            auto c = e5.pull_back(bv);
            if (!c) throw std::runtime_error("b4_in_e6: transport");
            Mat x(m.vdim, m.vdim);
            for (size_t i = 0; i < c->size(); ++i)
                if ((*c)[i] != 0) x = x + (*c)[i] * td.act[i];
            m.act.push_back(x);
        }
        tau10in = m;
    }
    Vec v = zero_vec(10);
    v[0] = 1;
    v[9] = 1;
    auto s = annihilator(tau10in, {v});
    if (s.dim() != 36) throw std::runtime_error("b4_in_e6: so9 dim");
    s.set_tag("b4e6");
    return s;
}

Subalgebra diagonal_twisted(const AlgebraPtr& gg) {
    const auto& d = gg->datum();
    size_t half = d->factors().size() / 2;
    if (d->factors().size() % 2) throw std::runtime_error("diagonal: need h x h");
    // factor groups [0, half) and [half, 2 half) must be identical types
    // longest element of the second half
    Embedded e1 = embed_factor(gg, 0);
    (void)e1;
    // build w0 matrix of the whole second-half product on the eps space
    Mat w0 = Mat::identity(d->ambient_dim());
    {
        // bring rho of the second half to its negative
        Vec rho = zero_vec(d->ambient_dim());
        for (size_t i = 0; i < d->rank(); ++i) {
            const Vec& a = d->simple_roots()[i];
            if ((size_t)d->factor_of_root(a) >= half) rho += d->fundamental_weights()[i];
        }
        Vec cur = rho;
        size_t guard = 0;
        while (true) {
            bool moved = false;
            for (size_t i = 0; i < d->rank(); ++i) {
                const Vec& a = d->simple_roots()[i];
                if ((size_t)d->factor_of_root(a) < half) continue;
                if (d->pairing(cur, a) > 0) {
                    cur = d->reflect(a, cur);
                    w0 = d->reflection_matrix(a) * w0;
                    moved = true;
                }
            }
            if (!moved) break;
            if (++guard > 100000) throw std::runtime_error("diagonal: w0 search stuck");
        }
    }
    Mat n0 = gg->weyl_lift_of(w0);
    // index correspondence: factor i <-> factor i+half
    std::vector<Vec> gens;
    for (size_t f = 0; f < half; ++f) {
        Embedded ea = embed_factor(gg, f);
        Embedded eb = embed_factor(gg, f + half);
        // abstract basis of the common simple type
        for (size_t i = 0; i < ea.inner->dim(); ++i) {
            Vec b(ea.inner->dim(), Rat(0));
            b[i] = 1;
            Vec left = ea.embed(b);
            Vec right = mat_apply(n0, eb.embed(b));
            gens.push_back(left + right);
        }
    }
    Subalgebra s(gg, Subspace::span(gg->dim(), gens), "diag");
    if (!s.is_bracket_closed()) throw std::runtime_error("diagonal: not closed");
    return s;
}

Subalgebra sp_product_stabilizer(const AlgebraPtr& g) {
    const auto& d = g->datum();
    if (d->factors().size() != 2) throw std::runtime_error("sp_product_stabilizer: two factors");
    Module t1 = tautological_module(g, 0);
    Module t2 = tautological_module(g, 1);
    // lift both to modules over the whole product
    Subalgebra whole = Subalgebra::whole(g);
    auto lift = [&](const Module& m) {
        Module out;
        out.g = g;
        out.h = whole;
        out.vdim = m.vdim;
        for (auto& bv : whole.space().basis_vectors()) {
            if (m.h.space().contains(bv))
                out.act.push_back(m.act_of(bv));
            else
                out.act.push_back(Mat(m.vdim, m.vdim));
        }
        return out;
    };
    Module sum = repkit::direct_sum(lift(t1), lift(t2));
    size_t n1 = t1.vdim, n2 = t2.vdim;
    Vec u1 = zero_vec(n1 + n2), u2 = zero_vec(n1 + n2);
    u1[0] = 1;
    u1[n1] = 1;
    u2[n1 - 1] = 1;
    u2[n1 + n2 - 1] = 1;
    auto s = subspace_stabilizer(sum, Subspace::span(n1 + n2, {u1, u2}));
    s.set_tag("sppair2627");
    return s;
}

Sl2Triple root_sl2(const AlgebraPtr& g, const Vec& root) {
    Sl2Triple t;
    t.e = g->root_vector(root);
    t.f = g->root_vector(Rat(-1) * root);
    t.x = g->coroot_element(root);
    return t;
}

Mat diagram_automorphism(const AlgebraPtr& g, const std::vector<size_t>& perm) {
    const auto& d = g->datum();
    size_t r = d->rank();
    if (perm.size() != r) throw std::runtime_error("diagram_automorphism: size");
    Mat m(g->dim(), g->dim());
    for (size_t i = 0; i < r; ++i) m(perm[i], i) = 1;
    // map on eps-space for roots
    // sigma(e_{alpha_i}) = e_{alpha_perm(i)}; propagate with structure constants
    std::map<int, std::pair<int, Rat>> image;  // root index -> (image root index, coeff)
    auto ridx = [&](const Vec& v) { return d->root_index(v); };
    // sigma on the eps space: linear map sending alpha_i to alpha_perm(i)
    Mat sig_eps;
    {
        // solve on the root span; extendable by identity on the complement
        std::vector<Vec> rows_from, rows_to;
        for (size_t i = 0; i < r; ++i) {
            rows_from.push_back(d->simple_roots()[i]);
            rows_to.push_back(d->simple_roots()[perm[i]]);
        }
        // least structure: build matrix via solving sig * A = B with A columns
        Mat a = Mat::from_rows(rows_from).transposed();
        Mat b = Mat::from_rows(rows_to).transposed();
        // sig restricted to span(A); complete with identity on a complement
        // assemble: columns of A extended by complement basis
        size_t nn = d->ambient_dim();
        std::vector<Vec> cols;
        for (size_t i = 0; i < r; ++i) cols.push_back(a.col(i));
        Subspace span = Subspace::span(nn, cols);
        std::vector<Vec> full_cols = cols, target_cols;
        for (size_t i = 0; i < r; ++i) target_cols.push_back(b.col(i));
        for (size_t i = 0; i < nn; ++i) {
            Vec e2 = zero_vec(nn);
            e2[i] = 1;
            if (!span.contains(e2)) {
                std::vector<Vec> ext = full_cols;
                ext.push_back(e2);
                if (Subspace::span(nn, ext).dim() > Subspace::span(nn, full_cols).dim()) {
                    full_cols.push_back(e2);
                    target_cols.push_back(e2);
                }
            }
        }
        Mat fc = Mat::from_rows(full_cols).transposed();
        Mat tc = Mat::from_rows(target_cols).transposed();
        sig_eps = tc * mat_inverse(fc);
    }
    for (size_t i = 0; i < r; ++i) {
        int from = ridx(d->simple_roots()[i]);
        int to = ridx(d->simple_roots()[perm[i]]);
        image[from] = {to, Rat(1)};
        int nfrom = ridx(Rat(-1) * d->simple_roots()[i]);
        int nto = ridx(Rat(-1) * d->simple_roots()[perm[i]]);
        image[nfrom] = {nto, Rat(1)};
    }
    for (auto& gamma : d->positive_roots()) {
        int ig = ridx(gamma);
        if (image.count(ig)) continue;
        bool done = false;
        for (auto& alpha : d->positive_roots()) {
            if (done) break;
            Vec beta = gamma - alpha;
            int ia = ridx(alpha), ib = ridx(beta);
            if (ib < 0 || !image.count(ia) || !image.count(ib)) continue;
            Rat nab = g->structure_constant(alpha, beta);
            if (nab == 0) continue;
            Vec sa = mat_apply(sig_eps, alpha), sb = mat_apply(sig_eps, beta);
            Rat nimg = g->structure_constant(sa, sb);
            Rat coeff = image[ia].second * image[ib].second * nimg / nab;
            int isg = ridx(d->canonicalize(sa + sb));
            image[ig] = {isg, coeff};
            // negative root
            int ing = ridx(Rat(-1) * gamma);
            Vec nsa = Rat(-1) * sa, nsb = Rat(-1) * sb;
            Rat nab2 = g->structure_constant(Rat(-1) * alpha, Rat(-1) * beta);
            Rat nimg2 = g->structure_constant(nsa, nsb);
            int ina = ridx(Rat(-1) * alpha), inb = ridx(Rat(-1) * beta);
            Rat coeff2 = image[ina].second * image[inb].second * nimg2 / nab2;
            image[ing] = {ridx(d->canonicalize(nsa + nsb)), coeff2};
            done = true;
        }
        if (!done) throw std::runtime_error("diagram_automorphism: propagation failed");
    }
    for (auto& [from, tocoeff] : image)
        m(g->rank() + (size_t)tocoeff.first, g->rank() + (size_t)from) = tocoeff.second;
    // verification on sampled brackets
    for (size_t trial = 0; trial < 12; ++trial) {
        size_t i = (trial * 7) % g->dim(), j = (trial * 13 + 5) % g->dim();
        Vec bi(g->dim(), Rat(0)), bj(g->dim(), Rat(0));
        bi[i] = 1;
        bj[j] = 1;
        Vec lhs = mat_apply(m, g->bracket(bi, bj));
        Vec rhs = g->bracket(mat_apply(m, bi), mat_apply(m, bj));
        if (!(lhs == rhs)) throw std::runtime_error("diagram_automorphism: verify failed");
    }
    return m;
}

Subalgebra by_name(const AlgebraPtr& g, const std::string& spec, size_t factor) {
    auto colon = spec.find(':');
    std::string head = colon == std::string::npos ? spec : spec.substr(0, colon);
    std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
    if (head == "zero") return Subalgebra::zero(g);
    if (head == "whole") return Subalgebra::whole(g);
    if (head == "srs") return simple_root_subalgebra(g, factor, arg);
    if (head == "slpair") return sl_pair(g, factor, std::stoi(arg));
    if (head == "spinsl") return sp_in_sl(g, factor, std::stoi(arg));
    if (head == "sl") return sl_block(g, factor, std::stoi(arg));
    if (head == "so") return so_block(g, factor, std::stoi(arg));
    if (head == "sp") return sp_block(g, factor, std::stoi(arg));
    if (head == "spform") return sp_form_in_sl(g, factor);
    if (head == "spodd") return sp_in_sl_odd(g, factor);
    if (head == "spdist") return sp_distinguished(g, factor, std::stoi(arg));
    if (head == "sp_pair") return sp_pair_distinguished(g, factor, std::stoi(arg));
    if (head == "sp_pair_obvious") return sp_pair_obvious(g, factor, std::stoi(arg));
    if (head == "sl2sl2sp") return sl2_sl2_sp(g, factor);
    if (head == "slso") return sl_in_so_even(g, factor);
    if (head == "gldiag") return gl_diag(g, factor, std::stoi(arg), false);
    if (head == "sldiag") return gl_diag(g, factor, std::stoi(arg), true);
    if (head == "spdiag") return sp_diag(g, factor, std::stoi(arg));
    if (head == "sodiag") return so_diag(g, factor, std::stoi(arg));
    if (head == "spin7") return spin7_in_so(g, factor);
    if (head == "g2") return g2_in_so(g, factor);
    if (head == "longroots") return long_root_subalgebra(g, factor);
    if (head == "b4f4") return b4_in_f4(g, factor);
    if (head == "f4e6") return f4_in_e6(g, factor);
    if (head == "b4e6") return b4_in_e6(g, factor);
    if (head == "diag") return diagonal_twisted(g);
    if (head == "sppair2627") return sp_product_stabilizer(g);
    throw std::runtime_error("unknown catalog subalgebra: " + spec);
}

}  // namespace weylkit::catalog
