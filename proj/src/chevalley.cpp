#include "weylkit/liealg.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace weylkit::liealg {

void SparseVec::add(size_t i, const Rat& c) {
    if (c == 0) return;
    for (auto& [j, v] : terms)
        if (j == i) {
            v += c;
            if (v == 0) {
                terms.erase(std::remove_if(terms.begin(), terms.end(),
                                           [&](auto& t) { return t.first == i && t.second == 0; }),
                            terms.end());
            }
            return;
        }
    terms.push_back({i, c});
}

Vec SparseVec::dense(size_t dim) const {
    Vec v(dim, Rat(0));
    for (auto& [i, c] : terms) v[i] += c;
    return v;
}

namespace {

struct PairKey {
    int a, b;
    bool operator<(const PairKey& o) const { return std::tie(a, b) < std::tie(o.a, o.b); }
};

}  // namespace

struct ChevBuilder {
    const RootDatum& rd;
    std::vector<Vec> pos;                 // positive roots in (height, lex) order
    std::map<Vec, int> pos_index;
    std::map<PairKey, Rat> npos;          // N for positive pairs (by pos index)

    explicit ChevBuilder(const RootDatum& d) : rd(d) {
        pos = d.positive_roots();
        // positive_roots() is already height-sorted
        for (size_t i = 0; i < pos.size(); ++i) pos_index[pos[i]] = (int)i;
    }

    int index_of(const Vec& v) const {
        auto it = pos_index.find(v);
        return it == pos_index.end() ? -1 : it->second;
    }

    int string_p(const Vec& alpha, const Vec& beta) const {
        // largest k with beta - k alpha a root
        int p = 0;
        Vec v = beta - alpha;
        while (rd.is_root(v)) {
            ++p;
            v = v - alpha;
        }
        return p;
    }

    Rat n_pos(int ia, int ib) const {
        if (ia > ib) {
            auto it = npos.find({ib, ia});
            if (it == npos.end()) throw std::runtime_error("n_pos missing");
            return -it->second;
        }
        auto it = npos.find({ia, ib});
        if (it == npos.end()) throw std::runtime_error("n_pos missing");
        return it->second;
    }

    // N_{a,b} for arbitrary roots with a+b a root.
    Rat n_any(const Vec& a, const Vec& b) const {
        Vec s = a + b;
        if (!rd.is_root(s)) return Rat(0);
        int ia = index_of(a), ib = index_of(b);
        bool an = ia < 0, bn = ib < 0;
        if (!an && !bn) return n_pos(ia, ib);
        if (an && bn) return -n_any(Rat(-1) * a, Rat(-1) * b);
        // mixed: one positive, one negative
        if (an) return -n_any(b, a);
        // a positive, b negative; let eta = -b (positive), delta = a + b
        Vec eta = Rat(-1) * b;
        Vec delta = s;
        if (index_of(delta) >= 0) {
            // delta positive: from a = eta + delta: N_{a,-eta} = -(d,d) N_{eta,delta}/(a,a)
            int ie = index_of(eta), id = index_of(delta);
            return -(rd.inner(delta, delta) * n_pos(ie, id)) / rd.inner(a, a);
        }
        // delta negative: let d' = -delta positive, eta = a + d'
        Vec dp = Rat(-1) * delta;
        int idp = index_of(dp), ia2 = index_of(a);
        // triple (a, -eta, d'): N_{a,-eta}/(d',d') = N_{d',a}/(eta,eta)
        return rd.inner(dp, dp) * n_pos(idp, ia2) / rd.inner(eta, eta);
    }

    void build() {
        for (size_t ig = 0; ig < pos.size(); ++ig) {
            const Vec& gamma = pos[ig];
            // decompositions gamma = alpha + beta with alpha,beta positive
            std::vector<std::pair<int, int>> pairs;
            for (size_t ia = 0; ia < pos.size(); ++ia) {
                Vec beta = gamma - pos[ia];
                int ib = index_of(beta);
                if (ib < 0 || (int)ia >= ib) continue;
                pairs.push_back({(int)ia, ib});
            }
            if (pairs.empty()) continue;
            std::sort(pairs.begin(), pairs.end());
            // extraspecial pair: minimal alpha
            auto [ea, eb] = pairs[0];
            npos[{ea, eb}] = Rat(string_p(pos[ea], pos[eb]) + 1);
            Rat ng = rd.inner(gamma, gamma);
            for (size_t k = 1; k < pairs.size(); ++k) {
                auto [ia, ib] = pairs[k];
                const Vec &al = pos[ia], &be = pos[ib];
                const Vec &a1 = pos[ea], &b1 = pos[eb];
                Rat t1(0), t2(0);
                Vec d1 = b1 - al;  // beta1 - alpha
                if (rd.is_root(d1))
                    t1 = n_any(b1, Rat(-1) * al) * n_any(a1, Rat(-1) * be) / rd.inner(d1, d1);
                Vec d2 = a1 - al;  // alpha1 - alpha
                if (rd.is_root(d2))
                    t2 = n_any(Rat(-1) * al, a1) * n_any(b1, Rat(-1) * be) / rd.inner(d2, d2);
                Rat val = ng * (t1 + t2) / npos[{ea, eb}];
                // integrality: |N| = p+1
                Rat expect(string_p(al, be) + 1);
                if (val != expect && val != -expect)
                    throw std::runtime_error("structure constant recursion failed");
                npos[{ia, ib}] = val;
            }
        }
    }
};

AlgebraPtr ChevalleyAlgebra::build(const RootDatumPtr& datum) {
    auto g = std::make_shared<ChevalleyAlgebra>();
    g->datum_ = datum;
    g->rank_ = datum->rank();
    g->dim_ = g->rank_ + datum->roots().size();
    ChevBuilder cb(*datum);
    cb.build();

    size_t dim = g->dim_, rank = g->rank_;
    const auto& roots = datum->roots();
    g->brk_.assign(dim, std::vector<SparseVec>(dim));

    auto coroot_coords = [&](const Vec& alpha) {
        // alpha^vee over the simple coroot basis
        Vec a = datum->simple_root_coordinates(alpha);
        Vec c(rank, Rat(0));
        for (size_t i = 0; i < rank; ++i)
            c[i] = a[i] * datum->inner(datum->simple_roots()[i], datum->simple_roots()[i]) /
                   datum->inner(alpha, alpha);
        return c;
    };

    for (size_t i = 0; i < rank; ++i) {
        for (size_t k = 0; k < roots.size(); ++k) {
            Rat c = datum->pairing(roots[k], datum->simple_roots()[i]);
            g->brk_[i][rank + k].add(rank + k, c);
            g->brk_[rank + k][i].add(rank + k, -c);
        }
    }
    for (size_t k = 0; k < roots.size(); ++k) {
        for (size_t l = 0; l < roots.size(); ++l) {
            Vec s = roots[k] + roots[l];
            if (is_zero(s)) {
                Vec c = coroot_coords(roots[k]);
                for (size_t i = 0; i < rank; ++i) g->brk_[rank + k][rank + l].add(i, c[i]);
            } else if (datum->is_root(s)) {
                Rat n = cb.n_any(roots[k], roots[l]);
                g->brk_[rank + k][rank + l].add(rank + datum->root_index(s), n);
            }
        }
    }

    // invariant form: per factor scale Killing so K(theta^vee,theta^vee)=2
    // Killing on the Cartan: killing(h,h') = sum_beta <beta,h><beta,h'>
    auto kill_cartan = [&](size_t i, size_t j) {
        Rat s(0);
        for (auto& b : roots)
            s += datum->pairing(b, datum->simple_roots()[i]) *
                 datum->pairing(b, datum->simple_roots()[j]);
        return s;
    };
    std::vector<Rat> factor_scale;
    for (auto& f : datum->factors()) {
        // long root of this factor
        Rat best(0);
        Vec theta;
        for (auto& r : roots)
            if (datum->factor_of_root(r) == (int)(&f - &datum->factors()[0]))
                if (datum->inner(r, r) > best) { best = datum->inner(r, r); theta = r; }
        Vec tc = coroot_coords(theta);
        Rat kk(0);
        for (size_t i = 0; i < rank; ++i)
            for (size_t j = 0; j < rank; ++j)
                if (tc[i] != 0 && tc[j] != 0) kk += tc[i] * tc[j] * kill_cartan(i, j);
        factor_scale.push_back(2 / kk);
    }
    auto factor_of_simple = [&](size_t i) {
        return (size_t)datum->factor_of_root(datum->simple_roots()[i]);
    };
    g->k_cartan_ = Mat(rank, rank);
    for (size_t i = 0; i < rank; ++i)
        for (size_t j = 0; j < rank; ++j)
            if (factor_of_simple(i) == factor_of_simple(j))
                g->k_cartan_(i, j) = factor_scale[factor_of_simple(i)] * kill_cartan(i, j);
    // K(e_alpha, e_{-alpha}): from [e_a,e_{-a}] = a^vee and invariance:
    // K(e_a, e_{-a}) = 2/(a,a) * scale-free relation; compute via Killing:
    // Killing(e_a, e_{-a}) = trace(ad e_a ad e_{-a}).
    g->k_root_.assign(roots.size(), Rat(0));
    for (size_t k = 0; k < roots.size(); ++k) {
        int neg = datum->root_index(Rat(-1) * roots[k]);
        // sparse trace of ad(e_k) ad(e_neg)
        Rat tr(0);
        for (size_t b = 0; b < dim; ++b) {
            // (ad e_neg)(basis b) then (ad e_k), take coefficient at b
            const SparseVec& first = g->brk_[rank + neg][b];
            for (auto& [m, c] : first.terms) {
                const SparseVec& second = g->brk_[rank + k][m];
                for (auto& [p, c2] : second.terms)
                    if (p == b) tr += c * c2;
            }
        }
        size_t f = (size_t)datum->factor_of_root(roots[k]);
        g->k_root_[k] = factor_scale[f] * tr;
    }
    return g;
}

size_t ChevalleyAlgebra::root_vector_index(const Vec& root) const {
    int i = datum_->root_index(root);
    if (i < 0) throw std::runtime_error("not a root");
    return rank_ + (size_t)i;
}

const Vec& ChevalleyAlgebra::root_of_basis(size_t basis_index) const {
    if (basis_index < rank_) throw std::runtime_error("basis index is Cartan");
    return datum_->roots()[basis_index - rank_];
}

Vec ChevalleyAlgebra::root_vector(const Vec& root) const {
    Vec v(dim_, Rat(0));
    v[root_vector_index(root)] = 1;
    return v;
}

Vec ChevalleyAlgebra::coroot_element(const Vec& root) const {
    Vec a = datum_->simple_root_coordinates(root);
    Vec v(dim_, Rat(0));
    for (size_t i = 0; i < rank_; ++i)
        v[i] = a[i] * datum_->inner(datum_->simple_roots()[i], datum_->simple_roots()[i]) /
               datum_->inner(root, root);
    return v;
}

Vec ChevalleyAlgebra::cartan_from_eps(const Vec& eps_vec) const {
    // solve eps_vec = sum c_i * corootvec(alpha_i) in the eps space
    std::vector<Vec> cols;
    for (size_t i = 0; i < rank_; ++i) {
        const Vec& a = datum_->simple_roots()[i];
        cols.push_back((2 / datum_->inner(a, a)) * a);
    }
    Mat m = Mat::from_rows(cols).transposed();
    auto c = solve(m, datum_->canonicalize(eps_vec));
    if (!c) throw std::runtime_error("eps vector outside root span");
    Vec v(dim_, Rat(0));
    for (size_t i = 0; i < rank_; ++i) v[i] = (*c)[i];
    return v;
}

Rat ChevalleyAlgebra::weight_eval(const Vec& weight, const Vec& h) const {
    Rat s(0);
    for (size_t i = 0; i < rank_; ++i)
        if (h[i] != 0) s += h[i] * datum_->pairing(weight, datum_->simple_roots()[i]);
    return s;
}

Vec ChevalleyAlgebra::eps_of_cartan(const Vec& h) const {
    Vec v = zero_vec(datum_->ambient_dim());
    for (size_t i = 0; i < rank_; ++i) {
        const Vec& a = datum_->simple_roots()[i];
        v += (h[i] * 2 / datum_->inner(a, a)) * a;
    }
    return v;
}

const SparseVec& ChevalleyAlgebra::basis_bracket(size_t i, size_t j) const {
    return brk_[i][j];
}

Vec ChevalleyAlgebra::bracket(const Vec& x, const Vec& y) const {
    Vec out(dim_, Rat(0));
    for (size_t i = 0; i < dim_; ++i) {
        if (x[i] == 0) continue;
        for (size_t j = 0; j < dim_; ++j) {
            if (y[j] == 0) continue;
            for (auto& [k, c] : brk_[i][j].terms) out[k] += x[i] * y[j] * c;
        }
    }
    return out;
}

Mat ChevalleyAlgebra::ad_matrix(const Vec& x) const {
    Mat m(dim_, dim_);
    for (size_t j = 0; j < dim_; ++j) {
        for (size_t i = 0; i < dim_; ++i) {
            if (x[i] == 0) continue;
            for (auto& [k, c] : brk_[i][j].terms) m(k, j) += x[i] * c;
        }
    }
    return m;
}

Rat ChevalleyAlgebra::form_K(const Vec& x, const Vec& y) const {
    Rat s(0);
    for (size_t i = 0; i < rank_; ++i)
        for (size_t j = 0; j < rank_; ++j)
            if (x[i] != 0 && y[j] != 0) s += x[i] * y[j] * k_cartan_(i, j);
    const auto& roots = datum_->roots();
    for (size_t k = 0; k < roots.size(); ++k) {
        if (x[rank_ + k] == 0) continue;
        int neg = datum_->root_index(Rat(-1) * roots[k]);
        if (y[rank_ + neg] != 0) s += x[rank_ + k] * y[rank_ + neg] * k_root_[k];
    }
    return s;
}

Rat ChevalleyAlgebra::killing(const Vec& x, const Vec& y) const {
    Mat ax = ad_matrix(x), ay = ad_matrix(y);
    Rat s(0);
    for (size_t i = 0; i < dim_; ++i)
        for (size_t j = 0; j < dim_; ++j) s += ax(i, j) * ay(j, i);
    return s;
}

Rat ChevalleyAlgebra::structure_constant(const Vec& a, const Vec& b) const {
    Vec ea = root_vector(a), eb = root_vector(b);
    Vec br = bracket(ea, eb);
    Vec s = a + b;
    if (!datum_->is_root(s)) return Rat(0);
    return br[root_vector_index(s)];
}

bool ChevalleyAlgebra::is_nilpotent_element(const Vec& x) const {
    return mat_is_nilpotent(ad_matrix(x));
}

Mat ChevalleyAlgebra::exp_ad(const Vec& x) const {
    Mat a = ad_matrix(x);
    Mat result = Mat::identity(dim_);
    Mat term = Mat::identity(dim_);
    for (size_t k = 1; k <= dim_ + 1; ++k) {
        term = term * a;
        term = Rat(1, (long)k) * term;
        bool zero = true;
        for (auto& e : term.a)
            if (e != 0) { zero = false; break; }
        if (zero) return result + term;  // term is zero anyway
        result = result + term;
        if (k == dim_ + 1) throw std::runtime_error("exp_ad: element not ad-nilpotent");
    }
    return result;
}

Mat ChevalleyAlgebra::weyl_lift(const Vec& root) const {
    Vec e = root_vector(root);
    Vec f = root_vector(Rat(-1) * root);
    return exp_ad(e) * exp_ad(Rat(-1) * f) * exp_ad(e);
}

Mat ChevalleyAlgebra::weyl_lift_of(const Mat& weyl_matrix) const {
    // decompose w into simple reflections and lift each
    Mat w = weyl_matrix;
    std::vector<size_t> word;
    size_t guard = 0;
    while (true) {
        // find simple alpha_i with w(alpha_i) negative
        bool found = false;
        for (size_t i = 0; i < rank_; ++i) {
            Vec img = mat_apply(w, datum_->simple_roots()[i]);
            Vec c = datum_->simple_root_coordinates(img);
            bool neg = false;
            for (auto& x : c)
                if (x < 0) { neg = true; break; }
            if (neg) {
                // w := w s_i ; word records s_i on the right
                w = w * datum_->reflection_matrix(datum_->simple_roots()[i]);
                word.push_back(i);
                found = true;
                break;
            }
        }
        if (!found) break;
        if (++guard > 10000) throw std::runtime_error("weyl word extraction stuck");
    }
    // now w should be the identity on the root span
    for (size_t i = 0; i < rank_; ++i) {
        Vec img = mat_apply(w, datum_->simple_roots()[i]);
        if (!(img == datum_->simple_roots()[i]))
            throw std::runtime_error("matrix is not in the Weyl group");
    }
    // weyl_matrix = s_{i_k} ... s_{i_1} reading word in reverse
    Mat lift = Mat::identity(dim_);
    for (auto it = word.rbegin(); it != word.rend(); ++it)
        lift = lift * weyl_lift(datum_->simple_roots()[*it]);
    return lift;
}

std::string ChevalleyAlgebra::serialize() const {
    std::ostringstream os;
    os << "weylkit-chevalley v1\n";
    os << "datum " << datum_->name() << "\n";
    os << "dim " << dim_ << "\n";
    for (size_t i = 0; i < dim_; ++i)
        for (size_t j = i + 1; j < dim_; ++j) {
            const auto& sv = brk_[i][j];
            if (sv.terms.empty()) continue;
            os << "brk " << i << " " << j;
            for (auto& [k, c] : sv.terms) os << " " << k << ":" << c.get_str();
            os << "\n";
        }
    return os.str();
}

}  // namespace weylkit::liealg
