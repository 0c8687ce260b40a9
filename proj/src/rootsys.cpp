#include "weylkit/rootsys.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace weylkit::rootsys {

std::string series_name(Series s) {
    switch (s) {
        case Series::A: return "A";
        case Series::B: return "B";
        case Series::C: return "C";
        case Series::D: return "D";
        case Series::E6: return "E6";
        case Series::E7: return "E7";
        case Series::E8: return "E8";
        case Series::F4: return "F4";
        case Series::G2: return "G2";
    }
    return "?";
}

Series series_parse(const std::string& s) {
    if (s == "A") return Series::A;
    if (s == "B") return Series::B;
    if (s == "C") return Series::C;
    if (s == "D") return Series::D;
    if (s == "E6") return Series::E6;
    if (s == "E7") return Series::E7;
    if (s == "E8") return Series::E8;
    if (s == "F4") return Series::F4;
    if (s == "G2") return Series::G2;
    throw std::runtime_error("unknown series " + s);
}

namespace {

Vec unit(size_t dim, size_t i, Rat c = Rat(1)) {
    Vec v(dim, Rat(0));
    v[i] = c;
    return v;
}

// Canonicalize within one factor: subtract the average over the first
// `sumzero` coordinates.
void canonicalize_factor(Vec& v, const SimpleFactor& f) {
    if (f.sumzero == 0) return;
    Rat s(0);
    for (size_t i = 0; i < f.sumzero; ++i) s += v[f.offset + i];
    if (s == 0) return;
    Rat avg = s / Rat((long)f.sumzero);
    for (size_t i = 0; i < f.sumzero; ++i) v[f.offset + i] -= avg;
}

struct SimpleData {
    size_t dim;
    size_t sumzero;
    Mat gram;
    std::vector<Vec> simple;
};

SimpleData make_simple_data(Series s, int n) {
    SimpleData d;
    switch (s) {
        case Series::A: {
            if (n < 1) throw std::runtime_error("A rank >= 1");
            d.dim = n + 1;
            d.sumzero = n + 1;
            d.gram = Mat::identity(d.dim);
            for (int i = 0; i < n; ++i)
                d.simple.push_back(unit(d.dim, i) - unit(d.dim, i + 1));
            break;
        }
        case Series::B: {
            if (n < 2) throw std::runtime_error("B rank >= 2");
            d.dim = n;
            d.sumzero = 0;
            d.gram = Mat::identity(d.dim);
            for (int i = 0; i + 1 < n; ++i)
                d.simple.push_back(unit(d.dim, i) - unit(d.dim, i + 1));
            d.simple.push_back(unit(d.dim, n - 1));
            break;
        }
        case Series::C: {
            if (n < 2) throw std::runtime_error("C rank >= 2");
            d.dim = n;
            d.sumzero = 0;
            d.gram = Mat::identity(d.dim);
            for (int i = 0; i + 1 < n; ++i)
                d.simple.push_back(unit(d.dim, i) - unit(d.dim, i + 1));
            d.simple.push_back(unit(d.dim, n - 1, Rat(2)));
            break;
        }
        case Series::D: {
            if (n < 3) throw std::runtime_error("D rank >= 3");
            d.dim = n;
            d.sumzero = 0;
            d.gram = Mat::identity(d.dim);
            for (int i = 0; i + 1 < n; ++i)
                d.simple.push_back(unit(d.dim, i) - unit(d.dim, i + 1));
            d.simple.push_back(unit(d.dim, n - 2) + unit(d.dim, n - 1));
            break;
        }
        case Series::G2: {
            // eps_i with eps_1+eps_2+eps_3 = 0; alpha_1 = eps_1 (short),
            // alpha_2 = eps_2 - eps_1 (long)
            d.dim = 3;
            d.sumzero = 3;
            d.gram = Mat::identity(3);
            d.simple.push_back(unit(3, 0));
            d.simple.push_back(unit(3, 1) - unit(3, 0));
            break;
        }
        case Series::F4: {
            // alpha_1 = (e1-e2-e3-e4)/2, alpha_2 = e4, alpha_3 = e3-e4,
            // alpha_4 = e2-e3
            d.dim = 4;
            d.sumzero = 0;
            d.gram = Mat::identity(4);
            Vec a1(4);
            a1[0] = Rat(1, 2); a1[1] = Rat(-1, 2); a1[2] = Rat(-1, 2); a1[3] = Rat(-1, 2);
            d.simple.push_back(a1);
            d.simple.push_back(unit(4, 3));
            d.simple.push_back(unit(4, 2) - unit(4, 3));
            d.simple.push_back(unit(4, 1) - unit(4, 2));
            break;
        }
        case Series::E6: {
            // eps_1..eps_6 (sum zero) and an extra coordinate eps with
            // (eps,eps) = 1/2; alpha_i = eps_i - eps_{i+1} (i<=5),
            // alpha_6 = eps_4+eps_5+eps_6+eps.
            d.dim = 7;
            d.sumzero = 6;
            d.gram = Mat::identity(7);
            d.gram(6, 6) = Rat(1, 2);
            for (int i = 0; i < 5; ++i)
                d.simple.push_back(unit(7, i) - unit(7, i + 1));
            Vec a6(7, Rat(0));
            a6[3] = a6[4] = a6[5] = 1; a6[6] = 1;
            d.simple.push_back(a6);
            break;
        }
        case Series::E7: {
            // eps_1..eps_8, sum zero; roots eps_i-eps_j and 4-element sums.
            d.dim = 8;
            d.sumzero = 8;
            d.gram = Mat::identity(8);
            for (int i = 0; i < 5; ++i)
                d.simple.push_back(unit(8, i) - unit(8, i + 1));
            Vec s4(8, Rat(0));
            s4[4] = s4[5] = s4[6] = s4[7] = 1;
            d.simple.push_back(s4);                       // alpha_6, branch
            d.simple.push_back(unit(8, 5) - unit(8, 6));  // alpha_7
            break;
        }
        case Series::E8: {
            // eps_1..eps_9, sum zero; roots eps_i-eps_j and 3-element sums.
            d.dim = 9;
            d.sumzero = 9;
            d.gram = Mat::identity(9);
            for (int i = 0; i < 7; ++i)
                d.simple.push_back(unit(9, i) - unit(9, i + 1));
            Vec s3(9, Rat(0));
            s3[5] = s3[6] = s3[7] = 1;
            d.simple.push_back(s3);  // alpha_8, branch at alpha_5
            break;
        }
        default:
            throw std::runtime_error("bad series");
    }
    return d;
}

int expected_root_count(Series s, int n) {
    switch (s) {
        case Series::A: return n * (n + 1);
        case Series::B:
        case Series::C: return 2 * n * n;
        case Series::D: return 2 * n * (n - 1);
        case Series::E6: return 72;
        case Series::E7: return 126;
        case Series::E8: return 240;
        case Series::F4: return 48;
        case Series::G2: return 12;
    }
    return -1;
}

}  // namespace

RootDatumPtr RootDatum::simple(Series s, int rank) {
    auto rd = std::make_shared<RootDatum>();
    SimpleData sd = make_simple_data(s, rank);
    SimpleFactor f{s, rank, sd.dim, 0, sd.gram, sd.sumzero};
    rd->factors_.push_back(f);
    rd->dim_ = sd.dim;
    rd->gram_ = sd.gram;
    for (auto& a : sd.simple) {
        Vec v = a;
        canonicalize_factor(v, f);
        rd->simple_roots_.push_back(v);
    }
    rd->finish();
    if ((int)rd->roots_.size() != expected_root_count(s, rank))
        throw std::runtime_error("root closure count mismatch for " + rd->name());
    return rd;
}

RootDatumPtr RootDatum::product(const std::vector<RootDatumPtr>& factors) {
    if (factors.size() == 1) return factors[0];
    auto rd = std::make_shared<RootDatum>();
    size_t off = 0;
    for (auto& p : factors)
        for (auto& f : p->factors()) {
            SimpleFactor g = f;
            g.offset = off + f.offset;
        }
    // flatten with recomputed offsets
    for (auto& p : factors) {
        for (auto& f : p->factors()) {
            SimpleFactor g = f;
            g.offset += off;
            rd->factors_.push_back(g);
        }
        off += p->ambient_dim();
    }
    rd->dim_ = off;
    rd->gram_ = Mat(off, off);
    size_t o = 0;
    for (auto& p : factors) {
        const Mat& g = p->gram();
        for (size_t i = 0; i < g.rows; ++i)
            for (size_t j = 0; j < g.cols; ++j) rd->gram_(o + i, o + j) = g(i, j);
        o += p->ambient_dim();
    }
    o = 0;
    for (auto& p : factors) {
        for (auto& a : p->simple_roots()) {
            Vec v(rd->dim_, Rat(0));
            for (size_t i = 0; i < a.size(); ++i) v[o + i] = a[i];
            rd->simple_roots_.push_back(v);
        }
        o += p->ambient_dim();
    }
    rd->finish();
    return rd;
}

void RootDatum::finish() {
    // close the simple roots under the generated reflections
    std::unordered_set<uint64_t> seen;
    std::deque<Vec> queue;
    auto push = [&](const Vec& v) {
        uint64_t h = hash_vec(v);
        // resolve collisions exactly
        auto range = root_hash_.find(h);
        if (range != root_hash_.end())
            for (int idx : range->second)
                if (roots_[idx] == v) return;
        root_hash_[h].push_back((int)roots_.size());
        roots_.push_back(v);
        queue.push_back(v);
    };
    for (auto& a : simple_roots_) push(a);
    while (!queue.empty()) {
        Vec v = queue.front();
        queue.pop_front();
        for (auto& a : simple_roots_) {
            push(reflect(a, v));
            // also reflect existing roots in v to be safe for closure
        }
        // reflect all current roots by s_v as well (full closure)
        size_t n = roots_.size();
        for (size_t i = 0; i < n; ++i) push(reflect(v, roots_[i]));
    }
    // positivity via simple-root coordinates
    for (auto& r : roots_) {
        Vec c = simple_root_coordinates(r);
        bool pos = true;
        for (auto& x : c)
            if (x < 0) { pos = false; break; }
        if (pos) positive_.push_back(r);
    }
    std::sort(positive_.begin(), positive_.end(), [&](const Vec& x, const Vec& y) {
        Rat hx(0), hy(0);
        Vec cx = simple_root_coordinates(x), cy = simple_root_coordinates(y);
        for (auto& c : cx) hx += c;
        for (auto& c : cy) hy += c;
        if (hx != hy) return hx < hy;
        return cx < cy;
    });
    if (2 * positive_.size() != roots_.size())
        throw std::runtime_error("positive system size mismatch");
    // fundamental weights: pi_i = sum_j (C^{-1})_{ji} alpha_j with
    // C_{kj} = <alpha_j, alpha_k^vee>
    size_t r = simple_roots_.size();
    Mat cartan(r, r);
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < r; ++j)
            cartan(i, j) = pairing(simple_roots_[j], simple_roots_[i]);
    Mat cinv = mat_inverse(cartan);
    for (size_t i = 0; i < r; ++i) {
        Vec w = zero_vec(dim_);
        for (size_t j = 0; j < r; ++j) w += cinv(j, i) * simple_roots_[j];
        fundamental_.push_back(w);
    }
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < r; ++j)
            if (pairing(fundamental_[i], simple_roots_[j]) != Rat(i == j ? 1 : 0))
                throw std::runtime_error("fundamental weight solve failed");
}

bool RootDatum::is_root(const Vec& v) const { return root_index(v) >= 0; }

int RootDatum::root_index(const Vec& v) const {
    auto it = root_hash_.find(hash_vec(v));
    if (it == root_hash_.end()) return -1;
    for (int idx : it->second)
        if (roots_[idx] == v) return idx;
    return -1;
}

Rat RootDatum::inner(const Vec& x, const Vec& y) const {
    Rat s(0);
    for (size_t i = 0; i < dim_; ++i) {
        if (x[i] == 0) continue;
        for (size_t j = 0; j < dim_; ++j)
            if (gram_(i, j) != 0 && y[j] != 0) s += x[i] * gram_(i, j) * y[j];
    }
    return s;
}

Rat RootDatum::pairing(const Vec& x, const Vec& alpha) const {
    return 2 * inner(x, alpha) / inner(alpha, alpha);
}

Vec RootDatum::coroot(const Vec& alpha) const {
    return (2 / inner(alpha, alpha)) * alpha;
}

bool RootDatum::is_long(const Vec& alpha) const {
    int f = factor_of_root(alpha);
    if (f < 0) throw std::runtime_error("is_long: not a root");
    Rat len = inner(alpha, alpha), mx(0);
    for (auto& r : roots_)
        if (factor_of_root(r) == f) mx = std::max(mx, inner(r, r));
    return len == mx;
}

bool RootDatum::is_short(const Vec& alpha) const { return !is_long(alpha); }

Vec RootDatum::reflect(const Vec& alpha, const Vec& x) const {
    return x - pairing(x, alpha) * alpha;
}

Mat RootDatum::reflection_matrix(const Vec& alpha) const {
    Mat m = Mat::identity(dim_);
    Vec ga = mat_apply(gram_, alpha);
    Rat c = 2 / inner(alpha, alpha);
    for (size_t i = 0; i < dim_; ++i)
        for (size_t j = 0; j < dim_; ++j) m(i, j) -= c * alpha[i] * ga[j];
    return m;
}

Vec RootDatum::canonicalize(const Vec& v) const {
    Vec w = v;
    for (auto& f : factors_) canonicalize_factor(w, f);
    return w;
}

Vec RootDatum::simple_root_coordinates(const Vec& root) const {
    // solve root = sum c_i alpha_i via the pairing with coroots
    size_t r = simple_roots_.size();
    Mat m(r, r);
    Vec b(r);
    for (size_t i = 0; i < r; ++i) {
        for (size_t j = 0; j < r; ++j) m(i, j) = pairing(simple_roots_[j], simple_roots_[i]);
        b[i] = pairing(root, simple_roots_[i]);
    }
    auto x = solve(m, b);
    if (!x) throw std::runtime_error("root not in root span");
    return *x;
}

std::vector<int> RootDatum::support(const Vec& root) const {
    Vec c = simple_root_coordinates(root);
    std::vector<int> s;
    for (size_t i = 0; i < c.size(); ++i)
        if (c[i] != 0) s.push_back((int)i);
    return s;
}

Vec RootDatum::rho_weight() const {
    Vec w = zero_vec(dim_);
    for (auto& p : fundamental_) w += p;
    return w;
}

int RootDatum::factor_of_root(const Vec& root) const {
    for (size_t f = 0; f < factors_.size(); ++f) {
        const auto& fa = factors_[f];
        bool inside = true;
        for (size_t i = 0; i < dim_; ++i) {
            if (root[i] == 0) continue;
            if (i < fa.offset || i >= fa.offset + fa.dim) { inside = false; break; }
        }
        if (inside && !is_zero(root)) return (int)f;
    }
    return -1;
}

std::string RootDatum::name() const {
    std::ostringstream os;
    for (size_t i = 0; i < factors_.size(); ++i) {
        if (i) os << "x";
        os << series_name(factors_[i].series) << factors_[i].rank;
    }
    return os.str();
}

std::string RootDatum::serialize() const {
    std::ostringstream os;
    os << "weylkit-rootdata v1\n";
    os << "name " << name() << "\n";
    os << "factors";
    for (auto& f : factors_) os << " " << series_name(f.series) << ":" << f.rank;
    os << "\n";
    os << "ambient " << dim_ << "\n";
    for (auto& r : roots_) {
        os << "root";
        for (auto& c : r) os << " " << c.get_str();
        os << "\n";
    }
    return os.str();
}

RootDatumPtr parse_root_datum(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    if (!std::getline(is, line) || line != "weylkit-rootdata v1")
        throw std::runtime_error("bad rootdata header");
    std::vector<RootDatumPtr> factors;
    size_t nroots = 0;
    while (std::getline(is, line)) {
        std::istringstream ls(line);
        std::string tag;
        ls >> tag;
        if (tag == "factors") {
            std::string f;
            while (ls >> f) {
                auto colon = f.find(':');
                factors.push_back(RootDatum::simple(series_parse(f.substr(0, colon)),
                                                    std::stoi(f.substr(colon + 1))));
            }
        } else if (tag == "root") {
            ++nroots;
        }
    }
    auto rd = RootDatum::product(factors);
    if (rd->roots().size() != nroots)
        throw std::runtime_error("rootdata root count mismatch");
    return rd;
}

// ---------------------------------------------------------------------------

bool ReflectionSubgroup::contains_reflection(const Vec& root) const {
    for (auto& r : delta_gamma)
        if (r == root) return true;
    return false;
}

std::vector<Mat> generate_matrix_group(const std::vector<Mat>& gens, size_t budget) {
    std::vector<Mat> elems;
    std::unordered_map<uint64_t, std::vector<int>> seen;
    auto add = [&](const Mat& m) -> bool {
        uint64_t h = hash_mat(m);
        auto it = seen.find(h);
        if (it != seen.end())
            for (int i : it->second)
                if (elems[i] == m) return false;
        seen[h].push_back((int)elems.size());
        elems.push_back(m);
        return true;
    };
    if (gens.empty()) return elems;
    add(Mat::identity(gens[0].rows));
    std::deque<size_t> queue{0};
    while (!queue.empty()) {
        size_t i = queue.front();
        queue.pop_front();
        for (auto& g : gens) {
            Mat m = g * elems[i];
            if (elems.size() >= budget && add(m))
                throw std::runtime_error("matrix group budget exceeded");
            else if (add(m))
                queue.push_back(elems.size() - 1);
        }
    }
    return elems;
}

std::vector<Vec> reflections_in(const RootDatumPtr& datum, const std::vector<Mat>& elements) {
    std::unordered_set<uint64_t> have;
    std::vector<Vec> out;
    for (auto& e : elements) have.insert(hash_mat(e));
    auto in_group = [&](const Mat& m) {
        if (!have.count(hash_mat(m))) return false;
        for (auto& e : elements)
            if (e == m) return true;
        return false;
    };
    for (auto& r : datum->roots()) {
        if (in_group(datum->reflection_matrix(r))) out.push_back(r);
    }
    return out;
}

namespace {

std::vector<Vec> simple_system_of(const RootDatumPtr& datum, const std::vector<Vec>& delta) {
    // positive part w.r.t. the ambient positive system
    std::vector<Vec> pos;
    for (auto& r : delta) {
        Vec c = datum->simple_root_coordinates(r);
        bool p = true;
        for (auto& x : c)
            if (x < 0) { p = false; break; }
        if (p) pos.push_back(r);
    }
    std::vector<Vec> simple;
    for (auto& a : pos) {
        bool ok = true;
        for (auto& b : pos) {
            if (b == a) continue;
            Vec rb = datum->reflect(a, b);
            // rb must stay positive within delta
            Vec c = datum->simple_root_coordinates(rb);
            bool still_pos = true;
            for (auto& x : c)
                if (x < 0) { still_pos = false; break; }
            if (!still_pos) { ok = false; break; }
        }
        if (ok) simple.push_back(a);
    }
    return simple;
}

}  // namespace

ReflectionSubgroup reflection_subgroup(const RootDatumPtr& datum,
                                       const std::vector<Vec>& generators,
                                       size_t order_budget) {
    ReflectionSubgroup g;
    g.ambient = datum;
    std::vector<Mat> gens;
    for (auto& r : generators) {
        if (!datum->is_root(r)) throw std::runtime_error("generator is not a root");
        gens.push_back(datum->reflection_matrix(r));
    }
    if (gens.empty()) {
        g.elements.push_back(Mat::identity(datum->ambient_dim()));
        return g;
    }
    g.elements = generate_matrix_group(gens, order_budget);
    g.delta_gamma = reflections_in(datum, g.elements);
    g.simple_system = simple_system_of(datum, g.delta_gamma);
    return g;
}

bool is_large(const ReflectionSubgroup& g) {
    const auto& datum = g.ambient;
    const auto& roots = datum->roots();
    // collect reflection root lines of the group inside each plane
    for (size_t i = 0; i < roots.size(); ++i) {
        for (size_t j = i + 1; j < roots.size(); ++j) {
            const Vec& a = roots[i];
            const Vec& b = roots[j];
            if (datum->inner(a, b) == 0) continue;
            // proportional?
            Subspace plane = Subspace::span(datum->ambient_dim(), {a, b});
            if (plane.dim() < 2) continue;
            bool found = false;
            for (auto& c : g.delta_gamma)
                if (plane.contains(c)) { found = true; break; }
            if (!found) return false;
        }
    }
    return true;
}

std::vector<std::vector<Vec>> enumerate_large(const RootDatumPtr& datum,
                                              size_t weyl_order_budget) {
    // All reflection subgroups via closure lattice BFS, then filter.
    std::vector<Mat> all;
    {
        std::vector<Mat> gens;
        for (auto& a : datum->simple_roots()) gens.push_back(datum->reflection_matrix(a));
        all = generate_matrix_group(gens, weyl_order_budget + 1);
        if (all.size() > weyl_order_budget)
            throw std::runtime_error("enumerate_large: Weyl order exceeds budget");
    }
    std::vector<Vec> pos = datum->positive_roots();
    auto key_of = [&](const std::vector<Vec>& delta_pos) {
        std::vector<Vec> s = delta_pos;
        std::sort(s.begin(), s.end());
        uint64_t h = 1469598103934665603ull;
        for (auto& v : s) h = h * 1099511628211ull + hash_vec(v);
        return h;
    };
    std::map<uint64_t, std::vector<Vec>> seen;  // key -> positive delta set
    std::deque<std::vector<Vec>> queue;
    auto positive_part = [&](const std::vector<Vec>& delta) {
        std::vector<Vec> p;
        for (auto& r : delta)
            for (auto& q : pos)
                if (q == r) p.push_back(r);
        return p;
    };
    std::vector<std::vector<Vec>> result;
    auto visit = [&](const std::vector<Vec>& gens) -> bool {
        auto g = reflection_subgroup(datum, gens, weyl_order_budget + 1);
        auto p = positive_part(g.delta_gamma);
        uint64_t k = key_of(p);
        if (seen.count(k)) return false;
        seen[k] = p;
        queue.push_back(p);
        if (is_large(g)) result.push_back(g.delta_gamma);
        return true;
    };
    visit({});
    while (!queue.empty()) {
        auto cur = queue.front();
        queue.pop_front();
        std::unordered_set<uint64_t> curset;
        for (auto& r : cur) curset.insert(hash_vec(r));
        for (auto& b : pos) {
            if (curset.count(hash_vec(b))) continue;
            auto gens = cur;
            gens.push_back(b);
            visit(gens);
        }
    }
    return result;
}

bool is_completely_perpendicular(const RootDatumPtr& datum, const std::vector<Vec>& a) {
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = i + 1; j < a.size(); ++j)
            if (datum->inner(a[i], a[j]) != 0) return false;
    Subspace span = Subspace::span(datum->ambient_dim(), a);
    size_t count = 0;
    for (auto& r : datum->roots())
        if (span.contains(r)) {
            bool in_a = false;
            for (auto& x : a)
                if (x == r || x == Rat(-1) * r) { in_a = true; break; }
            if (!in_a) return false;
            ++count;
        }
    return count == 2 * a.size();
}

std::vector<std::vector<Vec>> completely_perpendicular_subsets(
    const RootDatumPtr& datum, size_t max_size, size_t weyl_order_budget) {
    std::vector<Vec> pos = datum->positive_roots();
    std::vector<std::vector<Vec>> found;
    std::vector<Vec> cur;
    std::function<void(size_t)> rec = [&](size_t start) {
        if (!cur.empty()) found.push_back(cur);
        if (cur.size() >= max_size) return;
        for (size_t i = start; i < pos.size(); ++i) {
            cur.push_back(pos[i]);
            if (is_completely_perpendicular(datum, cur)) rec(i + 1);
            cur.pop_back();
        }
    };
    rec(0);
    // dedupe up to W-conjugacy when the Weyl group fits in budget
    std::vector<Mat> weyl;
    try {
        std::vector<Mat> gens;
        for (auto& a : datum->simple_roots()) gens.push_back(datum->reflection_matrix(a));
        weyl = generate_matrix_group(gens, weyl_order_budget);
    } catch (const std::exception&) {
        weyl.clear();
    }
    auto canon = [&](std::vector<Vec> s) {
        for (auto& v : s) {
            Vec neg = Rat(-1) * v;
            if (neg < v) v = neg;
        }
        std::sort(s.begin(), s.end());
        return s;
    };
    std::vector<std::vector<Vec>> out;
    std::set<std::vector<Vec>> reps;
    for (auto& s : found) {
        std::vector<Vec> best = canon(s);
        if (!weyl.empty()) {
            for (auto& w : weyl) {
                std::vector<Vec> img;
                for (auto& v : s) img.push_back(mat_apply(w, v));
                img = canon(img);
                if (img < best) best = img;
            }
        }
        if (!reps.count(best)) {
            reps.insert(best);
            out.push_back(s);
        }
    }
    return out;
}

Subspace fixed_subspace_of(const RootDatumPtr& datum, const std::vector<Mat>& elements) {
    size_t n = datum->ambient_dim();
    std::vector<Vec> rows;
    for (auto& w : elements) {
        Mat d = w - Mat::identity(n);
        for (size_t i = 0; i < n; ++i) rows.push_back(d.row(i));
    }
    if (rows.empty()) return Subspace::full(n);
    return kernel(Mat::from_rows(rows));
}

Subspace fixed_subspace(const ReflectionSubgroup& gamma) {
    return fixed_subspace_of(gamma.ambient, gamma.elements);
}

Cone valuation_chamber(const ReflectionSubgroup& gamma, const Subspace& a) {
    const auto& datum = gamma.ambient;
    size_t n = datum->ambient_dim();
    // check stability
    for (auto& w : gamma.elements)
        for (auto& b : a.basis_vectors())
            if (!a.contains(mat_apply(w, b)))
                throw std::runtime_error("valuation_chamber: subspace not stable");
    // collect reflection normals of the restricted action
    std::vector<Vec> normals;  // vectors in a spanning the (-1)-line of restricted reflections
    std::set<Vec> normal_set;
    for (auto& w : gamma.elements) {
        // restricted rank of (w - 1) on a
        std::vector<Vec> diff;
        for (auto& b : a.basis_vectors()) diff.push_back(mat_apply(w, b) - b);
        Subspace img = Subspace::span(n, diff);
        if (img.dim() != 1) continue;
        Vec r = primitive_integer(img.basis_vectors()[0]);
        Vec rn = Rat(-1) * r;
        if (!normal_set.count(r) && !normal_set.count(rn)) {
            normal_set.insert(r);
            normals.push_back(r);
        }
    }
    Cone cone;
    cone.space = a;
    cone.lineality = a;
    if (normals.empty()) {
        cone.simplicial = true;
        return cone;
    }
    // generic interior point of the projected antidominant chamber
    Vec p;
    {
        const auto& fw = datum->fundamental_weights();
        for (long t = 1;; ++t) {
            Vec reg = zero_vec(n);
            Rat c(1);
            for (auto& w : fw) {
                reg += c * w;
                c *= Rat(100 * t + 1, 100 * t);
            }
            Vec cand = project(a, datum->gram(), Rat(-1) * reg);
            bool ok = true;
            for (auto& r : normals)
                if (datum->inner(cand, r) == 0) { ok = false; break; }
            if (ok) { p = cand; break; }
            if (t > 50) throw std::runtime_error("valuation_chamber: no generic point");
        }
    }
    // orient normals toward p
    for (auto& r : normals)
        if (datum->inner(p, r) < 0) r = Rat(-1) * r;
    // irredundant facets: s_r permutes the other oriented normals
    std::vector<Vec> facets;
    for (auto& r : normals) {
        bool simple = true;
        for (auto& q : normals) {
            if (q == r) continue;
            Vec rq = datum->reflect(r, q);
            rq = primitive_integer(rq);
            bool still = false;
            for (auto& q2 : normals)
                if (q2 == rq) { still = true; break; }
            if (!still) { simple = false; break; }
        }
        if (simple) facets.push_back(r);
    }
    cone.inequalities = facets;
    std::vector<Vec> gram_rows;
    for (auto& r : facets) gram_rows.push_back(mat_apply(datum->gram(), r));
    Subspace wall = kernel(Mat::from_rows(gram_rows));
    cone.lineality = a.intersect(wall);
    cone.simplicial = (facets.size() + cone.lineality.dim() == a.dim());
    return cone;
}

std::string support_shape(const RootDatumPtr& datum, const Vec& root) {
    Vec c = datum->simple_root_coordinates(root);
    std::vector<int> supp;
    for (size_t i = 0; i < c.size(); ++i)
        if (c[i] != 0) supp.push_back((int)i);
    if (supp.size() == 1 && c[supp[0]] == 1) return "A1";
    if (supp.size() == 2 && c[supp[0]] == 1 && c[supp[1]] == 1) {
        const Vec& a = datum->simple_roots()[supp[0]];
        const Vec& b = datum->simple_roots()[supp[1]];
        Rat la = datum->inner(a, a), lb = datum->inner(b, b);
        if (datum->inner(a, b) == 0) return "other";
        if (la == lb) return "A2";
        // double bond: the sum is the short root alpha_1+alpha_2 of B2
        Rat ratio = la > lb ? la / lb : lb / la;
        if (ratio == 2) return "B2";
    }
    return "other";
}

}  // namespace weylkit::rootsys
