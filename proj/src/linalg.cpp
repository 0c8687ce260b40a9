#include "weylkit/linalg.hpp"

#include <sstream>
#include <stdexcept>

namespace weylkit {

Rat rat(long num, long den) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

Rat rat_parse(const std::string& s) {
    Rat r;
    if (r.set_str(s, 10) != 0) throw std::runtime_error("bad rational: " + s);
    r.canonicalize();
    return r;
}

std::string rat_str(const Rat& x) { return x.get_str(); }

Mat Mat::identity(size_t n) {
    Mat m(n, n);
    for (size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

Mat Mat::from_rows(const std::vector<Vec>& rows_in) {
    if (rows_in.empty()) return Mat();
    Mat m(rows_in.size(), rows_in[0].size());
    for (size_t i = 0; i < rows_in.size(); ++i) {
        if (rows_in[i].size() != m.cols) throw std::runtime_error("ragged rows");
        for (size_t j = 0; j < m.cols; ++j) m(i, j) = rows_in[i][j];
    }
    return m;
}

Vec Mat::row(size_t i) const {
    Vec v(cols);
    for (size_t j = 0; j < cols; ++j) v[j] = (*this)(i, j);
    return v;
}

Vec Mat::col(size_t j) const {
    Vec v(rows);
    for (size_t i = 0; i < rows; ++i) v[i] = (*this)(i, j);
    return v;
}

Mat Mat::transposed() const {
    Mat t(cols, rows);
    for (size_t i = 0; i < rows; ++i)
        for (size_t j = 0; j < cols; ++j) t(j, i) = (*this)(i, j);
    return t;
}

Vec operator+(const Vec& x, const Vec& y) {
    Vec z(x.size());
    for (size_t i = 0; i < x.size(); ++i) z[i] = x[i] + y[i];
    return z;
}

Vec operator-(const Vec& x, const Vec& y) {
    Vec z(x.size());
    for (size_t i = 0; i < x.size(); ++i) z[i] = x[i] - y[i];
    return z;
}

Vec operator*(const Rat& c, const Vec& x) {
    Vec z(x.size());
    for (size_t i = 0; i < x.size(); ++i) z[i] = c * x[i];
    return z;
}

Vec& operator+=(Vec& x, const Vec& y) {
    for (size_t i = 0; i < x.size(); ++i) x[i] += y[i];
    return x;
}

bool is_zero(const Vec& x) {
    for (auto& c : x)
        if (c != 0) return false;
    return true;
}

Rat dot(const Vec& x, const Vec& y) {
    Rat s(0);
    for (size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return s;
}

Vec zero_vec(size_t n) { return Vec(n, Rat(0)); }

Mat operator*(const Mat& x, const Mat& y) {
    if (x.cols != y.rows) throw std::runtime_error("mat mul shape");
    Mat z(x.rows, y.cols);
    for (size_t i = 0; i < x.rows; ++i)
        for (size_t k = 0; k < x.cols; ++k) {
            const Rat& c = x(i, k);
            if (c == 0) continue;
            for (size_t j = 0; j < y.cols; ++j) {
                if (y(k, j) != 0) z(i, j) += c * y(k, j);
            }
        }
    return z;
}

Mat operator+(const Mat& x, const Mat& y) {
    Mat z = x;
    for (size_t i = 0; i < z.a.size(); ++i) z.a[i] += y.a[i];
    return z;
}

Mat operator-(const Mat& x, const Mat& y) {
    Mat z = x;
    for (size_t i = 0; i < z.a.size(); ++i) z.a[i] -= y.a[i];
    return z;
}

Mat operator*(const Rat& c, const Mat& x) {
    Mat z = x;
    for (auto& e : z.a) e *= c;
    return z;
}

Vec mat_apply(const Mat& m, const Vec& v) {
    if (m.cols != v.size()) throw std::runtime_error("mat apply shape");
    Vec out(m.rows, Rat(0));
    for (size_t i = 0; i < m.rows; ++i)
        for (size_t j = 0; j < m.cols; ++j)
            if (m(i, j) != 0 && v[j] != 0) out[i] += m(i, j) * v[j];
    return out;
}

Mat commutator(const Mat& x, const Mat& y) { return x * y - y * x; }

Rat mat_trace(const Mat& m) {
    Rat s(0);
    for (size_t i = 0; i < m.rows; ++i) s += m(i, i);
    return s;
}

std::vector<size_t> rref(Mat& m) {
    std::vector<size_t> pivots;
    size_t r = 0;
    for (size_t c = 0; c < m.cols && r < m.rows; ++c) {
        size_t p = r;
        while (p < m.rows && m(p, c) == 0) ++p;
        if (p == m.rows) continue;
        if (p != r)
            for (size_t j = 0; j < m.cols; ++j) std::swap(m(p, j), m(r, j));
        Rat inv = 1 / m(r, c);
        for (size_t j = c; j < m.cols; ++j) m(r, j) *= inv;
        for (size_t i = 0; i < m.rows; ++i) {
            if (i == r || m(i, c) == 0) continue;
            Rat f = m(i, c);
            for (size_t j = c; j < m.cols; ++j) m(i, j) -= f * m(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    // drop zero rows
    Mat out(pivots.size(), m.cols);
    for (size_t i = 0; i < pivots.size(); ++i)
        for (size_t j = 0; j < m.cols; ++j) out(i, j) = m(i, j);
    m = out;
    return pivots;
}

Mat mat_inverse(const Mat& m) {
    if (m.rows != m.cols) throw std::runtime_error("inverse of non-square");
    size_t n = m.rows;
    Mat w(n, 2 * n);
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) w(i, j) = m(i, j);
        w(i, n + i) = 1;
    }
    auto piv = rref(w);
    if (piv.size() != n || piv.back() != n - 1)
        throw std::runtime_error("singular matrix");
    Mat inv(n, n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) inv(i, j) = w(i, n + j);
    return inv;
}

Rat mat_det(const Mat& m) {
    if (m.rows != m.cols) throw std::runtime_error("det of non-square");
    Mat w = m;
    size_t n = m.rows;
    Rat det(1);
    for (size_t c = 0, r = 0; c < n && r < n; ++c, ++r) {
        size_t p = r;
        while (p < n && w(p, c) == 0) ++p;
        if (p == n) return Rat(0);
        if (p != r) {
            for (size_t j = 0; j < n; ++j) std::swap(w(p, j), w(r, j));
            det = -det;
        }
        det *= w(r, c);
        Rat inv = 1 / w(r, c);
        for (size_t i = r + 1; i < n; ++i) {
            if (w(i, c) == 0) continue;
            Rat f = w(i, c) * inv;
            for (size_t j = c; j < n; ++j) w(i, j) -= f * w(r, j);
        }
    }
    return det;
}

bool mat_is_nilpotent(const Mat& m) {
    if (m.rows != m.cols) throw std::runtime_error("nilpotent of non-square");
    Mat p = m;
    size_t k = 1;
    while (k < 2 * m.rows) {
        bool zero = true;
        for (auto& e : p.a)
            if (e != 0) { zero = false; break; }
        if (zero) return true;
        p = p * p;
        k *= 2;
    }
    return false;
}

Subspace Subspace::span(size_t ambient, const std::vector<Vec>& gens) {
    Subspace s(ambient);
    if (!gens.empty()) {
        Mat m = Mat::from_rows(gens);
        if (m.cols != ambient) throw std::runtime_error("span ambient mismatch");
        rref(m);
        s.basis_ = m;
    }
    return s;
}

Subspace Subspace::full(size_t ambient) {
    Subspace s(ambient);
    s.basis_ = Mat::identity(ambient);
    return s;
}

std::vector<Vec> Subspace::basis_vectors() const {
    std::vector<Vec> out;
    for (size_t i = 0; i < basis_.rows; ++i) out.push_back(basis_.row(i));
    return out;
}

bool Subspace::contains(const Vec& v) const { return coordinates(v).has_value(); }

std::optional<Vec> Subspace::coordinates(const Vec& v) const {
    if (v.size() != ambient_) throw std::runtime_error("contains ambient mismatch");
    // reduce v against the RREF basis
    Vec w = v;
    Vec coord(basis_.rows, Rat(0));
    for (size_t i = 0; i < basis_.rows; ++i) {
        size_t pc = 0;
        while (pc < ambient_ && basis_(i, pc) == 0) ++pc;
        if (pc == ambient_) continue;
        if (w[pc] != 0) {
            Rat f = w[pc];  // pivot entries are 1
            coord[i] = f;
            for (size_t j = 0; j < ambient_; ++j) w[j] -= f * basis_(i, j);
        }
    }
    if (!is_zero(w)) return std::nullopt;
    return coord;
}

bool Subspace::contains(const Subspace& other) const {
    for (size_t i = 0; i < other.basis_.rows; ++i)
        if (!contains(other.basis_.row(i))) return false;
    return true;
}

Subspace Subspace::sum(const Subspace& other) const {
    std::vector<Vec> gens = basis_vectors();
    for (auto& v : other.basis_vectors()) gens.push_back(v);
    return Subspace::span(ambient_, gens);
}

Subspace Subspace::intersect(const Subspace& other) const {
    // Zassenhaus: row reduce [A A; B 0]; rows with zero left half give the
    // intersection in the right half.
    size_t n = ambient_;
    size_t r1 = basis_.rows, r2 = other.basis_.rows;
    Mat w(r1 + r2, 2 * n);
    for (size_t i = 0; i < r1; ++i)
        for (size_t j = 0; j < n; ++j) { w(i, j) = basis_(i, j); w(i, n + j) = basis_(i, j); }
    for (size_t i = 0; i < r2; ++i)
        for (size_t j = 0; j < n; ++j) w(r1 + i, j) = other.basis_(i, j);
    rref(w);
    std::vector<Vec> inter;
    for (size_t i = 0; i < w.rows; ++i) {
        bool left_zero = true;
        for (size_t j = 0; j < n; ++j)
            if (w(i, j) != 0) { left_zero = false; break; }
        if (left_zero) {
            Vec v(n);
            for (size_t j = 0; j < n; ++j) v[j] = w(i, n + j);
            if (!is_zero(v)) inter.push_back(v);
        }
    }
    return Subspace::span(n, inter);
}

Subspace Subspace::perp() const {
    return kernel(basis_);
}

Subspace Subspace::perp(const Mat& gram) const {
    return kernel(basis_ * gram);
}

Subspace kernel(const Mat& m) {
    Mat w = m;
    auto pivots = rref(w);
    size_t n = m.cols;
    std::vector<bool> is_pivot(n, false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<Vec> basis;
    for (size_t free = 0; free < n; ++free) {
        if (is_pivot[free]) continue;
        Vec v(n, Rat(0));
        v[free] = 1;
        for (size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -w(i, free);
        basis.push_back(v);
    }
    return Subspace::span(n, basis);
}

Subspace column_space(const Mat& m) {
    std::vector<Vec> cols;
    for (size_t j = 0; j < m.cols; ++j) cols.push_back(m.col(j));
    return Subspace::span(m.rows, cols);
}

std::optional<Vec> solve(const Mat& m, const Vec& b) {
    Mat w(m.rows, m.cols + 1);
    for (size_t i = 0; i < m.rows; ++i) {
        for (size_t j = 0; j < m.cols; ++j) w(i, j) = m(i, j);
        w(i, m.cols) = b[i];
    }
    auto piv = rref(w);
    Vec x(m.cols, Rat(0));
    for (size_t i = 0; i < piv.size(); ++i) {
        if (piv[i] == m.cols) return std::nullopt;  // inconsistent
        x[piv[i]] = w(i, m.cols);
    }
    return x;
}

Vec project(const Subspace& s, const Mat& gram, const Vec& v) {
    // Solve (B G B^T) c = B G v, projection = B^T c.
    const Mat& B = s.basis();
    if (s.dim() == 0) return zero_vec(s.ambient());
    Mat BG = B * gram;
    Mat G2 = BG * B.transposed();
    Vec rhs = mat_apply(BG, v);
    auto c = solve(G2, rhs);
    if (!c) throw std::runtime_error("degenerate form on subspace");
    Vec out = zero_vec(s.ambient());
    for (size_t i = 0; i < B.rows; ++i) out += (*c)[i] * B.row(i);
    return out;
}

Vec primitive_integer(const Vec& v) {
    mpz_class lcm_den(1), gcd_num(0);
    for (auto& c : v) lcm_den = lcm(lcm_den, c.get_den());
    Vec w(v.size());
    for (size_t i = 0; i < v.size(); ++i) {
        Rat x = v[i] * Rat(lcm_den);
        x.canonicalize();
        w[i] = x;
        gcd_num = gcd(gcd_num, x.get_num());
    }
    if (gcd_num == 0) return w;
    for (auto& c : w) { c /= Rat(gcd_num); c.canonicalize(); }
    return w;
}

uint64_t hash_vec(const Vec& v) {
    uint64_t h = 1469598103934665603ull;
    auto mix = [&h](uint64_t x) {
        h ^= x;
        h *= 1099511628211ull;
    };
    for (auto& c : v) {
        mix(mpz_get_ui(c.get_num_mpz_t()) ^ (uint64_t)mpz_sgn(c.get_num_mpz_t()));
        mix(mpz_get_ui(c.get_den_mpz_t()));
    }
    return h;
}

uint64_t hash_mat(const Mat& m) {
    uint64_t h = hash_vec(m.a);
    h ^= (uint64_t)m.rows * 0x9e3779b97f4a7c15ull;
    return h;
}

std::string vec_str(const Vec& v) {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) os << ",";
        os << v[i].get_str();
    }
    os << ")";
    return os.str();
}

}  // namespace weylkit
