#ifndef WEYLKIT_LINALG_HPP
#define WEYLKIT_LINALG_HPP

#include <gmpxx.h>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

// Exact rational linear algebra. Everything in the library runs over Q;
// no floating point is used anywhere in the core.

namespace weylkit {

using Rat = mpq_class;

using Vec = std::vector<Rat>;

Rat rat(long num, long den = 1);
Rat rat_parse(const std::string& s);
std::string rat_str(const Rat& x);

struct Mat {
    size_t rows = 0, cols = 0;
    std::vector<Rat> a;  // row major

    Mat() = default;
    Mat(size_t r, size_t c) : rows(r), cols(c), a(r * c, Rat(0)) {}

    Rat& operator()(size_t i, size_t j) { return a[i * cols + j]; }
    const Rat& operator()(size_t i, size_t j) const { return a[i * cols + j]; }

    static Mat identity(size_t n);
    static Mat from_rows(const std::vector<Vec>& rows_in);

    Vec row(size_t i) const;
    Vec col(size_t j) const;
    Mat transposed() const;
    bool operator==(const Mat& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
};

Vec operator+(const Vec& x, const Vec& y);
Vec operator-(const Vec& x, const Vec& y);
Vec operator*(const Rat& c, const Vec& x);
Vec& operator+=(Vec& x, const Vec& y);
bool is_zero(const Vec& x);
Rat dot(const Vec& x, const Vec& y);
Vec zero_vec(size_t n);

Mat operator*(const Mat& x, const Mat& y);
Mat operator+(const Mat& x, const Mat& y);
Mat operator-(const Mat& x, const Mat& y);
Mat operator*(const Rat& c, const Mat& x);
Vec mat_apply(const Mat& m, const Vec& v);

Mat mat_inverse(const Mat& m);       // throws on singular input
Rat mat_det(const Mat& m);
bool mat_is_nilpotent(const Mat& m);

// Bracket helper for matrix Lie algebras.
Mat commutator(const Mat& x, const Mat& y);
Rat mat_trace(const Mat& m);

// Row-reduce in place; returns pivot columns. Result is the canonical
// reduced row echelon form with zero rows dropped.
std::vector<size_t> rref(Mat& m);

// A linear subspace of Q^n stored as a canonical RREF basis, so that
// equal subspaces compare equal componentwise.
class Subspace {
public:
    Subspace() = default;
    explicit Subspace(size_t ambient) : ambient_(ambient) {}
    static Subspace span(size_t ambient, const std::vector<Vec>& gens);
    static Subspace full(size_t ambient);

    size_t ambient() const { return ambient_; }
    size_t dim() const { return basis_.rows; }
    const Mat& basis() const { return basis_; }
    std::vector<Vec> basis_vectors() const;

    bool contains(const Vec& v) const;
    bool contains(const Subspace& other) const;
    // Coordinates of v in the RREF basis; nullopt if v is outside.
    std::optional<Vec> coordinates(const Vec& v) const;

    Subspace sum(const Subspace& other) const;
    Subspace intersect(const Subspace& other) const;
    // Orthogonal complement w.r.t. the standard dot product.
    Subspace perp() const;
    // Orthogonal complement w.r.t. an arbitrary symmetric form G.
    Subspace perp(const Mat& gram) const;

    bool operator==(const Subspace& o) const { return ambient_ == o.ambient_ && basis_ == o.basis_; }

private:
    size_t ambient_ = 0;
    Mat basis_;  // canonical RREF, no zero rows
};

// Kernel of m (right null space), canonical RREF basis.
Subspace kernel(const Mat& m);
// Image (column span) of m.
Subspace column_space(const Mat& m);
// Solve m x = b; nullopt if inconsistent.
std::optional<Vec> solve(const Mat& m, const Vec& b);

// Orthogonal projection of v onto S w.r.t. gram (positive definite on S).
Vec project(const Subspace& s, const Mat& gram, const Vec& v);

// Scale a rational vector to the primitive integer vector on its ray
// (positive multiple, entries integral and coprime).
Vec primitive_integer(const Vec& v);

uint64_t hash_vec(const Vec& v);
uint64_t hash_mat(const Mat& m);

std::string vec_str(const Vec& v);

}  // namespace weylkit

#endif
