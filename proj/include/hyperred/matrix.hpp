#pragma once

#include "hyperred/arith.hpp"
#include "hyperred/poly.hpp"

#include <optional>
#include <string>
#include <vector>

namespace hyperred {

// Dense row-major matrix.
template <class T>
struct Matrix {
    int rows = 0, cols = 0;
    std::vector<T> a;

    Matrix() = default;
    Matrix(int r, int c) : rows(r), cols(c), a((size_t)r * c, T(0)) {}
    Matrix(int r, int c, std::vector<T> data) : rows(r), cols(c), a(std::move(data)) {}

    T& operator()(int i, int j) { return a[(size_t)i * cols + j]; }
    const T& operator()(int i, int j) const { return a[(size_t)i * cols + j]; }

    static Matrix identity(int n) {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }
    std::vector<T> col(int j) const {
        std::vector<T> v(rows);
        for (int i = 0; i < rows; ++i) v[i] = (*this)(i, j);
        return v;
    }
    void set_col(int j, const std::vector<T>& v) {
        for (int i = 0; i < rows; ++i) (*this)(i, j) = v[i];
    }
    Matrix transpose() const {
        Matrix t(cols, rows);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) t(j, i) = (*this)(i, j);
        return t;
    }
    friend bool operator==(const Matrix& x, const Matrix& y) {
        return x.rows == y.rows && x.cols == y.cols && x.a == y.a;
    }
    friend bool operator!=(const Matrix& x, const Matrix& y) { return !(x == y); }
};

template <class T>
Matrix<T> operator*(const Matrix<T>& x, const Matrix<T>& y) {
    Matrix<T> z(x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int k = 0; k < x.cols; ++k) {
            if (x(i, k) == 0) continue;
            for (int j = 0; j < y.cols; ++j) z(i, j) += x(i, k) * y(k, j);
        }
    return z;
}
template <class T>
Matrix<T> operator+(Matrix<T> x, const Matrix<T>& y) {
    for (size_t i = 0; i < x.a.size(); ++i) x.a[i] += y.a[i];
    return x;
}
template <class T>
Matrix<T> operator-(Matrix<T> x, const Matrix<T>& y) {
    for (size_t i = 0; i < x.a.size(); ++i) x.a[i] -= y.a[i];
    return x;
}
template <class T>
std::vector<T> operator*(const Matrix<T>& x, const std::vector<T>& v) {
    std::vector<T> r(x.rows, T(0));
    for (int i = 0; i < x.rows; ++i)
        for (int j = 0; j < x.cols; ++j) r[i] += x(i, j) * v[j];
    return r;
}

using QMat = Matrix<Rat>;
using ZMat = Matrix<Int>;
using QVec = std::vector<Rat>;
using ZVec = std::vector<Int>;

QMat to_q(const ZMat& m);
// Throws InvalidInput if some entry is not an integer.
ZMat to_z(const QMat& m);
bool is_integral(const QMat& m);
Int denominator(const QMat& m);

Rat det(const QMat& m);
QMat inverse(const QMat& m); // throws InvalidInput when singular
int rank(const QMat& m);
// Basis of the right kernel {v : m v = 0}, as columns.
QMat nullspace(const QMat& m);
// Characteristic polynomial det(x I - m).
RatPoly charpoly(const QMat& m);
Rat trace(const QMat& m);
Rat dot(const QVec& a, const QVec& b);
// x^T G y
Rat bilinear(const QMat& G, const QVec& x, const QVec& y);
QMat hstack(const QMat& a, const QMat& b);
QMat column_block(const QMat& m, int j0, int j1); // columns [j0, j1)

// Row Hermite normal form: H = U A with H in echelon form, positive pivots,
// entries above each pivot reduced into [0, pivot). Zero rows at the bottom.
struct HnfResult {
    ZMat H, U;
    int rank = 0;
};
HnfResult hnf_rows(const ZMat& A);

// Lattices are given by generating columns over Q. Results are bases (columns).
QMat lattice_basis(const QMat& gens);
QMat lattice_sum(const QMat& a, const QMat& b);
// Full-rank lattices only.
QMat lattice_dual(const QMat& a);
QMat lattice_intersection(const QMat& a, const QMat& b);
// Intersection of sublattices of Z^n given by integer columns (any rank).
ZMat sublattice_intersection(const ZMat& a, const ZMat& b);
// Q-span of the columns intersected with Z^n.
ZMat saturation(const ZMat& a);
// Integer left-kernel basis of A: rows x with x A = 0.
ZMat integer_left_kernel(const ZMat& A);
// Canonical form used for lattice equality: column-HNF of the basis.
QMat canonical_basis(const QMat& basis);
bool same_lattice(const QMat& a, const QMat& b);
// b ⊆ a for full-rank a.
bool lattice_contains(const QMat& a, const QMat& b);
// Coordinates of v in the basis a (square, invertible).
QVec coordinates(const QMat& a, const QVec& v);
Int gcd_of(const ZVec& v);
bool is_primitive(const ZVec& v);

// Exact LLL (delta = 3/4) for the positive definite rational Gram matrix G.
// Returns the unimodular transform C (columns are the new basis in old coordinates).
// LLL for an indefinite nondegenerate Gram matrix, with |b_i^*|^2 in the Lovasz test.
// Stops early when a Gram-Schmidt vector is isotropic and returns a primitive
// integral isotropic vector (coordinates in the input basis).
struct IndefiniteLll {
    ZMat C;
    std::optional<ZVec> isotropic;
};
IndefiniteLll lll_indefinite(const QMat& G);
ZMat lll_gram(const QMat& G);

std::string to_string(const QMat& m);

} // namespace hyperred
