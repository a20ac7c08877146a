#pragma once

#include "frobmor/fp.hpp"
#include "frobmor/fp_kernels.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace frobmor {

struct error : std::runtime_error {
    explicit error(const std::string& m) : std::runtime_error(m) {}
};

// Dense matrix over F_p, row-major, entries kept reduced. Matrices act on
// column vectors from the left, so composition of maps is matrix product
// g.mat * f.mat. Every matrix carries its modulus; mixing moduli throws.
class Matrix {
public:
    Matrix() = default;
    Matrix(int rows, int cols, u32 p) : rows_(rows), cols_(cols), p_(p) {
        if (rows < 0 || cols < 0) throw error("Matrix: negative dimension");
        a_.assign((std::size_t)rows * cols, 0);
    }

    static Matrix identity(int n, u32 p) {
        Matrix m(n, n, p);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }
    static Matrix zero(int rows, int cols, u32 p) { return Matrix(rows, cols, p); }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    u32 modulus() const { return p_; }

    u32& at(int r, int c) { return a_[(std::size_t)r * cols_ + c]; }
    u32 at(int r, int c) const { return a_[(std::size_t)r * cols_ + c]; }
    void set_int(int r, int c, long long v) { at(r, c) = fp::from_int(v, p_); }

    bool operator==(const Matrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && p_ == o.p_ && a_ == o.a_;
    }
    bool operator!=(const Matrix& o) const { return !(*this == o); }

    bool is_zero() const {
        for (u32 v : a_)
            if (v) return false;
        return true;
    }
    bool is_identity() const {
        if (rows_ != cols_) return false;
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j)
                if (at(i, j) != (i == j ? 1u : 0u)) return false;
        return true;
    }

    Matrix operator+(const Matrix& o) const {
        check_same_shape(o);
        Matrix r = *this;
        for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = fp::add(a_[i], o.a_[i], p_);
        return r;
    }
    Matrix operator-(const Matrix& o) const {
        check_same_shape(o);
        Matrix r = *this;
        for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = fp::sub(a_[i], o.a_[i], p_);
        return r;
    }
    Matrix operator-() const {
        Matrix r = *this;
        for (auto& v : r.a_) v = fp::neg(v, p_);
        return r;
    }
    Matrix operator*(const Matrix& o) const {
        if (p_ != o.p_) throw error("Matrix: modulus mismatch");
        if (cols_ != o.rows_) throw error("Matrix: shape mismatch in product");
        kernels::Grid A{rows_, cols_, a_}, B{o.rows_, o.cols_, o.a_}, C;
        kernels::mul(A, B, C, p_);
        Matrix r(rows_, o.cols_, p_);
        r.a_ = std::move(C.a);
        return r;
    }
    Matrix scaled(u32 c) const {
        Matrix r = *this;
        for (auto& v : r.a_) v = fp::mul(v, c, p_);
        return r;
    }

    Matrix transposed() const {
        Matrix r(cols_, rows_, p_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
        return r;
    }

    // Stack blocks: [A | B] and [A ; B].
    static Matrix hstack(const Matrix& A, const Matrix& B) {
        if (A.rows_ != B.rows_ || A.p_ != B.p_) throw error("hstack: mismatch");
        Matrix r(A.rows_, A.cols_ + B.cols_, A.p_);
        for (int i = 0; i < A.rows_; ++i) {
            for (int j = 0; j < A.cols_; ++j) r.at(i, j) = A.at(i, j);
            for (int j = 0; j < B.cols_; ++j) r.at(i, A.cols_ + j) = B.at(i, j);
        }
        return r;
    }
    static Matrix vstack(const Matrix& A, const Matrix& B) {
        if (A.cols_ != B.cols_ || A.p_ != B.p_) throw error("vstack: mismatch");
        Matrix r(A.rows_ + B.rows_, A.cols_, A.p_);
        for (int i = 0; i < A.rows_; ++i)
            for (int j = 0; j < A.cols_; ++j) r.at(i, j) = A.at(i, j);
        for (int i = 0; i < B.rows_; ++i)
            for (int j = 0; j < A.cols_; ++j) r.at(A.rows_ + i, j) = B.at(i, j);
        return r;
    }
    static Matrix block_diag(const Matrix& A, const Matrix& B) {
        if (A.p_ != B.p_) throw error("block_diag: modulus mismatch");
        Matrix r(A.rows_ + B.rows_, A.cols_ + B.cols_, A.p_);
        for (int i = 0; i < A.rows_; ++i)
            for (int j = 0; j < A.cols_; ++j) r.at(i, j) = A.at(i, j);
        for (int i = 0; i < B.rows_; ++i)
            for (int j = 0; j < B.cols_; ++j) r.at(A.rows_ + i, A.cols_ + j) = B.at(i, j);
        return r;
    }

    Matrix columns(const std::vector<int>& idx) const {
        Matrix r(rows_, (int)idx.size(), p_);
        for (int j = 0; j < (int)idx.size(); ++j)
            for (int i = 0; i < rows_; ++i) r.at(i, j) = at(i, idx[j]);
        return r;
    }
    Matrix column(int j) const { return columns({j}); }
    Matrix rows_slice(int r0, int r1) const {
        Matrix r(r1 - r0, cols_, p_);
        for (int i = r0; i < r1; ++i)
            for (int j = 0; j < cols_; ++j) r.at(i - r0, j) = at(i, j);
        return r;
    }

    // Flatten row-major into a single column vector.
    Matrix vec() const {
        Matrix r(rows_ * cols_, 1, p_);
        for (int i = 0; i < rows_ * cols_; ++i) r.at(i, 0) = a_[i];
        return r;
    }
    static Matrix unvec(const Matrix& v, int rows, int cols) {
        if (v.cols() != 1 || v.rows() != rows * cols) throw error("unvec: shape");
        Matrix r(rows, cols, v.modulus());
        for (int i = 0; i < rows * cols; ++i) r.a_[i] = v.at(i, 0);
        return r;
    }

    std::vector<int> rref_in_place() {
        kernels::Grid g{rows_, cols_, std::move(a_)};
        auto piv = kernels::rref(g, p_);
        a_ = std::move(g.a);
        return piv;
    }

    int rank() const {
        Matrix m = *this;
        return (int)m.rref_in_place().size();
    }

    Matrix power(int e) const {
        if (rows_ != cols_) throw error("power: square only");
        Matrix r = identity(rows_, p_);
        for (int i = 0; i < e; ++i) r = r * *this;
        return r;
    }

private:
    void check_same_shape(const Matrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_ || p_ != o.p_)
            throw error("Matrix: shape/modulus mismatch");
    }

    int rows_ = 0, cols_ = 0;
    u32 p_ = 2;
    std::vector<u32> a_;
};

// Affine solution set of A X = B: a particular solution plus a basis of
// ker A as columns. Absent when the system is inconsistent.
struct SolveResult {
    Matrix particular;
    Matrix kernel; // A.cols x k, columns span ker A
};

// Solve A X = B over F_p. Free variables of the particular solution are
// set to zero (deterministic: fixed pivoting, fixed free-variable order).
std::optional<SolveResult> solve_all(const Matrix& A, const Matrix& B);

// Columns spanning ker M (echelon-derived, deterministic order).
Matrix kernel_basis(const Matrix& M);

// Subset of M's columns forming a basis of im M (pivot columns of M).
Matrix image_basis(const Matrix& M);

// Standard-basis vectors whose classes complete the (independent) columns
// of `sub` to a basis of F_p^ambient_dim. Throws if sub's columns are
// dependent.
Matrix quotient_basis(const Matrix& sub, int ambient_dim);

// Solve X * A = B (unknown on the left). Same conventions as solve_all.
std::optional<SolveResult> solve_left(const Matrix& A, const Matrix& B);

// Inverse of a square invertible matrix; throws on singular input.
Matrix inverse(const Matrix& a);

} // namespace frobmor
