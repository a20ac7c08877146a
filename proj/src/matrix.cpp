#include "frobmor/matrix.hpp"

#include <algorithm>

namespace frobmor {

std::optional<SolveResult> solve_all(const Matrix& A, const Matrix& B) {
    if (A.rows() != B.rows()) throw error("solve_all: row mismatch");
    if (A.modulus() != B.modulus()) throw error("solve_all: modulus mismatch");
    const u32 p = A.modulus();
    const int n = A.cols(), m = B.cols();

    Matrix aug = Matrix::hstack(A, B);
    auto piv = aug.rref_in_place();

    std::vector<int> pivot_cols;
    for (int c : piv)
        if (c < n) pivot_cols.push_back(c);
    // A pivot landing in the B block means some row reads 0 = nonzero.
    for (int c : piv)
        if (c >= n) return std::nullopt;

    std::vector<int> col_pivot_row(n, -1);
    for (int i = 0; i < (int)pivot_cols.size(); ++i) col_pivot_row[pivot_cols[i]] = i;

    Matrix X(n, m, p);
    for (int c = 0; c < n; ++c) {
        int r = col_pivot_row[c];
        if (r < 0) continue;
        for (int j = 0; j < m; ++j) X.at(c, j) = aug.at(r, n + j);
    }

    // Kernel columns: one per free column, echelon form back-substituted.
    std::vector<int> free_cols;
    for (int c = 0; c < n; ++c)
        if (col_pivot_row[c] < 0) free_cols.push_back(c);
    Matrix K(n, (int)free_cols.size(), p);
    for (int k = 0; k < (int)free_cols.size(); ++k) {
        int fc = free_cols[k];
        K.at(fc, k) = 1;
        for (int c = 0; c < n; ++c) {
            int r = col_pivot_row[c];
            if (r >= 0) K.at(c, k) = fp::neg(aug.at(r, fc), p);
        }
    }
    return SolveResult{std::move(X), std::move(K)};
}

Matrix kernel_basis(const Matrix& M) {
    auto s = solve_all(M, Matrix::zero(M.rows(), 1, M.modulus()));
    return s->kernel;
}

Matrix image_basis(const Matrix& M) {
    Matrix m = M;
    auto piv = m.rref_in_place();
    std::vector<int> cols(piv.begin(), piv.end());
    return M.columns(cols);
}

Matrix quotient_basis(const Matrix& sub, int ambient_dim) {
    if (sub.rows() != ambient_dim) throw error("quotient_basis: ambient mismatch");
    const u32 p = sub.modulus();
    if (sub.rank() != sub.cols()) throw error("quotient_basis: dependent columns in sub");
    Matrix cur = sub;
    std::vector<int> chosen;
    int r = sub.cols();
    for (int j = 0; j < ambient_dim && r < ambient_dim; ++j) {
        Matrix e = Matrix::zero(ambient_dim, 1, p);
        e.at(j, 0) = 1;
        Matrix cand = Matrix::hstack(cur, e);
        if (cand.rank() > r) {
            chosen.push_back(j);
            cur = std::move(cand);
            ++r;
        }
    }
    Matrix q(ambient_dim, (int)chosen.size(), p);
    for (int k = 0; k < (int)chosen.size(); ++k) q.at(chosen[k], k) = 1;
    return q;
}

Matrix inverse(const Matrix& a) {
    auto s = solve_all(a, Matrix::identity(a.rows(), a.modulus()));
    if (!s || s->kernel.cols() != 0) throw error("inverse: singular matrix");
    return s->particular;
}

std::optional<SolveResult> solve_left(const Matrix& A, const Matrix& B) {
    // X A = B  <=>  A^T X^T = B^T
    auto s = solve_all(A.transposed(), B.transposed());
    if (!s) return std::nullopt;
    SolveResult r;
    r.particular = s->particular.transposed();
    r.kernel = s->kernel; // columns are transposed-row kernel elements; callers
                          // needing it reshape themselves (rarely used).
    return r;
}

} // namespace frobmor
