#include "frobmor/fp_kernels.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace frobmor {
namespace kernels {

namespace {

inline void axpy_row(u32* dst, const u32* src, u32 c, int n, u32 p) {
    // dst -= c * src
    for (int j = 0; j < n; ++j) {
        u64 v = (u64)c * src[j] % p;
        dst[j] = fp::sub(dst[j], (u32)v, p);
    }
}

inline void scale_row(u32* r, u32 c, int n, u32 p) {
    for (int j = 0; j < n; ++j) r[j] = fp::mul(r[j], c, p);
}

template <bool Parallel>
std::vector<int> rref_impl(Grid& M, u32 p) {
    std::vector<int> pivots;
    int lead = 0;
    for (int col = 0; col < M.cols && lead < M.rows; ++col) {
        int piv = -1;
        for (int r = lead; r < M.rows; ++r)
            if (M.row(r)[col] != 0) { piv = r; break; }
        if (piv < 0) continue;
        if (piv != lead)
            for (int j = 0; j < M.cols; ++j) std::swap(M.row(piv)[j], M.row(lead)[j]);
        u32 d = fp::inv(M.row(lead)[col], p);
        if (d != 1) scale_row(M.row(lead), d, M.cols, p);
        const u32* prow = M.row(lead);
        if constexpr (Parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
            for (int r = 0; r < M.rows; ++r) {
                if (r == lead) continue;
                u32 c = M.row(r)[col];
                if (c) axpy_row(M.row(r), prow, c, M.cols, p);
            }
        } else {
            for (int r = 0; r < M.rows; ++r) {
                if (r == lead) continue;
                u32 c = M.row(r)[col];
                if (c) axpy_row(M.row(r), prow, c, M.cols, p);
            }
        }
        pivots.push_back(col);
        ++lead;
    }
    return pivots;
}

template <bool Parallel>
void mul_impl(const Grid& A, const Grid& B, Grid& C, u32 p) {
    C.rows = A.rows;
    C.cols = B.cols;
    C.a.assign((std::size_t)C.rows * C.cols, 0);
    auto body = [&](int i) {
        const u32* ar = A.row(i);
        u32* cr = C.row(i);
        for (int k = 0; k < A.cols; ++k) {
            u32 v = ar[k];
            if (!v) continue;
            const u32* br = B.row(k);
            for (int j = 0; j < B.cols; ++j)
                cr[j] = (u32)(((u64)v * br[j] + cr[j]) % p);
        }
    };
    if constexpr (Parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
        for (int i = 0; i < A.rows; ++i) body(i);
    } else {
        for (int i = 0; i < A.rows; ++i) body(i);
    }
}

} // namespace

namespace ref {
void mul(const Grid& A, const Grid& B, Grid& C, u32 p) { mul_impl<false>(A, B, C, p); }
std::vector<int> rref(Grid& M, u32 p) { return rref_impl<false>(M, p); }
} // namespace ref

void mul(const Grid& A, const Grid& B, Grid& C, u32 p) {
    long long work = (long long)A.rows * A.cols * B.cols;
    if (work >= kParallelWork)
        mul_impl<true>(A, B, C, p);
    else
        mul_impl<false>(A, B, C, p);
}

std::vector<int> rref(Grid& M, u32 p) {
    long long work = (long long)M.rows * M.cols;
    if (work >= kParallelWork) return rref_impl<true>(M, p);
    return rref_impl<false>(M, p);
}

} // namespace kernels
} // namespace frobmor
