#pragma once

#include "frobmor/fp.hpp"

#include <vector>

namespace frobmor {

// Dense row-major kernels over F_p. The omp variants parallelize the row
// loops and are dispatched above a size threshold; the serial versions in
// kernels::ref are the reference implementations the tests and the
// benchmark compare against. Both compute bit-identical results: row
// updates during elimination are independent and the pivot order is fixed.
namespace kernels {

struct Grid {
    int rows = 0, cols = 0;
    std::vector<u32> a; // row-major, rows*cols entries in [0, p)
    u32* row(int r) { return a.data() + (std::size_t)r * cols; }
    const u32* row(int r) const { return a.data() + (std::size_t)r * cols; }
};

namespace ref {
void mul(const Grid& A, const Grid& B, Grid& C, u32 p);
// In-place reduced row echelon form with deterministic pivoting: for each
// column left to right, the first row (top to bottom) with a nonzero entry
// is the pivot row. Returns pivot column indices in order.
std::vector<int> rref(Grid& M, u32 p);
} // namespace ref

void mul(const Grid& A, const Grid& B, Grid& C, u32 p);
std::vector<int> rref(Grid& M, u32 p);

// Work threshold below which the omp entry points stay serial.
inline constexpr long long kParallelWork = 1 << 15;

} // namespace kernels
} // namespace frobmor
