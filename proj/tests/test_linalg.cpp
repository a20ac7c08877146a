#include "doctest.h"

#include "frobmor/fp_kernels.hpp"
#include "frobmor/matrix.hpp"

#include <cstdint>

using namespace frobmor;

namespace {

Matrix from_rows(std::vector<std::vector<long long>> rows, u32 p) {
    int r = (int)rows.size();
    int c = r ? (int)rows[0].size() : 0;
    Matrix m(r, c, p);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) m.set_int(i, j, rows[i][j]);
    return m;
}

// Tiny deterministic generator for the property tests (splitmix64).
struct Rng {
    std::uint64_t s;
    std::uint64_t next() {
        std::uint64_t z = (s += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    u32 mod(u32 m) { return (u32)(next() % m); }
};

Matrix random_matrix(Rng& rng, int r, int c, u32 p) {
    Matrix m(r, c, p);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) m.at(i, j) = rng.mod(p);
    return m;
}

} // namespace

TEST_CASE("rank basics") {
    CHECK(Matrix::identity(2, 5).rank() == 2);
    CHECK(Matrix::zero(3, 3, 5).rank() == 0);
    // [[1,2],[2,4]] mod 5 has rank 1
    CHECK(from_rows({{1, 2}, {2, 4}}, 5).rank() == 1);
}

TEST_CASE("solve_all basics") {
    u32 p = 5;
    auto I = Matrix::identity(3, p);
    auto s = solve_all(I, I);
    REQUIRE(s.has_value());
    CHECK(s->particular == I);
    CHECK(s->kernel.cols() == 0);

    auto z = solve_all(Matrix::zero(2, 2, p), Matrix::zero(2, 1, p));
    REQUIRE(z.has_value());
    CHECK(z->particular.is_zero());
    CHECK(z->kernel.cols() == 2);

    // A = [[1,1]], B = [[0]]: particular 0, kernel spans (1,4)
    auto a = from_rows({{1, 1}}, p);
    auto b = from_rows({{0}}, p);
    auto r = solve_all(a, b);
    REQUIRE(r.has_value());
    CHECK(r->particular.is_zero());
    REQUIRE(r->kernel.cols() == 1);
    u32 k0 = r->kernel.at(0, 0), k1 = r->kernel.at(1, 0);
    CHECK(fp::add(k0, k1, p) == 0);
    CHECK(k0 != 0);

    // inconsistent
    auto bad = solve_all(Matrix::zero(2, 2, p), from_rows({{1}, {0}}, p));
    CHECK(!bad.has_value());
}

TEST_CASE("kernel, image, quotient basics") {
    u32 p = 5;
    CHECK(kernel_basis(Matrix::identity(2, p)).cols() == 0);
    CHECK(image_basis(Matrix::zero(3, 3, p)).cols() == 0);

    Matrix sub(2, 1, p);
    sub.at(0, 0) = 1; // span{e1} in dim 2
    Matrix q = quotient_basis(sub, 2);
    REQUIRE(q.cols() == 1);
    CHECK(q.at(0, 0) == 0);
    CHECK(q.at(1, 0) == 1);

    Matrix dep(2, 2, p);
    dep.at(0, 0) = 1;
    dep.at(0, 1) = 2;
    CHECK_THROWS_AS(quotient_basis(dep, 2), error);
}

TEST_CASE("rank-nullity and solve exactness on random input") {
    Rng rng{42};
    for (u32 p : {2u, 5u, 13u}) {
        for (int iter = 0; iter < 40; ++iter) {
            int r = (int)rng.mod(6), c = (int)rng.mod(6);
            Matrix m = random_matrix(rng, r, c, p);
            CHECK(m.rank() + kernel_basis(m).cols() == c);

            Matrix x = random_matrix(rng, c, 2, p);
            Matrix b = m * x;
            auto s = solve_all(m, b);
            REQUIRE(s.has_value());
            CHECK(m * s->particular == b);
            for (int k = 0; k < s->kernel.cols(); ++k)
                CHECK((m * s->kernel.column(k)).is_zero());
        }
    }
}

TEST_CASE("solve_all agrees with exhaustive enumeration over F_2") {
    Rng rng{7};
    u32 p = 2;
    for (int iter = 0; iter < 30; ++iter) {
        int r = 1 + (int)rng.mod(3), c = 1 + (int)rng.mod(3);
        Matrix a = random_matrix(rng, r, c, p);
        Matrix b = random_matrix(rng, r, 1, p);
        int solutions = 0;
        for (int bits = 0; bits < (1 << c); ++bits) {
            Matrix x(c, 1, p);
            for (int j = 0; j < c; ++j) x.at(j, 0) = (bits >> j) & 1;
            if (a * x == b) ++solutions;
        }
        auto s = solve_all(a, b);
        if (!s) {
            CHECK(solutions == 0);
        } else {
            CHECK(solutions == (1 << s->kernel.cols()));
            CHECK(a * s->particular == b);
        }
    }
}

TEST_CASE("omp kernels match serial reference") {
    Rng rng{99};
    u32 p = 97;
    for (int sz : {3, 17, 64, 130}) {
        kernels::Grid A{sz, sz + 1, {}}, B{sz + 1, sz, {}};
        A.a.resize((size_t)A.rows * A.cols);
        B.a.resize((size_t)B.rows * B.cols);
        for (auto& v : A.a) v = rng.mod(p);
        for (auto& v : B.a) v = rng.mod(p);

        kernels::Grid C1, C2;
        kernels::mul(A, B, C1, p);
        kernels::ref::mul(A, B, C2, p);
        CHECK(C1.a == C2.a);

        kernels::Grid M1 = A, M2 = A;
        auto p1 = kernels::rref(M1, p);
        auto p2 = kernels::ref::rref(M2, p);
        CHECK(p1 == p2);
        CHECK(M1.a == M2.a);
    }
}

TEST_CASE("determinism: identical inputs give identical outputs") {
    Rng rng{5};
    Matrix m = random_matrix(rng, 7, 9, 5);
    Matrix m2 = m;
    auto a = solve_all(m, Matrix::zero(7, 1, 5));
    auto b = solve_all(m2, Matrix::zero(7, 1, 5));
    CHECK(a->particular == b->particular);
    CHECK(a->kernel == b->kernel);
    CHECK(image_basis(m) == image_basis(m2));
}
