#pragma once

// Brute-force oracle for stable-hom dimensions, used only by tests. The
// hom space is enumerated by assembling the commuting equations entry by
// entry (independent of the closed-form Jordan bases used by the library)
// and the factoring image is taken through the injective hull of the
// source, the opposite route to the library's cover-based subspace.

#include "frobmor/chain.hpp"

#include <vector>

namespace frobmor::oracle {

// dense entrywise assembly of Hom_Lambda(a, b): unknowns H[r][c],
// equations (H * act_a - act_b * H)[r][c] = 0
inline Matrix hom_system(const LambdaModule& a, const LambdaModule& b) {
    const u32 p = a.modulus();
    const int rows = b.dim * a.dim;
    Matrix sys(rows, b.dim * a.dim, p);
    auto idx = [&](int r, int c) { return r * a.dim + c; };
    int row = 0;
    for (int r = 0; r < b.dim; ++r)
        for (int c = 0; c < a.dim; ++c, ++row) {
            for (int k = 0; k < a.dim; ++k)
                sys.at(row, idx(r, k)) =
                    fp::add(sys.at(row, idx(r, k)), a.action.at(k, c), p);
            for (int k = 0; k < b.dim; ++k)
                sys.at(row, idx(k, c)) =
                    fp::sub(sys.at(row, idx(k, c)), b.action.at(r, k), p);
        }
    return sys;
}

inline std::vector<ModuleMap> hom_enumerate(const LambdaModule& a, const LambdaModule& b) {
    Matrix K = kernel_basis(hom_system(a, b));
    std::vector<ModuleMap> out;
    for (int j = 0; j < K.cols(); ++j) {
        Matrix m(b.dim, a.dim, a.modulus());
        for (int r = 0; r < b.dim; ++r)
            for (int c = 0; c < a.dim; ++c) m.at(r, c) = K.at(r * a.dim + c, j);
        out.push_back(ModuleMap(a, b, m));
    }
    return out;
}

inline int hom_dim(const LambdaModule& a, const LambdaModule& b) {
    return (int)hom_enumerate(a, b).size();
}

// stable dim = full dim minus the rank of composition with i_a on
// Hom(I(a), b)
inline int stable_hom_dim(const LambdaModule& a, const LambdaModule& b) {
    const u32 p = a.modulus();
    ModuleMap i = injective_hull(a);
    Matrix stack(b.dim * a.dim, 0, p);
    for (const auto& h : hom_enumerate(i.tgt, b))
        stack = Matrix::hstack(stack, compose(h, i).mat.vec());
    return hom_dim(a, b) - stack.rank();
}

// chain level: one dense system with per-term linearity and square blocks
inline std::vector<ChainMap> chain_hom_enumerate(const ChainObject& a, const ChainObject& b) {
    const u32 p = a.modulus();
    const int l = a.length();
    std::vector<int> offset;
    int total = 0;
    for (int k = 0; k <= l; ++k) {
        offset.push_back(total);
        total += b.terms[k].dim * a.terms[k].dim;
    }
    int rows = 0;
    for (int k = 0; k <= l; ++k) rows += b.terms[k].dim * a.terms[k].dim;
    for (int k = 0; k < l; ++k) rows += b.terms[k + 1].dim * a.terms[k].dim;
    Matrix sys(rows, total, p);
    int row = 0;
    for (int k = 0; k <= l; ++k) {
        const auto& A = a.terms[k];
        const auto& B = b.terms[k];
        auto idx = [&](int r, int c) { return offset[k] + r * A.dim + c; };
        for (int r = 0; r < B.dim; ++r)
            for (int c = 0; c < A.dim; ++c, ++row) {
                for (int t = 0; t < A.dim; ++t)
                    sys.at(row, idx(r, t)) = fp::add(sys.at(row, idx(r, t)), A.action.at(t, c), p);
                for (int t = 0; t < B.dim; ++t)
                    sys.at(row, idx(t, c)) = fp::sub(sys.at(row, idx(t, c)), B.action.at(r, t), p);
            }
    }
    for (int k = 0; k < l; ++k) {
        const auto& alpha = a.maps[k].mat;
        const auto& beta = b.maps[k].mat;
        auto idx_hi = [&](int r, int c) { return offset[k + 1] + r * a.terms[k + 1].dim + c; };
        auto idx_lo = [&](int r, int c) { return offset[k] + r * a.terms[k].dim + c; };
        for (int r = 0; r < b.terms[k + 1].dim; ++r)
            for (int c = 0; c < a.terms[k].dim; ++c, ++row) {
                for (int t = 0; t < a.terms[k + 1].dim; ++t)
                    sys.at(row, idx_hi(r, t)) =
                        fp::add(sys.at(row, idx_hi(r, t)), alpha.at(t, c), p);
                for (int t = 0; t < b.terms[k].dim; ++t)
                    sys.at(row, idx_lo(t, c)) = fp::sub(sys.at(row, idx_lo(t, c)), beta.at(r, t), p);
            }
    }
    Matrix K = kernel_basis(sys);
    std::vector<ChainMap> out;
    for (int j = 0; j < K.cols(); ++j) {
        std::vector<ModuleMap> comps;
        for (int k = 0; k <= l; ++k) {
            Matrix m(b.terms[k].dim, a.terms[k].dim, p);
            for (int r = 0; r < b.terms[k].dim; ++r)
                for (int c = 0; c < a.terms[k].dim; ++c)
                    m.at(r, c) = K.at(offset[k] + r * a.terms[k].dim + c, j);
            comps.push_back(ModuleMap(a.terms[k], b.terms[k], m));
        }
        out.push_back(ChainMap(a, b, std::move(comps)));
    }
    return out;
}

inline Matrix chain_vec_local(const ChainMap& f) {
    Matrix out(0, 1, f.src.modulus());
    for (auto& c : f.comps) out = Matrix::vstack(out, c.mat.vec());
    return out;
}

inline int chain_stable_hom_dim(const ChainObject& a, const ChainObject& b) {
    const u32 p = a.modulus();
    ChainEnvelope env = chain_injective_envelope(a);
    Matrix stack(chain_vec_local(ChainMap::zero(a, b)).rows(), 0, p);
    for (const auto& h : chain_hom_enumerate(env.hull, b))
        stack = Matrix::hstack(stack, chain_vec_local(compose(h, env.embed)));
    return (int)chain_hom_enumerate(a, b).size() - stack.rank();
}

} // namespace frobmor::oracle
