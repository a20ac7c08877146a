#pragma once

// Shared helpers for the unit tests: a tiny deterministic RNG and random
// generators for modules, maps and chains. The suites in the library have
// their own generator (random_gen.hpp); this one is test-local on purpose
// so unit tests do not depend on the harness.

#include "frobmor/chain.hpp"
#include "frobmor/module.hpp"

#include <algorithm>
#include <vector>

namespace frobmor::testutil {

struct Rng {
    unsigned long long s;
    unsigned long long next() {
        unsigned long long z = (s += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    u32 mod(u32 m) { return m ? (u32)(next() % m) : 0; }
};

inline LambdaModule random_module(Rng& rng, u32 n, int max_dim, u32 p, bool allow_zero = true) {
    int budget = allow_zero ? (int)rng.mod(max_dim + 1) : 1 + (int)rng.mod(max_dim);
    std::vector<int> parts;
    while (budget > 0) {
        int d = 1 + (int)rng.mod(std::min<int>((int)n, budget));
        parts.push_back(d);
        budget -= d;
    }
    std::sort(parts.rbegin(), parts.rend());
    LambdaModule can = LambdaModule::of_type(parts, n, p);
    if (can.dim == 0) return can;
    for (int tries = 0; tries < 100; ++tries) {
        Matrix g(can.dim, can.dim, p);
        for (int i = 0; i < can.dim; ++i)
            for (int j = 0; j < can.dim; ++j) g.at(i, j) = rng.mod(p);
        if (g.rank() != can.dim) continue;
        auto inv = solve_all(g, Matrix::identity(can.dim, p));
        return LambdaModule(can.dim, n, g * can.action * inv->particular);
    }
    return can;
}

inline ModuleMap random_hom(Rng& rng, const LambdaModule& a, const LambdaModule& b) {
    auto basis = hom_basis(a, b);
    ModuleMap f = ModuleMap::zero(a, b);
    for (auto& h : basis) f = f + ModuleMap(a, b, h.mat.scaled(rng.mod(a.modulus())));
    return f;
}

// Random injective hom by rejection, with the (src (+) rest, (id,0))
// fallback that changes the target.
inline ModuleMap random_mono_onto_fresh(Rng& rng, const LambdaModule& src, u32 n, int max_dim,
                                        u32 p) {
    for (int t = 0; t < 30; ++t) {
        auto tgt = random_module(rng, n, max_dim, p, false);
        if (tgt.dim < src.dim) continue;
        auto f = random_hom(rng, src, tgt);
        if (f.is_mono()) return f;
    }
    auto rest = random_module(rng, n, std::max(1, max_dim - src.dim), p);
    return inclusion_first(src, rest);
}

inline ChainObject random_chain(Rng& rng, int l, u32 n, int max_dim, u32 p) {
    std::vector<LambdaModule> terms;
    std::vector<ModuleMap> maps;
    terms.push_back(random_module(rng, n, max_dim, p));
    for (int k = 0; k < l; ++k) {
        auto f = random_mono_onto_fresh(rng, terms.back(), n, max_dim, p);
        maps.push_back(f);
        terms.push_back(f.tgt);
    }
    return ChainObject(std::move(terms), std::move(maps));
}

inline ChainMap random_chain_map(Rng& rng, const ChainObject& a, const ChainObject& b) {
    auto basis = chain_hom_basis(a, b);
    ChainMap f = ChainMap::zero(a, b);
    for (auto& h : basis) f = add(f, scale(h, rng.mod(a.modulus())));
    return f;
}

} // namespace frobmor::testutil
