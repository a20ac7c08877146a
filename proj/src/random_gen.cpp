#include "frobmor/random_gen.hpp"

#include "frobmor/functors.hpp"

#include <algorithm>

namespace frobmor {

std::uint64_t Gen::mix(std::uint64_t a, std::uint64_t b) {
    std::uint64_t z = a + 0x9e3779b97f4a7c15ull * (b + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

std::uint64_t Gen::next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

LambdaModule random_module(Gen& g, const GenConfig& cfg, bool allow_zero) {
    int budget = allow_zero ? (int)g.below(cfg.max_dim + 1) : 1 + (int)g.below(cfg.max_dim);
    std::vector<int> parts;
    while (budget > 0) {
        int d = 1 + (int)g.below(std::min<u32>(cfg.n, budget));
        parts.push_back(d);
        budget -= d;
    }
    std::sort(parts.rbegin(), parts.rend());
    LambdaModule can = LambdaModule::of_type(parts, cfg.n, cfg.p);
    if (can.dim == 0) return can;
    for (int tries = 0; tries < 100; ++tries) {
        Matrix m(can.dim, can.dim, cfg.p);
        for (int i = 0; i < can.dim; ++i)
            for (int j = 0; j < can.dim; ++j) m.at(i, j) = g.below(cfg.p);
        if (m.rank() != can.dim) continue;
        return LambdaModule(can.dim, cfg.n, m * can.action * inverse(m));
    }
    return can;
}

ModuleMap random_hom(Gen& g, const LambdaModule& a, const LambdaModule& b) {
    ModuleMap f = ModuleMap::zero(a, b);
    for (const auto& h : hom_basis(a, b)) {
        u32 c = g.below(a.modulus());
        if (c) f = f + ModuleMap(a, b, h.mat.scaled(c));
    }
    return f;
}

ChainObject random_chain(Gen& g, const GenConfig& cfg, int l) {
    std::vector<LambdaModule> terms{random_module(g, cfg)};
    std::vector<ModuleMap> maps;
    for (int k = 0; k < l; ++k) {
        bool found = false;
        for (int tries = 0; tries < 20 && !found; ++tries) {
            auto tgt = random_module(g, cfg, false);
            if (tgt.dim < terms.back().dim) continue;
            auto f = random_hom(g, terms.back(), tgt);
            if (f.is_mono()) {
                maps.push_back(f);
                terms.push_back(tgt);
                found = true;
            }
        }
        if (!found) {
            GenConfig small = cfg;
            small.max_dim = std::max(1, cfg.max_dim - terms.back().dim);
            auto rest = random_module(g, small);
            maps.push_back(inclusion_first(terms.back(), rest));
            terms.push_back(maps.back().tgt);
        }
    }
    return ChainObject(std::move(terms), std::move(maps));
}

ChainMap random_chain_map(Gen& g, const ChainObject& a, const ChainObject& b) {
    ChainMap f = ChainMap::zero(a, b);
    for (const auto& h : chain_hom_basis(a, b)) {
        u32 c = g.below(a.modulus());
        if (c) f = add(f, scale(h, c));
    }
    return f;
}

ChainObject random_gamma_object(Gen& g, const GenConfig& cfg, int l, int s, int t) {
    return delta_complement(random_chain(g, cfg, t - s), {s, t}, l);
}

ChainObject random_delta_object(Gen& g, const GenConfig& cfg, int l, int s, int t) {
    return delta(random_chain(g, cfg, l - (t - s)), {s, t});
}

} // namespace frobmor
