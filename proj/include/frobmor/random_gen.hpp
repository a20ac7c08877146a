#pragma once

// Seeded random generation for the verification driver. The math modules
// are seed-free; all randomness lives here. The generator is counter-based
// (splitmix64 over (seed, stream, counter)), so any trial can be replayed
// in isolation from (seed, index).

#include "frobmor/chain.hpp"

#include <cstdint>

namespace frobmor {

class Gen {
public:
    Gen(std::uint64_t seed, std::uint64_t stream) : state_(mix(seed, stream)) {}

    std::uint64_t next();
    u32 below(u32 m) { return m ? (u32)(next() % m) : 0; } // small m only

private:
    static std::uint64_t mix(std::uint64_t a, std::uint64_t b);
    std::uint64_t state_;
};

struct GenConfig {
    u32 p = 5;
    u32 n = 2;
    int max_dim = 6;
};

// Jordan type drawn uniformly with dim <= max_dim, conjugated by a random
// change of basis.
LambdaModule random_module(Gen& g, const GenConfig& cfg, bool allow_zero = true);
ModuleMap random_hom(Gen& g, const LambdaModule& a, const LambdaModule& b);
// injective maps by rejection with the (id, 0) direct-sum fallback
ChainObject random_chain(Gen& g, const GenConfig& cfg, int l);
ChainMap random_chain_map(Gen& g, const ChainObject& a, const ChainObject& b);

// samples for the subcategory factors: canonical-shaped objects
ChainObject random_gamma_object(Gen& g, const GenConfig& cfg, int l, int s, int t);
ChainObject random_delta_object(Gen& g, const GenConfig& cfg, int l, int s, int t);

} // namespace frobmor
