#pragma once

#include <cstdint>
#include <stdexcept>

namespace frobmor {

using u32 = std::uint32_t;
using u64 = std::uint64_t;

// Arithmetic in F_p for a word-sized prime p. All values are kept reduced,
// 0 <= x < p. Every computation in the project is exact; there is no
// floating point anywhere.
namespace fp {

inline bool is_prime(u32 p) {
    if (p < 2) return false;
    for (u64 d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

inline u32 add(u32 a, u32 b, u32 p) {
    u32 s = a + b;
    return s >= p ? s - p : s;
}

inline u32 sub(u32 a, u32 b, u32 p) { return a >= b ? a - b : a + p - b; }

inline u32 neg(u32 a, u32 p) { return a == 0 ? 0 : p - a; }

inline u32 mul(u32 a, u32 b, u32 p) { return static_cast<u32>((u64)a * b % p); }

inline u32 pow(u32 a, u64 e, u32 p) {
    u32 r = 1 % p;
    while (e) {
        if (e & 1) r = mul(r, a, p);
        a = mul(a, a, p);
        e >>= 1;
    }
    return r;
}

inline u32 inv(u32 a, u32 p) {
    if (a == 0) throw std::domain_error("fp::inv: division by zero");
    return pow(a, p - 2, p);
}

// Reduce an arbitrary signed integer into [0, p).
inline u32 from_int(long long v, u32 p) {
    long long r = v % (long long)p;
    if (r < 0) r += p;
    return (u32)r;
}

} // namespace fp
} // namespace frobmor
