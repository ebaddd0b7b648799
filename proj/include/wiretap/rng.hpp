#pragma once

#include <cstdint>

namespace wiretap {

// Counter-based generator: every output is a pure function of the inputs,
// so streams can be evaluated in any order (or in parallel) with identical
// results.
inline uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline uint64_t mix2(uint64_t a, uint64_t b) {
    return splitmix64(splitmix64(a) ^ (b + 0x9e3779b97f4a7c15ULL));
}

inline uint64_t mix3(uint64_t a, uint64_t b, uint64_t c) {
    return splitmix64(mix2(a, b) ^ (c + 0xbf58476d1ce4e5b9ULL));
}

inline uint64_t mix4(uint64_t a, uint64_t b, uint64_t c, uint64_t d) {
    return splitmix64(mix3(a, b, c) ^ (d + 0x94d049bb133111ebULL));
}

// Uniform double in [0,1) from a counter value.
inline double counter_uniform(uint64_t key, uint64_t counter) {
    return double(mix2(key, counter) >> 11) * 0x1.0p-53;
}

} // namespace wiretap
