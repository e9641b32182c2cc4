#pragma once

#include <random>

#include "fdgl/fdg.hpp"
#include "fdgl/matrix.hpp"

namespace fdgl::test {

// every seeded test draws from this; change it and the recorded cases change too
inline constexpr std::uint64_t kSeed = 20240611;
inline constexpr int kCases = 200;

inline std::mt19937_64 rng(std::uint64_t salt = 0) { return std::mt19937_64(kSeed ^ (salt * 0x9e3779b97f4a7c15ull)); }

inline u64 uniform(std::mt19937_64& g, u64 lo, u64 hi) { return std::uniform_int_distribution<u64>(lo, hi)(g); }

inline ModMatrix random_matrix(std::mt19937_64& g, u64 p, size_t n) {
    ModMatrix A(p, n);
    for (auto& x : A.a) x = uniform(g, 0, p - 1);
    return A;
}

inline ModMatrix random_invertible(std::mt19937_64& g, u64 p, size_t n) {
    while (true) {
        ModMatrix A = random_matrix(g, p, n);
        if (det(A) != 0) return A;
    }
}

inline u64 naive_order(const ModMatrix& A) {
    ModMatrix B = A;
    u64 k = 1;
    while (!B.is_identity()) B = B * A, ++k;
    return k;
}

// random automorphism table of an abelian group given by moduli: a random
// Hillar-Rhea integer matrix on each Sylow part, rejected until invertible
std::vector<u32> random_abelian_auto(std::mt19937_64& g, const AbelianPGroup& H);

}  // namespace fdgl::test
