#pragma once

// Deterministic problem and start-vector generation. All draws go through an
// explicit uint64 -> [-1, 1] mapping on top of mt19937_64 so the byte stream
// is identical across standard libraries.

#include <cstdint>
#include <random>
#include <utility>

#include "waxsolve/linalg.hpp"

namespace waxsolve {

enum class MatrixKind { complex_general, real_symmetric };

inline constexpr std::uint64_t kDefaultStartSeed = 12345;
inline constexpr std::uint64_t kReseedSeed = 54321;

// Uniform draw from [-1, 1) with 53 bits of the engine output.
inline double uniform_pm1(std::mt19937_64& eng) {
    return 2.0 * static_cast<double>(eng() >> 11) * 0x1.0p-53 - 1.0;
}

// Reproducible (T, V) pair for a given (n, seed, kind). complex_general draws
// re and im of every entry from [-1, 1]; real_symmetric draws a real symmetric
// matrix (real spectrum for symmetric real pairs, which is what the
// perturbation path needs to demonstrate).
std::pair<Matrix, Matrix> gen_random(std::size_t n, std::uint64_t seed, MatrixKind kind);

// Seeded complex start vector, entries re/im from [-1, 1].
Vector seeded_vector(std::size_t n, std::uint64_t seed);

} // namespace waxsolve
