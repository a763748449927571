#include "waxsolve/random_gen.hpp"

namespace waxsolve {

namespace {

Matrix draw_matrix(std::size_t n, std::mt19937_64& eng, MatrixKind kind) {
    Matrix m(n);
    if (kind == MatrixKind::complex_general) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                const double re = uniform_pm1(eng);
                const double im = uniform_pm1(eng);
                m(i, j) = Complex(re, im);
            }
    } else {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) {
                const double re = uniform_pm1(eng);
                m(i, j) = Complex(re, 0.0);
                m(j, i) = Complex(re, 0.0);
            }
    }
    return m;
}

} // namespace

std::pair<Matrix, Matrix> gen_random(std::size_t n, std::uint64_t seed, MatrixKind kind) {
    std::mt19937_64 eng(seed);
    Matrix t = draw_matrix(n, eng, kind);
    Matrix v = draw_matrix(n, eng, kind);
    return {std::move(t), std::move(v)};
}

Vector seeded_vector(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 eng(seed);
    Vector v(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double re = uniform_pm1(eng);
        const double im = uniform_pm1(eng);
        v[i] = Complex(re, im);
    }
    return v;
}

} // namespace waxsolve
