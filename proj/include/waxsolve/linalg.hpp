#pragma once

// Dense complex vector/matrix arithmetic, LU factorization with partial
// pivoting, and the polar/inner-product utilities everything else builds on.
// Matrices are small (desk scale, n <= a few hundred) and stored dense
// row-major; all contracts are stated in infinity norms.

#include <complex>
#include <cstddef>
#include <vector>

#include "waxsolve/errors.hpp"

namespace waxsolve {

using Complex = std::complex<double>;
using Vector = std::vector<Complex>;

class Matrix {
public:
    Matrix() = default;
    explicit Matrix(std::size_t n) : n_(n), a_(n * n) {
        if (n == 0) throw DimensionMismatch("matrix dimension must be >= 1");
    }

    static Matrix identity(std::size_t n);
    static Matrix diagonal(const Vector& d);

    std::size_t size() const { return n_; }

    Complex& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
    const Complex& operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

    const std::vector<Complex>& entries() const { return a_; }

    Matrix transposed() const;

    // Maximum absolute row sum.
    double inf_norm() const;

    bool is_finite() const;

private:
    std::size_t n_ = 0;
    std::vector<Complex> a_;
};

// H = T - lambda*V. Throws DimensionMismatch on size disagreement.
Matrix pencil(const Matrix& T, const Matrix& V, Complex lambda);

struct PolarScalar {
    double magnitude = 0.0;
    double phase = 0.0; // in (-pi, pi]; exactly 0 for nonnegative reals
};

PolarScalar to_polar(Complex z);
Complex from_polar(const PolarScalar& p);

// y = A x
Vector matvec(const Matrix& A, const Vector& x);

// <r|u> = sum_i conj(r_i) * u_i (conjugate-linear in r)
Complex inner(const Vector& r, const Vector& u);

double inf_norm(const Vector& v);
bool is_finite(const Vector& v);

Vector ones_vector(std::size_t n);

struct LUFactorization {
    std::size_t n = 0;
    std::vector<Complex> lu;       // combined unit-lower / upper factors, row-major
    std::vector<std::size_t> perm; // perm[i] = source row of row i after pivoting
    int swap_count = 0;            // permutation parity, used for determinant signs
    bool singular = false;
    double min_pivot_magnitude = 0.0;
};

// PA = LU with partial (row) pivoting. Never throws for square finite input;
// near-singularity is reported through the flag so callers can nudge.
// The flag trips when the smallest pivot falls under 1e-13 * inf_norm(A).
LUFactorization lu_factor(const Matrix& A);

// Solves A x = b from the factorization. Throws SingularFactorization when
// the factorization is flagged singular, DimensionMismatch on bad sizes.
Vector lu_solve(const LUFactorization& f, const Vector& b);

} // namespace waxsolve
