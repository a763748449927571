#include "waxsolve/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

namespace waxsolve {

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Matrix Matrix::diagonal(const Vector& d) {
    Matrix m(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
}

Matrix Matrix::transposed() const {
    Matrix t(n_);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

double Matrix::inf_norm() const {
    double best = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < n_; ++j) row += std::abs((*this)(i, j));
        best = std::max(best, row);
    }
    return best;
}

bool Matrix::is_finite() const {
    for (const Complex& z : a_)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
}

Matrix pencil(const Matrix& T, const Matrix& V, Complex lambda) {
    if (T.size() != V.size())
        throw DimensionMismatch("pencil: T and V dimensions differ");
    Matrix h(T.size());
    for (std::size_t i = 0; i < T.size(); ++i)
        for (std::size_t j = 0; j < T.size(); ++j) h(i, j) = T(i, j) - lambda * V(i, j);
    return h;
}

PolarScalar to_polar(Complex z) {
    PolarScalar p;
    p.magnitude = std::abs(z);
    if (z.real() == 0.0 && z.imag() == 0.0) {
        p.phase = 0.0; // arg(0) defined as 0
        return p;
    }
    p.phase = std::atan2(z.imag(), z.real());
    if (p.phase <= -std::numbers::pi) p.phase = std::numbers::pi; // range (-pi, pi]
    return p;
}

Complex from_polar(const PolarScalar& p) {
    return Complex(p.magnitude * std::cos(p.phase), p.magnitude * std::sin(p.phase));
}

Vector matvec(const Matrix& A, const Vector& x) {
    if (A.size() != x.size())
        throw DimensionMismatch("matvec: dimensions do not match");
    const std::size_t n = A.size();
    Vector y(n);
    for (std::size_t i = 0; i < n; ++i) {
        Complex acc = 0.0;
        for (std::size_t j = 0; j < n; ++j) acc += A(i, j) * x[j];
        y[i] = acc;
    }
    return y;
}

Complex inner(const Vector& r, const Vector& u) {
    if (r.size() != u.size())
        throw DimensionMismatch("inner: vector lengths differ");
    Complex acc = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) acc += std::conj(r[i]) * u[i];
    return acc;
}

double inf_norm(const Vector& v) {
    double best = 0.0;
    for (const Complex& z : v) best = std::max(best, std::abs(z));
    return best;
}

bool is_finite(const Vector& v) {
    for (const Complex& z : v)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
}

Vector ones_vector(std::size_t n) {
    return Vector(n, Complex(1.0, 0.0));
}

LUFactorization lu_factor(const Matrix& A) {
    const std::size_t n = A.size();
    LUFactorization f;
    f.n = n;
    f.lu = A.entries();
    f.perm.resize(n);
    std::iota(f.perm.begin(), f.perm.end(), std::size_t{0});

    auto at = [&](std::size_t i, std::size_t j) -> Complex& { return f.lu[i * n + j]; };

    const double threshold = 1e-13 * A.inf_norm();
    double min_pivot = std::numeric_limits<double>::infinity();

    for (std::size_t k = 0; k < n; ++k) {
        std::size_t imax = k;
        double best = std::abs(at(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            const double cand = std::abs(at(i, k));
            if (cand > best) {
                best = cand;
                imax = i;
            }
        }
        if (imax != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(at(k, j), at(imax, j));
            std::swap(f.perm[k], f.perm[imax]);
            ++f.swap_count;
        }
        const Complex piv = at(k, k);
        const double apiv = std::abs(piv);
        min_pivot = std::min(min_pivot, apiv);
        if (apiv == 0.0) continue; // leave the column; flagged below
        for (std::size_t i = k + 1; i < n; ++i) {
            at(i, k) /= piv;
            const Complex lik = at(i, k);
            if (lik == Complex(0.0, 0.0)) continue;
            for (std::size_t j = k + 1; j < n; ++j) at(i, j) -= lik * at(k, j);
        }
    }

    f.min_pivot_magnitude = min_pivot;
    f.singular = (min_pivot < threshold) || (min_pivot == 0.0);
    return f;
}

Vector lu_solve(const LUFactorization& f, const Vector& b) {
    if (f.singular)
        throw SingularFactorization("lu_solve: factorization is singular");
    if (b.size() != f.n)
        throw DimensionMismatch("lu_solve: right-hand side length differs");
    const std::size_t n = f.n;
    auto at = [&](std::size_t i, std::size_t j) -> const Complex& { return f.lu[i * n + j]; };

    Vector x(n);
    for (std::size_t i = 0; i < n; ++i) {
        Complex acc = b[f.perm[i]];
        for (std::size_t k = 0; k < i; ++k) acc -= at(i, k) * x[k];
        x[i] = acc;
    }
    for (std::size_t ii = n; ii-- > 0;) {
        Complex acc = x[ii];
        for (std::size_t k = ii + 1; k < n; ++k) acc -= at(ii, k) * x[k];
        x[ii] = acc / at(ii, ii);
    }
    return x;
}

} // namespace waxsolve
