#pragma once

// Green's operator G_eps = (T - eps)^(-1), held as one LU factorization per
// eps and applied by substitution. A pole of G_eps (eps numerically an
// eigenvalue of T) is an error at this layer: it can never be iterated
// through, callers nudge eps instead.

#include "waxsolve/linalg.hpp"

namespace waxsolve {

class Resolvent {
public:
    // Factors (T - eps*I). Throws SingularResolvent when the factorization
    // is flagged singular.
    Resolvent(const Matrix& T, Complex epsilon);

    // G_eps (V u), i.e. lu_solve(fact, matvec(V, u)).
    Vector apply_green_v(const Matrix& V, const Vector& u) const;

    // G_eps b
    Vector apply_green(const Vector& b) const;

    Complex epsilon() const { return epsilon_; }
    double t_norm() const { return t_norm_; }
    std::size_t size() const { return fact_.n; }

private:
    Complex epsilon_;
    LUFactorization fact_;
    double t_norm_;
};

inline Resolvent make_resolvent(const Matrix& T, Complex epsilon) {
    return Resolvent(T, epsilon);
}

} // namespace waxsolve
