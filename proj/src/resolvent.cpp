#include "waxsolve/resolvent.hpp"

namespace waxsolve {

Resolvent::Resolvent(const Matrix& T, Complex epsilon) : epsilon_(epsilon), t_norm_(T.inf_norm()) {
    Matrix shifted = T;
    for (std::size_t i = 0; i < T.size(); ++i) shifted(i, i) -= epsilon;
    fact_ = lu_factor(shifted);
    if (fact_.singular)
        throw SingularResolvent("resolvent: T - eps*I is singular (eps is an eigenvalue of T)");
}

Vector Resolvent::apply_green_v(const Matrix& V, const Vector& u) const {
    if (V.size() != fact_.n)
        throw DimensionMismatch("apply_green_v: V dimension differs");
    return lu_solve(fact_, matvec(V, u));
}

Vector Resolvent::apply_green(const Vector& b) const {
    return lu_solve(fact_, b);
}

} // namespace waxsolve
