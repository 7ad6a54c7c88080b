#pragma once

#include <cmath>

#include "curvint/dual.hpp"
#include "curvint/errors.hpp"

namespace curvint {

// Series branch threshold on u = kappa*x^2; the degree-3 truncation error is
// below 1e-28 there, so both branches agree to roundoff at the switch.
inline constexpr double kSeriesThreshold = 1e-6;

// |ck| below this is treated as a pole of the kappa-tangent.
inline constexpr double kPoleThreshold = 1e-12;

/// kappa-cosine: cos(sqrt(k)x) for k>0, 1 for k=0, cosh(sqrt(-k)x) for k<0.
/// Generic over any scalar with arithmetic against double (duals flow
/// through both branches; the branch test looks only at the value part).
template <class T>
T ck(double kappa, const T& x) {
    const double xv = value_of(x);
    const double u = kappa * xv * xv;
    if (std::abs(u) < kSeriesThreshold) {
        const T ux = (x * x) * kappa;
        return 1.0 + ux * (-1.0 / 2.0 + ux * (1.0 / 24.0 + ux * (-1.0 / 720.0)));
    }
    using std::cos;
    using std::cosh;
    if (kappa > 0.0) return cos(std::sqrt(kappa) * x);
    return cosh(std::sqrt(-kappa) * x);
}

/// kappa-sine: sin(sqrt(k)x)/sqrt(k) for k>0, x for k=0,
/// sinh(sqrt(-k)x)/sqrt(-k) for k<0. Odd in x.
template <class T>
T sk(double kappa, const T& x) {
    const double xv = value_of(x);
    const double u = kappa * xv * xv;
    if (std::abs(u) < kSeriesThreshold) {
        const T ux = (x * x) * kappa;
        return x * (1.0 + ux * (-1.0 / 6.0 + ux * (1.0 / 120.0 + ux * (-1.0 / 5040.0))));
    }
    using std::sin;
    using std::sinh;
    if (kappa > 0.0) {
        const double s = std::sqrt(kappa);
        return sin(s * x) * (1.0 / s);
    }
    const double s = std::sqrt(-kappa);
    return sinh(s * x) * (1.0 / s);
}

/// kappa-tangent sk/ck; tk(0,x) = x. Raises DivisionAtPole when |ck| falls
/// below the pole threshold.
template <class T>
T tk(double kappa, const T& x) {
    const T c = ck(kappa, x);
    if (std::abs(value_of(c)) < kPoleThreshold)
        throw DivisionAtPole("tk: kappa-cosine vanishes at the evaluation point");
    return sk(kappa, x) / c;
}

namespace detail {

/// Reciprocal that raises instead of overflowing at a chart pole.
template <class T>
T checked_recip(const T& x, const char* what) {
    if (std::abs(value_of(x)) < kPoleThreshold) throw SingularEvaluation(what);
    return 1.0 / x;
}

} // namespace detail

} // namespace curvint
