#pragma once

#include <span>
#include <vector>

#include "curvint/geometry.hpp"
#include "curvint/lie_structure.hpp"
#include "curvint/observable.hpp"

namespace curvint {

namespace detail {

// Direction cosines of the polar angles: u_2..u_N with sum u_i^2 = 1,
//   u_i = prod_{s=3}^i sin(phi_s) * cos(phi_{i+1})   (i < N)
//   u_N = prod_{s=3}^N sin(phi_s).
// phi_s lives at q[s-1]. Partial derivatives are built as products that skip
// the differentiated factor, so no spurious 1/sin poles appear.

template <class T>
T dir_cosine(int dim, int i, std::span<const T> q) {
    using std::sin;
    using std::cos;
    T out(1.0);
    for (int s = 3; s <= i; ++s) out = out * sin(q[s - 1]);
    if (i < dim) out = out * cos(q[i]);
    return out;
}

// Highest angle index on which u_i depends; partials vanish beyond it.
inline int dir_cosine_top(int dim, int i) { return (i < dim) ? i + 1 : dim; }

template <class T>
T dir_cosine_partial(int dim, int i, int m, std::span<const T> q) {
    using std::sin;
    using std::cos;
    if (m > dir_cosine_top(dim, i)) return T(0.0);
    T out(1.0);
    for (int s = 3; s <= i; ++s)
        out = out * ((s == m) ? cos(q[s - 1]) : sin(q[s - 1]));
    if (i < dim) out = out * ((m == i + 1) ? -sin(q[i]) : cos(q[i]));
    return out;
}

// prod_{s=a}^{b} sin^2(phi_s); empty range gives 1.
template <class T>
T sinsq_prod(int a, int b, std::span<const T> q) {
    using std::sin;
    T out(1.0);
    for (int s = a; s <= b; ++s) {
        const T sp = sin(q[s - 1]);
        out = out * sp * sp;
    }
    return out;
}

/// Closed-form polar realization of J_{mu nu} evaluated at the flattened
/// phase point s = (r, theta, phi..., p_r, p_theta, p_phi...).
template <class T>
T generator_polar_value(const SpaceSpec& spec, int mu, int nu, std::span<const T> s) {
    const int n = spec.dim;
    const double k1 = spec.kappa1, k2 = spec.kappa2;
    const auto q = s.first(n);
    const auto p = s.subspan(n, n);

    const T s2 = sk(k2, q[1]);
    const T c2 = ck(k2, q[1]);

    if (mu == 0 && nu == 1) {
        const T cot1 = ck(k1, q[0]) * checked_recip(sk(k1, q[0]), "generator: Sk(r) = 0");
        return c2 * p[0] - s2 * cot1 * p[1];
    }
    if (mu == 0) {
        const T u = dir_cosine(n, nu, q);
        const T cot1 = ck(k1, q[0]) * checked_recip(sk(k1, q[0]), "generator: Sk(r) = 0");
        T out = k2 * s2 * u * p[0] + c2 * cot1 * u * p[1];
        const T f = cot1 * checked_recip(s2, "generator: Sk(theta) = 0");
        for (int m = 3; m <= dir_cosine_top(n, nu); ++m) {
            const T du = dir_cosine_partial(n, nu, m, q);
            if (m > 3)
                out += f * du * p[m - 1] * checked_recip(sinsq_prod(3, m - 1, q), "generator: sin(phi) = 0");
            else
                out += f * du * p[m - 1];
        }
        return out;
    }
    if (mu == 1) {
        const T u = dir_cosine(n, nu, q);
        T out = u * p[1];
        const T f = c2 * checked_recip(s2, "generator: Sk(theta) = 0");
        for (int m = 3; m <= dir_cosine_top(n, nu); ++m) {
            const T du = dir_cosine_partial(n, nu, m, q);
            if (m > 3)
                out += f * du * p[m - 1] * checked_recip(sinsq_prod(3, m - 1, q), "generator: sin(phi) = 0");
            else
                out += f * du * p[m - 1];
        }
        return out;
    }
    const T uj = dir_cosine(n, mu, q);
    const T uk = dir_cosine(n, nu, q);
    T out(0.0);
    for (int m = 3; m <= dir_cosine_top(n, nu); ++m) {
        const T term = uj * dir_cosine_partial(n, nu, m, q) - uk * dir_cosine_partial(n, mu, m, q);
        if (m > 3)
            out += term * p[m - 1] * checked_recip(sinsq_prod(3, m - 1, q), "generator: sin(phi) = 0");
        else
            out += term * p[m - 1];
    }
    return out;
}

/// Ambient symplectic realization J_{mu nu} on (x_0..x_N, p_0..p_N).
template <class T>
T generator_ambient_value(const SpaceSpec& spec, int mu, int nu, std::span<const T> x,
                          std::span<const T> p) {
    if (mu == 0 && nu == 1) return x[0] * p[1] - spec.kappa1 * (x[1] * p[0]);
    if (mu == 0) return x[0] * p[nu] - (spec.kappa1 * spec.kappa2) * (x[nu] * p[0]);
    if (mu == 1) return x[1] * p[nu] - spec.kappa2 * (x[nu] * p[1]);
    return x[mu] * p[nu] - x[nu] * p[mu];
}

} // namespace detail

/// Polar <-> ambient phase-space map: velocities are recovered from the
/// diagonal momentum relations, ambient velocities through the dual-number
/// Jacobian of polar_to_ambient, and ambient momenta from the ambient
/// kinetic-energy identification. The p_0 = xdot_0 / kappa1 quotient is
/// evaluated in its cancelled form p_0 = -Sk_k1(r) * rdot, which is regular
/// at kappa1 = 0.
template <class T>
void phase_map(const SpaceSpec& spec, std::span<const T> s, std::span<T> x_out,
               std::span<T> p_out) {
    const int n = spec.dim;
    const double k2 = spec.kappa2;
    const auto q = s.first(n);
    const auto p = s.subspan(n, n);

    const T s1 = sk(spec.kappa1, q[0]);
    const T s2 = sk(spec.kappa2, q[1]);

    // Velocities. A momentum that vanishes identically contributes no
    // velocity even on the degenerate locus, so the map stays usable at
    // points like r = 0 with all momenta zero.
    std::vector<T> qdot(n, T(0.0));
    auto divide = [](const T& num, const T& den, const char* what) {
        if (std::abs(value_of(den)) < kPoleThreshold) {
            if (value_of(num) == 0.0) return T(0.0);
            throw ChartDegenerate(what);
        }
        return num / den;
    };
    qdot[0] = p[0];
    const T radial2 = k2 * s1 * s1;
    qdot[1] = divide(p[1], radial2, "phase_map: Sk(r) = 0");
    for (int i = 3; i <= n; ++i) {
        const T den = radial2 * s2 * s2 * detail::sinsq_prod(3, i - 1, q);
        qdot[i - 1] = divide(p[i - 1], den, "phase_map: Sk(theta) or sin(phi) = 0");
    }

    polar_to_ambient(spec, q, x_out);

    // xdot = (Jacobian of polar_to_ambient) * qdot
    std::vector<Dual<T>> qd(n);
    std::vector<Dual<T>> xd(n + 1);
    for (int j = 0; j < n; ++j) qd[j] = Dual<T>(q[j], T(0.0));
    std::vector<T> xdot(n + 1, T(0.0));
    for (int j = 0; j < n; ++j) {
        qd[j].d = T(1.0);
        polar_to_ambient(spec, std::span<const Dual<T>>(qd), std::span<Dual<T>>(xd));
        for (int m = 0; m <= n; ++m) xdot[m] += xd[m].d * qdot[j];
        qd[j].d = T(0.0);
    }

    p_out[0] = -(s1 * qdot[0]);
    p_out[1] = xdot[1];
    for (int j = 2; j <= n; ++j) p_out[j] = k2 * xdot[j];
}

AmbientPhasePoint phase_map(const SpaceSpec& spec, const PhasePoint& s);

/// Closed-form polar realization of J_{mu nu} as an Observable.
Observable generator_polar(const SpaceSpec& spec, int mu, int nu);

/// Ambient realization as a function of ambient phase points.
class AmbientGenerator {
public:
    AmbientGenerator(const SpaceSpec& spec, int mu, int nu);

    double operator()(const AmbientPhasePoint& s) const;

    template <class T>
    T operator()(std::span<const T> x, std::span<const T> p) const {
        return detail::generator_ambient_value(spec_, mu_, nu_, x, p);
    }

    GenIndex index() const { return {mu_, nu_}; }

private:
    SpaceSpec spec_;
    int mu_, nu_;
};

AmbientGenerator generator_ambient(const SpaceSpec& spec, int mu, int nu);

/// Ambient realization pulled back through phase_map, as an Observable on
/// polar phase space (the cross-form oracle for generator_polar).
Observable generator_ambient_observable(const SpaceSpec& spec, int mu, int nu);

} // namespace curvint
