#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "curvint/kappa_trig.hpp"
#include "curvint/util.hpp"

namespace curvint {

/// The six constant-curvature spaces, by sign(kappa1) x sign(kappa2).
enum class SpaceLabel {
    Spherical,
    Euclidean,
    Hyperbolic,
    AntiDeSitter,
    Minkowskian,
    DeSitter,
};

const char* to_string(SpaceLabel label);

/// Dimension and contraction parameters of the space S^N_[k1]k2.
/// kappa1 is the constant sectional curvature, kappa2 scales the metric
/// signature diag(+1, k2, ..., k2); kappa2 = 0 (degenerate metric) is
/// excluded.
struct SpaceSpec {
    int dim;
    double kappa1;
    double kappa2;

    SpaceSpec(int n, double k1, double k2);
};

SpaceLabel classify(const SpaceSpec& spec);

/// Geodesic polar coordinates (r, theta, phi_3..phi_N).
struct PolarCoords {
    double r = 0.0;
    double theta = 0.0;
    std::vector<double> phi; // phi_3..phi_N, size N-2

    std::vector<double> flat() const;
    static PolarCoords from_flat(int dim, std::span<const double> q);
};

/// Ambient (Weierstrass) coordinates x_0..x_N on the quadric Sigma = 1.
struct AmbientPoint {
    std::vector<double> x;
};

/// Polar -> ambient map, generic over the scalar so duals flow through.
/// q = (r, theta, phi_3..phi_N), x_out has N+1 slots.
template <class T>
void polar_to_ambient(const SpaceSpec& spec, std::span<const T> q, std::span<T> x_out) {
    using std::sin;
    using std::cos;
    const int n = spec.dim;
    const T s1 = sk(spec.kappa1, q[0]);
    const T c2 = ck(spec.kappa2, q[1]);
    const T s1s2 = s1 * sk(spec.kappa2, q[1]);
    auto sin_phi = [&](int s) { return sin(q[s - 1]); }; // phi_s lives at q[s-1], s = 3..N
    x_out[0] = ck(spec.kappa1, q[0]);
    x_out[1] = s1 * c2;
    for (int i = 2; i <= n - 1; ++i)
        x_out[i] = s1s2 * product_over<T>(3, i, sin_phi) * cos(q[i]);
    x_out[n] = s1s2 * product_over<T>(3, n, sin_phi);
}

AmbientPoint polar_to_ambient(const SpaceSpec& spec, const PolarCoords& q);

/// Sigma - 1 for the quadric x0^2 + k1 x1^2 + k1 k2 sum_j xj^2 = 1.
double constraint_residual(const SpaceSpec& spec, const AmbientPoint& x);

/// Diagonal metric coefficients (g_rr, g_theta_theta, g_phi3, ..., g_phiN)
/// in geodesic polar coordinates.
std::vector<double> metric_polar(const SpaceSpec& spec, const PolarCoords& q);

/// One defining entry of a vector-representation generator: value
/// sign * k1^k1_pow * k2^k2_pow placed at (row, col).
struct RepEntry {
    int row, col;
    int sign;
    int k1_pow, k2_pow;
};

/// The two nonzero entries of J_{mu nu} in the vector representation.
/// Shared between the numeric matrices here and the exact symbolic ones.
std::array<RepEntry, 2> rep_entries(int mu, int nu);

/// (N+1)x(N+1) generator matrix in the vector representation, row-major.
struct RepMatrix {
    int n = 0; // matrix side, N+1
    std::vector<double> m;

    double at(int row, int col) const { return m[static_cast<size_t>(row) * n + col]; }
};

RepMatrix rep_matrix(const SpaceSpec& spec, int mu, int nu);

/// Rebuilds the point by the group orbit exp(phi_N J_{N-1,N}) ... exp(r J_01)
/// acting on the origin (matrix exponentials) and returns the max-abs
/// deviation from polar_to_ambient.
double orbit_cross_check(const SpaceSpec& spec, const PolarCoords& q);

} // namespace curvint
