#pragma once

#include <span>
#include <vector>

#include "curvint/geometry.hpp"

namespace curvint {

/// A point of the geodesic polar phase space: coordinates plus conjugate
/// momenta (p_r, p_theta, p_phi3..p_phiN). Flat layout is (q_1..q_N, p_1..p_N).
struct PhasePoint {
    PolarCoords q;
    std::vector<double> p;

    std::vector<double> flat() const;
    static PhasePoint from_flat(int dim, std::span<const double> s);
};

/// Ambient phase point: Weierstrass coordinates and ambient momenta p_0..p_N.
struct AmbientPhasePoint {
    std::vector<double> x;
    std::vector<double> p;
};

} // namespace curvint
