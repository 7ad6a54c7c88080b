#include "curvint/geometry.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>

namespace curvint {

SpaceSpec::SpaceSpec(int n, double k1, double k2) : dim(n), kappa1(k1), kappa2(k2) {
    if (n < 2) throw std::invalid_argument("SpaceSpec: dimension must be >= 2");
    if (!std::isfinite(k1) || !std::isfinite(k2))
        throw std::invalid_argument("SpaceSpec: curvature parameters must be finite");
    if (k2 == 0.0) throw std::invalid_argument("SpaceSpec: kappa2 = 0 (degenerate metric) is excluded");
}

const char* to_string(SpaceLabel label) {
    switch (label) {
        case SpaceLabel::Spherical: return "spherical";
        case SpaceLabel::Euclidean: return "euclidean";
        case SpaceLabel::Hyperbolic: return "hyperbolic";
        case SpaceLabel::AntiDeSitter: return "anti-de-sitter";
        case SpaceLabel::Minkowskian: return "minkowskian";
        case SpaceLabel::DeSitter: return "de-sitter";
    }
    return "?";
}

SpaceLabel classify(const SpaceSpec& spec) {
    if (spec.kappa2 > 0.0) {
        if (spec.kappa1 > 0.0) return SpaceLabel::Spherical;
        if (spec.kappa1 < 0.0) return SpaceLabel::Hyperbolic;
        return SpaceLabel::Euclidean;
    }
    if (spec.kappa1 > 0.0) return SpaceLabel::AntiDeSitter;
    if (spec.kappa1 < 0.0) return SpaceLabel::DeSitter;
    return SpaceLabel::Minkowskian;
}

std::vector<double> PolarCoords::flat() const {
    std::vector<double> q;
    q.reserve(2 + phi.size());
    q.push_back(r);
    q.push_back(theta);
    q.insert(q.end(), phi.begin(), phi.end());
    return q;
}

PolarCoords PolarCoords::from_flat(int dim, std::span<const double> q) {
    PolarCoords out;
    out.r = q[0];
    out.theta = q[1];
    out.phi.assign(q.begin() + 2, q.begin() + dim);
    return out;
}

AmbientPoint polar_to_ambient(const SpaceSpec& spec, const PolarCoords& q) {
    const std::vector<double> flat = q.flat();
    AmbientPoint out;
    out.x.resize(spec.dim + 1);
    polar_to_ambient<double>(spec, flat, out.x);
    return out;
}

double constraint_residual(const SpaceSpec& spec, const AmbientPoint& pt) {
    const double k1 = spec.kappa1, k2 = spec.kappa2;
    double sigma = pt.x[0] * pt.x[0] + k1 * pt.x[1] * pt.x[1];
    double tail = 0.0;
    for (int j = 2; j <= spec.dim; ++j) tail += pt.x[j] * pt.x[j];
    sigma += k1 * k2 * tail;
    return sigma - 1.0;
}

std::vector<double> metric_polar(const SpaceSpec& spec, const PolarCoords& q) {
    const int n = spec.dim;
    std::vector<double> g(n);
    const double s1 = sk(spec.kappa1, q.r);
    const double s2 = sk(spec.kappa2, q.theta);
    g[0] = 1.0;
    g[1] = spec.kappa2 * s1 * s1;
    double angular = g[1] * s2 * s2;
    for (int i = 3; i <= n; ++i) {
        g[i - 1] = angular * product_over<double>(3, i - 1, [&](int s) {
                       const double sp = std::sin(q.phi[s - 3]);
                       return sp * sp;
                   });
    }
    return g;
}

std::array<RepEntry, 2> rep_entries(int mu, int nu) {
    if (!(0 <= mu && mu < nu)) throw IndexOrder("rep_entries: need 0 <= mu < nu");
    // J_{mu nu} = e_{nu mu} - (eta_nu / eta_mu) e_{mu nu} with
    // eta = (1, k1, k1 k2, ..., k1 k2).
    int k1_pow = 0, k2_pow = 0;
    if (mu == 0 && nu == 1) {
        k1_pow = 1;
    } else if (mu == 0) {
        k1_pow = 1;
        k2_pow = 1;
    } else if (mu == 1) {
        k2_pow = 1;
    }
    return {RepEntry{nu, mu, +1, 0, 0}, RepEntry{mu, nu, -1, k1_pow, k2_pow}};
}

RepMatrix rep_matrix(const SpaceSpec& spec, int mu, int nu) {
    if (nu > spec.dim) throw IndexOrder("rep_matrix: nu exceeds the ambient index range");
    RepMatrix out;
    out.n = spec.dim + 1;
    out.m.assign(static_cast<size_t>(out.n) * out.n, 0.0);
    for (const RepEntry& e : rep_entries(mu, nu)) {
        double val = e.sign;
        for (int a = 0; a < e.k1_pow; ++a) val *= spec.kappa1;
        for (int b = 0; b < e.k2_pow; ++b) val *= spec.kappa2;
        out.m[static_cast<size_t>(e.row) * out.n + e.col] = val;
    }
    return out;
}

namespace {

// Scaling-and-squaring matrix exponential with the degree-13 Pade
// approximant; accurate to ~1e-13 on the generator norms used here.
Eigen::MatrixXd expm(const Eigen::MatrixXd& a) {
    static const double b[14] = {
        64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
        1187353796428800.0,  129060195264000.0,   10559470521600.0,
        670442572800.0,      33522128640.0,       1323241920.0,
        40840800.0,          960960.0,            16380.0,
        182.0,               1.0};
    const double theta13 = 5.371920351148152;
    const double nrm = a.cwiseAbs().rowwise().sum().maxCoeff();
    int squarings = 0;
    Eigen::MatrixXd as = a;
    if (nrm > theta13) {
        squarings = static_cast<int>(std::ceil(std::log2(nrm / theta13)));
        as /= std::pow(2.0, squarings);
    }
    const auto n = a.rows();
    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
    const Eigen::MatrixXd a2 = as * as;
    const Eigen::MatrixXd a4 = a2 * a2;
    const Eigen::MatrixXd a6 = a4 * a2;
    const Eigen::MatrixXd u =
        as * (a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) + b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * id);
    const Eigen::MatrixXd v =
        a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * id;
    Eigen::MatrixXd p = (v - u).partialPivLu().solve(v + u);
    for (int i = 0; i < squarings; ++i) p = p * p;
    return p;
}

Eigen::MatrixXd rep_eigen(const SpaceSpec& spec, int mu, int nu) {
    const RepMatrix rm = rep_matrix(spec, mu, nu);
    Eigen::MatrixXd out(rm.n, rm.n);
    for (int i = 0; i < rm.n; ++i)
        for (int j = 0; j < rm.n; ++j) out(i, j) = rm.at(i, j);
    return out;
}

} // namespace

double orbit_cross_check(const SpaceSpec& spec, const PolarCoords& q) {
    const int n = spec.dim;
    Eigen::VectorXd v = Eigen::VectorXd::Zero(n + 1);
    v(0) = 1.0; // origin
    v = expm(q.r * rep_eigen(spec, 0, 1)) * v;
    v = expm(q.theta * rep_eigen(spec, 1, 2)) * v;
    for (int s = 3; s <= n; ++s) v = expm(q.phi[s - 3] * rep_eigen(spec, s - 1, s)) * v;
    const AmbientPoint direct = polar_to_ambient(spec, q);
    double dev = 0.0;
    for (int i = 0; i <= n; ++i) dev = std::max(dev, std::abs(v(i) - direct.x[i]));
    return dev;
}

} // namespace curvint
