#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>

#include <cmath>
#include <numbers>

#include "curvint/dynamics.hpp"
#include "curvint/observables.hpp"

using namespace curvint;

namespace {

double max_monitor_drift(const Trajectory& tr) {
    double worst = 0.0;
    for (size_t s = 0; s < tr.monitor_values.size(); ++s)
        for (size_t m = 0; m < tr.monitor_values[s].size(); ++m) {
            const double d0 = tr.monitor_values[0][m];
            worst = std::max(worst,
                             std::abs(tr.monitor_values[s][m] - d0) / std::max(1.0, std::abs(d0)));
        }
    return worst;
}

// Damped Newton search for a configuration with vanishing potential
// gradient; anchors the conservation runs at an orbit center.
PolarCoords potential_critical_point(const Observable& u, const PolarCoords& guess, int dim) {
    std::vector<double> flat(2 * dim, 0.0);
    const std::vector<double> q0 = guess.flat();
    for (int i = 0; i < dim; ++i) flat[i] = q0[i];
    std::vector<double> grad(2 * dim), hess(static_cast<size_t>(4) * dim * dim);
    for (int iter = 0; iter < 80; ++iter) {
        u.gradient(flat, grad);
        hessian(u, flat, hess);
        Eigen::MatrixXd hq(dim, dim);
        Eigen::VectorXd gq(dim);
        for (int i = 0; i < dim; ++i) {
            gq(i) = grad[i];
            for (int j = 0; j < dim; ++j) hq(i, j) = hess[static_cast<size_t>(i) * 2 * dim + j];
        }
        if (gq.cwiseAbs().maxCoeff() < 1e-13) break;
        Eigen::VectorXd step = hq.partialPivLu().solve(-gq);
        const double lim = step.cwiseAbs().maxCoeff();
        if (lim > 0.15) step *= 0.15 / lim;
        for (int i = 0; i < dim; ++i) flat[i] += step(i);
    }
    return PolarCoords::from_flat(dim, flat);
}

} // namespace

TEST_CASE("vector field closed form on flat N = 2") {
    const SpaceSpec spec(2, 0.0, 1.0);
    const Observable t = kinetic(spec);
    PhasePoint pt;
    pt.q.r = 1.4;
    pt.q.theta = 0.9;
    pt.p = {0.6, -0.7};
    const auto f = hamiltonian_vector_field(t, pt.flat());
    const double r = pt.q.r, pth = pt.p[1];
    CHECK(f[0] == doctest::Approx(0.6).epsilon(1e-13));                 // rdot = p_r
    CHECK(f[1] == doctest::Approx(pth / (r * r)).epsilon(1e-13));       // thetadot
    CHECK(f[2] == doctest::Approx(pth * pth / (r * r * r)).epsilon(1e-12)); // p_r dot
    CHECK(std::abs(f[3]) < 1e-15);                                      // p_theta dot
}

TEST_CASE("vector field vanishes in q at zero momenta") {
    const SpaceSpec spec(3, 1.0, -1.0);
    Betas b;
    b.beta0 = 0.4;
    b.beta = {0.2, 0.1, 0.3};
    const Observable h = kinetic(spec) + potential_sw(spec, b);
    PhasePoint pt;
    pt.q.r = 0.8;
    pt.q.theta = 0.7;
    pt.q.phi = {0.9};
    pt.p = {0.0, 0.0, 0.0};
    const auto f = hamiltonian_vector_field(h, pt.flat());
    for (int i = 0; i < 3; ++i) CHECK(f[i] == 0.0);
}

TEST_CASE("vector field matches central differences") {
    const SpaceSpec spec(3, -1.0, 1.0);
    Betas b;
    b.beta0 = 0.5;
    b.beta = {0.2, 0.3, 0.25};
    const Observable h = kinetic(spec) + potential_sw(spec, b);
    PhasePoint pt;
    pt.q.r = 0.9;
    pt.q.theta = 0.8;
    pt.q.phi = {0.7};
    pt.p = {0.4, -0.2, 0.3};
    const std::vector<double> flat = pt.flat();
    const auto f = hamiltonian_vector_field(h, flat);
    const double hstep = 1e-5;
    for (int i = 0; i < 6; ++i) {
        std::vector<double> zp = flat, zm = flat;
        zp[i] += hstep;
        zm[i] -= hstep;
        const double d = (h.eval(std::span<const double>(zp)) - h.eval(std::span<const double>(zm))) /
                         (2 * hstep);
        const double expected = (i < 3) ? -f[3 + i] : f[i - 3];
        CHECK(d == doctest::Approx(expected).epsilon(1e-6));
    }
}

TEST_CASE("hessian is the derivative of the gradient") {
    const SpaceSpec spec(2, 1.0, 1.0);
    Betas b;
    b.beta0 = 0.7;
    b.beta = {0.3, 0.4};
    const Observable h = kinetic(spec) + potential_sw(spec, b);
    PhasePoint pt;
    pt.q.r = 0.8;
    pt.q.theta = 0.6;
    pt.p = {0.5, -0.4};
    const std::vector<double> flat = pt.flat();
    std::vector<double> hess(16);
    hessian(h, flat, hess);
    const double hstep = 1e-5;
    for (int j = 0; j < 4; ++j) {
        std::vector<double> zp = flat, zm = flat;
        zp[j] += hstep;
        zm[j] -= hstep;
        std::vector<double> gp(4), gm(4);
        h.gradient(zp, gp);
        h.gradient(zm, gm);
        for (int i = 0; i < 4; ++i) {
            const double fd = (gp[i] - gm[i]) / (2 * hstep);
            CHECK(hess[4 * i + j] == doctest::Approx(fd).epsilon(1e-5));
            CHECK(hess[4 * i + j] == hess[4 * j + i]);
        }
    }
}

TEST_CASE("radial geodesic on the sphere") {
    const SpaceSpec spec(2, 1.0, 1.0);
    const Observable t = kinetic(spec);
    PhasePoint s0;
    s0.q.r = 0.5;
    s0.q.theta = std::numbers::pi / 3;
    s0.p = {1.0, 0.0};
    IntegratorConfig cfg;
    cfg.dt = 1e-3;
    cfg.steps = 1000;
    cfg.stride = 100;
    const Observable j12 = generator_polar(spec, 1, 2);
    const std::array<Observable, 1> mons{j12};
    const Trajectory tr = integrate(spec, t, s0, cfg, mons);
    REQUIRE(tr.status == TrajectoryStatus::Completed);
    REQUIRE(tr.times.size() == 11); // steps/stride + 1
    for (size_t s = 0; s < tr.times.size(); ++s) {
        CHECK(tr.states[s][0] == doctest::Approx(0.5 + tr.times[s]).epsilon(1e-12));
        CHECK(std::abs(tr.monitor_values[s][0]) < 1e-12); // J_12 = p_theta = 0
    }

    // pushed further, the same ray aborts at the antipodal chart pole
    cfg.steps = 4000;
    const Trajectory hit = integrate(spec, t, s0, cfg, mons);
    CHECK(hit.status == TrajectoryStatus::SingularityApproach);
    CHECK(hit.steps_completed < 4000);
}

TEST_CASE("midpoint conserves the free quadratic invariant") {
    // equatorial circular geodesic: r stays at pi/2, theta sweeps slowly
    const SpaceSpec spec(2, 1.0, 1.0);
    const Observable t = kinetic(spec);
    PhasePoint s0;
    s0.q.r = std::numbers::pi / 2;
    s0.q.theta = 0.2;
    s0.p = {0.0, 0.12};
    IntegratorConfig cfg;
    cfg.dt = 1e-3;
    cfg.steps = 10000;
    cfg.stride = 100;
    const Observable j12 = generator_polar(spec, 1, 2);
    const std::array<Observable, 2> mons{j12, integral_J_upper(spec, 2)};
    const Trajectory tr = integrate(spec, t, s0, cfg, mons);
    REQUIRE(tr.status == TrajectoryStatus::Completed);
    for (size_t s = 0; s < tr.times.size(); ++s) {
        CHECK(std::abs(tr.monitor_values[s][0] - 0.12) < 1e-11);
        CHECK(std::abs(tr.monitor_values[s][1] - 0.12 * 0.12) < 1e-11);
    }
}

TEST_CASE("time reversal returns to the start") {
    // the Hamiltonians here are even in the momenta, so the backward leg is
    // a momentum flip, a forward run, and a second flip
    const SpaceSpec spec(3, -1.0, -1.0);
    Betas b;
    b.beta0 = 0.6;
    b.beta = {0.5, -0.02, -0.02};
    const Observable h = kinetic(spec) + potential_sw(spec, b);
    PhasePoint s0;
    s0.q.r = 0.95;
    s0.q.theta = 0.75;
    s0.q.phi = {0.79};
    s0.p = {0.05, -0.04, 0.03};
    IntegratorConfig cfg;
    cfg.dt = 1e-3;
    cfg.steps = 2000;
    cfg.stride = 2000;
    const Trajectory fwd = integrate(spec, h, s0, cfg, {});
    REQUIRE(fwd.status == TrajectoryStatus::Completed);
    PhasePoint mid = PhasePoint::from_flat(3, fwd.states.back());
    for (double& p : mid.p) p = -p;
    const Trajectory back = integrate(spec, h, mid, cfg, {});
    REQUIRE(back.status == TrajectoryStatus::Completed);
    PhasePoint ret = PhasePoint::from_flat(3, back.states.back());
    for (double& p : ret.p) p = -p;
    const std::vector<double> start = s0.flat();
    const std::vector<double> final = ret.flat();
    for (size_t i = 0; i < start.size(); ++i) CHECK(std::abs(final[i] - start[i]) < 1e-9);
}

TEST_CASE("integrator configuration is validated") {
    const SpaceSpec spec(2, 1.0, 1.0);
    const Observable t = kinetic(spec);
    PhasePoint s0;
    s0.q.r = 0.5;
    s0.q.theta = 0.4;
    s0.p = {0.1, 0.1};
    IntegratorConfig cfg;
    cfg.dt = -1e-3;
    CHECK_THROWS(integrate(spec, t, s0, cfg, {}));
    cfg.dt = 1e-3;
    cfg.newton_tol = 1e-15;
    CHECK_THROWS(integrate(spec, t, s0, cfg, {}));
    cfg.newton_tol = 1e-13;
    cfg.steps = 0;
    CHECK_THROWS(integrate(spec, t, s0, cfg, {}));
}

TEST_CASE("SW conservation over 1e4 midpoint steps, all six classes") {
    for (double k2 : {1.0, -1.0}) {
        for (double k1 : {1.0, 0.0, -1.0}) {
            const SpaceSpec spec(3, k1, k2);
            Betas b;
            b.beta0 = 0.6;
            b.beta = k2 > 0 ? std::vector<double>{0.05, 0.04, 0.05}
                            : std::vector<double>{0.5, -0.02, -0.02};
            const Observable u = potential_sw(spec, b);
            const Observable h = kinetic(spec) + u;
            PolarCoords guess;
            guess.r = 0.8;
            guess.theta = 0.9;
            guess.phi = {std::numbers::pi / 4};
            PhasePoint s0;
            s0.q = potential_critical_point(u, guess, 3);
            s0.p = {0.02, -0.02, 0.02};
            IntegratorConfig cfg;
            cfg.dt = 1e-3;
            cfg.steps = 10000;
            cfg.stride = 100;
            std::vector<Observable> mons{h.renamed("H")};
            for (int mu = 1; mu <= 3; ++mu) mons.push_back(integral_I(spec, b, 0, mu));
            for (int l = 2; l <= 3; ++l) mons.push_back(integral_Q_upper(spec, b, l));
            mons.push_back(integral_Q_lower(spec, b, 2));
            const Trajectory tr = integrate(spec, h, s0, cfg, mons);
            CAPTURE(k1);
            CAPTURE(k2);
            REQUIRE(tr.status == TrajectoryStatus::Completed);
            CHECK(max_monitor_drift(tr) < 1e-8);
        }
    }
}

TEST_CASE("RK4 H-drift converges at fourth order") {
    const SpaceSpec spec(2, 1.0, 1.0);
    Betas b;
    b.beta0 = 3.0;
    b.beta = {0.6, 0.8};
    const Observable h = kinetic(spec) + potential_sw(spec, b);
    PhasePoint s0;
    s0.q.r = 0.9;
    s0.q.theta = 0.8;
    s0.p = {1.0, 0.8};
    std::vector<double> drifts;
    for (double dt : {1e-3, 5e-4, 2.5e-4}) {
        IntegratorConfig cfg;
        cfg.method = IntegratorMethod::RK4;
        cfg.dt = dt;
        cfg.steps = static_cast<long>(std::lround(2.0 / dt));
        cfg.stride = 10;
        const std::array<Observable, 1> mons{h.renamed("H")};
        const Trajectory tr = integrate(spec, h, s0, cfg, mons);
        REQUIRE(tr.status == TrajectoryStatus::Completed);
        drifts.push_back(max_monitor_drift(tr));
    }
    const double slope = 0.5 * (std::log2(drifts[0] / drifts[1]) + std::log2(drifts[1] / drifts[2]));
    CHECK(slope > 3.7);
    CHECK(slope < 4.3);
}

TEST_CASE("newton divergence is reported, not looped") {
    // an absurd step size on a steep barrier defeats the stage solve
    const SpaceSpec spec(2, 1.0, 1.0);
    Betas b;
    b.beta0 = 5.0;
    b.beta = {2.0, 3.0};
    const Observable h = kinetic(spec) + potential_sw(spec, b);
    PhasePoint s0;
    s0.q.r = 0.4;
    s0.q.theta = 0.5;
    s0.p = {3.0, 2.0};
    IntegratorConfig cfg;
    cfg.dt = 50.0;
    cfg.steps = 10;
    const Trajectory tr = integrate(spec, h, s0, cfg, {});
    CHECK(tr.status != TrajectoryStatus::Completed);
}
