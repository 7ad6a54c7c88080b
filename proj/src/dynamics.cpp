#include "curvint/dynamics.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <numbers>

#include "curvint/kappa_trig.hpp"

namespace curvint {

const char* to_string(TrajectoryStatus status) {
    switch (status) {
        case TrajectoryStatus::Completed: return "completed";
        case TrajectoryStatus::SingularityApproach: return "singularity-approach";
        case TrajectoryStatus::NewtonDivergence: return "newton-divergence";
    }
    return "?";
}

std::vector<double> hamiltonian_vector_field(const Observable& h, std::span<const double> s) {
    const int n2 = h.phase_dim();
    const int n = n2 / 2;
    std::vector<double> grad(n2), out(n2);
    h.gradient(s, grad);
    for (int i = 0; i < n; ++i) {
        out[i] = grad[n + i];  // qdot = dH/dp
        out[n + i] = -grad[i]; // pdot = -dH/dq
    }
    return out;
}

void hessian(const Observable& h, std::span<const double> s, std::span<double> out_rowmajor) {
    const int n = h.phase_dim();
    std::vector<Dual2> z(n);
    for (int i = 0; i < n; ++i) z[i] = Dual2(Dual1(s[i]), Dual1(0.0));
    for (int i = 0; i < n; ++i) {
        z[i].v.d = 1.0;
        for (int j = i; j < n; ++j) {
            z[j].d.v = 1.0;
            const double hij = h.eval(std::span<const Dual2>(z)).d.d;
            z[j].d.v = 0.0;
            out_rowmajor[static_cast<size_t>(i) * n + j] = hij;
            out_rowmajor[static_cast<size_t>(j) * n + i] = hij;
        }
        z[i].v.d = 0.0;
    }
}

namespace {

// True when the closed segment [a, b], widened by delta, touches a point of
// the lattice {m * period} (period 0 means the single point 0).
bool segment_meets_lattice(double a, double b, double period, double delta) {
    const double lo = std::min(a, b) - delta;
    const double hi = std::max(a, b) + delta;
    if (period <= 0.0) return lo <= 0.0 && 0.0 <= hi;
    return std::ceil(lo / period) * period <= hi;
}

// Whether the step from s0 to s1 approaches (or jumps across) one of the
// chart loci sin(phi_s) = 0, Sk_k2(theta) = 0, Sk_k1(r) = 0 and, for
// kappa2 > 0, Ck_k2(theta) = 0.
bool step_hits_singularity(const SpaceSpec& spec, std::span<const double> s0,
                           std::span<const double> s1, double delta) {
    constexpr double pi = std::numbers::pi;
    const int n = spec.dim;
    const double r_period = spec.kappa1 > 0.0 ? pi / std::sqrt(spec.kappa1) : 0.0;
    const double th_period = spec.kappa2 > 0.0 ? pi / std::sqrt(spec.kappa2) : 0.0;
    if (segment_meets_lattice(s0[0], s1[0], r_period, delta)) return true;
    if (segment_meets_lattice(s0[1], s1[1], th_period, delta)) return true;
    if (spec.kappa2 > 0.0) {
        const double half = 0.5 * pi / std::sqrt(spec.kappa2);
        if (segment_meets_lattice(s0[1] - half, s1[1] - half, th_period, delta)) return true;
    }
    for (int i = 2; i < n; ++i)
        if (segment_meets_lattice(s0[i], s1[i], pi, delta)) return true;
    return false;
}

struct MidpointStepper {
    const Observable& h;
    const IntegratorConfig& cfg;
    int n2, n;
    Eigen::MatrixXd hess, jac;
    Eigen::VectorXd g, delta;
    std::vector<double> hess_buf, field;

    MidpointStepper(const Observable& h_, const IntegratorConfig& cfg_)
        : h(h_), cfg(cfg_), n2(h_.phase_dim()), n(n2 / 2), hess(n2, n2), jac(n2, n2), g(n2),
          delta(n2), hess_buf(static_cast<size_t>(n2) * n2), field(n2) {}

    // One midpoint step z -> z + dt * X((z + z')/2); returns false if the
    // Newton iteration fails to converge.
    bool step(std::vector<double>& z, double dt) {
        std::vector<double> m = z;
        const std::vector<double> x0 = hamiltonian_vector_field(h, z);
        for (int i = 0; i < n2; ++i) m[i] = z[i] + 0.5 * dt * x0[i];
        bool converged = false;
        for (int iter = 0; iter < cfg.newton_max_iter; ++iter) {
            const std::vector<double> xm = hamiltonian_vector_field(h, m);
            double res = 0.0;
            for (int i = 0; i < n2; ++i) {
                g(i) = m[i] - z[i] - 0.5 * dt * xm[i];
                res = std::max(res, std::abs(g(i)));
            }
            if (res < cfg.newton_tol && iter > 0) {
                converged = true;
                break;
            }
            hessian(h, m, hess_buf);
            for (int i = 0; i < n2; ++i)
                for (int j = 0; j < n2; ++j) hess(i, j) = hess_buf[static_cast<size_t>(i) * n2 + j];
            // d/dm [m - z - dt/2 * Omega grad H(m)] = I - dt/2 * Omega Hess
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n2; ++j) {
                    jac(i, j) = -0.5 * dt * hess(n + i, j);
                    jac(n + i, j) = 0.5 * dt * hess(i, j);
                }
            for (int i = 0; i < n2; ++i) jac(i, i) += 1.0;
            delta = jac.partialPivLu().solve(-g);
            for (int i = 0; i < n2; ++i) m[i] += delta(i);
        }
        if (!converged) return false;
        // one polishing update so the accepted stage residual sits at roundoff
        const std::vector<double> xm = hamiltonian_vector_field(h, m);
        for (int i = 0; i < n2; ++i) g(i) = m[i] - z[i] - 0.5 * dt * xm[i];
        delta = jac.partialPivLu().solve(-g);
        for (int i = 0; i < n2; ++i) m[i] += delta(i);
        for (int i = 0; i < n2; ++i) z[i] = 2.0 * m[i] - z[i];
        return true;
    }
};

void rk4_step(const Observable& h, std::vector<double>& z, double dt) {
    const int n2 = h.phase_dim();
    const std::vector<double> k1 = hamiltonian_vector_field(h, z);
    std::vector<double> tmp(n2);
    for (int i = 0; i < n2; ++i) tmp[i] = z[i] + 0.5 * dt * k1[i];
    const std::vector<double> k2 = hamiltonian_vector_field(h, tmp);
    for (int i = 0; i < n2; ++i) tmp[i] = z[i] + 0.5 * dt * k2[i];
    const std::vector<double> k3 = hamiltonian_vector_field(h, tmp);
    for (int i = 0; i < n2; ++i) tmp[i] = z[i] + dt * k3[i];
    const std::vector<double> k4 = hamiltonian_vector_field(h, tmp);
    for (int i = 0; i < n2; ++i)
        z[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
}

} // namespace

Trajectory integrate(const SpaceSpec& spec, const Observable& h, const PhasePoint& s0,
                     const IntegratorConfig& cfg, std::span<const Observable> monitors) {
    if (!(cfg.dt > 0.0) || !std::isfinite(cfg.dt * static_cast<double>(cfg.steps)))
        throw std::invalid_argument("integrate: need dt > 0 with finite dt*steps");
    if (cfg.steps <= 0 || cfg.stride <= 0)
        throw std::invalid_argument("integrate: steps and stride must be positive");
    if (cfg.newton_tol < 1e-14)
        throw std::invalid_argument("integrate: newton_tol below 1e-14");
    Trajectory traj;
    for (const Observable& m : monitors) traj.monitor_names.push_back(m.name());

    std::vector<double> z = s0.flat();
    const int n2 = h.phase_dim();

    auto record = [&](double t) {
        traj.times.push_back(t);
        traj.states.push_back(z);
        std::vector<double> vals;
        vals.reserve(monitors.size());
        for (const Observable& m : monitors) vals.push_back(m.eval(std::span<const double>(z)));
        traj.monitor_values.push_back(std::move(vals));
    };

    MidpointStepper stepper(h, cfg);
    try {
        record(0.0);
        for (long step = 0; step < cfg.steps; ++step) {
            std::vector<double> znew = z;
            bool ok = true;
            if (cfg.method == IntegratorMethod::ImplicitMidpoint) {
                ok = stepper.step(znew, cfg.dt);
                if (!ok) {
                    // fallback: retry once as two half steps
                    znew = z;
                    ok = stepper.step(znew, 0.5 * cfg.dt) && stepper.step(znew, 0.5 * cfg.dt);
                }
                if (!ok) {
                    traj.status = TrajectoryStatus::NewtonDivergence;
                    return traj;
                }
            } else {
                rk4_step(h, znew, cfg.dt);
            }
            if (step_hits_singularity(spec, std::span<const double>(z).first(n2 / 2),
                                      std::span<const double>(znew).first(n2 / 2),
                                      cfg.guard_delta)) {
                traj.status = TrajectoryStatus::SingularityApproach;
                return traj;
            }
            z = std::move(znew);
            traj.steps_completed = step + 1;
            if ((step + 1) % cfg.stride == 0) record((step + 1) * cfg.dt);
        }
    } catch (const SingularEvaluation&) {
        traj.status = TrajectoryStatus::SingularityApproach;
        return traj;
    }
    traj.status = TrajectoryStatus::Completed;
    return traj;
}

} // namespace curvint
