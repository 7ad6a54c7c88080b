#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "curvint/generators.hpp"
#include "curvint/observable.hpp"

namespace curvint {

/// Coupling constants: beta0 the radial (oscillator) strength, beta[i-1] the
/// centrifugal coefficient beta_i, k the Kepler coupling.
struct Betas {
    double beta0 = 0.0;
    std::vector<double> beta; // beta_1..beta_N
    double k = 0.0;

    static Betas zero(int dim) { return Betas{0.0, std::vector<double>(dim, 0.0), 0.0}; }
    double beta_at(int i) const { return beta.empty() ? 0.0 : beta.at(i - 1); }
};

/// Which Hamiltonian family a run refers to.
struct SystemKind {
    enum class Tag { Free, Central, SW, GKC, KC };
    Tag tag = Tag::Free;
    int index = 1; // GKC barrier index i

    std::string name() const;
};

/// Type-erased radial profile F(r), evaluable on duals.
class RadialFn {
public:
    RadialFn() = default;

    template <class F>
    static RadialFn make(std::string name, F f) {
        auto impl = std::make_shared<Impl>();
        impl->name = std::move(name);
        impl->f0 = f;
        impl->f1 = f;
        impl->f2 = std::move(f);
        RadialFn out;
        out.impl_ = std::move(impl);
        return out;
    }

    static RadialFn zero();
    /// beta0 * Tk^2_{k1}(r): the curved isotropic-oscillator profile.
    static RadialFn oscillator(double kappa1, double beta0);
    /// -k / Tk_{k1}(r), evaluated as -k Ck/Sk so the profile vanishes at the
    /// kappa-tangent pole instead of raising there.
    static RadialFn kepler(double kappa1, double k);
    /// c1 Tk_{k1}(r) + c2 Ck_{k1}(r): a generic smooth sample profile.
    static RadialFn tk_ck_mix(double kappa1, double c1, double c2);

    bool valid() const { return impl_ != nullptr; }
    const std::string& name() const { return impl_->name; }
    double operator()(double r) const { return impl_->f0(r); }
    Dual1 operator()(const Dual1& r) const { return impl_->f1(r); }
    Dual2 operator()(const Dual2& r) const { return impl_->f2(r); }

private:
    struct Impl {
        std::string name;
        std::function<double(double)> f0;
        std::function<Dual1(Dual1)> f1;
        std::function<Dual2(Dual2)> f2;
    };
    std::shared_ptr<const Impl> impl_;
};

/// Free-motion kinetic energy in geodesic polar phase space.
Observable kinetic(const SpaceSpec& spec);

/// Central profile plus N centrifugal barriers. Barrier terms with a zero
/// coefficient are omitted, matching the displayed reduced potentials.
Observable potential_general(const SpaceSpec& spec, const RadialFn& f, const Betas& b);

/// Curved Smorodinsky-Winternitz potential: oscillator profile + N barriers.
Observable potential_sw(const SpaceSpec& spec, const Betas& b);

/// Generalized Kepler-Coulomb potential with the i-th barrier removed;
/// requires b.beta[i-1] = 0.
Observable potential_gkc(const SpaceSpec& spec, int i, const Betas& b);

/// Pure Kepler-Coulomb potential (all barriers zero).
Observable potential_kc(const SpaceSpec& spec, double k);

/// T + U for the requested system.
Observable hamiltonian(const SpaceSpec& spec, const SystemKind& kind, const Betas& b,
                       const RadialFn& f = {});

/// Quadratic Casimir assembled from the polar generators; equals
/// 2 kappa2 T on phase space.
Observable casimir_polar(const SpaceSpec& spec);

/// Free-motion integral chains J^(l), J_(k).
Observable integral_J_upper(const SpaceSpec& spec, int l);
Observable integral_J_lower(const SpaceSpec& spec, int k);

/// Quadratic integral I_{mu nu} of the barrier systems: rotation sector
/// (mu >= 1) for any central profile, translation sector (mu = 0) for the
/// SW system.
Observable integral_I(const SpaceSpec& spec, const Betas& b, int mu, int nu);

/// Barrier-system integral chains Q^(l), Q_(k).
Observable integral_Q_upper(const SpaceSpec& spec, const Betas& b, int l);
Observable integral_Q_lower(const SpaceSpec& spec, const Betas& b, int k);

/// Extra integral L_i of the i-th generalized Kepler-Coulomb system;
/// requires b.beta[i-1] = 0.
Observable integral_L(const SpaceSpec& spec, int i, const Betas& b);

/// The N Laplace-Runge-Lenz components of the pure KC system.
std::vector<Observable> lrl_vector(const SpaceSpec& spec, double k);

/// Ambient cross-forms pulled back through phase_map; independent oracles
/// for the polar closed forms above.
Observable integral_I_ambient(const SpaceSpec& spec, const Betas& b, int mu, int nu);
Observable integral_L_ambient(const SpaceSpec& spec, int i, const Betas& b);

/// Both chains merged: {J^(2..N), J_(N-1..2)}; 2N-3 functions.
std::vector<Observable> j_chain(const SpaceSpec& spec);
/// Both chains merged: {Q^(2..N), Q_(N-1..2)}; 2N-3 functions.
std::vector<Observable> q_chain(const SpaceSpec& spec, const Betas& b);

} // namespace curvint
