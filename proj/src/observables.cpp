#include "curvint/observables.hpp"

#include <cmath>

#include "curvint/errors.hpp"
#include "curvint/util.hpp"

namespace curvint {

std::string SystemKind::name() const {
    switch (tag) {
        case Tag::Free: return "free";
        case Tag::Central: return "central";
        case Tag::SW: return "sw";
        case Tag::GKC: return "gkc" + std::to_string(index);
        case Tag::KC: return "kc";
    }
    return "?";
}

RadialFn RadialFn::zero() {
    return make("0", [](auto r) { return decltype(r)(0.0); });
}

RadialFn RadialFn::oscillator(double kappa1, double beta0) {
    return make("oscillator", [kappa1, beta0](auto r) {
        const auto t = tk(kappa1, r);
        return beta0 * (t * t);
    });
}

RadialFn RadialFn::kepler(double kappa1, double k) {
    return make("kepler", [kappa1, k](auto r) {
        const auto cot = ck(kappa1, r) * detail::checked_recip(sk(kappa1, r), "kepler profile: Sk(r) = 0");
        return -k * cot;
    });
}

RadialFn RadialFn::tk_ck_mix(double kappa1, double c1, double c2) {
    return make("tk_ck_mix", [kappa1, c1, c2](auto r) {
        return c1 * tk(kappa1, r) + c2 * ck(kappa1, r);
    });
}

Observable kinetic(const SpaceSpec& spec) {
    return Observable::make("T", 2 * spec.dim, [spec](auto s) {
        using T = std::remove_cvref_t<decltype(s[0])>;
        const int n = spec.dim;
        const auto q = s.first(n);
        const auto p = s.subspan(n, n);
        T angular = p[1] * p[1];
        if (n >= 3) {
            const T s2 = sk(spec.kappa2, q[1]);
            T sum(0.0);
            for (int i = 3; i <= n; ++i) {
                const T num = p[i - 1] * p[i - 1];
                if (i > 3)
                    sum += num * detail::checked_recip(detail::sinsq_prod<T>(3, i - 1, q),
                                                       "kinetic: sin(phi) = 0");
                else
                    sum += num;
            }
            angular += sum * detail::checked_recip(s2 * s2, "kinetic: Sk(theta) = 0");
        }
        const T s1 = sk(spec.kappa1, q[0]);
        const T radial2 = spec.kappa2 * (s1 * s1);
        return 0.5 * (p[0] * p[0] + angular * detail::checked_recip(radial2, "kinetic: Sk(r) = 0"));
    });
}

namespace {

// Barrier part of the general potential: sum_i beta_i / x_i^2 written in the
// polar chart; terms with beta_i = 0 are omitted. skip selects one more
// barrier to drop (the generalized KC construction), 0 meaning none.
template <class T>
T barrier_value(const SpaceSpec& spec, const Betas& b, int skip, std::span<const T> q) {
    const int n = spec.dim;
    const T s1 = sk(spec.kappa1, q[0]);
    T out(0.0);
    bool any = false;
    for (int i = 1; i <= n; ++i) {
        if (i == skip || b.beta_at(i) == 0.0) continue;
        any = true;
        if (i == 1) {
            const T c2 = ck(spec.kappa2, q[1]);
            out += b.beta_at(1) * detail::checked_recip(c2 * c2, "potential: Ck(theta) = 0");
        } else {
            const T s2 = sk(spec.kappa2, q[1]);
            const T u = detail::dir_cosine(n, i, q);
            out += b.beta_at(i) * detail::checked_recip(s2 * s2 * (u * u),
                                                        "potential: barrier direction vanishes");
        }
    }
    if (!any) return T(0.0);
    return out * detail::checked_recip(s1 * s1, "potential: Sk(r) = 0");
}

Observable potential_named(const SpaceSpec& spec, const RadialFn& f, const Betas& b, int skip,
                           std::string name) {
    return Observable::make(std::move(name), 2 * spec.dim, [spec, f, b, skip](auto s) {
        using T = std::remove_cvref_t<decltype(s[0])>;
        const auto q = s.first(spec.dim);
        T out = barrier_value(spec, b, skip, q);
        if (f.valid()) out += f(q[0]);
        return out;
    });
}

} // namespace

Observable potential_general(const SpaceSpec& spec, const RadialFn& f, const Betas& b) {
    return potential_named(spec, f, b, 0, "U");
}

Observable potential_sw(const SpaceSpec& spec, const Betas& b) {
    return potential_named(spec, RadialFn::oscillator(spec.kappa1, b.beta0), b, 0, "U_sw");
}

Observable potential_gkc(const SpaceSpec& spec, int i, const Betas& b) {
    if (i < 1 || i > spec.dim) throw IndexRange("potential_gkc: barrier index out of range");
    if (b.beta_at(i) != 0.0)
        throw BetaNotZero("potential_gkc: beta_" + std::to_string(i) + " must vanish");
    return potential_named(spec, RadialFn::kepler(spec.kappa1, b.k), b, i,
                           "U_gkc" + std::to_string(i));
}

Observable potential_kc(const SpaceSpec& spec, double k) {
    Betas b = Betas::zero(spec.dim);
    b.k = k;
    return potential_named(spec, RadialFn::kepler(spec.kappa1, k), b, 0, "U_kc");
}

Observable hamiltonian(const SpaceSpec& spec, const SystemKind& kind, const Betas& b,
                       const RadialFn& f) {
    const Observable t = kinetic(spec);
    switch (kind.tag) {
        case SystemKind::Tag::Free: return t.renamed("H_free");
        case SystemKind::Tag::Central:
            return (t + potential_general(spec, f.valid() ? f : RadialFn::zero(), b)).renamed("H_central");
        case SystemKind::Tag::SW: return (t + potential_sw(spec, b)).renamed("H_sw");
        case SystemKind::Tag::GKC:
            return (t + potential_gkc(spec, kind.index, b)).renamed("H_gkc" + std::to_string(kind.index));
        case SystemKind::Tag::KC: return (t + potential_kc(spec, b.k)).renamed("H_kc");
    }
    throw std::invalid_argument("hamiltonian: unknown system kind");
}

Observable casimir_polar(const SpaceSpec& spec) {
    return Observable::make("C", 2 * spec.dim, [spec](auto s) {
        using T = std::remove_cvref_t<decltype(s[0])>;
        auto j = [&](int mu, int nu) { return detail::generator_polar_value(spec, mu, nu, s); };
        const T j01 = j(0, 1);
        T out = spec.kappa2 * (j01 * j01);
        for (int m = 2; m <= spec.dim; ++m) {
            const T a = j(0, m);
            const T b = j(1, m);
            out += a * a + spec.kappa1 * (b * b);
        }
        for (int i = 2; i <= spec.dim; ++i)
            for (int m = i + 1; m <= spec.dim; ++m) {
                const T c = j(i, m);
                out += (spec.kappa1 * spec.kappa2) * (c * c);
            }
        return out;
    });
}

Observable integral_J_upper(const SpaceSpec& spec, int l) {
    if (l < 2 || l > spec.dim) throw IndexRange("integral_J_upper: need 2 <= l <= N");
    return Observable::make("Ju" + std::to_string(l), 2 * spec.dim, [spec, l](auto s) {
        using T = std::remove_cvref_t<decltype(s[0])>;
        T out(0.0);
        for (int j = 2; j <= l; ++j) {
            const T a = detail::generator_polar_value(spec, 1, j, s);
            out += a * a;
        }
        for (int i = 2; i <= l; ++i)
            for (int j = i + 1; j <= l; ++j) {
                const T a = detail::generator_polar_value(spec, i, j, s);
                out += spec.kappa2 * (a * a);
            }
        return out;
    });
}

Observable integral_J_lower(const SpaceSpec& spec, int k) {
    if (k < 2 || k > spec.dim) throw IndexRange("integral_J_lower: need 2 <= k <= N");
    if (k == spec.dim) return integral_J_upper(spec, k).renamed("Jl" + std::to_string(k));
    return Observable::make("Jl" + std::to_string(k), 2 * spec.dim, [spec, k](auto s) {
        using T = std::remove_cvref_t<decltype(s[0])>;
        T out(0.0);
        for (int i = spec.dim - k + 1; i <= spec.dim; ++i)
            for (int j = i + 1; j <= spec.dim; ++j) {
                const T a = detail::generator_polar_value(spec, i, j, s);
                out += a * a;
            }
        return out;
    });
}

namespace {

void require_I_indices(const SpaceSpec& spec, int mu, int nu) {
    if (!(0 <= mu && mu < nu && nu <= spec.dim))
        throw IndexRange("integral_I: need 0 <= mu < nu <= N");
}

// Barrier additions of I_{mu nu} in polar form; shared by the polar and
// ambient builders only through their common couplings.
template <class T>
T integral_I_barriers(const SpaceSpec& spec, const Betas& b, int mu, int nu,
                      std::span<const T> q) {
    const int n = spec.dim;
    const double k2 = spec.kappa2;
    T out(0.0);
    if (mu == 0) {
        // translation sector (SW): I_{01}, I_{0i}
        const T c2 = ck(k2, q[1]);
        if (nu == 1) {
            if (b.beta0 != 0.0) {
                const T t1 = tk(spec.kappa1, q[0]);
                out += (2.0 * b.beta0) * (t1 * t1) * (c2 * c2);
            }
            if (b.beta_at(1) != 0.0) {
                const T cot1 = ck(spec.kappa1, q[0]) *
                               detail::checked_recip(sk(spec.kappa1, q[0]), "integral: Sk(r) = 0");
                out += (2.0 * b.beta_at(1)) * (cot1 * cot1) *
                       detail::checked_recip(c2 * c2, "integral: Ck(theta) = 0");
            }
            return out;
        }
        const T s2 = sk(k2, q[1]);
        const T u = detail::dir_cosine(n, nu, q);
        if (b.beta0 != 0.0) {
            const T t1 = tk(spec.kappa1, q[0]);
            out += (2.0 * b.beta0 * k2 * k2) * (t1 * t1) * (s2 * s2) * (u * u);
        }
        if (b.beta_at(nu) != 0.0) {
            const T cot1 = ck(spec.kappa1, q[0]) *
                           detail::checked_recip(sk(spec.kappa1, q[0]), "integral: Sk(r) = 0");
            out += (2.0 * b.beta_at(nu) * k2) * (cot1 * cot1) *
                   detail::checked_recip(s2 * s2 * (u * u), "integral: barrier direction vanishes");
        }
        return out;
    }
    if (mu == 1) {
        const T s2 = sk(k2, q[1]);
        const T c2 = ck(k2, q[1]);
        const T u = detail::dir_cosine(n, nu, q);
        if (b.beta_at(1) != 0.0) {
            const T t2sq = (s2 * s2) * detail::checked_recip(c2 * c2, "integral: Ck(theta) = 0");
            out += (2.0 * b.beta_at(1) * k2 * k2) * t2sq * (u * u);
        }
        if (b.beta_at(nu) != 0.0) {
            const T cot2sq = (c2 * c2) * detail::checked_recip(s2 * s2, "integral: Sk(theta) = 0");
            out += (2.0 * b.beta_at(nu) * k2) * cot2sq *
                   detail::checked_recip(u * u, "integral: barrier direction vanishes");
        }
        return out;
    }
    const T ui = detail::dir_cosine(n, mu, q);
    const T uj = detail::dir_cosine(n, nu, q);
    if (b.beta_at(mu) != 0.0)
        out += (2.0 * b.beta_at(mu) * k2) * (uj * uj) *
               detail::checked_recip(ui * ui, "integral: barrier direction vanishes");
    if (b.beta_at(nu) != 0.0)
        out += (2.0 * b.beta_at(nu) * k2) * (ui * ui) *
               detail::checked_recip(uj * uj, "integral: barrier direction vanishes");
    return out;
}

} // namespace

Observable integral_I(const SpaceSpec& spec, const Betas& b, int mu, int nu) {
    require_I_indices(spec, mu, nu);
    const std::string name = "I" + std::to_string(mu) + std::to_string(nu);
    return Observable::make(name, 2 * spec.dim, [spec, b, mu, nu](auto s) {
        using T = std::remove_cvref_t<decltype(s[0])>;
        const T j = detail::generator_polar_value(spec, mu, nu, s);
        return j * j + integral_I_barriers(spec, b, mu, nu, s.first(spec.dim));
    });
}

Observable integral_Q_upper(const SpaceSpec& spec, const Betas& b, int l) {
    if (l < 2 || l > spec.dim) throw IndexRange("integral_Q_upper: need 2 <= l <= N");
    return Observable::make("Qu" + std::to_string(l), 2 * spec.dim, [spec, b, l](auto s) {
        using T = std::remove_cvref_t<decltype(s[0])>;
        const auto q = s.first(spec.dim);
        T out(0.0);
        for (int j = 2; j <= l; ++j) {
            const T a = detail::generator_polar_value(spec, 1, j, s);
            out += a * a + integral_I_barriers(spec, b, 1, j, q);
        }
        for (int i = 2; i <= l; ++i)
            for (int j = i + 1; j <= l; ++j) {
                const T a = detail::generator_polar_value(spec, i, j, s);
                out += spec.kappa2 * (a * a + integral_I_barriers(spec, b, i, j, q));
            }
        return out;
    });
}

Observable integral_Q_lower(const SpaceSpec& spec, const Betas& b, int k) {
    if (k < 2 || k > spec.dim) throw IndexRange("integral_Q_lower: need 2 <= k <= N");
    if (k == spec.dim) return integral_Q_upper(spec, b, k).renamed("Ql" + std::to_string(k));
    return Observable::make("Ql" + std::to_string(k), 2 * spec.dim, [spec, b, k](auto s) {
        using T = std::remove_cvref_t<decltype(s[0])>;
        const auto q = s.first(spec.dim);
        T out(0.0);
        for (int i = spec.dim - k + 1; i <= spec.dim; ++i)
            for (int j = i + 1; j <= spec.dim; ++j) {
                const T a = detail::generator_polar_value(spec, i, j, s);
                out += a * a + integral_I_barriers(spec, b, i, j, q);
            }
        return out;
    });
}

namespace {

template <class T>
T integral_L_value(const SpaceSpec& spec, int i, const Betas& b, std::span<const T> s) {
    const int n = spec.dim;
    const double k2 = spec.kappa2;
    const auto q = s.first(n);
    auto j = [&](int mu, int nu) { return detail::generator_polar_value(spec, mu, nu, s); };
    // sum_{l != i} J_{0l} J_{li}, with J_{li} = -J_{il} for i < l
    T out(0.0);
    for (int l = 1; l <= n; ++l) {
        if (l == i) continue;
        const T jli = (l < i) ? j(l, i) : -j(i, l);
        out += j(0, l) * jli;
    }
    const T s2 = sk(k2, q[1]);
    const T c2 = ck(k2, q[1]);
    const T cot1 = ck(spec.kappa1, q[0]) *
                   detail::checked_recip(sk(spec.kappa1, q[0]), "integral_L: Sk(r) = 0");
    auto any_beta = [&](int lo, int hi) {
        for (int l = lo; l <= hi; ++l)
            if (l != i && b.beta_at(l) != 0.0) return true;
        return false;
    };
    auto beta_over_u2 = [&](int lo, int hi) {
        T acc(0.0);
        for (int l = lo; l <= hi; ++l) {
            if (l == i || b.beta_at(l) == 0.0) continue;
            const T u = detail::dir_cosine(n, l, q);
            acc += b.beta_at(l) * detail::checked_recip(u * u, "integral_L: barrier direction vanishes");
        }
        return acc;
    };
    if (i == 1) {
        out += (b.k * k2) * c2;
        if (any_beta(2, n))
            out -= (2.0 * k2) * c2 * cot1 *
                   detail::checked_recip(s2 * s2, "integral_L: Sk(theta) = 0") * beta_over_u2(2, n);
        return out;
    }
    const T ui = detail::dir_cosine(n, i, q);
    out += (b.k * k2) * s2 * ui;
    if (b.beta_at(1) != 0.0 || any_beta(2, n)) {
        T block = beta_over_u2(2, n);
        if (b.beta_at(1) != 0.0)
            block += b.beta_at(1) * (s2 * s2) * detail::checked_recip(c2 * c2, "integral_L: Ck(theta) = 0");
        out -= (2.0 * k2) * ui * cot1 * detail::checked_recip(s2, "integral_L: Sk(theta) = 0") * block;
    }
    return out;
}

} // namespace

Observable integral_L(const SpaceSpec& spec, int i, const Betas& b) {
    if (i < 1 || i > spec.dim) throw IndexRange("integral_L: need 1 <= i <= N");
    if (b.beta_at(i) != 0.0)
        throw BetaNotZero("integral_L: beta_" + std::to_string(i) + " must vanish");
    return Observable::make("L" + std::to_string(i), 2 * spec.dim,
                            [spec, i, b](auto s) { return integral_L_value(spec, i, b, s); });
}

std::vector<Observable> lrl_vector(const SpaceSpec& spec, double k) {
    Betas b = Betas::zero(spec.dim);
    b.k = k;
    std::vector<Observable> out;
    out.reserve(spec.dim);
    for (int i = 1; i <= spec.dim; ++i) out.push_back(integral_L(spec, i, b));
    return out;
}

Observable integral_I_ambient(const SpaceSpec& spec, const Betas& b, int mu, int nu) {
    require_I_indices(spec, mu, nu);
    const std::string name = "I" + std::to_string(mu) + std::to_string(nu) + "_amb";
    return Observable::make(name, 2 * spec.dim, [spec, b, mu, nu](auto s) {
        using T = std::remove_cvref_t<decltype(s[0])>;
        const int n = spec.dim;
        std::vector<T> x(n + 1), p(n + 1);
        phase_map(spec, s, std::span<T>(x), std::span<T>(p));
        const T j = detail::generator_ambient_value<T>(spec, mu, nu, x, p);
        T out = j * j;
        auto ratio = [&](int a, int c) { // x_a^2 / x_c^2
            return (x[a] * x[a]) *
                   detail::checked_recip(x[c] * x[c], "integral ambient: coordinate vanishes");
        };
        const double k2 = spec.kappa2;
        if (mu == 0) {
            const double w = (nu == 1) ? 1.0 : k2 * k2;
            const double wb = (nu == 1) ? 1.0 : k2;
            if (b.beta0 != 0.0) out += (2.0 * b.beta0 * w) * ratio(nu, 0);
            if (b.beta_at(nu) != 0.0) out += (2.0 * b.beta_at(nu) * wb) * ratio(0, nu);
        } else if (mu == 1) {
            if (b.beta_at(1) != 0.0) out += (2.0 * b.beta_at(1) * k2 * k2) * ratio(nu, 1);
            if (b.beta_at(nu) != 0.0) out += (2.0 * b.beta_at(nu) * k2) * ratio(1, nu);
        } else {
            if (b.beta_at(mu) != 0.0) out += (2.0 * b.beta_at(mu) * k2) * ratio(nu, mu);
            if (b.beta_at(nu) != 0.0) out += (2.0 * b.beta_at(nu) * k2) * ratio(mu, nu);
        }
        return out;
    });
}

Observable integral_L_ambient(const SpaceSpec& spec, int i, const Betas& b) {
    if (i < 1 || i > spec.dim) throw IndexRange("integral_L_ambient: need 1 <= i <= N");
    if (b.beta_at(i) != 0.0)
        throw BetaNotZero("integral_L_ambient: beta_" + std::to_string(i) + " must vanish");
    const std::string name = "L" + std::to_string(i) + "_amb";
    return Observable::make(name, 2 * spec.dim, [spec, i, b](auto s) {
        using T = std::remove_cvref_t<decltype(s[0])>;
        using std::sqrt;
        const int n = spec.dim;
        std::vector<T> x(n + 1), p(n + 1);
        phase_map(spec, s, std::span<T>(x), std::span<T>(p));
        auto j = [&](int mu, int nu) {
            return detail::generator_ambient_value<T>(spec, mu, nu, std::span<const T>(x),
                                                      std::span<const T>(p));
        };
        T out(0.0);
        for (int l = 1; l <= n; ++l) {
            if (l == i) continue;
            const T jli = (l < i) ? j(l, i) : -j(i, l);
            out += j(0, l) * jli;
        }
        T radicand = x[1] * x[1];
        for (int m = 2; m <= n; ++m) radicand += spec.kappa2 * (x[m] * x[m]);
        out += (b.k * spec.kappa2) * x[i] *
               detail::checked_recip(sqrt(radicand), "integral_L ambient: null radius");
        for (int l = 1; l <= n; ++l) {
            if (l == i || b.beta_at(l) == 0.0) continue;
            out -= (2.0 * spec.kappa2 * b.beta_at(l)) * x[0] * x[i] *
                   detail::checked_recip(x[l] * x[l], "integral_L ambient: coordinate vanishes");
        }
        return out;
    });
}

std::vector<Observable> j_chain(const SpaceSpec& spec) {
    std::vector<Observable> out;
    for (int l = 2; l <= spec.dim; ++l) out.push_back(integral_J_upper(spec, l));
    for (int k = spec.dim - 1; k >= 2; --k) out.push_back(integral_J_lower(spec, k));
    return out;
}

std::vector<Observable> q_chain(const SpaceSpec& spec, const Betas& b) {
    std::vector<Observable> out;
    for (int l = 2; l <= spec.dim; ++l) out.push_back(integral_Q_upper(spec, b, l));
    for (int k = spec.dim - 1; k >= 2; --k) out.push_back(integral_Q_lower(spec, b, k));
    return out;
}

} // namespace curvint
