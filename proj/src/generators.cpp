#include "curvint/generators.hpp"

#include <type_traits>

#include "curvint/errors.hpp"

namespace curvint {

namespace {

void require_canonical(const SpaceSpec& spec, int mu, int nu) {
    if (!(0 <= mu && mu < nu && nu <= spec.dim))
        throw IndexOrder("generator indices must satisfy 0 <= mu < nu <= N");
}

} // namespace

Observable generator_polar(const SpaceSpec& spec, int mu, int nu) {
    require_canonical(spec, mu, nu);
    return Observable::make(gen_name({mu, nu}), 2 * spec.dim, [spec, mu, nu](auto s) {
        return detail::generator_polar_value(spec, mu, nu, s);
    });
}

AmbientGenerator::AmbientGenerator(const SpaceSpec& spec, int mu, int nu)
    : spec_(spec), mu_(mu), nu_(nu) {
    require_canonical(spec, mu, nu);
}

double AmbientGenerator::operator()(const AmbientPhasePoint& s) const {
    return detail::generator_ambient_value<double>(spec_, mu_, nu_, s.x, s.p);
}

AmbientGenerator generator_ambient(const SpaceSpec& spec, int mu, int nu) {
    return AmbientGenerator(spec, mu, nu);
}

AmbientPhasePoint phase_map(const SpaceSpec& spec, const PhasePoint& s) {
    const std::vector<double> flat = s.flat();
    AmbientPhasePoint out;
    out.x.resize(spec.dim + 1);
    out.p.resize(spec.dim + 1);
    phase_map<double>(spec, flat, out.x, out.p);
    return out;
}

Observable generator_ambient_observable(const SpaceSpec& spec, int mu, int nu) {
    require_canonical(spec, mu, nu);
    return Observable::make(gen_name({mu, nu}) + "_amb", 2 * spec.dim, [spec, mu, nu](auto s) {
        using T = std::remove_cvref_t<decltype(s[0])>;
        std::vector<T> x(spec.dim + 1), p(spec.dim + 1);
        phase_map(spec, s, std::span<T>(x), std::span<T>(p));
        return detail::generator_ambient_value<T>(spec, mu, nu, x, p);
    });
}

} // namespace curvint
