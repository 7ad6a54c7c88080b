#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "curvint/generators.hpp"
#include "curvint/harness.hpp"

using namespace curvint;

namespace {

const std::vector<std::pair<double, double>> kSixClasses = {
    {1.0, 1.0}, {0.0, 1.0}, {-1.0, 1.0}, {1.0, -1.0}, {0.0, -1.0}, {-1.0, -1.0}};

std::vector<PhasePoint> points(const SpaceSpec& spec, int count, std::uint64_t seed) {
    SampleConfig cfg;
    cfg.count = count;
    cfg.seed = seed;
    return sample_points(spec, cfg);
}

} // namespace

TEST_CASE("bracket basics") {
    const SpaceSpec spec(3, 1.0, -1.0);
    const auto pts = points(spec, 5, 42);

    const Observable r = Observable::make("r", 6, [](auto s) { return s[0]; });
    const Observable pr = Observable::make("p_r", 6, [](auto s) { return s[3]; });
    const Observable theta = Observable::make("theta", 6, [](auto s) { return s[1]; });
    for (const PhasePoint& pt : pts) {
        CHECK(poisson_bracket(r, pr, pt) == 1.0);      // canonical pair
        CHECK(poisson_bracket(theta, pr, pt) == 0.0);  // unrelated pair
        const Observable j = generator_polar(spec, 0, 2);
        CHECK(poisson_bracket(j, j, pt) == 0.0);       // {f,f} = 0 exactly
        // antisymmetry is exact: identical products, negated
        const Observable g = generator_polar(spec, 1, 2);
        CHECK(poisson_bracket(j, g, pt) == -poisson_bracket(g, j, pt));
    }
}

TEST_CASE("index validation") {
    const SpaceSpec spec(3, 1.0, 1.0);
    CHECK_THROWS_AS((void)generator_polar(spec, 2, 1), IndexOrder);
    CHECK_THROWS_AS((void)generator_polar(spec, 1, 1), IndexOrder);
    CHECK_THROWS_AS((void)generator_polar(spec, 0, 4), IndexOrder);
    CHECK_THROWS_AS(AmbientGenerator(spec, 3, 2), IndexOrder);
}

TEST_CASE("closed-form spot checks") {
    // J_01 at theta = 0 reduces to p_r
    const SpaceSpec spec(3, -1.0, 1.0);
    PhasePoint pt;
    pt.q.r = 1.0;
    pt.q.theta = 0.0;
    pt.q.phi = {0.7};
    pt.p = {0.9, 0.4, -0.2};
    CHECK(generator_polar(spec, 0, 1)(pt) == doctest::Approx(0.9).epsilon(1e-15));

    // J_1N at N = 2 is p_theta (empty product = 1, empty sum = 0)
    const SpaceSpec spec2(2, 0.7, -0.4);
    PhasePoint pt2;
    pt2.q.r = 0.8;
    pt2.q.theta = 0.5;
    pt2.p = {0.3, -1.1};
    CHECK(generator_polar(spec2, 1, 2)(pt2) == doctest::Approx(-1.1).epsilon(1e-15));

    // J_23 at N = 3 is p_phi3, regular at phi3 = 0
    const SpaceSpec spec3(3, 1.0, 1.0);
    PhasePoint pt3;
    pt3.q.r = 0.6;
    pt3.q.theta = 0.8;
    pt3.q.phi = {0.0};
    pt3.p = {0.1, 0.2, 0.77};
    CHECK(generator_polar(spec3, 2, 3)(pt3) == doctest::Approx(0.77).epsilon(1e-15));

    // generators that do not involve the later angles stay regular at their
    // sin zeros: J_12 at N = 4 with phi4 = 0
    const SpaceSpec spec4(4, -1.0, 1.0);
    PhasePoint pt4;
    pt4.q.r = 0.7;
    pt4.q.theta = 0.9;
    pt4.q.phi = {0.6, 0.0};
    pt4.p = {0.1, 0.5, -0.3, 0.2};
    const double want = std::cos(0.6) * 0.5 -
                        (std::cos(0.9) / std::sin(0.9)) * std::sin(0.6) * (-0.3);
    CHECK(generator_polar(spec4, 1, 2)(pt4) == doctest::Approx(want).epsilon(1e-14));
}

TEST_CASE("singular loci raise") {
    const SpaceSpec spec(2, 1.0, 1.0);
    PhasePoint pt;
    pt.q.r = 0.0; // Sk(r) = 0: cot pole of J_01
    pt.q.theta = 0.4;
    pt.p = {1.0, 1.0};
    CHECK_THROWS_AS((void)generator_polar(spec, 0, 1)(pt), SingularEvaluation);
}

TEST_CASE("ambient generator values") {
    const SpaceSpec spec(4, 0.0, 1.0);
    AmbientPhasePoint s;
    s.x = {1.0, 0.0, 1.0, 0.0, 0.3};
    s.p = {0.0, 0.0, 0.0, 2.0, 0.1};
    CHECK(generator_ambient(spec, 2, 3)(s) == doctest::Approx(2.0)); // xj pk - xk pj
    CHECK(generator_ambient(spec, 0, 3)(s) == doctest::Approx(2.0)); // k1 = 0: x0 pj
}

TEST_CASE("phase map maps zero momenta to zero momenta") {
    for (auto [k1, k2] : kSixClasses) {
        const SpaceSpec spec(4, k1, k2);
        PhasePoint pt;
        pt.q.r = 0.9;
        pt.q.theta = 0.7;
        pt.q.phi = {1.2, 0.5};
        pt.p = {0.0, 0.0, 0.0, 0.0};
        const AmbientPhasePoint amb = phase_map(spec, pt);
        for (double v : amb.p) CHECK(v == 0.0);
        CHECK(std::abs(constraint_residual(spec, AmbientPoint{amb.x})) < 1e-12);
    }
}

TEST_CASE("phase map: ambient and polar realizations agree") {
    for (auto [k1, k2] : kSixClasses) {
        for (int n = 2; n <= 5; ++n) {
            const SpaceSpec spec(n, k1, k2);
            const auto pts = points(spec, 100, 7100 + n);
            for (const PhasePoint& pt : pts) {
                const AmbientPhasePoint amb = phase_map(spec, pt);
                for (int mu = 0; mu <= n; ++mu) {
                    for (int nu = mu + 1; nu <= n; ++nu) {
                        const double a = generator_ambient(spec, mu, nu)(amb);
                        const double b = generator_polar(spec, mu, nu)(pt);
                        CHECK(std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)}) < 1e-10);
                    }
                }
            }
        }
    }
}

TEST_CASE("ambient observable equals polar observable with gradients") {
    const SpaceSpec spec(3, -1.0, -1.0);
    const auto pts = points(spec, 20, 99);
    for (int mu = 0; mu <= 3; ++mu)
        for (int nu = mu + 1; nu <= 3; ++nu) {
            const Observable amb = generator_ambient_observable(spec, mu, nu);
            const Observable pol = generator_polar(spec, mu, nu);
            for (const PhasePoint& pt : pts) {
                CHECK(amb(pt) == doctest::Approx(pol(pt)).epsilon(1e-10));
                const auto ga = amb.gradient(pt);
                const auto gp = pol.gradient(pt);
                for (size_t i = 0; i < ga.size(); ++i)
                    CHECK(ga[i] == doctest::Approx(gp[i]).epsilon(1e-8));
            }
        }
}

TEST_CASE("commutation table holds for the polar realization") {
    for (auto [k1, k2] : kSixClasses) {
        for (int n = 2; n <= 6; ++n) {
            const SpaceSpec spec(n, k1, k2);
            const auto pts = points(spec, 20, 1300 + n);
            const VerificationReport rep = check_structure(spec, pts, 1e-9);
            CAPTURE(k1);
            CAPTURE(k2);
            CAPTURE(n);
            CHECK(rep.pass);
            CHECK(rep.skipped == 0);
        }
    }
}

TEST_CASE("Leibniz rule on generator products") {
    const SpaceSpec spec(3, 1.0, -1.0);
    const auto pts = points(spec, 20, 321);
    const Observable f = generator_polar(spec, 0, 1);
    const Observable g = generator_polar(spec, 1, 3);
    const Observable h = generator_polar(spec, 2, 3);
    for (const PhasePoint& pt : pts) {
        const double lhs = poisson_bracket(f, g * h, pt);
        const double rhs = g(pt) * poisson_bracket(f, h, pt) + h(pt) * poisson_bracket(f, g, pt);
        CHECK(std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)) < 1e-9);
    }
}
