#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "curvint/kappa_trig.hpp"

using namespace curvint;
using big = boost::multiprecision::cpp_bin_float_50;

namespace {

// Independent oracle: plain power series of the kappa-cosine/sine evaluated
// in 50-digit floats, summed until the terms vanish.
big ck_series(const big& kappa, const big& x) {
    big sum = 1, term = 1;
    const big u = -kappa * x * x;
    for (int n = 1; n < 200; ++n) {
        term *= u / ((2 * n - 1) * (2 * n));
        sum += term;
        if (abs(term) < big(1e-45) * abs(sum)) break;
    }
    return sum;
}

big sk_series(const big& kappa, const big& x) {
    big sum = x, term = x;
    const big u = -kappa * x * x;
    for (int n = 1; n < 200; ++n) {
        term *= u / ((2 * n) * (2 * n + 1));
        sum += term;
        if (abs(term) < big(1e-45) * abs(sum)) break;
    }
    return sum;
}

double ulps_apart(double a, double b) {
    return std::abs(a - b) / (std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(a)));
}

} // namespace

TEST_CASE("contraction kappa = 0 is exact") {
    CHECK(ck(0.0, 5.3) == 1.0);
    CHECK(sk(0.0, 5.3) == 5.3);
    CHECK(tk(0.0, -3.0) == -3.0);
}

TEST_CASE("closed-form spot values") {
    CHECK(std::abs(ck(1.0, std::numbers::pi / 2)) < 1e-15);
    CHECK(sk(4.0, std::numbers::pi / 4) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(tk(1.0, std::numbers::pi / 4) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("hyperbolic branch against the series oracle") {
    const double got = ck(-1.0, 1.0);
    const double want = static_cast<double>(ck_series(big(-1), big(1)));
    CHECK(ulps_apart(got, want) <= 2.0);
    CHECK(got == doctest::Approx(1.5430806348152437).epsilon(1e-16));

    const double gs = sk(-2.5, 0.8);
    CHECK(ulps_apart(gs, static_cast<double>(sk_series(big("-2.5"), big("0.8")))) <= 4.0);
}

TEST_CASE("series branch against the closed form at higher precision") {
    // kappa = 1e-9 falls below the branch threshold; the 50-digit closed form
    // is the reference.
    const big kappa("1e-9"), x(2);
    const big ref = sin(sqrt(kappa) * x) / sqrt(kappa);
    CHECK(ulps_apart(sk(1e-9, 2.0), static_cast<double>(ref)) <= 2.0);
    const big refc = cos(sqrt(kappa) * x);
    CHECK(ulps_apart(ck(1e-9, 2.0), static_cast<double>(refc)) <= 2.0);
}

TEST_CASE("tk pole raises") {
    CHECK_THROWS_AS((void)tk(1.0, std::numbers::pi / 2), DivisionAtPole);
    CHECK_THROWS_AS((void)tk(4.0, std::numbers::pi / 4), DivisionAtPole);
}

TEST_CASE("pythagorean identity within 4 ulps") {
    std::mt19937_64 rng(11);
    auto uni = [&](double lo, double hi) {
        return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
    };
    for (int trial = 0; trial < 2000; ++trial) {
        const double kappa = uni(-4.0, 4.0);
        const double x = uni(-3.0, 3.0);
        const double c = ck(kappa, x);
        const double s = sk(kappa, x);
        const double lhs = c * c + kappa * s * s;
        const double scale = std::abs(c * c) + std::abs(kappa * s * s) + 1.0;
        CHECK(std::abs(lhs - 1.0) <= 4.0 * std::numeric_limits<double>::epsilon() * scale);
    }
}

TEST_CASE("dual derivatives match central differences") {
    std::mt19937_64 rng(12);
    auto uni = [&](double lo, double hi) {
        return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
    };
    const double h = 1e-6;
    for (int trial = 0; trial < 500; ++trial) {
        const double kappa = uni(-4.0, 4.0);
        const double x = uni(-3.0, 3.0);
        const Dual1 xd{x, 1.0};

        const Dual1 s = sk(kappa, xd);
        const double ds_fd = (sk(kappa, x + h) - sk(kappa, x - h)) / (2 * h);
        CHECK(s.d == doctest::Approx(ds_fd).epsilon(1e-7));
        CHECK(s.d == doctest::Approx(ck(kappa, x)).epsilon(1e-12)); // d/dx sk = ck

        const Dual1 c = ck(kappa, xd);
        const double dc_fd = (ck(kappa, x + h) - ck(kappa, x - h)) / (2 * h);
        if (std::abs(dc_fd) > 1e-4) CHECK(c.d == doctest::Approx(dc_fd).epsilon(1e-7));
        CHECK(c.d == doctest::Approx(-kappa * sk(kappa, x)).epsilon(1e-12)); // d/dx ck = -k sk
    }
}

TEST_CASE("continuity at the contraction") {
    for (double eps : {1e-8, -1e-8, 1e-10, -1e-12}) {
        for (double x : {-3.0, -0.7, 0.3, 3.0}) {
            CHECK(std::abs(ck(eps, x) - 1.0) < 1e-7);
            CHECK(std::abs(sk(eps, x) - x) < 1e-7);
        }
    }
}

TEST_CASE("parity") {
    // series branch: exact
    CHECK(ck(1e-8, 0.5) == ck(1e-8, -0.5));
    CHECK(sk(1e-8, 0.5) == -sk(1e-8, -0.5));
    // closed branch: within 2 ulps
    for (double kappa : {2.0, -2.0}) {
        for (double x : {0.3, 1.7, 2.9}) {
            CHECK(ulps_apart(ck(kappa, x), ck(kappa, -x)) <= 2.0);
            CHECK(ulps_apart(sk(kappa, x), -sk(kappa, -x)) <= 2.0);
        }
    }
}

TEST_CASE("second-order duals flow through") {
    // d^2/dx^2 sk = -kappa sk
    for (double kappa : {1.3, -0.8, 1e-9}) {
        const double x = 0.9;
        const Dual2 xd{Dual1{x, 1.0}, Dual1{1.0, 0.0}};
        const Dual2 s = sk(kappa, xd);
        CHECK(s.d.d == doctest::Approx(-kappa * sk(kappa, x)).epsilon(1e-10));
    }
}
