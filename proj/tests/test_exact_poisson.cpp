#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "curvint/errors.hpp"
#include "curvint/exact_poisson.hpp"

using namespace curvint;

namespace {

ParamPoly monomial_xp(int dim, const Rational& c, int k1, int k2,
                      std::initializer_list<std::pair<int, int>> factors) {
    std::vector<std::pair<int, int>> f(factors);
    return ParamPoly::monomial(dim, c, k1, k2, f);
}

ParamPoly random_quadratic(int dim, std::mt19937_64& rng) {
    ParamPoly out(dim);
    const int nphase = 2 * (dim + 1);
    for (int t = 0; t < 6; ++t) {
        std::vector<int> e(out.num_vars(), 0);
        const int deg = static_cast<int>(rng() % 3);
        for (int d = 0; d < deg; ++d) e[rng() % nphase] += 1;
        e[out.var_k1()] = static_cast<int>(rng() % 2);
        e[out.var_k2()] = static_cast<int>(rng() % 2);
        const long num = static_cast<long>(rng() % 11) - 5;
        const long den = 1 + static_cast<long>(rng() % 7);
        out.add_term(std::move(e), Rational(num, den));
    }
    return out;
}

} // namespace

TEST_CASE("canonical pairs and antisymmetry") {
    const int dim = 3;
    for (int mu = 0; mu <= dim; ++mu) {
        const ParamPoly x = monomial_xp(dim, 1, 0, 0, {{ParamPoly::var_x(mu), 1}});
        const ParamPoly p = monomial_xp(dim, 1, 0, 0, {{ParamPoly(dim).var_p(mu), 1}});
        const ParamPoly one = monomial_xp(dim, 1, 0, 0, {});
        CHECK(poly_bracket(x, p) == one);
        CHECK(poly_bracket(p, x) == -one);
        CHECK(poly_bracket(x, x).is_zero());
    }
    const ParamPoly j = realize_generator(dim, 0, 2);
    CHECK(poly_bracket(j, j).is_zero());
}

TEST_CASE("realized generators have the stated terms") {
    const int dim = 4;
    {
        // J_01 = x0 p1 - k1 x1 p0
        ParamPoly want = monomial_xp(dim, 1, 0, 0, {{ParamPoly::var_x(0), 1}, {ParamPoly(dim).var_p(1), 1}});
        want += monomial_xp(dim, -1, 1, 0, {{ParamPoly::var_x(1), 1}, {ParamPoly(dim).var_p(0), 1}});
        CHECK(realize_generator(dim, 0, 1) == want);
        CHECK(realize_generator(dim, 0, 1).num_terms() == 2);
    }
    {
        // J_jk is kappa-free
        const ParamPoly jk = realize_generator(dim, 2, 4);
        for (const auto& [e, c] : jk.terms()) {
            CHECK(e[jk.var_k1()] == 0);
            CHECK(e[jk.var_k2()] == 0);
        }
    }
    {
        // J_0j: the x_j p_0 term carries -k1 k2
        const ParamPoly j03 = realize_generator(dim, 0, 3);
        bool found = false;
        for (const auto& [e, c] : j03.terms()) {
            if (e[ParamPoly::var_x(3)] == 1 && e[j03.var_p(0)] == 1) {
                found = true;
                CHECK(c == -1);
                CHECK(e[j03.var_k1()] == 1);
                CHECK(e[j03.var_k2()] == 1);
            }
        }
        CHECK(found);
    }
    CHECK_THROWS_AS((void)realize_generator(4, 3, 2), IndexOrder);
}

TEST_CASE("hand-expanded brackets") {
    // {J_01, J_02} = k1 (x1 p2 - k2 x2 p1) = k1 J_12, expanded independently
    const int dim = 2;
    const ParamPoly got = poly_bracket(realize_generator(dim, 0, 1), realize_generator(dim, 0, 2));
    ParamPoly want = monomial_xp(dim, 1, 1, 0, {{ParamPoly::var_x(1), 1}, {ParamPoly(dim).var_p(2), 1}});
    want += monomial_xp(dim, -1, 1, 1, {{ParamPoly::var_x(2), 1}, {ParamPoly(dim).var_p(1), 1}});
    CHECK(got == want);

    // {J_02, J_23} = -J_03 at N = 3
    const ParamPoly lhs = poly_bracket(realize_generator(3, 0, 2), realize_generator(3, 2, 3));
    CHECK(lhs == -realize_generator(3, 0, 3));

    // {J_12, J_23} = -J_13 at N = 3
    const ParamPoly lhs2 = poly_bracket(realize_generator(3, 1, 2), realize_generator(3, 2, 3));
    CHECK(lhs2 == -realize_generator(3, 1, 3));
}

TEST_CASE("structure constants certificate, N = 2..6") {
    const int expected_pairs[] = {0, 0, 3, 15, 45, 105, 210};
    for (int n = 2; n <= 6; ++n) {
        const BracketReport rep = verify_structure_constants(n);
        CAPTURE(n);
        CHECK(rep.pass());
        CHECK(rep.pairs_checked == expected_pairs[n]);
        CHECK(rep.failures.empty());
    }
}

TEST_CASE("mutated realization is detected") {
    const Realizer mutated = [](int dim, int mu, int nu) {
        ParamPoly g = realize_generator(dim, mu, nu);
        if (mu == 1 && nu == 2) {
            // flip the sign of the x2 p1 term of J_12
            ParamPoly flip =
                monomial_xp(dim, 2, 0, 1, {{ParamPoly::var_x(2), 1}, {ParamPoly(dim).var_p(1), 1}});
            g += flip;
        }
        return g;
    };
    const BracketReport rep = verify_structure_constants(3, mutated);
    CHECK(!rep.pass());
    CHECK(rep.failures.size() >= 1);
}

TEST_CASE("casimir: terms, degree, centrality") {
    {
        // N = 2: C = k2 J01^2 + J02^2 + k1 J12^2
        const ParamPoly c = casimir_poly(2);
        ParamPoly want(2);
        const ParamPoly j01 = realize_generator(2, 0, 1);
        const ParamPoly j02 = realize_generator(2, 0, 2);
        const ParamPoly j12 = realize_generator(2, 1, 2);
        want += (j01 * j01).times_kappa(0, 1);
        want += j02 * j02;
        want += (j12 * j12).times_kappa(1, 0);
        CHECK(c == want);
    }
    for (int n = 2; n <= 6; ++n) {
        const ParamPoly c = casimir_poly(n);
        CHECK(c.phase_degree() == 4);
        const BracketReport rep = verify_casimir_centrality(n);
        CAPTURE(n);
        CHECK(rep.pass());
        CHECK(rep.pairs_checked == n * (n + 1) / 2);
    }
}

TEST_CASE("jacobi identity on random quadratics") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 30; ++trial) {
        const int dim = 2 + static_cast<int>(rng() % 3);
        const ParamPoly f = random_quadratic(dim, rng);
        const ParamPoly g = random_quadratic(dim, rng);
        const ParamPoly h = random_quadratic(dim, rng);
        ParamPoly jac = poly_bracket(f, poly_bracket(g, h));
        jac += poly_bracket(g, poly_bracket(h, f));
        jac += poly_bracket(h, poly_bracket(f, g));
        CHECK(jac.is_zero());
        CHECK((poly_bracket(f, g) + poly_bracket(g, f)).is_zero());
    }
}

TEST_CASE("substitution commutes with the bracket") {
    std::mt19937_64 rng(77);
    const Rational k1(3, 7), k2(-2, 5);
    for (int trial = 0; trial < 20; ++trial) {
        const int dim = 2 + static_cast<int>(rng() % 3);
        const ParamPoly f = random_quadratic(dim, rng);
        const ParamPoly g = random_quadratic(dim, rng);
        const ParamPoly a = poly_bracket(f, g).substitute_kappa(k1, k2);
        const ParamPoly b = poly_bracket(f.substitute_kappa(k1, k2), g.substitute_kappa(k1, k2));
        CHECK(a == b);
    }
}

TEST_CASE("vector representation certificate") {
    for (int n = 2; n <= 4; ++n) {
        const BracketReport rep = verify_vector_rep(n);
        CAPTURE(n);
        CHECK(rep.pass());
    }
}

TEST_CASE("golden printing format") {
    const ParamPoly j01 = realize_generator(2, 0, 1);
    CHECK(j01.to_string() == "1 * k1^0 k2^0 * x0^1 * p1^1\n-1 * k1^1 k2^0 * x1^1 * p0^1\n");
    CHECK(ParamPoly(2).to_string() == "0\n");
}
