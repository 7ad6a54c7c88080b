#include "curvint/exact_poisson.hpp"

#include <array>
#include <utility>

#include "curvint/errors.hpp"
#include "curvint/geometry.hpp"

namespace curvint {

ParamPoly realize_generator(int dim, int mu, int nu) {
    if (!(0 <= mu && mu < nu && nu <= dim))
        throw IndexOrder("realize_generator: need 0 <= mu < nu <= N");
    ParamPoly out(dim);
    auto term = [&](int xvar, int pvar, const Rational& c, int k1_pow, int k2_pow) {
        const std::array<std::pair<int, int>, 2> f{{{ParamPoly::var_x(xvar), 1}, {out.var_p(pvar), 1}}};
        out += ParamPoly::monomial(dim, c, k1_pow, k2_pow, f);
    };
    if (mu == 0 && nu == 1) {
        term(0, 1, 1, 0, 0);
        term(1, 0, -1, 1, 0); // -k1 x1 p0
    } else if (mu == 0) {
        term(0, nu, 1, 0, 0);
        term(nu, 0, -1, 1, 1); // -k1 k2 xj p0
    } else if (mu == 1) {
        term(1, nu, 1, 0, 0);
        term(nu, 1, -1, 0, 1); // -k2 xj p1
    } else {
        term(mu, nu, 1, 0, 0);
        term(nu, mu, -1, 0, 0);
    }
    return out;
}

ParamPoly expected_bracket_poly(int dim, GenIndex a, GenIndex b, const Realizer& realize) {
    ParamPoly out(dim);
    for (const StructureTerm& t : expected_bracket(a, b))
        out += realize(dim, t.target.mu, t.target.nu).scaled(t.sign).times_kappa(t.k1_pow, t.k2_pow);
    return out;
}

BracketReport verify_structure_constants(int dim) {
    return verify_structure_constants(dim, [](int n, int mu, int nu) { return realize_generator(n, mu, nu); });
}

BracketReport verify_structure_constants(int dim, const Realizer& realize) {
    BracketReport report;
    report.dim = dim;
    const std::vector<GenIndex> gens = all_generators(dim);
    std::vector<ParamPoly> realized;
    realized.reserve(gens.size());
    for (const GenIndex& g : gens) realized.push_back(realize(dim, g.mu, g.nu));
    for (size_t i = 0; i < gens.size(); ++i) {
        for (size_t j = i + 1; j < gens.size(); ++j) {
            ++report.pairs_checked;
            ParamPoly residual = poly_bracket(realized[i], realized[j]);
            residual -= expected_bracket_poly(dim, gens[i], gens[j], realize);
            if (!residual.is_zero())
                report.failures.push_back({gens[i], gens[j], std::move(residual)});
        }
    }
    return report;
}

ParamPoly casimir_poly(int dim) {
    if (dim < 2) throw IndexRange("casimir_poly: need N >= 2");
    auto sq = [&](int mu, int nu) {
        const ParamPoly g = realize_generator(dim, mu, nu);
        return g * g;
    };
    ParamPoly c = sq(0, 1).times_kappa(0, 1);
    for (int j = 2; j <= dim; ++j) {
        c += sq(0, j);
        c += sq(1, j).times_kappa(1, 0);
    }
    for (int i = 2; i <= dim; ++i)
        for (int j = i + 1; j <= dim; ++j) c += sq(i, j).times_kappa(1, 1);
    return c;
}

BracketReport verify_casimir_centrality(int dim) {
    BracketReport report;
    report.dim = dim;
    const ParamPoly c = casimir_poly(dim);
    for (const GenIndex& g : all_generators(dim)) {
        ++report.pairs_checked;
        ParamPoly residual = poly_bracket(c, realize_generator(dim, g.mu, g.nu));
        if (!residual.is_zero()) report.failures.push_back({{-1, -1}, g, std::move(residual)});
    }
    return report;
}

namespace {

using PolyMatrix = std::vector<std::vector<ParamPoly>>;

PolyMatrix zero_matrix(int dim) {
    return PolyMatrix(dim + 1, std::vector<ParamPoly>(dim + 1, ParamPoly(dim)));
}

PolyMatrix rep_poly(int dim, int mu, int nu) {
    PolyMatrix out = zero_matrix(dim);
    for (const RepEntry& e : rep_entries(mu, nu))
        out[e.row][e.col] += ParamPoly::monomial(dim, e.sign, e.k1_pow, e.k2_pow, {});
    return out;
}

PolyMatrix commutator(int dim, const PolyMatrix& a, const PolyMatrix& b) {
    PolyMatrix out = zero_matrix(dim);
    for (int i = 0; i <= dim; ++i)
        for (int j = 0; j <= dim; ++j)
            for (int k = 0; k <= dim; ++k) {
                out[i][j] += a[i][k] * b[k][j];
                out[i][j] -= b[i][k] * a[k][j];
            }
    return out;
}

bool matrix_zero(int dim, const PolyMatrix& a, ParamPoly* first_nonzero) {
    for (int i = 0; i <= dim; ++i)
        for (int j = 0; j <= dim; ++j)
            if (!a[i][j].is_zero()) {
                if (first_nonzero) *first_nonzero = a[i][j];
                return false;
            }
    return true;
}

// I_k = diag(1, k1, k1 k2, ..., k1 k2) as exact monomials.
ParamPoly metric_entry(int dim, int mu) {
    if (mu == 0) return ParamPoly::monomial(dim, 1, 0, 0, {});
    if (mu == 1) return ParamPoly::monomial(dim, 1, 1, 0, {});
    return ParamPoly::monomial(dim, 1, 1, 1, {});
}

} // namespace

BracketReport verify_vector_rep(int dim) {
    BracketReport report;
    report.dim = dim;
    const std::vector<GenIndex> gens = all_generators(dim);
    std::vector<PolyMatrix> mats;
    mats.reserve(gens.size());
    for (const GenIndex& g : gens) mats.push_back(rep_poly(dim, g.mu, g.nu));

    // X^T I_k + I_k X = 0 entrywise: X_{ba} I_b + I_a X_{ab} = 0.
    for (size_t gi = 0; gi < gens.size(); ++gi) {
        ++report.pairs_checked;
        bool ok = true;
        ParamPoly bad(dim);
        for (int a = 0; a <= dim && ok; ++a)
            for (int b = 0; b <= dim && ok; ++b) {
                ParamPoly entry = mats[gi][b][a] * metric_entry(dim, b);
                entry += metric_entry(dim, a) * mats[gi][a][b];
                if (!entry.is_zero()) {
                    ok = false;
                    bad = entry;
                }
            }
        if (!ok) report.failures.push_back({gens[gi], gens[gi], bad});
    }

    for (size_t i = 0; i < gens.size(); ++i) {
        for (size_t j = i + 1; j < gens.size(); ++j) {
            ++report.pairs_checked;
            PolyMatrix residual = commutator(dim, mats[i], mats[j]);
            for (const StructureTerm& t : expected_bracket(gens[i], gens[j])) {
                const PolyMatrix target = rep_poly(dim, t.target.mu, t.target.nu);
                for (int a = 0; a <= dim; ++a)
                    for (int b = 0; b <= dim; ++b)
                        residual[a][b] -= target[a][b].scaled(t.sign).times_kappa(t.k1_pow, t.k2_pow);
            }
            ParamPoly bad(dim);
            if (!matrix_zero(dim, residual, &bad)) report.failures.push_back({gens[i], gens[j], bad});
        }
    }
    return report;
}

} // namespace curvint
