#pragma once

#include <functional>
#include <vector>

#include "curvint/lie_structure.hpp"
#include "curvint/param_poly.hpp"

namespace curvint {

struct BracketFailure {
    GenIndex a, b;
    ParamPoly residual;
};

/// Outcome of an exact certification sweep; pass iff no failures.
struct BracketReport {
    int dim = 0;
    int pairs_checked = 0;
    std::vector<BracketFailure> failures;

    bool pass() const { return failures.empty(); }
};

/// The degree-2 ambient polynomial realizing J_{mu nu}.
ParamPoly realize_generator(int dim, int mu, int nu);

using Realizer = std::function<ParamPoly(int dim, int mu, int nu)>;

/// Certifies every ordered generator pair against the commutation table,
/// identically in kappa1, kappa2. The realization is injectable so mutated
/// realizations can serve as negative controls.
BracketReport verify_structure_constants(int dim);
BracketReport verify_structure_constants(int dim, const Realizer& realize);

/// Quadratic Casimir kappa2 J01^2 + sum_j J0j^2 + k1 sum_j J1j^2
/// + k1 k2 sum_{i<j} Jij^2 (pair sums over unordered i < j).
ParamPoly casimir_poly(int dim);

/// {C, J_{mu nu}} = 0 for every generator, as exact polynomials.
BracketReport verify_casimir_centrality(int dim);

/// Matrix commutators of the vector representation match the commutation
/// table entrywise, and every generator satisfies X^T I_k + I_k X = 0,
/// identically in the parameters.
BracketReport verify_vector_rep(int dim);

/// Expected bracket as an exact polynomial (the table contracted with the
/// realized generators).
ParamPoly expected_bracket_poly(int dim, GenIndex a, GenIndex b, const Realizer& realize);

} // namespace curvint
