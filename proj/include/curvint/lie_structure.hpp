#pragma once

#include <optional>
#include <string>
#include <vector>

namespace curvint {

/// Canonical generator label J_{mu nu}, mu < nu.
struct GenIndex {
    int mu = 0, nu = 0;

    friend bool operator==(const GenIndex&, const GenIndex&) = default;
    friend auto operator<=>(const GenIndex&, const GenIndex&) = default;
};

std::string gen_name(GenIndex g);

/// All canonical generator pairs (mu < nu <= N), lexicographic order.
std::vector<GenIndex> all_generators(int dim);

/// One term sign * k1^k1_pow * k2^k2_pow * J_target of an expected bracket.
struct StructureTerm {
    int sign;
    int k1_pow, k2_pow;
    GenIndex target;
};

/// The bracket {J_a, J_b} dictated by the commutation table of the algebra,
/// including antisymmetry for a > b; empty vector means a vanishing bracket.
std::vector<StructureTerm> expected_bracket(GenIndex a, GenIndex b);

} // namespace curvint
