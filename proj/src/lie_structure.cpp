#include "curvint/lie_structure.hpp"

#include "curvint/errors.hpp"

namespace curvint {

std::string gen_name(GenIndex g) {
    return "J" + std::to_string(g.mu) + std::to_string(g.nu);
}

std::vector<GenIndex> all_generators(int dim) {
    std::vector<GenIndex> out;
    out.reserve(dim * (dim + 1) / 2);
    for (int mu = 0; mu <= dim; ++mu)
        for (int nu = mu + 1; nu <= dim; ++nu) out.push_back({mu, nu});
    return out;
}

namespace {

std::optional<StructureTerm> table(GenIndex a, GenIndex b) {
    // The twelve listed bracket patterns, with latin indices >= 2. Pairs are
    // queried in lexicographic order; everything unlisted vanishes.
    const int m = a.mu, n = a.nu, r = b.mu, s = b.nu;
    const bool latin_m = m >= 2, latin_r = r >= 2;

    if (latin_m && latin_r) {
        // [J_ij, J_ik] = J_jk ; [J_ij, J_jk] = -J_ik ; [J_ik, J_jk] = J_ij
        if (m == r && n < s) return StructureTerm{+1, 0, 0, {n, s}};
        if (n == r) return StructureTerm{-1, 0, 0, {m, s}};
        if (n == s && m < r) return StructureTerm{+1, 0, 0, {m, r}};
        return std::nullopt;
    }
    if (m == 1 && r == 1) {
        // [J_1j, J_1k] = k2 J_jk
        if (n < s) return StructureTerm{+1, 0, 1, {n, s}};
        return std::nullopt;
    }
    if (m == 1 && latin_r) {
        // [J_1j, J_jk] = -J_1k ; [J_1k, J_jk] = J_1j
        if (n == r) return StructureTerm{-1, 0, 0, {1, s}};
        if (n == s) return StructureTerm{+1, 0, 0, {1, r}};
        return std::nullopt;
    }
    if (m == 0 && n == 1) {
        // [J_01, J_0k] = k1 J_1k ; [J_01, J_1k] = -J_0k
        if (r == 0) return StructureTerm{+1, 1, 0, {1, s}};
        if (r == 1) return StructureTerm{-1, 0, 0, {0, s}};
        return std::nullopt;
    }
    if (m == 0 && r == 1) {
        // [J_0k, J_1k] = k2 J_01
        if (n == s) return StructureTerm{+1, 0, 1, {0, 1}};
        return std::nullopt;
    }
    if (m == 0 && r == 0) {
        // [J_0j, J_0k] = k1 k2 J_jk (n >= 2 here since (0,1) handled above)
        if (n >= 2 && n < s) return StructureTerm{+1, 1, 1, {n, s}};
        return std::nullopt;
    }
    if (m == 0 && latin_r) {
        // [J_0j, J_jk] = -J_0k ; [J_0k, J_jk] = J_0j
        if (n == r) return StructureTerm{-1, 0, 0, {0, s}};
        if (n == s) return StructureTerm{+1, 0, 0, {0, r}};
        return std::nullopt;
    }
    return std::nullopt;
}

} // namespace

std::vector<StructureTerm> expected_bracket(GenIndex a, GenIndex b) {
    if (!(a.mu < a.nu) || !(b.mu < b.nu)) throw IndexOrder("expected_bracket: pairs must be canonical");
    if (a == b) return {};
    if (b < a) {
        auto out = expected_bracket(b, a);
        for (auto& t : out) t.sign = -t.sign;
        return out;
    }
    if (auto t = table(a, b)) return {*t};
    return {};
}

} // namespace curvint
