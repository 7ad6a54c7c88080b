#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <map>
#include <span>
#include <string>
#include <vector>

namespace curvint {

using Rational = boost::multiprecision::cpp_rational;

/// Graded lexicographic order on exponent vectors: total degree first, then
/// lexicographic. Fixes a canonical term order for storage and printing.
struct GradedLex {
    bool operator()(const std::vector<int>& a, const std::vector<int>& b) const;
};

/// Sparse multivariate polynomial in the ambient phase-space variables
/// (x_0..x_N, p_0..p_N) with coefficients that are themselves polynomials in
/// (kappa1, kappa2) over exact rationals. The exponent vector has 2(N+1)+2
/// slots: x's, then p's, then k1, k2. Zero coefficients are never stored.
class ParamPoly {
public:
    explicit ParamPoly(int space_dim);

    int space_dim() const { return dim_; }
    int num_vars() const { return 2 * (dim_ + 1) + 2; }

    static int var_x(int mu) { return mu; }
    int var_p(int mu) const { return dim_ + 1 + mu; }
    int var_k1() const { return 2 * (dim_ + 1); }
    int var_k2() const { return 2 * (dim_ + 1) + 1; }

    bool is_zero() const { return terms_.empty(); }
    size_t num_terms() const { return terms_.size(); }
    int total_degree() const;
    int phase_degree() const; // degree in the x,p variables only

    void add_term(std::vector<int> exponents, const Rational& coeff);

    /// Monomial helper: coeff * k1^a k2^b * prod of (var, exp) factors.
    static ParamPoly monomial(int space_dim, const Rational& coeff, int k1_pow, int k2_pow,
                              std::span<const std::pair<int, int>> factors);

    ParamPoly& operator+=(const ParamPoly& other);
    ParamPoly& operator-=(const ParamPoly& other);
    friend ParamPoly operator+(ParamPoly a, const ParamPoly& b) { return a += b; }
    friend ParamPoly operator-(ParamPoly a, const ParamPoly& b) { return a -= b; }
    friend ParamPoly operator*(const ParamPoly& a, const ParamPoly& b);
    ParamPoly operator-() const;
    ParamPoly scaled(const Rational& c) const;
    ParamPoly times_kappa(int k1_pow, int k2_pow) const;

    friend bool operator==(const ParamPoly& a, const ParamPoly& b);

    /// Exact partial derivative with respect to one variable.
    ParamPoly derivative(int var) const;

    /// Substitutes exact rational values for kappa1, kappa2.
    ParamPoly substitute_kappa(const Rational& k1, const Rational& k2) const;

    /// One term per line, `coeff * k1^a k2^b * x0^e0 ... pN^fN`, graded-lex
    /// order; the zero polynomial prints as "0".
    std::string to_string() const;

    const std::map<std::vector<int>, Rational, GradedLex>& terms() const { return terms_; }

private:
    int dim_;
    std::map<std::vector<int>, Rational, GradedLex> terms_;
};

/// Canonical bracket in the ambient variables,
/// {f,g} = sum_mu (df/dx_mu dg/dp_mu - dg/dx_mu df/dp_mu),
/// computed by exact term-wise differentiation.
ParamPoly poly_bracket(const ParamPoly& f, const ParamPoly& g);

} // namespace curvint
