#include "curvint/param_poly.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

namespace curvint {

bool GradedLex::operator()(const std::vector<int>& a, const std::vector<int>& b) const {
    const int da = std::accumulate(a.begin(), a.end(), 0);
    const int db = std::accumulate(b.begin(), b.end(), 0);
    if (da != db) return da < db;
    return a < b;
}

ParamPoly::ParamPoly(int space_dim) : dim_(space_dim) {
    if (space_dim < 1) throw std::invalid_argument("ParamPoly: space dimension must be >= 1");
}

int ParamPoly::total_degree() const {
    int deg = 0;
    for (const auto& [e, c] : terms_) deg = std::max(deg, std::accumulate(e.begin(), e.end(), 0));
    return deg;
}

int ParamPoly::phase_degree() const {
    int deg = 0;
    for (const auto& [e, c] : terms_)
        deg = std::max(deg, std::accumulate(e.begin(), e.begin() + 2 * (dim_ + 1), 0));
    return deg;
}

void ParamPoly::add_term(std::vector<int> exponents, const Rational& coeff) {
    if (coeff == 0) return;
    if (static_cast<int>(exponents.size()) != num_vars())
        throw std::invalid_argument("ParamPoly: exponent vector length mismatch");
    auto [it, inserted] = terms_.emplace(std::move(exponents), coeff);
    if (!inserted) {
        it->second += coeff;
        if (it->second == 0) terms_.erase(it);
    }
}

ParamPoly ParamPoly::monomial(int space_dim, const Rational& coeff, int k1_pow, int k2_pow,
                              std::span<const std::pair<int, int>> factors) {
    ParamPoly out(space_dim);
    std::vector<int> e(out.num_vars(), 0);
    e[out.var_k1()] = k1_pow;
    e[out.var_k2()] = k2_pow;
    for (const auto& [var, exp] : factors) e[var] += exp;
    out.add_term(std::move(e), coeff);
    return out;
}

ParamPoly& ParamPoly::operator+=(const ParamPoly& other) {
    for (const auto& [e, c] : other.terms_) add_term(e, c);
    return *this;
}

ParamPoly& ParamPoly::operator-=(const ParamPoly& other) {
    for (const auto& [e, c] : other.terms_) add_term(e, -c);
    return *this;
}

ParamPoly operator*(const ParamPoly& a, const ParamPoly& b) {
    if (a.dim_ != b.dim_) throw std::invalid_argument("ParamPoly: dimension mismatch");
    ParamPoly out(a.dim_);
    std::vector<int> e(a.num_vars());
    for (const auto& [ea, ca] : a.terms_) {
        for (const auto& [eb, cb] : b.terms_) {
            for (int i = 0; i < a.num_vars(); ++i) e[i] = ea[i] + eb[i];
            out.add_term(e, ca * cb);
        }
    }
    return out;
}

ParamPoly ParamPoly::operator-() const {
    ParamPoly out(dim_);
    for (const auto& [e, c] : terms_) out.terms_.emplace(e, -c);
    return out;
}

ParamPoly ParamPoly::scaled(const Rational& c) const {
    ParamPoly out(dim_);
    if (c == 0) return out;
    for (const auto& [e, coeff] : terms_) out.terms_.emplace(e, coeff * c);
    return out;
}

ParamPoly ParamPoly::times_kappa(int k1_pow, int k2_pow) const {
    ParamPoly out(dim_);
    for (const auto& [e, c] : terms_) {
        std::vector<int> shifted = e;
        shifted[var_k1()] += k1_pow;
        shifted[var_k2()] += k2_pow;
        out.terms_.emplace(std::move(shifted), c);
    }
    return out;
}

bool operator==(const ParamPoly& a, const ParamPoly& b) {
    return a.dim_ == b.dim_ && a.terms_ == b.terms_;
}

ParamPoly ParamPoly::derivative(int var) const {
    ParamPoly out(dim_);
    for (const auto& [e, c] : terms_) {
        if (e[var] == 0) continue;
        std::vector<int> shifted = e;
        shifted[var] -= 1;
        out.add_term(std::move(shifted), c * e[var]);
    }
    return out;
}

ParamPoly ParamPoly::substitute_kappa(const Rational& k1, const Rational& k2) const {
    ParamPoly out(dim_);
    for (const auto& [e, c] : terms_) {
        Rational coeff = c;
        for (int a = 0; a < e[var_k1()]; ++a) coeff *= k1;
        for (int b = 0; b < e[var_k2()]; ++b) coeff *= k2;
        std::vector<int> stripped = e;
        stripped[var_k1()] = 0;
        stripped[var_k2()] = 0;
        out.add_term(std::move(stripped), coeff);
    }
    return out;
}

std::string ParamPoly::to_string() const {
    if (terms_.empty()) return "0\n";
    std::ostringstream os;
    for (const auto& [e, c] : terms_) {
        os << c.str() << " * k1^" << e[var_k1()] << " k2^" << e[var_k2()];
        for (int mu = 0; mu <= dim_; ++mu)
            if (e[var_x(mu)] > 0) os << " * x" << mu << "^" << e[var_x(mu)];
        for (int mu = 0; mu <= dim_; ++mu)
            if (e[var_p(mu)] > 0) os << " * p" << mu << "^" << e[var_p(mu)];
        os << "\n";
    }
    return os.str();
}

ParamPoly poly_bracket(const ParamPoly& f, const ParamPoly& g) {
    if (f.space_dim() != g.space_dim())
        throw std::invalid_argument("poly_bracket: dimension mismatch");
    ParamPoly out(f.space_dim());
    for (int mu = 0; mu <= f.space_dim(); ++mu) {
        out += f.derivative(ParamPoly::var_x(mu)) * g.derivative(g.var_p(mu));
        out -= g.derivative(ParamPoly::var_x(mu)) * f.derivative(f.var_p(mu));
    }
    return out;
}

} // namespace curvint
