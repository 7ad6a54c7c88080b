#include "curvint/observable.hpp"

#include <cmath>
#include <stdexcept>

namespace curvint {

std::vector<double> PhasePoint::flat() const {
    std::vector<double> s = q.flat();
    s.insert(s.end(), p.begin(), p.end());
    return s;
}

PhasePoint PhasePoint::from_flat(int dim, std::span<const double> s) {
    PhasePoint out;
    out.q = PolarCoords::from_flat(dim, s);
    out.p.assign(s.begin() + dim, s.begin() + 2 * dim);
    return out;
}

Observable Observable::renamed(std::string name) const {
    auto impl = std::make_shared<Impl>(*impl_);
    impl->name = std::move(name);
    Observable o;
    o.impl_ = std::move(impl);
    return o;
}

double Observable::operator()(const PhasePoint& s) const {
    const std::vector<double> flat = s.flat();
    return eval(std::span<const double>(flat));
}

void Observable::gradient(std::span<const double> s, std::span<double> out) const {
    const int n = impl_->dim;
    std::vector<Dual1> z(n);
    for (int i = 0; i < n; ++i) z[i] = Dual1(s[i]);
    for (int i = 0; i < n; ++i) {
        z[i].d = 1.0;
        out[i] = impl_->f1(z).d;
        z[i].d = 0.0;
    }
}

std::vector<double> Observable::gradient(const PhasePoint& s) const {
    const std::vector<double> flat = s.flat();
    std::vector<double> out(impl_->dim);
    gradient(flat, out);
    return out;
}

namespace {

void require_same_dim(const Observable& a, const Observable& b) {
    if (a.phase_dim() != b.phase_dim())
        throw std::invalid_argument("observable arity mismatch: " + a.name() + " vs " + b.name());
}

} // namespace

Observable operator+(const Observable& a, const Observable& b) {
    require_same_dim(a, b);
    return Observable::make(a.name() + "+" + b.name(), a.phase_dim(),
                            [a, b](auto s) { return a.eval(s) + b.eval(s); });
}

Observable operator-(const Observable& a, const Observable& b) {
    require_same_dim(a, b);
    return Observable::make(a.name() + "-" + b.name(), a.phase_dim(),
                            [a, b](auto s) { return a.eval(s) - b.eval(s); });
}

Observable operator*(const Observable& a, const Observable& b) {
    require_same_dim(a, b);
    return Observable::make(a.name() + "*" + b.name(), a.phase_dim(),
                            [a, b](auto s) { return a.eval(s) * b.eval(s); });
}

Observable operator*(double c, const Observable& a) {
    return Observable::make(a.name(), a.phase_dim(), [c, a](auto s) { return c * a.eval(s); });
}

Observable operator+(const Observable& a, double c) {
    return Observable::make(a.name(), a.phase_dim(), [c, a](auto s) { return a.eval(s) + c; });
}

Observable observable_sum(std::span<const Observable> terms, std::string name) {
    std::vector<Observable> copy(terms.begin(), terms.end());
    return Observable::make(std::move(name), copy.front().phase_dim(), [copy](auto s) {
        auto acc = copy.front().eval(s);
        for (size_t i = 1; i < copy.size(); ++i) acc += copy[i].eval(s);
        return acc;
    });
}

double bracket_of_gradients(std::span<const double> gf, std::span<const double> gg) {
    const size_t n = gf.size() / 2;
    double out = 0.0;
    for (size_t i = 0; i < n; ++i) out += gf[i] * gg[n + i] - gg[i] * gf[n + i];
    return out;
}

double euclidean_norm(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

double poisson_bracket(const Observable& f, const Observable& g, std::span<const double> s) {
    const int n = f.phase_dim();
    std::vector<double> gf(n), gg(n);
    f.gradient(s, gf);
    g.gradient(s, gg);
    return bracket_of_gradients(gf, gg);
}

double poisson_bracket(const Observable& f, const Observable& g, const PhasePoint& s) {
    const std::vector<double> flat = s.flat();
    return poisson_bracket(f, g, std::span<const double>(flat));
}

} // namespace curvint
