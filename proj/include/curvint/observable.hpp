#pragma once

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "curvint/dual.hpp"
#include "curvint/phase.hpp"

namespace curvint {

/// A differentiable scalar function on phase space. The evaluation rule is
/// stored three times, instantiated for double and for first- and
/// second-order duals, so exact gradients and Hessians come from the same
/// expression by forward-mode seeding.
class Observable {
public:
    Observable() = default;

    /// Wraps a generic callable f(std::span<const T>) -> T.
    template <class F>
    static Observable make(std::string name, int phase_dim, F f) {
        auto impl = std::make_shared<Impl>();
        impl->name = std::move(name);
        impl->dim = phase_dim;
        impl->f0 = f;
        impl->f1 = f;
        impl->f2 = std::move(f);
        Observable o;
        o.impl_ = std::move(impl);
        return o;
    }

    bool valid() const { return impl_ != nullptr; }
    const std::string& name() const { return impl_->name; }
    int phase_dim() const { return impl_->dim; }

    Observable renamed(std::string name) const;

    double eval(std::span<const double> s) const { return impl_->f0(s); }
    Dual1 eval(std::span<const Dual1> s) const { return impl_->f1(s); }
    Dual2 eval(std::span<const Dual2> s) const { return impl_->f2(s); }

    double operator()(const PhasePoint& s) const;

    /// Exact gradient by one dual pass per phase-space direction.
    void gradient(std::span<const double> s, std::span<double> out) const;
    std::vector<double> gradient(const PhasePoint& s) const;

private:
    struct Impl {
        std::string name;
        int dim = 0;
        std::function<double(std::span<const double>)> f0;
        std::function<Dual1(std::span<const Dual1>)> f1;
        std::function<Dual2(std::span<const Dual2>)> f2;
    };
    std::shared_ptr<const Impl> impl_;
};

Observable operator+(const Observable& a, const Observable& b);
Observable operator-(const Observable& a, const Observable& b);
Observable operator*(const Observable& a, const Observable& b);
Observable operator*(double c, const Observable& a);
Observable operator+(const Observable& a, double c);

Observable observable_sum(std::span<const Observable> terms, std::string name);

/// Canonical bracket {f,g} = sum_i (df/dq_i dg/dp_i - dg/dq_i df/dp_i),
/// evaluated from exact dual-number gradients.
double poisson_bracket(const Observable& f, const Observable& g, std::span<const double> s);
double poisson_bracket(const Observable& f, const Observable& g, const PhasePoint& s);

/// Bracket of two precomputed gradients (first half q-partials, second half p).
double bracket_of_gradients(std::span<const double> gf, std::span<const double> gg);

double euclidean_norm(std::span<const double> v);

} // namespace curvint
