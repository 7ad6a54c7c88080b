#pragma once

#include <cmath>
#include <utility>

namespace curvint {

/// Forward-mode dual scalar: carries a value and one directional derivative.
/// Nesting (Dual<Dual<double>>) yields mixed second derivatives.
template <class T>
struct Dual {
    T v{};
    T d{};

    Dual() = default;
    Dual(double c) : v(c), d() {} // constants lift with zero derivative
    Dual(T value, T deriv) : v(std::move(value)), d(std::move(deriv)) {}
};

using Dual1 = Dual<double>;
using Dual2 = Dual<Dual1>;

inline double value_of(double x) { return x; }

template <class T>
double value_of(const Dual<T>& x) { return value_of(x.v); }

template <class T>
Dual<T> operator-(const Dual<T>& a) { return {-a.v, -a.d}; }

template <class T>
Dual<T> operator+(const Dual<T>& a, const Dual<T>& b) { return {a.v + b.v, a.d + b.d}; }
template <class T>
Dual<T> operator+(const Dual<T>& a, double b) { return {a.v + b, a.d}; }
template <class T>
Dual<T> operator+(double a, const Dual<T>& b) { return {a + b.v, b.d}; }

template <class T>
Dual<T> operator-(const Dual<T>& a, const Dual<T>& b) { return {a.v - b.v, a.d - b.d}; }
template <class T>
Dual<T> operator-(const Dual<T>& a, double b) { return {a.v - b, a.d}; }
template <class T>
Dual<T> operator-(double a, const Dual<T>& b) { return {a - b.v, -b.d}; }

template <class T>
Dual<T> operator*(const Dual<T>& a, const Dual<T>& b) {
    return {a.v * b.v, a.d * b.v + a.v * b.d};
}
template <class T>
Dual<T> operator*(const Dual<T>& a, double b) { return {a.v * b, a.d * b}; }
template <class T>
Dual<T> operator*(double a, const Dual<T>& b) { return {a * b.v, a * b.d}; }

template <class T>
Dual<T> operator/(const Dual<T>& a, const Dual<T>& b) {
    const T q = a.v / b.v;
    return {q, (a.d - q * b.d) / b.v};
}
template <class T>
Dual<T> operator/(const Dual<T>& a, double b) { return {a.v / b, a.d / b}; }
template <class T>
Dual<T> operator/(double a, const Dual<T>& b) {
    const T q = a / b.v;
    return {q, -(q / b.v) * b.d};
}

template <class T>
Dual<T>& operator+=(Dual<T>& a, const Dual<T>& b) { a = a + b; return a; }
template <class T>
Dual<T>& operator-=(Dual<T>& a, const Dual<T>& b) { a = a - b; return a; }
template <class T>
Dual<T>& operator*=(Dual<T>& a, const Dual<T>& b) { a = a * b; return a; }

template <class T>
Dual<T> sin(const Dual<T>& x) {
    using std::cos;
    using std::sin;
    return {sin(x.v), x.d * cos(x.v)};
}

template <class T>
Dual<T> cos(const Dual<T>& x) {
    using std::cos;
    using std::sin;
    return {cos(x.v), -(x.d * sin(x.v))};
}

template <class T>
Dual<T> sinh(const Dual<T>& x) {
    using std::cosh;
    using std::sinh;
    return {sinh(x.v), x.d * cosh(x.v)};
}

template <class T>
Dual<T> cosh(const Dual<T>& x) {
    using std::cosh;
    using std::sinh;
    return {cosh(x.v), x.d * sinh(x.v)};
}

template <class T>
Dual<T> sqrt(const Dual<T>& x) {
    using std::sqrt;
    const T s = sqrt(x.v);
    return {s, x.d / (2.0 * s)};
}

} // namespace curvint
