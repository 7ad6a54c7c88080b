#pragma once

namespace curvint {

// Paper-wide index conventions, kept in one place: a product over an empty
// range is 1, a sum over an empty range is 0.

template <class T, class F>
T product_over(int first, int last, F&& term) {
    T out(1.0);
    for (int s = first; s <= last; ++s) out = out * term(s);
    return out;
}

template <class T, class F>
T sum_over(int first, int last, F&& term) {
    T out(0.0);
    for (int s = first; s <= last; ++s) out = out + term(s);
    return out;
}

} // namespace curvint
