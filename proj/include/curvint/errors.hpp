#pragma once

#include <stdexcept>
#include <string>

namespace curvint {

/// An evaluation hit a singular locus of the chart or of an observable
/// (barrier pole, vanishing kappa-sine, ...). Checks treat points raising
/// this as skipped samples.
struct SingularEvaluation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// kappa-tangent evaluated where the kappa-cosine vanishes.
struct DivisionAtPole : SingularEvaluation {
    using SingularEvaluation::SingularEvaluation;
};

/// Polar->ambient phase map requested where the polar chart degenerates.
struct ChartDegenerate : SingularEvaluation {
    using SingularEvaluation::SingularEvaluation;
};

/// Generator indices must satisfy mu < nu.
struct IndexOrder : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Integral-family index outside its admissible range.
struct IndexRange : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A coupling that the construction requires to vanish is nonzero.
struct BetaNotZero : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

} // namespace curvint
