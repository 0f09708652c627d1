#pragma once

#include "fhdg/hdg.hpp"

namespace fhdg {

/// A transient problem together with its known exact solution, used to
/// measure errors.
struct ManufacturedProblem {
    TransientProblem data;
    SpaceTimeFn exact_u;
    SpaceTimeFn exact_q;
    double final_time = 1.0;
};

/// The family u(x,t) = amplitude * t^p * sin(m pi x) on the unit interval
/// with homogeneous boundary and initial data. The matching source is
///
///   f(x,t) = amplitude * [ Gamma(p+1)/Gamma(p+alpha) * t^{p+alpha-1}
///                          + (m pi)^2 * t^p ] * sin(m pi x),
///
/// the first term being the Caputo derivative of order 1-alpha of t^p.
/// Requires p + alpha > 1 so the source stays bounded.
ManufacturedProblem power_sine_problem(double alpha, double p, int m,
                                       double amplitude, double final_time);

/// The default benchmark problem: u(x,t) = t^{3-alpha} sin(pi x), i.e. the
/// power-sine family with p = 3 - alpha, unit amplitude and final time 1.
ManufacturedProblem manufactured_source(double alpha);

} // namespace fhdg
