#pragma once

#include <functional>
#include <vector>

namespace fhdg {

/// Gauss-Legendre rule on the reference interval [-1, 1]. An n-point rule
/// integrates polynomials of degree <= 2n-1 exactly; the weights sum to 2.
struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;

    int size() const { return static_cast<int>(nodes.size()); }

    /// Integrate f over [a, b] by mapping the rule onto that interval.
    double integrate(const std::function<double(double)>& f, double a, double b) const;
};

/// Gauss-Legendre nodes and weights, computed by Newton iteration on the
/// Legendre polynomial (no tables). Supports 1 <= n <= 20.
QuadratureRule gauss_rule(int n);

/// Number of quadrature points used for all bilinear-form assembly at
/// polynomial degree k: ceil((2k+3)/2) + 1, enough to make every form
/// with degree-k data exact.
int assembly_points(int degree);

} // namespace fhdg
