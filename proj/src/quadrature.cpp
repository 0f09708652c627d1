#include "fhdg/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fhdg/basis.hpp"

namespace fhdg {

double QuadratureRule::integrate(const std::function<double(double)>& f, double a, double b) const
{
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double acc = 0.0;
    for (int q = 0; q < size(); ++q)
        acc += weights[q] * f(mid + half * nodes[q]);
    return half * acc;
}

QuadratureRule gauss_rule(int n)
{
    if (n < 1 || n > 20)
        throw std::invalid_argument("gauss_rule: point count must be in [1, 20]");

    QuadratureRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);

    // Roots come in +/- pairs; solve for the nonnegative half and mirror.
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            const double p = ElementBasis::legendre(n, x);
            dp = ElementBasis::legendre_derivative(n, x);
            const double dx = p / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15)
                break;
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[n - 1 - i] = x;
        rule.nodes[i] = -x;
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) {
        rule.nodes[n / 2] = 0.0;
        const double dp = ElementBasis::legendre_derivative(n, 0.0);
        rule.weights[n / 2] = 2.0 / (dp * dp);
    }
    return rule;
}

int assembly_points(int degree)
{
    return (2 * degree + 3 + 1) / 2 + 1; // ceil((2k+3)/2) + 1
}

} // namespace fhdg
