#include "fhdg/basis.hpp"

#include <stdexcept>

#include "fhdg/quadrature.hpp"

namespace fhdg {

ElementBasis::ElementBasis(int degree)
    : degree_(degree)
{
    if (degree < 0)
        throw std::invalid_argument("ElementBasis: degree must be >= 0");
}

Eigen::VectorXd ElementBasis::values(double xi) const
{
    Eigen::VectorXd v(size());
    v[0] = 1.0;
    if (degree_ >= 1)
        v[1] = xi;
    for (int n = 1; n < degree_; ++n)
        v[n + 1] = ((2 * n + 1) * xi * v[n] - n * v[n - 1]) / (n + 1);
    return v;
}

Eigen::VectorXd ElementBasis::derivatives(double xi) const
{
    const Eigen::VectorXd v = values(xi);
    Eigen::VectorXd d(size());
    d[0] = 0.0;
    // P'_{n+1} = P'_{n-1} + (2n+1) P_n
    for (int n = 0; n < degree_; ++n)
        d[n + 1] = (n >= 1 ? d[n - 1] : 0.0) + (2 * n + 1) * v[n];
    return d;
}

Eigen::VectorXd ElementBasis::trace_left() const
{
    Eigen::VectorXd v(size());
    for (int n = 0; n <= degree_; ++n)
        v[n] = (n % 2 == 0) ? 1.0 : -1.0;
    return v;
}

Eigen::VectorXd ElementBasis::trace_right() const
{
    return Eigen::VectorXd::Ones(size());
}

double ElementBasis::legendre(int n, double xi)
{
    double pm1 = 1.0;
    if (n == 0)
        return pm1;
    double p = xi;
    for (int m = 1; m < n; ++m) {
        const double pp1 = ((2 * m + 1) * xi * p - m * pm1) / (m + 1);
        pm1 = p;
        p = pp1;
    }
    return p;
}

double ElementBasis::legendre_derivative(int n, double xi)
{
    if (n == 0)
        return 0.0;
    if (xi == 1.0 || xi == -1.0) {
        // (1 - xi^2) degenerates; use P'_n(+-1) = (+-1)^{n-1} n(n+1)/2.
        const double sign = (xi > 0.0 || n % 2 == 1) ? 1.0 : -1.0;
        return sign * 0.5 * n * (n + 1);
    }
    const double p = legendre(n, xi);
    const double pm1 = legendre(n - 1, xi);
    return n * (pm1 - xi * p) / (1.0 - xi * xi);
}

double eval_poly(const ElementBasis& basis, const Eigen::VectorXd& coeffs, double xi)
{
    return basis.values(xi).dot(coeffs);
}

Eigen::VectorXd basis_moments(const std::function<double(double)>& f, int degree,
                              double a, double b, const QuadratureRule& rule)
{
    if (b <= a)
        throw std::invalid_argument("basis_moments: degenerate element");
    const ElementBasis basis(degree);
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    Eigen::VectorXd moments = Eigen::VectorXd::Zero(degree + 1);
    for (int q = 0; q < rule.size(); ++q) {
        const double xi = rule.nodes[q];
        moments += (half * rule.weights[q] * f(mid + half * xi)) * basis.values(xi);
    }
    return moments;
}

Eigen::VectorXd mass_diagonal(int degree, double length)
{
    if (length <= 0.0)
        throw std::invalid_argument("mass_diagonal: degenerate element");
    Eigen::VectorXd d(degree + 1);
    for (int n = 0; n <= degree; ++n)
        d[n] = length / (2 * n + 1);
    return d;
}

Eigen::MatrixXd gradient_matrix(int degree)
{
    Eigen::MatrixXd g = Eigen::MatrixXd::Zero(degree + 1, degree + 1);
    for (int m = 1; m <= degree; ++m)
        for (int n = m - 1; n >= 0; n -= 2)
            g(m, n) = 2.0;
    return g;
}

Eigen::VectorXd project_l2(const std::function<double(double)>& f, int degree,
                           double a, double b, const QuadratureRule& rule)
{
    const Eigen::VectorXd moments = basis_moments(f, degree, a, b, rule);
    Eigen::VectorXd coeffs(degree + 1);
    for (int n = 0; n <= degree; ++n)
        coeffs[n] = moments[n] * (2 * n + 1) / (b - a);
    return coeffs;
}

Eigen::VectorXd project_l2(const std::function<double(double)>& f, int degree,
                           double a, double b)
{
    return project_l2(f, degree, a, b, gauss_rule(assembly_points(degree)));
}

} // namespace fhdg
