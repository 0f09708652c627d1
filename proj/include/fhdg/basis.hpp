#pragma once

#include <Eigen/Dense>
#include <functional>

namespace fhdg {

struct QuadratureRule;

/// Legendre basis P_0..P_k on the reference interval [-1, 1], mapped
/// affinely onto each mesh element. Orthogonality makes every element
/// mass matrix diagonal.
class ElementBasis {
public:
    explicit ElementBasis(int degree);

    int degree() const { return degree_; }
    int size() const { return degree_ + 1; }

    /// Values of P_0..P_k at a reference point.
    Eigen::VectorXd values(double xi) const;
    /// Reference-coordinate derivatives dP_n/dxi at a reference point.
    Eigen::VectorXd derivatives(double xi) const;

    /// Endpoint traces: P_n(-1) = (-1)^n, P_n(1) = 1.
    Eigen::VectorXd trace_left() const;
    Eigen::VectorXd trace_right() const;

    static double legendre(int n, double xi);
    static double legendre_derivative(int n, double xi);

private:
    int degree_;
};

/// Evaluate a coefficient vector in this basis at reference point xi.
double eval_poly(const ElementBasis& basis, const Eigen::VectorXd& coeffs, double xi);

/// Moments (f, P_n) over [a, b] against the mapped basis, via `rule`.
Eigen::VectorXd basis_moments(const std::function<double(double)>& f, int degree,
                              double a, double b, const QuadratureRule& rule);

/// Diagonal of the element mass matrix: (P_n, P_n) over an element of the
/// given length is length/(2n+1).
Eigen::VectorXd mass_diagonal(int degree, double length);

/// Gradient coupling G_{mn} = integral of P_m' P_n over an element, in
/// physical coordinates. The element length cancels, leaving the reference
/// value: 2 when m > n with m - n odd, else 0.
Eigen::MatrixXd gradient_matrix(int degree);

/// L2 projection of f onto polynomials of the given degree on [a, b].
/// Moments are taken with `rule` (mapped to the element), and the diagonal
/// Legendre mass matrix is inverted exactly.
Eigen::VectorXd project_l2(const std::function<double(double)>& f, int degree,
                           double a, double b, const QuadratureRule& rule);

/// Same, with the default rule for the degree (exact for polynomial f).
Eigen::VectorXd project_l2(const std::function<double(double)>& f, int degree,
                           double a, double b);

} // namespace fhdg
