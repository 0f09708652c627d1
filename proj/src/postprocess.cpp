#include "fhdg/postprocess.hpp"

#include <stdexcept>

namespace fhdg {

Eigen::VectorXd postprocess_element(const Eigen::VectorXd& u_coeffs,
                                    const Eigen::VectorXd& q_coeffs,
                                    const Element& element, int degree)
{
    if (degree < 0)
        throw std::invalid_argument("postprocess_element: degree must be >= 0");
    if (u_coeffs.size() != degree + 1 || q_coeffs.size() != degree + 1)
        throw std::invalid_argument("postprocess_element: coefficient size mismatch");
    if (element.length() <= 0.0)
        throw std::runtime_error("postprocess_element: degenerate element");

    // In reference coordinates d(u*)/dxi = -(h/2) q(xi); antidifferentiate
    // with int P_m dxi = (P_{m+1} - P_{m-1})/(2m+1), then pin the mean
    // (the P_0 coefficient) to the mean of u.
    const double scale = -0.5 * element.length();
    Eigen::VectorXd star = Eigen::VectorXd::Zero(degree + 2);
    for (int m = 0; m <= degree; ++m) {
        const double c = scale * q_coeffs[m] / (2 * m + 1);
        star[m + 1] += c;
        if (m >= 1)
            star[m - 1] -= c;
    }
    star[0] = u_coeffs[0];
    return star;
}

PostprocessedField postprocess_field(const Eigen::MatrixXd& u,
                                     const Eigen::MatrixXd& q,
                                     const Mesh1D& mesh, int degree)
{
    if (u.rows() != degree + 1 || q.rows() != degree + 1
        || u.cols() != mesh.num_elements() || q.cols() != mesh.num_elements())
        throw std::invalid_argument("postprocess_field: coefficient shape mismatch");
    PostprocessedField star(degree + 2, mesh.num_elements());
    for (int e = 0; e < mesh.num_elements(); ++e)
        star.col(e) = postprocess_element(u.col(e), q.col(e), mesh.element(e), degree);
    return star;
}

} // namespace fhdg
