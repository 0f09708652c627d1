#pragma once

#include <Eigen/Dense>

#include "fhdg/mesh.hpp"

namespace fhdg {

/// Per-element coefficients of the reconstruction u*, one P_{k+1} Legendre
/// coefficient column per element.
using PostprocessedField = Eigen::MatrixXd;

/// Element-local reconstruction u* in P_{k+1} from the P_k pair (u, q):
/// its weak gradient matches -q against all of P_{k+1}, which in one
/// dimension forces (u*)' = -q exactly, and its element mean matches the
/// mean of u. The local solve is triangular in the Legendre basis.
Eigen::VectorXd postprocess_element(const Eigen::VectorXd& u_coeffs,
                                    const Eigen::VectorXd& q_coeffs,
                                    const Element& element, int degree);

/// Apply postprocess_element on every element of a mesh.
PostprocessedField postprocess_field(const Eigen::MatrixXd& u,
                                     const Eigen::MatrixXd& q,
                                     const Mesh1D& mesh, int degree);

} // namespace fhdg
