#pragma once

#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <vector>

#include "fhdg/fractional.hpp"
#include "fhdg/mesh.hpp"

namespace fhdg {

using SpaceFn = std::function<double(double)>;
using SpaceTimeFn = std::function<double(double, double)>;

/// Stabilization of the numerical flux q_hat = q + tau (u - u_hat) n, one
/// nonnegative constant per face of each element. Well-posedness needs a
/// positive value on at least one face of every element, which the
/// constructors enforce.
class Stabilization {
public:
    Stabilization(int num_elements, double uniform);
    Stabilization(std::vector<double> left, std::vector<double> right);

    int num_elements() const { return static_cast<int>(left_.size()); }
    double left(int e) const { return left_.at(e); }
    double right(int e) const { return right_.at(e); }

private:
    std::vector<double> left_;
    std::vector<double> right_;
};

/// Mesh, polynomial degree, and stabilization of one spatial discretization.
struct Discretization {
    Mesh1D mesh;
    int degree;
    Stabilization tau;

    Discretization(Mesh1D mesh, int degree, Stabilization tau);
    Discretization(Mesh1D mesh, int degree, double uniform_tau = 1.0);
};

/// One time level of the discrete solution: modal coefficients of u and q
/// (one column of k+1 Legendre coefficients per element) and the trace
/// values u_hat (one per face). Boundary trace entries always hold the
/// Dirichlet data, which is also kept in g_left/g_right.
struct HDGState {
    double time = 0.0;
    Eigen::MatrixXd u;
    Eigen::MatrixXd q;
    Eigen::VectorXd trace;
    double g_left = 0.0;
    double g_right = 0.0;
};

/// Data of the transient model problem: fractional order, initial value,
/// (time-independent) Dirichlet boundary values, and source term. An exact
/// initial flux q0 = -u0' may be supplied to initialize through the coupled
/// element projection.
struct TransientProblem {
    double alpha = 0.5;
    SpaceFn u0;
    double g_left = 0.0;
    double g_right = 0.0;
    SpaceTimeFn f;
    std::optional<SpaceFn> q0;
};

/// Element-local block of the implicit step, acting on the stacked unknown
/// [q; u] (k+1 coefficients each):
///
///   (q, r) - (u, r') + [u_hat r n]                   = 0
///   kappa (u, w) + (1/2)(-(q, w') + <q_hat n, w>)    = (load, w)
///
/// together with everything static condensation needs: the trace columns
/// moved to the right-hand side, the rows extracting q_hat n at each face,
/// and the 2x2 response of those fluxes to the element's two traces.
struct LocalMatrices {
    int degree = 0;
    double tau_left = 0.0;
    double tau_right = 0.0;
    Eigen::MatrixXd system;
    Eigen::FullPivLU<Eigen::MatrixXd> solver;
    Eigen::MatrixXd trace_coupling;
    Eigen::MatrixXd flux_rows;
    Eigen::MatrixXd recovery;
    Eigen::Matrix2d trace_block;
};

/// Build the local block for one element. kappa is the implicit reaction
/// coefficient beta_{j,j}/delta^2 of the slab-averaged memory term; kappa=0
/// gives the steady local operator used by projections and tests. Throws
/// std::invalid_argument for negative tau or kappa.
LocalMatrices assemble_local(const Element& element, int degree,
                             double tau_left, double tau_right, double kappa);

/// LDL^T factorization of a symmetric positive definite tridiagonal matrix.
/// Throws std::runtime_error if a pivot is not positive.
class TridiagonalCholesky {
public:
    TridiagonalCholesky() = default;
    /// diag holds the n main-diagonal entries, off the n-1 subdiagonal ones.
    TridiagonalCholesky(const Eigen::VectorXd& diag, const Eigen::VectorXd& off);

    int size() const { return static_cast<int>(d_.size()); }
    Eigen::VectorXd solve(const Eigen::VectorXd& rhs) const;

private:
    Eigen::VectorXd d_;
    Eigen::VectorXd l_;
};

/// Solution of one implicit step.
struct CondensedSolution {
    Eigen::MatrixXd q;
    Eigen::MatrixXd u;
    Eigen::VectorXd trace;
};

/// Statically condensed implicit step: per-element factorizations plus the
/// factorized trace system on interior faces. Built once per run and reused
/// across all time steps (kappa is constant for a uniform step size).
class CondensedStep {
public:
    CondensedStep(std::vector<LocalMatrices> locals, double kappa);

    double kappa() const { return kappa_; }
    int num_elements() const { return static_cast<int>(locals_.size()); }
    const LocalMatrices& local(int e) const { return locals_.at(e); }

    /// Solve the step for given per-element load moments (one (k+1)-column
    /// per element) and Dirichlet boundary values: traces from the
    /// tridiagonal system, then element-by-element recovery of (q, u).
    CondensedSolution apply(const Eigen::MatrixXd& loads,
                            double g_left, double g_right) const;

private:
    std::vector<LocalMatrices> locals_;
    TridiagonalCholesky trace_solver_;
    double kappa_ = 0.0;
};

/// Condense the per-step system of a whole discretization. Throws
/// std::runtime_error naming the element if any local block is singular.
CondensedStep condense(std::vector<LocalMatrices> locals, double kappa);
CondensedStep condense(const Discretization& disc, double kappa);

/// Coupled element projection (Pi_V q, Pi_W u) of an exact pair: moments
/// against P_{k-1} are matched for both components, and the two stabilized
/// flux traces q n + tau u are matched at the faces. Requires a positive
/// tau on at least one face (std::runtime_error otherwise).
struct ProjectionPair {
    Eigen::VectorXd q;
    Eigen::VectorXd u;
};

ProjectionPair hdg_projection(const SpaceFn& u, const SpaceFn& q,
                              const Element& element, int degree,
                              double tau_left, double tau_right);

/// State at t = 0: u from the projection of u0 (through the coupled pair
/// projection when q0 is supplied), interior traces from the mean of the
/// two adjacent element traces, boundary traces from g, and q re-solved
/// element-locally so the first local equation holds exactly.
HDGState initialize(const Discretization& disc, const SpaceFn& u0,
                    double g_left, double g_right,
                    const std::optional<SpaceFn>& q0 = std::nullopt);

/// Right-hand-side moments of step j for every element: the time-averaged
/// source, the reaction and history parts of the memory term, and the
/// explicit Crank-Nicolson half of the level j-1 flux terms.
Eigen::MatrixXd build_step_loads(const Discretization& disc,
                                 const KernelWeights& weights,
                                 const std::vector<Eigen::MatrixXd>& u_history,
                                 const HDGState& previous,
                                 const SpaceTimeFn& f);

/// Advance one time step. u_history must hold the u coefficients of levels
/// 0..j-1 (the last entry being previous.u) and weights must belong to step
/// j; step must have been condensed with kappa = weights.latest()/delta^2
/// (std::invalid_argument otherwise).
HDGState solve_step(const Discretization& disc, const CondensedStep& step,
                    const KernelWeights& weights,
                    const std::vector<Eigen::MatrixXd>& u_history,
                    const HDGState& previous, const SpaceTimeFn& f);

/// Maximum residual of the first local equation over all elements and test
/// functions; every state produced by this module keeps it at roundoff.
double local_equation_residual(const Discretization& disc, const HDGState& state);

struct TransientResult {
    HDGState state;
    std::vector<Eigen::MatrixXd> u_history;
    double delta = 0.0;
    int steps = 0;
};

/// March from t = 0 to final_time with uniform step delta, which must
/// divide final_time up to rounding (std::invalid_argument otherwise).
/// Keeps the full u history, which the memory term needs anyway.
TransientResult run_transient(const Discretization& disc,
                              const TransientProblem& problem,
                              double delta, double final_time);

} // namespace fhdg
