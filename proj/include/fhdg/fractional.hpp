#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

namespace fhdg {

/// Fractional order restricted to the open interval (0, 1).
struct FracOrder {
    explicit FracOrder(double a);
    double value;
};

/// Convolution weights beta_{j,i}, i = 1..j, of the generalized
/// Crank-Nicolson discretization of the memory term
///
///   J u(t_j) = int_{t_{j-1}}^{t_j} int_0^t w_a(t-s) ubar(s) ds dt,
///
/// with ubar piecewise constant equal to (u^i - u^{i-1})/delta on
/// (t_{i-1}, t_i). Each weight is a centered second difference of
/// w_{a+2}: beta_{j,i} = delta^{a+1}/Gamma(a+2) * d2(j-i) with
/// d2(m) = (m+1)^{a+1} - 2 m^{a+1} + (m-1)^{a+1} and d2(0) = 1.
///
/// For m > 1000 the second difference loses ~m^2 ulps to cancellation,
/// so it switches to a 4-term even Taylor expansion in 1/m.
class KernelWeights {
public:
    KernelWeights(FracOrder alpha, double delta, int step);

    double alpha() const { return alpha_; }
    double delta() const { return delta_; }
    int step() const { return step_; }

    /// beta_{j,i} for 1 <= i <= j.
    double weight(int i) const { return weights_.at(i - 1); }
    /// All weights, index 0 holding beta_{j,1}.
    const std::vector<double>& weights() const { return weights_; }
    /// beta_{j,j} = w_{a+2}(delta); divided by delta^2 it is the implicit
    /// reaction coefficient kappa of the slab-averaged time step.
    double latest() const { return weights_.back(); }

private:
    double alpha_;
    double delta_;
    int step_;
    std::vector<double> weights_;
};

KernelWeights cn_weights(double alpha, double delta, int step);

/// History contribution of the memory term at step j:
///
///   sum_{i=1}^{j-1} beta_{j,i}/delta * (u^i - u^{i-1}),
///
/// the i = j term being part of the implicit left-hand side. `history`
/// must hold the j levels u^0..u^{j-1}; columns are elements, rows are
/// modal coefficients. Returns the zero matrix for j = 1.
Eigen::MatrixXd memory_term(const std::vector<Eigen::MatrixXd>& history,
                            const KernelWeights& weights);

/// A function of time given by samples at strictly increasing points;
/// evaluation happens on the piecewise-linear interpolant.
struct TimeSamples {
    std::vector<double> times;
    std::vector<double> values;
};

/// Riemann-Liouville integral int_0^t w_a(t-s) v(s) ds for 0 < alpha <= 1,
/// with the kernel integrated exactly against the piecewise-linear
/// interpolant of the samples (so the weak singularity at s = t costs no
/// accuracy). The samples must start at 0 and cover t.
double riemann_liouville_integral(double alpha, const TimeSamples& v, double t);

/// Both sides of the coercivity bound
///
///   int_0^T (I^a v, v) dt >= cos(a*pi/2) int_0^T (I^{a/2} v)^2 dt
///
/// for a sampled v on [0, T], T = v.times.back(). Returns (lhs, rhs).
/// Test support; the solver itself never calls it.
std::pair<double, double> coercivity_check(double alpha, const TimeSamples& v);

} // namespace fhdg
