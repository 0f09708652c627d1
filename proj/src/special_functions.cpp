#include "fhdg/special_functions.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fhdg {

namespace {

// Lanczos coefficients for g = 7.
constexpr double kLanczos[9] = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
};

constexpr double kG = 7.0;

double lanczos_positive(double z)
{
    // Valid for z >= 0.5; callers handle the reflection.
    const double x = z - 1.0;
    double acc = kLanczos[0];
    for (int i = 1; i < 9; ++i)
        acc += kLanczos[i] / (x + i);
    const double t = x + kG + 0.5;
    return std::sqrt(2.0 * std::numbers::pi) * std::pow(t, x + 0.5) * std::exp(-t) * acc;
}

} // namespace

double gamma_fn(double x)
{
    if (x <= 0.0 && x == std::floor(x))
        throw std::domain_error("gamma_fn: nonpositive integer argument");
    if (x < 0.5) {
        // Reflection formula; 1 - x lands in the well-conditioned range.
        const double pi = std::numbers::pi;
        return pi / (std::sin(pi * x) * lanczos_positive(1.0 - x));
    }
    return lanczos_positive(x);
}

double omega(double alpha, double t)
{
    if (alpha <= 0.0)
        throw std::invalid_argument("omega: requires alpha > 0");
    if (t <= 0.0)
        throw std::domain_error("omega: requires t > 0");
    return std::pow(t, alpha - 1.0) / gamma_fn(alpha);
}

double coercivity_constant(double alpha)
{
    if (alpha <= 0.0 || alpha >= 1.0)
        throw std::invalid_argument("coercivity_constant: requires 0 < alpha < 1");
    return std::cos(alpha * std::numbers::pi / 2.0);
}

} // namespace fhdg
