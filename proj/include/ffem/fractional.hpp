#pragma once

// Riesz-Caputo fractional derivatives on asymmetric, boundary-truncated horizons,
// the companion Riesz fractional integral and Riesz Riemann-Liouville derivative,
// and the attenuation kernel that turns them into weighted averages of f'.

#include "ffem/errors.hpp"
#include "ffem/quadrature.hpp"

#include <algorithm>
#include <functional>
#include <span>
#include <vector>

namespace ffem {

/// Order and nominal horizon length of the fractional model.
struct FractionalParams {
    double alpha = 1.0;  ///< order in (0, 1]; 1 is the local limit
    double l_f = 0.1;    ///< nominal horizon length [m]

    bool is_local() const noexcept { return alpha >= 1.0; }

    /// Throws DomainError when alpha is outside (0,1] or l_f <= 0.
    void validate() const;
};

/// Left/right interaction lengths at a point x: the horizon is (x - l_A, x + l_B).
struct Horizon {
    double l_A = 0.0;
    double l_B = 0.0;
    double x = 0.0;

    double left_end() const noexcept { return x - l_A; }
    double right_end() const noexcept { return x + l_B; }
};

/// l_A = min(l_f, x), l_B = min(l_f, L - x). Throws DomainError for x outside [0, L].
Horizon truncated_length_scales(double x, double L, const FractionalParams& params);

/// Kernel value 1/2 (1-alpha) l^(alpha-1) |x-s|^(-alpha) with l = l_A for s < x and
/// l = l_B for s > x. Throws SingularPointError at s == x and DomainError outside the
/// open horizon.
double attenuation_weight(double x, double s, const Horizon& horizon, double alpha);

/// A side shorter than this fraction of the total horizon is treated as degenerate
/// and contributes 1/2 f'(x).
inline constexpr double kDegenerateSide = 1e-12;

using ScalarFn = std::function<double(double)>;

/// Riesz-Caputo derivative of f at horizon.x, given f'. Computed in kernel form
///   D^a f(x) = int A(x, s) f'(s) ds
/// over the horizon. Each side is integrated with the Gauss-Jacobi part of `rule` from
/// the singular point; when `breakpoints` are given (e.g. kinks of f'), each side is
/// split there and pieces away from x use the regular Gauss-Legendre part.
double rc_derivative(const ScalarFn& dfds, const Horizon& horizon, const SingularQuadRule& rule,
                     std::span<const double> breakpoints = {});

/// rc_derivative with an error estimate from a rule of doubled Jacobi order.
struct Estimate {
    double value = 0.0;
    double error = 0.0;
    bool accurate(double tol) const noexcept { return error <= tol; }
};
Estimate rc_derivative_estimate(const ScalarFn& dfds, const Horizon& horizon,
                                const SingularQuadRule& rule);

/// Riesz-type fractional integral I^(1-alpha) g at horizon.x. The left integral spans
/// (x - l_B, x) and the right one (x, x + l_A), each with its length's prefactor.
double riesz_integral(const ScalarFn& g, const Horizon& horizon, const SingularQuadRule& rule);

/// Same integral with frozen terminals (a, b) and frozen prefactor lengths, evaluated at
/// an arbitrary x in (a, b). Differentiating this in x reproduces the Riesz
/// Riemann-Liouville derivative at the point that defined the terminals.
double riesz_integral_between(const ScalarFn& g, double x, double a, double b,
                              double prefactor_left, double prefactor_right,
                              const SingularQuadRule& rule);

/// Riesz Riemann-Liouville derivative of g at horizon.x. The interval is the terminal-
/// swapped one, (x - l_B, x + l_A). Needs g and g'.
double riesz_rl_derivative(const ScalarFn& g, const ScalarFn& dgds, const Horizon& horizon,
                           const SingularQuadRule& rule);

}  // namespace ffem
