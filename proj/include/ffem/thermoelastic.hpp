#pragma once

// Pointwise thermoelastic constitutive relations and beam-level strains, stresses and
// resultants.

#include "ffem/beam.hpp"
#include "ffem/fractional.hpp"

#include <Eigen/Core>

namespace ffem {

using Tensor3 = Eigen::Matrix3d;

/// sigma_ij = lambda delta_ij eps_kk + 2 mu eps_ij - (3 lambda + 2 mu) alpha0 delta_ij theta
Tensor3 isotropic_stress_3d(const Tensor3& strain, double theta, const BeamSpec& spec);

/// Entropy per unit mass.
double entropy_density(const Tensor3& strain, double theta, const BeamSpec& spec);

/// Helmholtz free energy per unit volume.
double helmholtz_density(const Tensor3& strain, double theta, const BeamSpec& spec);

/// Fractional midplane strain and curvature at a point.
struct StrainState {
    double eps0 = 0.0;
    double kappa = 0.0;
    double x = 0.0;
};

/// Axial and transverse midplane displacement together with the derivatives the
/// fractional strains need.
struct DisplacementProfile {
    ScalarFn value;
    ScalarFn d1;
    ScalarFn d2;
};

/// eps0 = D^a u0 + 1/2 (D^a w0)^2 and kappa = -D^a (w0') on the truncated horizon at x.
/// Pass linear = true to drop the von Karman term.
StrainState fractional_strains(const DisplacementProfile& u0, const DisplacementProfile& w0,
                               double x, double L, const FractionalParams& params,
                               const SingularQuadRule& rule, bool linear = false);

/// sigma11 = E (eps0 + x3 kappa - alpha0 theta). Throws DomainError for |x3| > h/2.
double beam_axial_stress(const StrainState& strain, double x3, double theta, const BeamSpec& spec);

struct ThermalResultants {
    double N_theta = 0.0;
    double M_theta = 0.0;
};

/// E b alpha0 int {1, x3} theta dx3; closed forms for the built-in field kinds.
ThermalResultants thermal_resultants(const ThermalField& field, double x1, const BeamSpec& spec);

struct Resultants {
    double N = 0.0;
    double M = 0.0;
    double N_theta = 0.0;
    double M_theta = 0.0;
};

/// N = A11 eps0 - N_theta and M = D11 kappa - M_theta, i.e. the thickness integrals of
/// beam_axial_stress and x3 * beam_axial_stress.
Resultants stress_resultants(const StrainState& strain, const ThermalField& field,
                             const BeamSpec& spec);

/// (1/q0)(h/L)^2 sigma11. Throws NormalizationError for q0 == 0.
double normalized_stress(double sigma11, double q0, const BeamSpec& spec);

}  // namespace ffem
