#include "ffem/thermoelastic.hpp"

#include "ffem/quadrature.hpp"

#include <cmath>

namespace ffem {

namespace {

double thermal_modulus(const BeamSpec& spec) {
    return (3.0 * spec.lame_lambda() + 2.0 * spec.lame_mu()) * spec.alpha0;
}

}  // namespace

Tensor3 isotropic_stress_3d(const Tensor3& strain, double theta, const BeamSpec& spec) {
    const double lambda = spec.lame_lambda();
    const double mu = spec.lame_mu();
    const double trace = strain.trace();
    Tensor3 sigma = 2.0 * mu * strain;
    sigma.diagonal().array() += lambda * trace - thermal_modulus(spec) * theta;
    return sigma;
}

double entropy_density(const Tensor3& strain, double theta, const BeamSpec& spec) {
    return thermal_modulus(spec) * strain.trace() / spec.rho0 + spec.Cv0 * theta / spec.T0;
}

double helmholtz_density(const Tensor3& strain, double theta, const BeamSpec& spec) {
    const double trace = strain.trace();
    return 0.5 * spec.lame_lambda() * trace * trace + spec.lame_mu() * strain.squaredNorm() -
           thermal_modulus(spec) * trace * theta - spec.rho0 * spec.Cv0 * theta * theta / (2.0 * spec.T0);
}

StrainState fractional_strains(const DisplacementProfile& u0, const DisplacementProfile& w0,
                               double x, double L, const FractionalParams& params,
                               const SingularQuadRule& rule, bool linear) {
    const Horizon horizon = truncated_length_scales(x, L, params);
    const double du = rc_derivative(u0.d1, horizon, rule);
    const double dw = rc_derivative(w0.d1, horizon, rule);
    const double dslope = rc_derivative(w0.d2, horizon, rule);
    StrainState s;
    s.x = x;
    s.eps0 = linear ? du : du + 0.5 * dw * dw;
    s.kappa = -dslope;
    return s;
}

double beam_axial_stress(const StrainState& strain, double x3, double theta, const BeamSpec& spec) {
    if (std::abs(x3) > 0.5 * spec.h * (1.0 + 1e-12)) {
        throw DomainError("thickness coordinate outside [-h/2, h/2]");
    }
    return spec.E * (strain.eps0 + x3 * strain.kappa - spec.alpha0 * theta);
}

ThermalResultants thermal_resultants(const ThermalField& field, double x1, const BeamSpec& spec) {
    const double Eba = spec.E * spec.b * spec.alpha0;
    const double h = spec.h;
    const double m = field.magnitude();
    switch (field.kind()) {
        case ThermalField::Kind::none:
            return {};
        case ThermalField::Kind::uniform:
            return {Eba * h * m, 0.0};
        case ThermalField::Kind::linear_thickness:
            // int (1 + 2 x3/h) dx3 = h, int x3 (1 + 2 x3/h) dx3 = h^2 / 6
            return {Eba * m * h, Eba * m * h * h / 6.0};
        case ThermalField::Kind::parabolic_length:
            return {Eba * h * field.value(x1, 0.0, spec), 0.0};
        case ThermalField::Kind::custom: {
            static const QuadRule rule = gauss_legendre(8);
            ThermalResultants r;
            r.N_theta = Eba * integrate(rule, [&](double z) { return field.value(x1, z, spec); },
                                        -0.5 * h, 0.5 * h);
            r.M_theta = Eba * integrate(rule, [&](double z) { return z * field.value(x1, z, spec); },
                                        -0.5 * h, 0.5 * h);
            return r;
        }
    }
    return {};
}

Resultants stress_resultants(const StrainState& strain, const ThermalField& field,
                             const BeamSpec& spec) {
    const ThermalResultants t = thermal_resultants(field, strain.x, spec);
    Resultants r;
    r.N_theta = t.N_theta;
    r.M_theta = t.M_theta;
    r.N = spec.A11() * strain.eps0 - t.N_theta;
    r.M = spec.D11() * strain.kappa - t.M_theta;
    return r;
}

double normalized_stress(double sigma11, double q0, const BeamSpec& spec) {
    if (q0 == 0.0) throw NormalizationError("stress normalization undefined for q0 = 0");
    const double ratio = spec.h / spec.L;
    return ratio * ratio * sigma11 / q0;
}

}  // namespace ffem
