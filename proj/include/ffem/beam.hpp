#pragma once

#include "ffem/errors.hpp"

#include <functional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ffem {

enum class BoundaryCondition {
    clamped,         ///< u0 = w0 = w0' = 0
    pinned,          ///< u0 = w0 = 0
    pinned_movable,  ///< w0 = 0, axial motion free
    free,
};

std::string_view to_string(BoundaryCondition bc);
/// Accepts "clamped", "pinned", "pinned-movable", "free". Throws DomainError otherwise.
BoundaryCondition parse_boundary_condition(std::string_view name);

/// Geometry, isotropic thermoelastic material and end conditions of a beam.
struct BeamSpec {
    double L = 1.0;
    double b = 1.0;
    double h = 0.01;
    double E = 70e9;
    double alpha0 = 23e-6;  ///< thermal expansion coefficient [1/K]
    double nu = 0.3;        ///< only used to default the Lame parameters
    double lambda = 0.0;    ///< Lame lambda; non-positive means "derive from E, nu"
    double mu = 0.0;        ///< Lame mu; non-positive means "derive from E, nu"
    double rho0 = 2700.0;
    double Cv0 = 900.0;
    double T0 = 293.15;
    BoundaryCondition bc_left = BoundaryCondition::pinned;
    BoundaryCondition bc_right = BoundaryCondition::pinned;

    double A11() const noexcept { return E * b * h; }
    double D11() const noexcept { return E * b * h * h * h / 12.0; }
    double lame_lambda() const noexcept;
    double lame_mu() const noexcept;

    /// Throws DomainError for non-physical values.
    void validate() const;
    /// Non-fatal modelling warnings (e.g. L/h below 20).
    std::vector<std::string> warnings() const;
};

/// Prescribed temperature difference theta(x1, x3) above the reference temperature.
class ThermalField {
public:
    enum class Kind { none, uniform, linear_thickness, parabolic_length, custom };

    using Fn = std::function<double(double x1, double x3)>;

    ThermalField() = default;
    static ThermalField none() { return {}; }
    static ThermalField uniform(double theta0) { return ThermalField(Kind::uniform, theta0); }
    /// theta = theta1 (1 + 2 x3 / h)
    static ThermalField linear_thickness(double theta1) {
        return ThermalField(Kind::linear_thickness, theta1);
    }
    /// theta = theta1 (1 - x1/L)(x1/L)
    static ThermalField parabolic_length(double theta1) {
        return ThermalField(Kind::parabolic_length, theta1);
    }
    /// Arbitrary field; resultants use 8-point Gauss-Legendre over the thickness.
    static ThermalField custom(Fn fn) {
        ThermalField f(Kind::custom, 1.0);
        f.fn_ = std::move(fn);
        return f;
    }

    Kind kind() const noexcept { return kind_; }
    double magnitude() const noexcept { return magnitude_; }
    bool is_zero() const noexcept { return kind_ == Kind::none || magnitude_ == 0.0; }

    /// Same field with its magnitude multiplied by `factor`.
    ThermalField scaled(double factor) const;

    double value(double x1, double x3, const BeamSpec& spec) const;

private:
    ThermalField(Kind kind, double magnitude) : kind_(kind), magnitude_(magnitude) {}

    Kind kind_ = Kind::none;
    double magnitude_ = 0.0;
    Fn fn_;
};

std::string_view to_string(ThermalField::Kind kind);
ThermalField::Kind parse_thermal_kind(std::string_view name);

}  // namespace ffem
