#include "ffem/beam.hpp"

#include <cmath>
#include <sstream>

namespace ffem {

std::string_view to_string(BoundaryCondition bc) {
    switch (bc) {
        case BoundaryCondition::clamped: return "clamped";
        case BoundaryCondition::pinned: return "pinned";
        case BoundaryCondition::pinned_movable: return "pinned-movable";
        case BoundaryCondition::free: return "free";
    }
    return "?";
}

BoundaryCondition parse_boundary_condition(std::string_view name) {
    if (name == "clamped") return BoundaryCondition::clamped;
    if (name == "pinned") return BoundaryCondition::pinned;
    if (name == "pinned-movable") return BoundaryCondition::pinned_movable;
    if (name == "free") return BoundaryCondition::free;
    throw DomainError("unknown boundary condition '" + std::string(name) +
                      "' (expected clamped, pinned, pinned-movable or free)");
}

double BeamSpec::lame_lambda() const noexcept {
    if (lambda > 0.0) return lambda;
    return E * nu / ((1.0 + nu) * (1.0 - 2.0 * nu));
}

double BeamSpec::lame_mu() const noexcept {
    if (mu > 0.0) return mu;
    return E / (2.0 * (1.0 + nu));
}

void BeamSpec::validate() const {
    auto positive = [](double v, const char* name) {
        if (!(v > 0.0)) throw DomainError(std::string(name) + " must be positive");
    };
    positive(L, "L");
    positive(b, "b");
    positive(h, "h");
    positive(E, "E");
    positive(T0, "T0");
    positive(rho0, "rho0");
    if (!(nu > -1.0 && nu < 0.5)) throw DomainError("nu must lie in (-1, 0.5)");
    if (!std::isfinite(alpha0)) throw DomainError("alpha0 must be finite");
}

std::vector<std::string> BeamSpec::warnings() const {
    std::vector<std::string> out;
    if (L / h < 20.0) {
        std::ostringstream os;
        os << "slenderness L/h = " << L / h << " is below 20; Euler-Bernoulli kinematics may be inaccurate";
        out.push_back(os.str());
    }
    return out;
}

ThermalField ThermalField::scaled(double factor) const {
    ThermalField f = *this;
    f.magnitude_ *= factor;
    return f;
}

double ThermalField::value(double x1, double x3, const BeamSpec& spec) const {
    switch (kind_) {
        case Kind::none: return 0.0;
        case Kind::uniform: return magnitude_;
        case Kind::linear_thickness: return magnitude_ * (1.0 + 2.0 * x3 / spec.h);
        case Kind::parabolic_length: {
            const double r = x1 / spec.L;
            return magnitude_ * (1.0 - r) * r;
        }
        case Kind::custom: return magnitude_ * fn_(x1, x3);
    }
    return 0.0;
}

std::string_view to_string(ThermalField::Kind kind) {
    switch (kind) {
        case ThermalField::Kind::none: return "none";
        case ThermalField::Kind::uniform: return "uniform";
        case ThermalField::Kind::linear_thickness: return "linear_thickness";
        case ThermalField::Kind::parabolic_length: return "parabolic_length";
        case ThermalField::Kind::custom: return "custom";
    }
    return "?";
}

ThermalField::Kind parse_thermal_kind(std::string_view name) {
    if (name == "none") return ThermalField::Kind::none;
    if (name == "uniform") return ThermalField::Kind::uniform;
    if (name == "linear_thickness") return ThermalField::Kind::linear_thickness;
    if (name == "parabolic_length") return ThermalField::Kind::parabolic_length;
    throw DomainError("unknown thermal field kind '" + std::string(name) +
                      "' (expected none, uniform, linear_thickness or parabolic_length)");
}

}  // namespace ffem
