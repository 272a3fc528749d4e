#include "ffem/mesh.hpp"

#include <algorithm>
#include <cmath>

namespace ffem {

Mesh::Mesh(double L, int elements) : L_(L), ne_(elements), le_(L / elements) {
    if (!(L > 0.0)) throw DomainError("mesh length must be positive");
    if (elements < 1) throw DomainError("mesh needs at least one element");
}

Mesh Mesh::from_horizon(double L, double l_f, double n_inf) {
    if (!(l_f > 0.0) || !(n_inf > 0.0)) throw DomainError("l_f and N_inf must be positive");
    const int ne = std::max(2, static_cast<int>(std::lround(n_inf * L / l_f)));
    return Mesh(L, ne);
}

int Mesh::element_of(double x, bool prefer_left) const {
    const double r = x / le_;
    int e = static_cast<int>(std::floor(r));
    if (prefer_left && e > 0 && std::abs(r - e) < 1e-12) --e;
    return std::clamp(e, 0, ne_ - 1);
}

ShapeValues shape_polynomials(double xi, double le) noexcept {
    const double r = xi / le;
    ShapeValues s;
    s.lagrange = {1.0 - r, r};
    s.dlagrange = {-1.0 / le, 1.0 / le};
    s.hermite = {1.0 - 3.0 * r * r + 2.0 * r * r * r,
                 xi * (1.0 - 2.0 * r + r * r),
                 3.0 * r * r - 2.0 * r * r * r,
                 xi * (r * r - r)};
    s.dhermite = {(-6.0 * r + 6.0 * r * r) / le,
                  1.0 - 4.0 * r + 3.0 * r * r,
                  (6.0 * r - 6.0 * r * r) / le,
                  3.0 * r * r - 2.0 * r};
    s.d2hermite = {(-6.0 + 12.0 * r) / (le * le),
                   (-4.0 + 6.0 * r) / le,
                   (6.0 - 12.0 * r) / (le * le),
                   (6.0 * r - 2.0) / le};
    return s;
}

ShapeValues shape_functions(double xi, double le) {
    const double tol = 1e-12 * le;
    if (xi < -tol || xi > le + tol) throw DomainError("local coordinate outside element");
    return shape_polynomials(xi, le);
}

DofMap::DofMap(const Mesh& mesh, BoundaryCondition left, BoundaryCondition right)
    : n_(per_node * mesh.nodes()), left_(left), right_(right), reduced_(n_, 0) {
    auto constrain = [&](int node, BoundaryCondition bc) {
        switch (bc) {
            case BoundaryCondition::clamped:
                constrained_.push_back(axial(node));
                constrained_.push_back(deflection(node));
                constrained_.push_back(slope(node));
                break;
            case BoundaryCondition::pinned:
                constrained_.push_back(axial(node));
                constrained_.push_back(deflection(node));
                break;
            case BoundaryCondition::pinned_movable:
                constrained_.push_back(deflection(node));
                break;
            case BoundaryCondition::free:
                break;
        }
    };
    constrain(0, left);
    constrain(mesh.nodes() - 1, right);
    std::sort(constrained_.begin(), constrained_.end());
    for (int d : constrained_) reduced_[d] = -1;
    int next = 0;
    for (int d = 0; d < n_; ++d) {
        if (reduced_[d] == 0) {
            reduced_[d] = next++;
            free_.push_back(d);
        }
    }
}

void DofMap::require_no_rigid_modes() const {
    auto holds_axial = [](BoundaryCondition bc) {
        return bc == BoundaryCondition::clamped || bc == BoundaryCondition::pinned;
    };
    auto holds_deflection = [](BoundaryCondition bc) { return bc != BoundaryCondition::free; };
    const bool axial_ok = holds_axial(left_) || holds_axial(right_);
    const bool transverse_ok = left_ == BoundaryCondition::clamped ||
                               right_ == BoundaryCondition::clamped ||
                               (holds_deflection(left_) && holds_deflection(right_));
    if (!axial_ok || !transverse_ok) {
        throw SingularSystemError(std::string("end conditions ") + std::string(to_string(left_)) +
                                  "-" + std::string(to_string(right_)) +
                                  " leave a rigid-body mode");
    }
}

}  // namespace ffem
