#pragma once

#include "ffem/beam.hpp"

#include <array>
#include <vector>

namespace ffem {

/// Uniform two-noded discretization of [0, L].
class Mesh {
public:
    Mesh(double L, int elements);

    /// Element count chosen so that l_f / le = n_inf (rounded, at least 2).
    static Mesh from_horizon(double L, double l_f, double n_inf);

    double length() const noexcept { return L_; }
    int elements() const noexcept { return ne_; }
    int nodes() const noexcept { return ne_ + 1; }
    double element_length() const noexcept { return le_; }
    double node(int i) const noexcept { return i * le_; }

    /// Element containing x; points on an interior node belong to the element on their
    /// right unless `prefer_left`.
    int element_of(double x, bool prefer_left = false) const;

private:
    double L_;
    int ne_;
    double le_;
};

/// Linear Lagrange pair for u0 and cubic Hermite quadruple for (w0, w0') on one element,
/// with derivatives. Local coordinate xi in [0, le]; slope dofs are dimensional.
struct ShapeValues {
    std::array<double, 2> lagrange{};
    std::array<double, 2> dlagrange{};
    std::array<double, 4> hermite{};
    std::array<double, 4> dhermite{};
    std::array<double, 4> d2hermite{};
};

/// Throws DomainError for xi outside [0, le].
ShapeValues shape_functions(double xi, double le);

/// Same polynomials evaluated anywhere on the real line (continuation past the element).
ShapeValues shape_polynomials(double xi, double le) noexcept;

/// Kinds of rows that act on the nodal values.
enum class RowKind { u, w, theta };

/// Node-interleaved global numbering: node i owns (u0, w0, w0') at 3i, 3i+1, 3i+2.
class DofMap {
public:
    DofMap(const Mesh& mesh, BoundaryCondition left, BoundaryCondition right);

    static constexpr int per_node = 3;
    static int axial(int node) noexcept { return per_node * node; }
    static int deflection(int node) noexcept { return per_node * node + 1; }
    static int slope(int node) noexcept { return per_node * node + 2; }

    int size() const noexcept { return n_; }
    BoundaryCondition left() const noexcept { return left_; }
    BoundaryCondition right() const noexcept { return right_; }
    const std::vector<int>& constrained() const noexcept { return constrained_; }
    const std::vector<int>& free() const noexcept { return free_; }
    /// Reduced index of a global dof, or -1 when constrained.
    int reduced(int dof) const noexcept { return reduced_[dof]; }
    bool is_constrained(int dof) const noexcept { return reduced_[dof] < 0; }

    /// Throws SingularSystemError when the end conditions leave a rigid-body mode.
    void require_no_rigid_modes() const;

private:
    int n_;
    BoundaryCondition left_;
    BoundaryCondition right_;
    std::vector<int> constrained_;
    std::vector<int> free_;
    std::vector<int> reduced_;
};

}  // namespace ffem
