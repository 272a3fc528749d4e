#pragma once

// Nonlocal strain-displacement rows: the attenuation kernel convolved with the
// integer-order shape-function derivatives, mapped onto global dofs.

#include "ffem/fractional.hpp"
#include "ffem/mesh.hpp"

#include <Eigen/Core>

#include <vector>

namespace ffem {

struct QuadratureOptions {
    int jacobi_points = 6;    ///< per singular-anchored integral
    int legendre_points = 8;  ///< regular pieces of closed-form integrands
    int outer_points = 4;     ///< Gauss-Legendre points per element for outer integrals
};

/// Rows for (D^a u0, D^a w0, D^a w0') at x over the contiguous global dof window
/// [offset, offset + size).
struct NonlocalRow {
    double x = 0.0;
    int offset = 0;
    Eigen::VectorXd u;
    Eigen::VectorXd w;
    Eigen::VectorXd theta;

    int size() const noexcept { return static_cast<int>(u.size()); }
    const Eigen::VectorXd& of(RowKind kind) const noexcept {
        return kind == RowKind::u ? u : kind == RowKind::w ? w : theta;
    }
    /// Row applied to a global state vector.
    double apply(RowKind kind, const Eigen::VectorXd& state) const {
        return of(kind).dot(state.segment(offset, size()));
    }
};

/// First and last node touched by the truncated horizon at x.
std::pair<int, int> horizon_nodes(double x, const Mesh& mesh, const FractionalParams& params);

/// Nonlocal rows at x, over the window of horizon_nodes(x).
NonlocalRow nonlocal_B_row(double x, const Mesh& mesh, const FractionalParams& params,
                           const SingularQuadRule& rule);

/// Nonlocal rows at x written into a caller-chosen node window that covers the horizon.
NonlocalRow nonlocal_B_row(double x, const Mesh& mesh, const FractionalParams& params,
                           const SingularQuadRule& rule, int first_node, int last_node);

/// Integer-order rows (dL/dx, dH/dx, d2H/dx2) at x over the given node window.
NonlocalRow local_B_row(double x, const Mesh& mesh, int first_node, int last_node);

/// Rows cached at the outer Gauss points of every element. Immutable after construction.
class NonlocalOperator {
public:
    struct Point {
        double x = 0.0;
        double weight = 0.0;
        NonlocalRow nonlocal;
        NonlocalRow local;
    };
    struct Element {
        int offset = 0;  ///< first global dof of the element's window
        int size = 0;
        std::vector<Point> points;
    };

    NonlocalOperator(const Mesh& mesh, const FractionalParams& params,
                     const QuadratureOptions& options = {});

    const std::vector<Element>& elements() const noexcept { return elements_; }
    const SingularQuadRule& rule() const noexcept { return rule_; }
    /// Largest |i - j| between coupled global dofs.
    int bandwidth() const noexcept { return bandwidth_; }

private:
    SingularQuadRule rule_;
    std::vector<Element> elements_;
    int bandwidth_ = 0;
};

}  // namespace ffem
