#include "ffem/nonlocal_operator.hpp"

#include <cmath>

namespace ffem {

namespace {

// Adds factor * (shape derivatives of element e at local coordinate xi) to the rows.
void add_element(NonlocalRow& row, const Mesh& mesh, int e, double xi, double factor) {
    const ShapeValues s = shape_polynomials(xi, mesh.element_length());
    const int n0 = e;
    const int n1 = e + 1;
    const int off = row.offset;
    row.u(DofMap::axial(n0) - off) += factor * s.dlagrange[0];
    row.u(DofMap::axial(n1) - off) += factor * s.dlagrange[1];
    const int tdofs[4] = {DofMap::deflection(n0) - off, DofMap::slope(n0) - off,
                          DofMap::deflection(n1) - off, DofMap::slope(n1) - off};
    for (int k = 0; k < 4; ++k) {
        row.w(tdofs[k]) += factor * s.dhermite[k];
        row.theta(tdofs[k]) += factor * s.d2hermite[k];
    }
}

NonlocalRow empty_row(double x, int first_node, int last_node) {
    NonlocalRow row;
    row.x = x;
    row.offset = DofMap::axial(first_node);
    const int n = DofMap::per_node * (last_node - first_node + 1);
    row.u = Eigen::VectorXd::Zero(n);
    row.w = Eigen::VectorXd::Zero(n);
    row.theta = Eigen::VectorXd::Zero(n);
    return row;
}

// 1/2 len^(alpha-1) int over one side of the horizon, element by element. A piece
// [a, b] (distances from x) close to the singular point is the difference of two
// Gauss-Jacobi integrals anchored at x, exact for the continued element polynomials.
// Well separated pieces (b <= 2a) use Gauss-Legendre instead: continuing a shape
// polynomial back to x there cancels most of its digits.
void add_side(NonlocalRow& row, const Mesh& mesh, const SingularQuadRule& rule, double x,
              double len, bool left) {
    const double far = left ? x - len : x + len;
    const int e_first = left ? mesh.element_of(far) : mesh.element_of(x);
    const int e_last = left ? mesh.element_of(x, true) : mesh.element_of(far, true);
    const double alpha = rule.alpha();
    const double sign_dir = left ? -1.0 : 1.0;
    const double side = 0.5 * std::pow(len, alpha - 1.0);
    const auto& tau = rule.nodes();
    const auto& w = rule.weights();
    const QuadRule& gl = rule.legendre();
    for (int e = e_first; e <= e_last; ++e) {
        const double x0 = mesh.node(e);
        const double x1 = mesh.node(e + 1);
        double a;
        double b;
        if (left) {
            a = x - std::min(x1, x);
            b = x - std::max(x0, far);
        } else {
            a = std::max(x0, x) - x;
            b = std::min(x1, far) - x;
        }
        if (!(b > a)) continue;
        if (a > 0.0 && b <= 2.0 * a) {
            const double half = 0.5 * (b - a);
            const double mid = 0.5 * (a + b);
            for (std::size_t i = 0; i < gl.size(); ++i) {
                const double t = mid + half * gl.nodes[i];
                const double factor = side * (1.0 - alpha) * std::pow(t, -alpha) * half * gl.weights[i];
                add_element(row, mesh, e, x + sign_dir * t - x0, factor);
            }
            continue;
        }
        for (int anchor = 0; anchor < 2; ++anchor) {
            const double c = anchor == 0 ? b : a;
            if (c <= 0.0) continue;
            const double factor = (anchor == 0 ? 0.5 : -0.5) * std::pow(c / len, 1.0 - alpha);
            for (std::size_t i = 0; i < tau.size(); ++i) {
                const double s = x + sign_dir * c * tau[i];
                add_element(row, mesh, e, s - x0, factor * w[i]);
            }
        }
    }
}

}  // namespace

std::pair<int, int> horizon_nodes(double x, const Mesh& mesh, const FractionalParams& params) {
    const Horizon h = truncated_length_scales(x, mesh.length(), params);
    if (params.is_local()) {
        const int e = mesh.element_of(x);
        return {e, e + 1};
    }
    const int first = mesh.element_of(h.left_end());
    const int last = mesh.element_of(h.right_end(), true) + 1;
    // the element holding x itself is needed by degenerate sides
    const int e = mesh.element_of(x);
    return {std::min(first, e), std::max(last, e + 1)};
}

NonlocalRow local_B_row(double x, const Mesh& mesh, int first_node, int last_node) {
    NonlocalRow row = empty_row(x, first_node, last_node);
    const int e = mesh.element_of(x);
    add_element(row, mesh, e, x - mesh.node(e), 1.0);
    return row;
}

NonlocalRow nonlocal_B_row(double x, const Mesh& mesh, const FractionalParams& params,
                           const SingularQuadRule& rule, int first_node, int last_node) {
    const Horizon h = truncated_length_scales(x, mesh.length(), params);
    if (params.is_local() || rule.is_point_mass()) return local_B_row(x, mesh, first_node, last_node);
    NonlocalRow row = empty_row(x, first_node, last_node);
    const double tiny = kDegenerateSide * (h.l_A + h.l_B);
    if (h.l_A <= tiny) {
        const int e = mesh.element_of(x, true);
        add_element(row, mesh, e, x - mesh.node(e), 0.5);
    } else {
        add_side(row, mesh, rule, x, h.l_A, true);
    }
    if (h.l_B <= tiny) {
        const int e = mesh.element_of(x);
        add_element(row, mesh, e, x - mesh.node(e), 0.5);
    } else {
        add_side(row, mesh, rule, x, h.l_B, false);
    }
    return row;
}

NonlocalRow nonlocal_B_row(double x, const Mesh& mesh, const FractionalParams& params,
                           const SingularQuadRule& rule) {
    const auto [first, last] = horizon_nodes(x, mesh, params);
    return nonlocal_B_row(x, mesh, params, rule, first, last);
}

NonlocalOperator::NonlocalOperator(const Mesh& mesh, const FractionalParams& params,
                                   const QuadratureOptions& options)
    : rule_(params.alpha, options.jacobi_points, options.legendre_points) {
    params.validate();
    const QuadRule outer = gauss_legendre(options.outer_points);
    const double le = mesh.element_length();
    elements_.resize(mesh.elements());
    for (int e = 0; e < mesh.elements(); ++e) {
        Element& el = elements_[e];
        std::vector<double> xs(outer.size());
        int first = e;
        int last = e + 1;
        for (std::size_t g = 0; g < outer.size(); ++g) {
            xs[g] = mesh.node(e) + 0.5 * le * (1.0 + outer.nodes[g]);
            const auto [f, l] = horizon_nodes(xs[g], mesh, params);
            first = std::min(first, f);
            last = std::max(last, l);
        }
        el.offset = DofMap::axial(first);
        el.size = DofMap::per_node * (last - first + 1);
        bandwidth_ = std::max(bandwidth_, el.size - 1);
        el.points.reserve(outer.size());
        for (std::size_t g = 0; g < outer.size(); ++g) {
            Point p;
            p.x = xs[g];
            p.weight = 0.5 * le * outer.weights[g];
            p.nonlocal = nonlocal_B_row(xs[g], mesh, params, rule_, first, last);
            p.local = local_B_row(xs[g], mesh, first, last);
            el.points.push_back(std::move(p));
        }
    }
}

}  // namespace ffem
