#include "ffem/assembly.hpp"

#include <doctest.h>

#include <Eigen/Dense>

#include <cmath>
#include <random>

using namespace ffem;

namespace {

Model make_model(double alpha, double l_f, int ne, LoadCase loads = LoadCase::uniform(1e4),
                 BoundaryCondition left = BoundaryCondition::pinned,
                 BoundaryCondition right = BoundaryCondition::pinned, ModelOptions options = {}) {
    BeamSpec s;
    s.bc_left = left;
    s.bc_right = right;
    return Model(s, FractionalParams{alpha, l_f}, Mesh(s.L, ne), std::move(loads), options);
}

Eigen::VectorXd field_values(const Mesh& mesh, RowKind kind, double c0, double c1) {
    Eigen::VectorXd d = Eigen::VectorXd::Zero(DofMap::per_node * mesh.nodes());
    for (int i = 0; i < mesh.nodes(); ++i) {
        const double x = mesh.node(i);
        if (kind == RowKind::u) d(DofMap::axial(i)) = c0 + c1 * x;
        else {
            d(DofMap::deflection(i)) = c0 + c1 * x;
            d(DofMap::slope(i)) = c1;
        }
    }
    return d;
}

// Classical bar and Hermite beam element stiffness, assembled directly.
Eigen::MatrixXd classical_stiffness(const BeamSpec& s, int ne) {
    const double le = s.L / ne;
    const int n = DofMap::per_node * (ne + 1);
    Eigen::MatrixXd K = Eigen::MatrixXd::Zero(n, n);
    const double a = s.A11() / le;
    const double d = s.D11() / (le * le * le);
    Eigen::Matrix4d kb;
    kb << 12, 6 * le, -12, 6 * le, 6 * le, 4 * le * le, -6 * le, 2 * le * le, -12, -6 * le, 12, -6 * le, 6 * le,
        2 * le * le, -6 * le, 4 * le * le;
    kb *= d;
    for (int e = 0; e < ne; ++e) {
        const int u[2] = {DofMap::axial(e), DofMap::axial(e + 1)};
        K(u[0], u[0]) += a;
        K(u[1], u[1]) += a;
        K(u[0], u[1]) -= a;
        K(u[1], u[0]) -= a;
        const int w[4] = {DofMap::deflection(e), DofMap::slope(e), DofMap::deflection(e + 1), DofMap::slope(e + 1)};
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) K(w[i], w[j]) += kb(i, j);
    }
    return K;
}

double max_abs(const SparseMatrix& K) {
    double m = 0.0;
    for (int j = 0; j < K.outerSize(); ++j)
        for (SparseMatrix::InnerIterator it(K, j); it; ++it) m = std::max(m, std::abs(it.value()));
    return m;
}

}  // namespace

TEST_CASE("mesh") {
    const Mesh m(2.0, 8);
    CHECK(m.nodes() == 9);
    CHECK(m.element_length() == doctest::Approx(0.25));
    CHECK(m.node(8) == doctest::Approx(2.0));
    CHECK(m.element_of(0.25) == 1);
    CHECK(m.element_of(0.25, true) == 0);
    CHECK(m.element_of(2.0) == 7);
    CHECK(Mesh::from_horizon(1.0, 0.2, 10).elements() == 50);
    CHECK_THROWS_AS(Mesh(1.0, 0), DomainError);
}

TEST_CASE("shape functions") {
    const double le = 0.3;
    const ShapeValues a = shape_functions(0.0, le);
    const ShapeValues b = shape_functions(le, le);
    CHECK(a.lagrange[0] == 1.0);
    CHECK(b.lagrange[0] == doctest::Approx(0.0));
    CHECK(a.hermite[0] == 1.0);
    CHECK(a.dhermite[0] == 0.0);
    CHECK(a.hermite[1] == 0.0);
    CHECK(a.dhermite[1] == doctest::Approx(1.0));
    for (double xi : {0.0, 0.07, 0.15, 0.29}) {
        const ShapeValues s = shape_functions(xi, le);
        CHECK(s.lagrange[0] + s.lagrange[1] == doctest::Approx(1.0));
        // w = 2 + 5 xi reproduced from nodal values and slopes
        const double w = s.hermite[0] * 2.0 + s.hermite[1] * 5.0 + s.hermite[2] * (2.0 + 5.0 * le) + s.hermite[3] * 5.0;
        CHECK(w == doctest::Approx(2.0 + 5.0 * xi));
    }
    CHECK_THROWS_AS(shape_functions(-0.01, le), DomainError);
    CHECK_THROWS_AS(shape_functions(0.31, le), DomainError);
}

TEST_CASE("dof map and constraints") {
    const Mesh m(1.0, 4);
    CHECK(DofMap(m, BoundaryCondition::clamped, BoundaryCondition::clamped).constrained().size() == 6);
    CHECK(DofMap(m, BoundaryCondition::pinned, BoundaryCondition::pinned).constrained().size() == 4);
    CHECK(DofMap(m, BoundaryCondition::clamped, BoundaryCondition::free).constrained().size() == 3);
    CHECK(DofMap(m, BoundaryCondition::pinned, BoundaryCondition::pinned_movable).constrained().size() == 3);
    CHECK(DofMap(m, BoundaryCondition::clamped, BoundaryCondition::clamped).size() == 15);
    CHECK_THROWS_AS(DofMap(m, BoundaryCondition::free, BoundaryCondition::free).require_no_rigid_modes(),
                    SingularSystemError);
    CHECK_THROWS_AS(DofMap(m, BoundaryCondition::pinned_movable, BoundaryCondition::pinned_movable)
                        .require_no_rigid_modes(),
                    SingularSystemError);
    CHECK_THROWS_AS(DofMap(m, BoundaryCondition::pinned, BoundaryCondition::free).require_no_rigid_modes(),
                    SingularSystemError);
    CHECK_NOTHROW(DofMap(m, BoundaryCondition::clamped, BoundaryCondition::free).require_no_rigid_modes());

    const Model model = make_model(0.8, 0.2, 10, LoadCase::uniform(1e4), BoundaryCondition::free,
                                   BoundaryCondition::free);
    const GlobalSystem sys = assemble_linear(model);
    CHECK_THROWS_AS(apply_constraints(sys.linear_operator(), sys.total_force(), sys.dofs), SingularSystemError);
}

TEST_CASE("nonlocal rows annihilate constants and reproduce linears") {
    const Mesh mesh(1.0, 20);
    for (double alpha : {0.5, 0.75, 0.95}) {
        const FractionalParams p{alpha, 0.2};
        const SingularQuadRule rule(alpha);
        const Eigen::VectorXd cu = field_values(mesh, RowKind::u, 1.7, 0.0);
        const Eigen::VectorXd cw = field_values(mesh, RowKind::w, -0.4, 0.0);
        const Eigen::VectorXd lu = field_values(mesh, RowKind::u, 0.3, 2.5);
        const Eigen::VectorXd lw = field_values(mesh, RowKind::w, 0.3, 2.5);
        for (double x : {0.0, 0.013, 0.21, 0.5, 0.77, 1.0}) {
            const NonlocalRow row = nonlocal_B_row(x, mesh, p, rule);
            CHECK(std::abs(row.apply(RowKind::u, cu)) < 1e-12);
            CHECK(std::abs(row.apply(RowKind::w, cw)) < 1e-12);
            CHECK(std::abs(row.apply(RowKind::theta, cw)) < 1e-12);
            CHECK(std::abs(row.apply(RowKind::u, lu) - 2.5) < 1e-8);
            CHECK(std::abs(row.apply(RowKind::w, lw) - 2.5) < 1e-8);
            CHECK(std::abs(row.apply(RowKind::theta, lw)) < 1e-8);
        }
    }
}

TEST_CASE("rows at alpha = 1 are the local rows") {
    const Mesh mesh(1.0, 10);
    const FractionalParams p{1.0, 0.2};
    const SingularQuadRule rule(1.0);
    for (double x : {0.03, 0.5, 0.97}) {
        const auto [first, last] = horizon_nodes(x, mesh, p);
        const NonlocalRow nl = nonlocal_B_row(x, mesh, p, rule, first, last);
        const NonlocalRow loc = local_B_row(x, mesh, first, last);
        CHECK((nl.u - loc.u).norm() <= 1e-12 * loc.u.norm());
        CHECK((nl.w - loc.w).norm() <= 1e-12 * loc.w.norm());
        CHECK((nl.theta - loc.theta).norm() <= 1e-12 * loc.theta.norm());
        int touched = 0;
        for (int k = 0; k < nl.size(); ++k) touched += (nl.u(k) != 0.0);
        CHECK(touched == 2);
    }
}

TEST_CASE("row support stays inside the horizon plus one element") {
    const Mesh mesh(1.0, 40);
    const FractionalParams p{0.7, 0.15};
    const SingularQuadRule rule(0.7);
    const double le = mesh.element_length();
    for (double x : {0.0, 0.05, 0.31, 0.5, 0.9}) {
        const NonlocalRow row = nonlocal_B_row(x, mesh, p, rule);
        const Horizon h = truncated_length_scales(x, 1.0, p);
        for (int k = 0; k < row.size(); ++k) {
            if (row.u(k) == 0.0 && row.w(k) == 0.0 && row.theta(k) == 0.0) continue;
            const double xn = mesh.node((row.offset + k) / DofMap::per_node);
            CHECK(xn >= h.left_end() - le - 1e-12);
            CHECK(xn <= h.right_end() + le + 1e-12);
        }
    }
}

TEST_CASE("single-element bar stiffness at alpha = 1") {
    const Model m = make_model(1.0, 0.2, 1);
    const GlobalSystem sys = assemble_linear(m);
    const SparseMatrix K = extract_block(sys.K11, Field::axial, Field::axial);
    const double k = m.spec().A11() / 1.0;
    CHECK(K.rows() == 2);
    CHECK(K.coeff(0, 0) == doctest::Approx(k));
    CHECK(K.coeff(0, 1) == doctest::Approx(-k));
    CHECK(K.coeff(1, 0) == doctest::Approx(-k));
    CHECK(K.coeff(1, 1) == doctest::Approx(k));
}

TEST_CASE("linear assembly: symmetry, null space and local limit") {
    for (double alpha : {0.6, 0.9}) {
        const Model m = make_model(alpha, 0.25, 16);
        const GlobalSystem sys = assemble_linear(m);
        CHECK(relative_asymmetry(sys.K11) == 0.0);
        CHECK(relative_asymmetry(sys.K22_linear) < 1e-14);
        const Eigen::VectorXd ones = field_values(m.mesh(), RowKind::u, 1.0, 0.0);
        CHECK((sys.K11 * ones).norm() <= 1e-12 * max_abs(sys.K11));
        const Eigen::VectorXd lift = field_values(m.mesh(), RowKind::w, 1.0, 0.0);
        CHECK((sys.K22_linear * lift).norm() <= 1e-12 * max_abs(sys.K22_linear));
    }
    const Model local = make_model(1.0, 0.3, 12);
    const Eigen::MatrixXd K = Eigen::MatrixXd(assemble_linear(local).linear_operator());
    const Eigen::MatrixXd ref = classical_stiffness(local.spec(), 12);
    CHECK((K - ref).cwiseAbs().maxCoeff() <= 1e-9 * ref.cwiseAbs().maxCoeff());
}

TEST_CASE("stiffness bandwidth follows the horizon") {
    const Model m = make_model(0.7, 0.1, 50);
    const GlobalSystem sys = assemble_linear(m);
    const double le = m.mesh().element_length();
    const int node_reach = static_cast<int>(std::ceil(2.0 * 0.1 / le + 1e-9)) + 2;
    const SparseMatrix K = sys.linear_operator();
    for (int j = 0; j < K.outerSize(); ++j)
        for (SparseMatrix::InnerIterator it(K, j); it; ++it) {
            CHECK(std::abs(int(it.row()) / 3 - int(it.col()) / 3) <= node_reach);
        }
    CHECK(m.op().bandwidth() <= DofMap::per_node * (node_reach + 1));
}

TEST_CASE("nonlinear blocks") {
    const Model m = make_model(0.8, 0.2, 12);
    GlobalSystem sys = assemble_linear(m);
    assemble_nonlinear(m, Eigen::VectorXd::Zero(m.size()), sys);
    CHECK(sys.K12.norm() == 0.0);
    CHECK(sys.K21.norm() == 0.0);
    CHECK(sys.K22_nonlinear.norm() == 0.0);

    std::mt19937 rng(3);
    std::normal_distribution<double> n(0.0, 1.0);
    Eigen::VectorXd d(m.size());
    for (int i = 0; i < d.size(); ++i) d(i) = n(rng) * (i % 3 == 0 ? 1e-5 : 1e-2);
    assemble_nonlinear(m, d, sys);
    const SparseMatrix K12t = sys.K12.transpose();
    CHECK((sys.K21 - 2.0 * K12t).norm() <= 1e-14 * sys.K21.norm());

    Eigen::VectorXd d2 = d;
    for (int i = 0; i < d.size(); ++i)
        if (i % 3 != 0) d2(i) *= 2.0;
    GlobalSystem sys2 = sys;
    assemble_nonlinear(m, d2, sys2);
    CHECK((sys2.K12 - 2.0 * sys.K12).norm() <= 1e-13 * sys2.K12.norm());
    CHECK((sys2.K21 - 2.0 * sys.K21).norm() <= 1e-13 * sys2.K21.norm());
    CHECK((sys2.K22_nonlinear - 4.0 * sys.K22_nonlinear).norm() <= 1e-13 * sys2.K22_nonlinear.norm());
    CHECK_THROWS_AS(assemble_nonlinear(m, Eigen::VectorXd::Zero(3), sys), DomainError);
}

TEST_CASE("force vectors") {
    const double q0 = 1e4;
    const Model m = make_model(0.8, 0.2, 10, LoadCase::uniform(q0));
    const Forces f = assemble_forces(m, Eigen::VectorXd::Zero(m.size()), true);
    double total = 0.0;
    for (int i = 0; i < m.mesh().nodes(); ++i) total += f.F_T(DofMap::deflection(i));
    CHECK(total == doctest::Approx(q0 * m.spec().L).epsilon(1e-12));
    CHECK(f.F_Atheta.norm() == 0.0);
    CHECK(f.F_Ttheta.norm() == 0.0);
    CHECK(f.F_A.norm() == 0.0);

    const Model hot = make_model(0.8, 0.2, 10, LoadCase::uniform(0.0, ThermalField::uniform(5.0)));
    const Forces fh = assemble_forces(hot, Eigen::VectorXd::Zero(hot.size()), true);
    CHECK(fh.F_Ttheta.norm() == 0.0);
    CHECK(fh.F_Atheta.norm() > 0.0);
    // the rows annihilate constants, so the entries sum to zero; symmetric about midspan
    CHECK(std::abs(fh.F_Atheta.sum()) <= 1e-12 * fh.F_Atheta.norm());
    for (int i = 0; i <= 10; ++i) {
        CHECK(fh.F_Atheta(DofMap::axial(i)) == doctest::Approx(-fh.F_Atheta(DofMap::axial(10 - i))));
    }
    const Model bend = make_model(0.8, 0.2, 10, LoadCase::uniform(0.0, ThermalField::linear_thickness(10.0)));
    const Forces fb = assemble_forces(bend, Eigen::VectorXd::Zero(bend.size()), true);
    CHECK(fb.F_Ttheta.norm() > 0.0);
}

TEST_CASE("literal thermal rows") {
    ModelOptions literal;
    literal.thermal_rows = ThermalRows::literal;
    const LoadCase loads = LoadCase::uniform(0.0, ThermalField::parabolic_length(50.0));
    const Model a = make_model(0.7, 0.2, 10, loads);
    const Model b = make_model(0.7, 0.2, 10, loads, BoundaryCondition::pinned, BoundaryCondition::pinned, literal);
    const Eigen::VectorXd zero = Eigen::VectorXd::Zero(a.size());
    CHECK((assemble_forces(a, zero, true).F_Atheta - assemble_forces(b, zero, true).F_Atheta).norm() > 0.0);
    const Model la = make_model(1.0, 0.2, 10, loads);
    const Model lb = make_model(1.0, 0.2, 10, loads, BoundaryCondition::pinned, BoundaryCondition::pinned, literal);
    const Eigen::VectorXd fa = assemble_forces(la, zero, true).F_Atheta;
    CHECK((fa - assemble_forces(lb, zero, true).F_Atheta).norm() <= 1e-12 * fa.norm());
}

TEST_CASE("block extraction and reduction round trip") {
    const Model m = make_model(0.8, 0.2, 6, LoadCase::uniform(1e4), BoundaryCondition::clamped,
                               BoundaryCondition::free);
    const GlobalSystem sys = assemble_linear(m);
    const SparseMatrix Kww = extract_block(sys.K22_linear, Field::transverse, Field::transverse);
    CHECK(Kww.rows() == 14);
    CHECK(extract_block(sys.K22_linear, Field::axial, Field::transverse).norm() == 0.0);
    CHECK(extract_block(sys.K11, Field::axial, Field::axial).rows() == 7);
    const Eigen::VectorXd F = extract_block(sys.F_T, Field::transverse);
    CHECK(F.sum() > 0.0);
    const ReducedSystem red = apply_constraints(sys.linear_operator(), sys.total_force(), sys.dofs);
    CHECK(red.K.rows() == m.size() - 3);
    const Eigen::VectorXd v = Eigen::VectorXd::LinSpaced(red.K.rows(), 1.0, 2.0);
    CHECK((reduce(expand(v, sys.dofs), sys.dofs) - v).norm() == 0.0);
}
