#pragma once

#include "ffem/model.hpp"

#include <Eigen/SparseCore>

namespace ffem {

using SparseMatrix = Eigen::SparseMatrix<double>;

/// Stiffness blocks and force vectors, all in global (node-interleaved) numbering.
/// K11 only couples axial dofs, K22 transverse ones; K12 maps transverse to axial
/// and K21 axial to transverse.
struct GlobalSystem {
    SparseMatrix K11{};
    SparseMatrix K12{};
    SparseMatrix K21{};
    SparseMatrix K22_linear{};
    SparseMatrix K22_nonlinear{};
    Eigen::VectorXd F_A{};
    Eigen::VectorXd F_T{};
    Eigen::VectorXd F_Atheta{};
    Eigen::VectorXd F_Ttheta{};
    DofMap dofs;

    SparseMatrix K22() const { return K22_linear + K22_nonlinear; }
    /// K11 + K22_linear: the operator of the linear problem.
    SparseMatrix linear_operator() const { return K11 + K22_linear; }
    /// Secant operator [[K11, K12], [K21, K22]] at the state used for the nonlinear blocks.
    SparseMatrix secant_operator() const { return K11 + K12 + K21 + K22(); }
    Eigen::VectorXd total_force() const { return F_A + F_T + F_Atheta + F_Ttheta; }
};

/// Scales applied to the mechanical and thermal loads (load stepping).
struct LoadFactors {
    double mechanical = 1.0;
    double thermal = 1.0;
};

/// K11 and the linear part of K22, plus the force vectors at zero state.
GlobalSystem assemble_linear(const Model& model, LoadFactors factors = {});

/// force - (K11 + K22_linear) * state, applied matrix-free from the point rows and
/// accumulated in long double. Used to refine linear solves: the assembled bending
/// block loses digits to rounding that the smooth modes amplify like Ne^4.
Eigen::VectorXd linear_residual_extended(const Model& model, const Eigen::VectorXd& state,
                                         const Eigen::VectorXd& force);

/// Secant blocks K12, K21 and the nonlinear part of K22 at `state`.
void assemble_nonlinear(const Model& model, const Eigen::VectorXd& state, GlobalSystem& system);

struct Forces {
    Eigen::VectorXd F_A;
    Eigen::VectorXd F_T;
    Eigen::VectorXd F_Atheta;
    Eigen::VectorXd F_Ttheta;
};

/// Mechanical and thermal force vectors. With `nonlinear`, F_Ttheta includes the
/// state-dependent N_theta * D^a w0 term.
Forces assemble_forces(const Model& model, const Eigen::VectorXd& state, bool nonlinear,
                       LoadFactors factors = {});

struct VirtualWorkOptions {
    bool nonlinear = true;
    LoadFactors factors;
    /// Include d(F_Ttheta)/dW in the tangent (thermal geometric stiffness).
    bool thermal_geometric_stiffness = true;
};

/// Internal force vector from the virtual-work statement at every outer point,
/// thermal contributions included; optionally the analytic tangent. The residual is
/// internal minus the mechanical load vectors.
void virtual_work(const Model& model, const Eigen::VectorXd& state, const VirtualWorkOptions& opts,
                  Eigen::VectorXd* internal, SparseMatrix* tangent);

enum class Field { axial, transverse };

/// Block of a global matrix in block-local numbering: axial dof of node i -> i,
/// transverse (w0, w0') of node i -> (2i, 2i+1).
SparseMatrix extract_block(const SparseMatrix& global, Field rows, Field cols);
Eigen::VectorXd extract_block(const Eigen::VectorXd& global, Field field);

/// Reduced operator and right-hand side after eliminating constrained dofs (all
/// essential conditions are homogeneous).
struct ReducedSystem {
    SparseMatrix K;
    Eigen::VectorXd F;
};

/// Throws SingularSystemError when the end conditions leave rigid-body modes.
ReducedSystem apply_constraints(const SparseMatrix& K, const Eigen::VectorXd& F, const DofMap& dofs);
SparseMatrix reduce(const SparseMatrix& K, const DofMap& dofs);
Eigen::VectorXd reduce(const Eigen::VectorXd& v, const DofMap& dofs);
/// Scatter a reduced vector back to global numbering, zeros on constrained dofs.
Eigen::VectorXd expand(const Eigen::VectorXd& reduced, const DofMap& dofs);

/// Frobenius norm of K - K^T relative to the Frobenius norm of K.
double relative_asymmetry(const SparseMatrix& K);

}  // namespace ffem
