#include "ffem/solver.hpp"

#include <Eigen/SparseCholesky>
#include <Eigen/SparseLU>

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>
#include <string>

namespace ffem {

namespace {

void fill_positions(const Model& model, SolutionField& out) {
    out.x.resize(model.mesh().nodes());
    for (int i = 0; i < model.mesh().nodes(); ++i) out.x[i] = model.mesh().node(i);
}

// F - K d with the products accumulated in long double.
Eigen::VectorXd extended_residual(const SparseMatrix& K, const Eigen::VectorXd& d,
                                  const Eigen::VectorXd& F) {
    std::vector<long double> acc(F.size());
    for (Eigen::Index i = 0; i < F.size(); ++i) acc[i] = F(i);
    for (Eigen::Index j = 0; j < K.outerSize(); ++j) {
        for (SparseMatrix::InnerIterator it(K, j); it; ++it) {
            acc[it.row()] -= static_cast<long double>(it.value()) * d(j);
        }
    }
    Eigen::VectorXd r(F.size());
    for (Eigen::Index i = 0; i < F.size(); ++i) r(i) = static_cast<double>(acc[i]);
    return r;
}

// Solves the reduced SPD system and refines with `residual(d)` (full-size state in,
// full-size residual out) until the corrections stop shrinking.
template <class Residual>
Eigen::VectorXd solve_spd(const SparseMatrix& K, const Eigen::VectorXd& F, const DofMap& dofs,
                          Residual&& residual) {
    Eigen::VectorXd d = Eigen::VectorXd::Zero(dofs.size());
    if (K.rows() == 0) return d;
    Eigen::SimplicialLLT<SparseMatrix> llt(K);
    if (llt.info() != Eigen::Success) {
        throw SingularSystemError("reduced operator is not positive definite");
    }
    d = expand(llt.solve(F), dofs);
    double last = std::numeric_limits<double>::infinity();
    for (int pass = 0; pass < 6; ++pass) {
        const Eigen::VectorXd c = llt.solve(reduce(residual(d), dofs));
        const double size = c.norm();
        if (!(size < last)) break;
        d += expand(c, dofs);
        last = size;
        if (size <= 1e-16 * d.norm()) break;
    }
    return d;
}

class TangentSolver {
public:
    explicit TangentSolver(bool symmetric) : symmetric_(symmetric) {}

    Eigen::VectorXd solve(const SparseMatrix& K, const Eigen::VectorXd& rhs) {
        if (symmetric_) {
            ldlt_.compute(K);
            if (ldlt_.info() == Eigen::Success) {
                Eigen::VectorXd d = ldlt_.solve(rhs);
                if (d.allFinite()) return d;
            }
        }
        lu_.compute(K);
        if (lu_.info() != Eigen::Success) throw SingularSystemError("tangent stiffness is singular");
        return lu_.solve(rhs);
    }

private:
    bool symmetric_;
    Eigen::SimplicialLDLT<SparseMatrix> ldlt_;
    Eigen::SparseLU<SparseMatrix> lu_;
};

}  // namespace

void SolverConfig::validate() const {
    if (!(tol_rel_residual > 0.0)) throw DomainError("tol_rel_residual must be positive");
    if (max_iters < 1) throw DomainError("max_iters must be at least 1");
    if (load_steps < 1) throw DomainError("load_steps must be at least 1");
}

double SolutionField::max_abs_u() const {
    double m = 0.0;
    for (int i = 0; i < nodes(); ++i) m = std::max(m, std::abs(u0(i)));
    return m;
}

double SolutionField::max_abs_w() const {
    double m = 0.0;
    for (int i = 0; i < nodes(); ++i) m = std::max(m, std::abs(w0(i)));
    return m;
}

Eigen::VectorXd solve_linear(const GlobalSystem& system) {
    const SparseMatrix K = system.linear_operator();
    const Eigen::VectorXd F = system.total_force();
    const ReducedSystem red = apply_constraints(K, F, system.dofs);
    return solve_spd(red.K, red.F, system.dofs,
                     [&](const Eigen::VectorXd& d) { return extended_residual(K, d, F); });
}

SolutionField solve_linear(const Model& model) {
    const GlobalSystem system = assemble_linear(model);
    const Eigen::VectorXd F = system.total_force();
    const ReducedSystem red = apply_constraints(system.linear_operator(), F, system.dofs);
    SolutionField out;
    out.state = solve_spd(red.K, red.F, system.dofs,
                          [&](const Eigen::VectorXd& d) { return linear_residual_extended(model, d, F); });
    fill_positions(model, out);
    return out;
}

Eigen::VectorXd residual(const Model& model, const Eigen::VectorXd& state, bool nonlinear,
                         LoadFactors factors) {
    VirtualWorkOptions opts;
    opts.nonlinear = nonlinear;
    opts.factors = factors;
    Eigen::VectorXd f;
    virtual_work(model, state, opts, &f, nullptr);
    f -= factors.mechanical * (model.axial_force() + model.transverse_force());
    return f;
}

SparseMatrix tangent_stiffness(const Model& model, const Eigen::VectorXd& state, bool nonlinear,
                               LoadFactors factors, bool thermal_geometric_stiffness) {
    VirtualWorkOptions opts;
    opts.nonlinear = nonlinear;
    opts.factors = factors;
    opts.thermal_geometric_stiffness = thermal_geometric_stiffness;
    SparseMatrix K;
    virtual_work(model, state, opts, nullptr, &K);
    return K;
}

SolutionField newton_raphson(const Model& model, const SolverConfig& config) {
    config.validate();
    if (config.mode == SolveMode::linear) return solve_linear(model);

    const DofMap& dofs = model.dofs();
    dofs.require_no_rigid_modes();
    const bool symmetric = model.options().thermal_rows == ThermalRows::nonlocal;
    TangentSolver linsolve(symmetric);

    std::vector<LoadFactors> schedule;
    const int n = config.load_steps;
    for (int k = 1; k <= n; ++k) {
        const double f = static_cast<double>(k) / n;
        if (config.ramp == LoadRamp::joint) schedule.push_back({f, f});
        else schedule.push_back({0.0, f});
    }
    if (config.ramp == LoadRamp::thermal_first) {
        for (int k = 1; k <= n; ++k) schedule.push_back({static_cast<double>(k) / n, 1.0});
    }

    SolutionField out;
    out.state = Eigen::VectorXd::Zero(model.size());
    fill_positions(model, out);

    VirtualWorkOptions opts;
    opts.nonlinear = true;
    opts.thermal_geometric_stiffness = config.thermal_geometric_stiffness;

    for (std::size_t step = 0; step < schedule.size(); ++step) {
        opts.factors = schedule[step];
        std::vector<double> hist;
        int growth = 0;
        bool converged = false;
        for (int it = 0; it <= config.max_iters; ++it) {
            Eigen::VectorXd f_int;
            SparseMatrix K;
            virtual_work(model, out.state, opts, &f_int, &K);
            const Eigen::VectorXd mech =
                opts.factors.mechanical * (model.axial_force() + model.transverse_force());
            const Forces th = assemble_forces(model, out.state, true, opts.factors);
            const double ref = reduce(Eigen::VectorXd(mech + th.F_Atheta + th.F_Ttheta), dofs).norm();
            const Eigen::VectorXd R = reduce(Eigen::VectorXd(f_int - mech), dofs);
            const double r = R.norm();
            const double rel = ref > 0.0 ? r / ref : r;
            hist.push_back(rel);
            if (r <= std::max(config.tol_rel_residual * ref, 1e-14)) {
                converged = true;
                break;
            }
            if (hist.size() >= 2 && rel > hist[hist.size() - 2]) {
                if (++growth >= 3) break;
            } else {
                growth = 0;
            }
            if (it == config.max_iters) break;
            const Eigen::VectorXd delta = linsolve.solve(reduce(K, dofs), -R);
            out.state += expand(delta, dofs);
            ++out.iterations;
        }
        out.history.push_back(hist);
        if (!converged) {
            const std::string why = growth >= 3 ? "diverged (residual grew 3 consecutive iterations)"
                                                : "did not converge within max_iters";
            throw ConvergenceError("Newton-Raphson " + why + " at load step " + std::to_string(step + 1),
                                   out.history);
        }
    }
    return out;
}

}  // namespace ffem
