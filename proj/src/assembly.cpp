#include "ffem/assembly.hpp"

#include <Eigen/Dense>

#include <vector>

namespace ffem {

namespace {

using Triplets = std::vector<Eigen::Triplet<double>>;

// Averaging with the transpose makes mathematically symmetric element matrices
// bitwise symmetric, which the triplet summation then preserves.
void symmetrize(Eigen::MatrixXd& local) {
    local = 0.5 * (local + local.transpose()).eval();
}

void scatter(const Eigen::MatrixXd& local, int offset, Triplets& out) {
    for (int j = 0; j < local.cols(); ++j) {
        for (int i = 0; i < local.rows(); ++i) {
            const double v = local(i, j);
            if (v != 0.0) out.emplace_back(offset + i, offset + j, v);
        }
    }
}

SparseMatrix from_triplets(int n, const Triplets& t) {
    SparseMatrix K(n, n);
    K.setFromTriplets(t.begin(), t.end());
    return K;
}

// Loops over every outer point, handing the element-window slice of `state`, the
// point rows and its thermal resultants to `fn`, which adds into a local matrix.
template <class Fn>
SparseMatrix assemble_matrix(const Model& model, const Eigen::VectorXd& state, bool symmetric, Fn&& fn) {
    Triplets trip;
    const auto& elements = model.op().elements();
    for (std::size_t e = 0; e < elements.size(); ++e) {
        const auto& el = elements[e];
        Eigen::MatrixXd local = Eigen::MatrixXd::Zero(el.size, el.size);
        const Eigen::VectorXd d = state.segment(el.offset, el.size);
        for (std::size_t g = 0; g < el.points.size(); ++g) {
            fn(el.points[g], model.thermal_at_points()[e][g], d, local);
        }
        if (symmetric) symmetrize(local);
        scatter(local, el.offset, trip);
    }
    return from_triplets(model.size(), trip);
}

const NonlocalRow& thermal_row(const NonlocalOperator::Point& p, ThermalRows rows) {
    return rows == ThermalRows::nonlocal ? p.nonlocal : p.local;
}

}  // namespace

GlobalSystem assemble_linear(const Model& model, LoadFactors factors) {
    const BeamSpec& spec = model.spec();
    const double A11 = spec.A11();
    const double D11 = spec.D11();
    const Eigen::VectorXd zero = Eigen::VectorXd::Zero(model.size());
    GlobalSystem sys{.dofs = model.dofs()};
    sys.K11 = assemble_matrix(model, zero, true, [&](const auto& p, const auto&, const auto&, auto& K) {
        K.noalias() += (p.weight * A11) * p.nonlocal.u * p.nonlocal.u.transpose();
    });
    sys.K22_linear = assemble_matrix(model, zero, true, [&](const auto& p, const auto&, const auto&, auto& K) {
        K.noalias() += (p.weight * D11) * p.nonlocal.theta * p.nonlocal.theta.transpose();
    });
    sys.K12 = SparseMatrix(model.size(), model.size());
    sys.K21 = SparseMatrix(model.size(), model.size());
    sys.K22_nonlinear = SparseMatrix(model.size(), model.size());
    Forces f = assemble_forces(model, zero, false, factors);
    sys.F_A = std::move(f.F_A);
    sys.F_T = std::move(f.F_T);
    sys.F_Atheta = std::move(f.F_Atheta);
    sys.F_Ttheta = std::move(f.F_Ttheta);
    return sys;
}

Eigen::VectorXd linear_residual_extended(const Model& model, const Eigen::VectorXd& state,
                                         const Eigen::VectorXd& force) {
    if (state.size() != model.size() || force.size() != model.size()) {
        throw DomainError("state size does not match dof map");
    }
    using Real = long double;
    const Real A11 = model.spec().A11();
    const Real D11 = model.spec().D11();
    std::vector<Real> acc(force.data(), force.data() + force.size());
    for (const auto& el : model.op().elements()) {
        for (const auto& p : el.points) {
            Real eps = 0.0L;
            Real kappa = 0.0L;
            for (int i = 0; i < el.size; ++i) {
                const Real d = state(el.offset + i);
                eps += p.nonlocal.u(i) * d;
                kappa += p.nonlocal.theta(i) * d;
            }
            const Real N = p.weight * A11 * eps;
            const Real M = p.weight * D11 * kappa;
            for (int i = 0; i < el.size; ++i) acc[el.offset + i] -= N * p.nonlocal.u(i) + M * p.nonlocal.theta(i);
        }
    }
    Eigen::VectorXd r(force.size());
    for (Eigen::Index i = 0; i < r.size(); ++i) r(i) = static_cast<double>(acc[i]);
    return r;
}

void assemble_nonlinear(const Model& model, const Eigen::VectorXd& state, GlobalSystem& sys) {
    if (state.size() != model.size()) throw DomainError("state size does not match dof map");
    const double A11 = model.spec().A11();
    sys.K12 = assemble_matrix(model, state, false, [&](const auto& p, const auto&, const auto& d, auto& K) {
        const double dw = p.nonlocal.w.dot(d);
        K.noalias() += (0.5 * p.weight * A11 * dw) * p.nonlocal.u * p.nonlocal.w.transpose();
    });
    sys.K21 = assemble_matrix(model, state, false, [&](const auto& p, const auto&, const auto& d, auto& K) {
        const double dw = p.nonlocal.w.dot(d);
        K.noalias() += (p.weight * A11 * dw) * p.nonlocal.w * p.nonlocal.u.transpose();
    });
    sys.K22_nonlinear = assemble_matrix(model, state, true, [&](const auto& p, const auto&, const auto& d, auto& K) {
        const double dw = p.nonlocal.w.dot(d);
        K.noalias() += (0.5 * p.weight * A11 * dw * dw) * p.nonlocal.w * p.nonlocal.w.transpose();
    });
}

Forces assemble_forces(const Model& model, const Eigen::VectorXd& state, bool nonlinear,
                       LoadFactors factors) {
    if (state.size() != model.size()) throw DomainError("state size does not match dof map");
    const int n = model.size();
    Forces f;
    f.F_A = factors.mechanical * model.axial_force();
    f.F_T = factors.mechanical * model.transverse_force();
    f.F_Atheta = Eigen::VectorXd::Zero(n);
    f.F_Ttheta = Eigen::VectorXd::Zero(n);
    const ThermalRows rows = model.options().thermal_rows;
    const auto& elements = model.op().elements();
    for (std::size_t e = 0; e < elements.size(); ++e) {
        const auto& el = elements[e];
        const Eigen::VectorXd d = state.segment(el.offset, el.size);
        for (std::size_t g = 0; g < el.points.size(); ++g) {
            const auto& p = el.points[g];
            const ThermalResultants& th = model.thermal_at_points()[e][g];
            const double Nt = factors.thermal * th.N_theta;
            const double Mt = factors.thermal * th.M_theta;
            if (Nt == 0.0 && Mt == 0.0) continue;
            const NonlocalRow& t = thermal_row(p, rows);
            f.F_Atheta.segment(el.offset, el.size).noalias() += (p.weight * Nt) * t.u;
            auto FT = f.F_Ttheta.segment(el.offset, el.size);
            FT.noalias() -= (p.weight * Mt) * t.theta;
            if (nonlinear) {
                const double dw = p.nonlocal.w.dot(d);
                FT.noalias() += (p.weight * Nt * dw) * t.w;
            }
        }
    }
    return f;
}

void virtual_work(const Model& model, const Eigen::VectorXd& state, const VirtualWorkOptions& opts,
                  Eigen::VectorXd* internal, SparseMatrix* tangent) {
    if (state.size() != model.size()) throw DomainError("state size does not match dof map");
    const BeamSpec& spec = model.spec();
    const double A11 = spec.A11();
    const double D11 = spec.D11();
    const double nl = opts.nonlinear ? 1.0 : 0.0;
    const ThermalRows rows = model.options().thermal_rows;
    // The internal force is accumulated in long double: at large strains its terms
    // cancel by many orders of magnitude, which would otherwise put a noise floor
    // under Newton residuals and finite-difference Jacobians.
    using Real = long double;
    std::vector<Real> f_acc(internal ? model.size() : 0, 0.0L);
    auto dot = [](const Eigen::VectorXd& row, const Eigen::VectorXd& d) {
        Real sum = 0.0L;
        for (Eigen::Index i = 0; i < row.size(); ++i) sum += static_cast<Real>(row(i)) * d(i);
        return sum;
    };
    Triplets trip;
    const auto& elements = model.op().elements();
    for (std::size_t e = 0; e < elements.size(); ++e) {
        const auto& el = elements[e];
        const Eigen::VectorXd d = state.segment(el.offset, el.size);
        Eigen::MatrixXd K_local;
        if (tangent) K_local = Eigen::MatrixXd::Zero(el.size, el.size);
        for (std::size_t g = 0; g < el.points.size(); ++g) {
            const auto& p = el.points[g];
            const NonlocalRow& b = p.nonlocal;
            const NonlocalRow& t = thermal_row(p, rows);
            const ThermalResultants& th = model.thermal_at_points()[e][g];
            const double Nt = opts.factors.thermal * th.N_theta;
            const double Mt = opts.factors.thermal * th.M_theta;

            const Real du = dot(b.u, d);
            const Real dw = dot(b.w, d);
            const Real kappa = -dot(b.theta, d);
            const Real N_mech = A11 * (du + 0.5L * nl * dw * dw);
            const Real M_mech = D11 * kappa;

            if (internal) {
                const Real wt = p.weight;
                for (int i = 0; i < el.size; ++i) {
                    const Real grad = b.u(i) + nl * dw * b.w(i);
                    f_acc[el.offset + i] += wt * (N_mech * grad - M_mech * b.theta(i) - Nt * t.u(i) +
                                                 Mt * t.theta(i) - Nt * nl * dw * t.w(i));
                }
            }
            if (tangent) {
                const Eigen::VectorXd grad_eps = b.u + (nl * static_cast<double>(dw)) * b.w;
                K_local.noalias() += (p.weight * A11) * grad_eps * grad_eps.transpose();
                K_local.noalias() += (p.weight * D11) * b.theta * b.theta.transpose();
                if (opts.nonlinear) {
                    K_local.noalias() += (p.weight * static_cast<double>(N_mech)) * b.w * b.w.transpose();
                    if (opts.thermal_geometric_stiffness && Nt != 0.0) {
                        K_local.noalias() -= (p.weight * Nt) * t.w * b.w.transpose();
                    }
                }
            }
        }
        if (tangent) {
            if (rows == ThermalRows::nonlocal) symmetrize(K_local);
            scatter(K_local, el.offset, trip);
        }
    }
    if (internal) {
        internal->resize(model.size());
        for (int i = 0; i < model.size(); ++i) (*internal)(i) = static_cast<double>(f_acc[i]);
    }
    if (tangent) *tangent = from_triplets(model.size(), trip);
}

SparseMatrix extract_block(const SparseMatrix& global, Field rows, Field cols) {
    const int nodes = static_cast<int>(global.rows()) / DofMap::per_node;
    auto local_index = [](int dof, Field f) -> int {
        const int node = dof / DofMap::per_node;
        const int k = dof % DofMap::per_node;
        if (f == Field::axial) return k == 0 ? node : -1;
        return k == 0 ? -1 : 2 * node + (k - 1);
    };
    auto extent = [nodes](Field f) { return f == Field::axial ? nodes : 2 * nodes; };
    Triplets trip;
    for (int j = 0; j < global.outerSize(); ++j) {
        for (SparseMatrix::InnerIterator it(global, j); it; ++it) {
            const int r = local_index(static_cast<int>(it.row()), rows);
            const int c = local_index(static_cast<int>(it.col()), cols);
            if (r >= 0 && c >= 0) trip.emplace_back(r, c, it.value());
        }
    }
    SparseMatrix B(extent(rows), extent(cols));
    B.setFromTriplets(trip.begin(), trip.end());
    return B;
}

Eigen::VectorXd extract_block(const Eigen::VectorXd& global, Field field) {
    const int nodes = static_cast<int>(global.size()) / DofMap::per_node;
    if (field == Field::axial) {
        Eigen::VectorXd out(nodes);
        for (int i = 0; i < nodes; ++i) out(i) = global(DofMap::axial(i));
        return out;
    }
    Eigen::VectorXd out(2 * nodes);
    for (int i = 0; i < nodes; ++i) {
        out(2 * i) = global(DofMap::deflection(i));
        out(2 * i + 1) = global(DofMap::slope(i));
    }
    return out;
}

SparseMatrix reduce(const SparseMatrix& K, const DofMap& dofs) {
    const int n = static_cast<int>(dofs.free().size());
    Triplets trip;
    trip.reserve(K.nonZeros());
    for (int j = 0; j < K.outerSize(); ++j) {
        const int c = dofs.reduced(j);
        if (c < 0) continue;
        for (SparseMatrix::InnerIterator it(K, j); it; ++it) {
            const int r = dofs.reduced(static_cast<int>(it.row()));
            if (r >= 0) trip.emplace_back(r, c, it.value());
        }
    }
    SparseMatrix R(n, n);
    R.setFromTriplets(trip.begin(), trip.end());
    return R;
}

Eigen::VectorXd reduce(const Eigen::VectorXd& v, const DofMap& dofs) {
    Eigen::VectorXd out(dofs.free().size());
    for (std::size_t i = 0; i < dofs.free().size(); ++i) out(i) = v(dofs.free()[i]);
    return out;
}

Eigen::VectorXd expand(const Eigen::VectorXd& reduced, const DofMap& dofs) {
    Eigen::VectorXd out = Eigen::VectorXd::Zero(dofs.size());
    for (std::size_t i = 0; i < dofs.free().size(); ++i) out(dofs.free()[i]) = reduced(i);
    return out;
}

ReducedSystem apply_constraints(const SparseMatrix& K, const Eigen::VectorXd& F, const DofMap& dofs) {
    dofs.require_no_rigid_modes();
    return ReducedSystem{reduce(K, dofs), reduce(F, dofs)};
}

double relative_asymmetry(const SparseMatrix& K) {
    const SparseMatrix Kt = K.transpose();
    const double norm = K.norm();
    if (norm == 0.0) return 0.0;
    return (K - Kt).norm() / norm;
}

}  // namespace ffem
