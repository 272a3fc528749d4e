#include "ffem/model.hpp"

#include <cmath>

namespace ffem {

LoadCase LoadCase::uniform(double q0, ThermalField thermal) {
    LoadCase lc;
    if (q0 != 0.0) lc.transverse = [q0](double) { return q0; };
    lc.thermal = std::move(thermal);
    return lc;
}

Model::Model(BeamSpec spec, FractionalParams params, Mesh mesh, LoadCase loads, ModelOptions options)
    : spec_(std::move(spec)),
      params_(params),
      mesh_(mesh),
      dofs_(mesh_, spec_.bc_left, spec_.bc_right),
      loads_(std::move(loads)),
      options_(options) {
    spec_.validate();
    params_.validate();
    if (std::abs(mesh_.length() - spec_.L) > 1e-12 * spec_.L) {
        throw DomainError("mesh length does not match beam length");
    }
    op_ = std::make_shared<const NonlocalOperator>(mesh_, params_, options_.quadrature);
    build_loads();
}

Model Model::with_loads(LoadCase loads) const {
    Model m = *this;
    m.loads_ = std::move(loads);
    m.build_loads();
    return m;
}

void Model::build_loads() {
    const int n = dofs_.size();
    F_A_ = Eigen::VectorXd::Zero(n);
    F_T_ = Eigen::VectorXd::Zero(n);
    thermal_.assign(op_->elements().size(), {});
    const double le = mesh_.element_length();
    for (std::size_t e = 0; e < op_->elements().size(); ++e) {
        const auto& el = op_->elements()[e];
        auto& th = thermal_[e];
        th.reserve(el.points.size());
        const int n0 = static_cast<int>(e);
        for (const auto& p : el.points) {
            th.push_back(thermal_resultants(loads_.thermal, p.x, spec_));
            const ShapeValues s = shape_polynomials(p.x - mesh_.node(n0), le);
            if (loads_.axial) {
                const double fa = loads_.axial(p.x) * p.weight;
                F_A_(DofMap::axial(n0)) += fa * s.lagrange[0];
                F_A_(DofMap::axial(n0 + 1)) += fa * s.lagrange[1];
            }
            if (loads_.transverse) {
                const double ft = loads_.transverse(p.x) * p.weight;
                F_T_(DofMap::deflection(n0)) += ft * s.hermite[0];
                F_T_(DofMap::slope(n0)) += ft * s.hermite[1];
                F_T_(DofMap::deflection(n0 + 1)) += ft * s.hermite[2];
                F_T_(DofMap::slope(n0 + 1)) += ft * s.hermite[3];
            }
        }
    }
}

}  // namespace ffem
