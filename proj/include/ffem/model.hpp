#pragma once

#include "ffem/beam.hpp"
#include "ffem/fractional.hpp"
#include "ffem/mesh.hpp"
#include "ffem/nonlocal_operator.hpp"
#include "ffem/thermoelastic.hpp"

#include <Eigen/Core>

#include <memory>

namespace ffem {

/// Distributed mechanical loads on the midplane [N/m] and the prescribed temperature.
struct LoadCase {
    ScalarFn axial;       ///< F_a(x1); empty means zero
    ScalarFn transverse;  ///< F_t(x1); empty means zero
    ThermalField thermal;

    /// Uniform transverse load q0 with an optional thermal field.
    static LoadCase uniform(double q0, ThermalField thermal = {});
};

/// Which rows multiply the thermal resultants in the thermal force vectors.
enum class ThermalRows {
    nonlocal,  ///< B~ rows, consistent with the virtual-work statement (default)
    literal,   ///< integer-order B rows as printed in the force-vector formulas
};

struct ModelOptions {
    QuadratureOptions quadrature;
    ThermalRows thermal_rows = ThermalRows::nonlocal;
};

/// A discretized beam problem: everything the assembly needs, built once.
class Model {
public:
    Model(BeamSpec spec, FractionalParams params, Mesh mesh, LoadCase loads,
          ModelOptions options = {});

    const BeamSpec& spec() const noexcept { return spec_; }
    const FractionalParams& params() const noexcept { return params_; }
    const Mesh& mesh() const noexcept { return mesh_; }
    const DofMap& dofs() const noexcept { return dofs_; }
    const LoadCase& loads() const noexcept { return loads_; }
    const ModelOptions& options() const noexcept { return options_; }
    const NonlocalOperator& op() const noexcept { return *op_; }
    int size() const noexcept { return dofs_.size(); }

    /// Thermal resultants at every outer point, same layout as op().elements().
    const std::vector<std::vector<ThermalResultants>>& thermal_at_points() const noexcept {
        return thermal_;
    }
    /// Consistent mechanical load vectors (integer-order shape functions).
    const Eigen::VectorXd& axial_force() const noexcept { return F_A_; }
    const Eigen::VectorXd& transverse_force() const noexcept { return F_T_; }

    /// Same discretization with different loads (reuses the cached rows).
    Model with_loads(LoadCase loads) const;

private:
    BeamSpec spec_;
    FractionalParams params_;
    Mesh mesh_;
    DofMap dofs_;
    LoadCase loads_;
    ModelOptions options_;
    std::shared_ptr<const NonlocalOperator> op_;
    std::vector<std::vector<ThermalResultants>> thermal_;
    Eigen::VectorXd F_A_;
    Eigen::VectorXd F_T_;

    void build_loads();
};

}  // namespace ffem
