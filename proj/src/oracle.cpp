#include "ffem/oracle.hpp"

#include <boost/math/interpolators/cardinal_cubic_b_spline.hpp>
#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace ffem {

namespace {

constexpr const char* kSsUdtl = "ss-udtl";
constexpr const char* kCcUdtl = "cc-udtl";
constexpr const char* kSsThermal = "ss-thermal-moment";
constexpr const char* kCcAxial = "cc-uniform-theta-axial";

double eval(const ScalarFn& f, double x) { return f ? f(x) : 0.0; }

}  // namespace

const std::vector<OracleCase>& oracle_catalog() {
    static const std::vector<OracleCase> catalog = {
        {kSsUdtl, BoundaryCondition::pinned, BoundaryCondition::pinned, "uniform q0", "max w0 [m]",
         "simply supported beam under uniform load: w = q x (L^3 - 2 L x^2 + x^3) / (24 EI)", 5e-3},
        {kCcUdtl, BoundaryCondition::clamped, BoundaryCondition::clamped, "uniform q0", "max w0 [m]",
         "clamped beam under uniform load: w = q x^2 (L - x)^2 / (24 EI)", 5e-3},
        {kSsThermal, BoundaryCondition::pinned, BoundaryCondition::pinned,
         "linear-through-thickness theta1", "max w0 [m]",
         "constant thermal moment on a simply supported beam: w = M_theta x (L - x) / (2 EI)", 5e-3},
        {kCcAxial, BoundaryCondition::clamped, BoundaryCondition::clamped, "uniform theta0",
         "axial resultant N [N]", "restrained bar under uniform heating: u0 = 0, N = -E b h alpha0 theta0",
         1e-10},
    };
    return catalog;
}

const OracleCase& find_oracle_case(const std::string& id) {
    for (const auto& c : oracle_catalog()) {
        if (c.id == id) return c;
    }
    throw DomainError("uncatalogued oracle case '" + id + "'");
}

double local_closed_form(const OracleCase& c, const BeamSpec& spec, const OracleLoads& loads) {
    const double L = spec.L;
    if (c.id == kSsUdtl) return 5.0 * loads.q0 * std::pow(L, 4) / (384.0 * spec.D11());
    if (c.id == kCcUdtl) return loads.q0 * std::pow(L, 4) / (384.0 * spec.D11());
    if (c.id == kSsThermal) return spec.alpha0 * loads.theta * L * L / (4.0 * spec.h);
    if (c.id == kCcAxial) return -spec.A11() * spec.alpha0 * loads.theta;
    throw DomainError("uncatalogued oracle case '" + c.id + "'");
}

ClosedFormPoint local_closed_form_profile(const OracleCase& c, const BeamSpec& spec,
                                          const OracleLoads& loads, double x) {
    const double L = spec.L;
    const double EI = spec.D11();
    ClosedFormPoint p;
    if (c.id == kSsUdtl) {
        const double k = loads.q0 / (24.0 * EI);
        p.w0 = k * x * (L * L * L - 2.0 * L * x * x + x * x * x);
        p.slope = k * (L * L * L - 6.0 * L * x * x + 4.0 * x * x * x);
    } else if (c.id == kCcUdtl) {
        const double k = loads.q0 / (24.0 * EI);
        p.w0 = k * x * x * (L - x) * (L - x);
        p.slope = 2.0 * k * x * (L - x) * (L - 2.0 * x);
    } else if (c.id == kSsThermal) {
        const double M = spec.E * spec.b * spec.alpha0 * loads.theta * spec.h * spec.h / 6.0;
        p.w0 = M * x * (L - x) / (2.0 * EI);
        p.slope = M * (L - 2.0 * x) / (2.0 * EI);
    } else if (c.id != kCcAxial) {
        throw DomainError("uncatalogued oracle case '" + c.id + "'");
    }
    return p;
}

Model oracle_model(const OracleCase& c, const BeamSpec& spec, const OracleLoads& loads, int elements) {
    BeamSpec s = spec;
    s.bc_left = c.bc_left;
    s.bc_right = c.bc_right;
    LoadCase lc;
    if (c.id == kSsUdtl || c.id == kCcUdtl) {
        lc = LoadCase::uniform(loads.q0);
    } else if (c.id == kSsThermal) {
        lc = LoadCase::uniform(loads.q0, ThermalField::linear_thickness(loads.theta));
    } else if (c.id == kCcAxial) {
        lc = LoadCase::uniform(loads.q0, ThermalField::uniform(loads.theta));
    } else {
        throw DomainError("uncatalogued oracle case '" + c.id + "'");
    }
    return Model(s, FractionalParams{1.0, s.L / 5.0}, Mesh(s.L, elements), std::move(lc));
}

double discrete_energy(const Model& model, const Eigen::VectorXd& state, bool nonlinear,
                       LoadFactors factors) {
    if (state.size() != model.size()) throw DomainError("state size does not match dof map");
    const BeamSpec& spec = model.spec();
    const Mesh& mesh = model.mesh();
    const ThermalField& field = model.loads().thermal;
    const double le = mesh.element_length();
    const QuadRule thick = gauss_legendre(4);
    const double nl = nonlinear ? 1.0 : 0.0;

    double strain_energy = 0.0;
    double load_work = 0.0;
    const auto& elements = model.op().elements();
    for (std::size_t e = 0; e < elements.size(); ++e) {
        const auto& el = elements[e];
        const int n0 = static_cast<int>(e);
        const double xa = mesh.node(n0);
        for (const auto& p : el.points) {
            const double du = p.nonlocal.apply(RowKind::u, state);
            const double dw = p.nonlocal.apply(RowKind::w, state);
            const StrainState strain{du + 0.5 * nl * dw * dw, -p.nonlocal.apply(RowKind::theta, state), p.x};

            double through = 0.0;
            for (std::size_t k = 0; k < thick.size(); ++k) {
                const double x3 = 0.5 * spec.h * thick.nodes[k];
                const double theta = factors.thermal * field.value(p.x, x3, spec);
                const double eps = strain.eps0 + x3 * strain.kappa;
                const double sigma = beam_axial_stress(strain, x3, theta, spec);
                through += thick.weights[k] * (0.5 * sigma * eps - 0.5 * spec.E * spec.alpha0 * theta * eps);
            }
            strain_energy += p.weight * spec.b * 0.5 * spec.h * through;

            const ShapeValues sv = shape_functions(p.x - xa, le);
            const double u = sv.lagrange[0] * state(DofMap::axial(n0)) + sv.lagrange[1] * state(DofMap::axial(n0 + 1));
            const double w = sv.hermite[0] * state(DofMap::deflection(n0)) + sv.hermite[1] * state(DofMap::slope(n0)) +
                             sv.hermite[2] * state(DofMap::deflection(n0 + 1)) +
                             sv.hermite[3] * state(DofMap::slope(n0 + 1));
            load_work += p.weight * (eval(model.loads().axial, p.x) * u + eval(model.loads().transverse, p.x) * w);
        }
    }
    return strain_energy - factors.mechanical * load_work;
}

DirectMinimum minimize_energy_direct(const Model& model, const MinimizerOptions& options) {
    if (model.mesh().elements() > 8) throw DomainError("minimize_energy_direct is limited to 8 elements");
    const DofMap& dofs = model.dofs();
    dofs.require_no_rigid_modes();
    const int n = static_cast<int>(dofs.free().size());
    const double le = model.mesh().element_length();
    const double A11 = model.spec().A11();
    const double D11 = model.spec().D11();

    // d = S y with S chosen so the energy Hessian in y has a diagonal of order one.
    Eigen::VectorXd S(n);
    for (int i = 0; i < n; ++i) {
        const int k = dofs.free()[i] % DofMap::per_node;
        const double stiff = k == 0 ? A11 / le : k == 1 ? D11 / (le * le * le) : D11 / le;
        S(i) = 1.0 / std::sqrt(stiff);
    }
    auto to_state = [&](const Eigen::VectorXd& y) { return expand(Eigen::VectorXd(S.cwiseProduct(y)), dofs); };
    auto energy = [&](const Eigen::VectorXd& y) { return discrete_energy(model, to_state(y), options.nonlinear); };
    auto gradient = [&](const Eigen::VectorXd& y) -> Eigen::VectorXd {
        return S.cwiseProduct(reduce(residual(model, to_state(y), options.nonlinear), dofs));
    };

    struct Run {
        Eigen::VectorXd y;
        double f;
        double g;
    };
    auto bfgs = [&](Eigen::VectorXd y) -> Run {
        Eigen::MatrixXd H = Eigen::MatrixXd::Identity(n, n);
        double f = energy(y);
        Eigen::VectorXd g = gradient(y);
        const double g0 = std::max(g.norm(), std::numeric_limits<double>::min());
        for (int it = 0; it < options.max_iters && g.norm() > options.gradient_tol * g0; ++it) {
            Eigen::VectorXd p = -H * g;
            if (p.dot(g) >= 0.0) {
                H.setIdentity();
                p = -g;
            }
            double t = 1.0;
            Eigen::VectorXd y_new;
            double f_new = f;
            bool accepted = false;
            for (int ls = 0; ls < 60; ++ls, t *= 0.5) {
                y_new = y + t * p;
                f_new = energy(y_new);
                if (f_new <= f + 1e-4 * t * p.dot(g)) {
                    accepted = true;
                    break;
                }
            }
            if (!accepted) break;
            const Eigen::VectorXd g_new = gradient(y_new);
            const Eigen::VectorXd s = y_new - y;
            const Eigen::VectorXd v = g_new - g;
            const double sv = s.dot(v);
            if (sv > 0.0) {
                const double rho = 1.0 / sv;
                const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(n, n);
                H = (I - rho * s * v.transpose()) * H * (I - rho * v * s.transpose()) + rho * s * s.transpose();
            }
            y = y_new;
            f = f_new;
            g = g_new;
        }
        return {y, f, g.norm() / g0};
    };

    std::mt19937_64 rng(options.seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    Run best = bfgs(Eigen::VectorXd::Zero(n));
    const double spread = std::max(best.y.norm() / std::sqrt(std::max(n, 1)), 1e-6);
    for (int r = 0; r < options.restarts; ++r) {
        Eigen::VectorXd y0(n);
        for (int i = 0; i < n; ++i) y0(i) = best.y(i) + spread * normal(rng);
        Run run = bfgs(y0);
        if (run.f < best.f) best = run;
    }

    // Derivative-free coordinate search from the best state.
    Eigen::VectorXd y = best.y;
    double f = best.f;
    const double base = std::max(y.lpNorm<Eigen::Infinity>(), 1e-12);
    for (double step = 1e-3 * base; step > 1e-10 * base; step *= 0.1) {
        bool improved = true;
        for (int sweep = 0; sweep < 20 && improved; ++sweep) {
            improved = false;
            for (int i = 0; i < n; ++i) {
                for (double sign : {1.0, -1.0}) {
                    Eigen::VectorXd trial = y;
                    trial(i) += sign * step;
                    const double ft = energy(trial);
                    if (ft < f) {
                        y = trial;
                        f = ft;
                        improved = true;
                        break;
                    }
                }
            }
        }
    }

    DirectMinimum out;
    out.solution.state = to_state(y);
    out.solution.x.resize(model.mesh().nodes());
    for (int i = 0; i < model.mesh().nodes(); ++i) out.solution.x[i] = model.mesh().node(i);
    out.energy = f;
    out.gradient_norm = best.g;
    out.guard_improvement = (best.f - f) / std::max(std::abs(best.f), std::numeric_limits<double>::min());
    out.converged = best.g <= 1e-8 && out.guard_improvement < 1e-10;
    return out;
}

StrongFormResidual strong_form_residual(const Model& model, const SolutionField& solution, int samples) {
    if (model.options().thermal_rows != ThermalRows::nonlocal) {
        throw DomainError("strong_form_residual needs the nonlocal thermal rows");
    }
    if (samples < 1) throw DomainError("strong_form_residual needs at least one sample");
    const Mesh& mesh = model.mesh();
    const BeamSpec& spec = model.spec();
    const FractionalParams& params = model.params();
    const double L = mesh.length();
    const double le = mesh.element_length();
    const int ne = mesh.elements();
    if (ne < 4) throw DomainError("strong_form_residual needs at least 4 elements");
    if (solution.state.size() != model.size()) throw DomainError("solution size does not match dof map");
    const bool local = params.is_local();
    const double lo = local ? le : 2.0 * params.l_f;
    const double hi = L - lo;
    if (!(hi > lo)) throw DomainError("horizon too long for interior strong-form points");

    std::vector<double> N(ne);
    std::vector<double> mids(ne);
    for (int e = 0; e < ne; ++e) {
        mids[e] = (e + 0.5) * le;
        const NonlocalRow row = nonlocal_B_row(mids[e], mesh, params, model.op().rule());
        const double eps0 = row.apply(RowKind::u, solution.state);
        N[e] = spec.A11() * eps0 - thermal_resultants(model.loads().thermal, mids[e], spec).N_theta;
    }
    const boost::math::interpolators::cardinal_cubic_b_spline<double> spline(N.begin(), N.end(), 0.5 * le, le);
    const ScalarFn dN = [&spline](double s) { return spline.prime(s); };


    StrongFormResidual out;
    double fmax = 0.0;
    for (int i = 0; i < samples; ++i) {
        const double s = samples == 1 ? 0.5 * L : lo + (hi - lo) * i / (samples - 1);
        const double Fa = eval(model.loads().axial, s);
        fmax = std::max(fmax, std::abs(Fa));
        const double adj = local ? dN(s)
                                 : rc_derivative(dN, Horizon{params.l_f, params.l_f, s}, model.op().rule(), mids);
        out.x.push_back(s);
        out.residual.push_back(adj + Fa);
    }
    out.normalization = fmax > 0.0 ? fmax : spec.A11() / L;
    for (double r : out.residual) out.max_normalized = std::max(out.max_normalized, std::abs(r) / out.normalization);
    return out;
}

}  // namespace ffem
