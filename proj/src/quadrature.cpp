#include "ffem/quadrature.hpp"

#include "ffem/errors.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <numeric>

namespace ffem {

namespace {

// Golub-Welsch: eigen-decomposition of the symmetric Jacobi matrix of the
// three-term recurrence. Weights are returned normalized to sum to one.
QuadRule golub_welsch_jacobi(int n, double a, double b) {
    Eigen::VectorXd diag(n);
    Eigen::VectorXd sub(std::max(n - 1, 1));
    const double ab = a + b;
    for (int k = 0; k < n; ++k) {
        if (k == 0) {
            diag(k) = (b - a) / (ab + 2.0);
        } else {
            const double s = 2.0 * k + ab;
            diag(k) = (b * b - a * a) / (s * (s + 2.0));
        }
    }
    for (int k = 1; k < n; ++k) {
        const double s = 2.0 * k + ab;
        const double num = 4.0 * k * (k + a) * (k + b) * (k + ab);
        const double den = s * s * (s + 1.0) * (s - 1.0);
        sub(k - 1) = std::sqrt(num / den);
    }

    QuadRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    if (n == 1) {
        rule.nodes[0] = diag(0);
        rule.weights[0] = 1.0;
        return rule;
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, sub.head(n - 1), Eigen::ComputeEigenvectors);
    if (solver.info() != Eigen::Success) {
        throw Error("Gauss-Jacobi: tridiagonal eigen-solve failed");
    }
    for (int i = 0; i < n; ++i) {
        rule.nodes[i] = solver.eigenvalues()(i);
        const double v0 = solver.eigenvectors()(0, i);
        rule.weights[i] = v0 * v0;
    }
    const double total = std::accumulate(rule.weights.begin(), rule.weights.end(), 0.0);
    for (double& w : rule.weights) w /= total;
    return rule;
}

}  // namespace

QuadRule gauss_legendre(int n) {
    if (n < 1) throw DomainError("gauss_legendre: need at least one point");
    QuadRule rule = golub_welsch_jacobi(n, 0.0, 0.0);
    for (double& w : rule.weights) w *= 2.0;
    // Symmetrize: the eigen-solver leaves tiny asymmetries in the nodes.
    for (int i = 0; i < n / 2; ++i) {
        const int j = n - 1 - i;
        const double x = 0.5 * (rule.nodes[j] - rule.nodes[i]);
        const double w = 0.5 * (rule.weights[i] + rule.weights[j]);
        rule.nodes[i] = -x;
        rule.nodes[j] = x;
        rule.weights[i] = rule.weights[j] = w;
    }
    if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
    return rule;
}

QuadRule gauss_jacobi(int n, double a, double b) {
    if (n < 1) throw DomainError("gauss_jacobi: need at least one point");
    if (!(a > -1.0) || !(b > -1.0)) throw DomainError("gauss_jacobi: exponents must exceed -1");
    QuadRule rule = golub_welsch_jacobi(n, a, b);
    // mu0 = int_{-1}^{1} (1-x)^a (1+x)^b dx
    const double mu0 = std::exp((a + b + 1.0) * std::log(2.0) + std::lgamma(a + 1.0) +
                                std::lgamma(b + 1.0) - std::lgamma(a + b + 2.0));
    for (double& w : rule.weights) w *= mu0;
    return rule;
}

SingularQuadRule::SingularQuadRule(double alpha, int jacobi_points, int legendre_points)
    : alpha_(alpha), point_mass_(alpha >= 1.0), legendre_(gauss_legendre(legendre_points)) {
    if (!(alpha > 0.0) || alpha > 1.0) throw DomainError("alpha must lie in (0,1]");
    if (jacobi_points < 1) throw DomainError("SingularQuadRule: need at least one Jacobi point");
    if (point_mass_) return;
    // Weight (1+x)^(-alpha) on [-1, 1]; map x -> tau = (1+x)/2.
    QuadRule gj = golub_welsch_jacobi(jacobi_points, 0.0, -alpha);
    tau_.resize(gj.size());
    w_ = gj.weights;
    for (std::size_t i = 0; i < gj.size(); ++i) tau_[i] = 0.5 * (1.0 + gj.nodes[i]);
}

}  // namespace ffem
