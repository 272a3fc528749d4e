#pragma once

#include <cmath>
#include <vector>

namespace ffem {

/// Nodes and weights on the reference interval [-1, 1].
struct QuadRule {
    std::vector<double> nodes;
    std::vector<double> weights;

    std::size_t size() const noexcept { return nodes.size(); }
};

/// n-point Gauss-Legendre rule; exact for polynomials of degree 2n-1.
QuadRule gauss_legendre(int n);

/// n-point Gauss-Jacobi rule for the weight (1-x)^a (1+x)^b, a, b > -1.
/// Computed with the Golub-Welsch eigenvalue method.
QuadRule gauss_jacobi(int n, double a, double b);

/// Integrate f over [lo, hi] with a rule given on [-1, 1].
template <class F>
double integrate(const QuadRule& rule, F&& f, double lo, double hi) {
    const double half = 0.5 * (hi - lo);
    const double mid = 0.5 * (hi + lo);
    double sum = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i) {
        sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
    }
    return half * sum;
}

/// Quadrature for the weakly singular measure (1-alpha) t^(-alpha) dt on t >= 0.
///
/// The Gauss-Jacobi part has nodes tau_i in (0, 1) and weights summing to one, so
///   int_0^b (1-alpha) t^(-alpha) p(t) dt = b^(1-alpha) * sum_i w_i p(b tau_i)
/// holds exactly for polynomials p of degree up to 2n-1. For alpha = 1 the measure
/// degenerates to a unit point mass at t = 0.
class SingularQuadRule {
public:
    explicit SingularQuadRule(double alpha, int jacobi_points = 6, int legendre_points = 8);

    double alpha() const noexcept { return alpha_; }
    bool is_point_mass() const noexcept { return point_mass_; }
    int degree() const noexcept { return 2 * static_cast<int>(tau_.size()) - 1; }
    const std::vector<double>& nodes() const noexcept { return tau_; }
    const std::vector<double>& weights() const noexcept { return w_; }
    const QuadRule& legendre() const noexcept { return legendre_; }

    /// int_0^b (1-alpha) t^(-alpha) p(t) dt with b >= 0.
    template <class F>
    double from_zero(F&& p, double b) const {
        if (b <= 0.0) return 0.0;
        if (point_mass_) return p(0.0);
        double sum = 0.0;
        for (std::size_t i = 0; i < tau_.size(); ++i) sum += w_[i] * p(b * tau_[i]);
        return std::pow(b, 1.0 - alpha_) * sum;
    }

    /// int_a^b (1-alpha) t^(-alpha) p(t) dt for 0 <= a <= b, as the difference of two
    /// rules anchored at zero. Exact when p is a polynomial that may be evaluated on
    /// all of [0, b] (e.g. an element shape function continued past its element).
    template <class F>
    double segment_extended(F&& p, double a, double b) const {
        if (point_mass_) return a <= 0.0 ? p(0.0) : 0.0;
        return from_zero(p, b) - from_zero(p, a);
    }

    /// int_a^b (1-alpha) t^(-alpha) p(t) dt for 0 < a < b using Gauss-Legendre on the
    /// regular interval; p is only evaluated inside [a, b].
    template <class F>
    double segment_regular(F&& p, double a, double b) const {
        if (point_mass_) return 0.0;
        const double scale = 1.0 - alpha_;
        return integrate(
            legendre_, [&](double t) { return scale * std::pow(t, -alpha_) * p(t); }, a, b);
    }

private:
    double alpha_;
    bool point_mass_;
    std::vector<double> tau_;
    std::vector<double> w_;
    QuadRule legendre_;
};

}  // namespace ffem
