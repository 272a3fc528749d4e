#include "ffem/fractional.hpp"

#include <cmath>
#include <string>

namespace ffem {

void FractionalParams::validate() const {
    if (!(alpha > 0.0) || alpha > 1.0) throw DomainError("alpha must lie in (0,1]");
    if (!(l_f > 0.0)) throw DomainError("l_f must be positive");
}

Horizon truncated_length_scales(double x, double L, const FractionalParams& params) {
    params.validate();
    if (!(L > 0.0)) throw DomainError("beam length must be positive");
    if (x < 0.0 || x > L) {
        throw DomainError("position " + std::to_string(x) + " outside [0, L]");
    }
    return Horizon{std::min(params.l_f, x), std::min(params.l_f, L - x), x};
}

double attenuation_weight(double x, double s, const Horizon& h, double alpha) {
    if (s == x) throw SingularPointError("attenuation kernel evaluated at s == x");
    if (s <= x - h.l_A || s >= x + h.l_B) throw DomainError("source point outside horizon");
    const double len = s < x ? h.l_A : h.l_B;
    return 0.5 * (1.0 - alpha) * std::pow(len, alpha - 1.0) * std::pow(std::abs(x - s), -alpha);
}

namespace {

// 1/2 l^(alpha-1) int_0^l (1-alpha) t^(-alpha) p(t) dt, optionally split at the
// distances `cuts` (sorted, inside (0, l)).
template <class F>
double kernel_side(const F& p, double len, const SingularQuadRule& rule,
                   const std::vector<double>& cuts) {
    if (rule.is_point_mass()) return 0.5 * p(0.0);
    double prev = 0.0;
    double sum = 0.0;
    for (double c : cuts) {
        sum += prev == 0.0 ? rule.from_zero(p, c) : rule.segment_regular(p, prev, c);
        prev = c;
    }
    sum += prev == 0.0 ? rule.from_zero(p, len) : rule.segment_regular(p, prev, len);
    return 0.5 * std::pow(len, rule.alpha() - 1.0) * sum;
}

std::vector<double> side_cuts(std::span<const double> bps, double x, double len, bool left) {
    std::vector<double> cuts;
    for (double b : bps) {
        const double t = left ? x - b : b - x;
        if (t > 0.0 && t < len) cuts.push_back(t);
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    return cuts;
}

}  // namespace

double rc_derivative(const ScalarFn& dfds, const Horizon& h, const SingularQuadRule& rule,
                     std::span<const double> breakpoints) {
    if (h.l_A < 0.0 || h.l_B < 0.0 || !(h.l_A + h.l_B > 0.0)) {
        throw DomainError("horizon lengths must be non-negative with positive sum");
    }
    const double tiny = kDegenerateSide * (h.l_A + h.l_B);
    const double x = h.x;
    double value = 0.0;
    if (h.l_A <= tiny) {
        value += 0.5 * dfds(x);
    } else {
        value += kernel_side([&](double t) { return dfds(x - t); }, h.l_A, rule,
                             side_cuts(breakpoints, x, h.l_A, true));
    }
    if (h.l_B <= tiny) {
        value += 0.5 * dfds(x);
    } else {
        value += kernel_side([&](double t) { return dfds(x + t); }, h.l_B, rule,
                             side_cuts(breakpoints, x, h.l_B, false));
    }
    return value;
}

Estimate rc_derivative_estimate(const ScalarFn& dfds, const Horizon& h,
                                const SingularQuadRule& rule) {
    Estimate est;
    est.value = rc_derivative(dfds, h, rule);
    if (rule.is_point_mass()) return est;
    const SingularQuadRule fine(rule.alpha(), 2 * static_cast<int>(rule.nodes().size()));
    est.error = std::abs(rc_derivative(dfds, h, fine) - est.value);
    return est;
}

double riesz_integral_between(const ScalarFn& g, double x, double a, double b,
                              double prefactor_left, double prefactor_right,
                              const SingularQuadRule& rule) {
    if (!(a <= x && x <= b)) throw DomainError("riesz_integral_between: x outside [a, b]");
    const double alpha = rule.alpha();
    if (rule.is_point_mass()) return g(x);
    const double left = rule.from_zero([&](double t) { return g(x - t); }, x - a);
    const double right = rule.from_zero([&](double t) { return g(x + t); }, b - x);
    // rule integrals carry the (1-alpha) factor already
    return 0.5 * (std::pow(prefactor_left, alpha - 1.0) * left +
                  std::pow(prefactor_right, alpha - 1.0) * right);
}

double riesz_integral(const ScalarFn& g, const Horizon& h, const SingularQuadRule& rule) {
    return riesz_integral_between(g, h.x, h.x - h.l_B, h.x + h.l_A, h.l_B, h.l_A, rule);
}

double riesz_rl_derivative(const ScalarFn& g, const ScalarFn& dgds, const Horizon& h,
                           const SingularQuadRule& rule) {
    if (!(h.l_A > 0.0) || !(h.l_B > 0.0)) {
        throw DomainError("riesz_rl_derivative: both horizon lengths must be positive");
    }
    const double alpha = rule.alpha();
    // Kernel part: the Caputo form on the swapped horizon applied to g'.
    const Horizon swapped{h.l_B, h.l_A, h.x};
    const double kernel = rc_derivative(dgds, swapped, rule);
    if (rule.is_point_mass()) return kernel;
    const double terminal =
        0.5 * (1.0 - alpha) * (g(h.x - h.l_B) / h.l_B - g(h.x + h.l_A) / h.l_A);
    return terminal + kernel;
}

}  // namespace ffem
