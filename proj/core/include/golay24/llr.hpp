#pragma once

#include <algorithm>
#include <cmath>

namespace golay24::llr {

// Input LLRs are saturated to +/-kClamp before decoding so that softplus
// and the check-node update stay inside well-conditioned ranges.
inline constexpr double kClamp = 50.0;

inline double clamp(double x) { return std::clamp(x, -kClamp, kClamp); }

// ln(1 + e^x)
inline double softplus(double x) {
    if (x > 0.0) return x + std::log1p(std::exp(-x));
    return std::log1p(std::exp(x));
}

// Exact check-node update f(a,b) = 2 atanh(tanh(a/2) tanh(b/2)) in the
// numerically stable Jacobian form.
inline double boxplus(double a, double b) {
    double sgn = ((a < 0.0) != (b < 0.0)) ? -1.0 : 1.0;
    double m = std::min(std::abs(a), std::abs(b));
    return sgn * m + std::log1p(std::exp(-std::abs(a + b))) -
           std::log1p(std::exp(-std::abs(a - b)));
}

inline double boxplus_minsum(double a, double b) {
    double sgn = ((a < 0.0) != (b < 0.0)) ? -1.0 : 1.0;
    return sgn * std::min(std::abs(a), std::abs(b));
}

// Variable-node update g(a, b, u) = b + (1-2u) a.
inline double vnode(double a, double b, int u) { return b + (u ? -a : a); }

}  // namespace golay24::llr
