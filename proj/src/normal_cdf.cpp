#include <cmath>

#include "owent/numkernel.hpp"

// Standard normal cdf for binary64 through the extended-precision erfc of
// the C library:
//   Phi(-x) = erfc(x / sqrt2) / 2.
// The argument x / sqrt2 is rounded once in long double; that rounding is
// removed to first order, which matters deep in the tail where the relative
// sensitivity of erfc grows like 2u^2.

namespace owent {
namespace {

constexpr long double kInvSqrt2 = 0.707106781186547524400844362104849039L;
// 1/sqrt2 - kInvSqrt2, the representation error of the constant
constexpr long double kInvSqrt2Lo = 1.895032558893257079655062e-20L;
constexpr long double kTwoOverSqrtPi = 1.12837916709551257389615890312154517L;

// Phi(-|h|) in long double.
long double lower_tail(double h) {
    const long double x = std::fabs(static_cast<long double>(h));
    const long double u = x * kInvSqrt2;
    const long double delta = std::fma(x, kInvSqrt2, -u) + x * kInvSqrt2Lo;
    const long double t = std::erfc(u);
    if (t == 0.0L) {
        return 0.0L;
    }
    // erfc(u + delta) ~ erfc(u) - 2/sqrt(pi) e^{-u^2} delta
    const long double slope = kTwoOverSqrtPi * std::exp(-u * u) / t;
    return 0.5L * t * (1.0L - slope * delta);
}

}  // namespace

double std_normal_cdf(double h) {
    if (std::isnan(h)) {
        return h;
    }
    const long double tail = lower_tail(h);
    return static_cast<double>(h < 0.0 ? tail : 1.0L - tail);
}

}  // namespace owent
