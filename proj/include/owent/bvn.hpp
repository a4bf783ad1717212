#pragma once

// Bivariate standard normal cdf Phi2(x,y;rho) through Owen's reduction
//
//   Phi2(x,y;rho) = (Phi(x) + Phi(y))/2 - T(x,r_x) - T(y,r_y) - beta
//
// with the slopes evaluated in a cancellation-free form near |rho| = 1 and a
// split of the critical region |rho| ~ 1, x ~ sgn(rho) y into two
// well-conditioned evaluations.

#include <cstddef>
#include <stdexcept>
#include <string>

#include "owent/numkernel.hpp"
#include "owent/owen_t.hpp"
#include "owent/real.hpp"

namespace owent {

template <RealScalar T>
struct Correlation {
    T rho;

    explicit Correlation(const T& value) : rho(value) {
        if (!isfinite(value) || T(1) < abs(value)) {
            throw std::domain_error("Correlation: requires |rho| <= 1");
        }
    }
    bool degenerate() const { return abs(rho) == T(1); }
    /// (1 - rho)(1 + rho), free of the cancellation in 1 - rho^2.
    T one_minus_sq() const { return (T(1) - rho) * (T(1) + rho); }
    /// r = rho / sqrt(1 - rho^2)
    T slope() const {
        if (degenerate()) {
            throw std::domain_error("Correlation::slope: |rho| = 1");
        }
        return rho / sqrt(one_minus_sq());
    }
};

template <RealScalar T>
struct BvnDecomposition {
    T r_x;
    T r_y;
    T beta;
    T q;
    bool x_infinite = false;  ///< x == 0: r_x is a signed infinity
    bool y_infinite = false;
};

template <RealScalar T>
struct CriticalSplit {
    T rho_tilde;
    T y_tilde;
    T z;
    T leading;  ///< (1 - sgn rho)/2 Phi(x)
    T sign;     ///< sgn(rho)
};

struct Phi2Options {
    SeriesVariant variant = SeriesVariant::AtanExtNo;
    bool split = true;  ///< use the critical split when the density exceeds 1
};

/// |rho| at or above this uses the slope forms without rho x - y cancellation.
inline constexpr double kStableSlopeThreshold = 0.9;

namespace detail {

template <RealScalar T>
void require_finite_xy(const T& x, const T& y, const char* who) {
    if (!isfinite(x) || !isfinite(y)) {
        throw std::invalid_argument(std::string(who) + ": arguments must be finite");
    }
}

template <RealScalar T>
T frechet_lower(const T& x, const T& y) {
    // Phi(a) + Phi(b) - 1 = Phi(a) - Phi(-b) with a <= b, which subtracts the
    // two smaller probabilities and does not depend on the argument order
    const T a = x < y ? x : y;
    const T b = x < y ? y : x;
    const T v = std_normal_cdf(a) - std_normal_cdf(-b);
    return v < T(0) ? T(0) : v;
}

template <RealScalar T>
T frechet_upper(const T& x, const T& y) {
    const T a = std_normal_cdf(x);
    const T b = std_normal_cdf(y);
    return a < b ? a : b;
}

// ((x - s y)^2 + 2 s x y (1 - |rho|)) / (2 (1 - rho)(1 + rho)), s = sgn(rho)
template <RealScalar T>
T exponent_q(const T& x, const T& y, const Correlation<T>& c) {
    const T s = sgn(c.rho);
    const T diff = x - s * y;
    return (diff * diff + T(2) * s * x * y * (T(1) - abs(c.rho))) / (T(2) * c.one_minus_sq());
}

// Slope of T(x, .) in Owen's reduction, (y - rho x) / (x sqrt(1 - rho^2)).
template <RealScalar T>
T owen_slope(const T& x, const T& y, const Correlation<T>& c) {
    const T root = sqrt(c.one_minus_sq());
    const T rho = c.rho;
    if (abs(rho) < T(kStableSlopeThreshold)) {
        return (y - rho * x) / (x * root);
    }
    if (rho > T(0)) {
        return (y - x) / (x * root) + sqrt((T(1) - rho) / (T(1) + rho));
    }
    return (y + x) / (x * root) - sqrt((T(1) + rho) / (T(1) - rho));
}

// T(h, r) with the limit T(h, +-inf) = +-Phi(-|h|)/2 for slopes that
// overflowed.
template <RealScalar T, class OwenT>
T owen_t_term(const T& h, const T& r, OwenT&& owen) {
    if (!isfinite(r)) {
        const T half_tail = std_normal_cdf(-abs(h)) / T(2);
        return r < T(0) ? -half_tail : half_tail;
    }
    return owen(h, r);
}

template <RealScalar T>
T degenerate_phi2(const T& x, const T& y, const T& rho) {
    return rho > T(0) ? frechet_upper(x, y) : frechet_lower(x, y);
}

}  // namespace detail

/// e^{-q} / (2 pi sqrt(1 - rho^2))
template <RealScalar T>
T density(const T& x, const T& y, const Correlation<T>& c) {
    if (c.degenerate()) {
        throw std::domain_error("density: |rho| = 1");
    }
    return exp(-detail::exponent_q(x, y, c)) / (two_pi<T>() * sqrt(c.one_minus_sq()));
}

template <RealScalar T>
BvnDecomposition<T> decompose(const T& x, const T& y, const Correlation<T>& c) {
    detail::require_finite_xy(x, y, "decompose");
    if (c.degenerate()) {
        throw std::domain_error("decompose: |rho| = 1");
    }
    if (x == T(0) && y == T(0)) {
        throw std::domain_error("decompose: x = y = 0");
    }
    BvnDecomposition<T> out;
    out.q = detail::exponent_q(x, y, c);
    const bool no_beta = x * y > T(0) || (x * y == T(0) && !(x + y < T(0)));
    out.beta = no_beta ? T(0) : T(0.5);
    // y - rho x has the sign of y when x = 0
    const T inf = T(1) / T(0);
    if (x == T(0)) {
        out.x_infinite = true;
        out.r_x = y < T(0) ? -inf : inf;
    } else {
        out.r_x = detail::owen_slope(x, y, c);
    }
    if (y == T(0)) {
        out.y_infinite = true;
        out.r_y = x < T(0) ? -inf : inf;
    } else {
        out.r_y = detail::owen_slope(y, x, c);
    }
    return out;
}

/// Phi2(h,0;rho) = Phi(h)/2 + T(h, rho/sqrt(1-rho^2)).
template <RealScalar T>
T phi2_h0(const T& h, const Correlation<T>& c, SeriesVariant variant = SeriesVariant::AtanExtNo) {
    if (!isfinite(h)) {
        throw std::invalid_argument("phi2_h0: h must be finite");
    }
    if (c.degenerate()) {
        return detail::degenerate_phi2(h, T(0), c.rho);
    }
    return std_normal_cdf(h) / T(2) + owen_t(h, c.slope(), variant).value;
}

template <RealScalar T>
CriticalSplit<T> critical_split(const T& x, const T& y, const Correlation<T>& c) {
    if (c.degenerate() || c.rho == T(0)) {
        throw std::domain_error("critical_split: requires 0 < |rho| < 1");
    }
    const T s = sgn(c.rho);
    const T gap = T(1) - abs(c.rho);
    CriticalSplit<T> out;
    out.sign = s;
    out.rho_tilde = -sqrt(gap / T(2));
    out.y_tilde = s * y;
    out.z = (x - out.y_tilde) / sqrt(T(2) * gap);
    out.leading = s < T(0) ? std_normal_cdf(x) : T(0);
    return out;
}

namespace detail {

template <RealScalar T, class OwenT>
T phi2_generic(const T& x, const T& y, const Correlation<T>& c, bool split, OwenT&& owen) {
    require_finite_xy(x, y, "phi2");
    const T rho = c.rho;
    if (c.degenerate()) {
        return degenerate_phi2(x, y, rho);
    }
    if (rho == T(0)) {
        return std_normal_cdf(x) * std_normal_cdf(y);
    }
    if (x == T(0) && y == T(0)) {
        return T(0.25) + asin(rho) / two_pi<T>();
    }
    T value;
    if (split && T(1) < density(x, y, c)) {
        const auto cs = critical_split(x, y, c);
        const Correlation<T> inner(cs.rho_tilde);
        const T pair = phi2_generic(cs.z, cs.y_tilde, inner, false, owen) +
                       phi2_generic(T(-cs.z), x, inner, false, owen);
        value = cs.leading + cs.sign * pair;
    } else if (y == T(0) || x == T(0)) {
        const T h = y == T(0) ? x : y;
        value = std_normal_cdf(h) / T(2) + owen(h, c.slope());
    } else {
        const auto dec = decompose(x, y, c);
        const T tx = owen_t_term(x, dec.r_x, owen);
        const T ty = owen_t_term(y, dec.r_y, owen);
        value = (std_normal_cdf(x) + std_normal_cdf(y)) / T(2) - (tx + ty) - dec.beta;
    }
    const T lower = frechet_lower(x, y);
    const T upper = frechet_upper(x, y);
    return value < lower ? lower : (upper < value ? upper : value);
}

}  // namespace detail

/// Bivariate standard normal cdf. The result is clamped to the Frechet
/// bounds, which only matters at the level of a few roundings.
template <RealScalar T>
T phi2(const T& x, const T& y, const Correlation<T>& c, const Phi2Options& opts = {}) {
    return detail::phi2_generic(x, y, c, opts.split,
                                [&](const T& h, const T& r) { return owen_t(h, r, opts.variant).value; });
}

/// The same pipeline with a caller-supplied T(h,r), e.g. a tetrachoric
/// evaluation. `owen` is only called with finite slopes.
template <RealScalar T, class OwenT>
T phi2_with(const T& x, const T& y, const Correlation<T>& c, OwenT&& owen, bool split = true) {
    return detail::phi2_generic(x, y, c, split, owen);
}

/// L(x,y;rho) = P(X > x, Y > y) = Phi2(-x,-y;rho).
template <RealScalar T>
T l_complement(const T& x, const T& y, const Correlation<T>& c, const Phi2Options& opts = {}) {
    return phi2(T(-x), T(-y), c, opts);
}

template <RealScalar T>
struct UnifiedResult {
    T value;
    std::size_t iterations = 0;
    bool converged = true;
};

/// Phi2(x,y;rho) as one series in c_k = (2k)!!/(2k+1)!! P(k+1,q) (or Q(k+1,q)
/// for AtanExtNo) weighted by |x| rho_x^{2k+1} + |y| rho_y^{2k+1}, where
/// rho_x = (rho x - y) sgn(x) / sqrt(x^2 - 2 rho x y + y^2). Validation path.
template <RealScalar T>
UnifiedResult<T> phi2_unified(const T& x, const T& y, const Correlation<T>& c,
                              SeriesVariant variant = SeriesVariant::AtanExtYes,
                              std::size_t max_terms = 100000) {
    detail::require_finite_xy(x, y, "phi2_unified");
    if (c.degenerate()) {
        throw std::domain_error("phi2_unified: requires |rho| < 1");
    }
    if (x == T(0) && y == T(0)) {
        throw std::domain_error("phi2_unified: x = y = 0");
    }
    const T rho = c.rho;
    const T q = detail::exponent_q(x, y, c);
    const T two_q = T(2) * q * c.one_minus_sq();  // x^2 - 2 rho x y + y^2
    const T norm = sqrt(two_q);
    const T rho_x = (rho * x - y) * sgn(x) / norm;
    const T rho_y = (rho * y - x) * sgn(y) / norm;
    const bool no_beta = x * y > T(0) || (x * y == T(0) && !(x + y < T(0)));
    const T beta = no_beta ? T(0) : T(0.5);
    const T prefactor = T(1) / (two_pi<T>() * sqrt(T(2) * q));
    const T ax = abs(x);
    const T ay = abs(y);
    const T px = rho_x * rho_x;
    const T py = rho_y * rho_y;
    // tail of sum_k w_k rho^{2k+1} from index n on, with w_k <= w_n
    const T gx = ax == T(0) ? T(0) : ax / (T(1) - px);
    const T gy = ay == T(0) ? T(0) : ay / (T(1) - py);
    const T tol = T(0.25) * real_traits<T>::epsilon();

    auto gamma = GammaSeqState<T>::start(q);
    T coeff(1);      // (2k)!!/(2k+1)!!
    T powx = rho_x;  // rho_x^{2k+1}
    T powy = rho_y;
    T sum(0);
    std::size_t k = 0;
    bool converged = false;
    for (; k < max_terms; ++k) {
        if (k > 0) {
            gamma.advance();
            coeff = coeff * T(2 * k) / T(2 * k + 1);
            powx = powx * px;
            powy = powy * py;
        }
        const T weight = variant == SeriesVariant::AtanExtYes ? coeff * (T(1) - gamma.d) : coeff * gamma.d;
        sum = sum + weight * (ax * powx + ay * powy);
        // the remaining weights are bounded by the current one for P and by
        // the coefficient alone for Q
        const T cap = variant == SeriesVariant::AtanExtYes ? weight : coeff;
        const T tail = prefactor * cap * (gx * abs(powx) * px + gy * abs(powy) * py);
        if (tail < tol) {
            converged = true;
            ++k;
            break;
        }
    }
    const T half = (std_normal_cdf(x) + std_normal_cdf(y)) / T(2);
    T value;
    if (variant == SeriesVariant::AtanExtYes) {
        value = half + (asin(rho_x) + asin(rho_y)) / two_pi<T>() - prefactor * sum - beta;
    } else {
        value = half + prefactor * sum - beta;
    }
    return UnifiedResult<T>{value, k, converged};
}

/// Phi2(h,0;rho) + Phi2(rh,0;rhobar) - [Phi(h) + Phi(rh) - Phi(h)Phi(rh) - beta],
/// rhobar = sgn(rho) sqrt(1 - rho^2), beta = 1/2 iff rho < 0.
template <RealScalar T>
T owen5_transform_identity(const T& h, const Correlation<T>& c, SeriesVariant variant = SeriesVariant::AtanExtNo) {
    if (c.degenerate() || c.rho == T(0)) {
        throw std::domain_error("owen5_transform_identity: requires 0 < |rho| < 1");
    }
    const T r = c.slope();
    const T rh = r * h;
    const Correlation<T> bar(sqrt(c.one_minus_sq()) * sgn(c.rho));
    const T a = std_normal_cdf(h);
    const T b = std_normal_cdf(rh);
    const T beta = c.rho < T(0) ? T(0.5) : T(0);
    return phi2_h0(h, c, variant) + phi2_h0(rh, bar, variant) - (a + b - a * b - beta);
}

}  // namespace owent
