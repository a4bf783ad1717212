#pragma once

// Tetrachoric series for the bivariate normal cdf
//
//   Phi2(x,y;rho) = Phi(x)Phi(y) + phi(x)phi(y) sum_k rho^{k+1} He_k(x) He_k(y) / (k+1)!
//   Phi2(h,0;rho) = Phi(h)/2 + rho/sqrt(2pi) phi(h) sum_k (-1)^k rho^{2k} He_{2k}(h) / (2^k k! (2k+1))
//
// Hermite values are never formed on their own. The recursions carry
// phi(x) He_k(x) together with the power and factorial weights, so terms
// stay finite for any number of iterations.

#include <cstddef>
#include <stdexcept>
#include <string>

#include "owent/numkernel.hpp"
#include "owent/owen_t.hpp"
#include "owent/real.hpp"

namespace owent {

/// He_{2k}(x) and He_{2k+1}(x) as an adjacent pair.
template <RealScalar T>
struct HermiteEvenSeq {
    T x;
    std::size_t k = 0;
    T even;  ///< He_{2k}(x)
    T odd;   ///< He_{2k+1}(x)

    static HermiteEvenSeq start(const T& x) { return HermiteEvenSeq{x, 0, T(1), x}; }

    void advance() {
        const T next_even = x * odd - T(2 * k + 1) * even;
        const T next_odd = x * next_even - T(2 * k + 2) * odd;
        even = next_even;
        odd = next_odd;
        ++k;
    }
};

template <RealScalar T>
struct TetrachoricResult {
    T value;
    std::size_t iterations = 0;
    bool converged = true;
    bool slow = false;  ///< |rho| > 0.99, where the plain series needs very many terms
};

inline constexpr std::size_t kTetrachoricCap = 1000000;

namespace detail {

template <RealScalar T>
T normal_pdf(const T& x) {
    return exp(-x * x / T(2)) / sqrt(two_pi<T>());
}

template <RealScalar T>
void check_rho(const T& rho, const char* who) {
    if (!isfinite(rho) || !(abs(rho) < T(1))) {
        throw std::domain_error(std::string(who) + ": requires |rho| < 1");
    }
}

// Stopping rule shared by both series: the partial sum no longer moves
// while the terms shrink, or the term falls below a positive eps.
template <RealScalar T>
bool tetrachoric_done(const T& sum, const T& next, const T& term, const T& previous_term, const T& eps) {
    if (eps > T(0) && abs(term) < eps) {
        return true;
    }
    return next == sum && abs(term) <= abs(previous_term);
}

// rho/sqrt(2pi) phi(h) sum_k (-1)^k rho^{2k} He_{2k}(h) / (2^k k! (2k+1)),
// i.e. Phi2(h,0;rho) - Phi(h)/2.
template <RealScalar T>
TetrachoricResult<T> h0_series(const T& h, const T& rho, const T& eps) {
    const T rho2 = rho * rho;
    const T rx = rho * h;
    T A = normal_pdf(h);  // phi He_{2k} rho^{2k} / (2^k k!)
    T B(0);               // phi He_{2k-1} rho^{2k-1} / (2^{k-1} (k-1)!)
    T sum = A;
    T previous_term = A;
    std::size_t k = 0;
    std::size_t quiet = 0;
    while (k < kTetrachoricCap) {
        B = rx * A - rho2 * B;
        A = (rx * B - T(2 * k + 1) * rho2 * A) / T(2 * (k + 1));
        ++k;
        T term = A / T(2 * k + 1);
        if (k % 2 == 1) {
            term = -term;
        }
        const T next = sum + term;
        // a Hermite zero can make a single term vanish early
        quiet = tetrachoric_done(sum, next, term, previous_term, eps) ? quiet + 1 : 0;
        sum = next;
        previous_term = term;
        if (quiet >= 2 || (eps > T(0) && quiet >= 1)) {
            break;
        }
    }
    return TetrachoricResult<T>{rho / sqrt(two_pi<T>()) * sum, k, k < kTetrachoricCap, T(0.99) < abs(rho)};
}

}  // namespace detail

/// Phi2(x,y;rho) from the full tetrachoric series. The summation is
/// symmetric in (x,y), so swapping the arguments gives the same bits.
template <RealScalar T>
TetrachoricResult<T> phi2_tetrachoric_xy(const T& x, const T& y, const T& rho, const T& eps = T(-1)) {
    detail::check_rho(rho, "phi2_tetrachoric_xy");
    const T base = std_normal_cdf(x) * std_normal_cdf(y);
    if (rho == T(0)) {
        return TetrachoricResult<T>{base, 0, true, false};
    }
    const T s = sqrt(abs(rho));
    const T ar = abs(rho);
    const bool negative = rho < T(0);
    // U_k(x) = phi(x) He_k(x) |rho|^{k/2} / sqrt(k!)
    T ux = detail::normal_pdf(x);
    T uy = detail::normal_pdf(y);
    T ux_prev(0);
    T uy_prev(0);
    T sum(0);
    T previous_term(0);
    std::size_t k = 0;
    std::size_t quiet = 0;
    while (k < kTetrachoricCap) {
        T term = ux * uy * rho / T(k + 1);
        if (negative && k % 2 == 1) {
            term = -term;
        }
        const T next = sum + term;
        quiet = (k > 0 && detail::tetrachoric_done(sum, next, term, previous_term, eps)) ? quiet + 1 : 0;
        sum = next;
        previous_term = term;
        ++k;
        if (quiet >= 3 || (eps > T(0) && quiet >= 1)) {
            break;
        }
        const T root_k = sqrt(T(k - 1));
        const T root_next = sqrt(T(k));
        const T nx = (s * x * ux - ar * root_k * ux_prev) / root_next;
        const T ny = (s * y * uy - ar * root_k * uy_prev) / root_next;
        ux_prev = ux;
        uy_prev = uy;
        ux = nx;
        uy = ny;
    }
    return TetrachoricResult<T>{base + sum, k, k < kTetrachoricCap, T(0.99) < ar};
}

/// Phi2(h,0;rho). With `accelerated` and rho^2 > 1/2 the series runs at
/// (rh, rhobar) with rhobar = sgn(rho) sqrt(1 - rho^2), and
///   Phi2(h,0;rho) = Phi(h)/2 + U(h,r) - [Phi2(rh,0;rhobar) - Phi(rh)/2].
template <RealScalar T>
TetrachoricResult<T> phi2_tetrachoric_h0(const T& h, const T& rho, bool accelerated, const T& eps = T(-1)) {
    detail::check_rho(rho, "phi2_tetrachoric_h0");
    if (!isfinite(h)) {
        throw std::invalid_argument("phi2_tetrachoric_h0: h must be finite");
    }
    const T half_cdf = std_normal_cdf(h) / T(2);
    if (rho == T(0)) {
        return TetrachoricResult<T>{half_cdf, 0, true, false};
    }
    const T rest = (T(1) - rho) * (T(1) + rho);
    if (accelerated && T(0.5) < rho * rho) {
        const T r = rho / sqrt(rest);
        const T rho_bar = sqrt(rest) * sgn(rho);
        auto inner = detail::h0_series(r * h, rho_bar, eps);
        inner.value = half_cdf + owen_u(h, r) - inner.value;
        inner.slow = false;
        return inner;
    }
    auto out = detail::h0_series(h, rho, eps);
    out.value = half_cdf + out.value;
    return out;
}

/// T(h,r) = Phi2(h,0;rho) - Phi(h)/2 from the h0 series, rho = r/sqrt(1+r^2).
/// With `accelerated` and |r| > 1 this is U(h,r) - T(rh,1/r), the series
/// running at rhobar = sgn(r)/sqrt(1+r^2).
template <RealScalar T>
TetrachoricResult<T> owen_t_tetrachoric(const T& h, const T& r, bool accelerated, const T& eps = T(-1)) {
    if (!isfinite(h) || !isfinite(r)) {
        throw std::invalid_argument("owen_t_tetrachoric: arguments must be finite");
    }
    if (r == T(0)) {
        return TetrachoricResult<T>{T(0), 0, true, false};
    }
    if (accelerated && T(1) < abs(r)) {
        const T inv = T(1) / r;
        const T rho_bar = inv / sqrt(T(1) + inv * inv);
        auto inner = detail::h0_series(r * h, rho_bar, eps);
        inner.value = owen_u(h, r) - inner.value;
        inner.slow = false;
        return inner;
    }
    const T rho = T(1) < abs(r) ? sgn(r) / sqrt(T(1) + T(1) / (r * r)) : r / sqrt(T(1) + r * r);
    if (!(abs(rho) < T(1))) {
        throw std::domain_error("owen_t_tetrachoric: slope too large for the plain series");
    }
    return detail::h0_series(h, rho, eps);
}

}  // namespace owent
