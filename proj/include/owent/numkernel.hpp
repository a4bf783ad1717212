#pragma once

// Low-level kernels: regularized incomplete gamma sequences, the standard
// normal cdf and two arctangent series.

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "owent/real.hpp"

namespace owent {

/// Standard normal cdf at binary64. Relative error stays within a few ulp
/// in both tails; Phi(h) + Phi(-h) == 1 up to one rounding.
double std_normal_cdf(double h);

/// Carrier of the integer-shape gamma recursion
///   b_0 = e^{-q}, d_0 = b_0, b_{k+1} = q b_k / (k+1), d_{k+1} = d_k + b_{k+1},
/// where d_k = Q(k+1, q).
template <RealScalar T>
struct GammaSeqState {
    T q;
    std::size_t k = 0;
    T b;
    T d;

    /// e^{-q} below the smallest normal number is flushed to zero, so every
    /// d_k of an underflowed sequence is 0.
    static GammaSeqState start(const T& q) {
        T b0 = exp(-q);
        if (b0 < real_traits<T>::min_normal()) {
            b0 = T(0);
        }
        return GammaSeqState{q, 0, b0, b0};
    }

    void advance() {
        ++k;
        b = q * b / T(k);
        d = d + b;
    }

    bool underflowed() const { return b == T(0) && d == T(0); }
};

/// Q(k+1, q) for k = 0..n.
template <RealScalar T>
std::vector<T> reg_gamma_q_seq(const T& q, std::size_t n) {
    if (q < T(0)) {
        throw std::domain_error("reg_gamma_q_seq: q must be nonnegative");
    }
    std::vector<T> out;
    out.reserve(n + 1);
    auto state = GammaSeqState<T>::start(q);
    out.push_back(state.d);
    for (std::size_t k = 0; k < n; ++k) {
        state.advance();
        out.push_back(state.d);
    }
    return out;
}

/// Q(k+1/2, q) for k = 0..n, seeded with Q(1/2, q) = 2 Phi(-sqrt(2q)).
template <RealScalar T>
std::vector<T> reg_gamma_half_seq(const T& q, std::size_t n) {
    if (!(q > T(0))) {
        throw std::domain_error("reg_gamma_half_seq: q must be positive");
    }
    std::vector<T> out;
    out.reserve(n + 1);
    T b = exp(-q) / sqrt(q * real_traits<T>::pi());
    T d = T(2) * std_normal_cdf(-sqrt(T(2) * q));
    out.push_back(d);
    for (std::size_t k = 0; k < n; ++k) {
        b = q * b / (T(k) + T(0.5));
        d = d + b;
        out.push_back(d);
    }
    return out;
}

template <RealScalar T>
struct ArctanResult {
    T value;
    std::size_t terms = 0;
    /// Upper bound on |arctan r - value| from the truncation alone.
    T bound;
};

template <RealScalar T>
struct ArctanPartial {
    T sum;    ///< S_n, signed like r
    T lower;  ///< B_n
    T upper;  ///< (1 + r^2) B_n
};

/// Partial sum of Euler's series
///   arctan r = r/(1+r^2) sum_k (2k)!!/(2k+1)!! (r^2/(1+r^2))^k
/// truncated after term n (n = -1 gives the empty sum), with the two-sided
/// remainder bound B_n <= |R_n| <= (1+r^2) B_n.
template <RealScalar T>
ArctanPartial<T> arctan_euler_partial(const T& r, std::ptrdiff_t n) {
    const T r2 = r * r;
    const T x = r2 / (T(1) + r2);
    const T prefactor = r / (T(1) + r2);
    T coeff(1);  // (2k)!!/(2k+1)!! x^k
    T sum(0);
    for (std::ptrdiff_t k = 0; k <= n; ++k) {
        if (k > 0) {
            coeff = coeff * T(2 * k) / T(2 * k + 1) * x;
        }
        sum = sum + coeff;
    }
    const std::ptrdiff_t next = n + 1;
    T next_coeff = coeff;
    if (next > 0) {
        next_coeff = next_coeff * T(2 * next) / T(2 * next + 1) * x;
    }
    const T lower = abs(prefactor) * next_coeff;
    return ArctanPartial<T>{prefactor * sum, lower, (T(1) + r2) * lower};
}

/// arctan r from Euler's series. |r| > 1 goes through
/// arctan r = sgn(r) (pi/2 - arctan(1/r)) so the ratio stays below 1/2.
/// A negative eps runs until the partial sums stop changing.
template <RealScalar T>
ArctanResult<T> arctan_euler(const T& r, const T& eps) {
    if (r == T(0)) {
        return ArctanResult<T>{T(0), 0, T(0)};
    }
    const bool complement = T(1) < abs(r);
    const T s = complement ? T(1) / abs(r) : abs(r);
    const T s2 = s * s;
    const T x = s2 / (T(1) + s2);
    const T prefactor = s / (T(1) + s2);
    T coeff(1);
    T sum(1);
    std::size_t terms = 1;
    T bound = s * coeff * T(2) / T(3) * x;
    const std::size_t cap = static_cast<std::size_t>(20 * real_traits<T>::bits()) + 64;
    while (terms < cap) {
        if (eps > T(0) && bound < eps) {
            break;
        }
        const std::size_t k = terms;
        coeff = coeff * T(2 * k) / T(2 * k + 1) * x;
        const T next = sum + coeff;
        ++terms;
        const bool stalled = next == sum;
        sum = next;
        bound = s * coeff * T(2 * k + 2) / T(2 * k + 3) * x;
        if (stalled) {
            break;
        }
    }
    T value = prefactor * sum;
    if (complement) {
        value = real_traits<T>::pi() / T(2) - value;
    }
    if (r < T(0)) {
        value = -value;
    }
    return ArctanResult<T>{value, terms, bound};
}

/// arctan r = r/sqrt(1+r^2) sum_k (2k-1)!!/((2k)!!(2k+1)) (r^2/(1+r^2))^k,
/// the arcsine series at r/sqrt(1+r^2). |r| > 1 uses the complement.
template <RealScalar T>
T arctan_arcsin_series(const T& r, const T& eps) {
    if (r == T(0)) {
        return T(0);
    }
    const bool complement = T(1) < abs(r);
    const T s = complement ? T(1) / abs(r) : abs(r);
    const T s2 = s * s;
    const T x = s2 / (T(1) + s2);
    const T prefactor = s / sqrt(T(1) + s2);
    T u(1);  // (2k-1)!!/(2k)!! x^k
    T sum(1);
    const std::size_t cap = static_cast<std::size_t>(20 * real_traits<T>::bits()) + 64;
    for (std::size_t k = 1; k < cap; ++k) {
        u = u * T(2 * k - 1) / T(2 * k) * x;
        const T term = u / T(2 * k + 1);
        const T next = sum + term;
        if (next == sum) {
            break;
        }
        sum = next;
        // remaining terms shrink at least geometrically with ratio x
        if (eps > T(0) && prefactor * term * x / (T(1) - x) < eps) {
            break;
        }
    }
    T value = prefactor * sum;
    if (complement) {
        value = real_traits<T>::pi() / T(2) - value;
    }
    return r < T(0) ? -value : value;
}

}  // namespace owent
