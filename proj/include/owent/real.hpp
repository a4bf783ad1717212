#pragma once

// Scalar contract shared by every routine in the library. binary64 is the
// default realization; an MPFR-backed type lives in mpfr_real.hpp.

#include <cmath>
#include <concepts>
#include <limits>
#include <numbers>

namespace owent {

// Elementary functions for the binary64 realization. Templates in this
// namespace call these unqualified so that other realizations are picked up
// through argument-dependent lookup.
inline double exp(double x) { return std::exp(x); }
inline double log(double x) { return std::log(x); }
inline double sqrt(double x) { return std::sqrt(x); }
inline double atan(double x) { return std::atan(x); }
inline double asin(double x) { return std::asin(x); }
inline double abs(double x) { return std::fabs(x); }
inline double erfc(double x) { return std::erfc(x); }
inline bool isfinite(double x) { return std::isfinite(x); }
inline long double exp(long double x) { return std::exp(x); }

template <class T>
struct real_traits;

template <>
struct real_traits<double> {
    static constexpr double epsilon() { return std::numeric_limits<double>::epsilon(); }
    /// Smallest positive normal value (2.225e-308).
    static constexpr double min_normal() { return std::numeric_limits<double>::min(); }
    static constexpr double pi() { return std::numbers::pi; }
    static constexpr long bits() { return std::numeric_limits<double>::digits; }
};

template <class T>
concept RealScalar = requires(T a, T b) {
    { a + b } -> std::convertible_to<T>;
    { a - b } -> std::convertible_to<T>;
    { a * b } -> std::convertible_to<T>;
    { a / b } -> std::convertible_to<T>;
    { -a } -> std::convertible_to<T>;
    { a < b } -> std::convertible_to<bool>;
    { a <= b } -> std::convertible_to<bool>;
    { a == b } -> std::convertible_to<bool>;
    { exp(a) } -> std::convertible_to<T>;
    { log(a) } -> std::convertible_to<T>;
    { sqrt(a) } -> std::convertible_to<T>;
    { atan(a) } -> std::convertible_to<T>;
    { abs(a) } -> std::convertible_to<T>;
    { real_traits<T>::epsilon() } -> std::convertible_to<T>;
    { real_traits<T>::min_normal() } -> std::convertible_to<T>;
    { real_traits<T>::pi() } -> std::convertible_to<T>;
    { real_traits<T>::bits() } -> std::convertible_to<long>;
    T(0.5);
};

/// sgn with sgn(0) = +1.
template <class T>
T sgn(const T& x) {
    return x < T(0) ? T(-1) : T(1);
}

template <class T>
T two_pi() {
    return T(2) * real_traits<T>::pi();
}

}  // namespace owent
