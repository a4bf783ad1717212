#pragma once

// Arbitrary-precision realization of the scalar contract, backed by MPFR.
// New values take the calling thread's default precision; use
// PrecisionScope to change it for a block of code.

#include <mpfr.h>

#include <concepts>
#include <string>
#include <type_traits>

#include "owent/real.hpp"

namespace owent {

class MpfrReal {
public:
    MpfrReal();
    MpfrReal(double value);  // NOLINT(google-explicit-constructor): exact conversion
    template <std::integral I>
    MpfrReal(I value) : MpfrReal(default_precision(), 0) {  // NOLINT(google-explicit-constructor)
        if constexpr (std::is_signed_v<I>) {
            mpfr_set_si(value_, static_cast<long>(value), MPFR_RNDN);
        } else {
            mpfr_set_ui(value_, static_cast<unsigned long>(value), MPFR_RNDN);
        }
    }
    MpfrReal(const MpfrReal& other);
    MpfrReal(MpfrReal&& other) noexcept;
    MpfrReal& operator=(const MpfrReal& other);
    MpfrReal& operator=(MpfrReal&& other) noexcept;
    ~MpfrReal();

    /// Parses a decimal string at the current default precision.
    static MpfrReal from_string(const std::string& text);

    static mpfr_prec_t default_precision();
    static void set_default_precision(mpfr_prec_t bits);

    mpfr_prec_t precision() const { return mpfr_get_prec(value_); }
    double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }
    /// Scientific notation with `digits` significant digits.
    std::string to_string(int digits = 20) const;

    mpfr_srcptr get() const { return value_; }
    mpfr_ptr get() { return value_; }

    MpfrReal& operator+=(const MpfrReal& rhs);
    MpfrReal& operator-=(const MpfrReal& rhs);
    MpfrReal& operator*=(const MpfrReal& rhs);
    MpfrReal& operator/=(const MpfrReal& rhs);

    friend MpfrReal operator+(MpfrReal lhs, const MpfrReal& rhs) { return lhs += rhs; }
    friend MpfrReal operator-(MpfrReal lhs, const MpfrReal& rhs) { return lhs -= rhs; }
    friend MpfrReal operator*(MpfrReal lhs, const MpfrReal& rhs) { return lhs *= rhs; }
    friend MpfrReal operator/(MpfrReal lhs, const MpfrReal& rhs) { return lhs /= rhs; }
    friend MpfrReal operator-(const MpfrReal& x);

    friend bool operator<(const MpfrReal& a, const MpfrReal& b) { return mpfr_less_p(a.value_, b.value_) != 0; }
    friend bool operator>(const MpfrReal& a, const MpfrReal& b) { return mpfr_greater_p(a.value_, b.value_) != 0; }
    friend bool operator<=(const MpfrReal& a, const MpfrReal& b) { return mpfr_lessequal_p(a.value_, b.value_) != 0; }
    friend bool operator>=(const MpfrReal& a, const MpfrReal& b) { return mpfr_greaterequal_p(a.value_, b.value_) != 0; }
    friend bool operator==(const MpfrReal& a, const MpfrReal& b) { return mpfr_equal_p(a.value_, b.value_) != 0; }
    friend bool operator!=(const MpfrReal& a, const MpfrReal& b) { return !(a == b); }

    friend MpfrReal exp(const MpfrReal& x);
    friend MpfrReal log(const MpfrReal& x);
    friend MpfrReal sqrt(const MpfrReal& x);
    friend MpfrReal atan(const MpfrReal& x);
    friend MpfrReal asin(const MpfrReal& x);
    friend MpfrReal abs(const MpfrReal& x);
    friend MpfrReal erfc(const MpfrReal& x);
    friend bool isfinite(const MpfrReal& x) { return mpfr_number_p(x.value_) != 0; }

private:
    explicit MpfrReal(mpfr_prec_t bits, int /*tag*/);

    mpfr_t value_;
};

/// Sets the thread's default MPFR precision for the lifetime of the scope.
class PrecisionScope {
public:
    explicit PrecisionScope(mpfr_prec_t bits);
    ~PrecisionScope();
    PrecisionScope(const PrecisionScope&) = delete;
    PrecisionScope& operator=(const PrecisionScope&) = delete;

private:
    mpfr_prec_t saved_;
};

template <>
struct real_traits<MpfrReal> {
    static MpfrReal epsilon();
    static MpfrReal min_normal();
    static MpfrReal pi();
    static long bits() { return static_cast<long>(MpfrReal::default_precision()); }
};

/// Standard normal cdf, correctly rounded to the current precision up to a
/// few units in the last place (evaluated with guard bits).
MpfrReal std_normal_cdf(const MpfrReal& h);

}  // namespace owent
