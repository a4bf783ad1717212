#include "owent/mpfr_real.hpp"

#include <cstdio>
#include <memory>
#include <stdexcept>

namespace owent {
namespace {

thread_local mpfr_prec_t g_default_precision = 53;

// Extra working bits for the normal cdf so that the argument scaling and
// the final halving stay below one rounding of the target precision.
constexpr mpfr_prec_t kCdfGuardBits = 32;

}  // namespace

MpfrReal::MpfrReal(mpfr_prec_t bits, int /*tag*/) {
    mpfr_init2(value_, bits);
}

MpfrReal::MpfrReal() : MpfrReal(default_precision(), 0) {
    mpfr_set_zero(value_, 1);
}

MpfrReal::MpfrReal(double value) : MpfrReal(default_precision(), 0) {
    mpfr_set_d(value_, value, MPFR_RNDN);
}

MpfrReal::MpfrReal(const MpfrReal& other) : MpfrReal(other.precision(), 0) {
    mpfr_set(value_, other.value_, MPFR_RNDN);
}

MpfrReal::MpfrReal(MpfrReal&& other) noexcept : MpfrReal(MPFR_PREC_MIN, 0) {
    mpfr_swap(value_, other.value_);
}

MpfrReal& MpfrReal::operator=(const MpfrReal& other) {
    if (this != &other) {
        mpfr_set_prec(value_, other.precision());
        mpfr_set(value_, other.value_, MPFR_RNDN);
    }
    return *this;
}

MpfrReal& MpfrReal::operator=(MpfrReal&& other) noexcept {
    mpfr_swap(value_, other.value_);
    return *this;
}

MpfrReal::~MpfrReal() {
    mpfr_clear(value_);
}

MpfrReal MpfrReal::from_string(const std::string& text) {
    MpfrReal out;
    if (mpfr_set_str(out.value_, text.c_str(), 10, MPFR_RNDN) != 0) {
        throw std::invalid_argument("MpfrReal: cannot parse '" + text + "'");
    }
    return out;
}

mpfr_prec_t MpfrReal::default_precision() {
    return g_default_precision;
}

void MpfrReal::set_default_precision(mpfr_prec_t bits) {
    if (bits < MPFR_PREC_MIN || bits > MPFR_PREC_MAX) {
        throw std::invalid_argument("MpfrReal: precision out of range");
    }
    g_default_precision = bits;
}

std::string MpfrReal::to_string(int digits) const {
    char* raw = nullptr;
    if (mpfr_asprintf(&raw, "%.*Re", digits - 1, value_) < 0) {
        throw std::runtime_error("MpfrReal: formatting failed");
    }
    std::unique_ptr<char, void (*)(char*)> holder(raw, [](char* p) { mpfr_free_str(p); });
    return std::string(raw);
}

MpfrReal& MpfrReal::operator+=(const MpfrReal& rhs) {
    mpfr_add(value_, value_, rhs.value_, MPFR_RNDN);
    return *this;
}

MpfrReal& MpfrReal::operator-=(const MpfrReal& rhs) {
    mpfr_sub(value_, value_, rhs.value_, MPFR_RNDN);
    return *this;
}

MpfrReal& MpfrReal::operator*=(const MpfrReal& rhs) {
    mpfr_mul(value_, value_, rhs.value_, MPFR_RNDN);
    return *this;
}

MpfrReal& MpfrReal::operator/=(const MpfrReal& rhs) {
    mpfr_div(value_, value_, rhs.value_, MPFR_RNDN);
    return *this;
}

MpfrReal operator-(const MpfrReal& x) {
    MpfrReal out(x.precision(), 0);
    mpfr_neg(out.value_, x.value_, MPFR_RNDN);
    return out;
}

#define OWENT_MPFR_UNARY(name, fn)                  \
    MpfrReal name(const MpfrReal& x) {              \
        MpfrReal out(x.precision(), 0);             \
        fn(out.value_, x.value_, MPFR_RNDN);        \
        return out;                                 \
    }

OWENT_MPFR_UNARY(exp, mpfr_exp)
OWENT_MPFR_UNARY(log, mpfr_log)
OWENT_MPFR_UNARY(sqrt, mpfr_sqrt)
OWENT_MPFR_UNARY(atan, mpfr_atan)
OWENT_MPFR_UNARY(asin, mpfr_asin)
OWENT_MPFR_UNARY(abs, mpfr_abs)
OWENT_MPFR_UNARY(erfc, mpfr_erfc)

#undef OWENT_MPFR_UNARY

PrecisionScope::PrecisionScope(mpfr_prec_t bits) : saved_(MpfrReal::default_precision()) {
    MpfrReal::set_default_precision(bits);
}

PrecisionScope::~PrecisionScope() {
    MpfrReal::set_default_precision(saved_);
}

MpfrReal real_traits<MpfrReal>::epsilon() {
    MpfrReal out(1);
    mpfr_mul_2si(out.get(), out.get(), 1 - static_cast<long>(MpfrReal::default_precision()), MPFR_RNDN);
    return out;
}

MpfrReal real_traits<MpfrReal>::min_normal() {
    MpfrReal out(1);
    mpfr_mul_2si(out.get(), out.get(), mpfr_get_emin() - 1, MPFR_RNDN);
    return out;
}

MpfrReal real_traits<MpfrReal>::pi() {
    MpfrReal out;
    mpfr_const_pi(out.get(), MPFR_RNDN);
    return out;
}

MpfrReal std_normal_cdf(const MpfrReal& h) {
    const mpfr_prec_t target = h.precision();
    mpfr_t work;
    mpfr_init2(work, target + kCdfGuardBits);
    // Phi(h) = erfc(-h / sqrt(2)) / 2
    mpfr_t root2;
    mpfr_init2(root2, target + kCdfGuardBits);
    mpfr_set_ui(root2, 2, MPFR_RNDN);
    mpfr_sqrt(root2, root2, MPFR_RNDN);
    mpfr_div(work, h.get(), root2, MPFR_RNDN);
    mpfr_neg(work, work, MPFR_RNDN);
    mpfr_erfc(work, work, MPFR_RNDN);
    mpfr_div_2ui(work, work, 1, MPFR_RNDN);

    MpfrReal out;
    mpfr_set_prec(out.get(), target);
    mpfr_set(out.get(), work, MPFR_RNDN);
    mpfr_clear(root2);
    mpfr_clear(work);
    return out;
}

}  // namespace owent
