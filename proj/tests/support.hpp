#pragma once

// Shared helpers for the test binaries: ulp arithmetic and a small
// seeded property runner that counts cases and keeps the first
// counterexample.

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace owent::testing {

/// Spacing of doubles at |x|, never below the smallest normal spacing.
inline double ulp(double x) {
    const double a = std::fabs(x);
    const double base = a < std::numeric_limits<double>::min() ? std::numeric_limits<double>::min() : a;
    return std::nextafter(base, std::numeric_limits<double>::infinity()) - base;
}

/// n ulp of the largest magnitude among the operands.
inline double ulps_of(double n, std::initializer_list<double> operands) {
    double m = 0.0;
    for (double v : operands) {
        m = std::max(m, std::fabs(v));
    }
    return n * ulp(m);
}

/// AtanExtYes forms T as arctan(r')/2pi - S at the reduced slope
/// r' = min(|r|, 1/|r|), so its rounding is relative to that constant.
inline double yes_scale(double r) {
    const double a = std::fabs(r);
    return a == 0.0 ? 0.0 : std::atan(a <= 1.0 ? a : 1.0 / a) / (2.0 * 3.14159265358979323846);
}

class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}
    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
    bool coin() { return (rng_() & 1U) != 0; }
    /// mostly uniform, sometimes one of the given special values
    double pick(double lo, double hi, std::initializer_list<double> specials) {
        if (specials.size() > 0 && integer(0, 7) == 0) {
            return *(specials.begin() + integer(0, static_cast<int>(specials.size()) - 1));
        }
        return uniform(lo, hi);
    }

private:
    std::mt19937_64 rng_;
};

struct PropertyOutcome {
    std::string name;
    std::size_t cases = 0;
    std::size_t failures = 0;
    std::string counterexample;
};

/// Runs `body` for `cases` draws. `body` returns an empty string on success
/// and a description of the failing input otherwise.
inline PropertyOutcome check_property(const std::string& name, std::size_t cases, std::uint64_t seed,
                                      const std::function<std::string(Gen&)>& body) {
    PropertyOutcome out{name};
    Gen gen(seed);
    for (std::size_t i = 0; i < cases; ++i) {
        const std::string failure = body(gen);
        ++out.cases;
        if (!failure.empty()) {
            if (out.failures == 0) {
                out.counterexample = failure;
            }
            ++out.failures;
        }
    }
    return out;
}

/// "name=value ..." with round-trip precision.
template <class... Args>
std::string describe(Args&&... pairs) {
    std::ostringstream os;
    os.precision(17);
    ((os << pairs << ' '), ...);
    return os.str();
}

}  // namespace owent::testing
