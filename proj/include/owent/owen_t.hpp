#pragma once

// Owen's T function from the regularized-incomplete-gamma series
//
//   T(h,r) = arctan(r)/2pi - r/(2pi(1+r^2)) sum_k (2k)!!/(2k+1)!! P(k+1,q) p^k   (a)
//          =                 r/(2pi(1+r^2)) sum_k (2k)!!/(2k+1)!! Q(k+1,q) p^k   (b)
//
// with p = r^2/(1+r^2) and q = (1+r^2) h^2 / 2. Form (b) is summed by
// Recursion 1 (SeriesVariant::AtanExtNo), form (a) by Recursion 2
// (SeriesVariant::AtanExtYes). For |r| > 1 the same sums are taken at
// (rh, 1/r) and T(h,r) = U(h,r) - T(rh, 1/r).

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numbers>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <type_traits>
#include <vector>

#include "owent/numkernel.hpp"
#include "owent/real.hpp"

namespace owent {

enum class SeriesVariant {
    AtanExtNo,   ///< Recursion 1, Q-weighted series, no external arctangent
    AtanExtYes,  ///< Recursion 2, P-weighted series, arctangent added afterwards
};

/// Recursion 2 can start from a_0 (1 - d_0) - arctan|r| / 2pi, which makes
/// its partial sums converge to -T from below (used for bracketing).
enum class RecursionMode { Standard, Modified };

inline const char* to_string(SeriesVariant v) {
    return v == SeriesVariant::AtanExtNo ? "atan-ext-no" : "atan-ext-yes";
}

namespace detail {

// Low-order parts of p and q. In binary64 the rounding of q = (1+r^2)h^2/2
// would reach the result amplified by q through e^{-q} and q^k/k!, and the
// rounding of p by k through p^k, so both are carried as double-double.
// Other types carry zeros.
template <RealScalar T>
struct ParamTails {
    T p_lo{0};
    T q_lo{0};
    T weight_lo{0};
};

inline ParamTails<double> param_tails(double h, double r, bool inverse) {
    const double r2 = r * r;
    const double h2 = h * h;
    if (!std::isfinite(r2) || !std::isfinite(h2) || r2 * h2 > 1e300) {
        return {};
    }
    const double r2_lo = std::fma(r, r, -r2);
    // s + s_lo = 1 + r^2
    const double s = 1.0 + r2;
    const double bb = s - 1.0;
    const double s_lo = (1.0 - (s - bb)) + (r2 - bb) + r2_lo;
    const double h2_lo = std::fma(h, h, -h2);
    const double sq = s * h2;
    const double sq_lo = std::fma(s, h2, -sq) + s * h2_lo + s_lo * h2;
    ParamTails<double> out;
    out.q_lo = sq_lo / 2.0;
    const double w = std::fabs(r) / s;
    out.weight_lo = (std::fma(-w, s, std::fabs(r)) - w * s_lo) / s;
    if (inverse) {
        const double p = 1.0 / s;
        out.p_lo = (std::fma(-p, s, 1.0) - p * s_lo) / s;
    } else {
        const double p = r2 / s;
        out.p_lo = (std::fma(-p, s, r2) + r2_lo - p * s_lo) / s;
    }
    return out;
}

template <RealScalar T>
ParamTails<T> param_tails(const T&, const T&, bool) {
    return {};
}

}  // namespace detail

template <RealScalar T>
struct OwenParams {
    T h;
    T r;
    T p;       ///< r^2 / (1 + r^2)
    T q;       ///< (1 + r^2) h^2 / 2
    T weight;  ///< |r| / (1 + r^2), invariant under the transform
    bool transformed = false;
    T p_lo{0};  ///< p - fl(p) where tracked
    T q_lo{0};  ///< q - fl(q) where tracked
    T weight_lo{0};

    static OwenParams make(const T& h, const T& r) {
        const T r2 = r * r;
        const T one_plus = T(1) + r2;
        const auto tails = detail::param_tails(h, r, false);
        return OwenParams{h,     r,           r2 / one_plus, one_plus * (h * h) / T(2), abs(r) / one_plus,
                          false, tails.p_lo, tails.q_lo, tails.weight_lo};
    }

    /// (h, r) -> (rh, 1/r). q and |r|/(1+r^2) carry over unchanged; p maps
    /// to 1/(1+r^2).
    OwenParams transform() const {
        if (r == T(0)) {
            throw std::domain_error("OwenParams::transform: r must be nonzero");
        }
        const T one_plus = T(1) + r * r;
        const auto tails = detail::param_tails(h, r, true);
        return OwenParams{r * h, T(1) / r, T(1) / one_plus, q, weight, !transformed, tails.p_lo, q_lo, weight_lo};
    }
};

/// Type of the a_k, b_k, d_k chains. In binary64 they run in extended
/// precision, so that the O(k) roundings of the chains do not reach the sum;
/// S_k and the termination test stay in T.
template <RealScalar T>
struct chain_type {
    using type = T;
};
template <>
struct chain_type<double> {
    using type = long double;
};

template <class W>
W chain_pi() {
    if constexpr (std::is_same_v<W, long double>) {
        return 3.141592653589793238462643383279502884L;
    } else {
        return real_traits<W>::pi();
    }
}

/// Live variables of Recursions 1 and 2.
template <RealScalar T>
struct RecursionState {
    using W = typename chain_type<T>::type;

    SeriesVariant variant = SeriesVariant::AtanExtNo;
    W p, q;
    T g;
    std::size_t k = 0;
    W a, b, d;
    W sum;  ///< running sum in the chain type; S is its rounding to T
    T S, e;
    T S_prev;
    bool underflow = false;  ///< e^{-q} below the smallest normal number
    bool finished = false;
    T sign;

    static RecursionState start(const OwenParams<T>& params, SeriesVariant variant,
                                RecursionMode mode = RecursionMode::Standard) {
        RecursionState s;
        s.variant = variant;
        s.sign = sgn(params.r);
        s.p = W(params.p) + W(params.p_lo);
        s.q = W(params.q) + W(params.q_lo);
        const T pi = real_traits<T>::pi();
        s.a = (W(params.weight) + W(params.weight_lo)) / (W(2) * chain_pi<W>());
        s.b = exp(-s.q);
        if (s.b < W(real_traits<T>::min_normal())) {
            s.b = W(0);
            s.underflow = true;
        }
        s.d = s.b;
        const T abs_r = abs(params.r);
        if (variant == SeriesVariant::AtanExtNo) {
            s.g = params.p;
            s.e = abs_r * params.p / (T(3) * pi);
        } else {
            s.g = T(W(1) - s.d) * params.p;
            s.e = abs_r * T(W(1) - s.d) * s.g / (T(3) * pi);
        }
        s.sum = s.chain_term();
        if (variant == SeriesVariant::AtanExtYes && mode == RecursionMode::Modified) {
            s.sum = s.sum - W(atan(abs_r) / (T(2) * pi));
        }
        s.S = T(s.sum);
        s.S_prev = s.S;
        return s;
    }

    /// Current series term a_k d_k or a_k (1 - d_k).
    T term() const { return T(chain_term()); }
    W chain_term() const { return variant == SeriesVariant::AtanExtNo ? a * d : a * (W(1) - d); }

    /// One pass of the repeat loop; no termination test.
    void step() {
        const W kk(k);
        a = (W(2) * kk + W(2)) * p * a / (W(2) * kk + W(3));
        b = q * b / (kk + W(1));
        d = d + b;
        S_prev = S;
        sum = sum + chain_term();
        S = T(sum);
        e = (T(2) * T(k) + T(4)) * g * e / (T(2) * T(k) + T(5));
        ++k;
    }

    /// One pass followed by the termination test e_k < eps or S_k <= S_{k-1}.
    bool advance(const T& eps) {
        if (finished) {
            return true;
        }
        if (underflow && variant == SeriesVariant::AtanExtYes) {
            // All terms after the arctangent cancel to zero at this q.
            sum = W(0);
            S = T(0);
            S_prev = T(0);
            k = 1;
            finished = true;
            return true;
        }
#ifndef NDEBUG
        const T previous_term = term();
#endif
        step();
#ifndef NDEBUG
        if (variant == SeriesVariant::AtanExtYes) {
            assert(term() <= previous_term);
        }
#endif
        finished = e < eps || S <= S_prev;
        return finished;
    }

    T signed_sum() const { return sign * S; }
};

template <RealScalar T>
struct RecursionResult {
    T sum;  ///< sgn(r) S_n
    std::size_t iterations = 0;
    T bound;  ///< final e_k
    bool converged = true;
    bool underflow = false;
};

template <RealScalar T>
std::size_t iteration_cap() {
    return static_cast<std::size_t>(10 * real_traits<T>::bits());
}

/// Runs Recursion 1 or 2 to termination. A negative eps disables the e_k
/// test, so the loop stops only when the partial sums stagnate.
template <RealScalar T>
RecursionResult<T> recursion_core(const OwenParams<T>& params, SeriesVariant variant, const T& eps,
                                  RecursionMode mode = RecursionMode::Standard) {
    auto state = RecursionState<T>::start(params, variant, mode);
    const std::size_t cap = iteration_cap<T>();
    bool converged = true;
    while (!state.advance(eps)) {
        if (state.k >= cap) {
            converged = false;
            break;
        }
    }
    return RecursionResult<T>{state.signed_sum(), state.k, state.e, converged, state.underflow};
}

/// sgn(r) S_n after exactly n + 1 terms (n = -1: empty sum).
template <RealScalar T>
T recursion_partial_sum(const OwenParams<T>& params, SeriesVariant variant, std::ptrdiff_t n,
                        RecursionMode mode = RecursionMode::Standard) {
    if (n < 0) {
        return T(0);
    }
    auto state = RecursionState<T>::start(params, variant, mode);
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        state.step();
    }
    return state.signed_sum();
}

template <RealScalar T>
struct EvalReport {
    T value;
    std::size_t iterations = 0;
    T bound;  ///< final e_k, or 0 when the recursion stopped on stagnation
    SeriesVariant variant = SeriesVariant::AtanExtNo;
    bool transformed = false;
    T beta_applied;  ///< beta of the U(h,r) term that was evaluated
    bool converged = true;
};

template <RealScalar T>
struct TruncationBound {
    std::ptrdiff_t n = -1;
    T bound;
    SeriesVariant variant = SeriesVariant::AtanExtNo;
    bool transformed = false;
};

/// U(h,r) = (Phi(h) + Phi(rh))/2 - Phi(h) Phi(rh) - beta, beta = 1/2 iff r < 0.
/// Evaluated through the upper tails a = Phi(-|h|), b = Phi(-|rh|), using
/// U + beta = (a + b)/2 - ab and U(h,-r) = -U(h,r).
template <RealScalar T>
T owen_u(const T& h, const T& r) {
    const T a = std_normal_cdf(-abs(h));
    const T b = std_normal_cdf(-abs(r * h));
    const T value = (a + b) / T(2) - a * b;
    return r < T(0) ? -value : value;
}

/// Remainder bound after n terms:
///   AtanExtNo:  B_n = (2n+2)!!/(2n+3)!! |r|/2pi p^{n+1}
///   AtanExtYes: B_n = (2n+2)!!/(2n+3)!! |r|/2pi (1-e^{-q})^{n+2} p^{n+1}
template <RealScalar T>
TruncationBound<T> truncation_bound(std::ptrdiff_t n, const OwenParams<T>& params, SeriesVariant variant) {
    if (n < -1) {
        throw std::invalid_argument("truncation_bound: n must be >= -1");
    }
    T value = abs(params.r) / two_pi<T>();
    for (std::ptrdiff_t j = 0; j <= n; ++j) {
        value = value * T(2 * j + 2) / T(2 * j + 3) * params.p;
    }
    if (variant == SeriesVariant::AtanExtYes) {
        const T alpha = T(1) - exp(-params.q);
        T power = alpha;
        for (std::ptrdiff_t j = 0; j <= n; ++j) {
            power = power * alpha;
        }
        value = value * power;
    }
    return TruncationBound<T>{n, value, variant, params.transformed};
}

namespace detail {

// U(h,r) for h, r >= 0 with Phi(-rh) taken at the exact product. The
// transformed recursion runs on parameters built from h and r directly, so
// the rounding of rh has to be kept out of U as well.
template <RealScalar T>
T owen_u_exact(const T& h, const T& r) {
    const T a = std_normal_cdf(-h);
    const T rh = r * h;
    T b = std_normal_cdf(-rh);
    if constexpr (std::is_same_v<T, double>) {
        const double rh_lo = std::fma(r, h, -rh);
        b -= std::exp(-rh * rh / 2.0) / std::sqrt(2.0 * std::numbers::pi) * rh_lo;
    }
    return (a + b) / T(2) - a * b;
}

template <RealScalar T>
void require_finite(const T& h, const T& r, const char* who) {
    if (!isfinite(h) || !isfinite(r)) {
        throw std::invalid_argument(std::string(who) + ": arguments must be finite");
    }
}

// T at reduced parameters (|r| <= 1 after any transform) from a finished
// recursion.
template <RealScalar T>
T reduced_value(const OwenParams<T>& params, SeriesVariant variant, const T& sum, bool underflow) {
    if (underflow) {
        return T(0);
    }
    if (variant == SeriesVariant::AtanExtNo) {
        return sum;
    }
    return atan(params.r) / two_pi<T>() - sum;
}

template <RealScalar T>
struct OwenPlan {
    T sign;
    T h_abs;
    T r_abs;
    OwenParams<T> params;  // what the recursion runs on
    bool zero = false;
};

template <RealScalar T>
OwenPlan<T> plan(const T& h, const T& r) {
    require_finite(h, r, "owen_t");
    OwenPlan<T> out{sgn(r), abs(h), abs(r), OwenParams<T>::make(abs(h), abs(r)), r == T(0)};
    if (!out.zero && T(1) < out.r_abs) {
        out.params = out.params.transform();
    }
    return out;
}

template <RealScalar T>
EvalReport<T> finish(const OwenPlan<T>& plan, SeriesVariant variant, const RecursionState<T>& state,
                     bool stopped_by_bound, bool converged) {
    EvalReport<T> report{T(0), state.k, stopped_by_bound ? state.e : T(0), variant,
                         plan.params.transformed, T(0), converged};
    T value = reduced_value(plan.params, variant, state.signed_sum(), state.underflow);
    if (plan.params.transformed) {
        value = owen_u_exact(plan.h_abs, plan.r_abs) - value;
    }
    // 0 <= T(|h|,|r|) <= T(|h|,inf) = Phi(-|h|)/2; rounding in the AtanExtYes
    // form arctan/2pi - S can leave this range when T is tiny
    const T ceiling = std_normal_cdf(-plan.h_abs) / T(2);
    value = value < T(0) ? T(0) : (ceiling < value ? ceiling : value);
    report.value = plan.sign < T(0) ? -value : value;
    return report;
}

}  // namespace detail

/// Owen's T function. Evaluated at |h| and |r| and signed afterwards, so
/// T(-h,r) == T(h,r) and T(h,-r) == -T(h,r) hold exactly.
template <RealScalar T>
EvalReport<T> owen_t(const T& h, const T& r, SeriesVariant variant = SeriesVariant::AtanExtNo,
                     const T& eps = T(-1)) {
    const auto plan = detail::plan(h, r);
    if (plan.zero) {
        return EvalReport<T>{T(0), 0, T(0), variant, false, T(0), true};
    }
    auto state = RecursionState<T>::start(plan.params, variant);
    const std::size_t cap = iteration_cap<T>();
    bool converged = true;
    while (!state.advance(eps)) {
        if (state.k >= cap) {
            converged = false;
            break;
        }
    }
    const bool by_bound = !state.underflow && state.e < eps && !(state.S <= state.S_prev);
    return detail::finish(plan, variant, state, by_bound, converged);
}

/// T after truncating the reduced series after term n, for |r| <= 1
/// (no transform). Used to check truncation bounds and bracketing.
template <RealScalar T>
T owen_t_truncated(const T& h, const T& r, SeriesVariant variant, std::ptrdiff_t n) {
    detail::require_finite(h, r, "owen_t_truncated");
    if (T(1) < abs(r)) {
        throw std::domain_error("owen_t_truncated: requires |r| <= 1");
    }
    const auto params = OwenParams<T>::make(abs(h), abs(r));
    const T sum = recursion_partial_sum(params, variant, n);
    const T value = variant == SeriesVariant::AtanExtNo ? sum : atan(params.r) / two_pi<T>() - sum;
    return r < T(0) ? -value : value;
}

template <RealScalar T>
struct BatchResult {
    std::vector<EvalReport<T>> reports;  ///< per component, own iteration count
    std::size_t shared_iterations = 0;   ///< iterations of the lock-step loop
};

/// Vector evaluation. Either argument may be a single value that is
/// broadcast. All components advance in lock step until the slowest one has
/// terminated; each component keeps the sum from its own termination point,
/// so values equal the scalar results exactly.
template <RealScalar T>
BatchResult<T> owen_t_batch(std::span<const T> h, std::span<const T> r,
                            SeriesVariant variant = SeriesVariant::AtanExtNo, const T& eps = T(-1)) {
    if (h.size() != r.size() && h.size() != 1 && r.size() != 1) {
        throw std::invalid_argument("owen_t_batch: h and r lengths differ");
    }
    BatchResult<T> out;
    if (h.empty() || r.empty()) {
        return out;
    }
    const std::size_t n = std::max(h.size(), r.size());
    std::vector<detail::OwenPlan<T>> plans;
    std::vector<RecursionState<T>> states;
    std::vector<bool> capped(n, false);
    plans.reserve(n);
    states.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        plans.push_back(detail::plan(h[h.size() == 1 ? 0 : i], r[r.size() == 1 ? 0 : i]));
        states.push_back(RecursionState<T>::start(plans.back().params, variant));
        if (plans.back().zero) {
            states.back().finished = true;
        }
    }
    const std::size_t cap = iteration_cap<T>();
    bool active = true;
    while (active) {
        active = false;
        for (std::size_t i = 0; i < n; ++i) {
            if (states[i].finished) {
                continue;
            }
            if (!states[i].advance(eps)) {
                if (states[i].k >= cap) {
                    states[i].finished = true;
                    capped[i] = true;
                } else {
                    active = true;
                }
            }
        }
        if (active || out.shared_iterations == 0) {
            ++out.shared_iterations;
        }
    }
    out.reports.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& s = states[i];
        out.shared_iterations = std::max(out.shared_iterations, s.k);
        if (plans[i].zero) {
            out.reports.push_back(EvalReport<T>{T(0), 0, T(0), variant, false, T(0), true});
            continue;
        }
        const bool by_bound = !s.underflow && s.e < eps && !(s.S <= s.S_prev);
        out.reports.push_back(detail::finish(plans[i], variant, s, by_bound, !capped[i]));
    }
    return out;
}

template <RealScalar T>
struct AlternatingResult {
    T value;
    std::size_t terms = 0;
    bool converged = true;
};

/// The classic alternating series
///   T(h,a) = arctan(a)/2pi - 1/2pi sum_k (-1)^k a^{2k+1}/(2k+1) (1 - e^{-h^2/2} sum_{i<=k} h^{2i}/(2^i i!)).
/// Kept for comparison; cancellation in the bracket limits its accuracy.
template <RealScalar T>
AlternatingResult<T> owen_t_alternating(const T& h, const T& a, std::size_t max_terms = 10000) {
    detail::require_finite(h, a, "owen_t_alternating");
    if (a == T(0)) {
        return AlternatingResult<T>{T(0), 0, true};
    }
    const T x = h * h / T(2);
    const T a2 = a * a;
    T power = a;             // a^{2k+1}
    T poisson = exp(-x);     // e^{-x} x^k / k!
    T partial = poisson;     // e^{-x} sum_{i<=k} x^i / i!
    T sum(0);
    std::size_t unchanged = 0;
    for (std::size_t k = 0; k < max_terms; ++k) {
        const T bracket = T(1) - partial;
        T term = power * bracket / T(2 * k + 1);
        if (k % 2 == 1) {
            term = -term;
        }
        const T next = sum + term;
        unchanged = (next == sum) ? unchanged + 1 : 0;
        sum = next;
        if (term == T(0) || unchanged >= 2) {
            return AlternatingResult<T>{(atan(a) - sum) / two_pi<T>(), k + 1, true};
        }
        power = power * a2;
        poisson = poisson * x / T(k + 1);
        partial = partial + poisson;
    }
    return AlternatingResult<T>{(atan(a) - sum) / two_pi<T>(), max_terms, false};
}

/// Phi(h) = 1/2 + sgn(h) sqrt(S), S = 1/2pi sum_k (2k)!!/(2k+1)!! P(k+1,h^2)/2^k.
/// Validation-only route to the normal cdf through the gamma recursion.
template <RealScalar T>
T std_normal_cdf_via_series(const T& h) {
    if (!isfinite(h)) {
        throw std::invalid_argument("std_normal_cdf_via_series: argument must be finite");
    }
    auto gamma = GammaSeqState<T>::start(h * h);
    T coeff(1);  // (2k)!!/(2k+1)!! / 2^k
    T sum = coeff * (T(1) - gamma.d);
    const std::size_t cap = iteration_cap<T>();
    for (std::size_t k = 1; k < cap; ++k) {
        gamma.advance();
        coeff = coeff * T(2 * k) / T(2 * k + 1) / T(2);
        const T next = sum + coeff * (T(1) - gamma.d);
        if (next <= sum) {
            break;
        }
        sum = next;
    }
    const T root = sqrt(sum / two_pi<T>());
    return h < T(0) ? T(0.5) - root : T(0.5) + root;
}

}  // namespace owent
