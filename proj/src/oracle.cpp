#include "owent/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>
#include <stdexcept>
#include <vector>

namespace owent::oracle {
namespace {

// Kronrod 21-point nodes; the odd entries are the Gauss 10-point nodes.
constexpr double kNodes[11] = {
    0.00000000000000000e+00, 1.48874338981631211e-01, 2.94392862701460198e-01, 4.33395394129247191e-01,
    5.62757134668604683e-01, 6.79409568299024406e-01, 7.80817726586416897e-01, 8.65063366688984511e-01,
    9.30157491355708226e-01, 9.73906528517171720e-01, 9.95657163025808081e-01,
};
constexpr double kKronrod[11] = {
    1.49445554002916906e-01, 1.47739104901338491e-01, 1.42775938577060081e-01, 1.34709217311473326e-01,
    1.23491976262065851e-01, 1.09387158802297642e-01, 9.31254545836976055e-02, 7.50396748109199528e-02,
    5.47558965743519960e-02, 3.25581623079647275e-02, 1.16946388673718743e-02,
};
constexpr double kGauss[5] = {
    2.95524224714752870e-01, 2.69266719309996355e-01, 2.19086362515982044e-01,
    1.49451349150580593e-01, 6.66713443086881376e-02,
};

struct Panel {
    double a;
    double b;
    double value;
    double error;
    bool operator<(const Panel& other) const { return error < other.error; }
};

Panel rule(const std::function<double(double)>& f, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double f0 = f(mid);
    double kronrod = kKronrod[0] * f0;
    double gauss = 0.0;
    for (int i = 1; i <= 10; ++i) {
        const double dx = half * kNodes[i];
        const double pair = f(mid - dx) + f(mid + dx);
        kronrod += kKronrod[i] * pair;
        if (i % 2 == 1) {
            gauss += kGauss[i / 2] * pair;
        }
    }
    kronrod *= half;
    gauss *= half;
    return Panel{a, b, kronrod, std::fabs(kronrod - gauss)};
}

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kInvSqrt2 = 0.70710678118654752440;

}  // namespace

QuadratureResult integrate_panels(const std::function<double(double)>& f, const double* points,
                                  std::size_t count, const QuadratureSpec& spec) {
    if (!(spec.abs_tol > 0.0)) {
        throw std::invalid_argument("integrate: tolerance must be positive");
    }
    QuadratureResult out;
    if (count < 2) {
        return out;
    }
    std::priority_queue<Panel> heap;
    double total = 0.0;
    double error = 0.0;
    for (std::size_t i = 0; i + 1 < count; ++i) {
        if (points[i] == points[i + 1]) {
            continue;
        }
        const Panel p = rule(f, points[i], points[i + 1]);
        total += p.value;
        error += p.error;
        heap.push(p);
    }
    while (error > spec.abs_tol && heap.size() < spec.max_intervals) {
        const Panel worst = heap.top();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            break;  // interval cannot be split further
        }
        heap.pop();
        const Panel left = rule(f, worst.a, mid);
        const Panel right = rule(f, mid, worst.b);
        heap.push(left);
        heap.push(right);
        total += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
    }
    // final sums from scratch, so the running updates leave no residue
    total = 0.0;
    error = 0.0;
    std::vector<Panel> panels;
    panels.reserve(heap.size());
    while (!heap.empty()) {
        panels.push_back(heap.top());
        heap.pop();
    }
    std::sort(panels.begin(), panels.end(), [](const Panel& l, const Panel& r) { return l.a < r.a; });
    for (const auto& p : panels) {
        total += p.value;
        error += p.error;
    }
    out.value = total;
    out.error = error;
    out.intervals = panels.size();
    out.converged = error <= spec.abs_tol;
    return out;
}

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureSpec& spec) {
    const double points[2] = {a, b};
    return integrate_panels(f, points, 2, spec);
}

double normal_cdf(double x) {
    return 0.5 * std::erfc(-x * kInvSqrt2);
}

QuadratureResult owen_t_quadrature(double h, double a, double tol) {
    if (!std::isfinite(h) || !std::isfinite(a)) {
        throw std::invalid_argument("owen_t_quadrature: arguments must be finite");
    }
    if (a == 0.0) {
        return QuadratureResult{};
    }
    const double hh = h * h;
    const auto integrand = [hh](double t) {
        const double c = std::cos(t);
        return std::exp(-0.5 * hh / (c * c));
    };
    QuadratureResult out = integrate(integrand, 0.0, std::atan(std::fabs(a)), QuadratureSpec{tol * kTwoPi});
    out.value /= kTwoPi;
    out.error /= kTwoPi;
    if (a < 0.0) {
        out.value = -out.value;
    }
    return out;
}

QuadratureResult phi2_plackett_quadrature(double x, double y, double rho, double tol) {
    if (!std::isfinite(x) || !std::isfinite(y) || !(std::fabs(rho) < 1.0)) {
        throw std::invalid_argument("phi2_plackett_quadrature: requires finite x, y and |rho| < 1");
    }
    const double px = normal_cdf(x);
    const double py = normal_cdf(y);
    const QuadratureSpec spec{tol * kTwoPi, 4000};
    if (std::fabs(rho) <= 0.5) {
        // s = sin(theta) from 0 to rho
        const auto integrand = [x, y](double t) {
            const double c = std::cos(t);
            return std::exp(-(x * x - 2.0 * x * y * std::sin(t) + y * y) / (2.0 * c * c));
        };
        QuadratureResult out = integrate(integrand, 0.0, std::asin(rho), spec);
        out.value = px * py + out.value / kTwoPi;
        out.error /= kTwoPi;
        return out;
    }
    // s = sgn(rho) cos(t), integrating from the degenerate end |s| = 1
    const double sigma = rho > 0.0 ? 1.0 : -1.0;
    const double gap = std::fabs(x - sigma * y);
    const double top = 2.0 * std::asin(std::sqrt(0.5 * (1.0 - std::fabs(rho))));  // acos|rho|
    const auto integrand = [x, y, sigma, gap](double t) {
        const double s = std::sin(t);
        const double half = std::sin(0.5 * t);
        const double num = gap * gap + sigma * 4.0 * x * y * half * half;
        return std::exp(-num / (2.0 * s * s));
    };
    // geometric panels toward t = 0, where the integrand switches on at t ~ gap
    std::vector<double> points{0.0};
    const double floor = std::max(gap / 10.0, top * 1e-9);
    std::vector<double> ladder;
    for (double t = top; t > floor; t *= 0.5) {
        ladder.push_back(t);
    }
    points.insert(points.end(), ladder.rbegin(), ladder.rend());
    if (points.back() != top) {
        points.push_back(top);
    }
    QuadratureResult out = integrate_panels(integrand, points.data(), points.size(), spec);
    out.error /= kTwoPi;
    if (sigma > 0.0) {
        out.value = std::min(px, py) - out.value / kTwoPi;
    } else {
        const double lower = std::max(px - normal_cdf(-y), 0.0);
        out.value = lower + out.value / kTwoPi;
    }
    return out;
}

double incomplete_gamma_direct(std::size_t k, double q) {
    if (!(q >= 0.0)) {
        throw std::invalid_argument("incomplete_gamma_direct: q must be nonnegative");
    }
    long double term = 1.0L;
    long double sum = 1.0L;
    const long double lq = q;
    for (std::size_t i = 1; i <= k; ++i) {
        term *= lq / static_cast<long double>(i);
        sum += term;
    }
    return static_cast<double>(sum * std::exp(-lq));
}

}  // namespace owent::oracle
