#include "properties.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "owent/bvn.hpp"
#include "owent/numkernel.hpp"
#include "owent/oracle.hpp"
#include "owent/owen_t.hpp"
#include "owent/tetrachoric.hpp"

namespace owent::testing {
namespace {

constexpr double kEps = 0x1.0p-52;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
const SeriesVariant kNo = SeriesVariant::AtanExtNo;
const SeriesVariant kYes = SeriesVariant::AtanExtYes;

double slope_of(double rho) { return rho / std::sqrt((1.0 - rho) * (1.0 + rho)); }

void numkernel_props(std::vector<PropertyOutcome>& out) {
    out.push_back(check_property("gamma sequence matches the direct partial sum", 1500, 11, [](Gen& g) {
        const double q = g.pick(0.0, 700.0, {1e-300, 0.5, 1.0, 699.9});
        const int k = g.integer(0, 200);
        const auto seq = reg_gamma_q_seq(q, static_cast<std::size_t>(k));
        const double ref = oracle::incomplete_gamma_direct(static_cast<std::size_t>(k), q);
        // one rounding per multiply and divide of the b_k chain
        const double tol = (8.0 + k) * ulp(ref);
        return std::fabs(seq[k] - ref) <= tol ? "" : describe("q=", q, "k=", k, "got", seq[k], "want", ref);
    }));
    out.push_back(check_property("Mitrinovic sandwich on P(k+1,q)", 1000, 12, [](Gen& g) {
        const int k = g.integer(0, 60);
        const double q = g.uniform(1e-3, (k + 2) / 2.0);
        const double P = 1.0 - reg_gamma_q_seq(q, static_cast<std::size_t>(k))[k];
        const double lead = std::exp((k + 1) * std::log(q) - q - std::lgamma(k + 2.0));
        const double slack = 4.0 * kEps + 1e-12 * lead;
        const bool ok = lead - slack <= P && P <= 2.0 * lead + slack;
        return ok ? "" : describe("q=", q, "k=", k, "P=", P, "lead=", lead);
    }));
    out.push_back(check_property("Alzer bounds on Q(k+1,q)", 1000, 13, [](Gen& g) {
        const int k = g.integer(0, 40);
        const double q = g.uniform(0.0, 60.0);
        const double Q = reg_gamma_q_seq(q, static_cast<std::size_t>(k))[k];
        const double n = k + 1.0;
        const double s = std::exp(-std::lgamma(n + 1.0) / n);
        const double lower = 1.0 - std::pow(-std::expm1(-q), n);
        const double upper = 1.0 - std::pow(-std::expm1(-s * q), n);
        const double slack = 8.0 * kEps;
        return (lower - slack <= Q && Q <= upper + slack) ? "" : describe("q=", q, "k=", k, "Q=", Q);
    }));
    out.push_back(check_property("half-integer gamma seed equals 2(1 - Phi(sqrt(2q)))", 500, 14, [](Gen& g) {
        const double q = g.uniform(1e-6, 30.0);
        const double d0 = reg_gamma_half_seq(q, 0)[0];
        const double other = 2.0 * (1.0 - std_normal_cdf(std::sqrt(2.0 * q)));
        return std::fabs(d0 - other) <= ulps_of(4.0, {1.0}) ? "" : describe("q=", q, d0, other);
    }));
    out.push_back(check_property("half-integer gamma sequence increases to 1", 300, 15, [](Gen& g) {
        const double q = g.uniform(1e-3, 50.0);
        const auto seq = reg_gamma_half_seq(q, 120);
        for (std::size_t k = 1; k < seq.size(); ++k) {
            if (seq[k] < seq[k - 1] || seq[k] > 1.0 + (4.0 + k) * kEps) {
                return describe("q=", q, "k=", k);
            }
        }
        return std::string();
    }));
    out.push_back(check_property("Euler arctangent remainder within [B_n, (1+r^2) B_n]", 1500, 16, [](Gen& g) {
        const double r = g.uniform(-8.0, 8.0);
        const int n = g.integer(0, 40);
        const auto part = arctan_euler_partial(r, n);
        const double exact = std::atan(r);
        const double rem = std::fabs(exact - part.sum);
        // S_n carries about one rounding per term
        const double slack = ulps_of(4.0 + n, {exact});
        const bool ok = part.lower <= rem + slack && rem <= part.upper + slack;
        return ok ? "" : describe("r=", r, "n=", n, "rem=", rem, part.lower, part.upper);
    }));
    out.push_back(check_property("arctangent series agree with atan", 500, 17, [](Gen& g) {
        const double r = g.pick(-50.0, 50.0, {0.0, 1.0, -1.0, 1e-8});
        const double a = arctan_euler(r, -1.0).value;
        const double b = arctan_arcsin_series(r, -1.0);
        const double exact = std::atan(r);
        const double tol = ulps_of(8.0, {exact});
        return (std::fabs(a - exact) <= tol && std::fabs(b - exact) <= tol) ? "" : describe("r=", r, a, b, exact);
    }));
    out.push_back(check_property("Phi symmetry and monotonicity", 1000, 18, [](Gen& g) {
        const double h = g.uniform(-40.0, 40.0);
        const double d = g.uniform(0.0, 1.0);
        const double a = std_normal_cdf(h);
        const double b = std_normal_cdf(-h);
        const bool sym = std::fabs(a + b - 1.0) <= ulp(1.0);
        const bool mono = std_normal_cdf(h + d) >= a;
        return (sym && mono) ? "" : describe("h=", h, a, b);
    }));
}

void owent_props(std::vector<PropertyOutcome>& out) {
    out.push_back(check_property("T is even in h and odd in r, bit for bit", 1000, 21, [](Gen& g) {
        const double h = g.pick(-12.0, 12.0, {0.0, 40.0});
        const double r = g.pick(-20.0, 20.0, {0.0, 1.0, -1.0, 1e-9});
        const auto v = g.coin() ? kNo : kYes;
        const double t = owen_t(h, r, v).value;
        const bool ok = owen_t(-h, r, v).value == t && owen_t(h, -r, v).value == -t;
        return ok ? "" : describe("h=", h, "r=", r);
    }));
    out.push_back(check_property("T is bounded by arctan|r|/2pi", 1000, 22, [](Gen& g) {
        const double h = g.uniform(-10.0, 10.0);
        const double r = g.uniform(-50.0, 50.0);
        const double t = owen_t(h, r, g.coin() ? kNo : kYes).value;
        const double major = std::atan(std::fabs(r)) / kTwoPi;
        return std::fabs(t) <= major + ulps_of(4.0, {major}) ? "" : describe("h=", h, "r=", r, t);
    }));
    out.push_back(check_property("truncations bracket T: AtanExtNo below, AtanExtYes above", 800, 23, [](Gen& g) {
        const double h = g.uniform(-6.0, 6.0);
        const double r = g.uniform(1e-3, 1.0);
        const int n = g.integer(0, 30);
        const double t = owen_t(h, r, kNo).value;
        const double lo = owen_t_truncated(h, r, kNo, n);
        const double hi = owen_t_truncated(h, r, kYes, n);
        const double slack = ulps_of(4.0, {t, std::atan(r) / kTwoPi});
        return (lo <= t + slack && t <= hi + slack) ? "" : describe("h=", h, "r=", r, "n=", n, lo, t, hi);
    }));
    out.push_back(check_property("variants agree within 5e-16", 1000, 24, [](Gen& g) {
        const double h = g.uniform(-10.0, 10.0);
        const double r = g.uniform(-30.0, 30.0);
        const double d = std::fabs(owen_t(h, r, kNo).value - owen_t(h, r, kYes).value);
        return d <= 5e-16 ? "" : describe("h=", h, "r=", r, "diff", d);
    }));
    // walks the h grid -10..10 by 0.1 for each r in {+-0.25, +-1, +-4}
    int index = 0;
    out.push_back(check_property("T(h,r) + T(rh,1/r) = U(h,r)", 201 * 6 * 2, 25, [&index](Gen& g) {
        const double slopes[] = {0.25, -0.25, 1.0, -1.0, 4.0, -4.0};
        const int i = index++;
        const double h = ((i / 12) % 201 - 100) / 10.0;
        const double r = slopes[(i / 2) % 6];
        const auto v = i % 2 == 0 ? kNo : kYes;
        (void)g;
        const double a = owen_t(h, r, v).value;
        const double b = owen_t(r * h, 1.0 / r, v).value;
        const double ph = std_normal_cdf(h);
        const double prh = std_normal_cdf(r * h);
        const double u = (ph + prh) / 2.0 - ph * prh - (r < 0.0 ? 0.5 : 0.0);
        const double scale = v == kYes ? yes_scale(r) : 0.0;
        const double tol = ulps_of(4.0, {a, b, u, ph, prh, scale});
        return std::fabs(a + b - u) <= tol ? "" : describe("h=", h, "r=", r, a + b - u);
    }));
    out.push_back(check_property("transformed and direct series agree for 1 < |r| < 3", 300, 26, [](Gen& g) {
        const double h = g.uniform(-5.0, 5.0);
        const double r = g.uniform(1.0, 3.0);
        const double t = owen_t(h, r, kNo).value;
        const auto direct = recursion_core(OwenParams<double>::make(std::fabs(h), r), kNo, -1.0);
        const double tol = 1e-14;
        return std::fabs(t - direct.sum) <= tol ? "" : describe("h=", h, "r=", r, t, direct.sum);
    }));
    out.push_back(check_property("AtanExtYes terms decrease", 500, 27, [](Gen& g) {
        const double h = g.uniform(0.01, 8.0);
        const double r = g.uniform(0.01, 1.0);
        auto s = RecursionState<double>::start(OwenParams<double>::make(h, r), kYes);
        double previous = s.term();
        // once 1 - Q(k+1,q) is below a few ulp the factor is rounding noise
        for (int k = 0; k < 60 && 1.0 - s.d > 64.0 * kEps; ++k) {
            s.step();
            if (s.term() > previous) {
                return describe("h=", h, "r=", r, "k=", k);
            }
            previous = s.term();
        }
        return std::string();
    }));
    out.push_back(check_property("truncation bound dominates the remainder", 800, 28, [](Gen& g) {
        const double h = g.uniform(-6.0, 6.0);
        const double r = g.uniform(-1.0, 1.0);
        const int n = g.integer(-1, 40);
        const auto v = g.coin() ? kNo : kYes;
        const double t = owen_t(h, r, v).value;
        const double s = owen_t_truncated(h, r, v, n);
        const auto b = truncation_bound(n, OwenParams<double>::make(h, r), v);
        const double slack = ulps_of(4.0, {t, std::atan(r) / kTwoPi});
        return std::fabs(t - s) <= b.bound + slack ? "" : describe("h=", h, "r=", r, "n=", n, t - s, b.bound);
    }));
    out.push_back(check_property("batch values equal scalar values", 100, 29, [](Gen& g) {
        std::vector<double> hs(20);
        std::vector<double> rs(20);
        for (int i = 0; i < 20; ++i) {
            hs[i] = g.uniform(-8.0, 8.0);
            rs[i] = g.uniform(-5.0, 5.0);
        }
        const auto v = g.coin() ? kNo : kYes;
        const auto batch = owen_t_batch<double>(hs, rs, v);
        for (int i = 0; i < 20; ++i) {
            if (batch.reports[i].value != owen_t(hs[i], rs[i], v).value) {
                return describe("i=", i, "h=", hs[i], "r=", rs[i]);
            }
        }
        return std::string();
    }));
    out.push_back(check_property("Phi from the gamma series", 500, 30, [](Gen& g) {
        const double h = g.uniform(-8.0, 8.0);
        const double a = std_normal_cdf_via_series(h);
        const double b = std_normal_cdf(h);
        return std::fabs(a - b) <= 1e-14 ? "" : describe("h=", h, a, b);
    }));
}

void tetrachoric_props(std::vector<PropertyOutcome>& out) {
    // full grid h = -10..10 by 0.1, rho = -0.99..0.99 by 0.01; above |rho| = 0.92
    // the plain series loses digits to cancellation between large terms
    int cell = 0;
    out.push_back(check_property("plain and accelerated h0 series agree on the grid", 201 * 199, 31, [&cell](Gen&) {
        const int i = cell++;
        const double h = (i / 199 - 100) / 10.0;
        const double rho = (i % 199 - 99) / 100.0;
        const double a = phi2_tetrachoric_h0(h, rho, false).value;
        const double b = phi2_tetrachoric_h0(h, rho, true).value;
        const double tol = std::fabs(rho) <= 0.92 ? 5e-16 : 1e-14;
        return std::fabs(a - b) <= tol ? "" : describe("h=", h, "rho=", rho, a, b);
    }));
    out.push_back(check_property("xy series is symmetric bit for bit", 500, 32, [](Gen& g) {
        const double x = g.uniform(-5.0, 5.0);
        const double y = g.uniform(-5.0, 5.0);
        const double rho = g.uniform(-0.9, 0.9);
        const bool ok = phi2_tetrachoric_xy(x, y, rho).value == phi2_tetrachoric_xy(y, x, rho).value;
        return ok ? "" : describe("x=", x, "y=", y, "rho=", rho);
    }));
    out.push_back(check_property("xy series is nondecreasing in rho", 300, 33, [](Gen& g) {
        const double x = g.uniform(-4.0, 4.0);
        const double y = g.uniform(-4.0, 4.0);
        double previous = 0.0;
        for (int i = 0; i <= 16; ++i) {
            const double rho = -0.8 + 0.1 * i;
            const double v = phi2_tetrachoric_xy(x, y, rho).value;
            if (i > 0 && v + ulps_of(4.0, {v, 1.0}) < previous) {
                return describe("x=", x, "y=", y, "rho=", rho);
            }
            previous = v;
        }
        return std::string();
    }));
    out.push_back(check_property("accelerated tetrachoric matches phi2 at y = 0", 500, 34, [](Gen& g) {
        const double h = g.uniform(-10.0, 10.0);
        const double rho = g.uniform(-0.99, 0.99);
        const double a = phi2_tetrachoric_h0(h, rho, true).value;
        const double b = phi2(h, 0.0, Correlation<double>(rho));
        return std::fabs(a - b) <= 5e-16 ? "" : describe("h=", h, "rho=", rho, a, b);
    }));
    out.push_back(check_property("Hermite pairs match the three-term recurrence", 200, 35, [](Gen& g) {
        const double x = g.uniform(-3.0, 3.0);
        std::vector<double> he = {1.0, x};
        for (int k = 1; k < 24; ++k) {
            he.push_back(x * he[k] - k * he[k - 1]);
        }
        auto seq = HermiteEvenSeq<double>::start(x);
        for (int k = 0; k < 12; ++k) {
            const double tol = 1e-12 * (1.0 + std::fabs(he[2 * k]) + std::fabs(he[2 * k + 1]));
            if (std::fabs(seq.even - he[2 * k]) > tol || std::fabs(seq.odd - he[2 * k + 1]) > tol) {
                return describe("x=", x, "k=", k);
            }
            seq.advance();
        }
        return std::string();
    }));
}

void bvn_props(std::vector<PropertyOutcome>& out) {
    out.push_back(check_property("phi2 within the Frechet bounds", 1000, 41, [](Gen& g) {
        const double x = g.uniform(-10.0, 10.0);
        const double y = g.uniform(-10.0, 10.0);
        const double rho = g.pick(-1.0, 1.0, {-1.0, 1.0, 0.0, 1.0 - 1e-12, -1.0 + 1e-12});
        const double v = phi2(x, y, Correlation<double>(rho));
        const double px = std_normal_cdf(x);
        const double py = std_normal_cdf(y);
        const double lo = std::max(0.0, px + py - 1.0);
        const double hi = std::min(px, py);
        const double slack = ulps_of(2.0, {1.0});
        return (lo - slack <= v && v <= hi + slack) ? "" : describe("x=", x, "y=", y, "rho=", rho, v);
    }));
    out.push_back(check_property("phi2 is symmetric", 1000, 42, [](Gen& g) {
        const double x = g.uniform(-10.0, 10.0);
        const double y = g.uniform(-10.0, 10.0);
        const double rho = g.uniform(-1.0, 1.0);
        const Correlation<double> c(rho);
        const double a = phi2(x, y, c);
        const double b = phi2(y, x, c);
        return std::fabs(a - b) <= ulps_of(2.0, {a, b}) ? "" : describe("x=", x, "y=", y, "rho=", rho, a - b);
    }));
    out.push_back(check_property("phi2 is nondecreasing in rho", 300, 43, [](Gen& g) {
        const double x = g.uniform(-6.0, 6.0);
        const double y = g.uniform(-6.0, 6.0);
        double previous = -1.0;
        for (int i = 0; i <= 40; ++i) {
            const double rho = -1.0 + 0.05 * i;
            const double v = phi2(x, y, Correlation<double>(rho));
            if (v + ulps_of(4.0, {v, 1.0}) < previous) {
                return describe("x=", x, "y=", y, "rho=", rho);
            }
            previous = v;
        }
        return std::string();
    }));
    out.push_back(check_property("phi2 matches the Plackett quadrature", 400, 44, [](Gen& g) {
        const double x = g.uniform(-10.0, 10.0);
        const double y = g.uniform(-10.0, 10.0);
        const double rho = g.uniform(-0.999999, 0.999999);
        const auto q = oracle::phi2_plackett_quadrature(x, y, rho, 1e-13);
        const double v = phi2(x, y, Correlation<double>(rho));
        return std::fabs(v - q.value) <= 5e-13 ? "" : describe("x=", x, "y=", y, "rho=", rho, v, q.value);
    }));
    out.push_back(check_property("continuity at |rho| = 1 away from the diagonal", 500, 45, [](Gen& g) {
        const double x = g.uniform(-5.0, 5.0);
        const double sign = g.coin() ? 1.0 : -1.0;
        double y = g.uniform(-5.0, 5.0);
        if (std::fabs(x - sign * y) <= 0.1) {
            y += sign * 0.2;
        }
        const double near = phi2(x, y, Correlation<double>(sign * (1.0 - 1e-12)));
        const double limit = phi2(x, y, Correlation<double>(sign));
        return std::fabs(near - limit) <= 1e-9 ? "" : describe("x=", x, "y=", y, "sign=", sign);
    }));
    out.push_back(check_property("critical split recombines to the unsplit value", 500, 46, [](Gen& g) {
        const double x = g.uniform(-5.0, 5.0);
        const double y = g.uniform(-5.0, 5.0);
        double rho = g.uniform(-0.95, 0.95);
        if (rho == 0.0) {
            rho = 0.1;
        }
        const Correlation<double> c(rho);
        const auto cs = critical_split(x, y, c);
        const Correlation<double> inner(cs.rho_tilde);
        const Phi2Options plain{kNo, false};
        const double split = cs.leading + cs.sign * (phi2(cs.z, cs.y_tilde, inner, plain) +
                                                     phi2(-cs.z, x, inner, plain));
        const double direct = phi2(x, y, c, plain);
        return std::fabs(split - direct) <= 2e-15 ? "" : describe("x=", x, "y=", y, "rho=", rho, split - direct);
    }));
    out.push_back(check_property("reductions of Phi2(h,0)", 800, 47, [](Gen& g) {
        const double h = g.uniform(-10.0, 10.0);
        const double rho = g.uniform(-0.999, 0.999);
        const Correlation<double> c(rho);
        const Correlation<double> neg(-rho);
        const double p = phi2_h0(h, c);
        const double ph = std_normal_cdf(h);
        const double r1 = phi2_h0(-h, c) - (p - ph + 0.5);
        const double r2 = phi2_h0(h, neg) - (ph - p);
        const double tol = ulps_of(4.0, {1.0});
        return (std::fabs(r1) <= tol && std::fabs(r2) <= tol) ? "" : describe("h=", h, "rho=", rho, r1, r2);
    }));
    out.push_back(check_property("Owen5 transform identity", 500, 48, [](Gen& g) {
        const double h = g.uniform(-10.0, 10.0);
        double rho = g.uniform(-0.999, 0.999);
        if (rho == 0.0) {
            rho = 0.3;
        }
        const double res = owen5_transform_identity(h, Correlation<double>(rho));
        return std::fabs(res) <= ulps_of(4.0, {1.0}) ? "" : describe("h=", h, "rho=", rho, res);
    }));
    out.push_back(check_property("unified series matches phi2", 500, 49, [](Gen& g) {
        const double x = g.uniform(-6.0, 6.0);
        const double y = g.uniform(-6.0, 6.0);
        const double rho = g.uniform(-0.9, 0.9);
        const Correlation<double> c(rho);
        const double v = phi2(x, y, c);
        const auto a = phi2_unified(x, y, c, kYes);
        const auto b = phi2_unified(x, y, c, kNo);
        // near rho_x^2 = 1 or rho_y^2 = 1 the arcsines are ill conditioned and
        // the Q form runs ~1/(1 - rho^2) terms, drifting by a rounding per term
        const double norm = std::sqrt(x * x - 2.0 * rho * x * y + y * y);
        const double rx = (rho * x - y) / norm;
        const double ry = (rho * y - x) / norm;
        const double gap = 1.0 - std::max(rx * rx, ry * ry);
        const double eps = std::numeric_limits<double>::epsilon();
        const double tol_yes = 1e-15 + 2.0 * eps / std::sqrt(gap);
        const double tol_no = gap >= 0.1 ? 1e-15 : 1e-15 + 4.0 * eps / gap;
        // the term budget may run out only where the series is that slow
        const bool no_ok = b.converged ? std::fabs(b.value - v) <= tol_no : gap < 1e-3;
        const bool ok = a.converged && std::fabs(a.value - v) <= tol_yes && no_ok;
        return ok ? "" : describe("x=", x, "y=", y, "rho=", rho, a.value - v, b.value - v);
    }));
    out.push_back(check_property("L(x,y) by inclusion-exclusion", 500, 50, [](Gen& g) {
        const double x = g.uniform(-6.0, 6.0);
        const double y = g.uniform(-6.0, 6.0);
        const double rho = g.uniform(-1.0, 1.0);
        const Correlation<double> c(rho);
        const double l = l_complement(x, y, c);
        const double other = 1.0 - std_normal_cdf(x) - std_normal_cdf(y) + phi2(x, y, c);
        return std::fabs(l - other) <= ulps_of(8.0, {1.0}) ? "" : describe("x=", x, "y=", y, "rho=", rho);
    }));
}

void oracle_props(std::vector<PropertyOutcome>& out) {
    out.push_back(check_property("Owen T quadrature is stable under a tighter tolerance", 300, 51, [](Gen& g) {
        const double h = g.uniform(-8.0, 8.0);
        const double a = g.uniform(-20.0, 20.0);
        const double tol = 1e-12;
        const double v1 = oracle::owen_t_quadrature(h, a, tol).value;
        const double v2 = oracle::owen_t_quadrature(h, a, tol / 10.0).value;
        return std::fabs(v1 - v2) <= 2.0 * tol ? "" : describe("h=", h, "a=", a, v1 - v2);
    }));
    out.push_back(check_property("Plackett quadrature within the Frechet bounds", 300, 52, [](Gen& g) {
        const double x = g.uniform(-8.0, 8.0);
        const double y = g.uniform(-8.0, 8.0);
        const double rho = g.uniform(-0.999999, 0.999999);
        const double tol = 1e-13;
        const double v = oracle::phi2_plackett_quadrature(x, y, rho, tol).value;
        const double px = oracle::normal_cdf(x);
        const double py = oracle::normal_cdf(y);
        const bool ok = std::max(0.0, px + py - 1.0) - tol <= v && v <= std::min(px, py) + tol;
        return ok ? "" : describe("x=", x, "y=", y, "rho=", rho, v);
    }));
}

}  // namespace

std::vector<PropertyOutcome> run_properties() {
    std::vector<PropertyOutcome> out;
    numkernel_props(out);
    owent_props(out);
    tetrachoric_props(out);
    bvn_props(out);
    oracle_props(out);
    return out;
}

}  // namespace owent::testing
