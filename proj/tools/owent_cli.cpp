// owent_cli: single evaluations, the 201 x 199 test grid, random triplet
// runs and the precision ladder. CSV goes to --out, summaries to stdout.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "owent/bvn.hpp"
#include "owent/oracle.hpp"
#include "owent/owen_t.hpp"
#include "owent/tetrachoric.hpp"
#ifdef OWENT_HAVE_MPFR
#include "owent/mpfr_real.hpp"
#endif

namespace {

using owent::SeriesVariant;

std::string sci(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", v);
    return buf;
}

std::string fixed(double v, int digits) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

/// SplitMix64 (Steele, Lea, Flood 2014).
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
    /// uniform on the open interval (lo, hi)
    double uniform(double lo, double hi) {
        const double u = (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
        return lo + (hi - lo) * u;
    }

private:
    std::uint64_t state_;
};

struct Options {
    bool owen = false;
    bool phi2 = false;
    std::optional<std::string> h, x, y, rho, r;
    std::vector<std::string> methods;
    std::string variant;  ///< empty: the command default
    double eps = -1.0;
    std::uint64_t seed = 123;
    std::size_t count = 1000000;
    std::size_t oracle_sample = 10000;
    bool star = false;
    int precision_bits = 53;
    std::string bits_ladder = "53,64,128,256,512,1024";
    std::string out;
    double oracle_tol = 1e-13;
};

SeriesVariant parse_variant(const std::string& s) {
    if (s.empty() || s == "atan-ext-no") {
        return SeriesVariant::AtanExtNo;
    }
    if (s == "atan-ext-yes") {
        return SeriesVariant::AtanExtYes;
    }
    throw CLI::ValidationError("--variant", "expected atan-ext-no or atan-ext-yes");
}

std::vector<SeriesVariant> parse_variants(const std::string& s) {
    if (s.empty() || s == "both") {
        return {SeriesVariant::AtanExtNo, SeriesVariant::AtanExtYes};
    }
    return {parse_variant(s)};
}

double num(const std::optional<std::string>& s, const char* name) {
    if (!s) {
        throw CLI::ValidationError(name, "is required");
    }
    return std::stod(*s);
}

// r from --r, or from --rho as rho / sqrt(1 - rho^2)
double slope_arg(const Options& o) {
    if (o.r) {
        return std::stod(*o.r);
    }
    const double rho = num(o.rho, "--rho");
    return rho / std::sqrt((1.0 - rho) * (1.0 + rho));
}

double rho_arg(const Options& o) {
    if (o.rho) {
        return std::stod(*o.rho);
    }
    const double r = num(o.r, "--r");
    return r / std::sqrt(1.0 + r * r);
}

std::unique_ptr<std::ostream> open_out(const std::string& path) {
    if (path.empty() || path == "-") {
        return nullptr;
    }
    auto f = std::make_unique<std::ofstream>(path);
    if (!*f) {
        throw std::runtime_error("cannot open " + path);
    }
    return f;
}

// ---------------------------------------------------------------- eval

struct Row {
    double value = 0.0;
    std::size_t iterations = 0;
    double bound = 0.0;
    std::string variant = "-";
    bool transformed = false;
    bool ok = true;
};

Row owen_row(double h, double r, const std::string& method, SeriesVariant variant, double eps, double tol) {
    Row row;
    if (method == "novel") {
        const auto rep = owent::owen_t(h, r, variant, eps);
        return Row{rep.value, rep.iterations, rep.bound, owent::to_string(variant), rep.transformed, rep.converged};
    }
    if (method == "tetrachoric" || method == "tetrachoric-accelerated") {
        const bool acc = method == "tetrachoric-accelerated";
        const auto res = owent::owen_t_tetrachoric(h, r, acc, eps);
        row = Row{res.value, res.iterations, 0.0, "-", acc && std::fabs(r) > 1.0, res.converged};
        return row;
    }
    if (method == "alternating") {
        const auto res = owent::owen_t_alternating(h, r);
        return Row{res.value, res.terms, 0.0, "-", false, res.converged};
    }
    if (method == "oracle") {
        const auto res = owent::oracle::owen_t_quadrature(h, r, tol);
        return Row{res.value, res.intervals, res.error, "-", false, res.converged};
    }
    throw CLI::ValidationError("--method", "unknown method " + method);
}

Row phi2_row(double x, double y, double rho, const std::string& method, SeriesVariant variant, double eps,
             double tol) {
    const owent::Correlation<double> c(rho);
    if (method == "novel") {
        return Row{owent::phi2(x, y, c, owent::Phi2Options{variant, true}), 0, 0.0, owent::to_string(variant)};
    }
    if (method == "tetrachoric") {
        const auto res = owent::phi2_tetrachoric_xy(x, y, rho, eps);
        return Row{res.value, res.iterations, 0.0, "-", false, res.converged};
    }
    if (method == "tetrachoric-accelerated" || method == "alternating") {
        bool ok = true;
        const bool alt = method == "alternating";
        const double v = owent::phi2_with(x, y, c, [&](double h, double r) {
            if (alt) {
                const auto res = owent::owen_t_alternating(h, r);
                ok = ok && res.converged;
                return res.value;
            }
            const auto res = owent::owen_t_tetrachoric(h, r, true, eps);
            ok = ok && res.converged;
            return res.value;
        });
        return Row{v, 0, 0.0, "-", false, ok};
    }
    if (method == "oracle") {
        if (std::fabs(rho) == 1.0) {
            return Row{owent::phi2(x, y, c), 0, 0.0};
        }
        const auto res = owent::oracle::phi2_plackett_quadrature(x, y, rho, tol);
        return Row{res.value, res.intervals, res.error, "-", false, res.converged};
    }
    throw CLI::ValidationError("--method", "unknown method " + method);
}

#ifdef OWENT_HAVE_MPFR
int eval_mpfr(const Options& o) {
    using owent::MpfrReal;
    owent::PrecisionScope scope(o.precision_bits);
    const int digits = static_cast<int>(o.precision_bits * 0.30103) + 2;
    const auto variant = parse_variant(o.variant);
    auto read = [](const std::optional<std::string>& s, const char* name) {
        if (!s) {
            throw CLI::ValidationError(name, "is required");
        }
        return MpfrReal::from_string(*s);
    };
    auto slope = [&]() {
        if (o.r) {
            return read(o.r, "--r");
        }
        const MpfrReal rho = read(o.rho, "--rho");
        return rho / sqrt((MpfrReal(1) - rho) * (MpfrReal(1) + rho));
    };
    std::cout << "quantity,bits,value,iterations,variant,transformed\n";
    if (o.owen) {
        const auto rep = owent::owen_t(read(o.h, "-h"), slope(), variant);
        std::cout << "owen_t," << o.precision_bits << ',' << rep.value.to_string(digits) << ','
                  << rep.iterations << ',' << owent::to_string(variant) << ',' << rep.transformed << '\n';
        return rep.converged ? 0 : 1;
    }
    const MpfrReal x = read(o.x, "-x");
    const MpfrReal y = o.y ? read(o.y, "-y") : MpfrReal(0);
    const MpfrReal rho = o.rho ? read(o.rho, "--rho") : [&] {
        const MpfrReal r = read(o.r, "--r");
        return r / sqrt(MpfrReal(1) + r * r);
    }();
    const owent::Correlation<MpfrReal> c(rho);
    const MpfrReal v = owent::phi2(x, y, c, owent::Phi2Options{variant, true});
    std::cout << "phi2," << o.precision_bits << ',' << v.to_string(digits) << ",," << owent::to_string(variant)
              << ",\n";
    return 0;
}
#endif

int cmd_eval(const Options& o) {
    if (o.owen == o.phi2) {
        throw CLI::ValidationError("eval", "choose exactly one of --owen-t and --phi2");
    }
    const std::string method = o.methods.empty() ? "novel" : o.methods.front();
    if (o.precision_bits != 53) {
#ifdef OWENT_HAVE_MPFR
        if (method != "novel") {
            throw CLI::ValidationError("--precision-bits", "only the novel method runs above 53 bits");
        }
        return eval_mpfr(o);
#else
        std::cerr << "error: --precision-bits needs the MPFR backend, which is not compiled in\n";
        return 2;
#endif
    }
    const auto variant = parse_variant(o.variant);
    const std::vector<std::string> methods = o.methods.empty() ? std::vector<std::string>{"novel"} : o.methods;
    bool ok = true;
    std::cout << "quantity,method,value,iterations,bound,variant,transformed\n";
    for (const auto& m : methods) {
        Row row;
        if (o.owen) {
            row = owen_row(num(o.h, "-h"), slope_arg(o), m, variant, o.eps, o.oracle_tol);
        } else {
            const double y = o.y ? std::stod(*o.y) : 0.0;
            row = phi2_row(num(o.x, "-x"), y, rho_arg(o), m, variant, o.eps, o.oracle_tol);
        }
        std::cout << (o.owen ? "owen_t" : "phi2") << ',' << m << ',' << sci(row.value) << ',' << row.iterations
                  << ',' << sci(row.bound) << ',' << row.variant << ',' << (row.transformed ? 1 : 0) << '\n';
        ok = ok && row.ok;
    }
    return ok ? 0 : 1;
}

// ---------------------------------------------------------------- grid

struct GridStats {
    std::string label;
    double max_err = 0.0;
    double sum_err = 0.0;
    std::size_t max_iter = 0;
    double sum_iter = 0.0;
    std::vector<std::size_t> iter;  // [i * 199 + j]
    std::vector<double> value;
    bool ok = true;
};

constexpr int kGridH = 201;
constexpr int kGridRho = 199;

double grid_h(int i) { return (i - 100) / 10.0; }
double grid_rho(int j) { return (j - 99) / 100.0; }

int cmd_grid(const Options& o) {
    std::vector<std::string> methods = o.methods.empty() ? std::vector<std::string>{"novel"} : o.methods;
    auto out = open_out(o.out);
    if (out) {
        *out << "h,rho,r,method,variant,value,iterations,bound,abs_err_vs_reference\n";
    }
    // reference: adaptive quadrature of T
    std::vector<double> reference(kGridH * kGridRho);
    bool ok = true;
    for (int i = 0; i < kGridH; ++i) {
        for (int j = 0; j < kGridRho; ++j) {
            const double rho = grid_rho(j);
            const double r = rho / std::sqrt((1.0 - rho) * (1.0 + rho));
            const auto q = owent::oracle::owen_t_quadrature(grid_h(i), r, o.oracle_tol);
            ok = ok && q.converged;
            reference[i * kGridRho + j] = q.value;
        }
    }
    std::vector<GridStats> stats;
    for (const auto& method : methods) {
        const auto variants = method == "novel" ? parse_variants(o.variant)
                                                : std::vector<SeriesVariant>{SeriesVariant::AtanExtNo};
        for (const auto variant : variants) {
            GridStats s;
            s.label = method == "novel" ? "novel/" + std::string(owent::to_string(variant)) : method;
            s.iter.resize(kGridH * kGridRho);
            s.value.resize(kGridH * kGridRho);
            for (int i = 0; i < kGridH; ++i) {
                for (int j = 0; j < kGridRho; ++j) {
                    const double h = grid_h(i);
                    const double rho = grid_rho(j);
                    const double r = rho / std::sqrt((1.0 - rho) * (1.0 + rho));
                    const Row row = owen_row(h, r, method, variant, o.eps, o.oracle_tol);
                    const double err = std::fabs(row.value - reference[i * kGridRho + j]);
                    s.ok = s.ok && row.ok;
                    s.max_err = std::max(s.max_err, err);
                    s.sum_err += err;
                    s.max_iter = std::max(s.max_iter, row.iterations);
                    s.sum_iter += static_cast<double>(row.iterations);
                    s.iter[i * kGridRho + j] = row.iterations;
                    s.value[i * kGridRho + j] = row.value;
                    if (out) {
                        *out << fixed(h, 1) << ',' << fixed(rho, 2) << ',' << sci(r) << ',' << method << ','
                             << row.variant << ',' << sci(row.value) << ',' << row.iterations << ','
                             << sci(row.bound) << ',' << sci(err) << '\n';
                    }
                }
            }
            ok = ok && s.ok;
            stats.push_back(std::move(s));
        }
    }
    const double n = kGridH * kGridRho;
    std::cout << "grid: " << kGridH << " x " << kGridRho << " = " << kGridH * kGridRho << " points"
              << ", reference: adaptive quadrature (tol " << o.oracle_tol << ")\n";
    std::cout << "method,max_abs_err,mean_abs_err,avg_iter1_h_vector,avg_iter1_r_vector,avg_iter2,max_iter\n";
    for (const auto& s : stats) {
        // shared termination: a vector of h at fixed rho runs as long as its slowest element
        double h_vec = 0.0;
        for (int j = 0; j < kGridRho; ++j) {
            std::size_t m = 0;
            for (int i = 0; i < kGridH; ++i) {
                m = std::max(m, s.iter[i * kGridRho + j]);
            }
            h_vec += static_cast<double>(m);
        }
        double r_vec = 0.0;
        for (int i = 0; i < kGridH; ++i) {
            std::size_t m = 0;
            for (int j = 0; j < kGridRho; ++j) {
                m = std::max(m, s.iter[i * kGridRho + j]);
            }
            r_vec += static_cast<double>(m);
        }
        std::cout << s.label << ',' << sci(s.max_err) << ',' << sci(s.sum_err / n) << ','
                  << fixed(h_vec / kGridRho, 1) << ',' << fixed(r_vec / kGridH, 1) << ','
                  << fixed(s.sum_iter / n, 2) << ',' << s.max_iter << '\n';
    }
    for (std::size_t a = 0; a < stats.size(); ++a) {
        for (std::size_t b = a + 1; b < stats.size(); ++b) {
            double d = 0.0;
            for (std::size_t k = 0; k < stats[a].value.size(); ++k) {
                d = std::max(d, std::fabs(stats[a].value[k] - stats[b].value[k]));
            }
            std::cout << "max |" << stats[a].label << " - " << stats[b].label << "| = " << sci(d) << '\n';
        }
    }
    return ok ? 0 : 1;
}

// ---------------------------------------------------------------- random

double quantile(std::vector<double> v, double p) {
    if (v.empty()) {
        return 0.0;
    }
    std::sort(v.begin(), v.end());
    const double pos = p * static_cast<double>(v.size() - 1);
    const auto lo = static_cast<std::size_t>(pos);
    const std::size_t hi = std::min(lo + 1, v.size() - 1);
    return v[lo] + (pos - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

int cmd_random(const Options& o) {
    std::vector<std::string> methods = o.methods.empty() ? std::vector<std::string>{"novel"} : o.methods;
    const auto variant = parse_variant(o.variant);
    SplitMix64 rng(o.seed);
    auto out = open_out(o.out);
    if (out) {
        *out << "index,x,y,rho,method,value,abs_err_vs_reference\n";
    }
    const std::size_t stride = o.oracle_sample == 0 ? 0 : std::max<std::size_t>(1, o.count / o.oracle_sample);
    std::map<std::string, std::vector<double>> errors;
    std::size_t split_cases = 0;
    std::size_t near_one = 0;
    double max_density = 0.0;
    bool ok = true;
    for (std::size_t k = 0; k < o.count; ++k) {
        const double x = rng.uniform(-10.0, 10.0);
        const double y = rng.uniform(-10.0, 10.0);
        double rho = rng.uniform(-1.0, 1.0);
        if (o.star) {
            rho = 2.0 * owent::std_normal_cdf(8.0 * rho) - 1.0;
        }
        if (std::fabs(rho) > 0.9999) {
            ++near_one;
        }
        const owent::Correlation<double> c(rho);
        if (std::fabs(rho) < 1.0) {
            const double dens = owent::density(x, y, c);
            max_density = std::max(max_density, dens);
            split_cases += dens > 1.0 ? 1 : 0;
        }
        const bool referenced = stride != 0 && k % stride == 0 && std::fabs(rho) < 1.0;
        double reference = 0.0;
        if (referenced) {
            const auto q = owent::oracle::phi2_plackett_quadrature(x, y, rho, o.oracle_tol);
            ok = ok && q.converged;
            reference = q.value;
        }
        for (const auto& method : methods) {
            const Row row = phi2_row(x, y, rho, method, variant, o.eps, o.oracle_tol);
            ok = ok && row.ok;
            const double err = std::fabs(row.value - reference);
            if (referenced) {
                errors[method].push_back(err);
            }
            if (out) {
                *out << k << ',' << sci(x) << ',' << sci(y) << ',' << sci(rho) << ',' << method << ','
                     << sci(row.value) << ',' << (referenced ? sci(err) : std::string()) << '\n';
            }
        }
    }
    std::cout << "random: count " << o.count << ", seed " << o.seed << (o.star ? ", rho* = 2 Phi(8 rho) - 1" : "")
              << ", reference: adaptive quadrature on every " << stride << "th point (tol " << o.oracle_tol
              << ")\n";
    std::cout << "density > 1 (split) cases: " << split_cases << ", max density: " << sci(max_density) << '\n';
    std::cout << "fraction |rho| > 0.9999: " << fixed(static_cast<double>(near_one) / o.count, 4) << '\n';
    std::cout << "method,n_ref,median,mean,q3,p99,max\n";
    for (const auto& [method, e] : errors) {
        double mean = 0.0;
        for (double v : e) {
            mean += v;
        }
        mean /= static_cast<double>(e.size());
        std::cout << method << ',' << e.size() << ',' << sci(quantile(e, 0.5)) << ',' << sci(mean) << ','
                  << sci(quantile(e, 0.75)) << ',' << sci(quantile(e, 0.99)) << ',' << sci(quantile(e, 1.0))
                  << '\n';
    }
    return ok ? 0 : 1;
}

// ---------------------------------------------------------------- compare

std::vector<int> parse_ladder(const std::string& s) {
    std::vector<int> bits;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        bits.push_back(std::stoi(item));
    }
    return bits;
}

int cmd_compare(const Options& o) {
    const std::string h_text = o.h.value_or("2.1");
    const std::string r_text = o.r.value_or("1");
    const auto variants = parse_variants(o.variant);
    std::cout << "h = " << h_text << ", r = " << r_text
              << "; A = Phi2(h,0;rho), B = Phi2(h,0;-rho), rho = r/sqrt(1+r^2)\n";
    std::cout << "bits,case,variant,iterations,abs_err\n";
    bool ok = true;
    for (int bits : parse_ladder(o.bits_ladder)) {
        if (bits == 53) {
            const double h = std::stod(h_text);
            const double r = std::stod(r_text);
            for (const auto variant : variants) {
                for (int sign : {1, -1}) {
                    const auto rep = owent::owen_t(h, sign * r, variant);
                    const double v = owent::std_normal_cdf(h) / 2.0 + rep.value;
                    std::string err = "n/a";
#ifdef OWENT_HAVE_MPFR
                    owent::PrecisionScope scope(106);
                    const auto H = owent::MpfrReal::from_string(h_text);
                    const auto R = owent::MpfrReal::from_string(r_text) * owent::MpfrReal(sign);
                    const auto P = owent::std_normal_cdf(H);
                    owent::MpfrReal ref;
                    if (abs(R) == owent::MpfrReal(1)) {
                        ref = sign > 0 ? P * (owent::MpfrReal(1) - P / owent::MpfrReal(2)) : P * P / owent::MpfrReal(2);
                    } else {
                        ref = P / owent::MpfrReal(2) + owent::owen_t_tetrachoric(H, R, true).value;
                    }
                    err = sci(std::fabs((owent::MpfrReal(v) - ref).to_double()));
#else
                    const double P = owent::std_normal_cdf(h);
                    if (std::fabs(r) == 1.0) {
                        err = sci(std::fabs(v - (sign > 0 ? P * (1.0 - P / 2.0) : P * P / 2.0)));
                    }
#endif
                    ok = ok && rep.converged;
                    std::cout << 53 << ',' << (sign > 0 ? 'A' : 'B') << ',' << owent::to_string(variant) << ','
                              << rep.iterations << ',' << err << '\n';
                }
            }
            continue;
        }
#ifdef OWENT_HAVE_MPFR
        using owent::MpfrReal;
        for (const auto variant : variants) {
            for (int sign : {1, -1}) {
                std::size_t iterations = 0;
                std::string value_text;
                MpfrReal value;
                {
                    owent::PrecisionScope scope(bits);
                    const auto H = MpfrReal::from_string(h_text);
                    const auto R = MpfrReal::from_string(r_text) * MpfrReal(sign);
                    const auto rep = owent::owen_t(H, R, variant);
                    iterations = rep.iterations;
                    ok = ok && rep.converged;
                    value = owent::std_normal_cdf(H) / MpfrReal(2) + rep.value;
                }
                owent::PrecisionScope scope(2 * bits);
                const auto H = MpfrReal::from_string(h_text);
                const auto R = MpfrReal::from_string(r_text) * MpfrReal(sign);
                const auto P = owent::std_normal_cdf(H);
                MpfrReal ref;
                if (abs(R) == MpfrReal(1)) {
                    ref = sign > 0 ? P * (MpfrReal(1) - P / MpfrReal(2)) : P * P / MpfrReal(2);
                } else {
                    ref = P / MpfrReal(2) + owent::owen_t_tetrachoric(H, R, true).value;
                }
                const MpfrReal err = abs(MpfrReal(value) - ref);
                std::cout << bits << ',' << (sign > 0 ? 'A' : 'B') << ',' << owent::to_string(variant) << ','
                          << iterations << ',' << err.to_string(3) << '\n';
            }
        }
#else
        std::cout << bits << ",-,-,-,backend unavailable (built without MPFR)\n";
#endif
    }
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Owen's T function and the bivariate normal cdf"};
    app.set_help_flag("--help", "Print this help message and exit");
    app.require_subcommand(1);
    Options o;
    std::vector<std::string> method_list;

    auto add_point = [&](CLI::App* sub) {
        sub->add_flag("--owen-t", o.owen, "Evaluate T(h, r)");
        sub->add_flag("--phi2", o.phi2, "Evaluate Phi2(x, y; rho)");
        sub->add_option("-h", o.h, "h argument of T");
        sub->add_option("-x", o.x, "x argument of Phi2");
        sub->add_option("-y", o.y, "y argument of Phi2 (default 0)");
        sub->add_option("--rho", o.rho, "Correlation");
        sub->add_option("--r", o.r, "Slope r = rho / sqrt(1 - rho^2)");
    };
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--method", method_list,
                        "novel, tetrachoric, tetrachoric-accelerated, alternating, oracle")
            ->delimiter(',');
        sub->add_option("--variant", o.variant, "atan-ext-no, atan-ext-yes (grid: also both, the default)");
        sub->add_option("--eps", o.eps, "Term tolerance; negative runs to stagnation");
        sub->add_option("--oracle-tol", o.oracle_tol, "Absolute tolerance of the quadrature oracle");
        sub->add_option("--out", o.out, "CSV output path");
    };

    auto* eval = app.add_subcommand("eval", "Single evaluation");
    add_point(eval);
    add_common(eval);
    eval->add_option("--precision-bits", o.precision_bits, "Working precision (MPFR above 53)");

    auto* grid = app.add_subcommand("grid", "h = -10..10 by 0.1, rho = -0.99..0.99 by 0.01");
    add_common(grid);

    auto* random = app.add_subcommand("random", "Random (x, y, rho) triplets");
    add_common(random);
    random->add_option("--seed", o.seed, "PRNG seed");
    random->add_option("--count", o.count, "Number of triplets");
    random->add_flag("--star", o.star, "Use rho* = 2 Phi(8 rho) - 1");
    random->add_option("--oracle-sample", o.oracle_sample, "Triplets checked against the oracle");

    auto* compare = app.add_subcommand("compare", "Precision ladder against the r = 1 closed forms");
    compare->add_option("-h", o.h, "h (default 2.1)");
    compare->add_option("--r", o.r, "Slope (default 1)");
    compare->add_option("--variant", o.variant, "atan-ext-no, atan-ext-yes or both");
    compare->add_option("--precision-bits", o.bits_ladder, "Comma separated list of precisions");

    CLI11_PARSE(app, argc, argv);
    o.methods = method_list;
    try {
        if (*eval) {
            return cmd_eval(o);
        }
        if (*grid) {
            return cmd_grid(o);
        }
        if (*random) {
            return cmd_random(o);
        }
        return cmd_compare(o);
    } catch (const CLI::Error& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
