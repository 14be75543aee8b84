#include "hzn/suites.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include <boost/multiprecision/cpp_int.hpp>

#include "hzn/errors.hpp"
#include "hzn/hzn.hpp"
#include "hzn/quadfield.hpp"
#include "hzn/zeta.hpp"

namespace hzn {

namespace {

using Rat = boost::multiprecision::cpp_rational;

double dist_int(double a) { return std::abs(a - std::round(a)); }

double uniform(std::mt19937_64& g, double lo, double hi) { return lo + (hi - lo) * uniform01(g); }

// Phase in (0, 1) at least `margin` away from the integers.
double phase(std::mt19937_64& g, double margin) {
    for (;;) {
        double a = uniform01(g);
        if (dist_int(a) >= margin) return a;
    }
}

cplx li(int k, double a) { return polylog_int(k, expi2pi(a)); }

cplx F(int k, cplx x, double a, double b) { return hzn_eval(k, x, TwistPair(a, b)).value.value; }

cplx L2(int a, int b, double t1, double t2) { return double_polylog(a, b, expi2pi(t1), expi2pi(t2)).value; }

cplx two_term(int k, cplx x, double a, double b) {
    cplx lhs = F(k, x, a, b) + std::pow(-x, k - 2) * F(k, 1.0 / x, b, a);
    cplx rhs = li(k, a) / x - std::pow(-x, k - 1) * li(k, b);
    for (int r = 1; r < k; ++r) rhs += std::pow(-x, r - 1) * li(k - r, a) * li(r, b);
    return lhs - rhs;
}

cplx three_term(int k, cplx x, double a, double b) {
    cplx lhs = F(k, x, a, b) - F(k, x + 1.0, a + b, b) + std::pow(-x, k - 2) * F(k, (x + 1.0) / x, a + b, a);
    cplx rhs = li(k, a) / x - std::pow(-x, k - 1) / (x + 1.0) * li(k, a + b);
    for (int r = 1; r < k; ++r) rhs += std::pow(-x, r - 1) * L2(r, k - r, b, a);
    return lhs - rhs;
}

// x in C' with |x| log-uniform on [0.2, 5] and |arg x| <= 0.75 pi.
cplx sample_x(std::mt19937_64& g) {
    const double r = 0.2 * std::pow(25.0, uniform01(g));
    const double th = uniform(g, -0.75, 0.75) * kPi;
    return std::polar(r, th);
}

SuiteOutcome fe_suite(const std::string& name, const SuiteOptions& o, double def_tol) {
    SuiteOutcome out{name, true, 0.0, o.tol > 0 ? o.tol : def_tol, o.samples > 0 ? o.samples : 100, {}, {}};
    std::mt19937_64 g(o.seed);
    for (int s = 0; s < out.samples; ++s) {
        const int k = 2 + s % 5;
        const cplx x = sample_x(g);
        double a, b;
        do {
            a = phase(g, 0.01);
            b = phase(g, 0.01);
        } while (name != "fe2" && dist_int(a + b) < 0.01);
        cplx r;
        if (name == "fe2")
            r = two_term(k, x, a, b);
        else if (name == "fe3")
            r = three_term(k, x, a, b);
        else
            r = three_term(k, x, a, b) + three_term(k, x, -a, -b);
        out.max_residual = std::max(out.max_residual, std::abs(r));
    }
    out.pass = out.max_residual <= out.tol;
    out.notes.push_back("x sampled with |x| in [0.2, 5] and |arg x| <= 0.75 pi");
    return out;
}

// D_n applied to a polynomial in exact rational arithmetic.
Rat dop_exact(int n, const std::vector<Rat>& coef, const Rat& x, const Rat& y) {
    auto deriv = [&](int i, const Rat& t) {
        Rat v = 0, pw = 1;
        for (std::size_t m = static_cast<std::size_t>(i); m < coef.size(); ++m) {
            Rat f = 1;
            for (int j = 0; j < i; ++j) f *= static_cast<int>(m) - j;
            v += coef[m] * f * pw;
            pw *= t;
        }
        return v;
    };
    Rat s = 0;
    for (int i = 0; i <= n; ++i) {
        Rat binom = 1, fact = 1;
        for (int j = 1; j <= n; ++j) binom = binom * (n - i + j) / j;  // C(2n - i, n)
        for (int j = 2; j <= i; ++j) fact *= j;
        Rat den = fact;
        for (int j = 0; j < n - i; ++j) den *= (y - x);
        const Rat sg = (i % 2 == 0) ? 1 : -1;
        s += binom * (deriv(i, x) - sg * deriv(i, y)) / den;
    }
    return s;
}

SuiteOutcome dop_suite(const SuiteOptions& o) {
    SuiteOutcome out{"dop", true, 0.0, o.tol > 0 ? o.tol : 1e-9, o.samples > 0 ? o.samples : 20, {}, {}};
    std::mt19937_64 g(o.seed);
    for (int s = 0; s < out.samples; ++s) {
        const int k = 2 + s % 2;
        double x, y;
        do {
            x = uniform(g, 1.0, 4.0);
            y = uniform(g, 1.0, 4.0);
        } while (std::abs(x - y) < 0.25);
        if (y > x) std::swap(x, y);
        const TwistPair t(phase(g, 0.01), phase(g, 0.01));
        const DerivFamily f = hzn_family(2 * k, t);
        const cplx a = dop(k - 1, f, x, y, DopMethod::Finite).value;
        const cplx b = dop(k - 1, f, x, y, DopMethod::Integral).value;
        out.max_residual = std::max(out.max_residual, std::abs(a - b));
    }

    // Kernel: D_n kills polynomials of degree <= 2n, and D_n(t^{2n+1}) = (x - y)^{n+1}.
    bool exact_ok = true;
    const std::array<std::pair<int, int>, 4> pts{{{3, 1}, {5, -2}, {7, 4}, {-3, 2}}};
    for (int n = 0; n <= 4; ++n) {
        for (int m = 0; m <= 2 * n; ++m) {
            std::vector<Rat> c(m + 1, Rat(0));
            c[m] = 1;
            for (auto [px, py] : pts)
                if (dop_exact(n, c, px, py) != 0) exact_ok = false;
        }
        std::vector<Rat> c(2 * n + 2, Rat(0));
        c[2 * n + 1] = 1;
        for (auto [px, py] : pts) {
            Rat want = 1;
            for (int j = 0; j <= n; ++j) want *= Rat(px - py);
            if (dop_exact(n, c, px, py) != want) exact_ok = false;
        }
    }
    double kernel_max = 0.0;
    for (int s = 0; s < out.samples; ++s) {
        const int n = 1 + s % 3;
        std::vector<double> c(2 * n + 1);
        for (double& v : c) v = uniform(g, -1.0, 1.0);
        DerivFamily f = [&c](int i, cplx t) -> cplx {
            cplx v = 0.0;
            for (std::size_t m = static_cast<std::size_t>(i); m < c.size(); ++m) {
                double fl = 1.0;
                for (int j = 0; j < i; ++j) fl *= static_cast<double>(m) - j;
                v += c[m] * fl * std::pow(t, static_cast<int>(m) - i);
            }
            return v;
        };
        double x, y;
        do {
            x = uniform(g, -1.0, 1.0);
            y = uniform(g, -1.0, 1.0);
        } while (std::abs(x - y) < 0.5);
        kernel_max = std::max(kernel_max, std::abs(dop(n, f, x, y).value));
    }
    out.details.push_back({"finite_vs_integral_max", {out.max_residual, 0.0}});
    out.details.push_back({"kernel_numeric_max", {kernel_max, 0.0}});
    out.details.push_back({"kernel_exact_ok", {exact_ok ? 1.0 : 0.0, 0.0}});
    out.pass = out.max_residual <= out.tol && kernel_max <= 1e-12 && exact_ok;
    out.notes.push_back("numeric kernel probe: coefficients and x, y in [-1, 1], |x - y| >= 0.5");
    return out;
}

SuiteOutcome cocycle_suite(const SuiteOptions& o) {
    SuiteOutcome out{"cocycle", true, 0.0, o.tol > 0 ? o.tol : 1e-8, o.samples > 0 ? o.samples : 20, {}, {}};
    std::mt19937_64 g(o.seed);
    // The set S for D = 12 is (1/2 Z)^2.
    for (int s = 0; s < out.samples; ++s) {
        double x;
        do {
            x = (uniform01(g) < 0.5 ? -1.0 : 1.0) * uniform(g, 0.3, 3.0);
        } while (std::abs(x - 1.0) < 0.1);
        const double a = 0.5 * static_cast<double>(g() % 2), b = 0.5 * static_cast<double>(g() % 2);
        for (int w : {4, 6}) {
            auto [r1, r2] = period_residuals(w, TwistPair(a, b), x);
            out.max_residual = std::max({out.max_residual, std::abs(r1.value), std::abs(r2.value)});
        }
    }
    out.pass = out.max_residual <= out.tol;
    // Outside S the relations are not expected to hold; reported for reference.
    double generic = 0.0;
    for (int s = 0; s < 4; ++s) {
        const double x = uniform(g, 0.3, 3.0);
        const TwistPair t(phase(g, 0.05), phase(g, 0.05));
        auto [r1, r2] = period_residuals(4, t, x);
        generic = std::max({generic, std::abs(r1.value), std::abs(r2.value)});
    }
    auto [q1, q2] = period_residuals(6, TwistPair(0.25, 0.75), 2.3);
    out.details.push_back({"generic_twist_max_residual", {generic, 0.0}});
    out.details.push_back({"twist_(0.25,0.75)_w6_x2.3_F", q1});
    out.details.push_back({"twist_(0.25,0.75)_w6_x2.3_G", q2});
    out.notes.push_back("twists drawn from S for D = 12, the half-integer pairs");
    // Near x = 1 the U-slash samples psi close to 0, where it is of size |x - 1|^{-w}.
    out.notes.push_back("x in +-[0.3, 3] with |x - 1| >= 0.1");
    return out;
}

SuiteOutcome binet_suite(const SuiteOptions& o) {
    SuiteOutcome out{"binet", true, 0.0, o.tol > 0 ? o.tol : 1e-10, o.samples > 0 ? o.samples : 100, {}, {}};
    std::mt19937_64 g(o.seed);
    for (int s = 0; s < out.samples; ++s) {
        const double x = uniform(g, 1e-3, 10.0);
        const double b = phase(g, 1e-3);
        const cplx a = lerch_psi(b, x, PsiRoute::Series).value;
        const cplx c = lerch_psi(b, x, PsiRoute::Binet).value;
        out.max_residual = std::max(out.max_residual, std::abs(a - c));
    }
    out.pass = out.max_residual <= out.tol;
    return out;
}

SuiteOutcome eta_suite(const SuiteOptions& o) {
    SuiteOutcome out{"eta", true, 0.0, o.tol > 0 ? o.tol : 1e-6, o.samples > 0 ? o.samples : 20, {}, {}};
    std::mt19937_64 g(o.seed);
    for (int s = 0; s < out.samples; ++s) {
        const int k = 2 + s % 2;
        const double x = uniform(g, 0.3, 4.0);
        const double a = phase(g, 0.02), b = phase(g, 0.02);
        out.max_residual = std::max(out.max_residual, std::abs(hzn_eta_residual(k, x, a, b).value));
    }
    double gde = 0.0;
    for (int s : {3, 4}) {
        for (int j = 0; j < 10; ++j) {
            const cplx tau(uniform(g, -0.5, 0.5), uniform(g, 0.5, 1.5));
            const double b = phase(g, 0.02), a = uniform(g, -1.0, 1.0);
            gde = std::max(gde, std::abs(eisenstein_identity_residual(tau, s, b, a).value));
        }
    }
    out.details.push_back({"cc_max_residual", {out.max_residual, 0.0}});
    out.details.push_back({"eisenstein_identity_max_residual", {gde, 0.0}});
    out.pass = out.max_residual <= out.tol && gde <= 1e-8;
    out.notes.push_back("Eisenstein identity sampled with non-integral beta; tolerance 1e-8");
    return out;
}

SuiteOutcome asymp_suite(const SuiteOptions& o) {
    SuiteOutcome out{"asymp", true, 0.0, o.tol > 0 ? o.tol : 2.0, o.samples > 0 ? o.samples : 6, {}, {}};
    std::mt19937_64 g(o.seed);
    // max_residual is the worst factor by which the doubling ratio misses 2^{-(N+2)}.
    for (int s = 0; s < out.samples; ++s) {
        const TwistPair t(phase(g, 0.1), phase(g, 0.1));
        const double th = uniform(g, -0.25, 0.25) * kPi;
        for (int N : {4, 6}) {
            double e[2];
            int i = 0;
            for (double r : {50.0, 100.0}) {
                const cplx x = std::polar(r, th);
                e[i++] = std::abs(hzn_eval(3, x, t).value.value - hzn_asymptotic(3, x, t, N).value);
            }
            const double ratio = e[1] / e[0] * std::ldexp(1.0, N + 2);
            const double miss = std::max(ratio, 1.0 / ratio);
            out.max_residual = std::max(out.max_residual, miss);
            if (s == 0) {
                out.details.push_back({"N" + std::to_string(N) + "_err_50", {e[0], 0.0}});
                out.details.push_back({"N" + std::to_string(N) + "_err_100", {e[1], 0.0}});
            }
        }
    }
    out.pass = out.max_residual <= out.tol;
    out.notes.push_back("k = 3, |x| in {50, 100}; residual is the factor off 2^-(N+2)");
    return out;
}

SuiteOutcome limits_suite(const SuiteOptions& o) {
    SuiteOutcome out{"limits", true, 0.0, o.tol > 0 ? o.tol : 1e-3, 4, {}, {}};
    const std::array<cplx, 4> xs{cplx(1.0), cplx(2.0), cplx(0.5), cplx(1.5, 0.7)};
    const std::array<double, 3> eps{1e-2, 1e-3, 1e-4};
    bool monotone = true;
    for (const cplx x : xs) {
        const cplx F1 = herglotz_F(x).value;
        std::array<double, 3> g1{}, g3{}, g4{};
        for (int j = 0; j < 3; ++j) {
            const TwistPair t(eps[j], eps[j]);
            const cplx za = t.alpha.z, zb = t.beta.z;
            const cplx c1 = -hzn_eval(2, x, t).value.value +
                            (kEulerGamma + std::log(x) + std::log(1.0 - zb)) * std::log(1.0 - za) +
                            polylog_order_deriv_s1(t.alpha).value;
            g1[j] = std::abs(c1 - F1);
            for (int k : {3, 4}) {
                const cplx c2 = -hzn_eval(k, x, t).value.value - (kEulerGamma + std::log(1.0 - zb)) * polylog_int(k - 1, za);
                (k == 3 ? g3 : g4)[j] = std::abs(c2 - higher_herglotz_plain(k, x).value);
            }
        }
        for (const auto* gp : {&g1, &g3, &g4}) {
            const auto& gv = *gp;
            if (!(gv[1] < gv[0] && gv[2] < gv[1])) monotone = false;
            out.max_residual = std::max(out.max_residual, gv[2]);
        }
        const std::string tag = "x=" + std::to_string(x.real()) + (x.imag() != 0.0 ? "+" + std::to_string(x.imag()) + "i" : "");
        for (int j = 0; j < 3; ++j) {
            const std::string e = "_eps" + std::to_string(j + 2);
            out.details.push_back({tag + "_F_gap" + e, {g1[j], 0.0}});
            out.details.push_back({tag + "_F3_gap" + e, {g3[j], 0.0}});
            out.details.push_back({tag + "_F4_gap" + e, {g4[j], 0.0}});
        }
    }
    // Iterated path beta = eps^2, for comparison.
    for (double e : {1e-1, 3e-2, 1e-2}) {
        const TwistPair t(e, e * e);
        const cplx x(2.0);
        const cplx c1 = -hzn_eval(2, x, t).value.value +
                        (kEulerGamma + std::log(x) + std::log(1.0 - t.beta.z)) * std::log(1.0 - t.alpha.z) +
                        polylog_order_deriv_s1(t.alpha).value;
        out.details.push_back({"iterated_x=2_eps=" + std::to_string(e) + "_F_gap", {std::abs(c1 - herglotz_F(x).value), 0.0}});
    }
    out.details.push_back({"monotone", {monotone ? 1.0 : 0.0, 0.0}});
    out.pass = monotone && out.max_residual <= out.tol;
    out.notes.push_back("alpha = beta = eps for eps in {1e-2, 1e-3, 1e-4}");
    return out;
}

SuiteOutcome vz_suite(const SuiteOptions& o) {
    SuiteOutcome out{"vz", true, 0.0, o.tol > 0 ? o.tol : 1e-7, 4, {}, {}};
    const FieldData fd = fundamental_unit(12);
    const std::vector<MinusCycle> classes = narrow_classes(fd);
    for (int k : {2, 3}) {
        for (std::size_t c = 0; c < classes.size(); ++c) {
            const VzReport r = verify_vz(fd, classes[c], k, 0.5);
            const std::string tag = "k" + std::to_string(k) + "_B" + std::to_string(c);
            const double sg = (k % 2 == 0) ? 1.0 : -1.0;
            const cplx comb = r.zcal_b + sg * r.zcal_star;
            out.details.push_back({tag + "_lhs", r.lhs});
            out.details.push_back({tag + "_rhs", r.rhs});
            out.details.push_back({tag + "_minus_zcal_combination", {-comb, 0.0}});
            for (std::size_t j = 0; j < r.rhs_terms.size(); ++j)
                out.details.push_back({tag + "_rhs_term" + std::to_string(j), {r.rhs_terms[j], 0.0}});
            out.max_residual = std::max(out.max_residual, std::abs(r.lhs.value - r.rhs.value));
        }
    }
    out.pass = out.max_residual <= out.tol;
    out.notes.push_back("D = 12, alpha = 1/2, k in {2, 3}, both classes");
    return out;
}

SuiteOutcome table_suite(const SuiteOptions& o) {
    SuiteOutcome out{"table", true, 0.0, o.tol > 0 ? o.tol : 1e-7, 6, {}, {}};
    const FieldData fd = fundamental_unit(12);
    const std::vector<MinusCycle> classes = narrow_classes(fd);
    double route_max = 0.0;
    for (const TableRow& row : reference_table()) {
        const TwistPair t(row.alpha, row.beta);
        const cplx h = zcal(2, classes[row.class_id], fd, t, ZetaRoute::Hzn).value.value;
        const cplx d = zcal(2, classes[row.class_id], fd, t, ZetaRoute::Direct).value.value;
        route_max = std::max(route_max, std::abs(h - d));
        const double diff = std::abs(h - row.reference);
        out.max_residual = std::max(out.max_residual, diff);
        const std::string tag = "B" + std::to_string(row.class_id) + "_(" + std::to_string(row.alpha) + "," +
                                std::to_string(row.beta) + ")";
        out.details.push_back({tag + "_hzn", {h, 0.0}});
        out.details.push_back({tag + "_abs_diff_to_reference", {diff, 0.0}});
        if (diff > out.tol) {
            const cplx flip = zcal(2, classes[row.class_id], fd, TwistPair(row.alpha, -row.beta)).value.value;
            out.details.push_back({tag + "_abs_diff_with_beta_negated", {std::abs(flip - row.reference), 0.0}});
        }
    }
    out.details.push_back({"route_agreement_max", {route_max, 0.0}});
    out.pass = out.max_residual <= out.tol && route_max <= 1e-9;
    return out;
}

}  // namespace

std::vector<TableRow> reference_table() {
    return {
        {0, 0.5, 0.5, {-11.12741223912468, 1.30095e-15}, true},
        {0, 0.3562, -0.4052, {-7.259415410306584, 8.700347578594402}, true},
        {0, 2.9748, 0.6723, {12.451416963412164, -2.5015713592878965}, true},
        {1, 0.5, 0.5, {-3.960846051402042, 4.48482e-16}, true},
        {1, 0.3562, -0.4052, {-2.562703368470003, 3.125265766429505}, true},
        {1, 2.9748, 0.6723, {4.50864964043679, -0.6044254870852179}, true},
    };
}

std::vector<std::string> suite_names() {
    return {"fe2", "fe3", "fe6", "dop", "cocycle", "binet", "eta", "asymp", "limits", "vz", "table"};
}

SuiteOutcome run_suite(const std::string& name, const SuiteOptions& opt) {
    if (name == "fe2") return fe_suite(name, opt, 1e-10);
    if (name == "fe3") return fe_suite(name, opt, 1e-10);
    if (name == "fe6") return fe_suite(name, opt, 1e-9);
    if (name == "dop") return dop_suite(opt);
    if (name == "cocycle") return cocycle_suite(opt);
    if (name == "binet") return binet_suite(opt);
    if (name == "eta") return eta_suite(opt);
    if (name == "asymp") return asymp_suite(opt);
    if (name == "limits") return limits_suite(opt);
    if (name == "vz") return vz_suite(opt);
    if (name == "table") return table_suite(opt);
    throw UsageError("unknown suite '" + name + "'");
}

}  // namespace hzn
