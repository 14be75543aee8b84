// Acceptance run: one PASS/FAIL line per criterion. The process exits 0 when
// every outcome matches the recorded expectation in kExpectedFail.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "hzn/errors.hpp"
#include "hzn/quadfield.hpp"
#include "hzn/suites.hpp"
#include "hzn/zeta.hpp"

using namespace hzn;

namespace {

// Criteria known not to hold as stated; see README.
const std::set<int> kExpectedFail{1, 7, 10};

struct Verdict {
    bool pass = false;
    std::string summary;
    std::vector<std::string> diag;
};

std::string fmt(const char* f, double a) {
    char b[96];
    std::snprintf(b, sizeof b, f, a);
    return b;
}

void add_suite_diag(Verdict& v, const SuiteOutcome& s) {
    v.diag.push_back(s.suite + ": max residual " + fmt("%.3e", s.max_residual) + " (tol " + fmt("%.0e", s.tol) +
                     ", " + std::to_string(s.samples) + " samples)");
    for (const SuiteDetail& d : s.details) {
        const cplx z = d.value.value;
        std::string val = fmt("%.10g", z.real());
        if (z.imag() != 0.0) val += fmt(" %+.10gi", z.imag());
        v.diag.push_back("  " + d.label + " = " + val);
    }
    for (const std::string& n : s.notes) v.diag.push_back("  note: " + n);
}

Verdict suites(const std::vector<std::string>& names) {
    Verdict v{true, "", {}};
    for (const std::string& n : names) {
        const SuiteOutcome s = run_suite(n, SuiteOptions{});
        v.pass = v.pass && s.pass;
        v.summary += (v.summary.empty() ? "" : "; ") + n + " " + fmt("%.2e", s.max_residual) + " (tol " +
                     fmt("%.0e", s.tol) + ")";
        add_suite_diag(v, s);
    }
    return v;
}

Verdict c1_table() {
    const auto t0 = std::chrono::steady_clock::now();
    const SuiteOutcome s = run_suite("table", SuiteOptions{});
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    Verdict v;
    double route = 0.0;
    for (const SuiteDetail& d : s.details)
        if (d.label == "route_agreement_max") route = d.value.value.real();
    v.pass = s.max_residual <= 1e-7 && route <= 1e-9 && secs < 60.0;
    v.summary = "max |hzn - printed| " + fmt("%.2e", s.max_residual) + " (tol 1e-7), routes " + fmt("%.2e", route) +
                " (tol 1e-9), " + fmt("%.1f", secs) + " s (limit 60 s)";
    add_suite_diag(v, s);
    return v;
}

// Random discriminant-1 forms with w in (1, 5), w' in (0, min(1, w)).
IndefForm random_form(std::mt19937_64& g) {
    const double w = 1.0 + 4.0 * uniform01(g);
    const double wp = uniform01(g);
    return {w, wp, {}};
}

double twist(std::mt19937_64& g) {
    for (;;) {
        const double a = uniform01(g);
        if (a > 0.01 && a < 0.99) return a;
    }
}

Verdict c2_main() {
    std::mt19937_64 g(2);
    double worst = 0.0;
    std::string where;
    const auto t0 = std::chrono::steady_clock::now();
    for (int i = 0; i < 50; ++i) {
        const IndefForm f = random_form(g);
        const double a = twist(g), b = twist(g);
        const int k = 2 + (i % 2);
        const cplx d = zq(k, f, TwistPair(a, b), ZetaRoute::Direct).value.value;
        const cplx p = pk(k, f.w, f.wprime, TwistPair(a, b)).value;
        const double r = std::abs(d + p);
        if (r > worst) {
            worst = r;
            where = "k=" + std::to_string(k) + " w=" + fmt("%.6f", f.w) + " w'=" + fmt("%.6f", f.wprime) +
                    " alpha=" + fmt("%.6f", a) + " beta=" + fmt("%.6f", b);
        }
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    Verdict v;
    v.pass = worst <= 1e-9 && secs < 300.0;
    v.summary = "50 forms, max |direct + D F| " + fmt("%.2e", worst) + " (tol 1e-9), " + fmt("%.1f", secs) +
                " s (limit 300 s)";
    v.diag.push_back("worst at " + where);
    v.diag.push_back("twists uniform in (0.01, 0.99), seed 2");
    return v;
}

Verdict c3_kronecker() {
    std::mt19937_64 g(3);
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
        const IndefForm f = random_form(g);
        const double a = twist(g), b = twist(g);
        const TwistPair t(a, b);
        const cplx d = zq(1, f, t, ZetaRoute::Direct).value.value;
        const cplx h = hzn_eval(2, f.wprime, t).value.value - hzn_eval(2, f.w, t).value.value;
        worst = std::max(worst, std::abs(d - h));
    }
    Verdict v;
    v.pass = worst <= 1e-8;
    v.summary = "20 forms, max |Z_Q(1) - (F_2(w') - F_2(w))| " + fmt("%.2e", worst) + " (tol 1e-8)";
    v.diag.push_back("twists uniform in (0.01, 0.99), seed 3");
    return v;
}

Verdict c11_reduction() {
    Verdict v{true, "", {}};
    const std::vector<std::pair<std::int64_t, std::size_t>> h{{5, 1}, {8, 1}, {12, 2}, {13, 1}, {17, 1}, {21, 2}};
    for (auto [D, expect] : h) {
        const FieldData fd = fundamental_unit(D);
        const auto classes = narrow_classes(fd);
        std::size_t total = 0;
        bool ok = classes.size() == expect;
        for (const MinusCycle& c : classes) {
            total += c.reds.size();
            ok = ok && c.reds.size() == c.digits.size();
            for (std::size_t j = 0; j < c.reds.size(); ++j) {
                QuadIrr x = c.reds[j];
                ok = ok && is_reduced(x) && minus_step(x) == c.digits[j] && x == c.reds[(j + 1) % c.reds.size()];
            }
        }
        ok = ok && total == reduced_numbers(D, (D + 1) / 2).size();
        v.diag.push_back("D=" + std::to_string(D) + ": " + std::to_string(classes.size()) + " classes, " +
                         std::to_string(total) + " reduced numbers" + (ok ? "" : " MISMATCH"));
        v.pass = v.pass && ok;
    }
    const FieldData fd = fundamental_unit(12);
    const auto cl = narrow_classes(fd);
    std::vector<std::string> r0, r1;
    for (const QuadIrr& w : red_set(cl[0], fd)) r0.push_back(w.str());
    for (const QuadIrr& w : red_set(cl[1], fd)) r1.push_back(w.str());
    const bool sets = r0 == std::vector<std::string>{"2+sqrt(3)"} &&
                      r1 == std::vector<std::string>{"(3+sqrt(3))/3", "(3+sqrt(3))/2"};
    v.pass = v.pass && sets;
    v.summary = std::string("exact periodic cycles for D in {5,8,12,13,17,21}; D=12 Red sets ") +
                (sets ? "{2+sqrt(3)}, {(3+sqrt(3))/3, (3+sqrt(3))/2}" : "differ");
    return v;
}

}  // namespace

int main(int argc, char** argv) {
    const bool verbose = argc > 1 && std::string(argv[1]) == "-v";
    struct Item {
        int id;
        const char* name;
        std::function<Verdict()> fn;
    };
    const std::vector<Item> items{
        {1, "table reproduction, D=12 k=2", c1_table},
        {2, "route equivalence, k in {2,3}", c2_main},
        {3, "second limit formula, k=1", c3_kronecker},
        {4, "functional equations", [] { return suites({"fe2", "fe3", "fe6"}); }},
        {5, "operator consistency", [] { return suites({"dop"}); }},
        {6, "asymptotics", [] { return suites({"asymp"}); }},
        {7, "limit degenerations", [] { return suites({"limits"}); }},
        {8, "cocycle relations", [] { return suites({"cocycle"}); }},
        {9, "Binet route and eta series", [] { return suites({"binet", "eta"}); }},
        {10, "class zeta identity at alpha=1/2", [] { return suites({"vz"}); }},
        {11, "reduction exactness", c11_reduction},
    };
    int passed = 0, surprises = 0;
    for (const Item& it : items) {
        Verdict v;
        try {
            v = it.fn();
        } catch (const Error& e) {
            v.pass = false;
            v.summary = std::string("threw ") + e.kind() + ": " + e.what();
        }
        passed += v.pass;
        const bool expected = v.pass != (kExpectedFail.count(it.id) > 0);
        if (!expected) ++surprises;
        std::printf("%s criterion %2d  %s: %s%s\n", v.pass ? "PASS" : "FAIL", it.id, it.name, v.summary.c_str(),
                    expected ? "" : "  [UNEXPECTED]");
        if (verbose || !v.pass)
            for (const std::string& d : v.diag) std::printf("      %s\n", d.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria pass; expected failures: 1, 7, 10; unexpected outcomes: %d\n", passed,
                items.size(), surprises);
    return surprises == 0 ? 0 : 1;
}
