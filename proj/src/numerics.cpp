#include "hzn/numerics.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

#include "hzn/errors.hpp"

namespace hzn {

void SeriesConfig::validate() const {
    if (!(abs_tol > 0.0)) throw DomainError("SeriesConfig: abs_tol must be positive");
    if (max_terms < 16) throw DomainError("SeriesConfig: max_terms must be at least 16");
    if (parts_depth < 0 || parts_depth > 8) throw DomainError("SeriesConfig: parts_depth must lie in 0..8");
}

SeriesConfig default_series_config() {
    SeriesConfig cfg;
    if (const char* t = std::getenv("HZN_TOL")) {
        char* end = nullptr;
        double v = std::strtod(t, &end);
        if (end != t && v > 0.0) cfg.abs_tol = v;
    }
    if (const char* m = std::getenv("HZN_MAX_TERMS")) {
        char* end = nullptr;
        long long v = std::strtoll(m, &end, 10);
        if (end != m && v >= 16) cfg.max_terms = v;
    }
    return cfg;
}

QuadratureRule gauss_legendre(int n, QuadratureRule::Kind kind) {
    if (n < 2) throw DomainError("gauss_legendre: need at least 2 nodes");
    QuadratureRule r;
    r.kind = kind;
    r.nodes.resize(n);
    r.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        long double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        long double dp = 0;
        for (int it = 0; it < 100; ++it) {
            long double p0 = 1, p1 = x;
            for (int k = 2; k <= n; ++k) {
                long double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1);
            long double dx = p1 / dp;
            x -= dx;
            if (std::fabs(static_cast<double>(dx)) < 1e-19) break;
        }
        // Recompute the derivative at the converged node for the weight.
        long double p0 = 1, p1 = x;
        for (int k = 2; k <= n; ++k) {
            long double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1);
        r.nodes[n - 1 - i] = static_cast<double>(x);
        r.weights[n - 1 - i] = static_cast<double>(2 / ((1 - x * x) * dp * dp));
    }
    return r;
}

cplx expi2pi(long double t) {
    long double f = t - std::floor(t);
    long double th = 2.0L * 3.141592653589793238462643383279502884L * f;
    return {static_cast<double>(std::cos(th)), static_cast<double>(std::sin(th))};
}

ComplexValue sum_phased(const CoeffFn& coeff, double beta, const SeriesConfig& cfg) {
    cfg.validate();
    const long double bf = static_cast<long double>(beta) - std::floor(static_cast<long double>(beta));
    if (bf < 1e-12L || 1.0L - bf < 1e-12L) throw DegeneratePhase("sum_phased: phase is integral");
    const cplx w = expi2pi(bf);
    const cplx inv = 1.0 / (w - 1.0);
    const int d = cfg.parts_depth;

    std::vector<cplx> a;
    auto coef = [&](std::int64_t q) -> cplx {
        while (static_cast<std::int64_t>(a.size()) <= q) a.push_back(coeff(static_cast<std::int64_t>(a.size())));
        return a[static_cast<std::size_t>(q)];
    };
    auto phase = [&](std::int64_t q) { return expi2pi(bf * static_cast<long double>(q)); };

    KahanSum partial;
    std::int64_t summed = 0;
    auto estimate = [&](std::int64_t n) {
        while (summed < n) {
            partial.add(phase(summed) * coef(summed));
            ++summed;
        }
        // Forward differences Delta^j a_n for j = 0..d.
        std::vector<cplx> diff(d + 1);
        for (int j = 0; j <= d; ++j) diff[j] = coef(n + j);
        std::vector<cplx> fd(d + 1);
        for (int j = 0; j <= d; ++j) {
            fd[j] = diff[0];
            for (int l = 0; l < d - j; ++l) diff[l] = diff[l + 1] - diff[l];
        }
        cplx tail = 0.0;
        for (int j = d; j >= 0; --j) tail = (-phase(n + j) * fd[j] - tail) * inv;
        return partial.value() + tail;
    };

    std::int64_t n = 16;
    cplx prev = estimate(n);
    double last_err = 0.0;
    while (2 * n + d + 1 <= cfg.max_terms) {
        n *= 2;
        cplx cur = estimate(n);
        last_err = std::abs(cur - prev);
        if (last_err <= cfg.abs_tol && n >= 64) return {cur, last_err};
        prev = cur;
    }
    throw NonConvergent("sum_phased: error estimate " + std::to_string(last_err) + " exceeds tolerance at " +
                        std::to_string(n) + " terms");
}

namespace {

cplx panel(const RealFn& f, double a, double b, const QuadratureRule& rule) {
    const double h = 0.5 * (b - a), m = 0.5 * (a + b);
    KahanSum s;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) s.add(rule.weights[i] * f(m + h * rule.nodes[i]));
    return s.value() * h;
}

}  // namespace

ComplexValue quad_panel(const RealFn& f, double a, double b, const QuadratureRule& rule, double abs_tol) {
    if (!(a < b)) throw DomainError("quad_panel: need a < b");
    struct Item {
        double a, b;
        cplx whole;
        int depth;
    };
    const double len = b - a;
    std::vector<Item> stack{{a, b, panel(f, a, b, rule), 0}};
    KahanSum total;
    double err = 0.0;
    while (!stack.empty()) {
        Item it = stack.back();
        stack.pop_back();
        const double m = 0.5 * (it.a + it.b);
        cplx l = panel(f, it.a, m, rule), r = panel(f, m, it.b, rule);
        cplx halves = l + r;
        double diff = std::abs(halves - it.whole);
        double local = std::max(abs_tol * (it.b - it.a) / len, 1e-15 * std::abs(halves));
        if (diff <= local) {
            total.add(halves);
            err += diff;
        } else if (it.depth >= 40) {
            throw NonConvergent("quad_panel: refinement limit reached");
        } else {
            stack.push_back({m, it.b, r, it.depth + 1});
            stack.push_back({it.a, m, l, it.depth + 1});
        }
    }
    return {total.value(), err};
}

ComplexValue quad_halfline(const RealFn& f, double scale, const QuadratureRule& rule, double abs_tol) {
    if (!(scale > 0.0)) throw DomainError("quad_halfline: scale must be positive");
    const double ptol = abs_tol / 16.0;
    KahanSum total;
    double err = 0.0;
    auto run = [&](bool up) {
        int small = 0;
        for (int j = 0; j < 1100; ++j) {
            double lo = up ? std::ldexp(scale, j) : std::ldexp(scale, -j - 1);
            double hi = 2 * lo;
            if (up && !std::isfinite(hi)) break;
            if (!up && lo < 1e-300) return;
            ComplexValue p = quad_panel(f, lo, hi, rule, ptol);
            total.add(p.value);
            err += p.err;
            small = std::abs(p.value) < abs_tol / 10 ? small + 1 : 0;
            if (small >= 2 && j >= 2) return;
        }
        throw NonConvergent("quad_halfline: panels did not decay");
    };
    run(true);
    run(false);
    return {total.value(), err};
}

}  // namespace hzn
