#include "hzn/hzn.hpp"

#include <cmath>
#include <string>

#include "hzn/errors.hpp"

namespace hzn {

namespace {

void check_cut(cplx x, const char* who) {
    if (std::abs(x.imag()) < 1e-12 && x.real() <= 0.0)
        throw DomainError(std::string(who) + ": x on the cut (-inf, 0]");
}

// Sum_{p >= 1} e^{2 pi i alpha p} p^{-e} Phi_beta(s, p x).
//
// The first P terms are summed directly; beyond P the inverse-power expansion
// of Phi_beta in p x turns the remainder into polylogarithm tails in p.
ComplexValue p_sum(const LerchKernel& kb, const LerchKernel& ka, int s, int e, cplx x) {
    const double ax = std::abs(x);
    const double half = 0.5 * std::arg(x);
    const double eff = ax * std::cos(half) * std::cos(half);
    const double R = kb.radius();
    std::int64_t P = std::max<std::int64_t>(16, static_cast<std::int64_t>(std::ceil(90.0 / (R * eff))));
    const cplx ph = ax / x;

    for (int attempt = 0; attempt < 4; ++attempt, P *= 2) {
        if (P > 20'000'000) break;
        const double Pd = static_cast<double>(P);
        const int count = LerchKernel::kTaylorTerms + s;
        const std::vector<cplx> ej = kb.asymptotic_coeffs(s, count, ax * Pd);
        KahanSum tail;
        double last = 0.0, mag = 0.0;
        bool converged = false;
        cplx php = 1.0;
        int quiet = 0;
        double prev = INFINITY, prev2 = INFINITY;
        bool diverged = false;
        for (int j = 0; j < count; ++j) {
            if (j > 0) php *= ph;
            if (ej[j] == cplx(0.0, 0.0)) continue;
            const int order = j + e;
            cplx term = ej[j] * php * ka.tail_scaled(order, P, j);
            const double at = std::abs(term);
            tail.add(term);
            mag += at;
            last = at;
            const bool small = at <= 1e-17 * std::abs(tail.value());
            if (!small) {
                // compare against the last two terms: near-half-integral phases
                // make every other coefficient almost vanish
                if (at > 4.0 * std::max(prev, prev2) && j > s + 4) {
                    diverged = true;
                    break;
                }
                prev2 = prev;
                prev = at;
            }
            quiet = small ? quiet + 1 : 0;
            if (quiet >= 3) {
                converged = true;
                break;
            }
        }
        if (diverged || !converged) continue;

        KahanSum head;
        for (std::int64_t p = P; p >= 1; --p) {
            const double pd = static_cast<double>(p);
            head.add(ka.phase().power(p) * std::pow(pd, -e) * kb.lerch(s, pd * x));
        }
        cplx v = head.value() + tail.value();
        return {v, last + 1e-15 * (mag + std::abs(v))};
    }
    throw NonConvergent("hzn: p-tail expansion did not converge");
}

double factorial(int n) { return std::tgamma(n + 1.0); }

}  // namespace

ComplexValue hzn_deriv(int k, int i, cplx x, const TwistPair& t) {
    if (k < 1) throw DomainError("hzn_deriv: k must be positive");
    if (i < 0) throw DomainError("hzn_deriv: negative derivative order");
    if (t.beta.is_integral) throw DomainError("hzn: beta must not be an integer");
    if (k == 1 && t.alpha.is_integral) throw DomainError("hzn: k = 1 needs non-integral alpha");
    check_cut(x, "hzn");
    const LerchKernel kb(t.beta.alpha), ka(t.alpha.alpha);
    ComplexValue v = p_sum(kb, ka, i + 1, k - 1 - i, x);
    const double f = (i % 2 == 0 ? 1.0 : -1.0) * factorial(i);
    return {v.value * f, v.err * std::abs(f)};
}

HznValue hzn_eval(int k, cplx x, const TwistPair& t, HznRoute route) {
    if (k < 1) throw DomainError("hzn_eval: k must be positive");
    if (t.beta.is_integral) throw DomainError("hzn_eval: beta must not be an integer");
    if (k == 1 && t.alpha.is_integral) throw DomainError("hzn_eval: k = 1 needs non-integral alpha");
    check_cut(x, "hzn_eval");
    if (route == HznRoute::Series) {
        ComplexValue v = hzn_deriv(k, 0, x, t);
        return {v, route, v.err};
    }
    if (!(x.real() > 0.0)) throw DomainError("hzn_eval: integral route needs Re(x) > 0");
    const cplx wa = t.alpha.z, wb = t.beta.z;
    auto f = [&](double s) -> cplx {
        const cplx u = std::exp(-x * s) * wa;
        return polylog_int(k - 1, u) / (1.0 - std::exp(-s) * wb);
    };
    ComplexValue v = quad_halfline(f, 1.0 / x.real(), gauss_legendre(20), 1e-13);
    return {v, route, v.err};
}

ComplexValue taylor_a(double beta, int n) {
    const UnitPhase ph(beta);
    if (ph.is_integral) throw DomainError("taylor_a: beta must not be an integer");
    if (n < 0 || n > 60) throw DomainError("taylor_a: n must lie in 0..60");
    // g(t) (1 - z e^{-t}) = 1 with g = Sum b_n t^n:
    // (1 - z) b_n = [n = 0] + z Sum_{m=1}^n (-1)^m b_{n-m} / m!
    const cplx z = ph.z;
    std::vector<cplx> b(n + 1);
    for (int j = 0; j <= n; ++j) {
        cplx s = (j == 0) ? 1.0 : 0.0;
        double inv_fact = 1.0;
        for (int m = 1; m <= j; ++m) {
            inv_fact /= m;
            s += z * ((m % 2 == 0) ? inv_fact : -inv_fact) * b[j - m];
        }
        b[j] = s / (1.0 - z);
    }
    cplx a = b[n] * factorial(n);
    return {a, 1e-14 * (1.0 + std::abs(a))};
}

ComplexValue hzn_asymptotic(int k, cplx x, const TwistPair& t, int N) {
    if (k < 1) throw DomainError("hzn_asymptotic: k must be positive");
    if (N < 0 || N > 12) throw DomainError("hzn_asymptotic: N must lie in 0..12");
    if (t.beta.is_integral) throw DomainError("hzn_asymptotic: beta must not be an integer");
    check_cut(x, "hzn_asymptotic");
    const cplx wa = t.alpha.z, wb = t.beta.z;
    cplx s = 0.0;
    if (std::abs(x) >= 1.0) {
        for (int n = 0; n <= N; ++n)
            s += taylor_a(t.beta.alpha, n).value * polylog_int(k + n, wa) / std::pow(x, n + 1);
        return {s, 0.0};
    }
    if (t.alpha.is_integral) throw DomainError("hzn_asymptotic: small-x expansion needs non-integral alpha");
    const cplx mx = -x;
    s = polylog_int(k, wa) / x - std::pow(mx, k - 1) * polylog_int(k, wb);
    for (int r = 1; r <= k - 1; ++r) s += std::pow(mx, r - 1) * polylog_int(k - r, wa) * polylog_int(r, wb);
    cplx refl = 0.0;
    for (int n = 0; n <= N; ++n)
        refl += taylor_a(t.alpha.alpha, n).value * polylog_int(k + n, wb) * std::pow(x, k + n - 1);
    s += ((k - 1) % 2 == 0 ? 1.0 : -1.0) * refl;
    return {s, 0.0};
}

namespace {

// Sum_{n >= 1} (psi(n x) - log(n x)) n^{-e} by direct summation plus the
// Stirling-series tail expressed through Hurwitz zeta values.
cplx psi_minus_log_sum(int e, cplx x) {
    const double ax = std::abs(x);
    const double c = std::cos(0.5 * std::arg(x));
    const std::int64_t N = std::max<std::int64_t>(16, static_cast<std::int64_t>(std::ceil(24.0 / (ax * c * c))));
    if (N > 20'000'000) throw NonConvergent("herglotz: argument too close to the cut");
    KahanSum head;
    for (std::int64_t n = N; n >= 1; --n) {
        const double nd = static_cast<double>(n);
        const cplx y = nd * x;
        head.add((digamma(y).value - std::log(y)) * std::pow(nd, -e));
    }
    // psi(y) - log y ~ -1/(2y) - Sum_j B_{2j} / (2j y^{2j})
    const double Nd = static_cast<double>(N);
    KahanSum tail;
    tail.add(-0.5 / x * hurwitz_zeta(e + 1, Nd + 1.0));
    for (int j = 1; j <= 12; ++j) {
        tail.add(-bernoulli(2 * j) / (2.0 * j) * std::pow(x, -2 * j) * hurwitz_zeta(e + 2 * j, Nd + 1.0));
    }
    return head.value() + tail.value();
}

}  // namespace

ComplexValue herglotz_F(cplx x) {
    check_cut(x, "herglotz_F");
    cplx v = psi_minus_log_sum(1, x);
    return {v, 1e-14 * (1.0 + std::abs(v))};
}

ComplexValue higher_herglotz_plain(int k, cplx x) {
    if (k < 3) throw DomainError("higher_herglotz_plain: k must be at least 3");
    check_cut(x, "higher_herglotz_plain");
    // Sum psi(n x)/n^{k-1} = Sum (psi(n x) - log(n x))/n^{k-1} + zeta(k-1) log x - zeta'(k-1)
    cplx v = psi_minus_log_sum(k - 1, x) + zeta_int(k - 1) * std::log(x) - zeta_deriv_int(k - 1);
    return {v, 1e-14 * (1.0 + std::abs(v))};
}

DerivFamily hzn_family(int k, const TwistPair& t) {
    return [k, t](int i, cplx x) { return hzn_deriv(k, i, x, t).value; };
}

ComplexValue dop(int n, const DerivFamily& f, cplx x, cplx y, DopMethod method) {
    if (n < 0) throw DomainError("dop: n must be non-negative");
    if (std::abs(x - y) < 1e-10) throw DegenerateArguments("dop: x and y coincide");
    if (method == DopMethod::Finite) {
        KahanSum s;
        for (int i = 0; i <= n; ++i) {
            const double binom = std::round(factorial(2 * n - i) / (factorial(n) * factorial(n - i)));
            const cplx num = f(i, x) - (i % 2 == 0 ? 1.0 : -1.0) * f(i, y);
            s.add(binom * num / (factorial(i) * std::pow(y - x, n - i)));
        }
        cplx v = s.value();
        return {v, 1e-13 * (1.0 + std::abs(v))};
    }
    // t = y + s (x - y):  (x - y)^{n+1} / (n!)^2  int_0^1 (s(1-s))^n f^{(2n+1)}(t) ds
    const cplx d = x - y;
    auto g = [&](double s) -> cplx { return std::pow(s * (1.0 - s), n) * f(2 * n + 1, y + s * d); };
    ComplexValue I = quad_panel(g, 0.0, 1.0, gauss_legendre(20), 1e-14);
    const cplx scale = std::pow(d, n + 1) / (factorial(n) * factorial(n));
    return {I.value * scale, I.err * std::abs(scale)};
}

ComplexValue cocycle_psi(int weight, const TwistPair& t, double x) {
    if (weight < 4 || weight % 2 != 0) throw DomainError("cocycle_psi: weight must be even and at least 4");
    if (x == 0.0 || !std::isfinite(x)) throw DomainError("cocycle_psi: x must be a non-zero real");
    const double ax = std::abs(x);
    const LerchKernel kb(t.beta.alpha), ka(t.alpha.alpha);
    // Sum_{p >= 1, q >= 0} minus half the q = 0 column plus half the p = 0 row.
    ComplexValue s = p_sum(kb, ka, weight, 0, ax);
    cplx v = s.value - 0.5 * polylog_int(weight, t.alpha.z) * std::pow(ax, -weight) +
             0.5 * polylog_int(weight, t.beta.z);
    if (x < 0.0) v = -v;
    return {v, s.err + 1e-15 * std::abs(v)};
}

ComplexValue cocycle_slash(int weight, const TwistPair& t, double x, const SlashMatrix& m) {
    const double den = m.c * x + m.d;
    const double num = m.a * x + m.b;
    if (std::abs(den) < 1e-10 || std::abs(num) < 1e-10) throw PoleEncountered("cocycle_slash: singular point");
    const double a = t.alpha.alpha, b = t.beta.alpha;
    const TwistPair tt(m.a * a + m.b * b, m.c * a + m.d * b);
    ComplexValue v = cocycle_psi(weight, tt, num / den);
    const double f = std::pow(den, -weight);
    return {v.value * f, v.err * std::abs(f)};
}

std::pair<ComplexValue, ComplexValue> period_residuals(int weight, const TwistPair& t, double x) {
    const SlashMatrix I{1, 0, 0, 1}, mI{-1, 0, 0, -1}, S{0, -1, 1, 0}, mS{0, 1, -1, 0};
    const SlashMatrix U{1, -1, 1, 0}, mU{-1, 1, -1, 0}, U2{0, -1, 1, -1}, mU2{0, 1, -1, 1};
    auto acc = [&](std::initializer_list<SlashMatrix> ms) {
        KahanSum s;
        double err = 0.0;
        for (const auto& m : ms) {
            ComplexValue v = cocycle_slash(weight, t, x, m);
            s.add(v.value);
            err += v.err;
        }
        return ComplexValue{s.value(), err};
    };
    return {acc({I, mI, S, mS}), acc({I, mI, U, mU, U2, mU2})};
}

}  // namespace hzn
