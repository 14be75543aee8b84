#include <cmath>

#include "hzn/errors.hpp"
#include "hzn/special.hpp"

namespace hzn {

namespace {

constexpr double kStieltjes1 = -0.0728158454836767248605863758749547830;

bool on_unit_circle(cplx z) { return std::abs(std::abs(z) - 1.0) <= 1e-14; }

const LerchKernel& hurwitz_kernel() {
    static const LerchKernel k(0.0);
    return k;
}

// Li_s(e^mu) = Sum_{m != s-1} zeta(s-m) mu^m/m! + singular term, |mu| < 2 pi.
cplx polylog_mu(int s, cplx mu) {
    cplx sum = 0.0, pw = 1.0;
    double fact = 1.0;
    int quiet = 0;
    for (int m = 0; m < 170; ++m) {
        if (m != s - 1) {
            double zv = zeta_int(s - m);
            cplx t = zv * pw / fact;
            sum += t;
            if (m > std::max(s, 2)) {
                quiet = std::abs(t) < 1e-18 * std::abs(sum) ? quiet + 1 : 0;
                if (quiet >= 3) break;
            }
        }
        pw *= mu;
        fact *= (m + 1);
    }
    if (s >= 1) {
        cplx lead = std::pow(mu, s - 1) / std::tgamma(static_cast<double>(s));
        sum += lead * (harmonic(s - 1) - std::log(-mu));
    } else {
        sum += std::tgamma(1.0 - s) * std::pow(-mu, s - 1);
    }
    return sum;
}

cplx polylog_power(int s, cplx z) {
    cplx sum = 0.0, pw = 1.0;
    for (int n = 1; n < 100000; ++n) {
        pw *= z;
        cplx t = pw * std::pow(static_cast<double>(n), -s);
        sum += t;
        if (n > std::abs(s) + 4 && std::abs(t) < 1e-18 * std::abs(sum)) break;
        if (std::abs(t) == 0.0) break;
    }
    return sum;
}

}  // namespace

cplx hurwitz_zeta(int s, cplx y) {
    if (s < 2) throw DomainError("hurwitz_zeta: order must be at least 2");
    return hurwitz_kernel().lerch(s, y);
}

double zeta_deriv_int(int n) {
    if (n == 1) throw DomainError("zeta_deriv_int: pole at 1");
    if (n >= 2) {
        constexpr int N = 12;
        double head = 0.0;
        for (int k = N - 1; k >= 2; --k) head += std::log(static_cast<double>(k)) * std::pow(static_cast<double>(k), -n);
        const double L = std::log(static_cast<double>(N));
        double tail = std::pow(static_cast<double>(N), 1 - n) * (L / (n - 1) + 1.0 / ((n - 1.0) * (n - 1.0)));
        tail += 0.5 * L * std::pow(static_cast<double>(N), -n);
        // f^{(m)}(t) = t^{-n-m} (A_m log t + C_m)
        double A = 1.0, C = 0.0;
        for (int m = 0; m < 21; ++m) {
            if (m % 2 == 1) {
                const int j = (m + 1) / 2;
                tail -= bernoulli_over_factorial(2 * j) * std::pow(static_cast<double>(N), -n - m) * (A * L + C);
            }
            const double An = -(n + m) * A, Cn = -(n + m) * C + A;
            A = An;
            C = Cn;
        }
        return -(head + tail);
    }
    if (n == 0) return -0.5 * std::log(kTwoPi);
    const int m = -n;
    if (m % 2 == 0) {
        const int k = m / 2;
        double v = std::tgamma(m + 1.0) * zeta_int(m + 1) / (2.0 * std::pow(kTwoPi, m));
        return (k % 2 == 0) ? v : -v;
    }
    const int k = (m + 1) / 2;  // n = 1 - 2k
    const double psi2k = harmonic(2 * k - 1) - kEulerGamma;
    return zeta_int(n) * (std::log(kTwoPi) - psi2k - zeta_deriv_int(2 * k) / zeta_int(2 * k));
}

cplx polylog_int(int s, cplx z) {
    if (z == cplx(0.0, 0.0)) return 0.0;
    const double r = std::abs(z);
    if (r > 1.0 + 1e-14) throw DomainError("polylog: |z| > 1");
    if (on_unit_circle(z)) {
        const UnitPhase ph = UnitPhase::from_point(z);
        if (ph.is_integral) {
            if (s <= 1) throw DomainError("polylog: divergent at z = 1");
            return zeta_int(s);
        }
        const cplx w = ph.z;
        if (s == 0) return w / (1.0 - w);
        if (s == 1) return -std::log(1.0 - w);
        if (s < 0) return polylog_mu(s, cplx(0.0, kTwoPi * ph.centered));
        if (s >= 16) {
            KahanSum acc;
            for (int n = 1; n < 64; ++n) {
                cplx t = ph.power(n) * std::pow(static_cast<double>(n), -s);
                acc.add(t);
                if (std::abs(t) < 1e-19) break;
            }
            return acc.value();
        }
        return w * LerchKernel(ph.alpha).lerch(s, 1.0);
    }
    if (s == 0) return z / (1.0 - z);
    if (s == 1) return -std::log(1.0 - z);
    if (r <= 0.5) return polylog_power(s, z);
    return polylog_mu(s, std::log(z));
}

ComplexValue polylog(int k, cplx z) {
    if (k < 0) throw DomainError("polylog: order must be non-negative");
    cplx v = polylog_int(k, z);
    return {v, 2e-15 * (1.0 + std::abs(v))};
}

ComplexValue polylog_order_deriv_s1(const UnitPhase& alpha) {
    if (alpha.is_integral) throw DomainError("polylog_order_deriv_s1: integral phase");
    if (std::abs(alpha.centered) >= 0.05) {
        auto coeff = [](std::int64_t q) -> cplx {
            return q >= 2 ? std::log(static_cast<double>(q)) / static_cast<double>(q) : 0.0;
        };
        ComplexValue v = sum_phased(coeff, alpha.alpha);
        return {-v.value, v.err};
    }
    // Expansion in mu = 2 pi i alpha around the pole of zeta at 1.
    const cplx mu(0.0, kTwoPi * alpha.centered);
    const cplx L = std::log(-mu);
    cplx sum = -0.5 * L * L - kEulerGamma * L - 0.5 * kEulerGamma * kEulerGamma - kPi * kPi / 12.0 - kStieltjes1;
    cplx pw = 1.0;
    double fact = 1.0;
    for (int m = 1; m < 120; ++m) {
        pw *= mu;
        fact *= m;
        cplx t = zeta_deriv_int(1 - m) * pw / fact;
        sum += t;
        if (m > 4 && std::abs(t) < 1e-19 * std::abs(sum)) break;
    }
    return {sum, 1e-15 * (1.0 + std::abs(sum))};
}

ComplexValue double_polylog(int a, int b, cplx z1, cplx z2) {
    if (a < 1 || b < 1) throw DomainError("double_polylog: orders must be positive");
    if (std::abs(z1) > 1.0 + 1e-14 || std::abs(z2) > 1.0 + 1e-14) throw DomainError("double_polylog: |z| > 1");
    if (z1 == cplx(0.0, 0.0) || z2 == cplx(0.0, 0.0)) return {0.0, 0.0};
    const bool on1 = on_unit_circle(z1), on2 = on_unit_circle(z2);
    if (b == 1 && on2 && UnitPhase::from_point(z2).is_integral)
        throw DomainError("double_polylog: divergent inner sum (b = 1, z2 = 1)");

    if (!(on1 && on2)) {
        // Inner tails by recurrence from Li_b(z2); geometric decay in p.
        cplx T = polylog_int(b, z2);
        const UnitPhase p1 = on1 ? UnitPhase::from_point(z1) : UnitPhase();
        const UnitPhase p2 = on2 ? UnitPhase::from_point(z2) : UnitPhase();
        cplx w1 = 1.0, w2 = 1.0;
        KahanSum acc;
        int quiet = 0;
        for (std::int64_t p = 1; p < 5'000'000; ++p) {
            w1 = on1 ? p1.power(p) : w1 * z1;
            w2 = on2 ? p2.power(p) : w2 * z2;
            const double pd = static_cast<double>(p);
            T -= w2 * std::pow(pd, -b);
            cplx t = w1 * std::pow(pd, -a) * T;
            acc.add(t);
            const double bound = std::abs(w1) * std::abs(w2) * std::pow(pd, -a - b);
            quiet = (std::abs(t) < 1e-18 && bound < 1e-18) ? quiet + 1 : 0;
            if (quiet >= 8) return {acc.value(), 1e-15 * (1.0 + std::abs(acc.value()))};
        }
        throw NonConvergent("double_polylog: outer sum did not converge");
    }

    const UnitPhase p1 = UnitPhase::from_point(z1), p2 = UnitPhase::from_point(z2);
    const UnitPhase pg(p1.alpha + p2.alpha);
    if (pg.is_integral && p2.is_integral && a + b <= 2) throw DomainError("double_polylog: divergent parameters");
    const LerchKernel k2(p2.alpha), kg(pg.alpha);
    constexpr int D = 50;
    const std::int64_t N = std::max<std::int64_t>(64, static_cast<std::int64_t>(std::ceil(2.5 * D / k2.radius())));
    if (N > 5'000'000) throw NonConvergent("double_polylog: phase too close to an integer");

    // Head p = 1..N with the inner tail T(p) = Sum_{q > p} z2^q q^{-b}.
    KahanSum acc;
    cplx T = k2.tail(b, N);
    for (std::int64_t p = N; p >= 1; --p) {
        const double pd = static_cast<double>(p);
        acc.add(p1.power(p) * std::pow(pd, -a) * T);
        T += p2.power(p) * std::pow(pd, -b);
    }

    // Tail p > N from Phi(z2, b, p+1) ~ Sum_j e_j (p+1)^{-j}.
    const double Nd = static_cast<double>(N);
    const std::vector<cplx> e = k2.asymptotic_coeffs(b, D + 1, Nd);
    std::vector<cplx> S(D + 1, 0.0);
    std::vector<bool> have(D + 1, false);
    KahanSum tail;
    for (int j = 1; j <= D; ++j) {
        if (e[j] == cplx(0.0, 0.0)) continue;
        double binom = 1.0;  // C(j + l - 1, l)
        double npow = 1.0;
        for (int l = 0; j + l <= D; ++l) {
            const int d = j + l;
            if (!have[d]) {
                S[d] = kg.tail_scaled(a + d, N, d);
                have[d] = true;
            }
            const double sgn = (l % 2 == 0) ? 1.0 : -1.0;
            tail.add(e[j] * (sgn * binom * npow) * S[d]);
            binom *= static_cast<double>(j + l) / static_cast<double>(l + 1);
            npow /= Nd;
        }
    }
    cplx v = acc.value() + p2.z * tail.value();
    return {v, 1e-14 * (1.0 + std::abs(v))};
}

ComplexValue lerch_psi(double beta, cplx x, PsiRoute route) {
    const UnitPhase ph(beta);
    if (ph.is_integral) throw DomainError("lerch_psi: integral beta");
    if (x.imag() == 0.0 && x.real() <= 0.0) throw DomainError("lerch_psi: x on the cut");
    if (route == PsiRoute::Series) {
        cplx v = LerchKernel(ph.alpha).psi_deriv(0, x);
        return {v, 1e-15 * (1.0 + std::abs(v))};
    }
    if (x.imag() != 0.0) throw DomainError("lerch_psi: binet route needs real x > 0");
    const double b = ph.alpha, xr = x.real();
    const double dig = digamma(b).value.real() - digamma(1.0 - b).value.real();
    const cplx I(0.0, 1.0);
    auto f = [&](double y) -> cplx {
        const double den = -std::expm1(-kTwoPi * y);
        const cplx t = I * y;
        const cplx a1 = (1.0 / (t + xr) - 1.0 / xr) * std::exp(-kTwoPi * b * y);
        const cplx a2 = (1.0 / (t - xr) + 1.0 / xr) * std::exp(-kTwoPi * (1.0 - b) * y);
        return I * (a1 + a2) / den;
    };
    const QuadratureRule rule = gauss_legendre(20);
    const double scale = 1.0 / (kTwoPi * std::min(b, 1.0 - b));
    ComplexValue I1 = quad_halfline(f, scale, rule, 1e-14);
    cplx v = 0.5 / xr - I * dig / (kTwoPi * xr) + I1.value;
    return {v, I1.err + 1e-15 * (1.0 + std::abs(v))};
}

}  // namespace hzn
