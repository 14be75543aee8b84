#include <array>
#include <cmath>

#include "hzn/errors.hpp"
#include "hzn/special.hpp"

namespace hzn {

namespace {

// B_{2j} / (2j)! for j = 1..10, exact rationals.
constexpr std::array<double, 11> kSmallBernFact = {
    0.0,
    1.0 / 6.0 / 2.0,
    -1.0 / 30.0 / 24.0,
    1.0 / 42.0 / 720.0,
    -1.0 / 30.0 / 40320.0,
    5.0 / 66.0 / 3628800.0,
    -691.0 / 2730.0 / 479001600.0,
    7.0 / 6.0 / 87178291200.0,
    -3617.0 / 510.0 / 20922789888000.0,
    43867.0 / 798.0 / 6402373705728000.0,
    -174611.0 / 330.0 / 2432902008176640000.0,
};

// zeta(n) for n >= 2 by Euler-Maclaurin with the small Bernoulli table.
double zeta_pos(int n) {
    if (n >= 64) return 1.0 + std::ldexp(1.0, -n);
    constexpr int N = 12;
    double s = 0.0;
    for (int k = N - 1; k >= 1; --k) s += std::pow(static_cast<double>(k), -n);
    s += std::pow(static_cast<double>(N), 1 - n) / (n - 1) + 0.5 * std::pow(static_cast<double>(N), -n);
    // Rising factorial (n)_{2j-1} times N^{-n-2j+1}.
    double rise = n, pw = std::pow(static_cast<double>(N), -n - 1);
    for (int j = 1; j <= 10; ++j) {
        s += kSmallBernFact[j] * rise * pw;
        rise *= static_cast<double>(n + 2 * j - 1) * (n + 2 * j);
        pw /= static_cast<double>(N) * N;
    }
    return s;
}

}  // namespace

double zeta_int(int n) {
    if (n == 1) throw DomainError("zeta_int: pole at 1");
    if (n >= 2) return zeta_pos(n);
    if (n == 0) return -0.5;
    const int m = 1 - n;  // zeta(n) = -B_m / m
    if (m % 2 == 1) return 0.0;
    return -bernoulli(m) / m;
}

double bernoulli_over_factorial(int n) {
    if (n == 0) return 1.0;
    if (n == 1) return -0.5;
    if (n % 2 == 1) return 0.0;
    const int j = n / 2;
    if (j <= 10) return kSmallBernFact[j];
    double v = 2.0 * zeta_pos(n) * std::pow(kTwoPi, -n);
    return (j % 2 == 1) ? v : -v;
}

double bernoulli(int n) {
    if (n == 0) return 1.0;
    if (n == 1) return -0.5;
    if (n % 2 == 1) return 0.0;
    return bernoulli_over_factorial(n) * std::tgamma(n + 1.0);
}

double harmonic(int n) {
    double s = 0.0;
    for (int k = n; k >= 1; --k) s += 1.0 / k;
    return s;
}

ComplexValue digamma(cplx x) {
    if (x.imag() == 0.0 && x.real() <= 0.0) throw DomainError("digamma: argument on the non-positive real axis");
    cplx shift = 0.0;
    while (x.real() < 12.0) {
        shift -= 1.0 / x;
        x += 1.0;
    }
    const cplx inv2 = 1.0 / (x * x);
    cplx s = 0.0, pw = inv2;
    for (int j = 1; j <= 8; ++j) {
        s += bernoulli(2 * j) / (2.0 * j) * pw;
        pw *= inv2;
    }
    cplx v = std::log(x) - 0.5 / x - s + shift;
    return {v, 1e-15 * (1.0 + std::abs(v))};
}

namespace {

// K_i(w) / i! via e^{-w} E_1(-w) and the upward recurrence; small |w|.
cplx k_scaled_series(int i, cplx w) {
    const cplx z = -w;
    cplx s = 0.0, term = 1.0;
    for (int n = 1; n < 400; ++n) {
        term *= -z / static_cast<double>(n);
        cplx t = term / static_cast<double>(n);
        s += t;
        if (std::abs(t) < 1e-18 * std::abs(s) && n > 4) break;
    }
    const cplx e1 = -kEulerGamma - std::log(z) - s;
    cplx k = std::exp(-w) * e1;  // K_0(w) = e^{-w} E_1(-w)
    // K_j / j! = (w K_{j-1} + (j-1)!) / j!  =  (w (K_{j-1}/(j-1)!) + 1) / j
    for (int j = 1; j <= i; ++j) k = (w * k + 1.0) / static_cast<double>(j);
    return k;
}

// K_i(w) / i! = z^{i} e^{z} Gamma(-i, z) with z = -w, by the Legendre
// continued fraction and modified Lentz.
cplx k_scaled_cf(int i, cplx w) {
    const cplx z = -w;
    const double a = -i;
    const double tiny = 1e-300;
    cplx f = tiny, C = f, D = 0.0;
    for (int n = 1; n < 200000; ++n) {
        cplx bn = z + (2.0 * n - 1.0 - a);
        double an = (n == 1) ? 1.0 : -(n - 1.0) * (n - 1.0 - a);
        D = bn + an * D;
        if (std::abs(D) < tiny) D = tiny;
        C = bn + an / C;
        if (std::abs(C) < tiny) C = tiny;
        D = 1.0 / D;
        cplx delta = C * D;
        f *= delta;
        if (std::abs(delta - 1.0) < 2e-16) return f;
    }
    throw NonConvergent("exp_integral_k: continued fraction did not converge");
}

// K_i(w) / i! by quadrature along a ray rotated away from the pole; used
// close to the positive real axis where the continued fraction stalls.
cplx k_scaled_ray(int i, cplx w) {
    const double phi = w.imag() >= 0.0 ? -0.4 : 0.4;
    const cplx rot = std::polar(1.0, phi);
    // t^i e^{-t} / i! written around its peak so the exponent stays small
    const double c0 = i > 0 ? i * std::log(static_cast<double>(i)) - i - std::lgamma(i + 1.0) : 0.0;
    const double ic = std::max(i, 1);
    auto f = [&](double t) -> cplx {
        if (t == 0.0) return i == 0 ? rot / (-w) : cplx(0.0);
        const cplx s = t * rot;
        const double u = t / ic - 1.0;
        const double ex = (i > 0 ? i * (std::log1p(u) - u) + c0 : -t) + t * (1.0 - std::cos(phi));
        return rot * std::exp(cplx(ex, i * phi - t * std::sin(phi))) / (s - w);
    };
    const double T = (i + 50.0 + 2.0 * std::sqrt(50.0 * i)) / std::cos(phi);
    const QuadratureRule rule = gauss_legendre(20);
    auto mag = [&](double t) -> cplx { return std::abs(f(t)); };
    const double l1 = quad_panel(mag, 0.0, T, rule, 1e-8).value.real();
    return quad_panel(f, 0.0, T, rule, 2e-15 * std::max(l1, 1e-300)).value;
}

}  // namespace

cplx exp_integral_k_scaled(int i, cplx w) {
    if (w == cplx(0.0, 0.0)) {
        if (i == 0) throw DomainError("exp_integral_k: K_0(0) diverges");
        return 1.0 / static_cast<double>(i);
    }
    if (w.imag() == 0.0 && w.real() > 0.0) throw DomainError("exp_integral_k: argument on [0, inf)");
    const double aw = std::abs(w);
    if (aw <= std::max(2.0, i / 4.0)) return k_scaled_series(i, w);
    if (std::abs(std::arg(w)) >= 0.5 || aw >= 60.0 + 3.0 * i) return k_scaled_cf(i, w);
    return k_scaled_ray(i, w);
}

cplx exp_integral_k(int i, cplx w) { return exp_integral_k_scaled(i, w) * std::tgamma(i + 1.0); }

}  // namespace hzn
