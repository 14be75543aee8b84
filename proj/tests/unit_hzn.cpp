#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "hzn/errors.hpp"
#include "hzn/hzn.hpp"

using namespace hzn;

namespace {

const double kLog2 = std::log(2.0);
const double kZeta3 = 1.2020569031595942854;

cplx f_eval(int k, cplx x, double a, double b) { return hzn_eval(k, x, TwistPair(a, b)).value.value; }

// Li_{-n}(z) for n = 0..3 in closed form.
cplx li_neg(int n, cplx z) {
    const cplx w = 1.0 - z;
    switch (n) {
        case 0: return z / w;
        case 1: return z / (w * w);
        case 2: return z * (1.0 + z) / (w * w * w);
        default: return z * (1.0 + 4.0 * z + z * z) / (w * w * w * w);
    }
}

}  // namespace

TEST_CASE("F_2 with half twists") {
    // F_2(x; 1/2, 1/2) = J(x) - pi^2 / (12 x), J(x) = int_0^1 log(1 + t^x) / (1 + t) dt; J(1) = (log 2)^2 / 2.
    CHECK(std::abs(f_eval(2, 1.0, 0.5, 0.5) - (kLog2 * kLog2 / 2 - kPi * kPi / 12)) <= 1e-12);
    for (double x : {2.0, 3.0, 5.0}) {
        const auto j = [x](double t) { return cplx(std::log1p(std::pow(t, x)) / (1.0 + t)); };
        const cplx J = quad_panel(j, 0.0, 1.0, gauss_legendre(20), 1e-15).value;
        CHECK(std::abs(f_eval(2, x, 0.5, 0.5) - (J - kPi * kPi / (12 * x))) <= 1e-12);
    }
}

TEST_CASE("series and integral routes agree") {
    const TwistPair t(0.3, 0.7);
    const cplx x(2.0, 0.5);
    const cplx s = hzn_eval(3, x, t, HznRoute::Series).value.value;
    const cplx i = hzn_eval(3, x, t, HznRoute::Integral).value.value;
    CHECK(std::abs(s - i) <= 1e-10);
}

TEST_CASE("F_2 and the Novikov integral") {
    const double x = 1.5, a = 0.2, b = 0.6;
    const auto g = [&](double t) {
        return std::log(1.0 - std::pow(t, x) * std::polar(1.0, kTwoPi * a)) / (std::polar(1.0, -kTwoPi * b) - t);
    };
    const cplx rho = quad_panel(g, 0.0, 1.0, gauss_legendre(20), 1e-14).value;
    const cplx li2 = polylog(2, std::polar(1.0, kTwoPi * a)).value;
    CHECK(std::abs(f_eval(2, x, a, b) - (-rho + li2 / x)) <= 1e-12);
}

TEST_CASE("hzn_eval domain errors") {
    CHECK_THROWS_AS(hzn_eval(2, 1.0, TwistPair(0.3, 1.0)), DomainError);
    CHECK_THROWS_AS(hzn_eval(1, 1.0, TwistPair(0.0, 0.3)), DomainError);
    CHECK_THROWS_AS(hzn_eval(2, -1.0, TwistPair(0.3, 0.4)), DomainError);
    CHECK_THROWS_AS(hzn_eval(2, cplx(-1.0, 1.0), TwistPair(0.3, 0.4), HznRoute::Integral), DomainError);
}

TEST_CASE("hzn_deriv") {
    const TwistPair t(0.25, 0.4);
    CHECK(std::abs(hzn_deriv(4, 0, 1.7, t).value - f_eval(4, 1.7, 0.25, 0.4)) <= 1e-12);
    const double h = 1e-5;
    const cplx fd = (f_eval(4, 1.7 + h, 0.25, 0.4) - f_eval(4, 1.7 - h, 0.25, 0.4)) / (2 * h);
    CHECK(std::abs(hzn_deriv(4, 1, 1.7, t).value - fd) <= 1e-7);
    for (int i = 0; i <= 3; ++i)
        CHECK(std::abs(hzn_deriv(3, i, 2.2, TwistPair(-0.25, -0.4)).value - std::conj(hzn_deriv(3, i, 2.2, t).value)) <=
              1e-12);
}

TEST_CASE("taylor_a") {
    const cplx z = std::polar(1.0, kTwoPi * 0.3);
    CHECK(std::abs(taylor_a(0.3, 0).value - 1.0 / (1.0 - z)) <= 1e-14);
    CHECK(std::abs(taylor_a(0.5, 1).value - 0.25) <= 1e-14);
    // For n >= 1, (-u d/du)^n applied to 1/(1-u) gives (-1)^n Li_{-n}(u).
    for (int n = 1; n <= 3; ++n)
        CHECK(std::abs(taylor_a(0.3, n).value - std::pow(-1.0, n) * li_neg(n, z)) <= 1e-13);
    CHECK_THROWS_AS(taylor_a(2.0, 1), DomainError);
}

TEST_CASE("hzn_asymptotic") {
    const TwistPair t(0.2, 0.6);
    CHECK(std::abs(hzn_asymptotic(3, 50.0, t, 6).value - f_eval(3, 50.0, 0.2, 0.6)) <= 1e-10);
    const double X = 1e4;
    const cplx lead = taylor_a(0.6, 0).value * polylog(3, t.alpha.z).value / X;
    const cplx f = f_eval(3, X, 0.2, 0.6);
    CHECK(std::abs(lead - f) <= 1e-3 * std::abs(f));
    // Truncation error x^{-(N+2)}: doubling x shrinks it by 2^8.
    const double r = std::abs(hzn_asymptotic(3, 100.0, t, 6).value - f_eval(3, 100.0, 0.2, 0.6)) /
                     std::abs(hzn_asymptotic(3, 50.0, t, 6).value - f_eval(3, 50.0, 0.2, 0.6));
    CHECK(r * 256.0 > 0.5);
    CHECK(r * 256.0 < 2.0);
}

TEST_CASE("Herglotz F") {
    // psi(n) = H_{n-1} - gamma; tail of (psi(n) - log n)/n ~ -1/(2n^2) - 1/(12 n^3).
    const int N = 1'000'000;
    long double h = 0, s = 0;
    for (int n = 1; n <= N; ++n) {
        s += (h - kEulerGamma - std::log(static_cast<long double>(n))) / n;
        h += 1.0L / n;
    }
    const double tail = -0.5 / N + 0.25 / (static_cast<double>(N) * N);
    CHECK(std::abs(herglotz_F(1.0).value - static_cast<double>(s + tail)) <= 1e-11);

    // F(10) - F(5) = Sum (psi(10n) - psi(5n) - log 2) / n, terms ~ 1/(20 n^2).
    const int M = 100'000;
    std::vector<long double> H(10 * M + 1, 0.0L);
    for (int n = 1; n <= 10 * M; ++n) H[n] = H[n - 1] + 1.0L / n;
    long double d = 0;
    for (int n = 1; n <= M; ++n) d += (H[10 * n - 1] - H[5 * n - 1] - std::log(2.0L)) / n;
    const double dtail = 1.0 / (20.0 * M) - 1.0 / (40.0 * M * static_cast<double>(M));
    CHECK(std::abs(herglotz_F(10.0).value - herglotz_F(5.0).value - static_cast<double>(d + dtail)) <= 1e-11);
}

TEST_CASE("plain higher Herglotz functions") {
    // Sum H_{n-1} / n^2 = zeta(3).
    CHECK(std::abs(higher_herglotz_plain(3, 1.0).value - (kZeta3 - kEulerGamma * kPi * kPi / 6)) <= 1e-12);
    const int N = 100'000;
    long double h = 0, s = 0;
    for (int n = 1; n <= N; ++n) {
        // psi(2n) = H_{2n-1} - gamma
        const long double h2 = h + 1.0L / (2 * n - 1);
        s += (h2 - kEulerGamma) / (static_cast<long double>(n) * n * n);
        h = h2 + 1.0L / (2 * n);
    }
    const double lN = std::log(2.0 * N);
    const double tail = (2 * lN + 1) / (4.0 * N * N) - lN / (2.0 * N * N * N);
    CHECK(std::abs(higher_herglotz_plain(4, 2.0).value - static_cast<double>(s + tail)) <= 1e-12);
    CHECK_THROWS_AS(higher_herglotz_plain(2, 1.0), DomainError);
}

TEST_CASE("dop on polynomials and at n = 0") {
    const auto cube = [](int i, cplx t) -> cplx {
        switch (i) {
            case 0: return t * t * t;
            case 1: return 3.0 * t * t;
            case 2: return 6.0 * t;
            case 3: return 6.0;
            default: return 0.0;
        }
    };
    const auto square = [](int i, cplx t) -> cplx { return i == 0 ? t * t : i == 1 ? 2.0 * t : i == 2 ? 2.0 : 0.0; };
    CHECK(std::abs(dop(1, cube, 3.0, 1.0).value - 4.0) <= 1e-13);
    CHECK(std::abs(dop(1, square, 3.0, 1.0).value) <= 1e-13);
    CHECK(std::abs(dop(1, cube, 3.0, 1.0, DopMethod::Integral).value - 4.0) <= 1e-12);
    const DerivFamily f = hzn_family(4, TwistPair(0.2, 0.7));
    CHECK(std::abs(dop(0, f, 3.0, 1.0).value - (f(0, 3.0) - f(0, 1.0))) <= 1e-14);
    CHECK_THROWS_AS(dop(1, cube, 1.0, 1.0 + 1e-12), DegenerateArguments);
}

TEST_CASE("cocycle_psi") {
    const TwistPair t(0.25, 0.5);
    CHECK(std::abs(cocycle_psi(4, t, -1.3).value + cocycle_psi(4, t, 1.3).value) == 0.0);
    // psi = -F^{(2k-1)} / (2k-1)! - Li_{2k}(e(alpha)) / (2 x^{2k}) + Li_{2k}(e(beta)) / 2.
    const double x = 1.3;
    const cplx link = -hzn_deriv(4, 3, x, t).value / 6.0 - polylog(4, t.alpha.z).value / (2 * std::pow(x, 4)) +
                      polylog(4, t.beta.z).value / 2.0;
    CHECK(std::abs(link - cocycle_psi(4, t, x).value) <= 1e-8);

    // Brute force with the boundary rows at weight 1/2 plus an integral tail bound.
    const int N = 4000;
    double s = 0.0;
    for (int p = 0; p <= N; ++p)
        for (int q = 0; q <= N; ++q) {
            if (p == 0 && q == 0) continue;
            const double w = (p == 0 || q == 0) ? 0.5 : 1.0;
            s += w * (((p + q) & 1) ? -1.0 : 1.0) / std::pow(2.0 * p + q, 4);
        }
    CHECK(std::abs(cocycle_psi(4, TwistPair(0.5, 0.5), 2.0).value - s) <= 1e-11);
}

TEST_CASE("period relations") {
    auto [r1, r2] = period_residuals(4, TwistPair(0.5, 0.5), 1.7);
    CHECK(std::abs(r1.value) <= 1e-8);
    CHECK(std::abs(r2.value) <= 1e-8);
    std::tie(r1, r2) = period_residuals(6, TwistPair(0.5, 0.0), 2.3);
    CHECK(std::abs(r1.value) <= 1e-8);
    CHECK(std::abs(r2.value) <= 1e-8);
    // Outside the half-integer lattice the slash action moves the twist and the relations no longer close.
    std::tie(r1, r2) = period_residuals(6, TwistPair(0.25, 0.75), 2.3);
    CHECK(std::max(std::abs(r1.value), std::abs(r2.value)) > 1e-6);
    CHECK_THROWS_AS(period_residuals(4, TwistPair(0.5, 0.5), 1.0), PoleEncountered);

    // Slashing by S twice is slashing by -I.
    const TwistPair t(0.5, 0.5);
    const double x = 1.9;
    const SlashMatrix S{0, -1, 1, 0}, mI{-1, 0, 0, -1};
    const TwistPair ts(-t.beta.alpha, t.alpha.alpha);
    const cplx twice = std::pow(x, -4) * cocycle_slash(4, ts, -1.0 / x, S).value;
    CHECK(std::abs(twice - cocycle_slash(4, t, x, mI).value) <= 1e-13);
}
