#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "hzn/errors.hpp"
#include "hzn/zeta.hpp"

using namespace hzn;

namespace {

const double kSqrt3 = std::sqrt(3.0);

IndefForm principal_form() { return forms_of({QuadIrr{4, 2, 12}}).front(); }

cplx F2(double x, double a, double b) { return hzn_eval(2, x, TwistPair(a, b)).value.value; }

// Gamma(1/4)
const double kGammaQuarter = 3.6256099082219083119;

}  // namespace

TEST_CASE("zq at k = 1 is the second limit formula") {
    const IndefForm f = principal_form();
    const cplx d = zq(1, f, TwistPair(0.5, 0.5), ZetaRoute::Direct).value.value;
    CHECK(std::abs(d - (F2(f.wprime, 0.5, 0.5) - F2(f.w, 0.5, 0.5))) <= 1e-10);
}

TEST_CASE("zq routes agree at k = 2") {
    const IndefForm f = principal_form();
    const cplx d = zq(2, f, TwistPair(0.5, 0.5), ZetaRoute::Direct).value.value;
    const cplx h = zq(2, f, TwistPair(0.5, 0.5), ZetaRoute::Hzn).value.value;
    CHECK(std::abs(d - h) <= 1e-9);
    CHECK(std::abs(d.imag()) <= 1e-12);
    CHECK(std::abs(h.imag()) <= 1e-12);
    // Integral twists have only the direct route.
    CHECK_THROWS_AS(zq(2, f, TwistPair(0.0, 0.0), ZetaRoute::Hzn), DomainError);
    const cplx plain = zq(2, f, TwistPair(0.0, 0.0), ZetaRoute::Direct).value.value;
    CHECK(std::isfinite(plain.real()));
    CHECK(std::abs(plain.imag()) <= 1e-12);
}

TEST_CASE("zq direct sum against a truncated lattice sum") {
    // Q = (q^2 + 4pq + p^2) / (2 sqrt 3); the k = 3 sum converges absolutely.
    const IndefForm f = principal_form();
    const TwistPair t(0.3, 0.6);
    long double re = 0, im = 0;
    const int N = 3000;
    for (int p = 1; p <= N; ++p)
        for (int q = 0; q <= N; ++q) {
            const double Q = (double(q) * q + 4.0 * p * q + double(p) * p) / (2 * kSqrt3);
            const cplx e = std::polar(1.0, kTwoPi * std::fmod(0.3 * p + 0.6 * q, 1.0)) / (Q * Q * Q);
            re += e.real();
            im += e.imag();
        }
    const cplx brute(static_cast<double>(re), static_cast<double>(im));
    // Tail beyond the box is O(N^-4) for the oscillating sum.
    CHECK(std::abs(zq(3, f, t, ZetaRoute::Direct).value.value - brute) <= 1e-9);
}

TEST_CASE("class zeta values at D = 12") {
    const FieldData fd = fundamental_unit(12);
    const auto cl = narrow_classes(fd);
    const cplx b0 = zcal(2, cl[0], fd, TwistPair(0.5, 0.5)).value.value;
    CHECK(std::abs(b0 - cplx(-11.12741223912468, 0.0)) <= 1e-7);
    CHECK(std::abs(b0.imag()) <= 1e-10);
    const cplx b1 = zcal(2, cl[1], fd, TwistPair(0.3562, -0.4052)).value.value;
    CHECK(std::abs(b1 - cplx(-2.562703368470003, 3.125265766429505)) <= 1e-7);
    const cplx b0t = zcal(2, cl[0], fd, TwistPair(2.9748, 0.6723)).value.value;
    CHECK(std::abs(b0t - cplx(12.451416963412164, -2.5015713592878965)) <= 1e-7);
    CHECK(std::abs(b0t - zcal(2, cl[0], fd, TwistPair(0.9748, 0.6723)).value.value) <= 1e-13);
    // The printed B1 value at this twist belongs to beta = -0.6723.
    const cplx b1t = zcal(2, cl[1], fd, TwistPair(2.9748, -0.6723)).value.value;
    CHECK(std::abs(b1t - cplx(4.50864964043679, -0.6044254870852179)) <= 1e-7);
}

TEST_CASE("zeta_narrow") {
    const FieldData fd = fundamental_unit(12);
    const auto cl = narrow_classes(fd);
    const TwistPair h(0.5, 0.5);
    const cplx z = zcal(2, cl[0], fd, h).value.value;
    CHECK(std::abs(zeta_narrow(2, fd, cl[0], h).value.value - 12.0 * z) <= 1e-12 * std::abs(z) * 12);
    CHECK_THROWS_AS(zeta_narrow(2, fd, cl[0], TwistPair(1.0 / 3.0, 0.5)), TwistNotInS);
    CHECK_NOTHROW(zeta_narrow(2, fd, cl[0], TwistPair(1.0 / 3.0, 0.5), true));

    for (const MinusCycle& c : cl) {
        cplx s = 0;
        for (const IndefForm& f : forms_of(red_set(c, fd))) s += F2(f.wprime, 0.5, 0.5) - F2(f.w, 0.5, 0.5);
        const cplx n = zeta_narrow(1, fd, c, h).value.value;
        CHECK(std::isfinite(n.real()));
        CHECK(std::abs(n - std::sqrt(12.0) * s) <= 1e-9);
    }
}

TEST_CASE("pk") {
    const IndefForm f = principal_form();
    const TwistPair t(0.5, 0.5);
    CHECK(std::abs(pk(2, f.w, f.wprime, t).value + zq(2, f, t).value.value) <= 1e-12);
    const TwistPair u(0.2, 0.7);
    for (int k : {2, 3}) {
        const cplx a = pk(k, 3.0, 1.0, u, DopMethod::Finite).value;
        const cplx b = pk(k, 3.0, 1.0, u, DopMethod::Integral).value;
        CHECK(std::isfinite(std::abs(a)));
        CHECK(std::abs(a - b) <= 1e-9);
    }
}

TEST_CASE("generalized eta series") {
    // A(i, 0, 0, 0) = -pi/12 - log eta(i), eta(i) = Gamma(1/4) / (2 pi^{3/4}).
    const double log_eta_i = std::log(kGammaQuarter / (2 * std::pow(kPi, 0.75)));
    const cplx a = eta_A({cplx(0.0, 1.0), 0, 0.0, 0.0}).value;
    CHECK(std::abs(a - (-kPi / 12 - log_eta_i)) <= 1e-14);

    // Brute force over m, n <= 200; for beta = 0.3 the m-sum starts at m = 0.
    const cplx tau(0.1, 0.8);
    cplx s = 0;
    for (int m = 0; m <= 200; ++m)
        for (int n = 1; n <= 200; ++n)
            s += std::pow(double(n), -2.0) * std::exp(cplx(0.0, kTwoPi * n) * (0.2 + 0.3 * tau + double(m) * tau));
    CHECK(std::abs(eta_A({tau, -1, 0.3, 0.2}).value - s) <= 1e-12);
    // beta = -0.5 excludes m = 0.
    cplx s2 = 0;
    for (int m = 1; m <= 200; ++m)
        for (int n = 1; n <= 200; ++n)
            s2 += std::exp(cplx(0.0, kTwoPi * n) * (0.2 - 0.5 * tau + double(m) * tau)) / double(n);
    CHECK(std::abs(eta_A({tau, 0, -0.5, 0.2}).value - s2) <= 1e-12);
    CHECK_THROWS_AS(eta_A({cplx(0.3, 0.0), 0, 0.2, 0.1}), DomainError);
}

TEST_CASE("twisted Eisenstein series") {
    const double g4 = std::pow(kGammaQuarter, 8) / (960 * kPi * kPi);
    CHECK(std::abs(eisenstein_G(cplx(0.0, 1.0), 4, 0.0, 0.0).value - g4) <= 1e-13);
    CHECK(std::abs(eisenstein_identity_residual(cplx(0.1, 0.9), 3, 0.3, 0.2).value) <= 1e-8);
    CHECK(std::abs(eisenstein_identity_residual(cplx(-0.4, 1.3), 4, 0.7, 0.45).value) <= 1e-8);
    // For integral beta the q-series miss the m = -beta row: the residual is
    // Gamma(s) (-2 pi i)^{-s} Sum'_n (n + alpha)^{-s}, which is 2 zeta(4) 3! / (2 pi)^4 = 1/120 here.
    CHECK(std::abs(eisenstein_identity_residual(cplx(0.0, 1.0), 4, 0.0, 0.0).value - 1.0 / 120) <= 1e-12);

    const cplx tau(0.35, 0.8);
    const cplx g = eisenstein_G(tau, 3, 0.3, 0.2).value;
    CHECK(std::abs(eisenstein_G(-std::conj(tau), 3, -0.3, 0.2).value - std::conj(g)) <= 1e-13);
    CHECK(std::abs(eisenstein_G(-std::conj(tau), 3, 0.3, -0.2).value + std::conj(g)) <= 1e-13);
    CHECK_THROWS_AS(eisenstein_G(tau, 2, 0.3, 0.2), DomainError);
}

TEST_CASE("eta-series connection") {
    CHECK(std::abs(hzn_eta_residual(2, 1.5, 0.3, 0.25).value) <= 1e-6);
    CHECK(std::abs(hzn_eta_residual(3, 2.0, 0.2, 0.4).value) <= 1e-6);
    const TwistPair a(0.3, 0.75), b(0.3, -0.25);
    CHECK(std::abs(hzn_eval(3, 1.4, a).value.value - hzn_eval(3, 1.4, b).value.value) == 0.0);
}

TEST_CASE("W_k constants and symmetry") {
    // D_{k-1} of an even function picks up (-1)^{k-1} under (x, y) -> (-x, -y).
    CHECK(zeta_int(0) == -0.5);
    const cplx z = std::polar(1.0, kTwoPi * 0.5);
    CHECK(std::abs(polylog(0, z).value - z / (1.0 - z)) <= 1e-15);
    CHECK(std::abs(polylog(0, z).value + 0.5) <= 1e-15);
    for (int k : {2, 3}) {
        const cplx a = wk(k, 2.7, 0.4, 0.5).value, b = wk(k, -2.7, -0.4, 0.5).value;
        CHECK(std::abs(b - std::pow(-1.0, k - 1) * a) <= 1e-10 * std::max(1.0, std::abs(a)));
    }
}

TEST_CASE("verify_vz needs a field without units of norm -1") {
    for (std::int64_t D : {5, 8}) {
        const FieldData fd = fundamental_unit(D);
        CHECK_THROWS_AS(verify_vz(fd, narrow_classes(fd).front(), 2, 0.5), NormMinusOneField);
    }
    const FieldData fd = fundamental_unit(12);
    const auto cl = narrow_classes(fd);
    const VzReport r = verify_vz(fd, cl[0], 2, 0.5);
    CHECK(r.star_index == 1);
    CHECK(r.rhs_terms.size() == 2);
    CHECK(std::isfinite(std::abs(r.lhs.value)));
    CHECK(std::isfinite(std::abs(r.rhs.value)));
}
