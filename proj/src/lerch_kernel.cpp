#include <cmath>
#include <mutex>

#include "hzn/errors.hpp"
#include "hzn/special.hpp"

namespace hzn {

UnitPhase::UnitPhase(double a) {
    long double r = static_cast<long double>(a) - std::floor(static_cast<long double>(a));
    if (r >= 1.0L) r = 0.0L;
    if (r < 1e-12L || 1.0L - r < 1e-12L) {
        alpha = 0.0;
        centered = 0.0;
        is_integral = true;
        z = 1.0;
        return;
    }
    alpha = static_cast<double>(r);
    centered = r < 0.5L ? alpha : static_cast<double>(r - 1.0L);
    is_integral = false;
    z = expi2pi(r);
}

UnitPhase UnitPhase::from_point(cplx w) { return UnitPhase(std::atan2(w.imag(), w.real()) / kTwoPi); }

cplx UnitPhase::power(std::int64_t n) const {
    if (is_integral) return 1.0;
    return expi2pi(static_cast<long double>(alpha) * static_cast<long double>(n));
}

namespace {

// Taylor coefficients of 1/(1 - e^{-u}) - 1/u.
const std::vector<double>& bernoulli_h() {
    static const std::vector<double> b = [] {
        std::vector<double> v(300, 0.0);
        v[0] = 0.5;
        for (int m = 1; m < 300; m += 2) v[m] = bernoulli_over_factorial(m + 1);
        return v;
    }();
    return b;
}

}  // namespace

LerchKernel::LerchKernel(double beta) : ph_(beta) {
    c_ = cplx(0.0, kTwoPi * ph_.centered);
    const auto& b = bernoulli_h();
    h_.resize(kTaylorTerms);
    const cplx mc = -c_;
    for (int n = 0; n < kTaylorTerms; ++n) {
        if (ph_.is_integral) {
            h_[n] = b[n];
            continue;
        }
        // h_n = Sum_{m >= n} b_m C(m, n) (-c)^{m-n}
        cplx s = 0.0, pw = 1.0;
        double binom = 1.0;
        int quiet = 0;
        for (int m = n; m < static_cast<int>(b.size()); ++m) {
            cplx t = b[m] * binom * pw;
            s += t;
            if (m > n + 4 && b[m] != 0.0) {
                quiet = std::abs(t) < 1e-20 * std::abs(s) ? quiet + 1 : 0;
                if (quiet >= 4) break;
            }
            binom *= static_cast<double>(m + 1) / static_cast<double>(m + 1 - n);
            pw *= mc;
        }
        h_[n] = s;
    }
}

double LerchKernel::radius() const { return ph_.is_integral ? kTwoPi : kTwoPi * std::abs(ph_.centered); }

cplx LerchKernel::lerch_scaled(int s, cplx y, double Y) const {
    if (s < 1) throw DomainError("lerch: order must be positive");
    if (ph_.is_integral && s == 1) throw DomainError("lerch: divergent harmonic-type sum");
    const int i = s - 1;

    if (s >= 12 && y.real() > 0.0) {
        const double qn = std::abs(y) * std::expm1(41.5 / s) + 2.0;
        if (qn <= 3000.0) {
            KahanSum acc;
            for (int q = 0; q < 4000; ++q) {
                cplx t = ph_.power(q) * std::pow(Y / (y + static_cast<double>(q)), s);
                acc.add(t);
                if (q > 2 && std::abs(t) < 1e-18 * std::abs(acc.value())) break;
            }
            return acc.value();
        }
    }

    const double y0 = 16.0 + i;
    const std::int64_t M = std::max<std::int64_t>(0, static_cast<std::int64_t>(std::ceil(y0 - y.real())));
    KahanSum head;
    for (std::int64_t q = 0; q < M; ++q) {
        cplx d = y + static_cast<double>(q);
        if (d == cplx(0.0, 0.0)) throw PoleEncountered("lerch: pole at y = -q");
        head.add(ph_.power(q) * std::pow(Y / d, s));
    }
    const cplx yp = y + static_cast<double>(M);
    const cplx u = 1.0 / yp;
    const cplx ks = exp_integral_k_scaled(i, c_ * yp);
    cplx series = 0.0, pw = 1.0;
    double rising = 1.0, prev = INFINITY;
    for (int n = 0; n < kTaylorTerms; ++n) {
        const cplx t = h_[n] * rising * pw;
        const double at = std::abs(t);
        if (at != 0.0) {
            if (n > 8 && at > prev) break;
            series += t;
            prev = at;
            if (n > 2 && at < 1e-19 * std::abs(series + yp * ks)) break;
        }
        rising *= static_cast<double>(n + 1 + i);
        pw *= u;
    }
    const cplx tailv = std::pow(Y * u, s) * (yp * ks + series);
    return head.value() + ph_.power(M) * tailv;
}

cplx LerchKernel::lerch(int s, cplx y) const { return lerch_scaled(s, y, 1.0); }

cplx LerchKernel::psi_deriv(int i, cplx y) const {
    cplx v = lerch(i + 1, y) * std::tgamma(i + 1.0);
    return (i % 2 == 0) ? v : -v;
}

cplx LerchKernel::tail(int s, std::int64_t N) const {
    return ph_.power(N + 1) * lerch(s, static_cast<double>(N + 1));
}

cplx LerchKernel::tail_scaled(int s, std::int64_t N, int shift) const {
    // N^shift * Sum_{n > N} z^n n^{-s}; scale inside the kernel by Y = N.
    const double Nd = static_cast<double>(N);
    cplx v = lerch_scaled(s, Nd + 1.0, Nd);
    return ph_.power(N + 1) * v * std::pow(Nd, static_cast<double>(shift - s));
}

cplx LerchKernel::taylor_b(int n) const { return taylor_b_scaled(n, 1.0); }

cplx LerchKernel::taylor_b_scaled(int n, double r) const {
    if (ph_.is_integral) throw DomainError("taylor_b: integral phase has a pole at t = 0");
    if (n < 0 || n >= kTaylorTerms) throw DomainError("taylor_b: index out of range");
    // b_n = h_n - c^{-n-1}
    const cplx rc = r / c_;
    return h_[n] * std::pow(r, n) - std::pow(rc, n) / c_;
}

std::vector<cplx> LerchKernel::asymptotic_coeffs(int s, int count, double Y) const {
    std::vector<cplx> e(std::max(count, 0), 0.0);
    if (ph_.is_integral) {
        if (s < 2) throw DomainError("asymptotic_coeffs: divergent sum");
        if (s - 1 < count) e[s - 1] = std::pow(Y, -(s - 1)) / static_cast<double>(s - 1);
    }
    double rising = 1.0;  // (s)_n
    for (int n = 0; n + s < count && n < kTaylorTerms; ++n) {
        cplx bn = ph_.is_integral ? h_[n] * std::pow(1.0 / Y, n) : taylor_b_scaled(n, 1.0 / Y);
        e[n + s] = bn * rising * std::pow(Y, -s);
        rising *= static_cast<double>(s + n);
    }
    return e;
}

}  // namespace hzn
