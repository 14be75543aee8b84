#include "hzn/zeta.hpp"

#include <algorithm>
#include <cmath>

#include "hzn/errors.hpp"

namespace hzn {

namespace {

bool integral_phase(double a) {
    const double f = a - std::floor(a);
    return f < 1e-12 || 1.0 - f < 1e-12;
}

// Sum_{q >= 0} coeff(q) for an integral phase: partial sums at doubling N
// and Richardson extrapolation in h = 1/N, order capped at 6.
ComplexValue sum_plain_extrapolated(const CoeffFn& coeff, const SeriesConfig& cfg) {
    constexpr int kOrder = 6;
    std::vector<std::vector<cplx>> T;
    KahanSum s;
    std::int64_t n = 0;
    double err = INFINITY;
    for (std::int64_t N = 32; N <= cfg.max_terms; N *= 2) {
        for (; n < N; ++n) s.add(coeff(n));
        const std::size_t j = T.size();
        T.emplace_back(std::min<std::size_t>(j, kOrder) + 1);
        T[j][0] = s.value();
        for (std::size_t m = 1; m < T[j].size(); ++m)
            T[j][m] = T[j][m - 1] + (T[j][m - 1] - T[j - 1][m - 1]) / (std::ldexp(1.0, static_cast<int>(m)) - 1.0);
        if (j >= 3) {
            const std::size_t m = T[j].size() - 2;
            err = std::abs(T[j][m + 1] - T[j - 1][m]);
            if (err <= std::max(cfg.abs_tol, 1e-14 * std::abs(T[j][m + 1]))) return {T[j][m + 1], err};
        }
    }
    throw NonConvergent("sum_plain_extrapolated: no stable limit, last difference " + std::to_string(err));
}

ComplexValue sum_twisted(const CoeffFn& coeff, double phase, const SeriesConfig& cfg) {
    if (integral_phase(phase)) return sum_plain_extrapolated(coeff, cfg);
    return sum_phased(coeff, phase, cfg);
}

void check_k(int k, const TwistPair& t) {
    if (k < 1) throw DomainError("zq: k must be positive");
    if (k == 1 && (t.alpha.is_integral || t.beta.is_integral))
        throw DomainError("zq: k = 1 needs non-integral alpha and beta");
}

ZetaResult zq_direct(int k, const IndefForm& form, const TwistPair& t) {
    const SeriesConfig cfg = default_series_config();
    std::int64_t terms = 0;
    auto row = [&](std::int64_t j) -> cplx {
        const double p = static_cast<double>(j + 1);
        auto inner = [&](std::int64_t q) -> cplx {
            ++terms;
            return std::pow(form(p, static_cast<double>(q)), -k);
        };
        return sum_twisted(inner, t.beta.alpha, cfg).value;
    };
    ComplexValue s = sum_twisted(row, t.alpha.alpha, cfg);
    return {{t.alpha.z * s.value, s.err}, ZetaRoute::Direct, std::max<std::int64_t>(terms, 1)};
}

ZetaResult zq_hzn(int k, const IndefForm& form, const TwistPair& t) {
    if (k == 1) {
        HznValue a = hzn_eval(2, form.wprime, t), b = hzn_eval(2, form.w, t);
        return {{a.value.value - b.value.value, a.value.err + b.value.err}, ZetaRoute::Hzn, 2};
    }
    ComplexValue v = pk(k, form.w, form.wprime, t);
    return {{-v.value, v.err}, ZetaRoute::Hzn, k};
}

}  // namespace

ZetaResult zq(int k, const IndefForm& form, const TwistPair& t, ZetaRoute route) {
    check_k(k, t);
    if (!(form.w > form.wprime && form.wprime > 0.0)) throw DomainError("zq: need w > w' > 0");
    return route == ZetaRoute::Direct ? zq_direct(k, form, t) : zq_hzn(k, form, t);
}

ZetaResult zcal(int k, const MinusCycle& cycle, const FieldData& fd, const TwistPair& t, ZetaRoute route) {
    check_k(k, t);
    ZetaResult out;
    out.route = route;
    out.terms_used = 0;
    KahanSum s;
    for (const IndefForm& f : forms_of(red_set(cycle, fd))) {
        ZetaResult r = zq(k, f, t, route);
        s.add(r.value.value);
        out.value.err += r.value.err;
        out.terms_used += r.terms_used;
    }
    out.value.value = s.value();
    return out;
}

ZetaResult zeta_narrow(int k, const FieldData& fd, const MinusCycle& cycle, const TwistPair& t, bool override_s,
                       ZetaRoute route) {
    if (!override_s && !in_set_S(t.alpha.alpha, t.beta.alpha, fd))
        throw TwistNotInS("zeta_narrow: twist is not in S for D = " + std::to_string(fd.D));
    ZetaResult r = zcal(k, cycle, fd, t, route);
    const double scale = std::pow(static_cast<double>(fd.D), 0.5 * k);
    r.value.value *= scale;
    r.value.err *= scale;
    return r;
}

ComplexValue pk(int k, cplx x, cplx y, const TwistPair& t, DopMethod method) {
    if (k < 2) throw DomainError("pk: k must be at least 2");
    return dop(k - 1, hzn_family(2 * k, t), x, y, method);
}

// ---------------------------------------------------------------------------
// Eta and Eisenstein series

ComplexValue eta_A(const EtaSeriesParams& p) {
    const double y = p.tau.imag();
    if (!(y > 0.0)) throw DomainError("eta_A: Im(tau) must be positive");
    const cplx za = expi2pi(p.alpha);
    const double grow = std::max(p.s - 1, 0);
    KahanSum total;
    for (double m = std::floor(-p.beta) + 1.0;; m += 1.0) {
        const double b = m + p.beta;
        const double decay = 2.0 * kPi * b * y;
        if (decay > 745.0) break;
        // e^{2 pi i n (alpha + b tau)} by repeated multiplication
        const cplx r = za * std::exp(cplx(-decay, kTwoPi * b * p.tau.real()));
        const double rho = std::exp(-decay);
        KahanSum row;
        cplx pw = 1.0;
        for (double n = 1.0;; n += 1.0) {
            pw *= r;
            const cplx term = std::pow(n, p.s - 1) * pw;
            row.add(term);
            const double at = std::abs(term);
            const double ratio = rho * std::pow(1.0 + 1.0 / n, grow);
            if (n * decay > grow && ratio < 1.0 &&
                at / (1.0 - ratio) < 1e-18 * (std::abs(row.value()) + std::abs(total.value())) + 1e-300)
                break;
        }
        total.add(row.value());
        // Later rows are bounded by their first term times a geometric factor.
        if (decay > grow + 1.0 && rho / (1.0 - rho) < 1e-18 * std::abs(total.value()) + 1e-300) break;
    }
    const cplx v = total.value();
    return {v, 1e-15 * (1.0 + std::abs(v))};
}

namespace {

// Sum_{n in Z} (c + n)^{-s}, omitting c + n = 0.
cplx row_sum(cplx c, int s) {
    const double sgn = (s % 2 == 0) ? 1.0 : -1.0;
    if (c.imag() == 0.0) {
        const double f = c.real() - std::floor(c.real());
        if (f < 1e-14 || 1.0 - f < 1e-14) return (1.0 + sgn) * zeta_int(s);
        return hurwitz_zeta(s, f) + sgn * hurwitz_zeta(s, 1.0 - f);
    }
    // shift so Re c lies in (0, 1]
    c -= std::ceil(c.real()) - 1.0;
    // Sum_{n >= 0} (c + n)^{-s} + (-1)^s Sum_{n >= 1} (n - c)^{-s}
    return hurwitz_zeta(s, c) + sgn * (std::pow(1.0 - c, -s) + hurwitz_zeta(s, 2.0 - c));
}

}  // namespace

ComplexValue eisenstein_G(cplx tau, int s, double beta, double alpha) {
    if (!(tau.imag() > 0.0)) throw DomainError("eisenstein_G: Im(tau) must be positive");
    if (s < 3) throw DomainError("eisenstein_G: s must be at least 3");
    KahanSum total;
    // Rows m + beta >= 0 going up and m + beta < 0 going down.
    const double m0 = std::ceil(-beta);
    for (int dir : {1, -1}) {
        double m = dir == 1 ? m0 : m0 - 1.0;
        for (;; m += dir) {
            const cplx v = row_sum((m + beta) * tau + alpha, s);
            total.add(v);
            const double h = std::abs(m + beta) * tau.imag();
            if (h > 1.0 && std::abs(v) < 1e-18 * std::abs(total.value()) + 1e-300) break;
        }
    }
    const cplx v = total.value();
    return {v, 1e-14 * (1.0 + std::abs(v))};
}

ComplexValue eisenstein_identity_residual(cplx tau, int s, double beta, double alpha) {
    const cplx g = eisenstein_G(tau, s, beta, alpha).value;
    const cplx pre = std::exp(std::lgamma(static_cast<double>(s))) / std::pow(cplx(0.0, -kTwoPi), s);
    const cplx a1 = eta_A({tau, s, beta, alpha}).value;
    const cplx a2 = eta_A({tau, s, -beta, -alpha}).value;
    const cplx v = pre * g - a1 - std::exp(cplx(0.0, kPi * s)) * a2;
    return {v, 1e-14 * (std::abs(pre * g) + std::abs(a1) + std::abs(a2))};
}

namespace {

// A(iy, s, beta, alpha) for small y from the Mellin expansion
// Li_{2-s}(e_a) / (2 pi y) + Sum_j (-2 pi y)^j / j! Li_{1-s-j}(e_a) zeta(-j, b0).
cplx eta_A_small(double y, int s, double beta, double alpha) {
    double b0 = beta - std::floor(beta);
    if (b0 == 0.0) b0 = 1.0;
    const cplx za = expi2pi(alpha);
    const cplx eb = expi2pi(b0);
    cplx sum = polylog_int(2 - s, za) / (kTwoPi * y);
    sum += polylog_int(1 - s, za) * (0.5 - b0);
    double prev = INFINITY;
    double ypow = 1.0;
    cplx mi = cplx(0.0, -1.0);  // (-i)^{j+1}
    for (int j = 1; j < 200; ++j) {
        ypow *= -y;
        mi *= cplx(0.0, -1.0);
        // (-2 pi y)^j / j! * zeta(-j, b0) with the Fourier series of B_{j+1}
        const cplx hz = polylog_int(j + 1, eb) + ((j + 1) % 2 == 0 ? 1.0 : -1.0) * polylog_int(j + 1, std::conj(eb));
        const cplx term = ypow * mi / kTwoPi * hz * polylog_int(1 - s - j, za);
        const double at = std::abs(term);
        if (at > prev && j > 2) break;
        sum += term;
        if (at < 1e-18 * std::abs(sum)) break;
        prev = at;
    }
    return sum;
}

cplx eta_A_imag(double y, int s, double beta, double alpha, double y0) {
    if (y < y0) return eta_A_small(y, s, beta, alpha);
    return eta_A({cplx(0.0, y), s, beta, alpha}).value;
}

}  // namespace

ComplexValue hzn_eta_residual(int k, double x, double alpha, double beta) {
    if (k < 1) throw DomainError("hzn_eta_residual: k must be positive");
    if (!(x > 0.0)) throw DomainError("hzn_eta_residual: x must be positive");
    if (!(beta > 0.0 && beta < 1.0)) throw DomainError("hzn_eta_residual: beta must lie in (0, 1)");
    const UnitPhase pa(alpha);
    if (pa.is_integral) throw DomainError("hzn_eta_residual: alpha must be non-integral");
    const HznValue f1 = hzn_eval(k, x, TwistPair(alpha, beta));
    const HznValue f2 = hzn_eval(k, x, TwistPair(alpha, -beta));
    const cplx lhs = f1.value.value + f2.value.value - polylog_int(k, pa.z) / x;
    // Crossover below which the small-y expansion is accurate to double precision.
    const double y0 = std::min(0.1, 0.16 * std::abs(pa.centered));
    auto g = [&](double y) -> cplx {
        const cplx H = eta_A_imag(y, 2 - k, beta, alpha, y0) + eta_A_imag(y, 2 - k, -beta, alpha, y0);
        return 2.0 * y / (y * y + x * x) * H;
    };
    ComplexValue I = quad_halfline(g, 1.0, gauss_legendre(20), 1e-12);
    return {lhs - I.value, I.err + f1.value.err + f2.value.err};
}

// ---------------------------------------------------------------------------
// W_k and the Vlasenko-Zagier type identity

namespace {

double falling(double m, int i) {
    double v = 1.0;
    for (int j = 0; j < i; ++j) v *= m - j;
    return v;
}

double binom(int n, int r) {
    double v = 1.0;
    for (int j = 1; j <= r; ++j) v = v * (n - r + j) / j;
    return v;
}

// Unsigned Lah number L(n, l).
double lah(int n, int l) {
    double v = binom(n - 1, l - 1);
    for (int j = l + 1; j <= n; ++j) v *= j;
    return v;
}

// i-th derivative of the W_k kernel at u > 0.
cplx wk_kernel(int k, int i, double u, double alpha) {
    const int K = 2 * k;
    const TwistPair t(0.0, alpha);
    const cplx za = expi2pi(alpha);
    auto mono = [&](double m) { return falling(m, i) * std::pow(u, m - i); };

    cplx v = hzn_deriv(K, i, u, t).value;
    // u^{K-2} F_K(1/u) by Leibniz and the Lah expansion of d^j F(1/u).
    std::vector<cplx> finv(i + 1);
    for (int l = 0; l <= i; ++l) finv[l] = hzn_deriv(K, l, 1.0 / u, t).value;
    for (int j = 0; j <= i; ++j) {
        cplx dj = 0.0;
        if (j == 0) {
            dj = finv[0];
        } else {
            for (int l = 1; l <= j; ++l) dj += lah(j, l) * std::pow(u, -j - l) * finv[l];
            if (j % 2 == 1) dj = -dj;
        }
        v += binom(i, j) * falling(K - 2, i - j) * std::pow(u, K - 2 - (i - j)) * dj;
    }
    const cplx c = zeta_int(K) + polylog_int(K, za);
    v -= 0.75 * c * (mono(-1.0) + mono(K - 1.0));
    for (int r = 0; r <= K - 1; ++r) {
        const double z = zeta_int(K - 2 * r);
        if (z == 0.0) continue;
        v += z * polylog_int(2 * r, za) * (mono(2.0 * r - 1.0) + mono(K - 2.0 * r - 1.0));
    }
    return v;
}

}  // namespace

ComplexValue wk(int k, double x, double y, double alpha) {
    if (k < 2) throw DomainError("wk: k must be at least 2");
    if (integral_phase(alpha)) throw DomainError("wk: alpha must be non-integral");
    if (x == 0.0 || y == 0.0) throw DomainError("wk: arguments must be non-zero");
    if (std::abs(std::abs(x) - std::abs(y)) < 1e-12) throw DegenerateArguments("wk: |x| = |y|");
    DerivFamily f = [k, alpha](int i, cplx t) -> cplx {
        const double r = t.real();
        const cplx v = wk_kernel(k, i, std::abs(r), alpha);
        return (r < 0.0 && i % 2 == 1) ? -v : v;
    };
    return dop(k - 1, f, x, y, DopMethod::Finite);
}

VzReport verify_vz(const FieldData& fd, const MinusCycle& cycle, int k, double alpha) {
    if (fd.norm_eps == -1) throw NormMinusOneField("verify_vz: field has a unit of norm -1");
    if (k < 2) throw DomainError("verify_vz: k must be at least 2");
    const std::vector<MinusCycle> classes = narrow_classes(fd);
    std::size_t idx = classes.size();
    for (std::size_t i = 0; i < classes.size(); ++i)
        if (classes[i].digits == cycle.digits) idx = i;
    if (idx == classes.size()) throw DomainError("verify_vz: cycle is not a class of this field");

    VzReport rep;
    rep.star_index = star_class(fd, classes, idx);
    const TwistPair t(alpha, alpha);
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    const double half = std::pow(static_cast<double>(fd.D), 0.5 * k);

    ZetaResult zb = zeta_narrow(k, fd, classes[idx], t);
    ZetaResult zs = zeta_narrow(k, fd, classes[rep.star_index], t);
    rep.zcal_b = zb.value.value / half;
    rep.zcal_star = zs.value.value / half;
    rep.lhs = {half * (zb.value.value + sign * zs.value.value), half * (zb.value.err + zs.value.err)};

    const auto [odd, even] = wide_red_sets(fd, classes[idx]);
    KahanSum s;
    double err = 0.0;
    auto add = [&](const std::vector<QuadIrr>& xs, double sg) {
        for (const QuadIrr& q : xs) {
            ComplexValue w = wk(k, q.value(), q.conj_value(), alpha);
            rep.rhs_terms.push_back(sg * w.value);
            s.add(sg * w.value);
            err += w.err;
        }
    };
    add(odd, 1.0);
    add(even, sign);
    rep.rhs = {s.value(), err};
    return rep;
}

}  // namespace hzn
