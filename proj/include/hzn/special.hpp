#pragma once

#include <vector>

#include "hzn/numerics.hpp"

namespace hzn {

// e^{2 pi i alpha} with alpha reduced once at construction.
struct UnitPhase {
    double alpha = 0.0;     // in [0, 1)
    double centered = 0.0;  // alpha - round(alpha), in [-1/2, 1/2)
    cplx z{1.0, 0.0};
    bool is_integral = true;

    UnitPhase() = default;
    explicit UnitPhase(double a);
    // Phase of a point on the unit circle.
    static UnitPhase from_point(cplx w);
    // z^n computed from the reduced phase rather than by repeated products.
    cplx power(std::int64_t n) const;
};

// Sums of the form  Sum_{q >= 0} z^q / (y + q)^s  for z = e^{2 pi i beta}.
//
// The generating function 1/(1 - z e^{-t}) is split into its pole at
// t = 2 pi i beta_c (beta_c the centred phase) and an entire-near-zero
// remainder h(t). After shifting y to the right half-plane the pole part
// becomes an exponential-integral type function K_i and the remainder gives
// a rapidly converging inverse-power series.
class LerchKernel {
public:
    explicit LerchKernel(double beta);

    const UnitPhase& phase() const { return ph_; }

    // psi^{(i)}(y) = (-1)^i i! Sum_q z^q / (y+q)^{i+1};  y off (-inf, 0].
    cplx psi_deriv(int i, cplx y) const;

    // Phi(z, s, y) = Sum_q z^q (y+q)^{-s}, s >= 1 (s >= 2 when z = 1).
    cplx lerch(int s, cplx y) const;

    // Y^s * Phi(z, s, y); avoids under/overflow for large s.
    cplx lerch_scaled(int s, cplx y, double Y) const;

    // Sum_{n > N} z^n n^{-s}, and the same multiplied by N^shift.
    cplx tail(int s, std::int64_t N) const;
    cplx tail_scaled(int s, std::int64_t N, int shift) const;

    // Taylor coefficients of 1/(1 - z e^{-t}) at t = 0 (z != 1).
    cplx taylor_b(int n) const;
    // taylor_b(n) * r^n.
    cplx taylor_b_scaled(int n, double r) const;

    // Coefficients e_j Y^{-j} with Phi(z, s, y) ~ Sum_j e_j y^{-j}, j < count.
    std::vector<cplx> asymptotic_coeffs(int s, int count, double Y = 1.0) const;

    // Nearest singularity of the remainder-free generating function; sets the
    // scale beyond which the inverse-power expansion in y is usable.
    double radius() const;

    static constexpr int kTaylorTerms = 72;

private:
    UnitPhase ph_;
    cplx c_;                  // 2 pi i beta_c
    std::vector<cplx> h_;     // Taylor coefficients of the remainder h
};

// K_i(w) = int_0^inf s^i e^{-s} / (s - w) ds for w off [0, inf).
cplx exp_integral_k(int i, cplx w);
// K_i(w) / i!.
cplx exp_integral_k_scaled(int i, cplx w);

// Riemann zeta at an integer n != 1; zeta(0) = -1/2, trivial zeros exact.
double zeta_int(int n);
// Bernoulli number B_n (B_1 = -1/2).
double bernoulli(int n);
// B_{2j} / (2j)!, well scaled for large j.
double bernoulli_over_factorial(int n);
double harmonic(int n);
// zeta'(n) for integer n != 1.
double zeta_deriv_int(int n);
// Hurwitz zeta(s, y), integer s >= 2, Re y > 0.
cplx hurwitz_zeta(int s, cplx y);

// Li_k(z) for integer k >= 0 and |z| <= 1.
ComplexValue polylog(int k, cplx z);
// Li_s(z) for any integer s, |z| <= 1 (z != 1 when s <= 1).
cplx polylog_int(int s, cplx z);

// d/ds Li_s(e^{2 pi i alpha}) at s = 1.
ComplexValue polylog_order_deriv_s1(const UnitPhase& alpha);

// Li_{a,b}(z1, z2) = Sum_{0 < p < q} z1^p z2^q / (p^a q^b).
ComplexValue double_polylog(int a, int b, cplx z1, cplx z2);

ComplexValue digamma(cplx x);

enum class PsiRoute { Series, Binet };

// psi_beta(x) = Sum_{q >= 0} e^{2 pi i beta q} / (x + q).
ComplexValue lerch_psi(double beta, cplx x, PsiRoute route = PsiRoute::Series);

}  // namespace hzn
