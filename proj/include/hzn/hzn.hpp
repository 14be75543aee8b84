#pragma once

#include <functional>
#include <utility>

#include "hzn/special.hpp"

namespace hzn {

struct TwistPair {
    UnitPhase alpha;
    UnitPhase beta;

    TwistPair() = default;
    TwistPair(double a, double b) : alpha(a), beta(b) {}
};

enum class HznRoute { Series, Integral };

struct HznValue {
    ComplexValue value;
    HznRoute route = HznRoute::Series;
    double err_est = 0.0;
};

// F_k(x; alpha, beta) = Sum_{p >= 1, q >= 0} e^{2 pi i (alpha p + beta q)} / (p^{k-1} (p x + q)).
HznValue hzn_eval(int k, cplx x, const TwistPair& t, HznRoute route = HznRoute::Series);

// i-th derivative in x of F_k.
ComplexValue hzn_deriv(int k, int i, cplx x, const TwistPair& t);

// a_n(beta) = d^n/dt^n (1 - e^{-t} e^{2 pi i beta})^{-1} at t = 0.
ComplexValue taylor_a(double beta, int n);

// Inverse-power expansion for |x| >= 1, reflected expansion for |x| < 1.
ComplexValue hzn_asymptotic(int k, cplx x, const TwistPair& t, int N);

// F(x) = Sum_n (psi(n x) - log(n x)) / n.
ComplexValue herglotz_F(cplx x);

// F_k(x) = Sum_n psi(n x) / n^{k-1}, k >= 3.
ComplexValue higher_herglotz_plain(int k, cplx x);

// f(i, x) returns the i-th derivative of a function at x.
using DerivFamily = std::function<cplx(int, cplx)>;

// Derivative family of x -> F_k(x; t).
DerivFamily hzn_family(int k, const TwistPair& t);

enum class DopMethod { Finite, Integral };

// The operator D_n applied to f at (x, y).
ComplexValue dop(int n, const DerivFamily& f, cplx x, cplx y, DopMethod method = DopMethod::Finite);

// sgn(x) Sum'_{p, q >= 0} e^{2 pi i (alpha p + beta q)} / (p|x| + q)^w with the
// boundary rows p = 0 and q = 0 weighted 1/2.
ComplexValue cocycle_psi(int weight, const TwistPair& t, double x);

struct SlashMatrix {
    long a, b, c, d;
};

// (F|_w m)(x) for F = cocycle_psi.
ComplexValue cocycle_slash(int weight, const TwistPair& t, double x, const SlashMatrix& m);

// Residuals of F|(I + (-I) + S + (-S)) and G|(I + (-I) + U + (-U) + U^2 + (-U^2)).
std::pair<ComplexValue, ComplexValue> period_residuals(int weight, const TwistPair& t, double x);

}  // namespace hzn
