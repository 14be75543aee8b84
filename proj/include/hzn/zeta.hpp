#pragma once

#include <cstdint>
#include <vector>

#include "hzn/hzn.hpp"
#include "hzn/quadfield.hpp"

namespace hzn {

enum class ZetaRoute { Direct, Hzn };

struct ZetaResult {
    ComplexValue value;
    ZetaRoute route = ZetaRoute::Hzn;
    std::int64_t terms_used = 1;
};

// Sum_{p >= 1, q >= 0} e^{2 pi i (p alpha + q beta)} / Q(p, q)^k.
ZetaResult zq(int k, const IndefForm& form, const TwistPair& t, ZetaRoute route = ZetaRoute::Hzn);

// Sum of zq over the forms of Red(B).
ZetaResult zcal(int k, const MinusCycle& cycle, const FieldData& fd, const TwistPair& t,
                ZetaRoute route = ZetaRoute::Hzn);

// D^{k/2} zcal; the twist must lie in S unless override_s is set.
ZetaResult zeta_narrow(int k, const FieldData& fd, const MinusCycle& cycle, const TwistPair& t,
                       bool override_s = false, ZetaRoute route = ZetaRoute::Hzn);

// P_k(x, y) = D_{k-1} F_{2k} at (x, y).
ComplexValue pk(int k, cplx x, cplx y, const TwistPair& t, DopMethod method = DopMethod::Finite);

struct EtaSeriesParams {
    cplx tau{0.0, 1.0};
    int s = 0;
    double beta = 0.0;
    double alpha = 0.0;
};

// A(tau, s, beta, alpha) = Sum_{m > -beta} Sum_{n >= 1} n^{s-1} e^{2 pi i n (alpha + beta tau)} e^{2 pi i m n tau}.
ComplexValue eta_A(const EtaSeriesParams& p);

// Sum' ((m + beta) tau + n + alpha)^{-s} over the lattice, s >= 3.
ComplexValue eisenstein_G(cplx tau, int s, double beta, double alpha);

// Gamma(s) / (-2 pi i)^s G - A(tau, s, beta, alpha) - e^{pi i s} A(tau, s, -beta, -alpha).
ComplexValue eisenstein_identity_residual(cplx tau, int s, double beta, double alpha);

// F_k(x; a, b) + F_k(x; a, -b) - Li_k(e^{2 pi i a}) / x minus the eta-series integral.
ComplexValue hzn_eta_residual(int k, double x, double alpha, double beta);

// W_k(x, y, alpha, alpha).
ComplexValue wk(int k, double x, double y, double alpha);

struct VzReport {
    ComplexValue lhs;
    ComplexValue rhs;
    cplx zcal_b{0.0, 0.0};       // zcal of the class
    cplx zcal_star{0.0, 0.0};    // zcal of the starred class
    std::size_t star_index = 0;
    std::vector<cplx> rhs_terms;  // W_k per element, signs applied
};

VzReport verify_vz(const FieldData& fd, const MinusCycle& cycle, int k, double alpha);

}  // namespace hzn
