#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

namespace hzn {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kTwoPi = 6.283185307179586476925286766559005768;
inline constexpr double kEulerGamma = 0.577215664901532860606512090082402431;

// A complex value together with a heuristic absolute-error estimate.
struct ComplexValue {
    cplx value{0.0, 0.0};
    double err = 0.0;
};

struct SeriesConfig {
    double abs_tol = 1e-13;
    std::int64_t max_terms = 2'000'000;
    int parts_depth = 2;

    void validate() const;
};

// Default configuration, with HZN_TOL / HZN_MAX_TERMS overrides applied.
SeriesConfig default_series_config();

struct QuadratureRule {
    enum class Kind { FinitePanel, HalfLineExponential };
    std::vector<double> nodes;    // on [-1, 1], strictly increasing
    std::vector<double> weights;  // strictly positive
    Kind kind = Kind::FinitePanel;
};

// n-point Gauss-Legendre rule on [-1, 1].
QuadratureRule gauss_legendre(int n, QuadratureRule::Kind kind = QuadratureRule::Kind::FinitePanel);

// Neumaier-compensated complex accumulator.
class KahanSum {
public:
    void add(cplx x) {
        re_.add(x.real());
        im_.add(x.imag());
    }
    cplx value() const { return {re_.value(), im_.value()}; }

private:
    struct Part {
        double s = 0.0, c = 0.0;
        void add(double x) {
            double t = s + x;
            if (std::abs(s) >= std::abs(x))
                c += (s - t) + x;
            else
                c += (x - t) + s;
            s = t;
        }
        double value() const { return s + c; }
    };
    Part re_, im_;
};

// e^{2 pi i t} with the argument reduced mod 1 in extended precision.
cplx expi2pi(long double t);

using CoeffFn = std::function<cplx(std::int64_t)>;

// Sum_{q >= 0} e^{2 pi i beta q} coeff(q) by partial sums plus a
// summation-by-parts tail of depth cfg.parts_depth; N doubles until two
// successive estimates agree to cfg.abs_tol.
ComplexValue sum_phased(const CoeffFn& coeff, double beta, const SeriesConfig& cfg = default_series_config());

using RealFn = std::function<cplx(double)>;

// Adaptive panel quadrature of f on [a, b]; error from panel-vs-halves.
ComplexValue quad_panel(const RealFn& f, double a, double b, const QuadratureRule& rule,
                        double abs_tol = 1e-13);

// Integral of f over (0, inf) by geometric panels [2^j s, 2^{j+1} s] in both
// directions from s = scale.
ComplexValue quad_halfline(const RealFn& f, double scale, const QuadratureRule& rule,
                           double abs_tol = 1e-13);

}  // namespace hzn
