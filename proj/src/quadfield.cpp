#include "hzn/quadfield.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "hzn/errors.hpp"

namespace hzn {

namespace {

using i128 = __int128;

std::int64_t isqrt(std::int64_t n) {
    if (n < 0) return -1;
    auto r = static_cast<std::int64_t>(std::sqrt(static_cast<long double>(n)));
    while (static_cast<i128>(r) * r > n) --r;
    while (static_cast<i128>(r + 1) * (r + 1) <= n) ++r;
    return r;
}

bool is_square(std::int64_t n) {
    const std::int64_t r = isqrt(n);
    return r >= 0 && r * r == n;
}

int sgn(i128 v) { return (v > 0) - (v < 0); }

std::int64_t narrow(i128 v) {
    if (v > INT64_MAX || v < INT64_MIN) throw DomainError("quadfield: integer overflow");
    return static_cast<std::int64_t>(v);
}

// floor((P + sqrt(D)) / Q), exact.
std::int64_t floor_of(const QuadIrr& w) {
    auto n = static_cast<std::int64_t>(std::floor(w.value()));
    auto above = [&](std::int64_t m) {  // w - m > 0
        return sgn(w.Q) * surd_sign(narrow(static_cast<i128>(w.P) - static_cast<i128>(m) * w.Q), 1, w.D) > 0;
    };
    while (!above(n)) --n;
    while (above(n + 1)) ++n;
    return n;
}

std::vector<std::int64_t> rotate_min(const std::vector<std::int64_t>& d, std::size_t& shift) {
    shift = 0;
    std::vector<std::int64_t> best = d;
    for (std::size_t s = 1; s < d.size(); ++s) {
        std::vector<std::int64_t> r(d.begin() + s, d.end());
        r.insert(r.end(), d.begin(), d.begin() + s);
        if (r < best) {
            best = r;
            shift = s;
        }
    }
    return best;
}

}  // namespace

int surd_sign(std::int64_t a, std::int64_t s, std::int64_t D) {
    if (s == 0) return sgn(a);
    if (a == 0) return sgn(s);
    if ((a > 0) == (s > 0)) return sgn(a);
    const i128 lhs = static_cast<i128>(a) * a;
    const i128 rhs = static_cast<i128>(s) * s * D;
    return lhs > rhs ? sgn(a) : sgn(s);
}

double QuadIrr::value() const {
    const long double r = std::sqrt(static_cast<long double>(D));
    // rationalize when P + sqrt(D) cancels
    if (P < 0) return static_cast<double>((static_cast<long double>(D) - static_cast<long double>(P) * P) / ((r - P) * Q));
    return static_cast<double>((P + r) / Q);
}

double QuadIrr::conj_value() const { return conjugate().value(); }

QuadIrr QuadIrr::conjugate() const { return {-P, -Q, D}; }

std::string QuadIrr::str() const {
    std::int64_t f = 1, m = D;
    for (std::int64_t p = 2; p * p <= m; ++p)
        while (m % (p * p) == 0) {
            m /= p * p;
            f *= p;
        }
    std::int64_t a = P, b = f, q = Q;
    const std::int64_t g = std::gcd(std::gcd(a, b), q);
    a /= g;
    b /= g;
    q /= g;
    if (q < 0) {
        a = -a;
        b = -b;
        q = -q;
    }
    std::string root = "sqrt(" + std::to_string(m) + ")";
    std::string surd = (b == 1 ? "" : b == -1 ? "-" : std::to_string(b) + "*") + root;
    std::string num;
    if (a == 0) {
        num = surd;
    } else {
        num = std::to_string(a) + (b > 0 ? "+" : "") + surd;
    }
    if (q == 1) return num;
    return "(" + num + ")/" + std::to_string(q);
}

bool is_reduced(const QuadIrr& w) {
    const int s = sgn(w.Q);
    return s * surd_sign(w.P - w.Q, 1, w.D) > 0 && s * surd_sign(w.P, -1, w.D) > 0 &&
           s * surd_sign(w.P - w.Q, -1, w.D) < 0;
}

bool is_wide_reduced(const QuadIrr& x) {
    const int s = sgn(x.Q);
    return s * surd_sign(x.P - x.Q, 1, x.D) > 0 && s * surd_sign(x.P, -1, x.D) < 0 &&
           s * surd_sign(x.P + x.Q, -1, x.D) > 0;
}

std::int64_t minus_step(QuadIrr& w) {
    const std::int64_t b = floor_of(w) + 1;
    const i128 p = static_cast<i128>(b) * w.Q - w.P;
    const i128 num = p * p - w.D;
    if (num % w.Q != 0) throw DomainError("quadfield: Q does not divide D - P^2");
    w = {narrow(p), narrow(num / w.Q), w.D};
    return b;
}

std::int64_t plus_step(QuadIrr& x) {
    const std::int64_t a = floor_of(x);
    const i128 p = static_cast<i128>(a) * x.Q - x.P;
    const i128 num = x.D - p * p;
    if (num % x.Q != 0) throw DomainError("quadfield: Q does not divide D - P^2");
    x = {narrow(p), narrow(num / x.Q), x.D};
    return a;
}

double IndefForm::operator()(double p, double q) const { return (q + p * w) * (q + p * wprime) / (w - wprime); }

double FieldData::epsilon() const {
    return (eps_t.convert_to<double>() + eps_u.convert_to<double>() * std::sqrt(static_cast<double>(D))) / 2.0;
}

bool is_fundamental_discriminant(std::int64_t D) {
    if (D <= 1 || is_square(D)) return false;
    auto squarefree = [](std::int64_t n) {
        for (std::int64_t p = 2; p * p <= n; ++p)
            if (n % (p * p) == 0) return false;
        return true;
    };
    if (D % 4 == 1) return squarefree(D);
    if (D % 4 != 0) return false;
    const std::int64_t m = D / 4;
    return (m % 4 == 2 || m % 4 == 3) && squarefree(m);
}

FieldData fundamental_unit(std::int64_t D) {
    if (!is_fundamental_discriminant(D))
        throw NotFundamentalDiscriminant("fundamental_unit: " + std::to_string(D) + " is not a fundamental discriminant");
    // theta = omega + n with omega = (D mod 4 + sqrt(D)) / 2, shifted so that
    // theta is reduced in the wide sense; its plus expansion is purely periodic.
    const std::int64_t p0 = D % 4;
    const std::int64_t n = (isqrt(D) - p0) / 2;  // floor((sqrt(D) - p0) / 2)
    const QuadIrr theta{p0 + 2 * n, 2, D};
    if (!is_wide_reduced(theta)) throw DomainError("fundamental_unit: start value is not reduced");
    BigInt q_prev = 1, q = 0;  // q_{-2}, q_{-1}
    QuadIrr x = theta;
    int m = 0;
    do {
        const std::int64_t a = plus_step(x);
        BigInt next = BigInt(a) * q + q_prev;
        q_prev = q;
        q = next;
        ++m;
    } while (!(x == theta));
    FieldData fd;
    fd.D = D;
    fd.eps_u = q;
    fd.eps_t = q * theta.P + 2 * q_prev;
    const BigInt norm4 = fd.eps_t * fd.eps_t - BigInt(D) * fd.eps_u * fd.eps_u;
    if (norm4 != 4 && norm4 != -4) throw DomainError("fundamental_unit: unit norm check failed");
    fd.norm_eps = norm4 > 0 ? 1 : -1;
    if (fd.norm_eps != (m % 2 == 0 ? 1 : -1)) throw DomainError("fundamental_unit: period parity mismatch");
    fd.norm_eps_minus_1 = BigInt(fd.norm_eps) - fd.eps_t + 1;
    return fd;
}

MinusCycle minus_cf(const QuadIrr& w) {
    if (!is_reduced(w)) throw NotReduced("minus_cf: " + w.str() + " is not reduced");
    std::vector<std::int64_t> digits;
    std::vector<QuadIrr> reds;
    QuadIrr x = w;
    do {
        reds.push_back(x);
        digits.push_back(minus_step(x));
        if (digits.size() > 1'000'000) throw DomainError("minus_cf: cycle not found");
    } while (!(x == w));
    std::size_t shift = 0;
    MinusCycle c;
    c.digits = rotate_min(digits, shift);
    std::rotate(reds.begin(), reds.begin() + shift, reds.end());
    c.reds = std::move(reds);
    return c;
}

std::vector<QuadIrr> reduced_numbers(std::int64_t D, std::int64_t b_max) {
    // (B + sqrt(D)) / (2A) is reduced iff A, C > 0 and A + C < B where
    // B^2 - 4AC = D. With d = A - C this forces d^2 < D and S = A + C with
    // S^2 = B^2 - D + d^2.
    std::vector<QuadIrr> out;
    const std::int64_t r = isqrt(D);
    for (std::int64_t B = r + 1; B <= b_max; ++B) {
        if ((B - D) % 2 != 0) continue;
        for (std::int64_t d = -r; d <= r; ++d) {
            if (d * d >= D) continue;
            const std::int64_t s2 = narrow(static_cast<i128>(B) * B - D + static_cast<i128>(d) * d);
            if (!is_square(s2)) continue;
            const std::int64_t S = isqrt(s2);
            if ((S - d) % 2 != 0 || S >= B) continue;
            const std::int64_t A = (S + d) / 2, C = (S - d) / 2;
            if (A <= 0 || C <= 0) continue;
            QuadIrr w{B, 2 * A, D};
            if (is_reduced(w)) out.push_back(w);
        }
    }
    return out;
}

std::vector<MinusCycle> narrow_classes(const FieldData& fd) {
    const std::vector<QuadIrr> all = reduced_numbers(fd.D, (fd.D + 1) / 2);
    auto key = [](const QuadIrr& w) { return std::make_pair(w.P, w.Q); };
    std::set<std::pair<std::int64_t, std::int64_t>> seen;
    std::vector<MinusCycle> cycles;
    for (const QuadIrr& w : all) {
        if (seen.count(key(w))) continue;
        MinusCycle c = minus_cf(w);
        for (const QuadIrr& v : c.reds) seen.insert(key(v));
        cycles.push_back(std::move(c));
    }
    auto principal = [](const MinusCycle& c) {
        return std::any_of(c.reds.begin(), c.reds.end(), [](const QuadIrr& w) { return w.Q == 2; });
    };
    std::sort(cycles.begin(), cycles.end(), [&](const MinusCycle& a, const MinusCycle& b) {
        const bool pa = principal(a), pb = principal(b);
        if (pa != pb) return pa;
        return a.digits < b.digits;
    });
    return cycles;
}

std::vector<QuadIrr> red_set(const MinusCycle& cycle, const FieldData& fd) {
    for (const QuadIrr& w : cycle.reds)
        if (w.D != fd.D) throw DomainError("red_set: cycle belongs to another discriminant");
    return cycle.reds;
}

std::vector<IndefForm> forms_of(const std::vector<QuadIrr>& reds) {
    std::vector<IndefForm> out;
    out.reserve(reds.size());
    for (const QuadIrr& w : reds) {
        if (!is_reduced(w)) throw NotReduced("forms_of: " + w.str() + " is not reduced");
        out.push_back({w.value(), w.conj_value(), w});
    }
    return out;
}

std::pair<std::vector<QuadIrr>, std::vector<QuadIrr>> wide_red_sets(const FieldData& fd, const MinusCycle& cycle) {
    const std::vector<QuadIrr> reds = red_set(cycle, fd);
    std::size_t j = 0;
    while (j < cycle.digits.size() && cycle.digits[j] < 3) ++j;
    if (j == cycle.digits.size()) throw DegenerateCycle("wide_red_sets: every digit equals 2");
    const QuadIrr& w1 = reds[j];
    const QuadIrr x1{w1.P - w1.Q, w1.Q, w1.D};
    if (!is_wide_reduced(x1)) throw DegenerateCycle("wide_red_sets: w_1 - 1 is not reduced in the wide sense");
    std::vector<QuadIrr> xs;
    QuadIrr x = x1;
    do {
        xs.push_back(x);
        plus_step(x);
        if (xs.size() > 1'000'000) throw DomainError("wide_red_sets: cycle not found");
    } while (!(x == x1));
    if (xs.size() % 2 != 0)
        throw DegenerateCycle("wide_red_sets: odd plus period " + std::to_string(xs.size()) + " cannot be split");
    std::vector<QuadIrr> odd, even;
    for (std::size_t i = 0; i < xs.size(); ++i) (i % 2 == 0 ? odd : even).push_back(xs[i]);
    return {odd, even};
}

std::size_t star_class(const FieldData& fd, const std::vector<MinusCycle>& classes, std::size_t index) {
    const auto wide = wide_red_sets(fd, classes.at(index));
    const QuadIrr& x2 = wide.second.front();
    const QuadIrr w{x2.P + x2.Q, x2.Q, x2.D};
    for (std::size_t i = 0; i < classes.size(); ++i)
        for (const QuadIrr& v : classes[i].reds)
            if (v == w) return i;
    throw DegenerateCycle("star_class: 1 + x_2 lies in no enumerated class");
}

Rational to_rational(double v, std::int64_t max_den) {
    if (!std::isfinite(v)) throw NonRationalInput("to_rational: non-finite input");
    // continued fraction convergents
    long double x = v;
    std::int64_t h0 = 0, h1 = 1, k0 = 1, k1 = 0;
    for (int it = 0; it < 64; ++it) {
        const long double a = std::floor(x);
        if (std::fabs(a) > 9e15) break;
        const auto ai = static_cast<std::int64_t>(a);
        const std::int64_t h2 = narrow(static_cast<i128>(ai) * h1 + h0);
        const std::int64_t k2 = narrow(static_cast<i128>(ai) * k1 + k0);
        if (k2 > max_den) break;
        h0 = h1;
        h1 = h2;
        k0 = k1;
        k1 = k2;
        if (std::fabs(v - static_cast<double>(h1) / static_cast<double>(k1)) <= 1e-12 * std::max(1.0, std::fabs(v)))
            return {h1, k1};
        const long double frac = x - a;
        if (frac == 0.0L) break;
        x = 1.0L / frac;
    }
    throw NonRationalInput("to_rational: " + std::to_string(v) + " is not a rational with small denominator");
}

bool in_set_S(const Rational& alpha, const Rational& beta, const FieldData& fd) {
    auto ok = [&](const Rational& r) {
        if (r.den == 0) throw NonRationalInput("in_set_S: zero denominator");
        const std::int64_t g = std::gcd(r.num, r.den);
        const BigInt den = BigInt(r.den / g);
        return (fd.norm_eps_minus_1 % den) == 0;
    };
    return ok(alpha) && ok(beta);
}

bool in_set_S(double alpha, double beta, const FieldData& fd) {
    return in_set_S(to_rational(alpha), to_rational(beta), fd);
}

}  // namespace hzn
