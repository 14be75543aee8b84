#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace hzn {

using BigInt = boost::multiprecision::cpp_int;

// (P + sqrt(D)) / Q with Q | (D - P^2).
struct QuadIrr {
    std::int64_t P = 0;
    std::int64_t Q = 1;
    std::int64_t D = 2;

    double value() const;
    double conj_value() const;
    // (P - sqrt(D)) / Q, rewritten as (-P + sqrt(D)) / (-Q).
    QuadIrr conjugate() const;
    // Reduced surd form, e.g. "(3+sqrt(3))/2".
    std::string str() const;

    bool operator==(const QuadIrr&) const = default;
};

// Sign of a + s sqrt(D), exact.
int surd_sign(std::int64_t a, std::int64_t s, std::int64_t D);

// w > 1 > w' > 0.
bool is_reduced(const QuadIrr& w);
// x > 1 and -1 < x' < 0.
bool is_wide_reduced(const QuadIrr& x);

// w -> 1 / (b - w) with b = ceil(w); returns the digit.
std::int64_t minus_step(QuadIrr& w);
// x -> 1 / (x - a) with a = floor(x); returns the digit.
std::int64_t plus_step(QuadIrr& x);

struct MinusCycle {
    std::vector<std::int64_t> digits;  // canonical rotation
    std::vector<QuadIrr> reds;         // w_1, ..., w_r with w_j = b_j - 1 / w_{j+1}
};

// Indefinite form (y + x w)(y + x w') / (w - w'), discriminant 1.
struct IndefForm {
    double w = 0.0;
    double wprime = 0.0;
    QuadIrr root;

    // Q(p, q).
    double operator()(double p, double q) const;
    // Coefficients of a p^2 + b p q + c q^2.
    double a() const { return w * wprime / (w - wprime); }
    double b() const { return (w + wprime) / (w - wprime); }
    double c() const { return 1.0 / (w - wprime); }
};

struct FieldData {
    std::int64_t D = 0;
    // epsilon = (t + u sqrt(D)) / 2
    BigInt eps_t;
    BigInt eps_u;
    int norm_eps = 1;
    BigInt norm_eps_minus_1;

    double epsilon() const;
};

bool is_fundamental_discriminant(std::int64_t D);

FieldData fundamental_unit(std::int64_t D);

// Purely periodic digits of a reduced w, canonical (lexicographically minimal)
// rotation; the returned reds start at the matching rotation.
MinusCycle minus_cf(const QuadIrr& w);

// All reduced numbers of discriminant D, split into cycles. The principal
// class comes first, the rest in lexicographic order of their digits.
std::vector<MinusCycle> narrow_classes(const FieldData& fd);

// All reduced (B + sqrt(D)) / (2A) with B <= b_max. Every reduced number has
// B <= (D + 1) / 2, which is the box narrow_classes uses.
std::vector<QuadIrr> reduced_numbers(std::int64_t D, std::int64_t b_max);

std::vector<QuadIrr> red_set(const MinusCycle& cycle, const FieldData& fd);

std::vector<IndefForm> forms_of(const std::vector<QuadIrr>& reds);

// Odd and even positions of the plus continued fraction cycle through
// x_1 = w_1 - 1, for w_1 in the class with first digit >= 3.
std::pair<std::vector<QuadIrr>, std::vector<QuadIrr>> wide_red_sets(const FieldData& fd, const MinusCycle& cycle);

// Index into classes of B* (the class of 1 + x_2).
std::size_t star_class(const FieldData& fd, const std::vector<MinusCycle>& classes, std::size_t index);

struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;
};

// Exact rational with denominator <= max_den within 1e-12, or NonRationalInput.
Rational to_rational(double v, std::int64_t max_den = 1'000'000);

bool in_set_S(const Rational& alpha, const Rational& beta, const FieldData& fd);
bool in_set_S(double alpha, double beta, const FieldData& fd);

}  // namespace hzn
