#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <vector>

#include "zetaglue/numerics.hpp"

namespace zetaglue {

using Rational = boost::multiprecision::cpp_rational;

// Exact Gaussian-rational coefficient re + i*im.
struct GaussianRational {
    Rational re{0}, im{0};
    GaussianRational() = default;
    GaussianRational(long n) : re(n) {}
    GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
    static GaussianRational i() { return {Rational(0), Rational(1)}; }
    bool is_zero() const { return re == 0 && im == 0; }
    GaussianRational operator+(const GaussianRational& o) const { return {re + o.re, im + o.im}; }
    GaussianRational operator-(const GaussianRational& o) const { return {re - o.re, im - o.im}; }
    GaussianRational operator*(const GaussianRational& o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }
    GaussianRational operator*(const Rational& s) const { return {re * s, im * s}; }
    bool operator==(const GaussianRational& o) const { return re == o.re && im == o.im; }
    Complex to_complex() const { return {static_cast<double>(re), static_cast<double>(im)}; }
};

// coeff * xi^a * (xi^2+t)^{-b/2} * prod_i V^{(d_i)}(y); v_factors kept sorted.
struct SymbolTerm {
    GaussianRational coeff;
    int xi_power = 0;    // a
    int root_power = 0;  // b (denominator exponent on (xi^2+t)^{1/2})
    std::vector<int> v_factors;
    // homogeneity order in xi (V-factors count as order 0)
    int order() const { return xi_power - root_power; }
};

// Canonically sorted, merged term list.
struct Symbol {
    std::vector<SymbolTerm> terms;
    bool is_zero() const { return terms.empty(); }
};

Symbol symbol_add(const Symbol& a, const Symbol& b);
Symbol symbol_mul(const Symbol& a, const Symbol& b);
Symbol symbol_scale(const Symbol& a, const GaussianRational& c);
Symbol symbol_dxi(const Symbol& a);
Symbol symbol_dy(const Symbol& a);  // D_y = -i d/dy
void canonicalize(Symbol& s);

// orders[k] holds q_{1-k}; orders[0] = q_1 = (xi^2+t)^{1/2}.
struct SymbolExpansion {
    std::vector<Symbol> orders;
};

// Exact symbol recursion for the one-sided map of -d_u^2 - d_y^2 + V(y) + t;
// the potential enters only through formal derivative factors, so the
// recursion itself takes just the depth.
SymbolExpansion ricatti_expansion(int depth);

// V(y) = constant + sum_k (a_k cos(k y) + b_k sin(k y))
struct TrigPolynomial {
    double constant = 0.0;
    struct Mode {
        int k;
        double cos_coeff;
        double sin_coeff;
    };
    std::vector<Mode> modes;
    double derivative(int order, double y) const;
};

Complex evaluate_symbol(const Symbol& s, const TrigPolynomial& potential, double y, double xi,
                        double t);
Complex evaluate_expansion_sum(const SymbolExpansion& e, const TrigPolynomial& potential, double y,
                               double xi, double t);

// Plain-text rendering for golden files, e.g. "1/2 V (xi^2+t)^{-1/2}".
std::string symbol_to_string(const Symbol& s);

// Numerical signature of the smoothing remainder: the sup over fibers of
// |Q_cyl(lambda; t) - sqrt(lambda+t)| (1+lambda)^{N/2} sits at small lambda
// and decreases beyond it.
struct SmoothingReport {
    struct Row {
        double lambda;
        double remainder;
        double weighted;
    };
    std::vector<Row> rows;
    double sup_lambda = 0.0;
    double sup_weighted = 0.0;
    bool decreasing_after_sup = false;
};
SmoothingReport smoothing_decay_check(double length, double t, double cutoff, int weight_order);

}  // namespace zetaglue
