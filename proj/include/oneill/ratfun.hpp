#pragma once

#include <optional>
#include <string>
#include <utility>

#include "oneill/poly.hpp"

namespace oneill {

/// Try to divide `num` by `den` exactly (single-divisor reduction in the lex
/// term order). Returns the quotient iff the remainder is zero.
inline std::optional<Poly> try_exact_divide(const Poly& num, const Poly& den) {
    if (den.is_zero()) return std::nullopt;
    if (den.is_constant()) return den.constant_value().inverse() * num;
    Poly r = num;
    Poly q(num.chart());
    const auto& lead = *den.terms().rbegin();  // largest exponent vector in lex order
    const int dim = num.chart()->dim();
    int guard = 0;
    while (!r.is_zero()) {
        if (++guard > 20000) return std::nullopt;
        const auto& [re, rc] = *r.terms().rbegin();
        Exponents qe(dim);
        for (int i = 0; i < dim; ++i) {
            qe[i] = re[i] - lead.first[i];
            if (qe[i] < 0) return std::nullopt;
        }
        Poly qt(num.chart());
        qt.add_term(qe, rc / lead.second);
        q += qt;
        r -= qt * den;
    }
    return q;
}

/// Quotient of polynomials on a shared chart. The denominator is never
/// identically zero; values are defined wherever it does not vanish.
/// Normalization is light: constant denominators are folded into the
/// numerator and exact cancellations of the whole denominator are taken when
/// they exist, which keeps the metric-inverse and projector algebra from
/// accumulating spurious factors.
class RatFun {
public:
    RatFun() = default;
    RatFun(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
        require_same_chart(num_.chart(), den_.chart());
        if (den_.is_zero()) throw input_error("rational function with zero denominator");
        normalize();
    }
    RatFun(const Poly& num)  // NOLINT: implicit
        : num_(num), den_(Poly::constant(num.chart(), FieldElem(1))) {}

    static RatFun constant(const ChartPtr& chart, const FieldElem& c) {
        return RatFun(Poly::constant(chart, c));
    }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    const ChartPtr& chart() const { return num_.chart(); }

    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.is_constant(); }
    Poly as_poly() const {
        if (!is_polynomial()) throw input_error("rational function is not polynomial");
        return den_.constant_value().inverse() * num_;
    }

    RatFun operator-() const { return RatFun(raw{}, -num_, den_); }

    friend RatFun operator+(const RatFun& x, const RatFun& y) {
        if (x.den_ == y.den_) return RatFun(x.num_ + y.num_, x.den_);
        return RatFun(x.num_ * y.den_ + y.num_ * x.den_, x.den_ * y.den_);
    }
    friend RatFun operator-(const RatFun& x, const RatFun& y) {
        if (x.den_ == y.den_) return RatFun(x.num_ - y.num_, x.den_);
        return RatFun(x.num_ * y.den_ - y.num_ * x.den_, x.den_ * y.den_);
    }
    friend RatFun operator*(const RatFun& x, const RatFun& y) {
        return RatFun(x.num_ * y.num_, x.den_ * y.den_);
    }
    friend RatFun operator*(const FieldElem& c, const RatFun& x) {
        if (c.is_zero()) return constant(x.chart(), FieldElem(0));
        return RatFun(raw{}, c * x.num_, x.den_);
    }
    friend RatFun operator/(const RatFun& x, const RatFun& y) {
        if (y.is_zero()) throw input_error("division by zero rational function");
        return RatFun(x.num_ * y.den_, x.den_ * y.num_);
    }

    RatFun& operator+=(const RatFun& y) { return *this = *this + y; }
    RatFun& operator-=(const RatFun& y) { return *this = *this - y; }
    RatFun& operator*=(const RatFun& y) { return *this = *this * y; }
    RatFun& operator/=(const RatFun& y) { return *this = *this / y; }

    /// Structural equality after normalization; use `(x - y).is_zero()` for
    /// mathematical equality (exact since x - y re-normalizes).
    friend bool operator==(const RatFun& x, const RatFun& y) { return (x - y).is_zero(); }
    friend bool operator!=(const RatFun& x, const RatFun& y) { return !(x == y); }

    RatFun differentiate(int var) const {
        if (is_polynomial()) return RatFun(raw{}, num_.differentiate(var), den_);
        Poly dn = num_.differentiate(var) * den_ - num_ * den_.differentiate(var);
        return RatFun(std::move(dn), den_ * den_);
    }

    FieldElem evaluate(const std::vector<FieldElem>& x) const {
        FieldElem d = den_.evaluate(x);
        if (d.is_zero()) throw eval_error("denominator vanishes at evaluation point");
        return num_.evaluate(x) / d;
    }
    FieldElem evaluate(const Point& pt) const {
        FieldElem d = den_.evaluate(pt.field_coords());
        if (d.is_zero())
            throw eval_error("denominator vanishes at evaluation point", pt.str());
        return num_.evaluate(pt.field_coords()) / d;
    }

    double evaluate_d(const std::vector<double>& x) const {
        double d = den_.evaluate_d(x);
        if (d == 0.0) throw eval_error("denominator vanishes at evaluation point");
        return num_.evaluate_d(x) / d;
    }

    std::string str() const {
        if (is_polynomial()) return as_poly().str();
        return "(" + num_.str() + ") / (" + den_.str() + ")";
    }

private:
    struct raw {};  // tag: caller guarantees den already normalized
    RatFun(raw, Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {}

    void normalize() {
        if (num_.is_zero()) {
            den_ = Poly::constant(num_.chart(), FieldElem(1));
            return;
        }
        if (den_.is_constant()) {
            num_ = den_.constant_value().inverse() * num_;
            den_ = Poly::constant(num_.chart(), FieldElem(1));
            return;
        }
        if (auto q = try_exact_divide(num_, den_)) {
            num_ = std::move(*q);
            den_ = Poly::constant(num_.chart(), FieldElem(1));
            return;
        }
        // Canonical leading coefficient 1 in the denominator.
        const FieldElem& lead = den_.terms().rbegin()->second;
        if (!(lead == FieldElem(1))) {
            FieldElem inv = lead.inverse();
            num_ = inv * num_;
            den_ = inv * den_;
        }
    }

    Poly num_, den_;
};

}  // namespace oneill
