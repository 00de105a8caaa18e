#pragma once

#include <cmath>
#include <string>

#include "oneill/rational.hpp"

namespace oneill {

/// Element a + b*sqrt(d) of the real quadratic field Q[sqrt(d)], d a
/// square-free positive integer (default 2). Elements carry their radicand;
/// purely rational values combine with any radicand.
class FieldElem {
public:
    FieldElem() : a_(0), b_(0), d_(2) {}
    FieldElem(Rational a) : a_(std::move(a)), b_(0), d_(2) {}  // NOLINT: implicit
    FieldElem(long a) : a_(make_rational(a)), b_(0), d_(2) {}  // NOLINT: implicit
    FieldElem(Rational a, Rational b, int d = 2)
        : a_(std::move(a)), b_(std::move(b)), d_(d) {
        if (d_ <= 0) throw input_error("radicand must be positive");
    }

    static FieldElem sqrt_d(int d = 2) { return FieldElem(Rational(0), Rational(1), d); }

    const Rational& rational_part() const { return a_; }
    const Rational& radical_part() const { return b_; }
    int radicand() const { return d_; }

    bool is_zero() const { return a_ == 0 && b_ == 0; }
    bool is_rational() const { return b_ == 0; }

    /// Field norm a^2 - d*b^2; zero only for the zero element.
    Rational norm() const { return a_ * a_ - d_ * b_ * b_; }

    FieldElem conjugate() const { return FieldElem(a_, -b_, d_); }

    FieldElem operator-() const { return FieldElem(-a_, -b_, d_); }

    friend FieldElem operator+(const FieldElem& x, const FieldElem& y) {
        int d = unify(x, y);
        return FieldElem(x.a_ + y.a_, x.b_ + y.b_, d);
    }
    friend FieldElem operator-(const FieldElem& x, const FieldElem& y) {
        int d = unify(x, y);
        return FieldElem(x.a_ - y.a_, x.b_ - y.b_, d);
    }
    friend FieldElem operator*(const FieldElem& x, const FieldElem& y) {
        int d = unify(x, y);
        return FieldElem(x.a_ * y.a_ + d * x.b_ * y.b_, x.a_ * y.b_ + x.b_ * y.a_, d);
    }
    friend FieldElem operator/(const FieldElem& x, const FieldElem& y) {
        return x * y.inverse();
    }

    FieldElem& operator+=(const FieldElem& y) { return *this = *this + y; }
    FieldElem& operator-=(const FieldElem& y) { return *this = *this - y; }
    FieldElem& operator*=(const FieldElem& y) { return *this = *this * y; }
    FieldElem& operator/=(const FieldElem& y) { return *this = *this / y; }

    FieldElem inverse() const {
        if (is_zero()) throw input_error("inverse of zero field element");
        Rational n = norm();
        return FieldElem(a_ / n, -b_ / n, d_);
    }

    FieldElem pow(unsigned e) const {
        FieldElem r(Rational(1), Rational(0), d_);
        FieldElem base = *this;
        for (; e; e >>= 1) {
            if (e & 1) r = r * base;
            if (e > 1) base = base * base;
        }
        return r;
    }

    friend bool operator==(const FieldElem& x, const FieldElem& y) {
        if (x.a_ != y.a_) return false;
        if (x.b_ == 0 && y.b_ == 0) return true;
        return x.b_ == y.b_ && x.d_ == y.d_;
    }
    friend bool operator!=(const FieldElem& x, const FieldElem& y) { return !(x == y); }

    /// Exact sign of a + b*sqrt(d).
    int sign() const {
        int sa = sgn(a_), sb = sgn(b_);
        if (sb == 0) return sa;
        if (sa == 0) return sb;
        if (sa == sb) return sa;
        // Opposite signs: compare a^2 with d*b^2.
        int c = cmp(a_ * a_, d_ * b_ * b_);
        if (c == 0) return 0;  // cannot happen for square-free d, kept for safety
        return c > 0 ? sa : sb;
    }

    double to_double() const { return a_.get_d() + b_.get_d() * std::sqrt(double(d_)); }

    double abs_double() const { return std::fabs(to_double()); }

    std::string str() const {
        if (b_ == 0) return a_.get_str();
        std::string rad = radical_str();
        if (a_ == 0) return rad;
        if (sgn(b_) > 0) return "(" + a_.get_str() + " + " + rad + ")";
        return "(" + a_.get_str() + " - " + FieldElem(Rational(0), -b_, d_).radical_str() + ")";
    }

private:
    std::string radical_str() const {
        if (b_ == 1) return "sqrt_d";
        if (b_ == -1) return "-sqrt_d";
        return b_.get_str() + "*sqrt_d";
    }

    static int unify(const FieldElem& x, const FieldElem& y) {
        if (x.b_ == 0) return y.d_;
        if (y.b_ == 0) return x.d_;
        if (x.d_ != y.d_) throw input_error("mixed radicands in field arithmetic");
        return x.d_;
    }

    Rational a_, b_;
    int d_;
};

inline FieldElem operator*(long c, const FieldElem& x) { return FieldElem(c) * x; }

}  // namespace oneill
