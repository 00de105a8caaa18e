#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "oneill/chart.hpp"
#include "oneill/field_elem.hpp"

namespace oneill {

using Exponents = std::vector<int>;

/// Multivariate polynomial over Q[sqrt(d)] in the variables of a chart.
/// Terms are kept in a map from exponent vectors to nonzero coefficients, so
/// iteration order (and hence printing) is deterministic.
class Poly {
public:
    Poly() = default;
    explicit Poly(ChartPtr chart) : chart_(std::move(chart)) {}
    Poly(ChartPtr chart, const FieldElem& c) : chart_(std::move(chart)) {
        if (!c.is_zero()) terms_[Exponents(chart_->dim(), 0)] = c;
    }

    static Poly constant(ChartPtr chart, const FieldElem& c) { return Poly(std::move(chart), c); }
    static Poly variable(ChartPtr chart, int var_index) {
        Poly p(chart);
        if (var_index < 0 || var_index >= p.chart_->dim())
            throw input_error("variable index out of range");
        Exponents e(p.chart_->dim(), 0);
        e[var_index] = 1;
        p.terms_[e] = FieldElem(1);
        return p;
    }
    static Poly variable(const ChartPtr& chart, const std::string& name) {
        int i = chart->index_of(name);
        if (i < 0) throw input_error("unknown variable: " + name);
        return variable(chart, i);
    }

    const ChartPtr& chart() const { return chart_; }
    const std::map<Exponents, FieldElem>& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const {
        return terms_.empty() ||
               (terms_.size() == 1 && terms_.begin()->first == Exponents(chart_->dim(), 0));
    }
    FieldElem constant_value() const {
        if (terms_.empty()) return FieldElem(0);
        if (!is_constant()) throw input_error("polynomial is not constant");
        return terms_.begin()->second;
    }

    int total_degree() const {
        int d = 0;
        for (const auto& [e, c] : terms_) {
            int t = 0;
            for (int k : e) t += k;
            d = std::max(d, t);
        }
        return d;
    }

    size_t term_count() const { return terms_.size(); }

    void add_term(const Exponents& e, const FieldElem& c) {
        if (c.is_zero()) return;
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(e, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    Poly operator-() const {
        Poly r(chart_);
        for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
        return r;
    }

    friend Poly operator+(const Poly& x, const Poly& y) {
        require_same_chart(x.chart_, y.chart_);
        Poly r = x;
        for (const auto& [e, c] : y.terms_) r.add_term(e, c);
        return r;
    }
    friend Poly operator-(const Poly& x, const Poly& y) {
        require_same_chart(x.chart_, y.chart_);
        Poly r = x;
        for (const auto& [e, c] : y.terms_) r.add_term(e, -c);
        return r;
    }
    friend Poly operator*(const Poly& x, const Poly& y) {
        require_same_chart(x.chart_, y.chart_);
        Poly r(x.chart_);
        const int dim = x.chart_->dim();
        Exponents e(dim);
        for (const auto& [ex, cx] : x.terms_)
            for (const auto& [ey, cy] : y.terms_) {
                for (int i = 0; i < dim; ++i) e[i] = ex[i] + ey[i];
                r.add_term(e, cx * cy);
            }
        return r;
    }
    friend Poly operator*(const FieldElem& c, const Poly& x) {
        Poly r(x.chart_);
        if (c.is_zero()) return r;
        for (const auto& [e, cx] : x.terms_) r.terms_.emplace(e, c * cx);
        return r;
    }

    Poly& operator+=(const Poly& y) { return *this = *this + y; }
    Poly& operator-=(const Poly& y) { return *this = *this - y; }
    Poly& operator*=(const Poly& y) { return *this = *this * y; }

    Poly pow(unsigned n) const {
        Poly r = constant(chart_, FieldElem(1));
        Poly base = *this;
        for (; n; n >>= 1) {
            if (n & 1) r = r * base;
            if (n > 1) base = base * base;
        }
        return r;
    }

    friend bool operator==(const Poly& x, const Poly& y) {
        return *x.chart_ == *y.chart_ && x.terms_ == y.terms_;
    }
    friend bool operator!=(const Poly& x, const Poly& y) { return !(x == y); }

    /// Exact partial derivative with respect to chart variable `var`.
    Poly differentiate(int var) const {
        if (var < 0 || var >= chart_->dim()) throw input_error("variable index out of range");
        Poly r(chart_);
        for (const auto& [e, c] : terms_) {
            if (e[var] == 0) continue;
            Exponents f = e;
            f[var] -= 1;
            r.add_term(f, FieldElem(e[var]) * c);
        }
        return r;
    }
    Poly differentiate(const std::string& var) const {
        int i = chart_->index_of(var);
        if (i < 0) throw input_error("unknown variable: " + var);
        return differentiate(i);
    }

    /// Exact evaluation at coordinates from the same field.
    FieldElem evaluate(const std::vector<FieldElem>& x) const {
        if (static_cast<int>(x.size()) != chart_->dim())
            throw input_error("point dimension does not match chart");
        FieldElem acc(0);
        for (const auto& [e, c] : terms_) {
            FieldElem t = c;
            for (int i = 0; i < chart_->dim(); ++i)
                if (e[i]) t = t * x[i].pow(static_cast<unsigned>(e[i]));
            acc += t;
        }
        return acc;
    }
    FieldElem evaluate(const Point& pt) const { return evaluate(pt.field_coords()); }

    double evaluate_d(const std::vector<double>& x) const {
        if (static_cast<int>(x.size()) != chart_->dim())
            throw input_error("point dimension does not match chart");
        double acc = 0;
        for (const auto& [e, c] : terms_) {
            double t = c.to_double();
            for (int i = 0; i < chart_->dim(); ++i)
                for (int k = 0; k < e[i]; ++k) t *= x[i];
            acc += t;
        }
        return acc;
    }

    /// Canonical rendering in the scenario expression grammar.
    std::string str() const {
        if (terms_.empty()) return "0";
        std::string out;
        bool first = true;
        for (const auto& [e, c] : terms_) {
            std::string cs = c.str();
            bool neg = !first && cs.size() && cs[0] == '-' && cs.find('(') == std::string::npos;
            if (first) {
                first = false;
            } else {
                out += neg ? " - " : " + ";
                if (neg) cs = cs.substr(1);
            }
            std::string mon = monomial_str(e);
            if (mon.empty()) {
                out += cs;
            } else if (cs == "1") {
                out += mon;
            } else if (cs == "-1") {
                out += "-" + mon;
            } else {
                out += cs + "*" + mon;
            }
        }
        return out;
    }

private:
    std::string monomial_str(const Exponents& e) const {
        std::string s;
        for (int i = 0; i < chart_->dim(); ++i) {
            if (!e[i]) continue;
            if (!s.empty()) s += "*";
            s += chart_->var(i);
            if (e[i] > 1) s += "^" + std::to_string(e[i]);
        }
        return s;
    }

    ChartPtr chart_;
    std::map<Exponents, FieldElem> terms_;
};

}  // namespace oneill
