#pragma once

#include <memory>
#include <string>
#include <unordered_set>
#include <vector>

#include "oneill/errors.hpp"
#include "oneill/field_elem.hpp"

namespace oneill {

/// Coordinate chart: an ordered list of unique variable names.
class Chart {
public:
    explicit Chart(std::vector<std::string> vars) : vars_(std::move(vars)) {
        std::unordered_set<std::string> seen;
        for (const auto& v : vars_)
            if (!seen.insert(v).second) throw input_error("duplicate chart variable: " + v);
        if (vars_.empty()) throw input_error("empty chart");
    }

    int dim() const { return static_cast<int>(vars_.size()); }
    const std::vector<std::string>& vars() const { return vars_; }
    const std::string& var(int i) const { return vars_.at(i); }

    int index_of(const std::string& name) const {
        for (int i = 0; i < dim(); ++i)
            if (vars_[i] == name) return i;
        return -1;
    }

    friend bool operator==(const Chart& x, const Chart& y) { return x.vars_ == y.vars_; }
    friend bool operator!=(const Chart& x, const Chart& y) { return !(x == y); }

private:
    std::vector<std::string> vars_;
};

using ChartPtr = std::shared_ptr<const Chart>;

inline ChartPtr make_chart(std::vector<std::string> vars) {
    return std::make_shared<const Chart>(std::move(vars));
}

/// Chart of the standard contact manifold R^{2n+1}: (x1..xn, y1..yn, z).
inline ChartPtr sasakian_chart(int n) {
    std::vector<std::string> v;
    for (int i = 1; i <= n; ++i) v.push_back("x" + std::to_string(i));
    for (int i = 1; i <= n; ++i) v.push_back("y" + std::to_string(i));
    v.push_back("z");
    return make_chart(std::move(v));
}

inline void require_same_chart(const ChartPtr& a, const ChartPtr& b) {
    if (a == b) return;
    if (!a || !b || *a != *b) throw chart_mismatch("operands live on different charts");
}

/// A chart point. Exact points carry rational coordinates; float points carry
/// doubles. Exact points degrade to doubles on demand.
class Point {
public:
    static Point exact(std::vector<Rational> coords) {
        Point p;
        p.exact_ = true;
        p.q_ = std::move(coords);
        p.d_.reserve(p.q_.size());
        for (const auto& c : p.q_) p.d_.push_back(c.get_d());
        return p;
    }
    static Point floating(std::vector<double> coords) {
        Point p;
        p.exact_ = false;
        p.d_ = std::move(coords);
        return p;
    }
    static Point origin(int dim) { return exact(std::vector<Rational>(dim, Rational(0))); }

    bool is_exact() const { return exact_; }
    int dim() const { return static_cast<int>(exact_ ? q_.size() : d_.size()); }

    const std::vector<Rational>& rationals() const {
        if (!exact_) throw input_error("float point has no exact coordinates");
        return q_;
    }
    const std::vector<double>& doubles() const { return d_; }

    std::vector<FieldElem> field_coords() const {
        std::vector<FieldElem> out;
        out.reserve(rationals().size());
        for (const auto& c : q_) out.emplace_back(c);
        return out;
    }

    std::string str() const {
        std::string s = "(";
        for (int i = 0; i < dim(); ++i) {
            if (i) s += ", ";
            s += exact_ ? q_[i].get_str() : std::to_string(d_[i]);
        }
        return s + ")";
    }

private:
    bool exact_ = true;
    std::vector<Rational> q_;
    std::vector<double> d_;
};

}  // namespace oneill
