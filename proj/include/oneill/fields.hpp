#pragma once

#include <memory>
#include <utility>
#include <vector>

#include "oneill/linalg.hpp"

namespace oneill {

/// Vector field with rational-function components (polynomial fields embed
/// with denominator 1; projections of polynomial fields are honest quotients).
class VectorField {
public:
    VectorField(ChartPtr chart, std::vector<RatFun> comp)
        : chart_(std::move(chart)), comp_(std::move(comp)) {
        if (static_cast<int>(comp_.size()) != chart_->dim())
            throw input_error("vector field component count != chart dimension");
        for (const auto& c : comp_) require_same_chart(chart_, c.chart());
    }

    static VectorField zero(const ChartPtr& chart) {
        return VectorField(chart, std::vector<RatFun>(chart->dim(), RatFun(Poly(chart))));
    }
    static VectorField coordinate(const ChartPtr& chart, int i) {
        VectorField v = zero(chart);
        v.comp_[i] = RatFun::constant(chart, FieldElem(1));
        return v;
    }
    static VectorField constant(const ChartPtr& chart, const std::vector<FieldElem>& c) {
        std::vector<RatFun> comp;
        comp.reserve(c.size());
        for (const auto& x : c) comp.push_back(RatFun::constant(chart, x));
        return VectorField(chart, std::move(comp));
    }
    static VectorField from_polys(const ChartPtr& chart, std::vector<Poly> polys) {
        std::vector<RatFun> comp(polys.begin(), polys.end());
        return VectorField(chart, std::move(comp));
    }

    const ChartPtr& chart() const { return chart_; }
    const std::vector<RatFun>& components() const { return comp_; }
    const RatFun& operator[](int i) const { return comp_.at(i); }

    bool is_zero() const {
        for (const auto& c : comp_)
            if (!c.is_zero()) return false;
        return true;
    }

    /// Directional derivative X(f).
    RatFun derive(const RatFun& f) const {
        require_same_chart(chart_, f.chart());
        RatFun acc = RatFun::constant(chart_, FieldElem(0));
        for (int i = 0; i < chart_->dim(); ++i)
            if (!comp_[i].is_zero()) acc += comp_[i] * f.differentiate(i);
        return acc;
    }

    std::vector<FieldElem> evaluate(const Point& pt) const {
        std::vector<FieldElem> out;
        out.reserve(comp_.size());
        for (const auto& c : comp_) out.push_back(c.evaluate(pt));
        return out;
    }
    std::vector<double> evaluate_d(const std::vector<double>& x) const {
        std::vector<double> out;
        out.reserve(comp_.size());
        for (const auto& c : comp_) out.push_back(c.evaluate_d(x));
        return out;
    }

    friend VectorField operator+(const VectorField& x, const VectorField& y) {
        require_same_chart(x.chart_, y.chart_);
        std::vector<RatFun> comp;
        comp.reserve(x.comp_.size());
        for (size_t i = 0; i < x.comp_.size(); ++i) comp.push_back(x.comp_[i] + y.comp_[i]);
        return VectorField(x.chart_, std::move(comp));
    }
    friend VectorField operator-(const VectorField& x, const VectorField& y) {
        require_same_chart(x.chart_, y.chart_);
        std::vector<RatFun> comp;
        comp.reserve(x.comp_.size());
        for (size_t i = 0; i < x.comp_.size(); ++i) comp.push_back(x.comp_[i] - y.comp_[i]);
        return VectorField(x.chart_, std::move(comp));
    }
    VectorField operator-() const {
        std::vector<RatFun> comp;
        comp.reserve(comp_.size());
        for (const auto& c : comp_) comp.push_back(-c);
        return VectorField(chart_, std::move(comp));
    }
    friend VectorField operator*(const RatFun& f, const VectorField& x) {
        std::vector<RatFun> comp;
        comp.reserve(x.comp_.size());
        for (const auto& c : x.comp_) comp.push_back(f * c);
        return VectorField(x.chart_, std::move(comp));
    }
    friend VectorField operator*(const FieldElem& f, const VectorField& x) {
        std::vector<RatFun> comp;
        comp.reserve(x.comp_.size());
        for (const auto& c : x.comp_) comp.push_back(f * c);
        return VectorField(x.chart_, std::move(comp));
    }

private:
    ChartPtr chart_;
    std::vector<RatFun> comp_;
};

class OneForm {
public:
    OneForm(ChartPtr chart, std::vector<Poly> comp)
        : chart_(std::move(chart)), comp_(std::move(comp)) {
        if (static_cast<int>(comp_.size()) != chart_->dim())
            throw input_error("one-form component count != chart dimension");
    }

    const ChartPtr& chart() const { return chart_; }
    const std::vector<Poly>& components() const { return comp_; }

    /// Pairing eta(X).
    RatFun operator()(const VectorField& x) const {
        require_same_chart(chart_, x.chart());
        RatFun acc = RatFun::constant(chart_, FieldElem(0));
        for (int i = 0; i < chart_->dim(); ++i)
            if (!x[i].is_zero()) acc += RatFun(comp_[i]) * x[i];
        return acc;
    }

private:
    ChartPtr chart_;
    std::vector<Poly> comp_;
};

/// (1,1)-tensor field acting on vector components, entries rational.
class Tensor11 {
public:
    Tensor11(ChartPtr chart, Matrix<RatFun> m) : chart_(std::move(chart)), m_(std::move(m)) {
        if (m_.rows() != chart_->dim() || m_.cols() != chart_->dim())
            throw input_error("tensor shape != chart dimension");
    }
    static Tensor11 from_polys(const ChartPtr& chart, const Matrix<Poly>& p) {
        Matrix<RatFun> m(p.rows(), p.cols(), RatFun(Poly(chart)));
        for (int i = 0; i < p.rows(); ++i)
            for (int j = 0; j < p.cols(); ++j) m(i, j) = RatFun(p(i, j));
        return Tensor11(chart, std::move(m));
    }

    const ChartPtr& chart() const { return chart_; }
    const Matrix<RatFun>& matrix() const { return m_; }

    VectorField operator()(const VectorField& x) const {
        require_same_chart(chart_, x.chart());
        return VectorField(chart_, m_.apply(x.components()));
    }

    Matrix<FieldElem> evaluate(const Point& pt) const {
        Matrix<FieldElem> out(m_.rows(), m_.cols(), FieldElem(0));
        for (int i = 0; i < m_.rows(); ++i)
            for (int j = 0; j < m_.cols(); ++j) out(i, j) = m_(i, j).evaluate(pt);
        return out;
    }

private:
    ChartPtr chart_;
    Matrix<RatFun> m_;
};

/// Christoffel symbols of a metric as rational-function fields,
/// gamma[k](i,j) = Gamma^k_{ij}.
struct ChristoffelField {
    std::vector<Matrix<RatFun>> gamma;
};

/// Riemannian metric with polynomial components. The inverse (adjugate over
/// determinant) and the Christoffel field are computed once and shared.
class MetricField {
public:
    MetricField(ChartPtr chart, Matrix<Poly> g) : chart_(std::move(chart)), g_(std::move(g)) {
        if (g_.rows() != chart_->dim() || g_.cols() != chart_->dim())
            throw input_error("metric shape != chart dimension");
        for (int i = 0; i < g_.rows(); ++i)
            for (int j = i + 1; j < g_.cols(); ++j)
                if (g_(i, j) != g_(j, i)) throw input_error("metric components not symmetric");
    }

    const ChartPtr& chart() const { return chart_; }
    int dim() const { return chart_->dim(); }
    const Matrix<Poly>& components() const { return g_; }

    RatFun inner(const VectorField& x, const VectorField& y) const {
        require_same_chart(chart_, x.chart());
        require_same_chart(chart_, y.chart());
        RatFun acc = RatFun::constant(chart_, FieldElem(0));
        for (int i = 0; i < dim(); ++i) {
            if (x[i].is_zero()) continue;
            for (int j = 0; j < dim(); ++j) {
                if (g_(i, j).is_zero() || y[j].is_zero()) continue;
                acc += RatFun(g_(i, j)) * x[i] * y[j];
            }
        }
        return acc;
    }

    Matrix<FieldElem> evaluate(const Point& pt) const {
        Matrix<FieldElem> out(dim(), dim(), FieldElem(0));
        auto coords = pt.field_coords();
        for (int i = 0; i < dim(); ++i)
            for (int j = 0; j < dim(); ++j) out(i, j) = g_(i, j).evaluate(coords);
        return out;
    }

    /// Positive definiteness at a point via leading principal minors.
    bool positive_definite_at(const Point& pt) const {
        Matrix<FieldElem> m = evaluate(pt);
        for (int k = 1; k <= dim(); ++k) {
            Matrix<FieldElem> lead(k, k, FieldElem(0));
            for (int i = 0; i < k; ++i)
                for (int j = 0; j < k; ++j) lead(i, j) = m(i, j);
            if (determinant(lead).sign() <= 0) return false;
        }
        return true;
    }

    const Matrix<RatFun>& inverse() const {
        build_inverse();
        return *inv_;
    }

    const ChristoffelField& christoffel() const {
        build_christoffel();
        return *chr_;
    }

    /// Gamma^k_{ij} evaluated exactly at a point.
    std::vector<Matrix<FieldElem>> christoffel_at(const Point& pt) const {
        const auto& ch = christoffel();
        std::vector<Matrix<FieldElem>> out;
        out.reserve(dim());
        auto coords = pt.field_coords();
        for (int k = 0; k < dim(); ++k) {
            Matrix<FieldElem> m(dim(), dim(), FieldElem(0));
            for (int i = 0; i < dim(); ++i)
                for (int j = 0; j < dim(); ++j) m(i, j) = ch.gamma[k](i, j).evaluate(coords);
            out.push_back(std::move(m));
        }
        return out;
    }

private:
    void build_inverse() const {
        if (inv_) return;
        Poly det = determinant(g_);
        if (det.is_zero()) throw input_error("metric determinant is identically zero");
        Matrix<Poly> adj = adjugate(g_);
        auto inv = std::make_shared<Matrix<RatFun>>(dim(), dim(), RatFun(Poly(chart_)));
        for (int i = 0; i < dim(); ++i)
            for (int j = 0; j < dim(); ++j) (*inv)(i, j) = RatFun(adj(i, j), det);
        inv_ = std::move(inv);
    }

    void build_christoffel() const {
        if (chr_) return;
        build_inverse();
        const int n = dim();
        auto chr = std::make_shared<ChristoffelField>();
        // dg[l](i,j) = d_l g_ij
        std::vector<Matrix<Poly>> dg(n, Matrix<Poly>(n, n, Poly(chart_)));
        for (int l = 0; l < n; ++l)
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) dg[l](i, j) = g_(i, j).differentiate(l);
        const FieldElem half(make_rational(1, 2));
        for (int k = 0; k < n; ++k) {
            Matrix<RatFun> gk(n, n, RatFun(Poly(chart_)));
            for (int i = 0; i < n; ++i)
                for (int j = i; j < n; ++j) {
                    RatFun acc = RatFun(Poly(chart_));
                    for (int l = 0; l < n; ++l) {
                        if ((*inv_)(k, l).is_zero()) continue;
                        Poly s = dg[i](j, l) + dg[j](i, l) - dg[l](i, j);
                        if (s.is_zero()) continue;
                        acc += (*inv_)(k, l) * RatFun(s);
                    }
                    gk(i, j) = half * acc;
                    gk(j, i) = gk(i, j);
                }
            chr->gamma.push_back(std::move(gk));
        }
        chr_ = std::move(chr);
    }

    ChartPtr chart_;
    Matrix<Poly> g_;
    mutable std::shared_ptr<const Matrix<RatFun>> inv_;
    mutable std::shared_ptr<const ChristoffelField> chr_;
};

}  // namespace oneill
