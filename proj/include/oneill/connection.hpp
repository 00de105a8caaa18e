#pragma once

#include <cmath>
#include <vector>

#include "oneill/fields.hpp"

namespace oneill {

inline VectorField lie_bracket(const VectorField& x, const VectorField& y) {
    require_same_chart(x.chart(), y.chart());
    const auto& chart = x.chart();
    std::vector<RatFun> comp;
    comp.reserve(chart->dim());
    for (int k = 0; k < chart->dim(); ++k) comp.push_back(x.derive(y[k]) - y.derive(x[k]));
    return VectorField(chart, std::move(comp));
}

/// Levi-Civita covariant derivative (nabla_X Y)^k = X(Y^k) + Gamma^k_ij X^i Y^j.
inline VectorField covariant_derivative(const MetricField& g, const VectorField& x,
                                        const VectorField& y) {
    require_same_chart(g.chart(), x.chart());
    require_same_chart(g.chart(), y.chart());
    const auto& chart = g.chart();
    const auto& ch = g.christoffel();
    std::vector<RatFun> comp;
    comp.reserve(chart->dim());
    for (int k = 0; k < chart->dim(); ++k) {
        RatFun acc = x.derive(y[k]);
        const auto& gk = ch.gamma[k];
        for (int i = 0; i < chart->dim(); ++i) {
            if (x[i].is_zero()) continue;
            for (int j = 0; j < chart->dim(); ++j) {
                if (y[j].is_zero() || gk(i, j).is_zero()) continue;
                acc += gk(i, j) * x[i] * y[j];
            }
        }
        comp.push_back(std::move(acc));
    }
    return VectorField(chart, std::move(comp));
}

/// Curvature R(X,Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_[X,Y] Z.
inline VectorField curvature(const MetricField& g, const VectorField& x, const VectorField& y,
                             const VectorField& z) {
    VectorField a = covariant_derivative(g, x, covariant_derivative(g, y, z));
    VectorField b = covariant_derivative(g, y, covariant_derivative(g, x, z));
    VectorField c = covariant_derivative(g, lie_bracket(x, y), z);
    return a - b - c;
}

/// Ricci tensor S(X,Y) as the trace of Z -> R(Z,X)Y over the coordinate frame.
inline RatFun ricci(const MetricField& g, const VectorField& x, const VectorField& y) {
    const auto& chart = g.chart();
    RatFun acc = RatFun::constant(chart, FieldElem(0));
    for (int a = 0; a < chart->dim(); ++a)
        acc += curvature(g, VectorField::coordinate(chart, a), x, y)[a];
    return acc;
}

/// Exterior derivative of a one-form, evaluated on fields with the
/// alternation convention d(eta)(X,Y) = (X(eta Y) - Y(eta X) - eta([X,Y]))/2.
inline RatFun exterior_derivative(const OneForm& eta, const VectorField& x,
                                  const VectorField& y) {
    RatFun v = x.derive(eta(y)) - y.derive(eta(x)) - eta(lie_bracket(x, y));
    return FieldElem(make_rational(1, 2)) * v;
}

/// Modified Gram-Schmidt against a metric value; float output by design
/// (lengths need square roots, which leave the exact field).
inline std::vector<std::vector<double>> orthonormalize(
    const Matrix<FieldElem>& metric_at_pt, const std::vector<std::vector<FieldElem>>& vectors) {
    const int n = metric_at_pt.rows();
    Matrix<double> gd(n, n, 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) gd(i, j) = metric_at_pt(i, j).to_double();
    auto inner = [&](const std::vector<double>& a, const std::vector<double>& b) {
        double s = 0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) s += gd(i, j) * a[i] * b[j];
        return s;
    };
    std::vector<std::vector<double>> out;
    int index = 0;
    for (const auto& vexact : vectors) {
        std::vector<double> v(n);
        for (int i = 0; i < n; ++i) v[i] = vexact[i].to_double();
        for (const auto& u : out) {
            double c = inner(v, u);
            for (int i = 0; i < n; ++i) v[i] -= c * u[i];
        }
        double len2 = inner(v, v);
        if (len2 < 1e-20)
            throw rank_error("dependent vectors in orthonormalization", index);
        double inv = 1.0 / std::sqrt(len2);
        for (int i = 0; i < n; ++i) v[i] *= inv;
        out.push_back(std::move(v));
        ++index;
    }
    return out;
}

}  // namespace oneill
