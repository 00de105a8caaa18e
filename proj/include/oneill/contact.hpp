#pragma once

#include <string>
#include <utility>
#include <vector>

#include "oneill/connection.hpp"
#include "oneill/report.hpp"
#include "oneill/rng.hpp"

namespace oneill {

/// Almost contact metric structure (phi, xi, eta, g) on an odd-dimensional
/// chart.
struct ContactStructure {
    ChartPtr chart;
    int n = 0;  // dim = 2n + 1
    Tensor11 phi;
    VectorField xi;
    OneForm eta;
    MetricField g;

    int dim() const { return chart->dim(); }

    /// Fundamental two-form Phi(X, Y) = g(X, phi Y).
    RatFun fundamental_form(const VectorField& x, const VectorField& y) const {
        return g.inner(x, phi(y));
    }

    /// (nabla_X phi)Y = nabla_X(phi Y) - phi(nabla_X Y).
    VectorField nabla_phi(const VectorField& x, const VectorField& y) const {
        return covariant_derivative(g, x, phi(y)) - phi(covariant_derivative(g, x, y));
    }
};

/// The standard Sasakian structure on R^{2n+1} with coordinates
/// (x_i, y_i, z): contact form eta = (dz - sum y_i dx_i)/2, Reeb field
/// xi = 2 d/dz, phi(d/dx_i) = -d/dy_i, phi(d/dy_i) = d/dx_i + y_i d/dz,
/// and the compatible metric g = eta (x) eta + (sum dx_i^2 + dy_i^2)/4 that
/// makes the phi-basis E_i = 2 d/dy_i, E_{n+i} = 2(d/dx_i + y_i d/dz), xi
/// orthonormal.
inline ContactStructure standard_sasakian(int n) {
    if (n < 1) throw input_error("standard_sasakian requires n >= 1");
    ChartPtr chart = sasakian_chart(n);
    const int dim = 2 * n + 1;
    const int zi = 2 * n;  // z index; x_i at i-1, y_i at n+i-1
    const FieldElem quarter(make_rational(1, 4));
    const FieldElem half(make_rational(1, 2));

    std::vector<Poly> y;
    for (int i = 0; i < n; ++i) y.push_back(Poly::variable(chart, n + i));

    // eta components
    std::vector<Poly> eta(dim, Poly(chart));
    for (int i = 0; i < n; ++i) eta[i] = FieldElem(make_rational(-1, 2)) * y[i];
    eta[zi] = Poly::constant(chart, half);

    // metric: eta (x) eta + (1/4) sum(dx^2 + dy^2)
    Matrix<Poly> g(dim, dim, Poly(chart));
    for (int a = 0; a < dim; ++a)
        for (int b = 0; b < dim; ++b) g(a, b) = eta[a] * eta[b];
    for (int i = 0; i < 2 * n; ++i) g(i, i) += Poly::constant(chart, quarter);

    // phi columns: phi(d/dx_j) = -d/dy_j, phi(d/dy_j) = d/dx_j + y_j d/dz
    Matrix<Poly> phi(dim, dim, Poly(chart));
    for (int j = 0; j < n; ++j) {
        phi(n + j, j) = Poly::constant(chart, FieldElem(-1));
        phi(j, n + j) = Poly::constant(chart, FieldElem(1));
        phi(zi, n + j) = y[j];
    }

    std::vector<FieldElem> xi(dim, FieldElem(0));
    xi[zi] = FieldElem(2);

    return ContactStructure{chart,
                            n,
                            Tensor11::from_polys(chart, phi),
                            VectorField::constant(chart, xi),
                            OneForm(chart, std::move(eta)),
                            MetricField(chart, std::move(g))};
}

/// The phi-basis E_1..E_2n, xi of the standard structure, as fields.
inline std::vector<VectorField> standard_phi_basis(const ContactStructure& s) {
    const int n = s.n;
    std::vector<VectorField> basis;
    for (int i = 0; i < n; ++i)
        basis.push_back(FieldElem(2) * VectorField::coordinate(s.chart, n + i));
    for (int i = 0; i < n; ++i) {
        Poly yi = Poly::variable(s.chart, n + i);
        VectorField e = VectorField::coordinate(s.chart, i) +
                        RatFun(yi) * VectorField::coordinate(s.chart, 2 * n);
        basis.push_back(FieldElem(2) * e);
    }
    basis.push_back(s.xi);
    return basis;
}

namespace detail {

inline VectorField random_field(Sampler& smp, const ChartPtr& chart) {
    int deg = chart->dim() >= 7 ? 1 : 2;
    std::vector<Poly> comp;
    for (int i = 0; i < chart->dim(); ++i) comp.push_back(smp.poly(chart, deg, 2));
    return VectorField::from_polys(chart, std::move(comp));
}

inline void add_field_at_points(ResidualCollector& col, const VectorField& v,
                                const std::vector<Point>& pts) {
    for (const auto& p : pts) col.add(v.evaluate(p));
}
inline void add_scalar_at_points(ResidualCollector& col, const RatFun& f,
                                 const std::vector<Point>& pts) {
    for (const auto& p : pts) col.add(f.evaluate(p));
}

}  // namespace detail

/// Almost-contact axioms plus metric compatibility and the contact condition
/// d(eta) = Phi, all as residuals over random fields at sample points.
inline CheckReport check_almost_contact(const ContactStructure& s, const CheckConfig& cfg) {
    if (s.dim() % 2 == 0) throw input_error("almost contact structure needs odd dimension");
    ResidualCollector col("almost_contact", "phi^2 = -I + eta (x) xi; g(phi., phi.); d(eta) = Phi",
                          cfg.exact ? 0.0 : cfg.tol_first, cfg.exact);
    Sampler smp = Sampler::for_check(cfg.seed, "almost_contact");
    auto pts = smp.sample_points(*s.chart, cfg.samples);
    const auto& chart = s.chart;

    // eta(xi) = 1 and phi(xi) = 0, eta o phi = 0 as fields.
    detail::add_scalar_at_points(col, s.eta(s.xi) - RatFun::constant(chart, FieldElem(1)), pts);
    detail::add_field_at_points(col, s.phi(s.xi), pts);

    for (int k = 0; k < cfg.field_pairs; ++k) {
        VectorField x = detail::random_field(smp, chart);
        VectorField y = detail::random_field(smp, chart);
        // phi^2 X = -X + eta(X) xi
        detail::add_field_at_points(col, s.phi(s.phi(x)) + x - s.eta(x) * s.xi, pts);
        detail::add_scalar_at_points(col, s.eta(s.phi(x)), pts);
        // compatibility and eta(X) = g(X, xi)
        detail::add_scalar_at_points(
            col, s.g.inner(s.phi(x), s.phi(y)) - s.g.inner(x, y) + s.eta(x) * s.eta(y), pts);
        detail::add_scalar_at_points(col, s.eta(x) - s.g.inner(x, s.xi), pts);
        // contact condition
        detail::add_scalar_at_points(
            col, exterior_derivative(s.eta, x, y) - s.fundamental_form(x, y), pts);
    }
    return col.finish();
}

/// The defining identity (nabla_X phi)Y = g(X,Y) xi - eta(Y) X together with
/// its standard consequences: nabla_X xi = -phi X, R(xi, X)Y = g(X,Y) xi -
/// eta(Y) X and Ric(X, xi) = 2n eta(X).
inline CheckReport check_sasakian(const ContactStructure& s, const CheckConfig& cfg) {
    ResidualCollector col(
        "sasakian", "(nabla phi); nabla xi = -phi; R(xi,.); Ric(., xi) = 2n eta",
        cfg.exact ? 0.0 : cfg.tol_second, cfg.exact);
    Sampler smp = Sampler::for_check(cfg.seed, "sasakian");
    auto pts = smp.sample_points(*s.chart, cfg.samples);
    const auto& chart = s.chart;
    const FieldElem two_n(2 * s.n);

    for (int k = 0; k < cfg.field_pairs; ++k) {
        VectorField x = detail::random_field(smp, chart);
        VectorField y = detail::random_field(smp, chart);
        detail::add_field_at_points(
            col, s.nabla_phi(x, y) - s.g.inner(x, y) * s.xi + s.eta(y) * x, pts);
        detail::add_field_at_points(col, covariant_derivative(s.g, x, s.xi) + s.phi(x), pts);
        detail::add_field_at_points(
            col, curvature(s.g, s.xi, x, y) - s.g.inner(x, y) * s.xi + s.eta(y) * x, pts);
        detail::add_scalar_at_points(col, ricci(s.g, x, s.xi) - two_n * s.eta(x), pts);
    }
    return col.finish();
}

}  // namespace oneill
