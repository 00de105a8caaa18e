#pragma once

#include <functional>

#include "oneill/slant.hpp"
#include "oneill/submersion.hpp"

namespace oneill {
namespace numeric {

/// Pointwise float engine for a submersion setup. Projectors are rebuilt at
/// every probe point from a fresh SVD kernel, and covariant derivatives of
/// projected fields use finite differences of evaluated values only, so this
/// path shares no symbolic machinery with the exact one.
class FloatSubmersion {
public:
    using DField = std::function<Eigen::VectorXd(const std::vector<double>&)>;

    explicit FloatSubmersion(const SubmersionSetup& s) : s_(s), m_(s.source_dim()) {}

    Eigen::MatrixXd metric(const std::vector<double>& x) const {
        return metric_at(s_.source_metric(), x);
    }
    /// Map differential by finite differences of map values (the symbolic
    /// Jacobian never enters this path).
    Eigen::MatrixXd jac(const std::vector<double>& x) const {
        Eigen::MatrixXd j(s_.target_dim(), m_);
        for (int a = 0; a < s_.target_dim(); ++a) {
            const Poly& comp = s_.map().components()[a];
            for (int i = 0; i < m_; ++i)
                j(a, i) = fd_partial(
                    [&](const std::vector<double>& q) { return comp.evaluate_d(q); }, x, i,
                    1e-3);
        }
        return j;
    }
    Eigen::MatrixXd vproj(const std::vector<double>& x) const {
        Eigen::MatrixXd b = kernel_d(jac(x));
        if (b.rows() == 0) return Eigen::MatrixXd::Zero(m_, m_);
        return projector_d(b, metric(x));
    }
    Eigen::MatrixXd hproj(const std::vector<double>& x) const {
        return Eigen::MatrixXd::Identity(m_, m_) - vproj(x);
    }
    Eigen::MatrixXd phi(const std::vector<double>& x) const {
        Eigen::MatrixXd p(m_, m_);
        for (int i = 0; i < m_; ++i)
            for (int j = 0; j < m_; ++j)
                p(i, j) = s_.source().phi.matrix()(i, j).evaluate_d(x);
        return p;
    }

    DField lift(const VectorField& v) const {
        return [v](const std::vector<double>& x) {
            auto c = v.evaluate_d(x);
            return Eigen::Map<const Eigen::VectorXd>(c.data(), c.size()).eval();
        };
    }
    DField project_v(DField f) const {
        return [this, f = std::move(f)](const std::vector<double>& x) {
            return (vproj(x) * f(x)).eval();
        };
    }
    DField project_h(DField f) const {
        return [this, f = std::move(f)](const std::vector<double>& x) {
            return (hproj(x) * f(x)).eval();
        };
    }
    DField apply_phi(DField f) const {
        return [this, f = std::move(f)](const std::vector<double>& x) {
            return (phi(x) * f(x)).eval();
        };
    }

    /// Finite-difference Jacobian of a field, one column per coordinate.
    /// Richardson leaves O(h^4) truncation (exactly zero on per-variable
    /// degree <= 4 data), so a coarse step keeps the roundoff term eps/h
    /// small.
    Eigen::MatrixXd field_jacobian(const DField& f, const std::vector<double>& x,
                                   double h = 1e-2) const {
        Eigen::MatrixXd out(m_, m_);
        std::vector<double> q = x;
        for (int i = 0; i < m_; ++i) {
            auto central = [&](double hh) {
                q[i] = x[i] + hh;
                Eigen::VectorXd fp = f(q);
                q[i] = x[i] - hh;
                Eigen::VectorXd fm = f(q);
                q[i] = x[i];
                return ((fp - fm) / (2 * hh)).eval();
            };
            Eigen::VectorXd d1 = central(h), d2 = central(h / 2);
            out.col(i) = (4 * d2 - d1) / 3;
        }
        return out;
    }

    /// (nabla_u W)(x) for a tangent vector u at x.
    Eigen::VectorXd cov_deriv(const Eigen::VectorXd& u, const DField& w,
                              const std::vector<double>& x) const {
        Eigen::VectorXd out = field_jacobian(w, x) * u;
        auto gamma = christoffel_fd(s_.source_metric(), x);
        Eigen::VectorXd wx = w(x);
        for (int k = 0; k < m_; ++k) out(k) += u.dot(gamma[k] * wx);
        return out;
    }

    Eigen::VectorXd lie_bracket_at(const DField& a, const DField& b,
                                   const std::vector<double>& x) const {
        return field_jacobian(b, x) * a(x) - field_jacobian(a, x) * b(x);
    }

    Eigen::VectorXd oneill_T(const DField& e, const DField& f,
                             const std::vector<double>& x) const {
        Eigen::VectorXd ve = vproj(x) * e(x);
        Eigen::VectorXd a = cov_deriv(ve, project_v(f), x);
        Eigen::VectorXd b = cov_deriv(ve, project_h(f), x);
        return hproj(x) * a + vproj(x) * b;
    }
    Eigen::VectorXd oneill_A(const DField& e, const DField& f,
                             const std::vector<double>& x) const {
        Eigen::VectorXd he = hproj(x) * e(x);
        Eigen::VectorXd a = cov_deriv(he, project_h(f), x);
        Eigen::VectorXd b = cov_deriv(he, project_v(f), x);
        return vproj(x) * a + hproj(x) * b;
    }

    double inner(const Eigen::VectorXd& a, const Eigen::VectorXd& b,
                 const std::vector<double>& x) const {
        return a.dot(metric(x) * b);
    }

private:
    const SubmersionSetup& s_;
    int m_;
};

/// Degree <= 1 fields with small coefficients: keeps the absolute
/// finite-difference residuals at the 1e-10 level without losing the
/// derivative terms the identities exercise.
inline VectorField small_random_field(Sampler& smp, const ChartPtr& chart) {
    std::vector<Poly> comp;
    for (int i = 0; i < chart->dim(); ++i) {
        Poly p(chart);
        Exponents e(chart->dim(), 0);
        p.add_term(e, FieldElem(smp.rational(-1, 1, 8)));
        e[smp.next(static_cast<uint64_t>(chart->dim()))] = 1;
        p.add_term(e, FieldElem(smp.rational(-1, 1, 8)));
        comp.push_back(std::move(p));
    }
    return VectorField::from_polys(chart, std::move(comp));
}

/// Float-mode O'Neill identity suite over the finite-difference path.
inline CheckReport check_oneill_identities_float(const SubmersionSetup& s,
                                                 const CheckConfig& cfg) {
    ResidualCollector col("oneill_ids", "O'Neill identities, finite-difference path",
                          cfg.tol_first, false);
    FloatSubmersion fs(s);
    Sampler smp = Sampler::for_check(cfg.seed, "oneill_ids_float");
    auto pts = smp.sample_points(*s.chart(), cfg.samples);
    for (int k = 0; k < cfg.field_pairs; ++k) {
        VectorField dsym = small_random_field(smp, s.chart());
        VectorField esym = small_random_field(smp, s.chart());
        VectorField fsym = small_random_field(smp, s.chart());
        auto d = fs.lift(dsym), e = fs.lift(esym), f = fs.lift(fsym);
        auto u = fs.project_v(d), w = fs.project_v(e);
        auto x = fs.project_h(d), y = fs.project_h(e);
        for (const auto& pt : pts) {
            const auto& q = pt.doubles();
            col.add((fs.oneill_T(u, w, q) - fs.oneill_T(w, u, q)).cwiseAbs().maxCoeff());
            col.add((fs.oneill_A(x, y, q) + fs.oneill_A(y, x, q)).cwiseAbs().maxCoeff());
            Eigen::VectorXd half_bracket = 0.5 * (fs.vproj(q) * fs.lie_bracket_at(x, y, q));
            col.add((fs.oneill_A(x, y, q) - half_bracket).cwiseAbs().maxCoeff());
            double skew_t = fs.inner(fs.oneill_T(d, e, q), f(q), q) +
                            fs.inner(fs.oneill_T(d, f, q), e(q), q);
            double skew_a = fs.inner(fs.oneill_A(d, e, q), f(q), q) +
                            fs.inner(fs.oneill_A(d, f, q), e(q), q);
            col.add(skew_t);
            col.add(skew_a);
            // decompositions of nabla for vertical/horizontal arguments
            Eigen::VectorXd uq = u(q);
            Eigen::VectorXd dec1 = fs.cov_deriv(uq, w, q) - fs.oneill_T(u, w, q) -
                                   fs.vproj(q) * fs.cov_deriv(uq, w, q);
            Eigen::VectorXd dec2 = fs.cov_deriv(uq, y, q) - fs.oneill_T(u, y, q) -
                                   fs.hproj(q) * fs.cov_deriv(uq, y, q);
            Eigen::VectorXd xq = x(q);
            Eigen::VectorXd dec3 = fs.cov_deriv(xq, w, q) - fs.oneill_A(x, w, q) -
                                   fs.vproj(q) * fs.cov_deriv(xq, w, q);
            Eigen::VectorXd dec4 = fs.cov_deriv(xq, y, q) - fs.oneill_A(x, y, q) -
                                   fs.hproj(q) * fs.cov_deriv(xq, y, q);
            col.add(dec1.cwiseAbs().maxCoeff());
            col.add(dec2.cwiseAbs().maxCoeff());
            col.add(dec3.cwiseAbs().maxCoeff());
            col.add(dec4.cwiseAbs().maxCoeff());
        }
    }
    return col.finish();
}

/// Float-mode submersion axioms: SVD rank and double-precision Grams.
inline CheckReport check_riemannian_float(const SubmersionSetup& s, const CheckConfig& cfg) {
    ResidualCollector col("riemannian", "maximal rank; g_M(X,Y) = g_N(F*X, F*Y) on horizontal",
                          cfg.tol_first, false);
    FloatSubmersion fs(s);
    Sampler smp = Sampler::for_check(cfg.seed, "riemannian");
    for (const auto& pt : smp.sample_points(*s.chart(), cfg.samples)) {
        const auto& x = pt.doubles();
        Eigen::MatrixXd j = fs.jac(x);
        if (rank_d(j) != s.target_dim()) {
            col.force_fail("map drops rank at " + pt.str());
            continue;
        }
        Eigen::MatrixXd hp = fs.hproj(x);
        Eigen::MatrixXd g = fs.metric(x);
        auto fx = s.map().apply_d(x);
        Eigen::MatrixXd gn(s.target_dim(), s.target_dim());
        for (int a = 0; a < s.target_dim(); ++a)
            for (int b = 0; b < s.target_dim(); ++b)
                gn(a, b) = s.target_metric().components()(a, b).evaluate_d(fx);
        // compare Grams of a horizontal frame under both metrics
        Eigen::MatrixXd frame = hp;  // columns span the horizontal space
        Eigen::MatrixXd lhs = frame.transpose() * g * frame;
        Eigen::MatrixXd rhs = (j * frame).transpose() * gn * (j * frame);
        col.add((lhs - rhs).cwiseAbs().maxCoeff());
    }
    return col.finish();
}

inline CheckReport check_splitting_float(const SubmersionSetup& s, const CheckConfig& cfg) {
    ResidualCollector col("splitting", "V^2 = V; V + H = I; g(V., H.) = 0; F* o V = 0",
                          cfg.tol_first, false);
    FloatSubmersion fs(s);
    Sampler smp = Sampler::for_check(cfg.seed, "splitting");
    for (const auto& pt : smp.sample_points(*s.chart(), cfg.samples)) {
        const auto& x = pt.doubles();
        Eigen::MatrixXd vp = fs.vproj(x), hp = fs.hproj(x), g = fs.metric(x);
        const int m = s.source_dim();
        col.add((vp * vp - vp).cwiseAbs().maxCoeff());
        col.add((vp + hp - Eigen::MatrixXd::Identity(m, m)).cwiseAbs().maxCoeff());
        col.add((vp.transpose() * g * hp).cwiseAbs().maxCoeff());
        col.add((fs.jac(x) * vp).cwiseAbs().maxCoeff());
    }
    return col.finish();
}

/// Float-mode harmonicity: tension assembled from finite differences of map
/// values and FD Christoffels on both sides.
inline CheckReport check_harmonic_float(const SubmersionSetup& s, const CheckConfig& cfg) {
    ResidualCollector col("harmonic", "tension = 0 iff fibers minimal", cfg.tol_second, false);
    FloatSubmersion fs(s);
    Sampler smp = Sampler::for_check(cfg.seed, "harmonic");
    const int m = s.source_dim(), n = s.target_dim();
    bool tension_zero = true, minimal = true;
    for (const auto& pt : smp.sample_points(*s.chart(), cfg.samples)) {
        const auto& x = pt.doubles();
        Eigen::MatrixXd ginv = fs.metric(x).inverse();
        Eigen::MatrixXd j = fs.jac(x);
        auto fx = s.map().apply_d(x);
        auto gm = christoffel_fd(s.source_metric(), x);
        auto gn = christoffel_fd(s.target_metric(), fx);
        Eigen::VectorXd tau = Eigen::VectorXd::Zero(n);
        for (int a = 0; a < n; ++a) {
            const Poly& comp = s.map().components()[a];
            for (int i = 0; i < m; ++i)
                for (int jj = 0; jj < m; ++jj) {
                    if (ginv(i, jj) == 0) continue;
                    double hess = fd_partial(
                        [&](const std::vector<double>& q) {
                            return fd_partial([&](const std::vector<double>& r) {
                                return comp.evaluate_d(r);
                            }, q, jj, 1e-3);
                        },
                        x, i, 1e-3);
                    double term = hess;
                    for (int b = 0; b < n; ++b)
                        for (int c = 0; c < n; ++c) term += gn[a](b, c) * j(b, i) * j(c, jj);
                    for (int k = 0; k < m; ++k) term -= gm[k](i, jj) * j(a, k);
                    tau(a) += ginv(i, jj) * term;
                }
        }
        Eigen::MatrixXd gnm(n, n);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                gnm(a, b) = s.target_metric().components()(a, b).evaluate_d(fx);
        double norm = std::sqrt(std::fabs(tau.dot(gnm * tau)));
        col.add(norm);
        if (norm > cfg.tol_second) tension_zero = false;
        // minimal fibers via the float path: contract T over the kernel
        Eigen::MatrixXd b = kernel_d(fs.jac(x));
        const int k = static_cast<int>(b.rows());
        if (k > 0) {
            Eigen::MatrixXd gram = b * fs.metric(x) * b.transpose();
            Eigen::MatrixXd gram_inv = gram.inverse();
            Eigen::VectorXd h = Eigen::VectorXd::Zero(m);
            for (int i = 0; i < k; ++i)
                for (int jj = 0; jj < k; ++jj) {
                    Eigen::VectorXd bi = b.row(i), bj = b.row(jj);
                    auto fi = [bi](const std::vector<double>&) { return bi; };
                    auto fj = [bj](const std::vector<double>&) { return bj; };
                    h += gram_inv(i, jj) / k * fs.oneill_T(fi, fj, x);
                }
            double hnorm = std::sqrt(std::fabs(h.dot(fs.metric(x) * h)));
            if (hnorm > cfg.tol_second) minimal = false;
        }
    }
    col.note(std::string("tension vanishes: ") + (tension_zero ? "yes" : "no"));
    col.note(std::string("fibers minimal: ") + (minimal ? "yes" : "no"));
    if (tension_zero != minimal)
        col.force_fail("harmonicity criteria disagree (tension vs minimal fibers)");
    return col.finish();
}

/// Exact Christoffel/curvature fields against the finite-difference oracle
/// at random probes.
inline CheckReport check_cross_oracle(const MetricField& g, const CheckConfig& cfg,
                                      int probes = 20) {
    ResidualCollector col("cross_oracle",
                          "exact Christoffel/curvature vs finite-difference oracle",
                          cfg.tol_second, false);
    Sampler smp = Sampler::for_check(cfg.seed, "cross_oracle");
    const int n = g.dim();
    for (int t = 0; t < probes; ++t) {
        Point pt = smp.point(*g.chart());
        auto exact = g.christoffel_at(pt);
        auto fd = christoffel_fd(g, pt.doubles());
        double dmax = 0;
        for (int k = 0; k < n; ++k)
            dmax = std::max(dmax, (fd[k] - [&] {
                                      Eigen::MatrixXd e(n, n);
                                      for (int i = 0; i < n; ++i)
                                          for (int j = 0; j < n; ++j)
                                              e(i, j) = exact[k](i, j).to_double();
                                      return e;
                                  }()).cwiseAbs().maxCoeff());
        col.add(dmax);

        int i = static_cast<int>(smp.next(n)), j = static_cast<int>(smp.next(n)),
            k = static_cast<int>(smp.next(n));
        auto rex = curvature(g, VectorField::coordinate(g.chart(), i),
                             VectorField::coordinate(g.chart(), j),
                             VectorField::coordinate(g.chart(), k))
                       .evaluate(pt);
        Eigen::VectorXd ei = Eigen::VectorXd::Zero(n), ej = Eigen::VectorXd::Zero(n),
                        ek = Eigen::VectorXd::Zero(n);
        ei(i) = ej(j) = ek(k) = 1;
        Eigen::VectorXd rfd = curvature_fd(g, pt.doubles(), ei, ej, ek);
        double rdiff = 0;
        for (int c = 0; c < n; ++c)
            rdiff = std::max(rdiff, std::fabs(rex[c].to_double() - rfd(c)));
        col.add(rdiff);
    }
    return col.finish();
}

/// Float-mode slant classification: double-precision Gram ratios with the
/// angular spread threshold.
inline SlantReport slant_classify_float(const SubmersionSetup& s, const CheckConfig& cfg) {
    SlantReport out;
    ResidualCollector col("slant_classify", "cos(theta) = |psi U| / |phi U| constant on D",
                          cfg.angle_eps, false);
    FloatSubmersion fs(s);
    Sampler smp = Sampler::for_check(cfg.seed, "slant_classify");
    const int d_dim = s.vertical_dim() - (s.xi_vertical() ? 1 : 0);
    if (d_dim < 1) {
        out.cls = SlantClass::vacuous;
        out.lambda = FieldElem(1);
        out.exact_constant = true;
        out.report = CheckReport::not_applicable("slant_classify", "slant angle sampling",
                                                 "no vertical directions orthogonal to xi");
        return out;
    }
    const int m = s.source_dim();
    std::vector<double> cos2s;
    int guard = 0;
    while (static_cast<int>(cos2s.size()) < cfg.classify_samples &&
           guard++ < cfg.classify_samples * 30) {
        Point pt = smp.point(*s.chart());
        const auto& x = pt.doubles();
        Eigen::MatrixXd b = kernel_d(fs.jac(x));
        if (b.rows() == 0) continue;
        Eigen::MatrixXd g = fs.metric(x);
        Eigen::VectorXd u = Eigen::VectorXd::Zero(m);
        for (int i = 0; i < b.rows(); ++i) u += to_double(smp.rational()) * b.row(i).transpose();
        Eigen::VectorXd xi(m);
        auto xiv = s.source().xi.evaluate_d(x);
        for (int i = 0; i < m; ++i) xi(i) = xiv[i];
        u -= u.dot(g * xi) / xi.dot(g * xi) * xi;
        double ulen = u.dot(g * u);
        if (ulen < 1e-12) continue;
        Eigen::VectorXd phiu = fs.phi(x) * u;
        Eigen::VectorXd psiu = fs.vproj(x) * phiu;
        double plen = phiu.dot(g * phiu);
        if (plen < 1e-12) continue;
        cos2s.push_back(psiu.dot(g * psiu) / plen);
    }
    if (cos2s.empty()) {
        out.report = CheckReport::not_applicable("slant_classify", "slant angle sampling",
                                                 "no admissible sample directions found");
        return out;
    }
    out.sample_count = static_cast<int>(cos2s.size());
    double lo = 2, hi = -1, mean = 0;
    for (double c : cos2s) {
        lo = std::min(lo, c);
        hi = std::max(hi, c);
        mean += c;
    }
    mean /= static_cast<double>(cos2s.size());
    double spread = std::acos(std::sqrt(std::max(0.0, lo))) -
                    std::acos(std::sqrt(std::min(1.0, hi)));
    col.add(std::fabs(spread));
    out.theta = std::acos(std::sqrt(std::min(1.0, std::max(0.0, mean))));
    if (std::fabs(spread) < cfg.angle_eps) {
        out.cls = out.theta < cfg.angle_eps
                      ? SlantClass::invariant
                      : (std::fabs(out.theta - std::asin(1.0)) < cfg.angle_eps
                             ? SlantClass::anti_invariant
                             : SlantClass::proper_slant);
    } else {
        out.cls = SlantClass::not_slant;
        col.force_fail("angle varies across directions/points (spread " +
                       residual_str(spread) + " rad)");
    }
    col.note(std::string("classification = ") + to_string(out.cls));
    col.note("theta = " + residual_str(out.theta) + " rad (float path)");
    out.report = col.finish();
    return out;
}

}  // namespace numeric
}  // namespace oneill
