#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <functional>
#include <vector>

#include "oneill/fields.hpp"

namespace oneill {

/// Pointwise finite-difference engine. This path never touches the symbolic
/// derivatives: it differentiates evaluated values only, so it serves as an
/// independent oracle for the exact machinery and as the float run mode.
namespace numeric {

inline Eigen::MatrixXd metric_at(const MetricField& g, const std::vector<double>& x) {
    const int n = g.dim();
    Eigen::MatrixXd m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = g.components()(i, j).evaluate_d(x);
    return m;
}

/// Central difference with one Richardson extrapolation step.
inline double fd_partial(const std::function<double(const std::vector<double>&)>& f,
                         std::vector<double> x, int var, double h) {
    auto central = [&](double hh) {
        double save = x[var];
        x[var] = save + hh;
        double fp = f(x);
        x[var] = save - hh;
        double fm = f(x);
        x[var] = save;
        return (fp - fm) / (2 * hh);
    };
    double d1 = central(h), d2 = central(h / 2);
    return (4 * d2 - d1) / 3;
}

/// Christoffel symbols from metric values alone. gamma[k](i,j). With one
/// Richardson step truncation is O(h^4), so a coarse step keeps the
/// roundoff term eps/h small without measurable truncation.
inline std::vector<Eigen::MatrixXd> christoffel_fd(const MetricField& g,
                                                   const std::vector<double>& x,
                                                   double h = 1e-3) {
    const int n = g.dim();
    Eigen::MatrixXd ginv = metric_at(g, x).inverse();
    // dg[l](i,j) = d_l g_ij by finite differences of evaluated entries.
    std::vector<Eigen::MatrixXd> dg(n, Eigen::MatrixXd::Zero(n, n));
    for (int l = 0; l < n; ++l)
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) {
                const Poly& entry = g.components()(i, j);
                double d = fd_partial([&](const std::vector<double>& q) {
                    return entry.evaluate_d(q);
                }, x, l, h);
                dg[l](i, j) = d;
                dg[l](j, i) = d;
            }
    std::vector<Eigen::MatrixXd> gamma(n, Eigen::MatrixXd::Zero(n, n));
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) {
                double acc = 0;
                for (int l = 0; l < n; ++l)
                    acc += ginv(k, l) * (dg[i](j, l) + dg[j](i, l) - dg[l](i, j));
                gamma[k](i, j) = 0.5 * acc;
                gamma[k](j, i) = gamma[k](i, j);
            }
    return gamma;
}

/// R(X,Y)Z at x for constant coordinate directions, from finite differences
/// of the finite-difference Christoffels (second-derivative level, outer
/// step 1e-3 with Richardson).
inline Eigen::VectorXd curvature_fd(const MetricField& g, const std::vector<double>& x,
                                    const Eigen::VectorXd& X, const Eigen::VectorXd& Y,
                                    const Eigen::VectorXd& Z, double outer_h = 1e-3) {
    const int n = g.dim();
    auto gamma_at = [&](const std::vector<double>& q) { return christoffel_fd(g, q); };
    std::vector<Eigen::MatrixXd> gamma = gamma_at(x);
    // dgamma[i][k](j,l) = d_i Gamma^k_{jl}
    std::vector<std::vector<Eigen::MatrixXd>> dgamma(
        n, std::vector<Eigen::MatrixXd>(n, Eigen::MatrixXd::Zero(n, n)));
    for (int i = 0; i < n; ++i) {
        auto at = [&](double hh) {
            std::vector<double> q = x;
            q[i] += hh;
            return gamma_at(q);
        };
        auto gp = at(outer_h), gm = at(-outer_h);
        auto gp2 = at(outer_h / 2), gm2 = at(-outer_h / 2);
        for (int k = 0; k < n; ++k) {
            Eigen::MatrixXd d1 = (gp[k] - gm[k]) / (2 * outer_h);
            Eigen::MatrixXd d2 = (gp2[k] - gm2[k]) / outer_h;
            dgamma[i][k] = (4 * d2 - d1) / 3;
        }
    }
    // R(e_i, e_j)e_k = (d_i G^l_jk - d_j G^l_ik + G^l_im G^m_jk - G^l_jm G^m_ik) e_l
    Eigen::VectorXd out = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double xy = X(i) * Y(j);
            if (xy == 0) continue;
            for (int k = 0; k < n; ++k) {
                if (Z(k) == 0) continue;
                for (int l = 0; l < n; ++l) {
                    double r = dgamma[i][l](j, k) - dgamma[j][l](i, k);
                    for (int m = 0; m < n; ++m)
                        r += gamma[l](i, m) * gamma[m](j, k) - gamma[l](j, m) * gamma[m](i, k);
                    out(l) += xy * Z(k) * r;
                }
            }
        }
    return out;
}

/// Rank with the float tie-break rule: singular values below 1e-10 * sigma_max
/// count as zero.
inline int rank_d(const Eigen::MatrixXd& m) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    const auto& s = svd.singularValues();
    if (s.size() == 0) return 0;
    double cut = 1e-10 * s(0);
    int r = 0;
    for (int i = 0; i < s.size(); ++i)
        if (s(i) > cut) ++r;
    return r;
}

/// Orthonormal basis (rows) of the right null space of m.
inline Eigen::MatrixXd kernel_d(const Eigen::MatrixXd& m) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    double cut = s.size() ? 1e-10 * s(0) : 0.0;
    int r = 0;
    for (int i = 0; i < s.size(); ++i)
        if (s(i) > cut) ++r;
    Eigen::MatrixXd V = svd.matrixV();
    return V.rightCols(V.cols() - r).transpose();
}

/// Vertical projector from a basis (rows of B) and a metric value:
/// P = B^T (B G B^T)^{-1} B G. Basis-independent, hence smooth in the point.
inline Eigen::MatrixXd projector_d(const Eigen::MatrixXd& B, const Eigen::MatrixXd& G) {
    Eigen::MatrixXd gram = B * G * B.transpose();
    return B.transpose() * gram.inverse() * B * G;
}

}  // namespace numeric
}  // namespace oneill
