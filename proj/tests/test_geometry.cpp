#include <catch2/catch_amalgamated.hpp>

#include "oneill/connection.hpp"
#include "oneill/contact.hpp"
#include "oneill/numeric.hpp"
#include "oneill/rng.hpp"

using namespace oneill;

namespace {

MetricField euclidean(const ChartPtr& chart) {
    Matrix<Poly> g(chart->dim(), chart->dim(), Poly(chart));
    for (int i = 0; i < chart->dim(); ++i) g(i, i) = Poly::constant(chart, FieldElem(1));
    return MetricField(chart, std::move(g));
}

VectorField random_field(Sampler& s, const ChartPtr& chart, int deg = 2) {
    std::vector<Poly> comp;
    for (int i = 0; i < chart->dim(); ++i) comp.push_back(s.poly(chart, deg, 2));
    return VectorField::from_polys(chart, std::move(comp));
}

bool vanishes_at(const VectorField& v, const std::vector<Point>& pts) {
    for (const auto& p : pts)
        for (const auto& c : v.evaluate(p))
            if (!c.is_zero()) return false;
    return true;
}

}  // namespace

TEST_CASE("flat metric has vanishing Christoffel symbols") {
    auto chart = make_chart({"u", "v", "w"});
    MetricField g = euclidean(chart);
    const auto& ch = g.christoffel();
    for (int k = 0; k < 3; ++k)
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) CHECK(ch.gamma[k](i, j).is_zero());
}

TEST_CASE("metric inverse is exact and Christoffels are symmetric") {
    for (int n : {1, 2, 3}) {
        ContactStructure s = standard_sasakian(n);
        const auto& inv = s.g.inverse();
        // g * g^{-1} = I as rational-function identity
        Matrix<RatFun> gr(s.dim(), s.dim(), RatFun(Poly(s.chart)));
        for (int i = 0; i < s.dim(); ++i)
            for (int j = 0; j < s.dim(); ++j) gr(i, j) = RatFun(s.g.components()(i, j));
        Matrix<RatFun> prod = gr * inv;
        for (int i = 0; i < s.dim(); ++i)
            for (int j = 0; j < s.dim(); ++j) {
                if (i == j)
                    CHECK((prod(i, j) - RatFun::constant(s.chart, FieldElem(1))).is_zero());
                else
                    CHECK(prod(i, j).is_zero());
            }
        const auto& ch = s.g.christoffel();
        for (int k = 0; k < s.dim(); ++k)
            for (int i = 0; i < s.dim(); ++i)
                for (int j = i; j < s.dim(); ++j)
                    CHECK((ch.gamma[k](i, j) - ch.gamma[k](j, i)).is_zero());

        Sampler smp(5);
        for (const auto& pt : smp.sample_points(*s.chart, 7))
            CHECK(s.g.positive_definite_at(pt));
    }
}

TEST_CASE("exact Christoffels match the finite-difference oracle") {
    ContactStructure s = standard_sasakian(2);
    Point pt = Point::exact({make_rational(1, 2), Rational(0), make_rational(1, 4), Rational(0),
                             Rational(0)});
    auto exact = s.g.christoffel_at(pt);
    auto fd = numeric::christoffel_fd(s.g, pt.doubles());
    for (int k = 0; k < s.dim(); ++k)
        for (int i = 0; i < s.dim(); ++i)
            for (int j = 0; j < s.dim(); ++j)
                CHECK(std::abs(exact[k](i, j).to_double() - fd[k](i, j)) < 1e-8);
}

TEST_CASE("Levi-Civita properties: metric compatibility, torsion-free, Leibniz") {
    ContactStructure s = standard_sasakian(1);
    Sampler smp(17);
    auto pts = smp.sample_points(*s.chart, 5);
    for (int t = 0; t < 6; ++t) {
        VectorField x = random_field(smp, s.chart);
        VectorField y = random_field(smp, s.chart);
        VectorField z = random_field(smp, s.chart);

        // X(g(Y,Z)) = g(nabla_X Y, Z) + g(Y, nabla_X Z), exactly
        RatFun compat = x.derive(s.g.inner(y, z)) -
                        s.g.inner(covariant_derivative(s.g, x, y), z) -
                        s.g.inner(y, covariant_derivative(s.g, x, z));
        CHECK(compat.is_zero());

        // nabla_X Y - nabla_Y X = [X, Y], exactly
        VectorField torsion = covariant_derivative(s.g, x, y) -
                              covariant_derivative(s.g, y, x) - lie_bracket(x, y);
        CHECK(torsion.is_zero());

        // Leibniz in the second slot: nabla_X (f Y) = X(f) Y + f nabla_X Y
        RatFun f(smp.poly(s.chart, 2, 2));
        VectorField leib = covariant_derivative(s.g, x, f * y) - x.derive(f) * y -
                           f * covariant_derivative(s.g, x, y);
        CHECK(leib.is_zero());

        // first Bianchi identity at the sample points
        VectorField bianchi = curvature(s.g, x, y, z) + curvature(s.g, y, z, x) +
                              curvature(s.g, z, x, y);
        CHECK(vanishes_at(bianchi, pts));
    }
}

TEST_CASE("brackets of the phi-basis") {
    ContactStructure s = standard_sasakian(2);
    auto e = standard_phi_basis(s);  // E1, E2, E3, E4, xi
    // [E1, E3] = 2 xi: components (0,0,0,0,4)
    VectorField b = lie_bracket(e[0], e[2]);
    CHECK((b - FieldElem(2) * s.xi).is_zero());
    // [X, X] = 0
    CHECK(lie_bracket(e[2], e[2]).is_zero());
    // Jacobi identity for (E1, E3, xi)
    VectorField jac = lie_bracket(e[0], lie_bracket(e[2], s.xi)) +
                      lie_bracket(e[2], lie_bracket(s.xi, e[0])) +
                      lie_bracket(s.xi, lie_bracket(e[0], e[2]));
    CHECK(jac.is_zero());
}

TEST_CASE("covariant derivatives of the Reeb field") {
    ContactStructure s = standard_sasakian(2);
    auto e = standard_phi_basis(s);
    // nabla_{E1} xi = -phi E1 = -E3
    VectorField d = covariant_derivative(s.g, e[0], s.xi);
    CHECK((d + e[2]).is_zero());
    // nabla_xi xi = 0 for n = 1, 2, 3
    for (int n : {1, 2, 3}) {
        ContactStructure sn = standard_sasakian(n);
        CHECK(covariant_derivative(sn.g, sn.xi, sn.xi).is_zero());
    }
}

TEST_CASE("curvature identities on the standard structure") {
    ContactStructure s = standard_sasakian(2);
    auto e = standard_phi_basis(s);
    Sampler smp(23);
    auto pts = smp.sample_points(*s.chart, 5);

    // R(xi, E1)E1 = g(E1,E1) xi - eta(E1) E1 = xi, exactly as a field
    VectorField r = curvature(s.g, s.xi, e[0], e[0]);
    CHECK((r - s.xi).is_zero());

    // R(X, X)Z = 0
    VectorField x = random_field(smp, s.chart);
    VectorField z = random_field(smp, s.chart);
    CHECK(curvature(s.g, x, x, z).is_zero());

    // Ric(xi, xi) = 2n for n = 1, 2
    for (int n : {1, 2}) {
        ContactStructure sn = standard_sasakian(n);
        RatFun ric = ricci(sn.g, sn.xi, sn.xi);
        CHECK((ric - RatFun::constant(sn.chart, FieldElem(2 * n))).is_zero());
    }
}

TEST_CASE("exact curvature values match the finite-difference oracle") {
    ContactStructure s = standard_sasakian(1);
    Sampler smp(31);
    for (int t = 0; t < 5; ++t) {
        Point pt = smp.point(*s.chart);
        int i = static_cast<int>(smp.next(3)), j = static_cast<int>(smp.next(3)),
            k = static_cast<int>(smp.next(3));
        VectorField X = VectorField::coordinate(s.chart, i);
        VectorField Y = VectorField::coordinate(s.chart, j);
        VectorField Z = VectorField::coordinate(s.chart, k);
        auto exact = curvature(s.g, X, Y, Z).evaluate(pt);
        Eigen::VectorXd xi = Eigen::VectorXd::Zero(3), yj = Eigen::VectorXd::Zero(3),
                        zk = Eigen::VectorXd::Zero(3);
        xi(i) = 1;
        yj(j) = 1;
        zk(k) = 1;
        Eigen::VectorXd fd = numeric::curvature_fd(s.g, pt.doubles(), xi, yj, zk);
        for (int c = 0; c < 3; ++c) CHECK(std::abs(exact[c].to_double() - fd(c)) < 1e-6);
    }
}

TEST_CASE("orthonormalization") {
    ContactStructure s = standard_sasakian(2);
    auto e = standard_phi_basis(s);
    Point pt = Point::exact({Rational(1), make_rational(-1, 2), make_rational(1, 3), Rational(0),
                             Rational(2)});
    Matrix<FieldElem> gp = s.g.evaluate(pt);

    // The phi-basis is already orthonormal: Gram-Schmidt leaves it unchanged.
    std::vector<std::vector<FieldElem>> vecs;
    for (const auto& f : e) vecs.push_back(f.evaluate(pt));
    auto on = orthonormalize(gp, vecs);
    for (size_t a = 0; a < on.size(); ++a)
        for (int c = 0; c < 5; ++c)
            CHECK(std::abs(on[a][c] - vecs[a][c].to_double()) < 1e-12);

    // Duplicated input vector: rank deficiency is reported.
    vecs.push_back(vecs[0]);
    CHECK_THROWS_AS(orthonormalize(gp, vecs), rank_error);

    // {V1, V2, xi} from the slant kernel: |V1| = 3/sqrt(2), others unit.
    FieldElem r2 = FieldElem::sqrt_d(2);
    auto V1 = (FieldElem(2) * e[0] + r2.inverse() * e[3]).evaluate(pt);
    auto V2 = e[1].evaluate(pt);
    auto X = s.xi.evaluate(pt);
    auto on2 = orthonormalize(gp, {V1, V2, X});
    for (int c = 0; c < 5; ++c) {
        CHECK(std::abs(on2[0][c] - V1[c].to_double() / (3.0 / std::sqrt(2.0))) < 1e-12);
        CHECK(std::abs(on2[1][c] - V2[c].to_double()) < 1e-12);
        CHECK(std::abs(on2[2][c] - X[c].to_double()) < 1e-12);
    }
}
