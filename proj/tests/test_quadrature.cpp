#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "thermocq/quadrature.hpp"

using namespace thermocq;

namespace {

double integrate_1d(const Rule1D& r, int degree) {
    double s = 0.0;
    for (int i = 0; i < r.size(); ++i) s += r.weights[size_t(i)] * std::pow(r.nodes[size_t(i)], degree);
    return s;
}

double integrate_tri(const TriangleRule& r, int a, int b) {
    double s = 0.0;
    for (int i = 0; i < r.size(); ++i) {
        const Vec2 p = r.points[size_t(i)];
        s += r.weights[size_t(i)] * std::pow(p.x, a) * std::pow(p.y, b);
    }
    return s;
}

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

// integral of x^a y^b over the reference triangle {x,y >= 0, x+y <= 1}
double tri_monomial_exact(int a, int b) {
    return factorial(a) * factorial(b) / factorial(a + b + 2);
}

} // namespace

TEST_CASE("Gauss-Legendre rules on [0,1]") {
    for (int n = 1; n <= 12; ++n) {
        const Rule1D r = gauss_legendre(n);
        REQUIRE(r.size() == n);
        double wsum = 0.0;
        for (int i = 0; i < n; ++i) {
            CHECK(r.nodes[size_t(i)] > 0.0);
            CHECK(r.nodes[size_t(i)] < 1.0);
            CHECK(r.weights[size_t(i)] > 0.0);
            wsum += r.weights[size_t(i)];
        }
        CHECK(wsum == doctest::Approx(1.0).epsilon(1e-14));
        // exact for polynomials of degree <= 2n-1
        for (int d = 0; d <= 2 * n - 1; ++d)
            CHECK(integrate_1d(r, d) == doctest::Approx(1.0 / (d + 1)).epsilon(1e-13));
    }
    // degree 2n is NOT integrated exactly (sanity that the order claim is sharp)
    const Rule1D r2 = gauss_legendre(2);
    CHECK(std::abs(integrate_1d(r2, 4) - 0.2) > 1e-5);
    CHECK_THROWS_AS(gauss_legendre(0), std::invalid_argument);
}

TEST_CASE("log-weight rules integrate -ln(x) x^d exactly") {
    for (int n = 1; n <= 16; ++n) {
        const Rule1D r = gauss_log(n);
        REQUIRE(r.size() == n);
        // total mass of the weight: integral of -ln x over (0,1) is 1
        double wsum = 0.0;
        for (int i = 0; i < n; ++i) wsum += r.weights[size_t(i)];
        CHECK(wsum == doctest::Approx(1.0).epsilon(1e-13));
        for (int d = 0; d <= 2 * n - 1; ++d) {
            const double exact = 1.0 / double((d + 1) * (d + 1));
            CHECK(integrate_1d(r, d) == doctest::Approx(exact).epsilon(1e-12));
        }
    }
    CHECK_THROWS_AS(gauss_log(17), std::invalid_argument);
    CHECK_THROWS_AS(gauss_log(0), std::invalid_argument);
}

TEST_CASE("log rule actually resolves a log singularity") {
    // integral of -ln(x) cos(x) on (0,1) = Si(1) = 0.946083070367183...
    const Rule1D r = gauss_log(12);
    double s = 0.0;
    for (int i = 0; i < r.size(); ++i) s += r.weights[size_t(i)] * std::cos(r.nodes[size_t(i)]);
    CHECK(s == doctest::Approx(0.946083070367183).epsilon(1e-12));
}

TEST_CASE("triangle rules: weights and spot values") {
    const TriangleRule r3 = triangle_rule(3);
    double wsum = 0.0;
    for (int i = 0; i < r3.size(); ++i) wsum += r3.weights[size_t(i)];
    CHECK(wsum == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(integrate_tri(r3, 1, 1) == doctest::Approx(1.0 / 24.0).epsilon(1e-13));

    const TriangleRule r4 = triangle_rule(4);
    CHECK(integrate_tri(r4, 4, 0) == doctest::Approx(1.0 / 30.0).epsilon(1e-13));

    // all points inside the closed reference triangle
    for (int i = 0; i < r4.size(); ++i) {
        const Vec2 p = r4.points[size_t(i)];
        CHECK(p.x >= 0.0);
        CHECK(p.y >= 0.0);
        CHECK(p.x + p.y <= 1.0 + 1e-14);
    }
}

TEST_CASE("triangle rules: full monomial sweep up to the stated order") {
    for (int order = 1; order <= 10; ++order) {
        const TriangleRule r = triangle_rule(order);
        for (int a = 0; a <= order; ++a)
            for (int b = 0; a + b <= order; ++b)
                CHECK(integrate_tri(r, a, b) ==
                      doctest::Approx(tri_monomial_exact(a, b)).epsilon(1e-12));
    }
}
