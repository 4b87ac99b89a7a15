#include "hylink/constants.hpp"
#include "hylink/errors.hpp"
#include "hylink/numerics.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>

using namespace hylink;
using namespace hylink::numerics;
using doctest::Approx;

TEST_CASE("Gauss-Kronrod integrates polynomials exactly on one panel")
{
    const auto r = integrate_adaptive([](double x) { return 3 * x * x - 2 * x + 1; }, 0.0, 2.0);
    CHECK(r.value == Approx(6.0).epsilon(1e-14));
    CHECK(r.subdivisions == 1);
}

TEST_CASE("smooth transcendental integrands")
{
    CHECK(integrate_adaptive([](double x) { return std::sin(x); }, 0.0, constants::pi).value ==
          Approx(2.0).epsilon(1e-12));
    CHECK(integrate_adaptive([](double x) { return std::exp(-x * x); }, -10.0, 10.0).value ==
          Approx(std::sqrt(constants::pi)).epsilon(1e-12));
}

TEST_CASE("narrow Lorentzian needs a breakpoint")
{
    const double gamma = 1e-4;
    auto f = [&](double x) { return gamma / (gamma * gamma + (x - 0.3) * (x - 0.3)); };
    QuadratureSpec spec;
    spec.mandatory_breakpoints = {0.3};
    const double exact = std::atan(0.7 / gamma) + std::atan(1.3 / gamma);
    CHECK(integrate_adaptive(f, -1.0, 1.0, spec).value == Approx(exact).epsilon(1e-9));
}

TEST_CASE("reversed and empty intervals are rejected")
{
    auto f = [](double x) { return x; };
    CHECK_THROWS_AS(integrate_adaptive(f, 1.0, 0.0), DomainError);
    CHECK_THROWS_AS(integrate_adaptive(f, 1.0, 1.0), DomainError);
}

TEST_CASE("quadrature is deterministic")
{
    auto f = [](double x) { return std::cos(40 * x) * std::exp(-x); };
    const auto a = integrate_adaptive(f, 0.0, 5.0);
    const auto b = integrate_adaptive(f, 0.0, 5.0);
    CHECK(a.value == b.value);
    CHECK(a.error == b.error);
    CHECK(a.subdivisions == b.subdivisions);
}

TEST_CASE("quadrature error paths")
{
    CHECK_THROWS_AS(integrate_adaptive([](double) { return std::numeric_limits<double>::quiet_NaN(); }, 0.0, 1.0),
                    DomainError);
    QuadratureSpec bad;
    bad.rel_tol = -1.0;
    CHECK_THROWS_AS(integrate_adaptive([](double x) { return x; }, 0.0, 1.0, bad), DomainError);

    QuadratureSpec tight;
    tight.max_subdivisions = 3;
    tight.rel_tol = 1e-14;
    tight.abs_tol = 0.0;
    try
    {
        integrate_adaptive([](double x) { return std::sqrt(std::abs(std::sin(50 * x))); }, 0.0, 3.0, tight);
        FAIL("expected ConvergenceError");
    }
    catch (const ConvergenceError& e)
    {
        CHECK(std::isfinite(e.best_estimate()));
        CHECK(e.error_estimate() > 0.0);
    }
}

TEST_CASE("Brent root finding")
{
    const double root = find_root([](double x) { return x * x - 2.0; }, {0.0, 2.0});
    CHECK(root == Approx(std::sqrt(2.0)).epsilon(1e-12));
    const double c = find_root([](double x) { return std::cos(x) - x; }, {0.0, 1.0, 1e-14});
    CHECK(std::abs(std::cos(c) - c) < 1e-13);
    CHECK(find_root([](double x) { return x - 0.25; }, {0.25, 1.0}) == 0.25);
}

TEST_CASE("Brent keeps a bracket on a discontinuous function")
{
    const double x = find_root([](double v) { return v < 0.7 ? -1.0 : 1.0; }, {0.0, 1.0, 1e-10});
    CHECK(std::abs(x - 0.7) < 1e-9);
}

TEST_CASE("root finding errors")
{
    CHECK_THROWS_AS(find_root([](double x) { return x * x + 1.0; }, {-1.0, 1.0}), DomainError);
    CHECK_THROWS_AS(find_root([](double x) { return x; }, {1.0, -1.0}), DomainError);
    RootSpec few{0.0, 2.0, 1e-15, 2};
    CHECK_THROWS_AS(find_root([](double x) { return std::exp(x) - 3.0; }, few), ConvergenceError);
}

TEST_CASE("maximize interior and boundary optima")
{
    const auto interior = maximize_1d([](double x) { return -(x - 0.3) * (x - 0.3); }, 0.0, 1.0, 1e-10);
    CHECK(interior.x == Approx(0.3).epsilon(1e-8));
    CHECK_FALSE(interior.multimodal_warning);

    const auto edge = maximize_1d([](double x) { return x; }, 0.0, 2.0, 1e-10);
    CHECK(edge.x == 2.0);
    CHECK(edge.value == 2.0);
    const auto left = maximize_1d([](double x) { return -x; }, -1.0, 2.0, 1e-10);
    CHECK(left.x == -1.0);
}

TEST_CASE("maximize flags multimodal functions")
{
    const auto r = maximize_1d([](double x) { return std::cos(6 * constants::pi * x) + 0.1 * x; }, 0.0, 1.0, 1e-10);
    CHECK(r.multimodal_warning);
    CHECK(r.value >= 1.0);
}
