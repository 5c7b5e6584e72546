#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>

#include "superlase/rosenbrock.hpp"

using namespace superlase;

TEST_CASE("linear stiff system integrates to the exact solution") {
    // dx/dt = A x with eigenvalues -1 and -1e6 (stiffness ratio 1e6)
    Eigen::Matrix2d A;
    A << -500000.5, 499999.5, 499999.5, -500000.5;
    OdeSystem sys;
    sys.dim = 2;
    sys.rhs = [A](const Eigen::VectorXd& x, Eigen::VectorXd& dx) { dx = A * x; };

    Eigen::VectorXd x(2);
    x << 1.0, 0.0;
    const double t1 = 3.0;
    IntegrateResult r = integrate(sys, x, 0.0, t1, {.rtol = 1e-10, .atol = 1e-14});
    REQUIRE(r.ok);

    Eigen::Vector2d exact = (A * t1).exp() * Eigen::Vector2d(1.0, 0.0);
    CHECK(std::abs(x[0] - exact[0]) <= 1e-8 * std::abs(exact[0]));
    CHECK(std::abs(x[1] - exact[1]) <= 1e-8 * std::abs(exact[0]));
    // stiffness must not force millions of steps
    CHECK(r.steps < 20000);
}

TEST_CASE("van der Pol relaxation oscillation completes") {
    const double mu = 1000.0;
    OdeSystem sys;
    sys.dim = 2;
    sys.rhs = [mu](const Eigen::VectorXd& x, Eigen::VectorXd& dx) {
        dx[0] = x[1];
        dx[1] = mu * (1.0 - x[0] * x[0]) * x[1] - x[0];
    };
    Eigen::VectorXd x(2);
    x << 2.0, 0.0;
    IntegrateResult r = integrate(sys, x, 0.0, 2000.0, {.rtol = 1e-8, .atol = 1e-10});
    REQUIRE(r.ok);
    CHECK(std::abs(x[0]) < 2.1);  // stays on the limit cycle
    CHECK(x.allFinite());
}

TEST_CASE("tolerance controls the error") {
    // dx/dt = -x, x(1) = e^-1
    OdeSystem sys;
    sys.dim = 1;
    sys.rhs = [](const Eigen::VectorXd& x, Eigen::VectorXd& dx) { dx[0] = -x[0]; };
    double errs[2];
    int k = 0;
    for (double rtol : {1e-6, 1e-10}) {
        Eigen::VectorXd x(1);
        x << 1.0;
        REQUIRE(integrate(sys, x, 0.0, 1.0, {.rtol = rtol, .atol = 1e-16}).ok);
        errs[k++] = std::abs(x[0] - std::exp(-1.0));
    }
    CHECK(errs[1] < errs[0]);
    CHECK(errs[1] < 1e-9);
}

TEST_CASE("finite-difference jacobian matches an analytic one") {
    OdeSystem sys;
    sys.dim = 2;
    sys.rhs = [](const Eigen::VectorXd& x, Eigen::VectorXd& dx) {
        dx[0] = 3.0 * x[0] - x[0] * x[1];
        dx[1] = x[0] * x[0] - 2.0 * x[1];
    };
    Eigen::VectorXd x(2);
    x << 1.3, -0.7;
    Eigen::MatrixXd J = fd_jacobian(sys, x);
    CHECK(J(0, 0) == doctest::Approx(3.0 - x[1]).epsilon(1e-6));
    CHECK(J(0, 1) == doctest::Approx(-x[0]).epsilon(1e-6));
    CHECK(J(1, 0) == doctest::Approx(2.0 * x[0]).epsilon(1e-6));
    CHECK(J(1, 1) == doctest::Approx(-2.0).epsilon(1e-6));
}
