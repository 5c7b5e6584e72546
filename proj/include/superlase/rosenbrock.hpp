#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>

namespace superlase {

// A first-order autonomous ODE system in packed real coordinates.
struct OdeSystem {
    int dim = 0;
    std::function<void(const Eigen::VectorXd&, Eigen::VectorXd&)> rhs;
    // optional validity region (closure bounds with slack); steady-state
    // searches refuse to leave it
    std::function<bool(const Eigen::VectorXd&)> physical;
};

Eigen::MatrixXd fd_jacobian(const OdeSystem& sys, const Eigen::VectorXd& x);

struct IntegrateOptions {
    double rtol = 1e-10;
    double atol = 1e-14;
    double dt_init = 0;      // 0: choose from the first derivative
    long max_steps = 2000000;
};

struct IntegrateResult {
    double t = 0;
    long steps = 0;
    long rejected = 0;
    bool ok = false;
    std::string what;
};

// Adaptive L-stable Rosenbrock 4(3) integration of x over [t0, t1].
// Stiffly accurate RODAS coefficients, Gustafsson predictive step control,
// finite-difference Jacobian refreshed every step.
IntegrateResult integrate(const OdeSystem& sys, Eigen::VectorXd& x, double t0, double t1,
                          const IntegrateOptions& opts = {});

}  // namespace superlase
