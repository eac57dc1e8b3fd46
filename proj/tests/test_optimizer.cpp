#include "sef/optimizer.hpp"

#include "sef/error.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace sef;

TEST_CASE("zero gradient never moves the parameters") {
    Matrix params(2, 2);
    params << 1.0, -2.0, 3.0, 0.5;
    const Matrix before = params;
    AdamState state(2, 2);
    for (int i = 0; i < 50; ++i) {
        adam_step(params, Matrix::Zero(2, 2), state, 0.01);
    }
    CHECK(params == before);
}

TEST_CASE("first step from a fresh state moves by about lr") {
    Matrix params = Matrix::Zero(1, 1);
    AdamState state(1, 1);
    adam_step(params, Matrix::Ones(1, 1), state, 1e-3);
    // bias-corrected m-hat = v-hat = 1, so the step is lr/(1 + eps)
    CHECK(params(0, 0) == doctest::Approx(-1e-3).epsilon(1e-6));
    CHECK(state.t == 1);
}

TEST_CASE("five-step scalar trace matches an independent reimplementation") {
    const double grads[5] = {1.0, -0.5, 0.25, 2.0, -1.0};
    const double lr = 0.1;

    // textbook update equations, scalar form
    double m = 0.0, v = 0.0, theta = 0.3;
    const double beta1 = 0.9, beta2 = 0.999, eps = 1e-8;
    Matrix params(1, 1);
    params << 0.3;
    AdamState state(1, 1);
    for (int t = 1; t <= 5; ++t) {
        const double g = grads[t - 1];
        m = beta1 * m + (1 - beta1) * g;
        v = beta2 * v + (1 - beta2) * g * g;
        const double m_hat = m / (1 - std::pow(beta1, t));
        const double v_hat = v / (1 - std::pow(beta2, t));
        theta -= lr * m_hat / (std::sqrt(v_hat) + eps);

        Matrix grad(1, 1);
        grad << g;
        adam_step(params, grad, state, lr);
        CHECK(params(0, 0) == doctest::Approx(theta).epsilon(1e-14));
    }
}

TEST_CASE("per-coordinate step magnitude stays near lr") {
    Matrix params = Matrix::Zero(3, 2);
    AdamState state(3, 2);
    std::mt19937_64 rng(131);
    std::uniform_real_distribution<double> dist(-5.0, 5.0);
    const double lr = 0.05;
    for (int step = 0; step < 100; ++step) {
        Matrix grad(3, 2);
        for (int j = 0; j < 2; ++j) {
            for (int i = 0; i < 3; ++i) grad(i, j) = dist(rng);
        }
        const Matrix before = params;
        adam_step(params, grad, state, lr);
        // m-hat/sqrt(v-hat) is bounded near 1 for bounded gradients
        CHECK((params - before).cwiseAbs().maxCoeff() < lr * 1.2);
    }
}

TEST_CASE("shape mismatch is rejected") {
    Matrix params = Matrix::Zero(2, 2);
    AdamState state(2, 2);
    CHECK_THROWS_AS(adam_step(params, Matrix::Zero(3, 2), state, 0.1), Error);
}
