#include "sef/optimizer.hpp"

#include "sef/error.hpp"

#include <cmath>

namespace sef {

void adam_step(Matrix& params, const Matrix& grad, AdamState& state, double lr) {
    if (params.rows() != grad.rows() || params.cols() != grad.cols() ||
        params.rows() != state.m.rows() || params.cols() != state.m.cols()) {
        throw Error(ErrorKind::DimensionMismatch, "Adam buffers must match the parameter shape");
    }
    if (!(lr > 0.0)) {
        throw Error(ErrorKind::InvalidParameter, "learning rate must be positive");
    }
    state.t += 1;
    state.m = state.beta1 * state.m + (1.0 - state.beta1) * grad;
    state.v = state.beta2 * state.v + (1.0 - state.beta2) * grad.array().square().matrix();
    const double bias1 = 1.0 - std::pow(state.beta1, static_cast<double>(state.t));
    const double bias2 = 1.0 - std::pow(state.beta2, static_cast<double>(state.t));
    params.array() -= lr * (state.m.array() / bias1) /
                      ((state.v.array() / bias2).sqrt() + state.eps);
}

} // namespace sef
