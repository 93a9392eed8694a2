#include "onebit/pd_solver.hpp"

#include <cmath>
#include <stdexcept>

#include "onebit/prox.hpp"

namespace onebit {

PDState PDState::zeros(std::size_t m_plus_1, std::size_t n) {
  return {Vector(m_plus_1, 0.0), Vector(m_plus_1, 0.0), Vector(n, 0.0), 0};
}

double weighted_l1(std::span<const double> x, std::span<const double> gamma) {
  double s = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) s += gamma[j] * std::abs(x[j]);
  return s;
}

PDState pd_solve(const DenseMatrix& b, std::span<const double> gamma, const PDParams& params,
                 PDState state) {
  const std::size_t rows = b.rows(), n = b.cols();
  if (gamma.size() != n || state.x.size() != n || state.u_prev.size() != rows ||
      state.u_cur.size() != rows)
    throw std::invalid_argument("pd_solve: dimension mismatch");
  if (!(params.alpha > 0.0) || !(params.beta > 0.0))
    throw std::invalid_argument("pd_solve: step sizes must be positive");
  if (!(params.alpha * params.beta * params.operator_norm * params.operator_norm < 1.0))
    throw std::invalid_argument("pd_solve: step condition alpha*beta*|B|^2 < 1 violated");

  Vector extrap(rows), grad(n), x_next(n), bx(rows), u_next(rows);
  state.iterations = 0;
  for (std::size_t it = 0; it < params.max_iter; ++it) {
    for (std::size_t i = 0; i < rows; ++i) extrap[i] = 2.0 * state.u_cur[i] - state.u_prev[i];
    multiply_transpose(b, extrap, grad);
    for (std::size_t j = 0; j < n; ++j) grad[j] = state.x[j] - params.alpha * grad[j];
    prox_weighted_l1(grad, params.alpha, gamma, x_next);

    multiply(b, x_next, bx);
    for (std::size_t i = 0; i < rows; ++i) bx[i] = state.u_cur[i] + params.beta * bx[i];
    prox_conj_iota_c(bx, params.beta, u_next);

    const double x_step = distance2(x_next, state.x);
    const double u_step = distance2(u_next, state.u_cur);
    if (!std::isfinite(x_step) || !std::isfinite(u_step))
      throw NumericalFailure("pd_solve: non-finite iterate");
    const bool settled = x_step <= params.x_tol * std::max(1.0, norm2(state.x)) &&
                         u_step <= params.x_tol * std::max(1.0, norm2(state.u_cur));

    state.x.swap(x_next);
    state.u_prev.swap(state.u_cur);
    state.u_cur.swap(u_next);
    ++state.iterations;
    if (settled) break;
  }
  return state;
}

}  // namespace onebit
