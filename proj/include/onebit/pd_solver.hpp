#pragma once

#include <cstddef>
#include <span>

#include "onebit/numerics.hpp"

namespace onebit {

/// Step sizes and stopping rule of the primal-dual iteration.
struct PDParams {
  double alpha = 1.0;  // primal step
  double beta = 0.999; // dual step
  std::size_t max_iter = 300;
  // Stop when ‖x⁺ − x‖ ≤ x_tol·max(1, ‖x‖) and the same holds for the dual.
  double x_tol = 1e-6;
  // Upper bound on ‖B‖. The step condition is alpha·beta·operator_norm² < 1.
  double operator_norm = 1.0;
};

/// Iterate triple (u^{i-1}, u^i, x^i). After a solve, `u_prev`/`u_cur` hold
/// (u^{cur}, u^{new}) so the state can be passed straight back in as a warm start.
struct PDState {
  Vector u_prev;
  Vector u_cur;
  Vector x;
  std::size_t iterations = 0;

  static PDState zeros(std::size_t m_plus_1, std::size_t n);
};

/// Solves min ‖Γx‖₁ + ι_C(Bx) with
///   x^{i+1} = prox_{α‖Γ·‖₁}(x^i − α·Bᵀ(2u^i − u^{i−1}))
///   u^{i+1} = prox_{β ι_C^*}(u^i + β·B·x^{i+1})
/// Throws std::invalid_argument if the step condition fails and
/// NumericalFailure on a non-finite iterate.
PDState pd_solve(const DenseMatrix& b, std::span<const double> gamma, const PDParams& params,
                 PDState init);

/// ‖Γx‖₁.
double weighted_l1(std::span<const double> x, std::span<const double> gamma);

}  // namespace onebit
