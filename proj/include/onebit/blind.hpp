#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "onebit/baselines.hpp"
#include "onebit/pd_solver.hpp"
#include "onebit/problem.hpp"
#include "onebit/surrogate.hpp"

namespace onebit {

/// Outer-loop schedule of the blind reweighting solver.
struct BlindConfig {
  std::size_t k_max = 17;
  double tau = 0.5;        // ε shrink factor
  double alpha_max = 8000;
  double eps_min = 1e-5;
  // alpha doubles and beta = 0.999/alpha halves each outer step until alpha
  // reaches alpha_max. alpha is applied as the dual step of the primal-dual
  // iteration and beta as its primal step (see blind_pd_params).
  double alpha0 = 250;
  double eps0 = 0.125;
  std::size_t pd_max_iter = 300;
  double pd_x_tol = 1e-6;
  bool schedules_enabled = true;

  /// Published starting pairs: (500, 0.25) for Mangasarian, (250, 0.125) for Log-Det.
  static BlindConfig defaults(SurrogateKind kind);
  void validate() const;
};

/// Parameters in force during one outer iteration, after Γ was refreshed.
struct OuterStep {
  double alpha;
  double beta;
  double eps;
  double gamma_max;
  std::size_t pd_iterations;
};

struct BlindOutcome {
  ReconResult result;
  std::vector<OuterStep> steps;
  Vector x_normalized;  // final iterate in the scaled variable (B̂x ∈ C)
};

/// Primal-dual parameters for one outer step with scheduled value `alpha`.
PDParams blind_pd_params(double alpha, const BlindConfig& config);

/// Matched-filter start Φᵀy, scaled so that ‖Φx‖₁ equals b_scale (the
/// normalized problem's analogue of ‖Φx‖₁ = 1).
Vector initial_guess(const Instance& inst);

BlindOutcome blind_solve_detailed(const Instance& inst, SurrogateKind kind, const BlindConfig& config);
ReconResult blind_solve(const Instance& inst, SurrogateKind kind, const BlindConfig& config);
inline ReconResult blind_solve(const Instance& inst, SurrogateKind kind) {
  return blind_solve(inst, kind, BlindConfig::defaults(kind));
}

/// Fixed-ε reweighting run (no schedules) used to observe the convergence
/// properties of the outer loop. Entry k of each sequence refers to x^{(k+1)},
/// the output of the k-th weighted subproblem; x^{(0)} is the matched-filter
/// start, which is generally infeasible and therefore not traced.
struct FixedEpsTrace {
  SurrogateKind kind = SurrogateKind::log_det;
  std::vector<double> feps;        // F_ε(x^{(k+1)})
  std::vector<double> increments;  // ‖|x^{(k+2)}| − |x^{(k+1)}|‖₂²
  std::vector<double> sup_norms;   // ‖x^{(k+1)}‖∞
  std::vector<double> feasibility; // ConstraintSetC::residual(B̂x^{(k+1)})
  Vector x_final;
};

/// How each weighted subproblem min ‖Γx‖₁ s.t. B̂x ∈ C is solved. The
/// primal-dual iteration (warm-started across outer steps) is what the blind
/// solver uses; the simplex solves it exactly, warm-started from the previous
/// optimal basis, which is what the monotonicity statements presume.
enum class SubproblemSolver { primal_dual, simplex };

/// The subproblem as a standard-form LP over (x⁺, x⁻, slack): B̂_i(x⁺ − x⁻) −
/// s_i = 0 for i ≤ m, B̂_{m+1}(x⁺ − x⁻) = 1, cost γ on both halves.
StandardLP weighted_subproblem_lp(const DenseMatrix& b, std::span<const double> gamma);

/// `pd` is ignored for SubproblemSolver::simplex.
FixedEpsTrace fixed_eps_trace(const Instance& inst, const SurrogateSpec& spec, const PDParams& pd,
                              std::size_t outer_iters,
                              SubproblemSolver solver = SubproblemSolver::primal_dual);

}  // namespace onebit
