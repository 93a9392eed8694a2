#include "onebit/blind.hpp"

#include "onebit/baselines.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>
#include <string>

namespace onebit {

BlindConfig BlindConfig::defaults(SurrogateKind kind) {
  BlindConfig c;
  if (kind == SurrogateKind::mangasarian) {
    c.alpha0 = 500;
    c.eps0 = 0.25;
  }
  return c;
}

void BlindConfig::validate() const {
  if (!(tau > 0.0 && tau < 1.0)) throw std::invalid_argument("BlindConfig: tau must lie in (0, 1)");
  if (!(eps0 > 0.0 && eps0 < 1.0)) throw std::invalid_argument("BlindConfig: eps0 must lie in (0, 1)");
  if (!(alpha0 > 0.0)) throw std::invalid_argument("BlindConfig: alpha0 must be positive");
  if (k_max == 0 || pd_max_iter == 0) throw std::invalid_argument("BlindConfig: empty iteration budget");
}

Vector initial_guess(const Instance& inst) {
  Vector x = multiply_transpose(inst.phi, inst.y);
  const double l1 = norm1(multiply(inst.phi, x));
  if (l1 == 0.0) throw NumericalFailure("initial_guess: Φᵀy lies in the null space of Φ");
  const double c = inst.b_scale / l1;
  for (double& v : x) v *= c;
  return x;
}

PDParams blind_pd_params(double alpha, const BlindConfig& config) {
  // The scheduled parameter drives the dual update; the primal step is
  // 0.999/alpha, so the pair always satisfies the step condition with ‖B̂‖ = 1.
  PDParams p;
  p.alpha = 0.999 / alpha;
  p.beta = alpha;
  p.max_iter = config.pd_max_iter;
  p.x_tol = config.pd_x_tol;
  p.operator_norm = 1.0;
  return p;
}

namespace {

Vector refresh_gamma(SurrogateKind kind, double eps, const Vector& x) {
  return gamma_from_log(log_weights({kind, eps}, x));
}

template <class F>
auto tagged(std::size_t k, F&& f) {
  try {
    return f();
  } catch (const NumericalFailure& e) {
    throw NumericalFailure("outer iteration " + std::to_string(k) + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument("outer iteration " + std::to_string(k) + ": " + e.what());
  }
}

}  // namespace

BlindOutcome blind_solve_detailed(const Instance& inst, SurrogateKind kind, const BlindConfig& config) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();
  const std::size_t n = inst.n();

  PDState state = PDState::zeros(inst.b.rows(), n);
  state.x = initial_guess(inst);
  Vector gamma(n, 1.0);
  double alpha = config.alpha0;
  double beta = 0.999 / config.alpha0;
  double eps = config.eps0;

  BlindOutcome out;
  std::size_t total_iterations = 0;
  for (std::size_t k = 0; k < config.k_max; ++k) {
    PDParams params = blind_pd_params(alpha, config);
    state = tagged(k, [&] { return pd_solve(inst.b, gamma, params, std::move(state)); });
    total_iterations += state.iterations;

    gamma = refresh_gamma(kind, eps, state.x);
    out.result.feps_trace.push_back(value({kind, eps}, state.x));
    out.steps.push_back({alpha, beta, eps, *std::max_element(gamma.begin(), gamma.end()),
                         state.iterations});

    if (config.schedules_enabled) {
      if (alpha < config.alpha_max) {
        alpha *= 2.0;
        beta /= 2.0;
      }
      if (eps > config.eps_min) eps *= config.tau;
    }
  }

  out.x_normalized = state.x;
  ReconResult& r = out.result;
  r.x_est = state.x;
  for (double& v : r.x_est) v /= inst.b_scale;
  r.violations = violations(inst.phi, inst.y, r.x_est);
  r.support_size = support(r.x_est).count;
  r.iterations = total_iterations;
  r.wall_time = std::chrono::steady_clock::now() - start;
  return out;
}

ReconResult blind_solve(const Instance& inst, SurrogateKind kind, const BlindConfig& config) {
  return blind_solve_detailed(inst, kind, config).result;
}

StandardLP weighted_subproblem_lp(const DenseMatrix& b, std::span<const double> gamma) {
  const std::size_t rows = b.rows(), n = b.cols(), m = rows - 1;
  if (gamma.size() != n) throw std::invalid_argument("weighted_subproblem_lp: dimension mismatch");
  StandardLP lp;
  lp.cost.assign(2 * n + m, 0.0);
  for (std::size_t j = 0; j < n; ++j) lp.cost[j] = lp.cost[n + j] = gamma[j];
  lp.a = DenseMatrix(rows, 2 * n + m);
  lp.rhs.assign(rows, 0.0);
  lp.rhs[m] = 1.0;
  for (std::size_t i = 0; i < rows; ++i) {
    auto src = b.row(i);
    for (std::size_t j = 0; j < n; ++j) {
      lp.a(i, j) = src[j];
      lp.a(i, n + j) = -src[j];
    }
    if (i < m) lp.a(i, 2 * n + i) = -1.0;
  }
  return lp;
}

FixedEpsTrace fixed_eps_trace(const Instance& inst, const SurrogateSpec& spec, const PDParams& pd,
                              std::size_t outer_iters, SubproblemSolver solver) {
  spec.validate();
  FixedEpsTrace trace;
  trace.kind = spec.kind;
  const std::size_t n = inst.n();

  PDState state = PDState::zeros(inst.b.rows(), n);
  state.x = initial_guess(inst);
  std::vector<std::size_t> basis;
  Vector previous_abs;
  for (std::size_t k = 0; k < outer_iters; ++k) {
    const Vector gamma = refresh_gamma(spec.kind, spec.eps, state.x);
    if (solver == SubproblemSolver::primal_dual) {
      state = tagged(k, [&] { return pd_solve(inst.b, gamma, pd, std::move(state)); });
    } else {
      const LpResult lp = simplex_solve(weighted_subproblem_lp(inst.b, gamma), basis);
      if (lp.status != LpStatus::optimal) throw LpFailure(lp.status);
      for (std::size_t j = 0; j < n; ++j) state.x[j] = lp.x[j] - lp.x[n + j];
      basis = lp.basis;
    }

    trace.feps.push_back(value(spec, state.x));
    trace.sup_norms.push_back(norm_inf(state.x));
    trace.feasibility.push_back(ConstraintSetC::residual(multiply(inst.b, state.x)));
    Vector abs_x(n);
    for (std::size_t j = 0; j < n; ++j) abs_x[j] = std::abs(state.x[j]);
    if (!previous_abs.empty()) {
      const double d = distance2(abs_x, previous_abs);
      trace.increments.push_back(d * d);
    }
    previous_abs = std::move(abs_x);
  }
  trace.x_final = state.x;
  return trace;
}

}  // namespace onebit
