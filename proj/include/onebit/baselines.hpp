#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>

#include "onebit/numerics.hpp"
#include "onebit/problem.hpp"

namespace onebit {

// ---------------------------------------------------------------------------
// Binary iterative hard thresholding

enum class BihtVariant { one_sided_l1, one_sided_l2 };

struct BihtParams {
  std::size_t s = 1;  // sparsity input
  BihtVariant variant = BihtVariant::one_sided_l1;
  double step = 1.0;
  std::size_t max_iter = 1000;
};

/// Gradient step on the one-sided loss followed by keeping the s largest
/// entries (ties to the lower index). Starts from the matched filter Φᵀy,
/// stops at the first consistent iterate or after max_iter steps. The output
/// has unit ℓ2 norm.
ReconResult biht_solve(const Instance& inst, const BihtParams& params);

/// Keep the s largest-magnitude entries of v; ties go to the lower index.
void hard_threshold(Vector& v, std::size_t s);

// ---------------------------------------------------------------------------
// Linear programming

/// min cᵀx  s.t.  A x = b,  x ≥ 0.
struct StandardLP {
  Vector cost;
  DenseMatrix a;
  Vector rhs;

  std::size_t variables() const { return cost.size(); }
  std::size_t constraints() const { return rhs.size(); }
  void validate() const;
};

enum class LpStatus { optimal, infeasible, unbounded, iteration_limit };
std::string to_string(LpStatus s);

struct LpResult {
  LpStatus status = LpStatus::infeasible;
  Vector x;
  double objective = 0.0;
  std::size_t pivots = 0;
  // Basic column of each constraint row at the optimum; empty if redundant
  // rows were dropped. Suitable as a warm start for an LP that differs only
  // in its cost vector.
  std::vector<std::size_t> basis;
};

/// Dense two-phase tableau simplex. Pricing is Dantzig's rule with a switch to
/// Bland's rule during runs of degenerate pivots, and the tableau is
/// periodically recomputed from the original data.
LpResult simplex_solve(const StandardLP& lp, std::size_t max_pivots = 1'000'000);
/// As above, starting phase 2 directly from `warm_basis` when it is a
/// nonsingular, primal-feasible basis of structural columns; otherwise the
/// warm start is ignored.
LpResult simplex_solve(const StandardLP& lp, std::span<const std::size_t> warm_basis,
                       std::size_t max_pivots = 1'000'000);

class LpFailure : public std::runtime_error {
 public:
  explicit LpFailure(LpStatus s)
      : std::runtime_error("linear program not solved: " + to_string(s)), status_(s) {}
  LpStatus status() const { return status_; }

 private:
  LpStatus status_;
};

/// Right-hand side of the sign rows in pv_formulate. Active sign constraints
/// sit at this value rather than at 0, so they survive rounding and the
/// sign(0) = +1 convention when y_i = −1.
inline constexpr double kPvSignMargin = 1e-9;

/// min ‖x‖₁ s.t. YΦx ≥ margin, ⟨Φᵀy, x⟩ = 1, with x = x⁺ − x⁻ and one slack
/// per sign constraint: 2n + m variables and m + 1 equality rows.
StandardLP pv_formulate(const Instance& inst);

/// Recover x = x⁺ − x⁻ from a pv_formulate solution vector.
Vector pv_extract(const Instance& inst, const Vector& lp_x);

ReconResult pv_solve(const Instance& inst);

}  // namespace onebit
