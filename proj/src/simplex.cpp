#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "onebit/baselines.hpp"

namespace onebit {

std::string to_string(LpStatus s) {
  switch (s) {
    case LpStatus::optimal: return "optimal";
    case LpStatus::infeasible: return "infeasible";
    case LpStatus::unbounded: return "unbounded";
    case LpStatus::iteration_limit: return "iteration_limit";
  }
  return "unknown";
}

void StandardLP::validate() const {
  if (a.rows() != rhs.size() || a.cols() != cost.size())
    throw std::invalid_argument("StandardLP: inconsistent dimensions");
}

namespace {

constexpr double kPivotTol = 1e-9;
constexpr double kCostTol = 1e-9;
constexpr double kRatioTol = 1e-12;
constexpr std::size_t kStallLimit = 50;
constexpr std::size_t kRefactorEvery = 64;

// Column j is a unit column of row i if its only nonzero entry sits in row i.
std::vector<std::size_t> unit_columns(const StandardLP& lp) {
  const std::size_t m = lp.constraints(), n = lp.variables();
  constexpr std::size_t none = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> row_of(n, none);
  std::vector<std::size_t> count(n, 0);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (lp.a(i, j) != 0.0) {
        ++count[j];
        row_of[j] = i;
      }
  for (std::size_t j = 0; j < n; ++j)
    if (count[j] != 1) row_of[j] = none;
  return row_of;
}

// Phase-1 system [A | I] x = b with rows flipped so that b ≥ 0. Columns
// 0..n-1 are the structural variables, n..n+m-1 the artificials and the last
// column holds b. `start` receives a crash basis: a unit column with a
// positive entry where a row has one (rows with b_i = 0 are flipped to make
// one positive), the row's artificial otherwise.
DenseMatrix phase1_system(const StandardLP& lp, std::vector<std::size_t>& start) {
  const std::size_t m = lp.constraints(), n = lp.variables();
  const std::vector<std::size_t> unit_row = unit_columns(lp);
  start.assign(m, 0);
  for (std::size_t i = 0; i < m; ++i) start[i] = n + i;
  std::vector<double> sgn(m, 0.0);
  for (std::size_t i = 0; i < m; ++i)
    if (lp.rhs[i] != 0.0) sgn[i] = lp.rhs[i] < 0.0 ? -1.0 : 1.0;
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t i = unit_row[j];
    if (i >= m || start[i] < n) continue;
    const double a = lp.a(i, j);
    if (sgn[i] == 0.0) sgn[i] = a > 0.0 ? 1.0 : -1.0;
    if (sgn[i] * a > 0.0) start[i] = j;
  }
  DenseMatrix s(m, n + m + 1);
  for (std::size_t i = 0; i < m; ++i) {
    const double g = sgn[i] == 0.0 ? 1.0 : sgn[i];
    for (std::size_t j = 0; j < n; ++j) s(i, j) = g * lp.a(i, j);
    s(i, n + i) = 1.0;
    s(i, n + m) = g * lp.rhs[i];
  }
  return s;
}

class Simplex {
 public:
  Simplex(DenseMatrix system, std::size_t max_pivots)
      : sys_(std::move(system)), max_pivots_(max_pivots) {
    const std::size_t m = sys_.rows();
    width_ = sys_.cols();
    rows_.resize(m);
    basis_.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
      rows_[i] = i;
      basis_[i] = width_ - 1 - m + i;
    }
    t_ = sys_;
    cost_.assign(width_ - 1, 0.0);
    d_.assign(width_, 0.0);
    allowed_.assign(width_ - 1, 1);
  }

  // Install a basis (one column per row). Returns false, leaving the state
  // unusable, if the basis matrix is singular or the basic solution is
  // infeasible.
  bool set_basis(const std::vector<std::size_t>& basis) {
    basis_ = basis;
    if (!refactor()) return false;
    for (std::size_t i = 0; i < rows(); ++i)
      if (value(i) < -1e-9) return false;
    return true;
  }

  std::size_t columns() const { return width_ - 1; }
  std::size_t rows() const { return rows_.size(); }
  std::size_t pivots() const { return pivots_; }
  const std::vector<std::size_t>& basis() const { return basis_; }
  double value(std::size_t i) const { return t_(i, width_ - 1); }
  double objective() const { return -d_[width_ - 1]; }

  void set_cost(Vector cost) {
    cost_ = std::move(cost);
    price();
  }
  void forbid(std::size_t j) { allowed_[j] = 0; }

  // Dantzig pricing while the objective moves. After kStallLimit consecutive
  // degenerate pivots the loop switches to Bland's rule (lowest-index
  // entering column, lowest basis index among ratio ties) until a pivot makes
  // progress, which rules out cycling. When `bounded` is set the problem is
  // known to be bounded, so a column without an admissible pivot only carries
  // rounding noise in its reduced cost and is passed over.
  LpStatus run(bool bounded) {
    std::vector<char> noisy(columns(), 0);
    std::size_t degenerate_run = 0;
    std::size_t since_refactor = 0;
    while (true) {
      const bool bland = degenerate_run >= kStallLimit;
      std::size_t enter = columns();
      double most_negative = -kCostTol;
      for (std::size_t j = 0; j < columns(); ++j) {
        if (!allowed_[j] || noisy[j] || d_[j] >= most_negative) continue;
        enter = j;
        if (bland) break;
        most_negative = d_[j];
      }
      if (enter == columns()) {
        if (since_refactor == 0) return LpStatus::optimal;
        // Confirm optimality on freshly computed reduced costs.
        refactor();
        since_refactor = 0;
        std::fill(noisy.begin(), noisy.end(), 0);
        continue;
      }

      std::size_t leave = rows();
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < rows(); ++i) {
        const double a = t_(i, enter);
        if (a <= kPivotTol) continue;
        const double ratio = std::max(value(i), 0.0) / a;
        if (leave == rows() || ratio < best - kRatioTol) {
          best = ratio;
          leave = i;
        } else if (ratio <= best + kRatioTol) {
          const bool take = bland ? basis_[i] < basis_[leave] : a > t_(leave, enter);
          if (take) {
            best = std::min(best, ratio);
            leave = i;
          }
        }
      }
      if (leave == rows()) {
        if (!bounded) return LpStatus::unbounded;
        noisy[enter] = 1;
        continue;
      }
      if (pivots_ >= max_pivots_) return LpStatus::iteration_limit;
      pivot(leave, enter);
      ++pivots_;
      std::fill(noisy.begin(), noisy.end(), 0);
      degenerate_run = best > kRatioTol ? 0 : degenerate_run + 1;
      if (++since_refactor == kRefactorEvery) {
        refactor();
        since_refactor = 0;
      }
    }
  }

  // Pivot basic columns >= `first_artificial` out of the basis using the
  // largest available entry of their row; rows with no usable entry are
  // linearly dependent and are dropped.
  void drive_out(std::size_t first_artificial) {
    for (std::size_t i = 0; i < rows();) {
      if (basis_[i] < first_artificial) {
        ++i;
        continue;
      }
      std::size_t c = first_artificial;
      double big = kPivotTol;
      for (std::size_t j = 0; j < first_artificial; ++j) {
        if (std::abs(t_(i, j)) > big) {
          big = std::abs(t_(i, j));
          c = j;
        }
      }
      if (c == first_artificial) {
        rows_.erase(rows_.begin() + static_cast<std::ptrdiff_t>(i));
        basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(i));
        t_ = DenseMatrix(rows(), width_);
        refactor();
        continue;
      }
      pivot(i, c);
      ++pivots_;
      ++i;
    }
    refactor();
  }

 private:
  void pivot(std::size_t r, std::size_t c) {
    double* pr = &t_(r, 0);
    const double inv = 1.0 / pr[c];
    for (std::size_t j = 0; j < width_; ++j) pr[j] *= inv;
    pr[c] = 1.0;
    for (std::size_t i = 0; i < rows(); ++i) {
      if (i == r) continue;
      double* pi = &t_(i, 0);
      const double f = pi[c];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < width_; ++j) pi[j] -= f * pr[j];
      pi[c] = 0.0;
    }
    const double f = d_[c];
    if (f != 0.0)
      for (std::size_t j = 0; j < width_; ++j) d_[j] -= f * pr[j];
    d_[c] = 0.0;
    basis_[r] = c;
  }

  // d_j = c_j − c_Bᵀ T_j, with the negated objective in the last slot.
  void price() {
    for (std::size_t j = 0; j < width_; ++j) {
      double s = 0.0;
      for (std::size_t i = 0; i < rows(); ++i) s += cost_[basis_[i]] * t_(i, j);
      d_[j] = (j + 1 == width_ ? 0.0 : cost_[j]) - s;
    }
    for (std::size_t i = 0; i < rows(); ++i) d_[basis_[i]] = 0.0;
  }

  // Rebuild the tableau as A_B⁻¹·[A | b] from the original rows by Gaussian
  // elimination with partial pivoting, discarding accumulated rounding error.
  // Keeps the current tableau and returns false if the basis matrix looks
  // singular.
  bool refactor() {
    const std::size_t k = rows();
    DenseMatrix lu(k, k);
    DenseMatrix rhs(k, width_);
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t c = 0; c < k; ++c) lu(i, c) = sys_(rows_[i], basis_[c]);
      for (std::size_t j = 0; j < width_; ++j) rhs(i, j) = sys_(rows_[i], j);
    }
    for (std::size_t c = 0; c < k; ++c) {
      std::size_t p = c;
      for (std::size_t i = c + 1; i < k; ++i)
        if (std::abs(lu(i, c)) > std::abs(lu(p, c))) p = i;
      if (std::abs(lu(p, c)) < 1e-13) {
        price();
        return false;
      }
      if (p != c) {
        std::swap_ranges(lu.row(p).begin(), lu.row(p).end(), lu.row(c).begin());
        std::swap_ranges(rhs.row(p).begin(), rhs.row(p).end(), rhs.row(c).begin());
      }
      for (std::size_t i = c + 1; i < k; ++i) {
        const double f = lu(i, c) / lu(c, c);
        if (f == 0.0) continue;
        for (std::size_t j = c; j < k; ++j) lu(i, j) -= f * lu(c, j);
        auto ri = rhs.row(i);
        auto rc = rhs.row(c);
        for (std::size_t j = 0; j < width_; ++j) ri[j] -= f * rc[j];
      }
    }
    for (std::size_t c = k; c-- > 0;) {
      auto rc = rhs.row(c);
      for (std::size_t i = c + 1; i < k; ++i) {
        const double f = lu(c, i);
        if (f == 0.0) continue;
        auto ri = rhs.row(i);
        for (std::size_t j = 0; j < width_; ++j) rc[j] -= f * ri[j];
      }
      const double inv = 1.0 / lu(c, c);
      for (double& v : rc) v *= inv;
    }
    // Row i of the solution belongs to basis column i.
    t_ = std::move(rhs);
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t c = 0; c < k; ++c) t_(i, basis_[c]) = i == c ? 1.0 : 0.0;
      if (t_(i, width_ - 1) < 0.0 && t_(i, width_ - 1) > -1e-9) t_(i, width_ - 1) = 0.0;
    }
    price();
    return true;
  }

  DenseMatrix sys_;
  DenseMatrix t_;
  std::size_t width_ = 0;
  std::size_t max_pivots_;
  std::size_t pivots_ = 0;
  std::vector<std::size_t> rows_;   // original row index of each tableau row
  std::vector<std::size_t> basis_;  // basic column of each tableau row
  Vector cost_;
  Vector d_;  // reduced costs; last entry is −objective
  std::vector<char> allowed_;
};

}  // namespace

LpResult simplex_solve(const StandardLP& lp, std::size_t max_pivots) {
  return simplex_solve(lp, {}, max_pivots);
}

LpResult simplex_solve(const StandardLP& lp, std::span<const std::size_t> warm_basis,
                       std::size_t max_pivots) {
  lp.validate();
  const std::size_t m = lp.constraints(), n = lp.variables();
  LpResult result;

  std::vector<std::size_t> crash;
  DenseMatrix system = phase1_system(lp, crash);
  Simplex s(system, max_pivots);
  bool warm = warm_basis.size() == m &&
              std::all_of(warm_basis.begin(), warm_basis.end(), [&](std::size_t j) { return j < n; }) &&
              s.set_basis({warm_basis.begin(), warm_basis.end()});
  if (!warm) {
    s = Simplex(std::move(system), max_pivots);
    if (!s.set_basis(crash)) throw std::logic_error("simplex_solve: crash basis rejected");
    Vector phase1_cost(n + m, 0.0);
    std::fill(phase1_cost.begin() + static_cast<std::ptrdiff_t>(n), phase1_cost.end(), 1.0);
    s.set_cost(std::move(phase1_cost));
    LpStatus st = s.run(true);
    result.pivots = s.pivots();
    if (st == LpStatus::iteration_limit) {
      result.status = st;
      return result;
    }
    double scale = 1.0;
    for (double b : lp.rhs) scale = std::max(scale, std::abs(b));
    if (s.objective() > 1e-9 * scale) {
      result.status = LpStatus::infeasible;
      return result;
    }
    s.drive_out(n);
  }

  Vector phase2_cost(n + m, 0.0);
  std::copy(lp.cost.begin(), lp.cost.end(), phase2_cost.begin());
  for (std::size_t j = n; j < n + m; ++j) s.forbid(j);
  s.set_cost(std::move(phase2_cost));
  const LpStatus st = s.run(false);
  result.pivots = s.pivots();
  result.status = st;
  if (st != LpStatus::optimal) return result;

  result.x.assign(n, 0.0);
  for (std::size_t i = 0; i < s.rows(); ++i)
    if (s.basis()[i] < n) result.x[s.basis()[i]] = std::max(s.value(i), 0.0);
  if (s.rows() == m) result.basis = s.basis();
  result.objective = dot(lp.cost, result.x);
  return result;
}

}  // namespace onebit
