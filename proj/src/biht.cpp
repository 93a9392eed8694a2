#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "onebit/baselines.hpp"

namespace onebit {

void hard_threshold(Vector& v, std::size_t s) {
  if (s >= v.size()) return;
  std::vector<std::size_t> idx(v.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  auto larger = [&](std::size_t a, std::size_t b) {
    const double fa = std::abs(v[a]), fb = std::abs(v[b]);
    return fa != fb ? fa > fb : a < b;
  };
  std::nth_element(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(s), idx.end(), larger);
  for (auto it = idx.begin() + static_cast<std::ptrdiff_t>(s); it != idx.end(); ++it) v[*it] = 0.0;
}

ReconResult biht_solve(const Instance& inst, const BihtParams& params) {
  const std::size_t m = inst.m(), n = inst.n();
  if (params.s < 1 || params.s > n) throw std::invalid_argument("biht_solve: need 1 <= s <= n");
  if (!(params.step > 0.0)) throw std::invalid_argument("biht_solve: step must be positive");
  const auto start = std::chrono::steady_clock::now();
  const bool l2 = params.variant == BihtVariant::one_sided_l2;

  // First iterate: the hard-thresholded matched filter.
  Vector x = multiply_transpose(inst.phi, inst.y);
  hard_threshold(x, params.s);
  if (l2) {
    const double nx = norm2(x);
    if (nx > 0.0)
      for (double& v : x) v /= nx;
  }

  Vector phix(m), residual(m), grad(n);
  std::size_t iterations = 0;
  for (std::size_t t = 0;; ++t) {
    multiply(inst.phi, x, phix);
    std::size_t bad = 0;
    for (std::size_t i = 0; i < m; ++i) {
      const double sign = phix[i] >= 0.0 ? 1.0 : -1.0;
      if (sign != inst.y[i]) ++bad;
      if (l2) {
        // ∇ of ½Σ min(y_i(Φx)_i, 0)²
        residual[i] = inst.y[i] * std::min(inst.y[i] * phix[i], 0.0);
      } else {
        residual[i] = inst.y[i] - sign;
      }
    }
    if (bad == 0 || t == params.max_iter) break;

    multiply_transpose(inst.phi, residual, grad);
    const double scale = l2 ? -params.step / static_cast<double>(m) : params.step / 2.0;
    for (std::size_t j = 0; j < n; ++j) x[j] += scale * grad[j];
    hard_threshold(x, params.s);
    if (l2) {
      const double nx = norm2(x);
      if (nx == 0.0) break;
      for (double& v : x) v /= nx;
    }
    ++iterations;
  }

  ReconResult r;
  const double nb = norm2(x);
  r.x_est = std::move(x);
  if (nb > 0.0)
    for (double& v : r.x_est) v /= nb;
  r.violations = violations(inst.phi, inst.y, r.x_est);
  r.support_size = support(r.x_est).count;
  r.iterations = iterations;
  r.wall_time = std::chrono::steady_clock::now() - start;
  return r;
}

}  // namespace onebit
