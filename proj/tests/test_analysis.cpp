#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "onebit/analysis.hpp"

using namespace onebit;

TEST_CASE("equal magnitudes give (n-K)/K") {
  const Vector xi{1, -1, 1, 1, -1, 1};
  for (std::size_t k = 1; k < 6; ++k)
    CHECK(rsp_ratio(xi, k) == doctest::Approx(static_cast<double>(6 - k) / static_cast<double>(k)));

  // A single all-ones row maps every b to a constant ξ.
  const DenseMatrix b(1, 8, 1.0);
  const RspEstimate e = rsp_rho_estimate(b, 3, 20, {5, 0});
  CHECK(e.rho_hat == doctest::Approx(5.0 / 3.0).epsilon(1e-12));
  CHECK(e.samples == 20);
  CHECK(e.order == 3);
}

TEST_CASE("K = n-1 compares the largest entry with the rest") {
  const Vector xi{0.5, -4.0, 1.5, 2.0};
  CHECK(rsp_ratio(xi, 3) == doctest::Approx(4.0 / 4.0));
  const Vector g = gaussian_vector({71, 0}, 9);
  double mx = 0.0, total = 0.0;
  for (double v : g) {
    mx = std::max(mx, std::abs(v));
    total += std::abs(v);
  }
  CHECK(rsp_ratio(g, 8) == doctest::Approx(mx / (total - mx)).epsilon(1e-12));
}

TEST_CASE("zero denominators are infinite samples") {
  const Vector xi{0, 0, 3};
  CHECK(std::isinf(rsp_ratio(xi, 2)));
  DenseMatrix b(2, 3, 0.0);
  b(0, 2) = 1.0;
  const RspEstimate e = rsp_rho_estimate(b, 1, 4, {1, 1});
  CHECK(e.infinite_samples == 4);
  CHECK(std::isinf(e.rho_hat));
}

TEST_CASE("estimate is monotone in K and in the sample set") {
  const Instance inst = generate_instance(30, 20, 2, 72);
  double prev = INFINITY;
  for (std::size_t k = 1; k < 30; ++k) {
    const double r = rsp_rho_estimate(inst.b, k, 200, {72, 1}).rho_hat;
    CHECK(r <= prev);
    prev = r;
  }
  double last = 0.0;
  for (std::size_t s : {1, 10, 50, 300}) {
    const double r = rsp_rho_estimate(inst.b, 5, s, {72, 2}).rho_hat;
    CHECK(r >= last);
    CHECK(r >= 0.0);
    last = r;
  }
}

TEST_CASE("invalid order is rejected") {
  const DenseMatrix b(2, 3, 1.0);
  CHECK_THROWS_AS(rsp_rho_estimate(b, 0, 1, {}), std::invalid_argument);
  CHECK_THROWS_AS(rsp_rho_estimate(b, 3, 1, {}), std::invalid_argument);
}

TEST_CASE("convergence trace checks") {
  FixedEpsTrace t;
  t.kind = SurrogateKind::log_det;
  t.feps = {1.0, 0.8, 0.7, 0.7};
  t.increments = {1e-2, 1e-4, 1e-9};
  t.sup_norms = {1.0, 1.2, 1.2, 1.2};
  t.x_final = Vector(5, 0.1);
  CHECK(check_convergence_trace(t, 0.125).passed());

  FixedEpsTrace up = t;
  up.feps[2] = 1.3;
  const TraceReport r = check_convergence_trace(up, 0.125);
  CHECK_FALSE(r.monotone);
  CHECK_FALSE(r.passed());
  CHECK(r.max_increase == doctest::Approx(0.5));
  CHECK_FALSE(r.issues.empty());

  FixedEpsTrace tail = t;
  tail.increments.back() = 1e-3;
  CHECK_FALSE(check_convergence_trace(tail, 0.125).increments_summable);

  FixedEpsTrace big = t;
  big.sup_norms[3] = 1e30;
  const TraceReport b = check_convergence_trace(big, 0.125);
  CHECK(b.bounded_checked);
  CHECK_FALSE(b.bounded);

  FixedEpsTrace one;
  one.feps = {3.0};
  one.sup_norms = {1.0};
  one.x_final = Vector(3, 1.0);
  CHECK(check_convergence_trace(one, 0.125).passed());
}

TEST_CASE("a real fixed-eps trace passes") {
  const Instance inst = generate_instance(40, 60, 3, 73);
  const FixedEpsTrace t =
      fixed_eps_trace(inst, {SurrogateKind::log_det, 0.125}, PDParams{}, 20, SubproblemSolver::simplex);
  const TraceReport r = check_convergence_trace(t, 0.125);
  CHECK(r.passed());
  CHECK(r.bounded_checked);
  CHECK(std::isfinite(r.sup_norm));
}
