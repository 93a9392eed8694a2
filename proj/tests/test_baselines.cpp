#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "onebit/baselines.hpp"
#include "oracles.hpp"

using namespace onebit;

namespace {

StandardLP make_lp(std::size_t rows, std::size_t cols, std::vector<double> a, Vector b, Vector c) {
  StandardLP lp;
  lp.a = DenseMatrix(rows, cols, std::move(a));
  lp.rhs = std::move(b);
  lp.cost = std::move(c);
  return lp;
}

std::size_t nnz(const Vector& x) {
  std::size_t k = 0;
  for (double v : x) k += v != 0.0;
  return k;
}

// min ‖x‖₁ s.t. y_iΦ_i x ≥ 0, ⟨Φᵀy, x⟩ = 1 for n = 3, by intersecting the
// equality with every pair of the hyperplanes x_j = 0 and y_iΦ_i x = 0.
double pv_bruteforce(const Instance& inst) {
  const std::size_t m = inst.m();
  std::vector<std::vector<double>> planes;
  for (std::size_t j = 0; j < 3; ++j) {
    std::vector<double> e(3, 0.0);
    e[j] = 1.0;
    planes.push_back(e);
  }
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<double> r(3);
    for (std::size_t j = 0; j < 3; ++j) r[j] = inst.y[i] * inst.phi(i, j);
    planes.push_back(r);
  }
  const Vector c = multiply_transpose(inst.phi, inst.y);
  double best = INFINITY;
  for (std::size_t p = 0; p < planes.size(); ++p) {
    for (std::size_t q = p + 1; q < planes.size(); ++q) {
      std::vector<double> mat{c[0], c[1], c[2]};
      mat.insert(mat.end(), planes[p].begin(), planes[p].end());
      mat.insert(mat.end(), planes[q].begin(), planes[q].end());
      const auto x = oracle::solve_square(mat, {1.0, 0.0, 0.0}, 3);
      if (!x) continue;
      bool ok = true;
      for (std::size_t i = 0; i < m; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < 3; ++j) s += inst.y[i] * inst.phi(i, j) * (*x)[j];
        ok = ok && s >= -1e-12;
      }
      if (ok) best = std::min(best, std::abs((*x)[0]) + std::abs((*x)[1]) + std::abs((*x)[2]));
    }
  }
  return best;
}

}  // namespace

TEST_CASE("hard threshold keeps the largest entries, lower index on ties") {
  Vector v{1.0, -1.0, 1.0, 0.5};
  hard_threshold(v, 2);
  CHECK(v == Vector{1.0, -1.0, 0.0, 0.0});
  Vector w{0.1, -3.0, 2.0, -2.0, 0.0};
  hard_threshold(w, 3);
  CHECK(w == Vector{0.0, -3.0, 2.0, -2.0, 0.0});
  Vector u{1, 2, 3};
  hard_threshold(u, 3);
  CHECK(u == Vector{1, 2, 3});
}

TEST_CASE("BIHT without thresholding pressure fits all signs") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Instance inst = generate_instance(20, 15, 20, 100 + seed);
    const ReconResult r = biht_solve(inst, {20, BihtVariant::one_sided_l1, 1.0, 1000});
    CHECK(r.violations == 0);
  }
}

TEST_CASE("BIHT output is s-sparse with unit norm") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Instance inst = generate_instance(80, 60, 4, 200 + seed);
    for (auto variant : {BihtVariant::one_sided_l1, BihtVariant::one_sided_l2}) {
      for (std::size_t s : {1, 3, 4, 8}) {
        const ReconResult r = biht_solve(inst, {s, variant, 1.0, 200});
        CHECK(nnz(r.x_est) <= s);
        CHECK(std::abs(norm2(r.x_est) - 1.0) <= 1e-12);
        CHECK(r.violations == violations(inst.phi, inst.y, r.x_est));
      }
    }
  }
}

TEST_CASE("BIHT finds well-determined sparse signals") {
  std::size_t consistent = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Instance inst = generate_instance(100, 300, 2, 300 + seed);
    const ReconResult r = biht_solve(inst, {2, BihtVariant::one_sided_l1, 1.0, 1000});
    consistent += r.violations == 0;
    CHECK(snr_db(inst.x_true, r.x_est) > 20.0);
  }
  CHECK(consistent >= 7);
}

TEST_CASE("BIHT rejects bad parameters") {
  const Instance inst = generate_instance(10, 10, 2, 1);
  CHECK_THROWS_AS(biht_solve(inst, {0, BihtVariant::one_sided_l1, 1.0, 10}), std::invalid_argument);
  CHECK_THROWS_AS(biht_solve(inst, {11, BihtVariant::one_sided_l1, 1.0, 10}), std::invalid_argument);
  CHECK_THROWS_AS(biht_solve(inst, {2, BihtVariant::one_sided_l1, 0.0, 10}), std::invalid_argument);
}

TEST_CASE("simplex on small LPs") {
  const LpResult r = simplex_solve(make_lp(1, 2, {1, 1}, {1}, {1, 1}));
  REQUIRE(r.status == LpStatus::optimal);
  CHECK(r.objective == doctest::Approx(1.0));

  // Degenerate vertex with tied ratios and tied reduced costs.
  const LpResult d = simplex_solve(make_lp(3, 5, {1, 1, 1, 0, 0, 1, -1, 0, 1, 0, 1, 0, 0, 0, 1}, {1, 0, 0},
                                           {-1, -1, 0, 0, 0}));
  REQUIRE(d.status == LpStatus::optimal);
  CHECK(d.objective == doctest::Approx(-1.0));

  CHECK(simplex_solve(make_lp(1, 2, {1, 1}, {-1}, {1, 1})).status == LpStatus::infeasible);
  CHECK(simplex_solve(make_lp(1, 2, {1, -1}, {0}, {-1, 0})).status == LpStatus::unbounded);
  CHECK(simplex_solve(make_lp(2, 2, {1, 0, 1, 0}, {1, 2}, {1, 1})).status == LpStatus::infeasible);
}

TEST_CASE("simplex with a redundant row") {
  const LpResult r = simplex_solve(make_lp(2, 3, {1, 1, 1, 2, 2, 2}, {1, 2}, {3, 1, 2}));
  REQUIRE(r.status == LpStatus::optimal);
  CHECK(r.objective == doctest::Approx(1.0));
}

TEST_CASE("simplex matches vertex enumeration on random LPs") {
  Rng rng({61, 0});
  int compared = 0;
  for (int k = 0; k < 100; ++k) {
    const std::size_t rows = 2 + rng.below(4), cols = 10;
    std::vector<double> a(rows * cols);
    for (double& v : a) v = rng.normal();
    Vector feasible(cols);
    for (double& v : feasible) v = rng.uniform() < 0.5 ? 0.0 : rng.uniform();
    Vector b(rows, 0.0);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) b[i] += a[i * cols + j] * feasible[j];
    Vector c(cols);
    for (double& v : c) v = 0.1 + rng.uniform();
    if (k % 3 == 0) c[rng.below(cols)] = -0.05;
    const oracle::LpOptimum ref = oracle::enumerate_vertices(a, b, c, rows, cols);
    const LpResult r = simplex_solve(make_lp(rows, cols, a, b, c));
    if (!ref.feasible || !std::isfinite(ref.objective)) continue;
    if (r.status == LpStatus::unbounded) continue;  // the enumeration cannot see rays
    REQUIRE(r.status == LpStatus::optimal);
    CHECK(std::abs(r.objective - ref.objective) <= 1e-8 * std::max(1.0, std::abs(ref.objective)));
    ++compared;
  }
  CHECK(compared >= 60);
}

TEST_CASE("warm start reaches the same optimum") {
  const Instance inst = generate_instance(12, 16, 3, 62);
  const StandardLP lp = pv_formulate(inst);
  const LpResult cold = simplex_solve(lp);
  REQUIRE(cold.status == LpStatus::optimal);
  REQUIRE(cold.basis.size() == lp.constraints());
  StandardLP other = lp;
  for (std::size_t j = 0; j < 24; ++j) other.cost[j] = 0.5 + 0.04 * static_cast<double>(j % 7);
  const LpResult a = simplex_solve(other);
  const LpResult b = simplex_solve(other, cold.basis);
  REQUIRE(a.status == LpStatus::optimal);
  REQUIRE(b.status == LpStatus::optimal);
  CHECK(b.objective == doctest::Approx(a.objective).epsilon(1e-10));
  const std::vector<std::size_t> junk(lp.constraints(), 0);
  CHECK(simplex_solve(other, junk).objective == doctest::Approx(a.objective).epsilon(1e-10));
}

TEST_CASE("PV formulation shape and feasibility") {
  const Instance inst = generate_instance(10, 7, 2, 63);
  const StandardLP lp = pv_formulate(inst);
  CHECK(lp.variables() == 2 * 10 + 7);
  CHECK(lp.constraints() == 8);

  const LpResult r = simplex_solve(lp);
  REQUIRE(r.status == LpStatus::optimal);
  const Vector x = pv_extract(inst, r.x);
  CHECK(violations(inst.phi, inst.y, x) == 0);
  CHECK(std::abs(dot(multiply_transpose(inst.phi, inst.y), x) - 1.0) <= 1e-8);
}

TEST_CASE("PV solution beats random feasible probes") {
  Rng rng({64, 0});
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Instance inst = generate_instance(30, 25, 3, 640 + seed);
    const ReconResult r = pv_solve(inst);
    CHECK(r.violations == 0);
    const Vector c = multiply_transpose(inst.phi, inst.y);
    CHECK(std::abs(dot(c, r.x_est) - 1.0) <= 1e-8);
    for (int k = 0; k < 50; ++k) {
      Vector probe = inst.x_true;
      for (double& v : probe) v += 0.05 * rng.normal();
      if (violations(inst.phi, inst.y, probe) != 0) continue;
      const double scale = dot(c, probe);
      for (double& v : probe) v /= scale;
      CHECK(norm1(r.x_est) <= norm1(probe) + 1e-9);
    }
  }
}

TEST_CASE("PV optimum matches brute force in three variables") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Instance inst = generate_instance(3, 2 + seed % 5, 2, 650 + seed);
    const double ref = pv_bruteforce(inst);
    const ReconResult r = pv_solve(inst);
    CHECK(norm1(r.x_est) == doctest::Approx(ref).epsilon(1e-7));
  }
}
