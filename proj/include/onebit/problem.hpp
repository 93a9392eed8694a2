#pragma once

#include <chrono>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "onebit/numerics.hpp"

namespace onebit {

enum class NormalizeMode { exact, bound };

/// One 1-bit compressive sensing problem: Φ, the sparse signal, its sign
/// measurements and the derived constraint matrix B (already divided by
/// `b_scale`).
struct Instance {
  DenseMatrix phi;     // m × n
  Vector x_true;       // length n
  Vector y;            // entries in {−1, +1}, length m
  DenseMatrix b;       // (m+1) × n, normalized
  double b_scale = 1;  // divisor applied to the raw B
  NormalizeMode normalize = NormalizeMode::exact;
  std::size_t sparsity = 0;
  std::uint64_t seed = 0;

  std::size_t m() const { return phi.rows(); }
  std::size_t n() const { return phi.cols(); }

  bool operator==(const Instance&) const = default;
};

/// Membership in C = {z : z_{m+1} = 1, z_i ≥ 0 for i ≤ m}, with tolerance.
struct ConstraintSetC {
  static bool contains(std::span<const double> z, double tol = 0.0);
  /// Largest violation of either condition; 0 for members.
  static double residual(std::span<const double> z);
};

struct ReconResult {
  Vector x_est;
  std::size_t violations = 0;
  std::size_t support_size = 0;
  std::size_t iterations = 0;
  std::vector<double> feps_trace;
  std::chrono::duration<double, std::milli> wall_time{0};
};

NormalizeMode default_normalize_mode(std::size_t m, std::size_t n);

/// Φ from stream 0, the support and nonzero values from stream 1 of `seed`.
Instance generate_instance(std::size_t n, std::size_t m, std::size_t s, std::uint64_t seed);
Instance generate_instance(std::size_t n, std::size_t m, std::size_t s, std::uint64_t seed,
                          NormalizeMode mode);

/// sign(Φx) with sign(0) = +1.
Vector one_bit_measure(const DenseMatrix& phi, std::span<const double> x);

/// [diag(y); yᵀ]·Φ.
DenseMatrix build_b(const DenseMatrix& phi, std::span<const double> y);

struct NormalizedB {
  DenseMatrix b_hat;
  double scale;
};
NormalizedB normalize_b(const DenseMatrix& b, NormalizeMode mode);

/// √(m+1)(√n+√m): bound on the expected ‖B‖ for Gaussian Φ.
double norm_bound(std::size_t m, std::size_t n);

/// Number of i with sign((Φx)_i) ≠ y_i under sign(0) = +1.
std::size_t violations(const DenseMatrix& phi, std::span<const double> y, std::span<const double> x);

/// 20·log10(1/‖a/‖a‖ − b/‖b‖‖). Returns +∞ when the normalized vectors coincide.
double snr_db(std::span<const double> x_ref, std::span<const double> x_est);

inline constexpr double kDefaultSupportThreshold = 1e-5;

struct Support {
  std::size_t count = 0;
  std::vector<std::size_t> indices;  // 0-based, ascending
};
/// Entries with |x_i| > delta_rel·max|x_j|.
Support support(std::span<const double> x, double delta_rel = kDefaultSupportThreshold);

// Text serialization: dims, seed, then row-major Φ, x_true, y. Floating values
// are written in shortest round-trip form, so a reloaded instance is
// bit-identical (B is rebuilt with the same operations).
void write_instance(std::ostream& out, const Instance& inst);
Instance read_instance(std::istream& in);
void save_instance(const std::string& path, const Instance& inst);
Instance load_instance(const std::string& path);

/// Rebuild y-dependent fields (b, b_scale) from phi and y.
void rebuild_b(Instance& inst);

}  // namespace onebit
