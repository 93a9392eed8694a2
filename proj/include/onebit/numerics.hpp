#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace onebit {

using Vector = std::vector<double>;

/// Dense row-major matrix of doubles.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> entries);

  static DenseMatrix identity(std::size_t n);
  static DenseMatrix diagonal(std::span<const double> d);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return data_.empty(); }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<double> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const double> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  std::span<const double> entries() const { return data_; }
  std::span<double> entries() { return data_; }

  DenseMatrix transposed() const;
  DenseMatrix& operator*=(double c);
  friend DenseMatrix operator*(double c, DenseMatrix m) { return m *= c; }

  bool all_finite() const;
  bool operator==(const DenseMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// out = M x
void multiply(const DenseMatrix& m, std::span<const double> x, std::span<double> out);
Vector multiply(const DenseMatrix& m, std::span<const double> x);
// out = Mᵀ u
void multiply_transpose(const DenseMatrix& m, std::span<const double> u, std::span<double> out);
Vector multiply_transpose(const DenseMatrix& m, std::span<const double> u);

double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> a);
double norm1(std::span<const double> a);
double norm_inf(std::span<const double> a);
double distance2(std::span<const double> a, std::span<const double> b);

/// Names one reproducible random stream. Two descriptors with equal fields
/// produce the same sequence everywhere; the value is immutable and cheap to copy.
struct RngStream {
  std::uint64_t master_seed = 0;
  std::uint64_t stream_index = 0;

  RngStream child(std::uint64_t index) const;
};

/// Stateless 64-bit mixer (SplitMix64 finalizer applied to a combined word).
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b);

/// xoshiro256** seeded from an RngStream through SplitMix64. Normal deviates
/// use the Marsaglia polar method so no library distribution (whose algorithm
/// is implementation-defined) sits between the bit stream and the output.
class Rng {
 public:
  explicit Rng(RngStream stream);

  std::uint64_t next();
  double uniform();  // [0, 1)
  double normal();
  std::size_t below(std::size_t bound);  // uniform in [0, bound)

 private:
  std::uint64_t s_[4];
  double spare_ = 0.0;
  bool has_spare_ = false;
};

DenseMatrix gaussian(RngStream stream, std::size_t rows, std::size_t cols);
Vector gaussian_vector(RngStream stream, std::size_t n);

/// Thrown when power iteration exhausts its budget.
class NonConvergence : public std::runtime_error {
 public:
  NonConvergence(const std::string& what, double last_estimate)
      : std::runtime_error(what), last_estimate_(last_estimate) {}
  double last_estimate() const { return last_estimate_; }

 private:
  double last_estimate_;
};

/// Thrown when an iteration produces a non-finite value.
class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Largest singular value of `m` by power iteration on MᵀM from a fixed
/// seeded start vector. Stops once the Rayleigh quotient changes by at most
/// `tol` (relative) between sweeps.
double spectral_norm(const DenseMatrix& m, double tol = 1e-10, std::size_t max_iter = 10'000);

}  // namespace onebit
